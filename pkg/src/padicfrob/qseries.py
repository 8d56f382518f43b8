"""Truncated power series and log-polynomial series.

A PowerSeries holds coefficients of t^0..t^(order-1); the order is the
truncation modulus, so the series is known mod t^order.  Binary
arithmetic keeps the minimum order of the operands.  Coefficients can
live in any commutative ring whose elements support +, -, * and
division by integers (exact rationals, truncated p-adics, zeta
polynomials); absent coefficients are the integer 0.

A LogSeries is a polynomial in l = log t whose coefficients are
PowerSeries, with the theta = t d/dt action theta(s l^k) =
theta(s) l^k + k s l^(k-1).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

_SCALARS = (int, Fraction)


class NonUnitConstantTerm(ArithmeticError):
    """Inversion needs an invertible constant term."""


class BadConstantTerm(ArithmeticError):
    """exp needs constant term 0; log needs constant term 1."""


def _exact_div(x, d: int):
    """x / d keeping int/int exact (never a float)."""
    if isinstance(x, int):
        q = Fraction(x, d)
        return int(q) if q.denominator == 1 else q
    return x / d


def _is_zero_coeff(c) -> bool:
    if isinstance(c, _SCALARS):
        return c == 0
    is_zero = getattr(c, "is_zero", None)
    if is_zero is not None:
        return bool(is_zero())
    return c == 0


class PowerSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 1:
            raise ValueError("order must be positive")
        self.coeffs = list(coeffs[:order])
        while self.coeffs and isinstance(self.coeffs[-1], int) \
                and self.coeffs[-1] == 0:
            self.coeffs.pop()
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    def coefficient(self, k: int):
        if k < 0 or k >= self.order:
            raise IndexError("coefficient t^%d outside known range" % k)
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def known(self, k: int):
        """Coefficient of t^k, or 0 for any index (no range check)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def constant_term(self):
        return self.known(0)

    def is_zero(self) -> bool:
        return all(_is_zero_coeff(c) for c in self.coeffs)

    def valuation(self) -> int:
        """Smallest exponent with nonzero coefficient, or the order."""
        for k, c in enumerate(self.coeffs):
            if not _is_zero_coeff(c):
                return k
        return self.order

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            other = PowerSeries([other], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        n = min(max(len(self.coeffs), len(other.coeffs)), order)
        return PowerSeries([self.known(k) + other.known(k) for k in range(n)],
                           order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            other = PowerSeries([other], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LogSeries):
            return NotImplemented
        if isinstance(other, PowerSeries):
            order = min(self.order, other.order)
            out = [0] * min(len(self.coeffs) + len(other.coeffs) - 1, order) \
                if self.coeffs and other.coeffs else []
            for i, a in enumerate(self.coeffs):
                if i >= order or _is_zero_coeff(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    if i + j >= order:
                        break
                    out[i + j] = out[i + j] + a * b
            return PowerSeries(out, order)
        if isinstance(other, _SCALARS) or hasattr(other, "__mul__"):
            return PowerSeries([c * other for c in self.coeffs], self.order)
        return NotImplemented

    def __rmul__(self, other):
        return PowerSeries([other * c for c in self.coeffs], self.order)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = PowerSeries.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.invert()
        if isinstance(other, int):
            return PowerSeries([_exact_div(c, other) for c in self.coeffs],
                               self.order)
        return PowerSeries([c / other for c in self.coeffs], self.order)

    def invert(self) -> "PowerSeries":
        """Multiplicative inverse; needs an invertible constant term."""
        c0 = self.constant_term()
        if _is_zero_coeff(c0):
            raise NonUnitConstantTerm("constant term is zero")
        try:
            c0_inv = Fraction(1, c0) if isinstance(c0, int) else 1 / c0
        except (ZeroDivisionError, ArithmeticError) as err:
            raise NonUnitConstantTerm(str(err)) from err
        out = [c0_inv]
        for m in range(1, self.order):
            acc = None
            for k in range(1, min(m, len(self.coeffs) - 1) + 1):
                ck = self.known(k)
                if _is_zero_coeff(ck):
                    continue
                term = ck * out[m - k]
                acc = term if acc is None else acc + term
            out.append(-(c0_inv * acc) if acc is not None else 0)
        return PowerSeries(out, self.order)

    def exp(self) -> "PowerSeries":
        """exp of a series with constant term 0.

        g = exp(f) satisfies theta(g) = theta(f) g, giving
        m g_m = sum_k k f_k g_{m-k}.
        """
        if not _is_zero_coeff(self.constant_term()):
            raise BadConstantTerm("exp needs constant term 0")
        out = [1]
        for m in range(1, self.order):
            acc = None
            for k in range(1, m + 1):
                fk = self.known(k)
                if _is_zero_coeff(fk):
                    continue
                term = (k * fk) * out[m - k]
                acc = term if acc is None else acc + term
            out.append(_exact_div(acc, m) if acc is not None else 0)
        return PowerSeries(out, self.order)

    def log(self) -> "PowerSeries":
        """log of a series with constant term 1 (theta(f)/f integrated)."""
        if not _is_zero_coeff(self.constant_term() - 1):
            raise BadConstantTerm("log needs constant term 1")
        ratio = self.theta() * self.invert()
        out = [0]
        for m in range(1, self.order):
            out.append(_exact_div(ratio.known(m), m))
        return PowerSeries(out, self.order)

    def theta(self) -> "PowerSeries":
        """t d/dt, which preserves the truncation order."""
        return PowerSeries([k * c for k, c in enumerate(self.coeffs)],
                           self.order)

    def substitute_tp(self, p: int) -> "PowerSeries":
        """f(t^p): exponents scale by p, knowledge extends to order p*order."""
        if p < 1:
            raise ValueError("p must be positive")
        out = [0] * ((len(self.coeffs) - 1) * p + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[k * p] = c
        return PowerSeries(out, self.order * p)

    def scale_argument(self, c) -> "PowerSeries":
        """f(c t)."""
        out, power = [], 1
        for k, a in enumerate(self.coeffs):
            out.append(a * power)
            power = power * c
        return PowerSeries(out, self.order)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by t^k."""
        if k < 0:
            raise ValueError("negative shift")
        return PowerSeries([0] * k + self.coeffs, self.order + k)

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs[:order], min(self.order, order))

    def map_coefficients(self, fn: Callable) -> "PowerSeries":
        return PowerSeries([fn(c) for c in self.coeffs], self.order)

    def eq_mod(self, other: "PowerSeries", order: int) -> bool:
        for k in range(order):
            if not _is_zero_coeff(self.known(k) - other.known(k)):
                return False
        return True

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = PowerSeries([other], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.eq_mod(other, min(self.order, other.order))

    __hash__ = None

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs[:8]):
            if not _is_zero_coeff(c):
                terms.append("%s*t^%d" % (c, k))
        body = " + ".join(terms) if terms else "0"
        return "(%s + O(t^%d))" % (body, self.order)


# -- module-level operation names --------------------------------------


def series_invert(f: PowerSeries) -> PowerSeries:
    return f.invert()


def series_exp(f: PowerSeries) -> PowerSeries:
    return f.exp()


def series_log(f: PowerSeries) -> PowerSeries:
    return f.log()


def substitute_tp(f: "PowerSeries | LogSeries", p: int):
    return f.substitute_tp(p)


def theta_apply(s: "PowerSeries | LogSeries"):
    return s.theta()


class LogSeries:
    """Polynomial in l = log t with PowerSeries coefficients.

    coeffs[k] multiplies l^k.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[PowerSeries]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("need at least the l^0 slot")
        self.coeffs = coeffs

    @classmethod
    def from_series(cls, s: PowerSeries) -> "LogSeries":
        return cls([s])

    @property
    def log_degree(self) -> int:
        return len(self.coeffs) - 1

    def component(self, k: int) -> PowerSeries:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        order = min(s.order for s in self.coeffs)
        return PowerSeries.zero(order)

    def _zip(self, other: "LogSeries", op) -> "LogSeries":
        n = max(len(self.coeffs), len(other.coeffs))
        order = min(s.order for s in self.coeffs + other.coeffs)
        out = []
        for k in range(n):
            a = self.component(k).truncate(order)
            b = other.component(k).truncate(order)
            out.append(op(a, b))
        return LogSeries(out)

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            other = LogSeries.from_series(other)
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        if isinstance(other, PowerSeries):
            other = LogSeries.from_series(other)
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return LogSeries([-s for s in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, LogSeries):
            n = len(self.coeffs) + len(other.coeffs) - 1
            order = min(s.order for s in self.coeffs + other.coeffs)
            out = [PowerSeries.zero(order) for _ in range(n)]
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return LogSeries(out)
        # series or scalar multiplies every slot
        return LogSeries([s * other for s in self.coeffs])

    def __rmul__(self, other):
        return LogSeries([other * s for s in self.coeffs])

    def theta(self) -> "LogSeries":
        """theta(s l^k) = theta(s) l^k + k s l^(k-1)."""
        out = [s.theta() for s in self.coeffs]
        for k in range(1, len(self.coeffs)):
            out[k - 1] = out[k - 1] + k * self.coeffs[k]
        return LogSeries(out)

    def substitute_tp(self, p: int) -> "LogSeries":
        """t -> t^p: series slots compose, l picks up a factor p per power."""
        return LogSeries([self.coeffs[k].substitute_tp(p) * p ** k
                          for k in range(len(self.coeffs))])

    def is_zero_mod(self, order: int) -> bool:
        return all(s.truncate(order).is_zero() for s in self.coeffs)

    def eq_mod(self, other: "LogSeries", order: int) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.component(k).eq_mod(other.component(k), order)
                   for k in range(n))

    def __repr__(self):
        return "LogSeries[%s]" % ", ".join(
            "l^%d: %r" % (k, s) for k, s in enumerate(self.coeffs))
