"""p-adic zeta values, the Morita gamma function, and closed-form
structure constants.

Two independent numeric routes to zeta_p(m) are provided:

* `zetap_bernoulli`: the Kummer-congruence limit -(1-p^(n-1)) B_n/n at
  n = 1 - m + (p-1) p^r, exact Bernoulli numbers, precision p^(r+1);
* `zetap_interpolated`: solve for the Taylor coefficients of
  log Gamma_p at 0 from point values Gamma_p(k p^s) and read off
  zeta_p(m) = -m c_m.

Symbolic alpha constants live in `ZetaPoly`, the polynomial ring over Q
in generators z3, z5, z7, ... standing for zeta_p(3), zeta_p(5), ...
(even zeta values vanish and are never represented).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .padic_core import (
    PadicNum,
    bernoulli,
    padic_exp,
    padic_from_rational,
    padic_log,
    vp,
    _ilog,
)
from .qseries import PowerSeries

# largest Bernoulli index the exact route will attempt
EXACT_BERNOULLI_BOUND = 1600
# cap on the length of a single Gamma_p product sweep
NODE_PRODUCT_CAP = 10 ** 7


class LevelTooLarge(ValueError):
    """Requested Kummer level needs a Bernoulli number beyond the bound."""


class PrecisionBudgetExceeded(ArithmeticError):
    """No feasible interpolation node scale reaches the target precision."""


class WeightMismatch(ValueError):
    """Gamma ratio weights are unbalanced: sum of bs must equal a."""


# -- symbolic zeta polynomials -----------------------------------------


class ZetaPoly:
    """Polynomial over Q in z_m = zeta_p(m), odd m >= 3.

    Monomials are sorted tuples of generator indices with repetition:
    (3, 3, 5) stands for z3^2 * z5.  The graded weight of z_m is m.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[tuple, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            mono = tuple(sorted(mono))
            for m in mono:
                if m < 3 or m % 2 == 0:
                    raise ValueError("no generator z_%d: indices are odd >= 3"
                                     % m)
            clean[mono] = clean.get(mono, Fraction(0)) + c
            if clean[mono] == 0:
                del clean[mono]
        self.terms = clean

    @classmethod
    def zero(cls) -> "ZetaPoly":
        return cls()

    @classmethod
    def const(cls, q) -> "ZetaPoly":
        return cls({(): Fraction(q)})

    @classmethod
    def gen(cls, m: int) -> "ZetaPoly":
        return cls({(m,): Fraction(1)})

    def coefficient(self, mono: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set:
        return {sum(mono) for mono in self.terms}

    def is_homogeneous(self, w: int) -> bool:
        return all(sum(mono) == w for mono in self.terms)

    @staticmethod
    def _coerce(other):
        if isinstance(other, ZetaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ZetaPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return ZetaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ZetaPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZetaPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, ZetaPoly):
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return ZetaPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    @staticmethod
    def _mono_str(mono: tuple) -> str:
        parts = []
        for m in sorted(set(mono)):
            e = mono.count(m)
            parts.append("z%d" % m if e == 1 else "z%d^%d" % (m, e))
        return "*".join(parts)

    def format(self) -> str:
        """Display form: '-8/25 * z3', '-(18*z9 + z3^3)/162', '0'."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(),
                       key=lambda kv: (sum(kv[0]), len(kv[0]), kv[0]))
        if len(items) == 1:
            (mono, c), = items
            ms = self._mono_str(mono)
            if not ms:
                return str(c)
            if c == 1:
                return ms
            if c == -1:
                return "-" + ms
            return "%s * %s" % (c, ms)
        den = 1
        for _, c in items:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [(mono, int(c * den)) for mono, c in items]
        neg = all(n < 0 for _, n in nums)
        if neg:
            nums = [(mono, -n) for mono, n in nums]
        parts = []
        for mono, n in nums:
            ms = self._mono_str(mono)
            if not ms:
                parts.append(str(n))
            elif n == 1:
                parts.append(ms)
            elif n == -1:
                parts.append("-" + ms)
            else:
                parts.append("%d*%s" % (n, ms))
        body = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                body += " - " + part[1:]
            else:
                body += " + " + part
        out = "(%s)" % body
        if den > 1:
            out += "/%d" % den
        return ("-" if neg else "") + out

    def __repr__(self):
        return "ZetaPoly(%s)" % self.format()


# -- zeta via Kummer congruences ---------------------------------------


def zetap_bernoulli(m: int, p: int, r: int) -> PadicNum:
    """zeta_p(m) modulo p^(r+1) from the Bernoulli-quotient limit.

    Evaluates -(1 - p^(n-1)) B_n / n exactly at n = 1 - m + (p-1) p^r
    and truncates; the Kummer congruence pins the result mod p^(r+1)
    (for m not congruent to 1 mod p-1; in the exceptional class the
    value still converges but one digit may be optimistic).
    """
    if p < 3:
        raise ValueError("p must be an odd prime")
    if m < 2 or r < 0:
        raise ValueError("need m >= 2 and r >= 0")
    n = 1 - m + (p - 1) * p ** r
    if n < 2:
        raise ValueError("level too small: 1 - m + (p-1)p^r must be >= 2")
    if n > EXACT_BERNOULLI_BOUND:
        raise LevelTooLarge("Bernoulli index %d exceeds bound %d"
                            % (n, EXACT_BERNOULLI_BOUND))
    value = -(1 - Fraction(p) ** (n - 1)) * bernoulli(n) / n
    return PadicNum.from_exact(value, p).with_abs_precision(r + 1)


# -- Gamma_p point values ----------------------------------------------


def gammap_int(z: int, p: int, N: int) -> PadicNum:
    """Morita Gamma_p(z) = (-1)^z prod_{0<j<z, p not| j} j, mod p^N."""
    if z < 0:
        raise ValueError("z must be a nonnegative integer")
    mod = p ** N
    acc = 1
    for j in range(1, z):
        if j % p:
            acc = acc * j % mod
    if z % 2:
        acc = -acc % mod
    return padic_from_rational(Fraction(acc), p, N)


@lru_cache(maxsize=None)
def _gamma_node_values(p: int, s: int, D: int, E: int) -> tuple:
    """Gamma_p(k p^s) mod p^E for k = 1..D, via one shared sweep."""
    mod = p ** E
    step = p ** s
    out = []
    acc = 1
    j = 1
    for k in range(1, D + 1):
        stop = k * step
        while j < stop:
            if j % p:
                acc = acc * j % mod
            j += 1
        # (-1)^(k p^s) = (-1)^k since p is odd
        out.append((-acc if k % 2 else acc) % mod)
    return tuple(out)


def _tail_valuation(p: int, v: int, m_start: int) -> int:
    """Lower bound on vp of sum_{m >= m_start} c_m x^m, vp(x) = v >= 1.

    c_m is the x^m Taylor coefficient of log Gamma_p: zero for even m,
    and vp(c_m) >= -[(m-1) % (p-1) == 0] - vp(m) for odd m.
    """
    if v < 1:
        raise ValueError("evaluation point must be in p Z_p")
    m = m_start if m_start % 2 else m_start + 1
    best = None
    while True:
        g = v * m - (1 if (m - 1) % (p - 1) == 0 else 0) - vp(m, p)
        best = g if best is None else min(best, g)
        nxt = m + 2
        # v*m' - 1 - floor(log_p m') underestimates every later term and
        # is nondecreasing, so stop once it clears the current minimum
        if v * nxt - 1 - _ilog(nxt, p) >= best:
            return best
        m = nxt


def _fraction_inverse(rows: list) -> list:
    """Inverse of a small matrix over Q by Gaussian elimination."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j))
                                         for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def _gamma_log_solve(p: int, D: int, s: int) -> tuple:
    """Taylor coefficients c_1..c_D of log Gamma_p at 0, with the tail
    valuation bound T of the degree-> D remainder at vp(x) = s.

    Solves w_k = sum_m c_m (k p^s)^m for k = 1..D: the scaled matrix
    (k^m) has unit determinant (all of 1..D and their differences are
    prime to p when D < p-1), so inversion loses no precision and the
    coefficients c_m come out known mod p^(T - s m).
    """
    if not 0 < D < p - 1:
        raise ValueError("need 0 < D < p-1")
    if s < 2:
        raise ValueError("interpolation nodes need s >= 2")
    if D * p ** s > NODE_PRODUCT_CAP:
        raise PrecisionBudgetExceeded(
            "node sweep of %d terms exceeds cap %d" % (D * p ** s,
                                                       NODE_PRODUCT_CAP))
    T = _tail_valuation(p, s, D + 1)
    E = T + 2
    nodes = _gamma_node_values(p, s, D, E)
    ws = [padic_log(padic_from_rational(Fraction(g), p, E)) for g in nodes]
    vinv = _fraction_inverse([[Fraction(k ** m) for m in range(1, D + 1)]
                              for k in range(1, D + 1)])
    cs = []
    for m in range(1, D + 1):
        chat = ws[0] * vinv[m - 1][0]
        for k in range(1, D):
            chat = chat + ws[k] * vinv[m - 1][k]
        c = chat / p ** (s * m)
        cs.append(c.with_abs_precision(min(c.abs_precision, T - s * m)))
    return tuple(cs), T


@dataclass
class GammaExpansion:
    """Taylor data of Gamma_p at 0, valid on p Z_p.

    coeffs[m] is g_m with Gamma_p(x) = sum g_m x^m and g_0 = 1;
    log_coeffs[m-1] is the x^m coefficient c_m of log Gamma_p, so
    c_1 = Gamma_p'(0) and zeta_p(m) = -m c_m for m >= 2.  Each entry
    carries its own precision; `tail_order` is the first untracked
    degree (D+1).
    """

    p: int
    degree: int
    scale: int
    log_coeffs: tuple
    coeffs: list
    radius_valuation: int = 1

    @property
    def tail_order(self) -> int:
        return self.degree + 1

    def derivative_at_zero(self) -> PadicNum:
        return self.log_coeffs[0]

    def evaluate(self, x) -> PadicNum:
        """Gamma_p(x) for x in p Z_p, with the truncation tail folded
        into the reported precision."""
        if not isinstance(x, PadicNum):
            x = PadicNum.from_exact(Fraction(x), self.p)
        v = x.valuation
        if v < self.radius_valuation:
            raise ValueError("expansion only valid for vp(x) >= %d"
                             % self.radius_valuation)
        v = int(v) if v != math.inf else None
        if v is None:
            return PadicNum.from_exact(1, self.p)
        w = None
        power = x
        for m in range(1, self.degree + 1):
            term = self.log_coeffs[m - 1] * power
            w = term if w is None else w + term
            power = power * x
        tail = _tail_valuation(self.p, v, self.tail_order)
        w = w.with_abs_precision(min(w.abs_precision, tail))
        return padic_exp(w)


def gammap_taylor(p: int, D: int, N: int) -> GammaExpansion:
    """Interpolate the degree-D Taylor expansion of Gamma_p at 0.

    The node scale s is chosen so that even the worst-placed
    coefficient c_D is known mod p^N; smaller-index coefficients come
    out sharper.  Nodes are x = k p^s for k = 1..D.
    """
    if not 0 < D < p - 1:
        raise ValueError("need 0 < D < p-1")
    if N < 1:
        raise ValueError("need N >= 1")
    s = 2
    while _tail_valuation(p, s, D + 1) - s * D < N:
        s += 1
        if D * p ** s > NODE_PRODUCT_CAP:
            raise PrecisionBudgetExceeded(
                "cannot reach precision %d for c_%d at p=%d within the "
                "node cap" % (N, D, p))
    cs, _ = _gamma_log_solve(p, D, s)
    logseries = PowerSeries([0] + list(cs), D + 1)
    g = logseries.exp()
    coeffs = [PadicNum.from_exact(1, p)] + [g.known(m)
                                            for m in range(1, D + 1)]
    return GammaExpansion(p=p, degree=D, scale=s, log_coeffs=cs,
                          coeffs=coeffs)


@lru_cache(maxsize=None)
def zetap_interpolated(m: int, p: int, N: int) -> PadicNum:
    """zeta_p(m) mod p^N via the Gamma_p interpolation route.

    Searches the cheapest feasible (degree, scale) pair; needs m < p-1
    so the coefficient c_m fits inside an interpolable expansion.
    Even m returns exact zero.
    """
    if m < 2 or N < 1:
        raise ValueError("need m >= 2 and N >= 1")
    if m % 2 == 0:
        return PadicNum.from_exact(0, p)
    if m >= p - 1:
        raise ValueError("interpolation route needs m < p-1 (m=%d, p=%d)"
                         % (m, p))
    best = None
    for D in range(m, p - 1):
        s = 2
        while _tail_valuation(p, s, D + 1) - s * m < N:
            s += 1
        cost = D * p ** s
        if cost <= NODE_PRODUCT_CAP and (best is None or cost < best[0]):
            best = (cost, D, s)
    if best is None:
        raise PrecisionBudgetExceeded(
            "no node schedule reaches zeta_%d(%d) mod %d^%d" % (p, m, p, N))
    _, D, s = best
    cs, _ = _gamma_log_solve(p, D, s)
    return cs[m - 1] * (-m)


# -- symbolic expansions and the alpha constants -----------------------


def log_ratio_expansion(a, bs: Sequence, D: int) -> PowerSeries:
    """log(Gamma_p(a x) / prod_i Gamma_p(b_i x)) as a series over
    ZetaPoly, through degree D.

    Valid for balanced weights (sum bs = a), which kills the
    Gamma_p'(0) term; the x^m coefficient is then
    -(zeta_p(m)/m)(a^m - sum b_i^m), zero for even m.
    """
    a = Fraction(a)
    bs = [Fraction(b) for b in bs]
    if sum(bs) != a:
        raise WeightMismatch("sum of bs = %s but a = %s" % (sum(bs), a))
    coeffs = [ZetaPoly.zero(), ZetaPoly.zero()]
    for m in range(2, D + 1):
        if m % 2 == 0:
            coeffs.append(ZetaPoly.zero())
            continue
        gap = a ** m - sum(b ** m for b in bs)
        coeffs.append(ZetaPoly.gen(m) * (-Fraction(gap, m)))
    return PowerSeries(coeffs[:D + 1], D + 1)


def _as_zeta_poly(c) -> ZetaPoly:
    if isinstance(c, ZetaPoly):
        return c
    return ZetaPoly.const(c)


def alpha_simplicial(n: int) -> list:
    """Symbolic alpha_1..alpha_{n-1} for the rank-n simplicial family:
    alpha_j is the x^j coefficient of Gamma_p(x)/Gamma_p(x/(n+1))^(n+1).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    ratio = log_ratio_expansion(1, [Fraction(1, n + 1)] * (n + 1), n - 1).exp()
    return [_as_zeta_poly(ratio.known(j)) for j in range(1, n)]


def alpha_hyperoctahedral(J: int) -> list:
    """Symbolic alpha_1..alpha_J for the hyperoctahedral family:
    alpha_j = (1/j!) [x^j] sum_m (-1)^(j-m) C(j,m) Gamma_p(mx)/Gamma_p(x)^m.
    """
    if J < 1:
        raise ValueError("need J >= 1")
    ratios = [PowerSeries.one(J + 1), PowerSeries.one(J + 1)]
    for m in range(2, J + 1):
        ratios.append(log_ratio_expansion(m, [1] * m, J).exp())
    out = []
    for j in range(1, J + 1):
        acc = ZetaPoly.zero()
        for m in range(0, j + 1):
            top = _as_zeta_poly(ratios[m].known(j))
            acc = acc + top * (Fraction((-1) ** (j - m) * math.comb(j, m)))
        out.append(acc * Fraction(1, math.factorial(j)))
    return out


def evaluate_zeta_poly(poly: ZetaPoly, p: int, N: int) -> PadicNum:
    """Substitute numeric zeta_p values (each mod p^N at least) into a
    zeta polynomial; an identically zero polynomial gives exact zero."""
    if poly.is_zero():
        return PadicNum.from_exact(0, p)
    acc = PadicNum.from_exact(0, p)
    for mono, c in sorted(poly.terms.items()):
        term = PadicNum.from_exact(c, p)
        for m in mono:
            term = term * zetap_interpolated(m, p, N)
        acc = acc + term
    return acc


# -- the Gamma_p product congruence ------------------------------------


def gamma_ratio_congruence_check(V: Sequence[int], s: int, p: int, n: int,
                                 _corrupt=None) -> bool:
    """Check Gamma_p(p^(s+1)|V|) / prod Gamma_p(p^(s+1) V_i) against the
    Taylor evaluation of the balanced ratio at x = p^(s+1), mod
    p^((s+1) n).

    The left side uses exact Gamma_p products, the right side the
    zeta-polynomial expansion with numeric zeta values, so the two
    routes share no code.  `_corrupt`, a (degree, rational) pair, adds
    a perturbation to the log-series for negative-control tests.
    """
    V = tuple(int(v) for v in V)
    if any(v < 0 for v in V):
        raise ValueError("V must be nonnegative")
    a = sum(V)
    if not a <= n < p:
        raise ValueError("need |V| <= n < p")
    if s < 1:
        raise ValueError("need s >= 1")
    E = (s + 1) * n
    xval = s + 1
    guard = 2
    lhs = gammap_int(p ** xval * a, p, E + guard)
    for v in V:
        lhs = lhs / gammap_int(p ** xval * v, p, E + guard)
    Dtr = n + 1
    tail = _tail_valuation(p, xval, Dtr + 1)
    if tail < E:
        raise PrecisionBudgetExceeded(
            "degree-%d truncation tail %d below target %d" % (Dtr, tail, E))
    logratio = log_ratio_expansion(a, [Fraction(v) for v in V], Dtr)
    if _corrupt is not None:
        deg, delta = _corrupt
        bump = [ZetaPoly.zero()] * deg + [ZetaPoly.const(delta)]
        logratio = logratio + PowerSeries(bump, Dtr + 1)
    w = PadicNum.from_exact(0, p)
    for m in range(1, Dtr + 1):
        cm = _as_zeta_poly(logratio.known(m))
        if cm.is_zero():
            continue
        need = max(1, E - xval * m + guard)
        w = w + evaluate_zeta_poly(cm, p, need) * Fraction(p) ** (xval * m)
    w = w.with_abs_precision(min(w.abs_precision, tail))
    rhs = padic_exp(w)
    return lhs.agrees(rhs, E)
