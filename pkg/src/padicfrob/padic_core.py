"""Exact rational and truncated p-adic arithmetic.

Scalars come in two flavours: exact ``Fraction`` values and ``PadicNum``
truncations that track an absolute precision (the value is known modulo
p^N).  Precision propagates pessimistically so a claimed digit is never
a rounding artifact: addition keeps the weaker absolute precision,
multiplication combines valuation and precision of both factors, and
division by a non-unit costs the divisor's valuation.

The module also carries the combinatorial utilities used throughout the
package (Bernoulli numbers with B_1 = -1/2, Stirling numbers of the
second kind, multinomials, falling factorials) and an exact solver for
affine systems of p-adic integrality conditions.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

# Exact rationals are plain stdlib fractions: arbitrary-size reduced
# numerator/denominator pairs with positive denominator.
Rational = Fraction

RationalLike = Union[int, Fraction]

INFINITY = math.inf


def vp(x: RationalLike, p: int) -> int | float:
    """p-adic valuation of an integer or fraction; +inf for 0."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if isinstance(x, Fraction):
        if x == 0:
            return INFINITY
        return vp(x.numerator, p) - vp(x.denominator, p)
    if x == 0:
        return INFINITY
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _residue_of_rational(q: RationalLike, p: int, modulus: int) -> int:
    # q must be p-integral; the denominator is then a unit mod p^k.
    q = Fraction(q)
    den = q.denominator
    if den % p == 0:
        raise ValueError("rational is not p-integral")
    return (q.numerator % modulus) * pow(den, -1, modulus) % modulus


class PrecisionError(ArithmeticError):
    """An operation cannot be carried out at any positive precision."""


class PadicNum:
    """A p-adic number known either exactly (as a rational) or mod p^N.

    Inexact values are stored as p^val * unit with the unit reduced
    modulo p^(prec - val); ``prec`` is the absolute precision, i.e. the
    value is pinned modulo p^prec.  An inexact zero O(p^N) has unit 0
    and val == prec == N, where val is then a lower bound.
    """

    __slots__ = ("p", "exact", "val", "unit", "prec")

    def __init__(self, p: int, *, exact: Fraction | None = None,
                 val: int | float = 0, unit: int = 0, prec: int | float = 0):
        self.p = p
        self.exact = exact
        if exact is not None:
            self.val = vp(exact, p)
            self.unit = 0
            self.prec = INFINITY
        else:
            self.val = val
            self.unit = unit
            self.prec = prec

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_exact(cls, q: RationalLike, p: int) -> "PadicNum":
        return cls(p, exact=Fraction(q))

    @classmethod
    def from_rational(cls, q: RationalLike, p: int, N: int) -> "PadicNum":
        """q as an inexact p-adic with relative precision N.

        The result is known modulo p^(N + vp(q)); an exact rational zero
        maps to the exact zero.
        """
        q = Fraction(q)
        if q == 0:
            return cls(p, exact=Fraction(0))
        if N <= 0:
            raise ValueError("relative precision must be positive")
        v = vp(q, p)
        scaled = q / Fraction(p) ** v
        unit = _residue_of_rational(scaled, p, p ** N)
        return cls(p, val=v, unit=unit, prec=v + N)

    @classmethod
    def inexact_zero(cls, p: int, N: int | float) -> "PadicNum":
        return cls(p, val=N, unit=0, prec=N)

    # -- predicates and accessors --------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def is_exact_zero(self) -> bool:
        return self.exact is not None and self.exact == 0

    def is_zero(self) -> bool:
        """True when indistinguishable from zero at the stored precision."""
        if self.exact is not None:
            return self.exact == 0
        return self.unit == 0

    @property
    def valuation(self) -> int | float:
        """Exact valuation, or a lower bound for an inexact zero."""
        return self.val

    @property
    def abs_precision(self) -> int | float:
        return self.prec

    @property
    def rel_precision(self) -> int | float:
        return self.prec - self.val

    def residue(self, k: int) -> int:
        """Integer representative modulo p^k; requires val >= 0, prec >= k."""
        if k <= 0:
            return 0
        if self.prec < k:
            raise PrecisionError("not enough precision for residue mod p^%d" % k)
        if self.is_zero():
            return 0
        if self.val < 0:
            raise ValueError("negative valuation has no integer residue")
        if self.exact is not None:
            return _residue_of_rational(self.exact, self.p, self.p ** k)
        return self.unit * self.p ** self.val % self.p ** k

    # -- internal helpers ----------------------------------------------

    def _scaled_residue(self, shift: int, mod_exp: int) -> int:
        """Residue of self / p^shift modulo p^mod_exp (shift <= val)."""
        m = self.p ** mod_exp
        if self.exact is not None:
            if self.exact == 0:
                return 0
            return _residue_of_rational(self.exact / Fraction(self.p) ** shift,
                                        self.p, m)
        if self.unit == 0:
            return 0
        return self.unit * self.p ** (self.val - shift) % m

    def _coerce(self, other) -> "PadicNum | None":
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise ValueError("mixed primes %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, (int, Fraction)):
            return PadicNum.from_exact(other, self.p)
        return None

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return PadicNum.from_exact(self.exact + other.exact, self.p)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        N = min(self.prec, other.prec)
        v0 = min(self.val, other.val, 0)
        width = N - v0
        if width <= 0:
            # no common digits survive
            return PadicNum.inexact_zero(self.p, N)
        s = (self._scaled_residue(v0, width) + other._scaled_residue(v0, width)) \
            % self.p ** width
        if s == 0:
            return PadicNum.inexact_zero(self.p, N)
        w = vp(s, self.p)
        unit = s // self.p ** w % self.p ** (width - w)
        if unit == 0:
            return PadicNum.inexact_zero(self.p, N)
        return PadicNum(self.p, val=v0 + w, unit=unit, prec=N)

    __radd__ = __add__

    def __neg__(self):
        if self.is_exact:
            return PadicNum.from_exact(-self.exact, self.p)
        if self.unit == 0:
            return self
        m = self.p ** (self.prec - self.val)
        return PadicNum(self.p, val=self.val, unit=(-self.unit) % m,
                        prec=self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return PadicNum.from_exact(self.exact * other.exact, self.p)
        if self.is_exact_zero or other.is_exact_zero:
            return PadicNum.from_exact(0, self.p)
        # prec = min(v1 + N2, v2 + N1); exact factors have N = inf
        val = self.val + other.val
        prec = min(self.val + other.prec, other.val + self.prec)
        if self.is_zero() or other.is_zero():
            return PadicNum.inexact_zero(self.p, prec)
        rel = prec - val
        m = self.p ** rel
        u1 = self._scaled_residue(self.val, rel)
        u2 = other._scaled_residue(other.val, rel)
        unit = u1 * u2 % m
        if unit % self.p == 0:  # pragma: no cover - units stay units
            raise AssertionError("unit product lost unitness")
        return PadicNum(self.p, val=val, unit=unit, prec=prec)

    __rmul__ = __mul__

    def _invert(self) -> "PadicNum":
        if self.is_exact:
            if self.exact == 0:
                raise ZeroDivisionError("division by exact zero")
            return PadicNum.from_exact(1 / self.exact, self.p)
        if self.unit == 0:
            raise PrecisionError("divisor is indistinguishable from zero")
        rel = self.prec - self.val
        m = self.p ** rel
        unit = pow(self.unit, -1, m)
        return PadicNum(self.p, val=-self.val, unit=unit, prec=rel - self.val)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other._invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self._invert()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self._invert() ** (-k)
        out = PadicNum.from_exact(1, self.p)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return self.exact == other.exact
        return (self - other).is_zero()

    __hash__ = None

    def agrees(self, other, k: int) -> bool:
        """True when self == other mod p^k is supported by the precision.

        The difference must be known at least mod p^k and have valuation
        at least k (an inexact zero of precision >= k qualifies).
        """
        other = self._coerce(other)
        d = self - other
        if d.is_exact:
            return d.exact == 0 or vp(d.exact, self.p) >= k
        return d.prec >= k and d.val >= k

    def with_abs_precision(self, N: int) -> "PadicNum":
        """The same value truncated to absolute precision N."""
        if self.prec <= N:
            return self
        if self.is_zero() or self.val >= N:
            return PadicNum.inexact_zero(self.p, N)
        rel = N - self.val
        unit = self._scaled_residue(self.val, rel)
        if unit == 0:
            return PadicNum.inexact_zero(self.p, N)
        return PadicNum(self.p, val=self.val, unit=unit, prec=N)

    def __repr__(self):
        if self.is_exact:
            if self.exact == 0:
                return "0 (exact, p=%d)" % self.p
            return "%s (exact, p=%d)" % (self.exact, self.p)
        if self.unit == 0:
            return "O(%d^%s)" % (self.p, self.prec)
        if self.val == 0:
            body = "%d" % self.unit
        elif self.val == 1:
            body = "%d*%d" % (self.unit, self.p)
        else:
            body = "%d*%d^%d" % (self.unit, self.p, self.val)
        return "%s + O(%d^%s)" % (body, self.p, self.prec)


def padic_from_rational(q: RationalLike, p: int, N: int) -> PadicNum:
    """Exact rational to truncated p-adic with relative precision N."""
    return PadicNum.from_rational(q, p, N)


# -- p-adic logarithm and exponential ----------------------------------


def _ilog(n: int, p: int) -> int:
    """floor(log_p(n)) for n >= 1."""
    out = 0
    q = p
    while q <= n:
        out += 1
        q *= p
    return out


def padic_log(x: PadicNum, N: int | None = None) -> PadicNum:
    """log of a 1-unit: requires x = 1 + u with vp(u) >= 1, p odd.

    The series sum (-1)^(i+1) u^i / i is truncated once the tail bound
    j*vp(u) - floor(log_p j) clears the target precision.
    """
    p = x.p
    if p == 2:
        raise ValueError("p must be odd")
    u = x - 1
    if u.is_exact_zero:
        return PadicNum.from_exact(0, p)
    if u.valuation < 1:
        raise ValueError("argument is not a 1-unit")
    target = u.abs_precision if N is None else min(N, u.abs_precision)
    if target is INFINITY:
        raise ValueError("need a finite target precision for an exact argument")
    out = PadicNum.from_exact(0, p)
    term = PadicNum.from_exact(1, p)
    i = 0
    vu = u.valuation
    while (i + 1) * vu - _ilog(i + 1, p) < target:
        i += 1
        term = term * u
        out = out + (term / i if i % 2 else -(term / i))
    return out.with_abs_precision(target)


def padic_exp(x: PadicNum, N: int | None = None) -> PadicNum:
    """exp of x with vp(x) >= 1, p odd; inverse of padic_log on 1-units."""
    p = x.p
    if p == 2:
        raise ValueError("p must be odd")
    if x.is_exact_zero:
        return PadicNum.from_exact(1, p)
    if x.valuation < 1:
        raise ValueError("argument must have valuation at least 1")
    target = x.abs_precision if N is None else min(N, x.abs_precision)
    if target is INFINITY:
        raise ValueError("need a finite target precision for an exact argument")
    out = PadicNum.from_exact(1, p)
    term = PadicNum.from_exact(1, p)
    i = 0
    vx = x.valuation
    # vp(i!) <= (i - 1)/(p - 1); terms eventually sink below the target
    while True:
        i += 1
        term = term * x / i
        out = out + term
        if i * vx - (i - 1) // (p - 1) >= target + 1:
            break
    return out.with_abs_precision(target)


# -- Bernoulli numbers -------------------------------------------------

_tangent_lock = threading.Lock()
_tangent_cache: list[int] = []  # _tangent_cache[k-1] = k-th tangent number


def _tangent_numbers(n: int) -> list[int]:
    # in-place triangle; integer arithmetic only
    T = [0] * (n + 1)
    T[1] = 1
    for k in range(2, n + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    return T[1:]


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("negative index")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    m = n // 2
    with _tangent_lock:
        if len(_tangent_cache) < m:
            _tangent_cache[:] = _tangent_numbers(m)
        t = _tangent_cache[m - 1]
    sign = 1 if m % 2 == 1 else -1
    four_m = 4 ** m
    return Fraction(sign * 2 * m * t, four_m * (four_m - 1))


# -- small combinatorics ----------------------------------------------

_stirling_lock = threading.Lock()
_stirling_rows: list[list[int]] = [[1]]  # row m holds S(m, 0..m)


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind S(m, k)."""
    if m < 0 or k < 0:
        raise ValueError("negative argument")
    if k > m:
        return 0
    with _stirling_lock:
        while len(_stirling_rows) <= m:
            prev = _stirling_rows[-1]
            r = len(_stirling_rows)
            row = [0] * (r + 1)
            for j in range(1, r):
                row[j] = j * prev[j] + prev[j - 1]
            row[r] = 1
            if r == 1:
                row[1] = 1
            _stirling_rows.append(row)
        return _stirling_rows[m][k]


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(part!); zero when any part is negative."""
    total = 0
    for part in parts:
        if part < 0:
            return 0
        total += part
    out = math.factorial(total)
    for part in parts:
        out //= math.factorial(part)
    return out


def falling_factorial(x, k: int):
    """[x]_k = x (x-1) ... (x-k+1) for any ring element; [x]_0 = 1."""
    if k < 0:
        raise ValueError("negative length")
    out = None
    for i in range(k):
        factor = x - i
        out = factor if out is None else out * factor
    return 1 if out is None else out


# -- affine congruence systems ----------------------------------------


@dataclass(frozen=True)
class CongruenceSystem:
    """Conditions vp(c0 + sum_i alpha_i c_i) >= 0 on unknowns in Z_p.

    Each condition is a pair (c0, coefficient tuple); all entries are
    exact rationals.
    """

    prime: int
    unknowns: int
    conditions: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    @classmethod
    def build(cls, p: int, rows: Iterable[tuple[RationalLike, Sequence[RationalLike]]]
              ) -> "CongruenceSystem":
        conds = []
        width = None
        for c0, coeffs in rows:
            coeffs = tuple(Fraction(c) for c in coeffs)
            if width is None:
                width = len(coeffs)
            elif len(coeffs) != width:
                raise ValueError("ragged condition rows")
            conds.append((Fraction(c0), coeffs))
        if width is None:
            raise ValueError("empty system")
        return cls(p, width, tuple(conds))


@dataclass
class CongruenceSolution:
    """Solution coset of a congruence system.

    Every solution satisfies alpha_i == representative[i] mod
    p^exponents[i]; the exponents are exact coordinate projections of
    the solution lattice, and ``generators`` spans that lattice modulo
    p^modulus_exponent.
    """

    prime: int
    representative: list[int]
    exponents: list[int]
    modulus_exponent: int
    generators: list[list[int]] = field(default_factory=list)


class InconsistentSystem(Exception):
    """No p-integral solution exists; carries a violated condition index."""

    def __init__(self, index: int):
        super().__init__("inconsistent condition (first violated index %d)" % index)
        self.index = index


def _condition_exponent(c0: Fraction, coeffs: Sequence[Fraction], p: int) -> int:
    worst = 0
    for c in (c0, *coeffs):
        v = vp(c, p)
        if v is not INFINITY and v < -worst:
            worst = -v
    return worst


def _smith_solve(rows, rhs, prov, k, p, E):
    """Diagonalize A mod p^E by row and column operations.

    rows/rhs/prov describe the system A gamma-ish = b with provenance
    sets per row.  Returns (pivot valuations d, unknown-transform M with
    alpha = M gamma, reduced rhs, provenance, leftover row check data).
    Over the local ring Z/p^E the minimal-valuation entry of the
    remaining submatrix clears its whole row and column, so the result
    is genuinely diagonal.
    """
    mod = p ** E
    A = [list(r) for r in rows]
    b = list(rhs)
    prov = list(prov)
    nrows = len(A)
    M = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    d = []
    r = 0
    while r < min(nrows, k):
        best = None
        best_v = E
        for i in range(r, nrows):
            for j in range(r, k):
                a = A[i][j] % mod
                if a:
                    v = vp(a, p)
                    if v < best_v:
                        best_v, best = v, (i, j)
        if best is None:
            break
        i0, j0 = best
        A[r], A[i0] = A[i0], A[r]
        b[r], b[i0] = b[i0], b[r]
        prov[r], prov[i0] = prov[i0], prov[r]
        if j0 != r:
            for row in A:
                row[r], row[j0] = row[j0], row[r]
            for row in M:
                row[r], row[j0] = row[j0], row[r]
        v = best_v
        pv = p ** v
        inv = pow(A[r][r] // pv % mod, -1, mod)
        A[r] = [x * inv % mod for x in A[r]]
        A[r][r] = pv
        b[r] = b[r] * inv % mod
        for i in range(nrows):
            if i == r:
                continue
            a = A[i][r] % mod
            if a == 0:
                continue
            q = a // pv
            A[i] = [(x - q * y) % mod for x, y in zip(A[i], A[r])]
            b[i] = (b[i] - q * b[r]) % mod
            prov[i] = prov[i] | prov[r]
        for j in range(k):
            if j == r:
                continue
            a = A[r][j] % mod
            if a == 0:
                continue
            q = a // pv
            for row in A:
                row[j] = (row[j] - q * row[r]) % mod
            for row in M:
                row[j] = (row[j] - q * row[r]) % mod
        d.append(v)
        r += 1
    leftovers = [(b[i] % mod, prov[i]) for i in range(r, nrows)]
    return d, M, b[:r], prov[:r], leftovers


def solve_affine_congruences(system: CongruenceSystem) -> CongruenceSolution:
    """Describe all alpha in Z_p^k satisfying every integrality condition.

    Each condition vp(c0 + sum alpha_i c_i) >= 0 reduces to a linear
    congruence mod p^e with e = max(0, -min_i vp(c_i)); the joint system
    is solved by Smith normal form over Z/p^E, which yields the exact
    solution coset.  Raises InconsistentSystem when no solution exists.
    """
    p = system.prime
    k = system.unknowns
    reduced = []
    for idx, (c0, coeffs) in enumerate(system.conditions):
        e = _condition_exponent(c0, coeffs, p)
        if e == 0:
            continue
        m = p ** e
        scale = Fraction(p) ** e
        a = [_residue_of_rational(c * scale, p, m) for c in coeffs]
        b = _residue_of_rational(-c0 * scale, p, m)
        reduced.append((a, b, e, idx))
    if not reduced:
        return CongruenceSolution(p, [0] * k, [0] * k, 0,
                                  [[1 if i == j else 0 for j in range(k)]
                                   for i in range(k)])
    E = max(e for _, _, e, _ in reduced)
    mod = p ** E
    rows, rhs, prov = [], [], []
    for a, b, e, idx in reduced:
        scale = p ** (E - e)
        rows.append([x * scale % mod for x in a])
        rhs.append(b * scale % mod)
        prov.append(frozenset([idx]))
    d, M, b_red, prov_red, leftovers = _smith_solve(rows, rhs, prov, k, p, E)
    for bval, pset in leftovers:
        if bval:
            raise InconsistentSystem(min(pset, default=0))
    rank = len(d)
    gamma = [0] * k
    for i in range(rank):
        if b_red[i] % p ** d[i]:
            raise InconsistentSystem(min(prov_red[i], default=0))
        gamma[i] = b_red[i] // p ** d[i] % p ** (E - d[i])
    rep = [sum(M[i][j] * gamma[j] for j in range(k)) % mod for i in range(k)]
    gens = []
    for i in range(rank):
        if d[i] > 0:
            g = [M[row][i] * p ** (E - d[i]) % mod for row in range(k)]
            if any(g):
                gens.append(g)
    for i in range(rank, k):
        g = [M[row][i] % mod for row in range(k)]
        if any(g):
            gens.append(g)
    exps = []
    for i in range(k):
        e_i = E
        for g in gens:
            if g[i] % mod:
                e_i = min(e_i, vp(g[i] % mod, p))
        exps.append(e_i)
    return CongruenceSolution(p, rep, exps, E, gens)


def check_congruence_solution(system: CongruenceSystem,
                              alpha: Sequence[RationalLike]) -> bool:
    """Exact check that a rational point satisfies every condition."""
    p = system.prime
    for c0, coeffs in system.conditions:
        total = c0 + sum(Fraction(a) * c for a, c in zip(alpha, coeffs))
        if total != 0 and vp(total, p) < 0:
            return False
    return True
