"""Combinatorial oracles for Laurent-expansion coefficients.

Two hypersurface families are covered.  The simplicial family lives in
n variables with support monomials x_1, ..., x_n and 1/(x_1...x_n);
exponent bookkeeping uses (n+1)-tuples U determined up to shifts along
(1, ..., 1) and normalized to min(U) = 0.  The hyperoctahedral family
has support x_i^{+-1} and uses plain signed exponent vectors.

Everything here is exact and independent of the series machinery used
by the Frobenius solver, so the closed coefficient formulas can be
validated against brute-force expansion of 1/f^m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .padic_core import falling_factorial, multinomial, stirling2
from .qseries import PowerSeries

BRUTE_FORCE_MAX_N = 3
BRUTE_FORCE_MAX_CELLS = 9
BRUTE_FORCE_MAX_ORDER = 30


class BoxTooLarge(ValueError):
    """Brute-force expansion request exceeds the hard-coded bounds."""


def normalize_shift(U: Sequence[int]) -> tuple:
    """Shift along (1, ..., 1) so that min(U) = 0."""
    lo = min(U)
    return tuple(x - lo for x in U)


def homogenize(u: Sequence[int]) -> tuple:
    """Minimal (n+1)-tuple U with U_i - U_0 = u_i and min(U) = 0."""
    shift = max(0, -min(u, default=0))
    return normalize_shift((shift,) + tuple(x + shift for x in u))


def to_laurent(U: Sequence[int]) -> tuple:
    """Laurent exponent vector (U_1 - U_0, ..., U_n - U_0)."""
    return tuple(x - U[0] for x in U[1:])


def simplicial_degree(u: Sequence[int]) -> int:
    """Smallest k with x^u in k times the simplex conv(e_i, -(1,..,1))."""
    return sum(homogenize(u))


def hyperoct_degree(u: Sequence[int]) -> int:
    """Smallest k with x^u in k times the cross-polytope conv(+-e_i)."""
    return sum(abs(x) for x in u)


@dataclass
class CoeffMap:
    """Finite window of a formal expansion sum c_u(t) x^u."""

    family: str
    n: int
    box: tuple
    order: int
    data: dict = field(default_factory=dict)

    def coefficient(self, u: Sequence[int]) -> PowerSeries:
        return self.data.get(tuple(u), PowerSeries.zero(self.order))

    def degree(self, u: Sequence[int]) -> int:
        if self.family == "simplicial":
            return simplicial_degree(u)
        return hyperoct_degree(u)

    def check_divisibility(self) -> bool:
        """Every c_u must vanish to order at least deg(u)."""
        for u, series in self.data.items():
            d = self.degree(u)
            if any(series.known(c) for c in range(min(d, self.order))):
                return False
        return True


def simplicial_coeff_series(U: Sequence[int], V: Sequence[int],
                            N: int, M: int) -> PowerSeries:
    """Coefficient of x^{NV} in |U|! t^{|U|} x^U / f^{|U|+1} for the
    simplicial family, as an exact series mod t^M.

    The closed form is |U|! sum_l t^{N|V| + (n+1)l} multinomial over
    the parts (N V_i - U_i + l) together with one extra part |U|.
    """
    U = normalize_shift(U)
    V = normalize_shift(V)
    if len(U) != len(V):
        raise ValueError("U and V must have the same length")
    npl = len(U)
    wU = sum(U)
    base = N * sum(V)
    coeffs = [0] * M
    scale = math.factorial(wU)
    k = 0
    while base + npl * k < M:
        parts = [N * V[i] - U[i] + k for i in range(npl)] + [wU]
        coeffs[base + npl * k] = scale * multinomial(parts)
        k += 1
    return PowerSeries(coeffs, M)


def simplicial_limit_coeff(U: Sequence[int], V: Sequence[int],
                           N: int):
    """t -> 0 limit of t^{-N|V|} times the x^{NV} coefficient:
    multinomial(NV) prod (N V_i)^{U_i} with 0^0 = 1."""
    U = normalize_shift(U)
    V = normalize_shift(V)
    out = multinomial([N * v for v in V])
    for ui, vi in zip(U, V):
        out *= (N * vi) ** ui
    return out


def simplicial_limit_coeff_falling(K: Sequence[int], V: Sequence[int],
                                   N: int):
    """Falling-factorial variant: multinomial(NV) prod [N V_i]_{K_i}."""
    V = normalize_shift(V)
    out = multinomial([N * v for v in V])
    for ki, vi in zip(K, V):
        out *= falling_factorial(N * vi, ki)
    return out


def _as_box(box, n: int) -> tuple:
    """Accept a radius (cube [-b, b]^n) or an explicit (lo, hi) pair."""
    if isinstance(box, int):
        return ((-box,) * n, (box,) * n)
    lo, hi = tuple(box[0]), tuple(box[1])
    if len(lo) != n or len(hi) != n or any(a > b for a, b in zip(lo, hi)):
        raise ValueError("malformed box")
    return (lo, hi)


def _check_box(n: int, box: tuple, M: int):
    lo, hi = box
    cells = 1
    for a, b in zip(lo, hi):
        cells *= b - a + 1
    if n > BRUTE_FORCE_MAX_N or cells > BRUTE_FORCE_MAX_CELLS ** n \
            or M > BRUTE_FORCE_MAX_ORDER:
        raise BoxTooLarge("limits: n <= %d, cells <= %d^n, M <= %d"
                          % (BRUTE_FORCE_MAX_N, BRUTE_FORCE_MAX_CELLS,
                             BRUTE_FORCE_MAX_ORDER))


def _compositions(total: int, slots: int):
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def brute_force_expand(family: str, m: int, numerator, box,
                       M: int) -> CoeffMap:
    """Expand t^a x^w / f^m term by term over a bounded exponent box.

    numerator is the pair (a, w); f = 1 - t g with g the family's
    support sum.  1/f^m = sum_k C(m-1+k, k) t^k g^k and g^k is opened
    multinomially, keeping only exponents inside the box.
    """
    a, w = numerator
    w = tuple(w)
    n = len(w)
    box = _as_box(box, n)
    _check_box(n, box, M)
    lo, hi = box
    out = {}

    def add(u, tpow, c):
        if tpow >= M:
            return
        row = out.get(u)
        if row is None:
            row = [0] * M
            out[u] = row
        row[tpow] += c

    if family == "simplicial":
        for k in range(M - a):
            binom = math.comb(m - 1 + k, k)
            # a_0 copies of 1/(x_1..x_n), a_i copies of x_i
            for a0 in range(k + 1):
                for tail in _compositions(k - a0, n):
                    u = tuple(w[i] + tail[i] - a0 for i in range(n))
                    if all(lo[i] <= u[i] <= hi[i] for i in range(n)):
                        add(u, a + k,
                            binom * multinomial((a0,) + tail))
    elif family == "hyperoctahedral":
        for k in range(M - a):
            binom = math.comb(m - 1 + k, k)
            # p_i copies of x_i and q_i of 1/x_i
            for tail in _compositions(k, 2 * n):
                u = tuple(w[i] + tail[2 * i] - tail[2 * i + 1]
                          for i in range(n))
                if all(lo[i] <= u[i] <= hi[i] for i in range(n)):
                    add(u, a + k, binom * multinomial(tail))
    else:
        raise ValueError("unknown family %r" % family)

    data = {u: PowerSeries(row, M) for u, row in out.items()}
    return CoeffMap(family=family, n=n, box=box, order=M, data=data)


def cartier_truncated(cm: CoeffMap, p: int, box=None) -> CoeffMap:
    """Re-index c_u -> c_{pu} on a window whose p-dilate fits in cm."""
    lo, hi = cm.box
    if box is None:
        box = (tuple(-((-a) // p) for a in lo),
               tuple(b // p for b in hi))
    box = _as_box(box, cm.n)
    tlo, thi = box
    if any(t * p < a for t, a in zip(tlo, lo)) or \
            any(t * p > b for t, b in zip(thi, hi)):
        raise BoxTooLarge("p-dilated target box leaves the source box")
    data = {}
    for u in cm.data:
        if all(x % p == 0 for x in u):
            v = tuple(x // p for x in u)
            if all(tlo[i] <= v[i] <= thi[i] for i in range(cm.n)):
                data[v] = cm.data[u]
    return CoeffMap(family=cm.family, n=cm.n, box=box,
                    order=cm.order, data=data)


@dataclass
class HyperoctConstants:
    """F_u(t) for the hyperoctahedral family, with support size."""

    u: tuple
    n: int
    series: PowerSeries
    ell: int


def hyperoct_constant_term(u: Sequence[int], n: int,
                           M: int) -> HyperoctConstants:
    """F_u(t) = sum_m t^{2|m|} (2|m|)!/(m_1!..m_n!)^2 prod m_i^{u_i},
    computed by convolving per-coordinate weight polynomials."""
    u = tuple(u)
    if len(u) != n or any(x < 0 for x in u):
        raise ValueError("u must be a length-n nonnegative vector")
    K = (M - 1) // 2 if M >= 1 else -1
    acc = [Fraction(1)] + [Fraction(0)] * K
    for i in range(n):
        wi = u[i]
        # 0^0 = 1 keeps the m_i = 0 term when u_i = 0
        col = [Fraction(k ** wi, math.factorial(k) ** 2)
               for k in range(K + 1)]
        nxt = [Fraction(0)] * (K + 1)
        for a in range(K + 1):
            if acc[a] == 0:
                continue
            for b in range(K + 1 - a):
                if col[b]:
                    nxt[a + b] += acc[a] * col[b]
        acc = nxt
    coeffs = [0] * M
    for k in range(K + 1):
        val = acc[k] * math.factorial(2 * k)
        if 2 * k < M:
            coeffs[2 * k] = int(val) if val.denominator == 1 else val
    return HyperoctConstants(u=u, n=n, series=PowerSeries(coeffs, M),
                             ell=sum(1 for x in u if x > 0))


def mu_at_zero(u: Sequence[int], j: int, n: int) -> Fraction:
    """1/2^j (n-j)!/n! when u is a permutation of j ones, else 0."""
    u = tuple(u)
    if any(x < 0 for x in u) or sum(u) >= n:
        raise ValueError("need u >= 0 with |u| < n")
    if not 0 <= j <= sum(u):
        raise ValueError("need 0 <= j <= |u|")
    ones = sum(1 for x in u if x == 1)
    if any(x > 1 for x in u) or ones != j:
        return Fraction(0)
    return Fraction(math.factorial(n - j),
                    2 ** j * math.factorial(n))


def alternating_identity_check(F: PowerSeries, n: int) -> bool:
    """sum_{j=0}^{n+1} (-1)^j C(n+1, j) F(jx)/F(x)^j = O(x^{n+1})
    for any series with F(0) = 1."""
    if F.order < n + 2:
        raise ValueError("need F mod x^%d at least" % (n + 2))
    if F.constant_term() != 1:
        raise ValueError("need F(0) = 1")
    order = n + 2
    Ft = F.truncate(order)
    inv = Ft.invert()
    acc = PowerSeries.zero(order)
    invpow = PowerSeries.one(order)
    for j in range(n + 2):
        term = Ft.scale_argument(j) * invpow * \
            ((-1) ** j * math.comb(n + 1, j))
        acc = acc + term
        invpow = invpow * inv
    return all(not acc.known(c) for c in range(n + 1))


def eta_from_omega(U: Sequence[int]) -> list:
    """Stirling expansion eta_U = sum_K prod S(U_i, K_i) omega_K as a
    list of (K, coefficient) pairs with nonzero coefficients."""
    U = tuple(U)
    if any(x < 0 for x in U):
        raise ValueError("need U >= 0")
    terms = [((), 1)]
    for ui in U:
        lo = 0 if ui == 0 else 1
        nxt = []
        for K, c in terms:
            for ki in range(lo, ui + 1):
                s = stirling2(ui, ki)
                if s:
                    nxt.append((K + (ki,), c * s))
        terms = nxt
    return sorted(terms)


def omega_ell_coefficients(U: Sequence[int], n: int) -> list:
    """Exact rationals c_i with prod_i [l]_{U_i} = sum c_i (n+1)^i l^i."""
    U = tuple(U)
    poly = [Fraction(1)]
    for ui in U:
        # multiply by [l]_{ui} = l (l-1) ... (l-ui+1)
        for shift in range(ui):
            shifted = [Fraction(0)] + poly
            scaled = [-shift * c for c in poly] + [Fraction(0)]
            poly = [a + b for a, b in zip(shifted, scaled)]
    return [c / (n + 1) ** i for i, c in enumerate(poly)]
