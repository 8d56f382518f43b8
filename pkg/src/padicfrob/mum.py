"""MUM-type differential operators in theta form, their standard
log-basis of solutions, period series, and minimal-operator guessing.

An operator is L = sum_i a_i(t) theta^i with integer polynomial
coefficients, theta = t d/dt.  MUM normalization means the monic form
theta^n + sum (a_i/a_n) theta^i has all lower coefficients vanishing at
t = 0, i.e. a_i(0) = 0 for i < n and a_n(0) != 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .qseries import LogSeries, PowerSeries


class NotMUM(ValueError):
    """Operator violates the MUM normalization at t = 0."""


class NoOperatorFound(ArithmeticError):
    """No order-n, degree-d annihilator with D(0) = 1 exists."""


class AmbiguousNullspace(ArithmeticError):
    """More than one candidate annihilator; raise M or lower d."""


def _strip(poly: Sequence[int]) -> list:
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


@dataclass
class MumOperator:
    """L = sum_i coeffs[i](t) theta^i; coeffs[i] lists t-powers low first."""

    coeffs: list

    def __post_init__(self):
        self.coeffs = [_strip(c) for c in self.coeffs]
        if not self.coeffs or not self.coeffs[-1]:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max((len(c) - 1 for c in self.coeffs if c), default=0)

    def a(self, i: int) -> list:
        return self.coeffs[i] if 0 <= i <= self.order else []

    def leading(self) -> list:
        """D(t) = a_n(t)."""
        return self.coeffs[-1]

    def is_mum_normalized(self) -> bool:
        n = self.order
        if not self.coeffs[n] or self.coeffs[n][0] == 0:
            return False
        return all(not c or c[0] == 0 for c in self.coeffs[:n])

    def coefficient_series(self, i: int, order: int) -> PowerSeries:
        return PowerSeries(self.a(i), order)

    def __eq__(self, other):
        if not isinstance(other, MumOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def to_json(self) -> str:
        payload = {
            "n": self.order,
            "coeffs": [[str(x) for x in c] for c in self.coeffs],
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MumOperator":
        payload = json.loads(text)
        coeffs = [[int(x) for x in c] for c in payload["coeffs"]]
        if len(coeffs) != payload["n"] + 1:
            raise ValueError("coefficient count does not match order")
        return cls(coeffs)

    def __repr__(self):
        def poly_str(c):
            parts = []
            for k, x in enumerate(c):
                if x == 0:
                    continue
                if k == 0:
                    parts.append(str(x))
                elif k == 1:
                    parts.append("%+d*t" % x)
                else:
                    parts.append("%+d*t^%d" % (x, k))
            return "".join(parts) or "0"

        terms = ["(%s)*theta^%d" % (poly_str(c), i)
                 for i, c in enumerate(self.coeffs) if c]
        return "MumOperator[%s]" % " + ".join(reversed(terms))


def simplicial_operator(n: int) -> MumOperator:
    """theta^n - ((n+1) t)^(n+1) (theta+1) ... (theta+n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    rising = [1]
    for k in range(1, n + 1):
        nxt = [0] * (len(rising) + 1)
        for i, c in enumerate(rising):
            nxt[i] += c * k
            nxt[i + 1] += c
        rising = nxt
    scale = (n + 1) ** (n + 1)
    coeffs = []
    for i in range(n + 1):
        poly = [0] * (n + 2)
        if i == n:
            poly[0] = 1
        poly[n + 1] = -scale * rising[i]
        coeffs.append(poly)
    return MumOperator(coeffs)


# reference operators for the hyperoctahedral family, as tabulated for
# n = 4 and n = 5; the guesser must reproduce these integer for integer
KNOWN_HYPEROCT_OPERATORS = {
    4: MumOperator([
        [0, 0, -128, 0, 12288],
        [0, 0, -416, 0, 28672],
        [0, 0, -528, 0, 23552],
        [0, 0, -320, 0, 8192],
        [1, 0, -80, 0, 1024],
    ]),
    5: MumOperator([
        [0, 0, -320, 0, 109440, 0, -1728000],
        [0, 0, -1216, 0, 300096, 0, -3945600],
        [0, 0, -1904, 0, 316640, 0, -3240000],
        [0, 0, -1568, 0, 163280, 0, -1224000],
        [0, 0, -700, 0, 41440, 0, -216000],
        [1, 0, -140, 0, 4144, 0, -14400],
    ]),
}


def period_series_simplicial(n: int, M: int) -> PowerSeries:
    """sum_k (k(n+1))!/k!^(n+1) t^((n+1)k) mod t^M."""
    coeffs = [0] * M
    k = 0
    while (n + 1) * k < M:
        coeffs[(n + 1) * k] = (math.factorial(k * (n + 1))
                               // math.factorial(k) ** (n + 1))
        k += 1
    return PowerSeries(coeffs, M)


def period_series_hyperoctahedral(n: int, M: int) -> PowerSeries:
    """sum_k t^(2k) sum_{k_1+...+k_n=k} (2k)!/(k_1!...k_n!)^2 mod t^M."""
    half = (M + 1) // 2
    base = [Fraction(1, math.factorial(j) ** 2) for j in range(half)]
    conv = [Fraction(int(j == 0)) for j in range(half)]
    for _ in range(n):
        nxt = [Fraction(0)] * half
        for i, x in enumerate(conv):
            if x == 0:
                continue
            for j, y in enumerate(base):
                if i + j >= half:
                    break
                nxt[i + j] += x * y
        conv = nxt
    coeffs = [0] * M
    for k in range(half):
        if 2 * k < M:
            val = conv[k] * math.factorial(2 * k)
            assert val.denominator == 1
            coeffs[2 * k] = int(val)
    return PowerSeries(coeffs, M)


# -- standard basis ----------------------------------------------------


@dataclass
class StandardBasis:
    """Solutions y_i = sum_k F_k log(t)^(i-k)/(i-k)! of a MUM operator.

    F_0(0) = 1 and F_i(0) = 0 for i > 0; each F_i is an exact rational
    series mod t^order.
    """

    operator: MumOperator
    fs: list
    order: int

    def y(self, i: int) -> LogSeries:
        if not 0 <= i < len(self.fs):
            raise IndexError("basis has indices 0..%d" % (len(self.fs) - 1))
        slots = []
        for e in range(i + 1):
            slots.append(self.fs[i - e] / math.factorial(e))
        return LogSeries(slots)


def _theta_shift(L: MumOperator, r: int) -> list:
    """Coefficient polynomials of L^(r) = sum_j a_j C(j,r) theta^(j-r)."""
    n = L.order
    out = []
    for i in range(n - r + 1):
        c = math.comb(i + r, r)
        out.append([c * x for x in L.a(i + r)])
    return out


def _apply_poly_op(op_coeffs: list, f: PowerSeries) -> PowerSeries:
    """sum_i op_coeffs[i](t) theta^i f, at f's truncation order."""
    order = f.order
    acc = PowerSeries.zero(order)
    cur = f
    for poly in op_coeffs:
        if poly:
            acc = acc + PowerSeries(poly, order) * cur
        cur = cur.theta()
    return acc


def standard_basis(L: MumOperator, M: int) -> StandardBasis:
    """Solve L(F_m) = -sum_{r=1..m} L^(r)(F_{m-r}) order by order.

    The t^c coefficient of L(F) is D(0) c^n f_c plus terms in lower
    f's, so each coefficient is fixed by dividing by the indicial value
    D(0) c^n, nonzero for c >= 1.
    """
    if M < 1:
        raise ValueError("M must be positive")
    n = L.order
    if not L.is_mum_normalized():
        raise NotMUM("need a_i(0) = 0 for i < n and a_n(0) != 0")
    d0 = L.coeffs[n][0]

    # weights[c][i] = t^c coefficient of a_i, for convolution below
    maxdeg = L.degree
    fs = []
    for m in range(n):
        if m == 0:
            rhs = PowerSeries.zero(M)
        else:
            rhs = PowerSeries.zero(M)
            for r in range(1, m + 1):
                rhs = rhs - _apply_poly_op(_theta_shift(L, r), fs[m - r])
        f = [Fraction(1 if m == 0 else 0)]
        for c in range(1, M):
            acc = Fraction(rhs.known(c))
            for d in range(1, min(c, maxdeg) + 1):
                base = c - d
                power = 1
                inner = 0
                for i in range(n + 1):
                    coef = L.a(i)[d] if d < len(L.a(i)) else 0
                    if coef:
                        inner += coef * power
                    power *= base
                if inner:
                    acc -= inner * f[base]
            f.append(acc / (d0 * c ** n))
        fs.append(PowerSeries(f, M))
    return StandardBasis(operator=L, fs=fs, order=M)


def apply_operator(L: MumOperator, s):
    """L applied to a PowerSeries or LogSeries, truncated consistently."""
    plain = isinstance(s, PowerSeries)
    if plain:
        s = LogSeries.from_series(s)
    order = min(c.order for c in s.coeffs)
    acc = LogSeries([PowerSeries.zero(order)])
    cur = s
    for i in range(L.order + 1):
        poly = L.a(i)
        if poly:
            acc = acc + PowerSeries(poly, order) * cur
        if i < L.order:
            cur = cur.theta()
    return acc.component(0) if plain else acc


# -- operator guessing -------------------------------------------------

GUESS_GUARD = 10


def _nullspace(rows: list, ncols: int) -> list:
    """Basis of the rational nullspace of the given row list."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for k in range(r, len(mat)):
            if mat[k][col] != 0:
                piv = k
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = Fraction(1) / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for k in range(len(mat)):
            if k != r and mat[k][col] != 0:
                f = mat[k][col]
                mat[k] = [x - f * y for x, y in zip(mat[k], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -mat[row_idx][fc]
        basis.append(vec)
    return basis


def guess_operator(f: PowerSeries, n: int, d: int,
                   M: int | None = None) -> MumOperator:
    """Recover the order-n, degree-<=d annihilator of f in theta form.

    Sets up [t^c](sum a_{i,k} t^k theta^i f) = 0 for c < M and solves
    the nullspace exactly over Q; the result is content-reduced and
    normalized to D(0) = 1.
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    ncols = (n + 1) * (d + 1)
    if M is None:
        M = ncols + GUESS_GUARD
    if M <= ncols:
        raise ValueError("need more equations than unknowns")
    if f.order < M:
        raise ValueError("series known only mod t^%d, need t^%d"
                         % (f.order, M))
    rows = []
    for c in range(M):
        row = []
        for i in range(n + 1):
            for k in range(d + 1):
                row.append(0 if k > c else (c - k) ** i * f.known(c - k))
        rows.append(row)
    basis = _nullspace(rows, ncols)
    if not basis:
        raise NoOperatorFound("no order-%d degree-%d annihilator mod t^%d"
                              % (n, d, M))
    if len(basis) > 1:
        raise AmbiguousNullspace("nullspace dimension %d" % len(basis))
    vec = basis[0]
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    content = 0
    for x in ints:
        content = math.gcd(content, x)
    ints = [x // content for x in ints]
    coeffs = [ints[i * (d + 1):(i + 1) * (d + 1)] for i in range(n + 1)]
    lead0 = coeffs[n][0] if coeffs[n] else 0
    if lead0 == 0:
        raise NoOperatorFound("leading coefficient vanishes at t = 0")
    if lead0 < 0:
        coeffs = [[-x for x in c] for c in coeffs]
        lead0 = -lead0
    if lead0 != 1:
        raise NoOperatorFound("cannot normalize D(0) = %d to 1" % lead0)
    return MumOperator(coeffs)
