"""Frobenius structures A = sum_j A_j(t) theta^j of MUM operators.

The defining property is A(y_i(t^p)) = p^i sum_k alpha_k y_{i-k}(t) on
the standard basis, alpha_0 = 1.  Taking the log-free part of each
equation yields an n x n system over power series whose t = 0 matrix is
diag(p^i); it is solved order by order, exactly over Q, once per
alpha-slot so that A_j depends on the alpha constants linearly:

    A_j = A_j^(0) + sum_{k>=1} alpha_k A_j^(k).

Numeric alpha values enter only at assembly time, so no p-adic
precision is spent inside the recursion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .mum import MumOperator, StandardBasis, apply_operator, standard_basis
from .padic_core import (
    CongruenceSolution,
    CongruenceSystem,
    InconsistentSystem,
    PadicNum,
    solve_affine_congruences,
    vp,
)
from .qseries import LogSeries, PowerSeries


class InsufficientOrder(ValueError):
    """Requested t-order cannot support the computation."""


class PrecisionExhausted(ArithmeticError):
    """Integrality of some coefficient is undecidable at the supplied
    alpha precision."""

    def __init__(self, j: int, m: int):
        super().__init__("coefficient of theta^%d at t^%d undecidable"
                         % (j, m))
        self.j = j
        self.m = m


class NonUnitWronskian(ValueError):
    """Wronskian constant term is not a p-adic unit."""


@dataclass
class FrobeniusDecomposition:
    """Exact alpha-linear decomposition of the Frobenius coefficients.

    slots[0][j] is the alpha-independent part of A_j; slots[k][j] for
    k >= 1 multiplies alpha_k.  All series are exact rationals mod
    t^order.
    """

    p: int
    operator: MumOperator
    basis: StandardBasis
    slots: list
    order: int

    @property
    def n(self) -> int:
        return self.operator.order

    def coefficient(self, j: int, m: int, alphas: Sequence):
        """Assembled t^m coefficient of A_j at the given alpha_1.."""
        acc = self.slots[0][j].known(m)
        for k, al in enumerate(alphas, start=1):
            c = self.slots[k][j].known(m)
            if not (isinstance(c, (int, Fraction)) and c == 0):
                acc = acc + al * c
        return acc

    def assemble(self, alphas: Sequence) -> list:
        """A_0..A_{n-1} at the given alpha_1..alpha_{n-1}."""
        if len(alphas) != self.n - 1:
            raise ValueError("need %d alpha values" % (self.n - 1))
        out = []
        for j in range(self.n):
            s = self.slots[0][j]
            for k, al in enumerate(alphas, start=1):
                s = s + self.slots[k][j] * al
            out.append(s)
        return out


def solve_A_series(L: MumOperator, p: int, M: int,
                   basis: StandardBasis | None = None
                   ) -> FrobeniusDecomposition:
    """Solve the log-free part of A(y_i(t^p)) = p^i sum alpha_k y_{i-k}
    for every alpha-slot, exactly over Q, mod t^M.

    The matrix entry multiplying A_j in equation i is
    B_ij = p^j sum_m C(j,m) (theta^(j-m) F_{i-m})(t^p), which reduces
    to p^i delta_ij at t = 0, so each t-order is fixed by dividing by
    p^i.
    """
    if M < 1:
        raise InsufficientOrder("need t-order at least 1")
    n = L.order
    if basis is None:
        basis = standard_basis(L, M)
    elif basis.order < M:
        raise InsufficientOrder("basis known mod t^%d, need t^%d"
                                % (basis.order, M))
    th = []
    for k in range(n):
        row = [basis.fs[k].truncate(M)]
        for _ in range(n - 1):
            row.append(row[-1].theta())
        th.append(row)
    bmat = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = PowerSeries.zero(M)
            for m in range(min(i, j) + 1):
                acc = acc + math.comb(j, m) * \
                    th[i - m][j - m].substitute_tp(p).truncate(M)
            row.append(acc * p ** j)
        bmat.append([[s.known(c) for c in range(M)] for s in row])

    slots = []
    for s in range(n):
        rhs = []
        for i in range(n):
            if i - s < 0:
                rhs.append(PowerSeries.zero(M))
            else:
                rhs.append(th[i - s][0] * p ** i)
        sol = [[] for _ in range(n)]
        for c in range(M):
            for i in range(n):
                acc = Fraction(rhs[i].known(c))
                for j in range(n):
                    col = bmat[i][j]
                    a_j = sol[j]
                    # matrix entries live in degrees p, 2p, ... past 0
                    for d in range(p, c + 1, p):
                        b = col[d]
                        if b and a_j[c - d]:
                            acc -= b * a_j[c - d]
                sol[i].append(acc / p ** i)
        slots.append([PowerSeries(a, M) for a in sol])
    return FrobeniusDecomposition(p=p, operator=L, basis=basis,
                                  slots=slots, order=M)


def _scaled_rhs(dec: FrobeniusDecomposition, i: int,
                alphas: Sequence) -> LogSeries:
    """p^i (y_i + sum_k alpha_k y_{i-k}) mod t^order."""
    acc = dec.basis.y(i)
    for k, al in enumerate(alphas, start=1):
        if i - k < 0:
            break
        acc = acc + dec.basis.y(i - k) * al
    return acc * dec.p ** i


def _verify_frobenius_detail(dec: FrobeniusDecomposition,
                             alphas: Sequence, M: int):
    """None if the full identity holds mod t^M; else the first failing
    (basis index, log power, t degree)."""
    if M > dec.order:
        raise InsufficientOrder("decomposition known mod t^%d" % dec.order)
    L = dec.operator
    a_series = dec.assemble(alphas)
    for i in range(dec.n):
        yi_p = dec.basis.y(i).substitute_tp(dec.p)
        image = LogSeries([PowerSeries.zero(M)])
        cur = yi_p
        for j in range(dec.n):
            image = image + a_series[j] * cur
            if j < dec.n - 1:
                cur = cur.theta()
        want = _scaled_rhs(dec, i, alphas)
        diff = image - want
        for e in range(len(diff.coeffs)):
            comp = diff.component(e).truncate(M)
            for c in range(M):
                val = comp.known(c)
                bad = (not val.is_zero()) if isinstance(val, PadicNum) \
                    else val != 0
                if bad:
                    return (i, e, c)
        residue = apply_operator(L, image)
        if not residue.is_zero_mod(M):
            return (i, -1, -1)
    return None


def verify_frobenius_property(dec: FrobeniusDecomposition,
                              alphas: Sequence, M: int) -> bool:
    """Check the full log-polynomial identity A(y_i(t^p)) =
    p^i sum alpha_k y_{i-k} mod t^M, plus L(A(y_i(t^p))) = 0."""
    return _verify_frobenius_detail(dec, alphas, M) is None


@dataclass
class IntegralityReport:
    p: int
    M: int
    verdict: str
    min_valuation: int | None
    entries: list
    first_failing: tuple | None = None

    def to_json(self) -> str:
        payload = {
            "p": self.p,
            "M": self.M,
            "verdict": self.verdict,
            "min_valuation": self.min_valuation,
            "entries": self.entries,
        }
        return json.dumps(payload, sort_keys=True)


def check_integrality(dec: FrobeniusDecomposition, alphas: Sequence,
                      p: int, M: int) -> IntegralityReport:
    """Decide whether every assembled A_j coefficient through t^M lies
    in Z_p.

    A coefficient decides as integral when its valuation is provably
    >= 0 (exact value, nonzero residue, or an inexact zero with at
    least one digit of precision) and as non-integral when the
    valuation is provably negative; anything else raises
    PrecisionExhausted.
    """
    if p != dec.p:
        raise ValueError("decomposition was solved at p=%d" % dec.p)
    if M > dec.order:
        raise InsufficientOrder("decomposition known mod t^%d" % dec.order)
    entries = []
    min_val = None
    first_bad = None
    for j in range(dec.n):
        for m in range(M):
            value = dec.coefficient(j, m, alphas)
            if isinstance(value, PadicNum):
                if value.is_exact:
                    if value.is_exact_zero:
                        continue
                    val, prec = vp(value.exact, p), None
                elif value.is_zero():
                    if value.abs_precision < 1:
                        raise PrecisionExhausted(j, m)
                    entries.append({"j": j, "m": m, "val": None,
                                    "prec": int(value.abs_precision)})
                    continue
                else:
                    val, prec = int(value.valuation), \
                        int(value.abs_precision)
            else:
                if value == 0:
                    continue
                val, prec = vp(Fraction(value), p), None
            entries.append({"j": j, "m": m, "val": val, "prec": prec})
            if min_val is None or val < min_val:
                min_val = val
            if val < 0 and first_bad is None:
                first_bad = (j, m, val)
    verdict = "integral" if first_bad is None else "non-integral"
    return IntegralityReport(p=p, M=M, verdict=verdict,
                             min_valuation=min_val, entries=entries,
                             first_failing=first_bad)


def recover_alpha(dec: FrobeniusDecomposition, p: int, M: int):
    """Impose vp(assembled A_j coefficient) >= 0 for every j and every
    t-degree below M and solve the resulting affine congruence system
    for alpha_1..alpha_{n-1}.

    Returns the full solution coset; its per-coordinate exponents grow
    with M at an empirical rate, with no a-priori guarantee.
    """
    if M > dec.order:
        raise InsufficientOrder("decomposition known mod t^%d" % dec.order)
    rows = []
    for j in range(dec.n):
        for m in range(M):
            c0 = Fraction(dec.slots[0][j].known(m))
            coeffs = [Fraction(dec.slots[k][j].known(m))
                      for k in range(1, dec.n)]
            if all(x == 0 for x in coeffs):
                if c0 != 0 and vp(c0, p) < 0:
                    raise InconsistentSystem(
                        "constant part non-integral at j=%d, m=%d" % (j, m))
                continue
            rows.append((c0, coeffs))
    if not rows:
        return CongruenceSolution(prime=p, representative=[],
                                  exponents=[], modulus_exponent=0,
                                  generators=[])
    system = CongruenceSystem.build(p, rows)
    return solve_affine_congruences(system)


def nonuniqueness_witness(L: MumOperator, lam, p: int, M: int,
                          wronskian: PowerSeries | None = None) -> bool:
    """Exhibit the one-parameter family of Frobenius structures on an
    order-2 operator: A + lam (y_0(t)/W(t^p)) (y_0(t^p) theta -
    theta(y_0(t^p))) still maps both y_i(t^p) to solutions mod t^M.

    W is the Wronskian F_0^2 + F_0 theta(F_1) - F_1 theta(F_0),
    computed from the standard basis unless supplied; its constant
    term must be a p-adic unit.
    """
    if L.order != 2:
        raise ValueError("witness construction needs an order-2 operator")
    sb = standard_basis(L, M)
    f0, f1 = sb.fs
    if wronskian is None:
        wronskian = f0 * f0 + f0 * f1.theta() - f1 * f0.theta()
    w0 = Fraction(wronskian.constant_term())
    if w0 == 0 or vp(w0, p) != 0:
        raise NonUnitWronskian("W(0) = %s is not a unit at p=%d" % (w0, p))
    dec = solve_A_series(L, p, M, basis=sb)
    lam = Fraction(lam) if isinstance(lam, int) else lam
    y0_p = f0.substitute_tp(p).truncate(M)
    winv_p = wronskian.substitute_tp(p).truncate(M).invert()
    extra1 = f0 * winv_p * y0_p * lam
    extra0 = f0 * winv_p * \
        f0.theta().substitute_tp(p).truncate(M) * (-p) * lam
    a0 = dec.slots[0][0] + extra0
    a1 = dec.slots[0][1] + extra1
    for i in range(2):
        yi_p = sb.y(i).substitute_tp(p)
        image = a0 * yi_p + a1 * yi_p.theta()
        if not apply_operator(L, image).is_zero_mod(M):
            return False
    return True
