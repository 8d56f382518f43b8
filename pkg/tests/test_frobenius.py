import json
import random
from fractions import Fraction

import pytest

from padicfrob.frobenius import (
    FrobeniusDecomposition,
    InsufficientOrder,
    NonUnitWronskian,
    PrecisionExhausted,
    check_integrality,
    nonuniqueness_witness,
    recover_alpha,
    solve_A_series,
    verify_frobenius_property,
    _verify_frobenius_detail,
)
from padicfrob.mum import (
    KNOWN_HYPEROCT_OPERATORS,
    MumOperator,
    simplicial_operator,
    standard_basis,
)
from padicfrob.padic_core import PadicNum, vp
from padicfrob.qseries import PowerSeries
from padicfrob.zeta_gamma import (
    alpha_hyperoctahedral,
    alpha_simplicial,
    evaluate_zeta_poly,
)

GEOM_L = MumOperator([[0, -1], [1, -1]])  # (1-t)theta - t, F_0 = 1/(1-t)


def test_order_one_closed_form():
    p, M = 5, 40
    dec = solve_A_series(GEOM_L, p, M)
    num = PowerSeries([1] + [0] * (p - 1) + [-1], M)
    den = PowerSeries([1, -1], M)
    want = num * den.invert()
    a0 = dec.slots[0][0]
    assert all(a0.known(c) == want.known(c) for c in range(M))
    assert verify_frobenius_property(dec, [], M)


def test_constant_terms_are_alpha():
    dec = solve_A_series(simplicial_operator(3), 5, 12)
    for s in range(3):
        for j in range(3):
            assert dec.slots[s][j].known(0) == (1 if s == j else 0)
    alphas = [Fraction(2, 3), Fraction(-7)]
    a = dec.assemble(alphas)
    assert a[0].known(0) == 1
    assert a[1].known(0) == alphas[0]
    assert a[2].known(0) == alphas[1]


def test_matches_cramer_solve():
    # independent 2x2 solve of the log-free system via Cramer's rule
    L = simplicial_operator(2)
    p, M = 5, 40
    sb = standard_basis(L, M)
    f0, f1 = sb.fs
    B00 = f0.substitute_tp(p).truncate(M)
    B01 = f0.theta().substitute_tp(p).truncate(M) * p
    B10 = f1.substitute_tp(p).truncate(M)
    B11 = (f1.theta() + f0).substitute_tp(p).truncate(M) * p
    det = B00 * B11 - B01 * B10
    dec = solve_A_series(L, p, M)
    for alpha1 in (Fraction(0), Fraction(3, 2)):
        r0, r1 = f0, (f1 + f0 * alpha1) * p
        want0 = (r0 * B11 - B01 * r1) * det.invert()
        want1 = (B00 * r1 - r0 * B10) * det.invert()
        got0, got1 = dec.assemble([alpha1])
        assert all(got0.known(c) == want0.known(c) for c in range(M))
        assert all(got1.known(c) == want1.known(c) for c in range(M))


def test_full_identity_holds_for_any_alpha():
    # the log-free solve makes the whole log-polynomial identity true,
    # independently of the alpha values
    rng = random.Random(20240817)
    for L in (simplicial_operator(3), KNOWN_HYPEROCT_OPERATORS[4]):
        n = L.order
        dec = solve_A_series(L, 5, 25)
        for _ in range(3):
            alphas = [Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3]))
                      for _ in range(n - 1)]
            assert verify_frobenius_property(dec, alphas, 25)


def test_verify_with_padic_alphas():
    p, M, N = 7, 30, 8
    dec = solve_A_series(simplicial_operator(4), p, M)
    alphas = [evaluate_zeta_poly(q, p, N) for q in alpha_simplicial(4)]
    assert verify_frobenius_property(dec, alphas, M)


def test_verify_detects_corruption():
    p, M = 5, 20
    dec = solve_A_series(simplicial_operator(3), p, M)
    bad = [[s.known(c) for c in range(M)] for s in dec.slots[0]]
    bad[1][7] = bad[1][7] + Fraction(1, 5)
    broken = FrobeniusDecomposition(
        p=p, operator=dec.operator, basis=dec.basis,
        slots=[[PowerSeries(c, M) for c in bad]] + dec.slots[1:],
        order=M)
    where = _verify_frobenius_detail(broken, [Fraction(0)] * 2, M)
    assert where is not None


def test_integrality_simplicial_true_alpha():
    p, M, N = 7, 40, 12
    dec = solve_A_series(simplicial_operator(4), p, M)
    alphas = [evaluate_zeta_poly(q, p, N) for q in alpha_simplicial(4)]
    rep = check_integrality(dec, alphas, p, M)
    assert rep.verdict == "integral"
    assert rep.min_valuation == 0
    assert rep.first_failing is None


def test_integrality_detects_alpha1_shift():
    # the alpha_1 slot has denominators (7^-2 by t^35), so shifting
    # alpha_1 off its true value 0 breaks integrality
    p, M = 7, 40
    dec = solve_A_series(simplicial_operator(4), p, M)
    rep = check_integrality(dec, [Fraction(1), Fraction(0), Fraction(0)],
                            p, M)
    assert rep.verdict == "non-integral"
    assert rep.min_valuation <= -1
    j, m, val = rep.first_failing
    assert m <= 35 and val < 0


def test_integrality_verdict_stable_under_larger_M():
    p = 7
    dec = solve_A_series(simplicial_operator(4), p, 60)
    alphas = [evaluate_zeta_poly(q, p, 10) for q in alpha_simplicial(4)]
    for M in (35, 50, 60):
        assert check_integrality(dec, alphas, p, M).verdict == "integral"
    for M in (40, 60):
        rep = check_integrality(dec, [1, 0, 0], p, M)
        assert rep.verdict == "non-integral"


def test_integrality_report_json():
    p, M = 5, 12
    dec = solve_A_series(simplicial_operator(3), p, M)
    rep = check_integrality(dec, [Fraction(0), Fraction(0)], p, M)
    payload = json.loads(rep.to_json())
    assert payload["p"] == p and payload["M"] == M
    assert payload["verdict"] == "integral"
    for entry in payload["entries"]:
        assert set(entry) == {"j", "m", "val", "prec"}
    assert rep.to_json() == rep.to_json()
    assert list(payload) == sorted(payload)


def test_integrality_precision_exhausted():
    p, M = 7, 40
    dec = solve_A_series(simplicial_operator(4), p, M)
    # one usable digit on alpha_1 is eaten by the 7^-2 denominators
    blunt = PadicNum.inexact_zero(p, 1)
    with pytest.raises(PrecisionExhausted) as info:
        check_integrality(dec, [blunt, Fraction(0), Fraction(0)], p, M)
    assert info.value.m <= 35


def test_recover_alpha_simplicial():
    p, M = 7, 70
    dec = solve_A_series(simplicial_operator(4), p, M)
    sol = recover_alpha(dec, p, M)
    # integrality pins alpha_1 to 0 mod 49; the top two alphas stay free
    assert sol.exponents[0] == 2
    assert sol.representative[0] % 49 == 0
    free = {tuple(g) for g in sol.generators}
    assert (0, 1, 0) in free and (0, 0, 1) in free


def test_recover_alpha_hyperoct():
    p, M = 7, 70
    dec = solve_A_series(KNOWN_HYPEROCT_OPERATORS[4], p, M)
    sol = recover_alpha(dec, p, M)
    assert sol.exponents[0] >= 2
    assert sol.representative[0] % p ** sol.exponents[0] == 0


def test_recover_alpha_order_one_vacuous():
    dec = solve_A_series(GEOM_L, 5, 20)
    sol = recover_alpha(dec, 5, 20)
    assert sol.representative == []


def test_insufficient_order_paths():
    with pytest.raises(InsufficientOrder):
        solve_A_series(simplicial_operator(2), 5, 0)
    sb = standard_basis(simplicial_operator(2), 10)
    with pytest.raises(InsufficientOrder):
        solve_A_series(simplicial_operator(2), 5, 20, basis=sb)
    dec = solve_A_series(simplicial_operator(2), 5, 10)
    with pytest.raises(InsufficientOrder):
        check_integrality(dec, [Fraction(0)], 5, 11)
    with pytest.raises(InsufficientOrder):
        recover_alpha(dec, 5, 11)


def test_prime_mismatch_rejected():
    dec = solve_A_series(simplicial_operator(2), 5, 10)
    with pytest.raises(ValueError):
        check_integrality(dec, [Fraction(0)], 7, 10)


def test_nonuniqueness_witness_family():
    L = simplicial_operator(2)
    for lam in (0, 1, 2):
        assert nonuniqueness_witness(L, lam, 5, 40)


def test_nonuniqueness_wrong_wronskian():
    L = simplicial_operator(2)
    M = 30
    sb = standard_basis(L, M)
    f0, f1 = sb.fs
    w = f0 * f0 + f0 * f1.theta() - f1 * f0.theta()
    corrupted = w + PowerSeries([0, 0, 0, 1], M)
    assert nonuniqueness_witness(L, 1, 5, M, wronskian=corrupted) is False


def test_nonuniqueness_nonunit_wronskian_rejected():
    L = simplicial_operator(2)
    with pytest.raises(NonUnitWronskian):
        nonuniqueness_witness(L, 1, 5, 20,
                              wronskian=PowerSeries([5, 1], 20))
    with pytest.raises(ValueError):
        nonuniqueness_witness(simplicial_operator(3), 1, 5, 20)


def test_hyperoct_true_alpha_integral():
    p, M, N = 7, 40, 10
    dec = solve_A_series(KNOWN_HYPEROCT_OPERATORS[4], p, M)
    alphas = [evaluate_zeta_poly(q, p, N)
              for q in alpha_hyperoctahedral(3)]
    rep = check_integrality(dec, alphas, p, M)
    assert rep.verdict == "integral"
    assert verify_frobenius_property(dec, alphas, M)


def test_coefficient_accessor_matches_series():
    dec = solve_A_series(simplicial_operator(3), 5, 15)
    alphas = [Fraction(1, 2), Fraction(-3)]
    series = dec.assemble(alphas)
    for j in range(3):
        for m in range(15):
            assert dec.coefficient(j, m, alphas) == series[j].known(m)
