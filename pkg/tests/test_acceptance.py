"""End-to-end acceptance suite.

One test per acceptance criterion, each running the full pipeline at
desk scale with the stated tolerances and runtime budgets, so that
``pytest -v`` emits a single pass/fail line per criterion.
"""

import math
import random
import time
from fractions import Fraction
from itertools import product

from padicfrob.expansion import (
    alternating_identity_check,
    brute_force_expand,
    hyperoct_constant_term,
    mu_at_zero,
    simplicial_coeff_series,
    to_laurent,
)
from padicfrob.frobenius import (
    check_integrality,
    nonuniqueness_witness,
    recover_alpha,
    solve_A_series,
)
from padicfrob.mum import (
    KNOWN_HYPEROCT_OPERATORS,
    AmbiguousNullspace,
    NoOperatorFound,
    apply_operator,
    guess_operator,
    period_series_hyperoctahedral,
    period_series_simplicial,
    simplicial_operator,
)
from padicfrob.padic_core import PadicNum
from padicfrob.qseries import PowerSeries
from padicfrob.zeta_gamma import (
    ZetaPoly,
    alpha_hyperoctahedral,
    alpha_simplicial,
    evaluate_zeta_poly,
    gamma_ratio_congruence_check,
    zetap_bernoulli,
    zetap_interpolated,
)

F = Fraction


def _all_v(length, total):
    if length == 1:
        for v in range(total + 1):
            yield (v,)
        return
    for first in range(total + 1):
        for rest in _all_v(length - 1, total - first):
            yield (first,) + rest


def _hyperoct_operator(n):
    if n in KNOWN_HYPEROCT_OPERATORS:
        return KNOWN_HYPEROCT_OPERATORS[n]
    for d in range(2 * n + 3):
        need = (n + 1) * (d + 1) + 10
        try:
            return guess_operator(
                period_series_hyperoctahedral(n, need), n, d)
        except (NoOperatorFound, AmbiguousNullspace):
            continue
    raise NoOperatorFound("n = %d" % n)


def test_criterion_1_symbolic_alpha_exact():
    # closed-form constants reproduce the displayed values exactly in
    # the polynomial ring over Q generated by the odd zeta symbols
    t0 = time.monotonic()
    z3, z5, z7, z9 = (ZetaPoly.gen(m) for m in (3, 5, 7, 9))
    for n, c in {4: F(-8, 25), 5: F(-35, 108),
                 6: F(-16, 49), 7: F(-21, 64)}.items():
        assert alpha_simplicial(n)[2] == z3 * c, "alpha_3 at n=%d" % n
    assert alpha_simplicial(6)[4] == z5 * F(-480, 2401)
    assert alpha_simplicial(7)[4] == z5 * F(-819, 4096)
    assert alpha_simplicial(7)[5] == z3 * z3 * F(441, 8192)
    al = alpha_hyperoctahedral(9)
    assert al[0].is_zero() and al[1].is_zero() and al[3].is_zero()
    assert al[2] == z3 / -3
    assert al[4] == z5 / -5
    assert al[5] == z3 * z3 / 18
    assert al[6] == z7 / -7
    assert al[7] == z3 * z5 / 15
    assert al[8] == -(18 * z9 + z3 * z3 * z3) / 162
    assert time.monotonic() - t0 < 5.0


def test_criterion_2_zetap_values_dual_route():
    # even zeta values vanish; the Bernoulli-limit and the
    # interpolation routes agree mod p^3 wherever both apply
    t0 = time.monotonic()
    for p in (5, 7):
        for m in (2, 4):
            b = zetap_bernoulli(m, p, 2)
            assert b.is_zero() and b.abs_precision >= 3, (p, m)
            assert zetap_interpolated(m, p, 3).is_exact_zero, (p, m)
    pairs = [(p, m) for p in (5, 7, 11) for m in (3, 5) if m < p - 1]
    assert len(pairs) == 5
    for p, m in pairs:
        a = zetap_bernoulli(m, p, 2)
        b = zetap_interpolated(m, p, 3)
        assert a.agrees(b, 3), "routes differ mod %d^3 at m=%d" % (p, m)
    assert time.monotonic() - t0 < 60.0


def test_criterion_3_gamma_ratio_congruences():
    # exact Gamma_p products against the zeta-polynomial Taylor route,
    # at modulus p^((s+1) n) across the full (n, p, s, V) grid
    t0 = time.monotonic()
    for n, p, s in product((2, 3), (5, 7), (1, 2)):
        for V in _all_v(n + 1, n):
            assert gamma_ratio_congruence_check(V, s, p, n), \
                "V=%s s=%d p=%d n=%d" % (V, s, p, n)
    assert time.monotonic() - t0 < 120.0


def test_criterion_4_simplicial_integrality_desk_scale():
    # simplicial n=4 at p=7, t-order 70, precision 12: the solved
    # coefficients are integral at the closed-form constants, and
    # corrupting alpha_3 (+1 or zeroed) must surface a coefficient of
    # valuation <= -1 within the same t-order
    t0 = time.monotonic()
    p, M, N = 7, 70, 12
    dec = solve_A_series(simplicial_operator(4), p, M)
    alphas = [evaluate_zeta_poly(a, p, N) for a in alpha_simplicial(4)]
    report = check_integrality(dec, alphas, p, M)
    assert report.verdict == "integral", report.first_failing
    assert report.min_valuation >= 0
    for tag, a3 in (("alpha_3 + 1", alphas[2] + 1),
                    ("alpha_3 = 0", PadicNum.from_exact(0, p))):
        rep = check_integrality(dec, alphas[:2] + [a3], p, M)
        assert rep.verdict == "non-integral" and rep.min_valuation <= -1, \
            "%s stayed %s with min valuation %s; expected a coefficient " \
            "of valuation <= -1 within t-order %d" \
            % (tag, rep.verdict, rep.min_valuation, M)
    assert time.monotonic() - t0 < 600.0


def test_criterion_5_hyperoct_integrality_desk_scale():
    # hyperoctahedral n=4: operator recovered by guessing bit-identical
    # to the tabulated one; integrality holds at alpha_3 = -zeta_7(3)/3
    # and must fail at alpha_3 = 0
    t0 = time.monotonic()
    p, M, N = 7, 70, 12
    g = guess_operator(period_series_hyperoctahedral(4, 35), 4, 4)
    assert g == KNOWN_HYPEROCT_OPERATORS[4]
    dec = solve_A_series(g, p, M)
    polys = alpha_hyperoctahedral(3)
    assert polys[2] == ZetaPoly.gen(3) / -3
    alphas = [evaluate_zeta_poly(a, p, N) for a in polys]
    report = check_integrality(dec, alphas, p, M)
    assert report.verdict == "integral", report.first_failing
    assert report.min_valuation >= 0
    zeroed = alphas[:2] + [PadicNum.from_exact(0, p)]
    rep = check_integrality(dec, zeroed, p, M)
    assert rep.verdict == "non-integral" and rep.min_valuation <= -1, \
        "alpha_3 = 0 stayed %s with min valuation %s; expected a " \
        "coefficient of valuation <= -1 within t-order %d" \
        % (rep.verdict, rep.min_valuation, M)
    assert time.monotonic() - t0 < 600.0


def test_criterion_6_alpha_recovery():
    # integrality-driven recovery at p=7, t-order 70 on both n=4
    # families: the coset must contain the closed forms mod 7^e with
    # e >= 3 and pin alpha_1 and alpha_2 to zero
    p, M, N = 7, 70, 12
    for family, L in (("simplicial", simplicial_operator(4)),
                      ("hyperoctahedral", KNOWN_HYPEROCT_OPERATORS[4])):
        dec = solve_A_series(L, p, M)
        sol = recover_alpha(dec, p, M)
        polys = alpha_simplicial(4) if family == "simplicial" \
            else alpha_hyperoctahedral(3)
        closed = [evaluate_zeta_poly(a, p, max(N, sol.modulus_exponent + 2))
                  for a in polys]
        for j in range(3):
            e = sol.exponents[j]
            if e > 0:
                assert closed[j].agrees(sol.representative[j] % p ** e, e), \
                    "%s: closed form alpha_%d outside the coset" \
                    % (family, j + 1)
        e1 = sol.exponents[0]
        assert e1 >= 1 and sol.representative[0] % p ** e1 == 0, \
            "%s: alpha_1 not pinned to 0" % family
        assert sol.modulus_exponent >= 3, \
            "%s: coset modulus exponent %d, expected >= 3" \
            % (family, sol.modulus_exponent)
        e2 = sol.exponents[1]
        assert e2 >= 1 and sol.representative[1] % p ** e2 == 0, \
            "%s: alpha_2 unconstrained (exponent %d), expected pinned to 0" \
            % (family, e2)


def test_criterion_7_operator_guessing_and_annihilation():
    # tabulated operators reproduced integer for integer from their
    # period series; every family operator annihilates its period
    # series through t^60
    for n, d, need in ((4, 4, 35), (5, 6, 55)):
        g = guess_operator(period_series_hyperoctahedral(n, need), n, d)
        assert g == KNOWN_HYPEROCT_OPERATORS[n], "n=%d" % n
    for n in range(2, 6):
        out = apply_operator(simplicial_operator(n),
                             period_series_simplicial(n, 60))
        assert out.is_zero(), "simplicial n=%d" % n
    for n in range(2, 6):
        out = apply_operator(_hyperoct_operator(n),
                             period_series_hyperoctahedral(n, 60))
        assert out.is_zero(), "hyperoctahedral n=%d" % n


def test_criterion_8_oracle_suites():
    # brute-force expansion equivalences
    t0 = time.monotonic()
    Us = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for U in Us:
        for V in _all_v(3, 2):
            for N in (1, 2, 3):
                want = simplicial_coeff_series(U, V, N, 20)
                wU = sum(U)
                target = tuple(N * x for x in to_laurent(V))
                cm = brute_force_expand(
                    "simplicial", wU + 1, (wU, to_laurent(U)),
                    (target, target), 20)
                got = cm.coefficient(target) * math.factorial(wU)
                assert all(got.known(c) == want.known(c)
                           for c in range(20)), (U, V, N)
    assert time.monotonic() - t0 < 60.0

    # alternating identity on 50 seeded random unit series
    t0 = time.monotonic()
    rng = random.Random(20240824)
    for trial in range(50):
        n = rng.randint(1, 6)
        coeffs = [F(1)] + [F(rng.randint(-9, 9), rng.randint(1, 5))
                           for _ in range(n + 3)]
        assert alternating_identity_check(PowerSeries(coeffs, n + 4), n), \
            "trial %d (n=%d)" % (trial, n)
    assert time.monotonic() - t0 < 60.0

    # theta F_0 = 2n F_(1,0,...,0) through t^20
    t0 = time.monotonic()
    for n in (2, 3, 4):
        F0 = hyperoct_constant_term((0,) * n, n, 21).series
        F1 = hyperoct_constant_term((1,) + (0,) * (n - 1), n, 21).series
        th = F0.theta()
        assert all(th.known(c) == 2 * n * F1.known(c) for c in range(21)), n
    assert time.monotonic() - t0 < 60.0

    # mu_{u,j}(0) table: permutations of j ones carry (n-j)!/(2^j n!)
    t0 = time.monotonic()
    assert mu_at_zero((1, 0, 0), 1, 3) == F(1, 6)
    assert mu_at_zero((1, 1, 0, 0), 2, 4) == F(1, 48)
    for n in range(2, 6):
        for u in _all_v(n, n - 1):
            for j in range(sum(u) + 1):
                ones = sum(1 for x in u if x == 1)
                want = F(math.factorial(n - j), 2 ** j * math.factorial(n)) \
                    if ones == j and max(u) <= 1 else F(0)
                assert mu_at_zero(u, j, n) == want, (u, j, n)
    assert time.monotonic() - t0 < 60.0


def test_criterion_9_nonuniqueness_witness():
    # an order-2 operator with unit Wronskian admits a one-parameter
    # family of solution-preserving twists
    L = simplicial_operator(2)
    for lam in (1, 2):
        assert nonuniqueness_witness(L, lam, 5, 40), "lambda=%d" % lam
