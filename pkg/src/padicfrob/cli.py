"""Command-line front end for the p-adic Frobenius toolkit.

Subcommands
-----------
alpha     print the closed-form structure constants, symbolically and,
          when a prime is supplied, numerically.
verify    solve for the Frobenius decomposition of a family operator
          and run the coefficient integrality check at the closed-form
          constants.
recover   solve the integrality congruence system for the constants and
          compare the recovered coset with the closed forms.
guess     reconstruct the annihilating operator of a period series and
          diff it against the tabulated reference operators.
selftest  run the cross-validation suites: dual-route zeta values,
          gamma-ratio congruences, brute-force expansion oracles,
          combinatorial identities, integrality checks, and negative
          controls with deliberately corrupted constants.

Exit codes form a stable contract: 0 success, 1 a check failed, 2 usage
or configuration error, 3 precision exhausted, 4 inconsistent congruence
system, 5 no operator found.

JSON output is emitted with sorted keys and no timing data, so a fixed
configuration and seed produce byte-identical bytes on every run.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import re
import sys
import time
from fractions import Fraction

from .expansion import (
    alternating_identity_check,
    brute_force_expand,
    mu_at_zero,
    simplicial_coeff_series,
    to_laurent,
)
from .frobenius import (
    InconsistentSystem,
    PrecisionExhausted,
    check_integrality,
    nonuniqueness_witness,
    recover_alpha,
    solve_A_series,
    verify_frobenius_property,
)
from .mum import (
    GUESS_GUARD,
    KNOWN_HYPEROCT_OPERATORS,
    AmbiguousNullspace,
    MumOperator,
    NoOperatorFound,
    apply_operator,
    guess_operator,
    period_series_hyperoctahedral,
    period_series_simplicial,
    simplicial_operator,
)
from .padic_core import PadicNum
from .qseries import PowerSeries
from .zeta_gamma import (
    alpha_hyperoctahedral,
    alpha_simplicial,
    evaluate_zeta_poly,
    gamma_ratio_congruence_check,
    zetap_bernoulli,
    zetap_interpolated,
)

DEFAULT_P = 7
DEFAULT_PRECISION = 12
DEFAULT_SEED = 0
DEFAULT_JMAX = 9

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3
EXIT_INCONSISTENT = 4
EXIT_NO_OPERATOR = 5


class UsageError(Exception):
    """Invalid configuration; maps to exit code 2."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _check_family_prime(family: str, n: int, p: int):
    if not _is_prime(p) or p == 2:
        raise UsageError("p = %d is not an odd prime" % p)
    bound = n + 1 if family == "simplicial" else n
    if p <= bound:
        raise UsageError("need p > %d for the %s family at n = %d"
                         % (bound, family, n))


def _family(args, allow_file: bool = False) -> str:
    fam = args.family
    if fam is None:
        raise UsageError("--family is required")
    if fam == "file" and not allow_file:
        raise UsageError("--family file is only valid for guess")
    return fam


def _alpha_polys(family: str, n: int) -> list:
    if family == "simplicial":
        return alpha_simplicial(n)
    return alpha_hyperoctahedral(n - 1)


def _operator_for(family: str, n: int) -> MumOperator:
    if family == "simplicial":
        return simplicial_operator(n)
    if n in KNOWN_HYPEROCT_OPERATORS:
        return KNOWN_HYPEROCT_OPERATORS[n]
    dmax = 2 * n + 2
    need = (n + 1) * (dmax + 1) + GUESS_GUARD
    op, _ = _guess_sweep(period_series_hyperoctahedral(n, need), n, dmax)
    return op


def _guess_sweep(f: PowerSeries, n: int, dmax: int):
    """Smallest coefficient degree whose annihilator nullspace is
    one-dimensional; raises NoOperatorFound when the sweep exhausts."""
    tried = False
    for d in range(dmax + 1):
        need = (n + 1) * (d + 1) + GUESS_GUARD
        if f.order < need:
            break
        tried = True
        try:
            return guess_operator(f, n, d), d
        except NoOperatorFound:
            continue
        except AmbiguousNullspace:
            break
    if not tried:
        raise UsageError("series known mod t^%d is too short to guess an "
                         "order-%d operator" % (f.order, n))
    raise NoOperatorFound("no order-%d annihilator with coefficient degree "
                          "<= %d" % (n, dmax))


def _render_padic(v: PadicNum) -> str:
    if v.is_exact:
        return "%s (exact)" % v.exact
    k = int(v.abs_precision)
    return "%d + O(%d^%d)" % (v.residue(k), v.p, k)


def _padic_payload(v: PadicNum) -> dict:
    if v.is_exact:
        return {"exact": str(v.exact)}
    k = int(v.abs_precision)
    return {"precision": k, "residue": v.residue(k)}


def _emit(args, payload: dict, lines: list):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


# -- alpha --------------------------------------------------------------


def cmd_alpha(args) -> int:
    family = _family(args)
    if family == "simplicial":
        if args.jmax is not None:
            raise UsageError("--jmax applies to the hyperoctahedral family")
        if args.n is None:
            raise UsageError("--n is required for the simplicial family")
        if args.n < 2:
            raise UsageError("need n >= 2")
        polys = alpha_simplicial(args.n)
        head = "family: simplicial, n = %d" % args.n
        payload = {"family": family, "n": args.n}
    else:
        if args.jmax is not None:
            J = args.jmax
        elif args.n is not None:
            if args.n < 2:
                raise UsageError("need n >= 2")
            J = args.n - 1
        else:
            J = DEFAULT_JMAX
        if J < 1:
            raise UsageError("need jmax >= 1")
        polys = alpha_hyperoctahedral(J)
        head = "family: hyperoctahedral, jmax = %d" % J
        payload = {"family": family, "jmax": J}

    rows = [{"j": j, "symbolic": poly.format()}
            for j, poly in enumerate(polys, 1)]
    numeric = None
    if args.p is not None:
        p = args.p
        N = args.precision if args.precision is not None else DEFAULT_PRECISION
        nref = args.n if args.n is not None else 2
        _check_family_prime(family, nref, p)
        numeric = [evaluate_zeta_poly(poly, p, N) for poly in polys]
        for row, v in zip(rows, numeric):
            row["numeric"] = _padic_payload(v)
        head += ", p = %d, precision %d" % (p, N)
        payload["p"] = p
        payload["precision"] = N
    payload["alphas"] = rows

    lines = [head]
    for j, poly in enumerate(polys, 1):
        line = "alpha_%d = %s" % (j, poly.format())
        if numeric is not None:
            line += " = %s" % _render_padic(numeric[j - 1])
        lines.append(line)
    _emit(args, payload, lines)
    return EXIT_OK


# -- verify -------------------------------------------------------------


def _parse_perturb(text: str, count: int):
    m = re.fullmatch(r"alpha(\d+)(?:=(-?\d+(?:/\d+)?))?", text)
    if not m:
        raise UsageError("--perturb takes alphaJ or alphaJ=RATIONAL, "
                         "got %r" % text)
    j = int(m.group(1))
    if not 1 <= j <= count:
        raise UsageError("alpha_%d out of range 1..%d" % (j, count))
    value = Fraction(m.group(2)) if m.group(2) is not None else None
    return j, value


def _solve_family(args):
    family = _family(args)
    if args.n is None:
        raise UsageError("--n is required")
    n = args.n
    if n < 2:
        raise UsageError("need n >= 2")
    p = args.p if args.p is not None else DEFAULT_P
    _check_family_prime(family, n, p)
    M = args.t_order if args.t_order is not None else 10 * p
    N = args.precision if args.precision is not None else DEFAULT_PRECISION
    if M < 1:
        raise UsageError("need t-order >= 1")
    if N < 1:
        raise UsageError("need precision >= 1")
    L = _operator_for(family, n)
    dec = solve_A_series(L, p, M)
    return family, n, p, M, N, dec


def cmd_verify(args) -> int:
    family, n, p, M, N, dec = _solve_family(args)
    alphas = [evaluate_zeta_poly(poly, p, N)
              for poly in _alpha_polys(family, n)]
    note = "closed-form constants"
    if args.perturb:
        j, value = _parse_perturb(args.perturb, len(alphas))
        if value is None:
            alphas[j - 1] = alphas[j - 1] + 1
            note = "alpha_%d shifted by +1" % j
        else:
            alphas[j - 1] = PadicNum.from_exact(value, p)
            note = "alpha_%d set to %s" % (j, value)
    report = check_integrality(dec, alphas, p, M)
    if args.format == "json":
        print(report.to_json())
    else:
        lines = ["family: %s, n = %d, p = %d, t-order %d, precision %d"
                 % (family, n, p, M, N),
                 "constants: %s" % note,
                 "verdict: %s" % report.verdict,
                 "minimum coefficient valuation: %s" % report.min_valuation]
        if report.first_failing is not None:
            j, m, val = report.first_failing
            lines.append("first failing coefficient: A_%d at t^%d "
                         "(valuation %d)" % (j, m, val))
        for line in lines:
            print(line)
    return EXIT_OK if report.verdict == "integral" else EXIT_CHECK_FAILED


# -- recover ------------------------------------------------------------


def cmd_recover(args) -> int:
    family, n, p, M, N, dec = _solve_family(args)
    sol = recover_alpha(dec, p, M)
    polys = _alpha_polys(family, n)
    Nc = max(N, sol.modulus_exponent + 2)
    closed = [evaluate_zeta_poly(poly, p, Nc) for poly in polys]

    rows = []
    all_match = True
    lines = ["family: %s, n = %d, p = %d, t-order %d"
             % (family, n, p, M),
             "congruence lattice modulus exponent: %d"
             % sol.modulus_exponent]
    for j in range(1, len(polys) + 1):
        e = sol.exponents[j - 1] if j - 1 <= len(sol.exponents) - 1 else 0
        if e <= 0:
            rows.append({"j": j, "exponent": 0, "match": None})
            lines.append("alpha_%d unconstrained by integrality" % j)
            continue
        rep = sol.representative[j - 1] % p ** e
        match = bool(closed[j - 1].agrees(rep, e))
        all_match = all_match and match
        rows.append({"j": j, "exponent": e, "match": match, "residue": rep})
        lines.append("alpha_%d = %d (mod %d^%d)  closed form %s: %s"
                     % (j, rep, p, e, polys[j - 1].format(),
                        "matches" if match else "MISMATCH"))
    payload = {
        "family": family,
        "n": n,
        "prime": p,
        "t_order": M,
        "modulus_exponent": sol.modulus_exponent,
        "representative": list(sol.representative),
        "exponents": list(sol.exponents),
        "generators": [list(g) for g in sol.generators],
        "closed_form": rows,
    }
    _emit(args, payload, lines)
    return EXIT_OK if all_match else EXIT_CHECK_FAILED


# -- guess --------------------------------------------------------------


def _series_from_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    try:
        coeffs = [Fraction(str(x)) for x in payload["series"]]
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError("operator file needs a 'series' list of "
                         "rationals: %s" % exc)
    n = payload.get("n")
    return PowerSeries(coeffs, len(coeffs)), n


def cmd_guess(args) -> int:
    family = _family(args, allow_file=True)
    if family == "file":
        if args.operator_file is None:
            raise UsageError("--family file requires --operator-file")
        f, n_file = _series_from_file(args.operator_file)
        n = args.n if args.n is not None else n_file
        if n is None:
            raise UsageError("operator file lacks 'n'; pass --n")
        dmax = max(0, f.order // (n + 1) - 1)
        source = "file:%s" % args.operator_file
    else:
        if args.n is None:
            raise UsageError("--n is required")
        n = args.n
        if n < 2:
            raise UsageError("need n >= 2")
        dmax = 2 * n + 2
        need = (n + 1) * (dmax + 1) + GUESS_GUARD
        if family == "simplicial":
            f = period_series_simplicial(n, need)
        else:
            f = period_series_hyperoctahedral(n, need)
        source = "%s period series" % family
    if n < 1:
        raise UsageError("need n >= 1")

    op, d = _guess_sweep(f, n, dmax)
    printed = KNOWN_HYPEROCT_OPERATORS.get(n) \
        if family == "hyperoctahedral" else None
    matches = (op == printed) if printed is not None else None

    payload = {
        "source": source,
        "n": n,
        "degree": d,
        "operator": json.loads(op.to_json()),
        "matches_printed": matches,
    }
    lines = ["guessed from %s" % source,
             "order %d, coefficient degree %d" % (n, d),
             repr(op)]
    if matches is not None:
        lines.append("matches printed operator: %s"
                     % ("yes" if matches else "NO"))
    _emit(args, payload, lines)
    if matches is False:
        return EXIT_CHECK_FAILED
    return EXIT_OK


# -- selftest -----------------------------------------------------------


def _check_zeta_even(quick: bool):
    primes = (5,) if quick else (5, 7)
    for p in primes:
        for m in (2, 4):
            b = zetap_bernoulli(m, p, 2)
            if not b.is_zero():
                return False, "zeta_%d(%d) bernoulli route nonzero" % (p, m)
            i = zetap_interpolated(m, p, 3)
            if not i.is_exact_zero:
                return False, "zeta_%d(%d) interpolation not exact zero" \
                    % (p, m)
    return True, ""


def _check_zeta_dual_route(quick: bool):
    pairs = [(5, 3), (7, 3)] if quick else \
        [(5, 3), (7, 3), (7, 5), (11, 3), (11, 5)]
    for p, m in pairs:
        a = zetap_bernoulli(m, p, 2)
        b = zetap_interpolated(m, p, 3)
        if not a.agrees(b, 3):
            return False, "routes disagree mod %d^3 at m=%d" % (p, m)
    return True, ""


def _all_v(length: int, total: int):
    if length == 1:
        for v in range(total + 1):
            yield (v,)
        return
    for first in range(total + 1):
        for rest in _all_v(length - 1, total - first):
            yield (first,) + rest


def _check_gamma_ratio(quick: bool):
    grid = [(2, 5, 1)] if quick else \
        [(n, p, s) for n in (2, 3) for p in (5, 7) for s in (1, 2)]
    for n, p, s in grid:
        for V in _all_v(n + 1, n):
            if not gamma_ratio_congruence_check(V, s, p, n):
                return False, "failed at V=%s s=%d p=%d n=%d" % (V, s, p, n)
    return True, ""


def _check_gamma_negative(quick: bool):
    ok = gamma_ratio_congruence_check((1, 0, 0), 1, 5, 2,
                                      _corrupt=(1, Fraction(1)))
    if ok:
        return False, "corrupted gamma-ratio congruence went undetected"
    return True, ""


def _check_expansion_oracle(quick: bool):
    Us = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    Vs = [(0, 0, 0), (1, 0, 0), (1, 1, 0)] if quick else \
        [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 0, 1), (2, 0, 0)]
    for U in Us:
        for V in Vs:
            for N in (1, 2):
                want = simplicial_coeff_series(U, V, N, 18)
                wU = sum(U)
                target = tuple(N * x for x in to_laurent(V))
                cm = brute_force_expand(
                    "simplicial", wU + 1, (wU, to_laurent(U)),
                    (target, target), 18)
                got = cm.coefficient(target) * math.factorial(wU)
                if any(got.known(c) != want.known(c) for c in range(18)):
                    return False, "U=%s V=%s N=%d" % (U, V, N)
    return True, ""


def _check_alternating(quick: bool, seed: int):
    rng = random.Random(seed)
    rounds = 10 if quick else 50
    for t in range(rounds):
        n = rng.randint(1, 6)
        coeffs = [Fraction(1)] + [
            Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            for _ in range(n + 3)]
        if not alternating_identity_check(PowerSeries(coeffs, n + 4), n):
            return False, "round %d (n=%d)" % (t, n)
    return True, ""


def _check_mu_values(quick: bool):
    cases = [
        ((1, 0, 0), 1, 3, Fraction(1, 6)),
        ((1, 1, 0, 0), 2, 4, Fraction(1, 48)),
        ((2, 0, 0), 2, 3, Fraction(0)),
        ((0, 0, 0, 0), 0, 4, Fraction(1)),
        ((1, 1, 1, 0, 0), 3, 5, Fraction(1, 480)),
        ((1, 1, 0), 1, 3, Fraction(0)),
    ]
    for u, j, n, want in cases:
        if mu_at_zero(u, j, n) != want:
            return False, "mu(%s, %d, %d) != %s" % (u, j, n, want)
    return True, ""


def _check_operators_annihilate(quick: bool):
    M = 30 if quick else 60
    ns = (2, 3) if quick else (2, 3, 4, 5)
    for n in ns:
        L = simplicial_operator(n)
        f = period_series_simplicial(n, M)
        if not apply_operator(L, f).is_zero():
            return False, "simplicial n=%d" % n
    hns = (4,) if quick else (2, 3, 4, 5)
    for n in hns:
        L = _operator_for("hyperoctahedral", n)
        f = period_series_hyperoctahedral(n, M)
        if not apply_operator(L, f).is_zero():
            return False, "hyperoctahedral n=%d" % n
    return True, ""


def _check_guess_printed(quick: bool):
    ns = (4,) if quick else (4, 5)
    for n in ns:
        dmax = 2 * n + 2
        need = (n + 1) * (dmax + 1) + GUESS_GUARD
        op, _ = _guess_sweep(period_series_hyperoctahedral(n, need), n, dmax)
        if op != KNOWN_HYPEROCT_OPERATORS[n]:
            return False, "guessed operator differs at n=%d" % n
    return True, ""


def _check_frobenius_integral(quick: bool):
    jobs = [("simplicial", 2, 5, 30, 8)] if quick else \
        [("simplicial", 4, 7, 70, 12), ("hyperoctahedral", 4, 7, 70, 12)]
    for family, n, p, M, N in jobs:
        L = _operator_for(family, n)
        dec = solve_A_series(L, p, M)
        alphas = [evaluate_zeta_poly(poly, p, N)
                  for poly in _alpha_polys(family, n)]
        report = check_integrality(dec, alphas, p, M)
        if report.verdict != "integral":
            return False, "%s n=%d verdict %s" % (family, n, report.verdict)
    return True, ""


def _check_frobenius_identity(quick: bool):
    jobs = [("simplicial", 2, 5, 20, 8)] if quick else \
        [("simplicial", 3, 5, 25, 8), ("hyperoctahedral", 4, 7, 21, 8)]
    for family, n, p, M, N in jobs:
        L = _operator_for(family, n)
        dec = solve_A_series(L, p, M)
        alphas = [evaluate_zeta_poly(poly, p, N)
                  for poly in _alpha_polys(family, n)]
        if not verify_frobenius_property(dec, alphas, M):
            return False, "%s n=%d defining identity fails" % (family, n)
    return True, ""


def _check_integrality_negative(quick: bool):
    L = simplicial_operator(4)
    p, M, N = 7, 40, 10
    dec = solve_A_series(L, p, M)
    alphas = [evaluate_zeta_poly(poly, p, N) for poly in alpha_simplicial(4)]
    alphas[0] = alphas[0] + 1
    report = check_integrality(dec, alphas, p, M)
    if report.verdict != "non-integral":
        return False, "corrupted alpha_1 went undetected"
    return True, ""


def _check_nonuniqueness(quick: bool):
    L = simplicial_operator(2)
    lams = (1,) if quick else (1, 2)
    for lam in lams:
        if not nonuniqueness_witness(L, lam, 5, 40):
            return False, "witness fails at lambda=%d" % lam
    return True, ""


SELFTEST_CHECKS = [
    ("zeta-even-vanishes", _check_zeta_even),
    ("zeta-dual-route", _check_zeta_dual_route),
    ("gamma-ratio-congruence", _check_gamma_ratio),
    ("gamma-ratio-negative-control", _check_gamma_negative),
    ("expansion-oracle-equivalence", _check_expansion_oracle),
    ("alternating-identity", _check_alternating),
    ("mu-constant-table", _check_mu_values),
    ("operators-annihilate-periods", _check_operators_annihilate),
    ("guess-matches-printed", _check_guess_printed),
    ("frobenius-integrality", _check_frobenius_integral),
    ("frobenius-defining-identity", _check_frobenius_identity),
    ("integrality-negative-control", _check_integrality_negative),
    ("nonuniqueness-witness", _check_nonuniqueness),
]


def cmd_selftest(args) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    quick = bool(args.quick)
    results = []
    lines = []
    failures = 0
    for name, fn in SELFTEST_CHECKS:
        start = time.monotonic()
        try:
            if fn is _check_alternating:
                ok, detail = fn(quick, seed)
            else:
                ok, detail = fn(quick)
        except Exception as exc:
            ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
        elapsed = time.monotonic() - start
        results.append({"name": name, "status": "pass" if ok else "fail",
                        "detail": detail})
        if ok:
            lines.append("PASS %s (%.2fs)" % (name, elapsed))
        else:
            failures += 1
            lines.append("FAIL %s: %s (%.2fs)" % (name, detail, elapsed))
    lines.append("%d passed, %d failed (seed %d, %s mode)"
                 % (len(results) - failures, failures, seed,
                    "quick" if quick else "full"))
    payload = {"checks": results, "failures": failures, "seed": seed,
               "mode": "quick" if quick else "full"}
    _emit(args, payload, lines)
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


# -- parser -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicfrob",
        description="p-adic Frobenius structures of Calabi-Yau type "
                    "differential operators")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, *, family=False, n=False, p=False, t_order=False,
               precision=False, jmax=False, perturb=False, seed=False,
               operator_file=False, quick=False, default_format="table"):
        if family:
            sp.add_argument("--family",
                            choices=("simplicial", "hyperoctahedral", "file"))
        if n:
            sp.add_argument("--n", type=int)
        if p:
            sp.add_argument("--p", type=int)
        if t_order:
            sp.add_argument("--t-order", type=int, dest="t_order",
                            help="series truncation order M (default 10p)")
        if precision:
            sp.add_argument("--precision", type=int,
                            help="p-adic precision N (default %d)"
                                 % DEFAULT_PRECISION)
        if jmax:
            sp.add_argument("--jmax", type=int,
                            help="number of hyperoctahedral constants")
        if perturb:
            sp.add_argument("--perturb",
                            help="alphaJ (shift by +1) or alphaJ=RATIONAL")
        if seed:
            sp.add_argument("--seed", type=int,
                            help="seed for randomized checks (default %d)"
                                 % DEFAULT_SEED)
        if operator_file:
            sp.add_argument("--operator-file", dest="operator_file",
                            help="JSON file with a 'series' list and 'n'")
        if quick:
            sp.add_argument("--quick", action="store_true",
                            help="run the reduced check set")
        sp.add_argument("--format", choices=("table", "json"),
                        default=default_format)

    sp = sub.add_parser("alpha", help="closed-form structure constants")
    common(sp, family=True, n=True, p=True, precision=True, jmax=True)
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("verify", help="coefficient integrality check")
    common(sp, family=True, n=True, p=True, t_order=True, precision=True,
           perturb=True, default_format="json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("recover", help="solve for the constants by "
                                        "integrality")
    common(sp, family=True, n=True, p=True, t_order=True, precision=True)
    sp.set_defaults(func=cmd_recover)

    sp = sub.add_parser("guess", help="reconstruct the annihilating "
                                      "operator")
    common(sp, family=True, n=True, operator_file=True)
    sp.set_defaults(func=cmd_guess)

    sp = sub.add_parser("selftest", help="run the cross-validation suites")
    common(sp, seed=True, quick=True)
    sp.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print("error: precision exhausted: %s" % exc, file=sys.stderr)
        return EXIT_PRECISION
    except InconsistentSystem as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INCONSISTENT
    except (NoOperatorFound, AmbiguousNullspace) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_NO_OPERATOR
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
