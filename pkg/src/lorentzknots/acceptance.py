"""Desk-scale acceptance suite: every identity the two pipelines must satisfy.

Each criterion is a callable returning (passed, detail); the registry drives
both the ``verify`` CLI subcommand and the pytest acceptance module.  All
parameters (orders, tolerances, precision) are pinned here, not configurable
at call sites, so a green run always certifies the same statements:

 1. unknot expansion equals the sinh-ratio closed form through order 6;
 2. four-term generators are killed by both character families;
 3. the two Lorentz character routes agree, and the module action
    reproduces the left/right Casimir eigenvalues;
 4. degree, parity and trivial-representation structure of X(0, p);
 5. mirror symmetry at minimal spin zero, mirror parity per order,
    orientation independence;
 6. Markov invariance of both pipelines across sampled moves;
 7. the four closed forms for spin-1/2 structure-constant columns;
 8. the trefoil braid sum against its one-dimensional reduction;
 9. the cross-pipeline equivalence S_b = X(0, p) (2a+1)^2/[2a+1]^2;
10. truncation soundness of the label cutoff.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import factorial

import mpmath

from .braids import BraidWord, markov_variants, mirror, parse_braid, reverse
from .cg import lambda_coeff, lambda_coeff_symbolic
from .diagrams import enumerate_diagrams, four_t_generators
from .invariants import equivalence_check, x_invariant
from .jones import jones_z_interpolated
from .polynomials import ParamPolynomial, poly_variable
from .qlorentz import braid_sum, trefoil_closed_sum
from .scalars import GaussianRational, precision
from .series import constant_series, q_power, series_to_big
from .weights import (
    CASIMIR_LEFT_TERMS,
    CASIMIR_RIGHT_TERMS,
    casimir_eigenvalues,
    lambda_mp_direct,
    lambda_mp_factorized,
    lambda_z_sl2,
    lorentz_quadratic_eigenvalue,
)

DIGITS = 60
TOLERANCE_EXP = 45  # comparisons at 10^-(DIGITS - 15)

TREFOIL_R = parse_braid("s1 s1 s1", 2)
TREFOIL_L = parse_braid("-s1 -s1 -s1", 2)
FIG8 = parse_braid("s1 -s2 s1 -s2", 3)
UNKNOT = BraidWord(1)


def _tol():
    return mpmath.mpf(10) ** -TOLERANCE_EXP


def _series_diff(a, b):
    return max(abs(x - y) for x, y in zip(a.coeffs, b.coeffs))


def _sinh_ratio_expansion(order):
    """Exact jet of sinh((2z+1)h/2) / ((2z+1) sinh(h/2)), polynomial in z."""
    z = poly_variable()
    w = (2 * z + 1) * (2 * z + 1)
    num, den = [], []
    for k in range(order + 1):
        if k % 2:
            num.append(ParamPolynomial([0]))
            den.append(Fraction(0))
        else:
            num.append(w ** (k // 2) * Fraction(1, 2**k * factorial(k + 1)))
            den.append(Fraction(1, 2**k * factorial(k + 1)))
    out = []
    for k in range(order + 1):
        acc = num[k] - sum(
            ParamPolynomial([den[j]]) * out[k - j] for j in range(1, k + 1)
        )
        out.append(acc)
    return out


def criterion_1_unknot_closed_form():
    """Unknot spin expansion equals the sinh-ratio jet, orders <= 6, exact."""
    order = 6
    computed = jones_z_interpolated(UNKNOT, order)
    expected = _sinh_ratio_expansion(order)
    for n in range(order + 1):
        if computed.coeffs[n] != expected[n]:
            return False, f"order {n} mismatch: {computed.coeffs[n]}"
    return True, "all 7 orders equal the closed form exactly"


def criterion_2_four_term_vanishing():
    """Both character families kill every 4T generator with <= 3 chords."""
    checked = 0
    for n in (2, 3):
        for gen in four_t_generators(n):
            if not lambda_z_sl2(gen).is_zero():
                return False, f"sl2 weight nonzero on a {n}-chord generator"
            for m in (0, 1, 2):
                if not lambda_mp_factorized(gen, m).is_zero():
                    return False, f"Lorentz weight nonzero, m={m}, {n} chords"
            checked += 1
    return True, f"{checked} generators annihilated exactly (m in 0,1,2)"


def criterion_3_character_routes():
    """Direct and factorized Lorentz characters agree; Casimirs reproduce."""
    diagrams = [d for n in range(4) for d in enumerate_diagrams(n)]
    for m in (0, 1, 2):
        for d in diagrams:
            if lambda_mp_direct(d, m) != lambda_mp_factorized(d, m):
                return False, f"route mismatch at {d.gauss_text()!r}, m={m}"
        left, right = casimir_eigenvalues(m)
        if lorentz_quadratic_eigenvalue(CASIMIR_LEFT_TERMS, m) != left:
            return False, f"left Casimir eigenvalue wrong at m={m}"
        if lorentz_quadratic_eigenvalue(CASIMIR_RIGHT_TERMS, m) != right:
            return False, f"right Casimir eigenvalue wrong at m={m}"
    return True, f"{3 * len(diagrams)} route agreements; Casimirs (p^2 +- 2mp + m^2 - 1)/8"


def criterion_4_structure():
    """Degree <= 2n, evenness in p, vanishing at p = 1, at order 5, exact."""
    for braid, name in ((TREFOIL_R, "T+"), (TREFOIL_L, "T-"), (FIG8, "fig8")):
        inv = x_invariant(braid, 0, 5)
        for n, poly in enumerate(inv.series.coeffs):
            if poly.degree() > 2 * n:
                return False, f"{name}: h^{n} degree {poly.degree()} > {2 * n}"
            if not poly.is_even():
                return False, f"{name}: h^{n} coefficient not even in p"
            if n > 0 and poly.evaluate(1) != 0:
                return False, f"{name}: h^{n} coefficient nonzero at p=1"
    return True, "T+, T-, figure-eight at order 5: degree/parity/vanishing exact"


def criterion_5_mirror_orientation():
    """Mirror insensitivity of X(0, p), per-order mirror parity, reversal."""
    order = 5
    if x_invariant(TREFOIL_R, 0, order).series != x_invariant(TREFOIL_L, 0, order).series:
        return False, "X(0, p) distinguishes the trefoil from its mirror"
    for braid in (TREFOIL_R, FIG8):
        plain = jones_z_interpolated(braid, 4)
        flipped = jones_z_interpolated(mirror(braid), 4)
        for n in range(5):
            expected = plain.coeffs[n] if n % 2 == 0 else -1 * plain.coeffs[n]
            if flipped.coeffs[n] != expected:
                return False, f"mirror parity fails at order {n}"
        if jones_z_interpolated(reverse(braid), 3) != jones_z_interpolated(braid, 3):
            return False, "orientation reversal changed the expansion"
        if x_invariant(reverse(braid), 1, 3).series != x_invariant(braid, 1, 3).series:
            return False, "orientation reversal changed X(1, p)"
    return True, "mirror symmetry, (-1)^n parity, and reversal invariance hold"


def criterion_6_markov():
    """Both pipelines agree across >= 6 Markov variants of the trefoil."""
    order = 4
    variants = markov_variants(TREFOIL_R)[:7]
    base = jones_z_interpolated(TREFOIL_R, order)
    for v in variants:
        if jones_z_interpolated(v, order) != base:
            return False, f"spin expansion changed under {v}"
    with precision(DIGITS):
        tol = _tol()
        base_sum = braid_sum(TREFOIL_R, 2, order)
        worst = mpmath.mpf(0)
        for v in variants:
            diff = _series_diff(braid_sum(v, 2, order), base_sum)
            worst = max(worst, diff)
            if diff > tol:
                return False, f"braid sum moved by {mpmath.nstr(diff, 3)} under {v}"
    return True, (
        f"{len(variants)} variants: exact spin expansions, braid sums within "
        f"{mpmath.nstr(worst, 3)}"
    )


def criterion_7_structure_constant_columns():
    """Closed forms for the four spin-1/2 columns, C in 0..3."""
    order = 4
    with precision(DIGITS):
        tol = _tol()
        worst = mpmath.mpf(0)

        def check(lam, rhs):
            nonlocal worst
            worst = max(worst, _series_diff(lam, rhs))
            return worst <= tol

        one = series_to_big(constant_series(1, order))
        points = [GaussianRational(2), GaussianRational(3),
                  GaussianRational(Fraction(1, 2), Fraction(3, 2))]
        for C in (0, 1, 2, 3):
            q2C2 = series_to_big(q_power(2 * C + 2, order))
            for p in points:
                qp = series_to_big(q_power(p, order))
                qmp = series_to_big(q_power(-1 * p, order))
                if p.is_real():
                    lam1 = lambda_coeff(2 * C, 1, 2 * C + 1, 2 * C, p, order)
                    lam2 = lambda_coeff(2 * C, 1, 2 * C + 1, 2 * C + 2, p, order)
                    lam3 = lambda_coeff(2 * C + 2, 1, 2 * C + 1, 2 * C, p, order)
                else:
                    # complex rational point exercised through symbolic mode
                    def at_point(dA, dB, dC, dD):
                        sym = lambda_coeff_symbolic(dA, dB, dC, dD, order)
                        from .series import TruncatedSeries

                        return TruncatedSeries(
                            order, [poly.evaluate(p) for poly in sym.coeffs]
                        )

                    lam1 = at_point(2 * C, 1, 2 * C + 1, 2 * C)
                    lam2 = at_point(2 * C, 1, 2 * C + 1, 2 * C + 2)
                    lam3 = at_point(2 * C + 2, 1, 2 * C + 1, 2 * C)
                rhs1 = -1 * series_to_big(q_power(C + 1, order)) * (qp + qmp) * (
                    q2C2 + one
                ).inverse()
                rhs2 = (q2C2 * qp - qmp) * (q2C2 + one).inverse()
                rhs3 = (q2C2 * qmp - qp) * (q2C2 + one).inverse()
                if not (check(lam1, rhs1) and check(lam2, rhs2) and check(lam3, rhs3)):
                    return False, f"column formula failed at C={C}, p={p}"
                if C >= 1:
                    q2C = series_to_big(q_power(2 * C, order))
                    if p.is_real():
                        lam0 = lambda_coeff(2 * C, 1, 2 * C - 1, 2 * C, p, order)
                    else:
                        lam0 = at_point(2 * C, 1, 2 * C - 1, 2 * C)
                    rhs0 = (
                        series_to_big(q_power(C, order))
                        * (qp + qmp)
                        * (q2C + one).inverse()
                    )
                    if not check(lam0, rhs0):
                        return False, f"first column formula failed at C={C}, p={p}"
    return True, f"all columns match; worst deviation {mpmath.nstr(worst, 3)}"


def criterion_8_trefoil_closed_sum():
    """Streamed trefoil sums match the one-dimensional reduction; mirrors agree."""
    order = 4
    with precision(DIGITS):
        tol = _tol()
        worst = mpmath.mpf(0)
        for p in (2, 3):
            lhs = braid_sum(TREFOIL_L, p, order)
            rhs = trefoil_closed_sum(p, order)
            worst = max(worst, _series_diff(lhs, rhs))
            if worst > tol:
                return False, f"closed-sum mismatch at p={p}"
        diff = _series_diff(
            braid_sum(TREFOIL_R, 2, order), braid_sum(TREFOIL_L, 2, order)
        )
        worst = max(worst, diff)
        if diff > tol:
            return False, "right and left trefoil sums differ"
    return True, f"closed reduction and mirror equality within {mpmath.nstr(worst, 3)}"


def criterion_9_equivalence():
    """S_b(e^{h/2}, p) = X(0,p,K) (2a+1)^2/[2a+1]^2 with a=(p-1)/2."""
    order = 4
    worst = 0.0
    for braid, name in ((TREFOIL_R, "T+"), (TREFOIL_L, "T-"), (FIG8, "fig8")):
        for p in (1, 2, 3):
            report = equivalence_check(braid, p, order, DIGITS)
            worst = max(worst, max(report["diffs"]))
            if not report["pass"]:
                return False, f"{name} at p={p}: diffs {report['diffs']}"
            if p == 1:
                with precision(DIGITS):
                    lhs = braid_sum(braid, 1, order)
                    unit = series_to_big(constant_series(1, order))
                    if _series_diff(lhs, unit) > _tol():
                        return False, f"{name}: braid sum at p=1 is not 1"
                inv = x_invariant(braid, 0, order)
                for n in range(1, order + 1):
                    if inv.series.coeffs[n].evaluate(1) != 0:
                        return False, f"{name}: X(0,1) not 1 at order {n}"
    return True, f"nine knot/parameter pairs agree; worst diff {worst:.3g}"


def criterion_10_truncation_soundness():
    """Raising the label cutoff beyond the order changes no coefficient."""
    order = 3
    with precision(DIGITS):
        a = braid_sum(TREFOIL_L, 2, order, label_cutoff=order)
        b = braid_sum(TREFOIL_L, 2, order, label_cutoff=order + 1)
        diff = _series_diff(a, b)
        if diff > _tol():
            return False, f"coefficients moved by {mpmath.nstr(diff, 3)}"
    return True, f"cutoff {order} -> {order + 1}: coefficients unchanged"


CRITERIA = (
    ("1", "unknot closed form", criterion_1_unknot_closed_form),
    ("2", "four-term vanishing", criterion_2_four_term_vanishing),
    ("3", "character route agreement", criterion_3_character_routes),
    ("4", "degree/parity/vanishing structure", criterion_4_structure),
    ("5", "mirror and orientation", criterion_5_mirror_orientation),
    ("6", "Markov invariance", criterion_6_markov),
    ("7", "structure-constant columns", criterion_7_structure_constant_columns),
    ("8", "trefoil closed sum", criterion_8_trefoil_closed_sum),
    ("9", "cross-pipeline equivalence", criterion_9_equivalence),
    ("10", "truncation soundness", criterion_10_truncation_soundness),
)


def run_acceptance(numbers=None, stream=print):
    """Run selected (default: all) criteria; returns True if all passed."""
    wanted = set(numbers) if numbers else None
    all_ok = True
    for number, title, func in CRITERIA:
        if wanted and number not in wanted:
            continue
        start = time.time()
        ok, detail = func()
        all_ok &= ok
        status = "PASS" if ok else "FAIL"
        stream(
            f"[{status}] criterion {number:>2} ({title}): {detail} "
            f"[{time.time() - start:.1f}s]"
        )
    return all_ok
