"""Assembled two-parameter invariants and the cross-pipeline comparison."""

from fractions import Fraction

import pytest

from lorentzknots.braids import BraidWord, mirror, parse_braid, reverse
from lorentzknots.invariants import (
    equivalence_check,
    jones_relation_check,
    x_invariant,
)
from lorentzknots.jones import jones_z_interpolated

F = Fraction
TREFOIL = parse_braid("s1 s1 s1", 2)
FIG8 = parse_braid("s1 -s2 s1 -s2", 3)
UNKNOT = BraidWord(1)


def test_unknot_invariant_is_squared_expansion():
    # Oracle: both factors of X(0, p, unknot) are the closed-form expansion
    # of the unknot at spin (p-1)/2, so X is its square.
    from lorentzknots.series import TruncatedSeries

    inv = x_invariant(UNKNOT, 0, 4)
    U = jones_z_interpolated(UNKNOT, 4)
    sub = [poly.compose_affine(F(1, 2), F(-1, 2)) for poly in U.coeffs]
    factor = TruncatedSeries(4, sub)
    assert inv.series == factor * factor


def test_structure_checks_pass_for_catalog():
    for b in (TREFOIL, mirror(TREFOIL), FIG8):
        x_invariant(b, 0, 3).check_structure()


def test_mirror_insensitive_at_minimal_spin_zero():
    assert x_invariant(TREFOIL, 0, 4).series == x_invariant(mirror(TREFOIL), 0, 4).series


def test_unoriented():
    for b in (TREFOIL, FIG8):
        assert x_invariant(b, 0, 3).series == x_invariant(reverse(b), 0, 3).series
        assert x_invariant(b, 1, 3).series == x_invariant(reverse(b), 1, 3).series


def test_even_in_p_and_vanishing_at_one():
    inv = x_invariant(FIG8, 0, 3)
    for n, poly in enumerate(inv.series.coeffs):
        assert poly.is_even()
        assert poly.degree() <= 2 * n
        if n:
            assert poly.evaluate(1) == 0


def test_framed_sensitivity_only_for_nonzero_m():
    # Per unit framing the two factors of X pick up opposite kink
    # exponents whose net is twice the one-chord weight eigenvalue of the
    # balanced tensor: identically zero iff m = 0, and zero at p = 0.
    from lorentzknots.diagrams import THETA
    from lorentzknots.jones import kink_exponent_polynomial
    from lorentzknots.weights import lambda_mp_factorized

    cz = kink_exponent_polynomial()
    for m in (0, 1, 2):
        zsub = cz.compose_affine(F(1, 2), F(m - 1, 2))
        wsub = cz.compose_affine(F(1, 2), F(-m - 1, 2))
        net = wsub - zsub  # mirror factor carries the opposite exponent
        assert net == 2 * lambda_mp_factorized(THETA, m)
        if m == 0:
            assert net.is_zero()
        else:
            assert not net.is_zero()
            assert net.evaluate(0) == 0


def test_jones_relation_half_integer_points():
    r = jones_relation_check(TREFOIL, 0, 0, 3)
    assert r["pass"]
    r = jones_relation_check(TREFOIL, 1, 1, 3)
    assert r["pass"]
    r = jones_relation_check(TREFOIL, 2, 0, 3)
    assert r["pass"]
    r = jones_relation_check(FIG8, 1, 1, 2)
    assert r["pass"]


def test_jones_relation_rejects_non_integer_difference():
    with pytest.raises(ValueError):
        jones_relation_check(TREFOIL, 1, 0, 2)


def test_equivalence_check_trivial_point():
    report = equivalence_check(UNKNOT, 1, 3)
    assert report["pass"]
    assert max(report["diffs"]) <= report["tolerance"]


def test_equivalence_check_trefoil_small():
    report = equivalence_check(mirror(TREFOIL), 2, 2)
    assert report["pass"]


def test_x_invariant_rejects_links_and_bad_m():
    with pytest.raises(ValueError):
        x_invariant(parse_braid("s1", 3), 0, 2)
    with pytest.raises(ValueError):
        x_invariant(TREFOIL, F(1, 2), 2)
