"""Weight maps and central characters, by both routes."""

from fractions import Fraction
from itertools import product

import pytest

from lorentzknots.diagrams import (
    THETA,
    UNIT_DIAGRAM,
    connected_sum,
    enumerate_diagrams,
    four_t_generators,
    parse_diagram,
)
from lorentzknots.errors import ResourceGuardError
from lorentzknots.polynomials import ParamPolynomial, poly_variable
from lorentzknots.scalars import GaussianRational
from lorentzknots.weights import (
    CASIMIR_LEFT_TERMS,
    CASIMIR_RIGHT_TERMS,
    T_CK_SL2,
    T_JONES_SL2,
    T_LEFT,
    T_LORENTZ,
    T_RIGHT,
    casimir_eigenvalues,
    lambda_mp_direct,
    lambda_mp_factorized,
    lambda_z_sl2,
    lorentz_quadratic_eigenvalue,
    phi_words,
    sl2_quadratic_eigenvalue,
)

F = Fraction
Z = poly_variable()

ALL_SMALL = [d for n in range(4) for d in enumerate_diagrams(n)]


# ---------------------------------------------------------------------------
# Tensors and words
# ---------------------------------------------------------------------------


def test_tensors_symmetric():
    for t in (T_CK_SL2, T_JONES_SL2, T_LORENTZ, T_LEFT, T_RIGHT):
        assert t.is_symmetric()


def test_phi_words_unit_and_theta():
    assert phi_words(T_JONES_SL2, UNIT_DIAGRAM) == [(GaussianRational(1), ())]
    words = phi_words(T_JONES_SL2, THETA)
    assert len(words) == 3
    assert all(len(w) == 2 for _, w in words)


def test_phi_words_three_chord_pattern():
    # Diagram with chords (0,3), (1,5), (2,4): reading the circle yields the
    # letter pattern a1 a2 a3 b1 b3 b2 in application order.
    d = parse_diagram("ABCACB")
    t = T_CK_SL2
    for coeff, word in phi_words(t, d):
        # reconstruct which role each position played
        roles = []
        seen = set()
        for k, pos_label in enumerate("ABCACB"):
            roles.append("a" if pos_label not in seen else "b")
            seen.add(pos_label)
        assert roles == ["a", "a", "a", "b", "b", "b"]
        assert len(word) == 6


# ---------------------------------------------------------------------------
# sl2 characters
# ---------------------------------------------------------------------------


def test_lambda_z_unit():
    assert lambda_z_sl2(UNIT_DIAGRAM) == ParamPolynomial([1])


def test_lambda_z_theta_is_casimir_value():
    # Hand oracle: the quadratic element of the tensor acts on the corner
    # vector as -(z/2 + z^2/2); with the per-chord sign the one-chord weight
    # is +z(z+1)/2, the Casimir eigenvalue of the underlying bilinear form.
    assert lambda_z_sl2(THETA, T_JONES_SL2) == (Z * Z + Z) * F(1, 2)
    assert lambda_z_sl2(THETA, T_CK_SL2) == -(Z * Z + Z) * F(1, 2)
    assert sl2_quadratic_eigenvalue() == (Z * Z + Z) * F(1, 2)


@pytest.mark.parametrize(
    "d",
    ALL_SMALL + enumerate_diagrams(4),
    ids=lambda d: d.gauss_text() or "unit",
)
def test_lambda_z_degree_bound(d):
    assert lambda_z_sl2(d).degree() <= 2 * d.n


def test_lambda_z_multiplicative_under_connected_sum():
    pool = [d for n in range(3) for d in enumerate_diagrams(n)]
    for d1, d2 in product(pool, pool):
        if d1.n + d2.n > 4:
            continue
        assert lambda_z_sl2(connected_sum(d1, d2)) == lambda_z_sl2(d1) * lambda_z_sl2(d2)


def test_lambda_z_basepoint_independent():
    for d in enumerate_diagrams(3):
        base = lambda_z_sl2(d)
        for start in range(1, 2 * d.n):
            assert lambda_z_sl2(d, start=start) == base


def test_sign_parity_under_tensor_negation():
    for d in ALL_SMALL:
        flipped = lambda_z_sl2(d, T_CK_SL2)
        straight = lambda_z_sl2(d, T_JONES_SL2)
        assert flipped == (straight if d.n % 2 == 0 else -1 * straight)


def test_four_t_vanishing_sl2():
    for n in (2, 3):
        for g in four_t_generators(n):
            assert lambda_z_sl2(g).is_zero()
            assert lambda_z_sl2(g, T_CK_SL2).is_zero()


# ---------------------------------------------------------------------------
# Lorentz characters: direct route, factorized route, Casimirs
# ---------------------------------------------------------------------------


def test_lambda_mp_unit():
    for m in (0, 1, 2):
        assert lambda_mp_direct(UNIT_DIAGRAM, m) == ParamPolynomial([1])
        assert lambda_mp_factorized(UNIT_DIAGRAM, m) == ParamPolynomial([1])


def test_theta_value_and_casimir_difference():
    # The one-chord weight equals minus the quadratic element's eigenvalue;
    # the quadratic element of the balanced tensor is C_left - C_right with
    # eigenvalue difference mp/2.
    P = poly_variable()
    for m in (0, 1, 2):
        left, right = casimir_eigenvalues(m)
        assert left - right == P * F(m, 2)
        assert lambda_mp_direct(THETA, m) == -(left - right)
        assert lambda_mp_factorized(THETA, m) == -(left - right)


def test_casimir_eigenvalues_reproduced_by_module_action():
    for m in (0, 1, 2):
        left, right = casimir_eigenvalues(m)
        assert lorentz_quadratic_eigenvalue(CASIMIR_LEFT_TERMS, m) == left
        assert lorentz_quadratic_eigenvalue(CASIMIR_RIGHT_TERMS, m) == right


def test_casimir_numeric_points():
    assert casimir_eigenvalues(0, 1) == (GaussianRational(0), GaussianRational(0))
    left, right = casimir_eigenvalues(0)
    assert left == right and left.is_even()


@pytest.mark.parametrize("m", [0, 1, 2])
def test_routes_agree_all_small_diagrams(m):
    for d in ALL_SMALL:
        assert lambda_mp_direct(d, m) == lambda_mp_factorized(d, m), d.gauss_text()


def test_balanced_characters_even_in_p():
    for d in ALL_SMALL:
        assert lambda_mp_factorized(d, 0).is_even(), d.gauss_text()


def test_four_t_vanishing_lorentz():
    for n in (2, 3):
        for g in four_t_generators(n):
            for m in (0, 1, 2):
                assert lambda_mp_factorized(g, m).is_zero()


def test_unframed_criterion_on_quadratic_value():
    # The one-chord weight vanishes identically in p iff m = 0, and at p = 0
    # for every m.
    assert lambda_mp_factorized(THETA, 0).is_zero()
    for m in (1, 2, 3):
        poly = lambda_mp_factorized(THETA, m)
        assert not poly.is_zero()
        assert poly.evaluate(0) == 0


def test_half_integer_m_factorized_only():
    val = lambda_mp_factorized(THETA, F(1, 2))
    assert val == lambda_mp_factorized(THETA, F(1, 2))  # deterministic
    with pytest.raises(ValueError):
        lambda_mp_direct(THETA, F(1, 2))


def test_direct_route_guard():
    big = connected_sum(
        connected_sum(parse_diagram("AABB"), parse_diagram("AABB")),
        parse_diagram("AA"),
    )
    assert big.n == 5
    with pytest.raises(ResourceGuardError):
        lambda_mp_direct(big, 0)


def test_direct_matches_factorized_on_cross_tensor():
    # Left Casimir through the direct machinery equals the weight of the
    # one-chord diagram under the left tensor, up to the per-chord sign.
    from lorentzknots.weights import lorentz_weight_raw

    for m in (0, 1, 2):
        left, _ = casimir_eigenvalues(m)
        assert lorentz_weight_raw(T_LEFT, THETA, m) == left
