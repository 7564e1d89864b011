import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pentablock.cpoly import (
    BlaschkeProduct,
    ComplexPoly,
    RationalMap,
    TrigPoly,
    blaschke_eval,
    compose_rational,
    evaluate,
    involution,
    is_outer,
    rational_degree,
    root_clusters,
    roots,
)
from pentablock.errors import DataError, DegreeError, SingularError, UndefinedRootsError

R = 3 + 2 * math.sqrt(2)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)
coeff_lists = st.lists(cplx, min_size=1, max_size=8)


# --- ComplexPoly basics -----------------------------------------------------


def test_trailing_zeros_trimmed():
    assert ComplexPoly([1, 2, 0, 1e-15]).coeffs.tolist() == [1, 2]
    assert ComplexPoly([1, 2, 0]) == ComplexPoly([1, 2])


def test_zero_polynomial():
    z = ComplexPoly()
    assert z.is_zero and z.degree is None
    assert ComplexPoly([0, 0]).is_zero


def test_non_finite_rejected():
    with pytest.raises(DataError):
        ComplexPoly([1, math.nan])


def test_coefficients_read_only():
    P = ComplexPoly([1, 2])
    with pytest.raises(ValueError):
        P.coeffs[0] = 5


@pytest.mark.parametrize(
    "coeffs, lam, want",
    [
        ([1], 0.37 - 2j, 1),
        ([0, 1], 1j, 1j),
        ([1, -6, 1], R, 0),
    ],
)
def test_eval_examples(coeffs, lam, want):
    assert abs(evaluate(ComplexPoly(coeffs), lam) - want) <= 1e-12 * max(1, abs(lam) ** 2)


def test_arithmetic():
    P = ComplexPoly([1, 1])
    Q = ComplexPoly([1, -1])
    assert P * Q == ComplexPoly([1, 0, -1])
    assert (P + Q) == ComplexPoly([2])
    assert (P - P).is_zero
    assert P**3 == ComplexPoly([1, 3, 3, 1])
    assert (P / 2).allclose(ComplexPoly([0.5, 0.5]))


@given(coeff_lists, cplx)
def test_horner_matches_power_sum(c, lam):
    lam = lam / 10
    P = ComplexPoly(c)
    naive = sum(ci * lam**i for i, ci in enumerate(P.coeffs))
    assert abs(P(lam) - naive) <= 1e-9 * (1 + sum(abs(x) for x in c))


# --- involution -------------------------------------------------------------


@pytest.mark.parametrize(
    "g, n, want",
    [
        ([1], 1, [0, 1]),
        ([0, 2.5], 2, [0, 2.5]),
        ([1, -0.5], 1, [-0.5, 1]),
    ],
)
def test_involution_examples(g, n, want):
    assert involution(ComplexPoly(g), n).allclose(ComplexPoly(want), 1e-15)


def test_involution_degree_error():
    with pytest.raises(DegreeError):
        involution(ComplexPoly([1, 1, 1]), 1)


@given(coeff_lists, st.integers(0, 4))
def test_involution_is_involution(c, extra):
    g = ComplexPoly(c)
    n = (g.degree or 0) + extra
    assert involution(involution(g, n), n).allclose(g, 1e-12)


@given(coeff_lists, st.floats(0, 2 * math.pi))
def test_involution_pointwise(c, t):
    # g~n(lam) = lam^n conj(g(1/conj(lam))); on the circle 1/conj(lam) = lam
    g = ComplexPoly(c)
    n = g.degree or 0
    lam = complex(math.cos(t), math.sin(t))
    assert abs(involution(g, n)(lam) - lam**n * np.conj(g(lam))) <= 1e-9 * (1 + g.max_coeff() * len(g))


# --- roots ------------------------------------------------------------------


def test_roots_examples():
    r = roots(ComplexPoly([1, 0, 1]))
    assert len(r) == 2 and {round(z.imag) for z in r} == {1, -1}
    r = roots(ComplexPoly([1, -6, 1]))
    assert abs(r[0] - (3 - 2 * math.sqrt(2))) < 1e-12
    assert abs(r[1] - R) < 1e-12
    assert roots(ComplexPoly([7])) == []


def test_roots_of_zero_polynomial():
    with pytest.raises(UndefinedRootsError):
        roots(ComplexPoly())


def test_roots_sorted_by_modulus_then_argument():
    r = roots(ComplexPoly.from_roots([2, -1, 1j, 0.5]))
    assert np.allclose(r, [0.5, 1j, -1, 2], atol=1e-10)


def test_multiplicity_clusters():
    P = ComplexPoly.from_roots([1, 1, -0.5, 1j, 1j, 1j])
    cl = dict((round(z.real, 6) + 1j * round(z.imag, 6), m) for z, m in root_clusters(P))
    assert cl == {1: 2, -0.5: 1, 1j: 3}


@given(st.lists(cplx, min_size=1, max_size=10))
def test_root_residuals(c):
    P = ComplexPoly(c + [1.0])
    for r in roots(P):
        scale = sum(abs(a) * abs(r) ** i for i, a in enumerate(P.coeffs))
        assert abs(P(r)) <= 1e-9 * scale


def test_roots_deterministic(rng):
    P = ComplexPoly(rng.normal(size=9) + 1j * rng.normal(size=9))
    assert roots(P) == roots(ComplexPoly(P.coeffs.copy()))


def test_roots_high_degree(rng):
    rts = np.exp(2j * np.pi * rng.random(14)) * (0.3 + 2 * rng.random(14))
    got = roots(ComplexPoly.from_roots(rts))
    for z in rts:
        assert min(abs(z - g) for g in got) < 1e-8


# --- outerness --------------------------------------------------------------


@pytest.mark.parametrize(
    "coeffs, want",
    [([1, 1], True), ([0, 1], False), ([R, -1], True), ([1, -2], False)],
)
def test_is_outer_examples(coeffs, want):
    assert is_outer(ComplexPoly(coeffs)) is want


def test_is_outer_zero():
    with pytest.raises(UndefinedRootsError):
        is_outer(ComplexPoly())


# --- Blaschke products ------------------------------------------------------


def test_blaschke_examples():
    assert blaschke_eval(BlaschkeProduct(1, (0,)), 0.3) == pytest.approx(0.3)
    a = 0.2 + 0.4j
    assert abs(blaschke_eval(BlaschkeProduct(1, (a,)), a)) < 1e-15
    assert blaschke_eval(BlaschkeProduct(1, (0.5,)), 1.0) == pytest.approx(1.0)


def test_blaschke_validation():
    with pytest.raises(DataError):
        BlaschkeProduct(2.0, ())
    with pytest.raises(DataError):
        BlaschkeProduct(1.0, (1.0,))


def test_blaschke_pole():
    with pytest.raises(SingularError):
        BlaschkeProduct(1, (0.5,))(2.0)


def test_blaschke_boundary_modulus(rng):
    lam = np.exp(2j * np.pi * rng.random(256))
    for _ in range(20):
        m = int(rng.integers(0, 7))
        zs = tuple(np.sqrt(rng.random(m)) * 0.99 * np.exp(2j * np.pi * rng.random(m)))
        B = BlaschkeProduct(np.exp(2j * np.pi * rng.random()), zs)
        assert np.max(np.abs(np.abs(B(lam)) - 1)) <= 1e-10


def test_blaschke_numerator_denominator(rng):
    B = BlaschkeProduct(1j, (0.3, -0.2 + 0.5j))
    lam = 0.4 * np.exp(2j * np.pi * rng.random(10))
    assert np.allclose(B.numerator(lam) / B.denominator(lam), B(lam), atol=1e-14)


# --- composition ------------------------------------------------------------


@pytest.mark.parametrize(
    "g, k, num, den, want",
    [
        ([0, 1], 1, [0, 1], [1], [0, 1]),
        ([0, 0, 1], 2, [0, 1], [1], [0, 0, 1]),
        ([1, 1], 1, [-0.5, 1], [1, -0.5], [0.5, 0.5]),
    ],
)
def test_compose_examples(g, k, num, den, want):
    got = compose_rational(ComplexPoly(g), k, ComplexPoly(num), ComplexPoly(den))
    assert got.allclose(ComplexPoly(want), 1e-14)


def test_compose_degree_error():
    with pytest.raises(DegreeError):
        compose_rational(ComplexPoly([1, 1, 1]), 1, ComplexPoly([0, 1]), ComplexPoly([1]))


def test_compose_pointwise(rng):
    for _ in range(10):
        k = int(rng.integers(1, 5))
        g = ComplexPoly(rng.normal(size=k + 1) + 1j * rng.normal(size=k + 1))
        B = BlaschkeProduct(1, tuple(0.8 * np.sqrt(rng.random(2)) * np.exp(2j * np.pi * rng.random(2))))
        lam = np.sqrt(rng.random(64)) * np.exp(2j * np.pi * rng.random(64))
        got = compose_rational(g, k, B.numerator, B.denominator)(lam)
        want = g(B.numerator(lam) / B.denominator(lam)) * B.denominator(lam) ** k
        assert np.max(np.abs(got - want) / np.maximum(np.abs(want), 1e-300)) <= 1e-9


def test_rational_map_regularity():
    assert RationalMap(ComplexPoly([0, 1]), ComplexPoly([2, -1])).is_disc_regular()
    assert not RationalMap(ComplexPoly([1]), ComplexPoly([0.5, -1])).is_disc_regular()


def test_rational_degree_cancels():
    assert rational_degree([0.5, 0.1], [0.5, 3.0]) == 1
    assert rational_degree([0.2], []) == 1
    assert rational_degree([], [2, 3]) == 2


# --- TrigPoly ---------------------------------------------------------------


def test_trigpoly_roundtrip_and_modsq():
    D = ComplexPoly([1, 1])
    f = TrigPoly.modsq(D, 1)
    assert np.allclose(f.centred, [1, 2, 1])
    lam = np.exp(1j * np.linspace(0, 6, 7))
    assert np.allclose(f(lam), np.abs(D(lam)) ** 2)
    assert f.is_hermitian()
    assert not TrigPoly({1: 1j}).is_hermitian()


def test_trigpoly_odd_length_required():
    with pytest.raises(DataError):
        TrigPoly([1, 2])
