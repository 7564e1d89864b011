import math

import numpy as np
import pytest

from pentablock.cpoly import BlaschkeProduct, ComplexPoly
from pentablock.domains import bpenta_margins, in_bpenta
from pentablock.errors import DomainError
from pentablock.gamma_inner import GammaInnerRep, ay_equality_interpolant, circle_samples
from pentablock.penta_inner import (
    PentaInnerRep,
    assemble,
    boundary_trace,
    conjugated_diagonal_triple,
    degree,
    diagonal_triple,
    lift_gamma,
    outer_factor,
    penta_eval,
    power_a_example,
    power_p_example,
    rotated_diagonal_triple,
    royal_example,
    verify_k1,
    verify_penta_inner,
)

import randgen

R = 3 + 2 * math.sqrt(2)
WORKED = GammaInnerRep(ComplexPoly([-1j, 1j]), ComplexPoly([R, -1]) / (R - 1), 1)
IDENT = GammaInnerRep(ComplexPoly(), ComplexPoly([1]), 1)


def ident(lam):
    return np.asarray(lam, dtype=complex)


def sq(lam):
    return np.asarray(lam, dtype=complex) ** 2


# --- assembly ---------------------------------------------------------------


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_assemble_power_a(m):
    x = assemble(BlaschkeProduct(1, (0,) * m), IDENT)
    assert x.A.allclose(ComplexPoly([1]), 1e-12)
    lam = 0.3 + 0.4j
    assert np.allclose(x(lam), (lam**m, 0, lam), atol=1e-14)


def test_assemble_worked_example():
    x = assemble(BlaschkeProduct(), WORKED)
    assert x.A.allclose(ComplexPoly([1]), 1e-9)
    a, s, p = penta_eval(x, 1.0)
    assert abs(s) < 1e-14 and abs(abs(a) - 1) < 1e-9


def test_assemble_random(rng):
    for _ in range(30):
        h = randgen.gamma_rep(rng)
        B = randgen.blaschke(rng, int(rng.integers(0, 4)))
        x = assemble(B, h)
        assert verify_penta_inner(x).passed
        dg = degree(x)
        assert dg.deg_a <= B.degree + h.n and dg.deg_p <= h.n
        # dropping the inner part keeps a penta-inner function
        assert verify_penta_inner(x.with_inner(BlaschkeProduct())).passed
        _, a, s, p, _ = boundary_trace(x, 256)
        assert np.max(np.abs(np.abs(a) ** 2 + np.abs(s) ** 2 / 4 - 1)) <= 1e-8


def test_outer_factor_royal_is_zero():
    h = GammaInnerRep(ComplexPoly([0, 2]), ComplexPoly([1]), 2)
    assert outer_factor(h).is_zero


def test_penta_eval_domain():
    with pytest.raises(DomainError):
        penta_eval(power_a_example(1), 1.5)


# --- catalog ----------------------------------------------------------------


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_power_a_catalog(m):
    x = power_a_example(m)
    assert verify_penta_inner(x).passed
    assert degree(x) == (m, 1)
    assert np.allclose(x(0), (0**m, 0, 0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_power_p_catalog(n):
    x = power_p_example(n)
    assert verify_penta_inner(x).passed
    assert degree(x) == (1, n)
    assert in_bpenta(x(1.0)).inside


@pytest.mark.parametrize("zeros", [(), (0.0,), (0.5j,), (0.3, -0.6 + 0.2j)])
def test_royal_catalog(zeros):
    B = BlaschkeProduct(np.exp(0.4j), zeros)
    x = royal_example(B)
    assert x.zero_a
    assert verify_penta_inner(x).passed
    lam = randgen.in_disc(np.random.default_rng(0), 0.9)
    a, s, p = x(lam)
    assert abs(a) == 0 and abs(s - 2 * B(lam)) < 1e-12 and abs(p - B(lam) ** 2) < 1e-12
    if zeros:
        assert degree(x) == (0, 2 * len(zeros))


def test_diagonal_inner_only_on_diagonal():
    assert verify_penta_inner(diagonal_triple(ident, ident)).passed
    rep = verify_penta_inner(diagonal_triple(ident, sq))
    assert not rep.passed
    assert min(c.margin for c in rep.failures) < -1e-3


def test_rotated_diagonal():
    assert verify_penta_inner(rotated_diagonal_triple(lambda l: -1j * ident(l), ident)).passed
    rep = verify_penta_inner(rotated_diagonal_triple(ident, ident))
    assert not rep.passed and min(c.margin for c in rep.failures) < -1e-3


def test_conjugated_diagonal():
    assert verify_penta_inner(conjugated_diagonal_triple(ident, sq, np.exp(0.3j))).passed
    assert verify_penta_inner(conjugated_diagonal_triple(ident, ident, 0.5)).passed
    rep = verify_penta_inner(conjugated_diagonal_triple(ident, sq, 0.5))
    assert not rep.passed and min(c.margin for c in rep.failures) < -1e-3


def test_verify_negative_examples():
    def f(lam):
        lam = np.asarray(lam, dtype=complex)
        return lam, np.zeros_like(lam), np.zeros_like(lam)

    assert not verify_penta_inner(f).passed


# --- lifts and K1 -----------------------------------------------------------


def test_lift_gamma():
    # (0, 0, lam) lands in K1; it misses b P-bar since |a| = 0 < 1 there
    assert verify_k1(lift_gamma(IDENT)).passed
    assert not verify_penta_inner(lift_gamma(IDENT)).passed
    royal = GammaInnerRep(ComplexPoly([0, 2]), ComplexPoly([1]), 2)
    assert verify_penta_inner(lift_gamma(royal)).passed
    # a royal target gives the royal map (2B, B^2); use a non-royal one
    h = ay_equality_interpolant(0.28, 0.5, 0.1)
    assert verify_k1(lift_gamma(h)).passed
    _, s, p = lift_gamma(h)(circle_samples(512))
    m, _, _ = bpenta_margins(np.zeros_like(s), s, p)
    assert np.min(m) < -1e-3


def test_rep_roundtrip_fields():
    x = power_a_example(2)
    assert isinstance(x, PentaInnerRep) and x.gamma.n == 1
