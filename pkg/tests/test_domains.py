import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pentablock.domains import (
    Automorphism,
    PentaPoint,
    automorphism_apply,
    beta,
    in_bpenta,
    in_gamma,
    in_k1,
    in_penta,
    on_royal,
    penta_bound,
    phi_omega,
    pi_map,
    psi,
    royal_geodesic,
    sup_psi,
)
from pentablock.errors import DataError, DomainError, SingularError

import randgen


def close(x, y, tol=1e-12):
    return all(abs(complex(a) - complex(b)) <= tol for a, b in zip(x, y))


# --- pi, beta, psi ----------------------------------------------------------


@pytest.mark.parametrize(
    "M, want",
    [
        ([[1, 0], [0, 0]], (0, 1, 0)),
        ([[0.2, 0], [0.1, 0.3]], (0.1, 0.5, 0.06)),
        ([[0, 1], [1, 0]], (1, 0, -1)),
    ],
)
def test_pi_map(M, want):
    assert close(pi_map(M), want)


def test_pi_map_rejects_bad_shape():
    with pytest.raises(DataError):
        pi_map([[1, 2, 3]])


def test_beta_examples():
    assert beta(0, 0.5) == 0
    w = cmath.exp(0.7j)
    s = 1.2 * cmath.exp(0.35j)  # s = conj(s) w
    assert abs(beta(s, w) - s / 2) < 1e-15
    assert beta(1, 0) == 1


def test_beta_outside_gamma():
    with pytest.raises(DomainError):
        beta(3, 1)


def test_psi_examples():
    assert psi(0, (0.3 + 0.1j, 1.0, 0.2)) == 0.3 + 0.1j
    assert psi(0.4j, (0, 1.0, 0.2)) == 0
    assert psi(0.5, (1, 0, 0)) == pytest.approx(0.75)


def test_psi_singular():
    # 1 - s z + p z^2 vanishes at z = 1/2 for s = 2, p = 0
    with pytest.raises(SingularError):
        psi(0.5, (1, 2, 0))


# --- Gamma ------------------------------------------------------------------


def test_in_gamma_examples():
    assert in_gamma(0, 0.5, "closed").inside
    assert in_gamma(2, 1, "boundary").inside
    v = in_gamma(3, 1, "closed")
    assert not v.inside and v.binding == "|s| <= 2"


def test_open_membership_is_strict():
    assert in_gamma(2, 1, "closed").inside
    assert not in_gamma(2, 1, "open").inside


@given(st.floats(0, 1), st.floats(0, 2 * math.pi), st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_symmetrized_points_in_gamma(r1, t1, r2, t2):
    z, w = r1 * cmath.exp(1j * t1), r2 * cmath.exp(1j * t2)
    assert in_gamma(z + w, z * w, "closed").inside
    if abs(z) == 1 and abs(w) == 1:
        assert in_gamma(z + w, z * w, "boundary").inside


# --- pentablock -------------------------------------------------------------


def test_in_penta_examples():
    assert in_penta((0.9, 0, 0.3)).inside
    v = in_penta((1.2, 0, 0))
    assert not v.inside
    x = (0.5, 1.0, 0.2)
    assert in_penta(x, criterion="beta").inside == in_penta(x, criterion="sup_psi").inside


def test_s_zero_reduces_to_unit_disc():
    for a in (0.3, 0.999, 1.0):
        assert in_penta((a, 0, 0.7j)).inside
    assert not in_penta((1.001, 0, 0.7j)).inside


def test_contractions_land_in_closed_pentablock(rng):
    for _ in range(200):
        assert in_penta(pi_map(randgen.contraction(rng))).inside


def test_strict_contractions_land_in_open_pentablock(rng):
    for _ in range(50):
        assert in_penta(pi_map(randgen.contraction(rng, 0.95)), mode="open").inside


def test_sup_psi_matches_closed_form(rng):
    for _ in range(20):
        a, s, p = randgen.near_boundary_penta(rng)
        want = abs(a) / float(penta_bound(s, p))
        assert sup_psi((a, s, p)) == pytest.approx(want, rel=1e-6)


def test_criteria_agree_near_boundary(rng):
    for _ in range(60):
        x = randgen.near_boundary_penta(rng)
        vb = in_penta(x, criterion="beta")
        if abs(vb.margin) < 1e-4:
            continue
        assert vb.inside == in_penta(x, criterion="sup_psi").inside


# --- distinguished boundary, K1, royal variety -------------------------------


def test_in_bpenta_examples():
    assert in_bpenta((1, 0, 1)).inside
    assert in_bpenta((0, 2, 1)).inside
    v = in_bpenta((0.5, 0, 1))
    assert not v.inside and v.binding == "|a| = sqrt(1 - |s|^2/4)"


def test_bpenta_inside_closed_pentablock(rng):
    for _ in range(100):
        z = randgen.unit(rng)
        w = randgen.unit(rng)
        s, p = z + w, z * w
        a = math.sqrt(max(0.0, 1 - abs(s) ** 2 / 4)) * randgen.unit(rng)
        assert in_bpenta((a, s, p)).inside
        assert in_penta((a, s, p)).inside
        assert in_k1((0.5 * a, s, p)).inside


def test_on_royal_examples():
    assert on_royal((0, 0.8, 0.16)).inside
    assert not on_royal((0.1, 0, 0)).inside
    assert not on_royal((0, 1, 1)).inside
    assert on_royal((0.8, 0.16)).inside


# --- Phi_omega and the royal geodesic --------------------------------------


def test_phi_omega_examples():
    assert phi_omega(1, 0, 0.3 + 0.2j) == pytest.approx(0.3 + 0.2j)
    lam = 0.3 - 0.4j
    a, s, p = royal_geodesic(lam)
    for w in (1, 1j, cmath.exp(2.1j)):
        assert phi_omega(w, s, p) == pytest.approx(lam)
    with pytest.raises(SingularError):
        phi_omega(1, 2, 1)


def test_royal_geodesic():
    assert close(royal_geodesic(0), (0, 0, 0))
    assert close(royal_geodesic(0.5), (0, -1, 0.25))
    with pytest.raises(DomainError):
        royal_geodesic(1.0)


# --- automorphisms ----------------------------------------------------------


def random_aut(rng):
    return Automorphism(randgen.unit(rng), randgen.unit(rng), randgen.in_disc(rng, 0.9))


def test_identity_automorphism(rng):
    x = pi_map(randgen.contraction(rng))
    assert close(automorphism_apply(Automorphism(), x), x, 1e-14)


def test_automorphism_preserves_pentablock(rng):
    for _ in range(50):
        f = random_aut(rng)
        y = automorphism_apply(f, pi_map(randgen.contraction(rng)))
        assert in_penta(y).inside


def test_group_law_and_inverse(rng):
    for _ in range(20):
        f, g = random_aut(rng), random_aut(rng)
        fg = f.compose(g)
        for _ in range(16):
            x = pi_map(randgen.contraction(rng, 0.99))
            y1 = automorphism_apply(f, automorphism_apply(g, x))
            y2 = automorphism_apply(fg, x)
            assert close(y1, y2, 1e-9)
            assert close(automorphism_apply(f.inverse(), automorphism_apply(f, x)), x, 1e-9)


def test_royal_invariance(rng):
    for _ in range(50):
        f = random_aut(rng)
        lam = randgen.in_disc(rng, 0.99)
        y = automorphism_apply(f, (0, 2 * lam, lam * lam))
        assert abs(y.a) <= 1e-12
        assert abs(y.s**2 - 4 * y.p) <= 1e-9


def test_automorphism_rejects_outside_gamma():
    with pytest.raises(DomainError):
        automorphism_apply(Automorphism(), (0, 3, 1))


def test_penta_point_gamma():
    assert PentaPoint(1, 2, 3).gamma == (2, 3)
