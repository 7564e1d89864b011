"""Rational Gamma-inner functions ``h = (E/D, D~n/D)``."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .cpoly import (
    BlaschkeProduct,
    ComplexPoly,
    compose_rational,
    involution,
    min_root_modulus,
    rational_degree,
    root_clusters,
    roots,
)
from .domains import GammaPoint, gamma_margins
from .errors import (
    CompositionError,
    DataError,
    DegreeError,
    DomainError,
    InconsistentDataError,
    NotExtremalError,
    NumericError,
    ParityError,
    RoyalFunctionError,
)
from .report import Report

BOUNDARY_SAMPLES = 512
GRID = 32
VERIFY_TOL = 1e-8
EQUALITY_TOL = 1e-8
SNAP_TOL = 1e-6


def circle_samples(m: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(m) / m)


def disc_grid(m: int) -> np.ndarray:
    """``m x m`` polar grid in the open disc, flattened."""
    r = (np.arange(m) + 0.5) / m
    t = 2 * np.pi * np.arange(m) / m
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


@dataclass(frozen=True)
class GammaInnerRep:
    """Representation ``s = E/D``, ``p = D~n / D``.

    Parameters
    ----------
    E, D : ComplexPoly
        Polynomials of degree at most ``n``; ``D`` must not vanish
        identically.
    n : int
        Formal degree.
    """

    E: ComplexPoly
    D: ComplexPoly
    n: int

    def __post_init__(self):
        E = self.E if isinstance(self.E, ComplexPoly) else ComplexPoly(self.E)
        D = self.D if isinstance(self.D, ComplexPoly) else ComplexPoly(self.D)
        n = int(self.n)
        if n < 0:
            raise DataError("n must be non-negative")
        if D.is_zero:
            raise DataError("D must not vanish identically")
        for name, poly in (("E", E), ("D", D)):
            if not poly.is_zero and poly.degree > n:
                raise DegreeError(f"deg({name}) = {poly.degree} exceeds n = {n}")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "n", n)

    @property
    def D_tilde(self) -> ComplexPoly:
        return involution(self.D, self.n)

    def evaluate(self, lam):
        """``(s, p)`` at ``lam`` (scalar or array)."""
        d = self.D(lam)
        return self.E(lam) / d, self.D_tilde(lam) / d

    def __call__(self, lam) -> GammaPoint:
        s, p = self.evaluate(lam)
        return GammaPoint(complex(s), complex(p))


def gamma_eval(h: GammaInnerRep, lam: complex) -> GammaPoint:
    """``(E/D, D~n/D)`` at a point of the closed disc."""
    if abs(lam) > 1.0 + 1e-12:
        raise DomainError("evaluation point must lie in the closed disc")
    return h(lam)


def royal_polynomial(h: GammaInnerRep) -> ComplexPoly:
    """``4 D D~n - E^2``."""
    return 4.0 * h.D * h.D_tilde - h.E * h.E


def _royal_is_zero(h: GammaInnerRep, R: ComplexPoly) -> bool:
    ref = max((4.0 * h.D * h.D_tilde).max_coeff(), (h.E * h.E).max_coeff())
    return R.is_zero or R.max_coeff() <= 1e-10 * ref


def royal_nodes(h: GammaInnerRep) -> list[tuple[complex, int]]:
    """Royal nodes of ``h`` in the closed disc with multiplicities.

    Roots of the royal polynomial on the circle have their order halved.

    Raises
    ------
    RoyalFunctionError
        If the royal polynomial vanishes identically.
    ParityError
        If a root on the circle has odd order.
    """
    R = royal_polynomial(h)
    if _royal_is_zero(h, R):
        raise RoyalFunctionError("h maps into the royal variety")
    nodes = []
    for z, m in root_clusters(R):
        if abs(abs(z) - 1.0) < SNAP_TOL:
            if m % 2:
                raise ParityError(f"royal root {z:.6g} on the circle has odd order {m}")
            nodes.append((z / abs(z), m // 2))
        elif abs(z) < 1.0:
            nodes.append((z, m))
    return nodes


def gamma_degree(h: GammaInnerRep) -> int:
    """Degree of the Blaschke product ``p`` after cancelling common roots."""
    Dt = h.D_tilde
    num = roots(Dt) if not Dt.is_zero else []
    return rational_degree(num, roots(h.D))


def derivatives_at_zero(h: GammaInnerRep) -> tuple[complex, complex]:
    """``(s'(0), p'(0))``."""
    if h.n == 0:
        return 0j, 0j
    E = h.E.padded(h.n)
    D = h.D.padded(h.n)
    Dt = h.D_tilde.padded(h.n)
    d0 = D[0]
    return (
        complex((E[1] * d0 - E[0] * D[1]) / d0**2),
        complex((Dt[1] * d0 - Dt[0] * D[1]) / d0**2),
    )


def verify_gamma_inner(
    h: GammaInnerRep,
    boundary_samples: int = BOUNDARY_SAMPLES,
    grid: int = GRID,
    tol: float = VERIFY_TOL,
) -> Report:
    """Check the representation invariants and the boundary behaviour.

    The report lists degree bounds, n-symmetry of ``E``, the absence of
    roots of ``D`` in the closed disc, ``|E| <= 2|D|`` on the circle,
    boundary values in b Gamma and interior values in Gamma.
    """
    rep = Report("gamma-inner")
    degE = -1 if h.E.is_zero else h.E.degree
    rep.require("deg(E) <= n", h.n - degE, 0)
    rep.require("deg(D) <= n", h.n - h.D.degree, 0)
    sym = 0.0 if h.E.is_zero else (involution(h.E, h.n) - h.E).max_coeff()
    rep.require("E is n-symmetric", -sym / (1.0 + h.E.max_coeff()), tol)
    dmin = min_root_modulus(h.D)
    rep.add("D has no roots in the closed disc", dmin > 1.0, dmin - 1.0)

    lam = circle_samples(boundary_samples)
    dv = h.D(lam)
    ev = h.E(lam)
    with np.errstate(divide="ignore", invalid="ignore"):
        rep.require("|E| <= 2|D| on the circle", float(np.min(2.0 - np.abs(ev / dv))), tol)
        s, p = h.evaluate(lam)
        m, _, _ = gamma_margins(s, p, "boundary")
        rep.require("boundary values in b Gamma", float(np.min(m)), tol)
        s, p = h.evaluate(disc_grid(grid))
        m, _, _ = gamma_margins(s, p, "closed")
        rep.require("interior values in Gamma", float(np.min(m)), tol)
    return rep


# ---------------------------------------------------------------------------
# two-point equality case


def gamma_fraction(s0: complex, p0: complex) -> float:
    """``(2|s0 - p0 conj(s0)| + |s0^2 - 4 p0|) / (4 - |s0|^2)``."""
    s0 = complex(s0)
    p0 = complex(p0)
    den = 4.0 - abs(s0) ** 2
    if den <= 0:
        raise DomainError("requires |s0| < 2")
    return (2.0 * abs(s0 - p0 * s0.conjugate()) + abs(s0 * s0 - 4.0 * p0)) / den


@dataclass(frozen=True)
class AYParams:
    """Parameters of the degree-two extremal interpolant."""

    zeta: complex
    p1: complex
    c: float
    lam0: complex


def ay_params(lam0: complex, s0: complex, p0: complex) -> AYParams:
    lam0, s0, p0 = complex(lam0), complex(s0), complex(p0)
    r0 = abs(lam0)
    zeta = 1.0 + 0j if abs(s0) == 0.0 else r0 * s0 / (lam0 * abs(s0))
    p1 = p0 / lam0
    c = (2.0 / r0) * (
        abs(lam0.conjugate() - p0.conjugate() * lam0 * zeta**2) - abs(lam0**2 * zeta**2 - p0)
    )
    return AYParams(zeta, p1, float(c), lam0)


def ay_equality_interpolant(
    lam0: complex, s0: complex, p0: complex, tol: float = EQUALITY_TOL, check: bool = True
) -> GammaInnerRep:
    """Gamma-inner ``phi`` with ``phi(0) = (0, 0)`` and ``phi(lam0) = (s0, p0)``
    in the extremal case where the Gamma fraction of ``(s0, p0)`` equals
    ``|lam0|``.

    When ``|p0| = |lam0|`` (forcing ``s0 = 0``) this is ``(0, omega lam)``
    with ``omega = p0/lam0``.  Otherwise it is the degree-two function with
    ``E = c lam`` and ``D = conj(zeta) ((1 - conj(lam0) lam) + conj(p1) zeta^2 (lam - lam0))``.

    Raises
    ------
    DomainError
        If ``lam0`` is not in the punctured disc or ``|s0| >= 2``.
    NotExtremalError
        If the equality condition fails by more than ``tol``.
    InconsistentDataError
        If ``|p0| = |lam0|`` while ``s0 != 0``.
    """
    lam0, s0, p0 = complex(lam0), complex(s0), complex(p0)
    r0 = abs(lam0)
    if not 0.0 < r0 < 1.0:
        raise DomainError("lambda0 must lie in the punctured disc")
    if abs(s0) >= 2.0:
        raise DomainError("requires |s0| < 2")
    F = gamma_fraction(s0, p0)
    if abs(F - r0) > tol:
        raise NotExtremalError(f"Gamma fraction {F:.12g} differs from |lambda0| = {r0:.12g}")
    if abs(abs(p0) - r0) <= tol:
        if abs(s0) > 1e-7:
            raise InconsistentDataError("|p0| = |lambda0| requires s0 = 0")
        omega = p0 / lam0
        omega /= abs(omega)
        h = GammaInnerRep(ComplexPoly(), ComplexPoly([cmath.sqrt(omega).conjugate()]), 1)
    else:
        prm = ay_params(lam0, s0, p0)
        z2 = prm.zeta**2
        q = prm.p1.conjugate() * z2
        D = ComplexPoly([1.0 - q * lam0, q - lam0.conjugate()]) * prm.zeta.conjugate()
        h = GammaInnerRep(ComplexPoly([0.0, prm.c]), D, 2)
    if check:
        s_at, p_at = h.evaluate(np.array([0.0, lam0]))
        err = max(abs(s_at[0]), abs(p_at[0]), abs(s_at[1] - s0), abs(p_at[1] - p0))
        if err > 1e-9 + 10 * tol:
            raise NumericError(f"extremal interpolant misses its data by {err:.3e}")
    return h


def ay_identity_defect(h: GammaInnerRep, lam):
    """``||lam|^2 s - conj(s) p| + |p|^2 + (1 - |lam|^2)|s|^2/4 - |lam|^2``."""
    lam = np.asarray(lam, dtype=complex)
    s, p = h.evaluate(lam)
    r2 = np.abs(lam) ** 2
    return np.abs(r2 * s - np.conj(s) * p) + np.abs(p) ** 2 + (1 - r2) * np.abs(s) ** 2 / 4 - r2


def compose_with_blaschke(
    h: GammaInnerRep, m: BlaschkeProduct, check: bool = True, seed: int = 0
) -> GammaInnerRep:
    """Representation of ``h o m`` with formal degree ``n * deg(m)``.

    Writing ``m = P/Q`` with ``P = c prod (lam - alpha)`` and
    ``Q = prod (1 - conj(alpha) lam)``, the new polynomials are
    ``kappa Q^n E(P/Q)`` and ``kappa Q^n D(P/Q)`` where
    ``kappa = exp(-i n arg(c) / 2)`` absorbs the phase that the
    involution would otherwise leave on ``p``.

    Raises
    ------
    CompositionError
        If the result fails verification or pointwise agreement.
    """
    P, Q = m.numerator, m.denominator
    k = m.degree
    kappa = cmath.exp(-0.5j * h.n * cmath.phase(m.c))
    E2 = compose_rational(h.E, h.n, P, Q) * kappa
    D2 = compose_rational(h.D, h.n, P, Q) * kappa
    out = GammaInnerRep(E2, D2, h.n * k)
    if check:
        rep = verify_gamma_inner(out)
        if not rep.passed:
            names = ", ".join(c.name for c in rep.failures)
            raise CompositionError(f"composed function fails verification: {names}")
        rng = np.random.default_rng(seed)
        lam = np.sqrt(rng.random(64)) * np.exp(2j * np.pi * rng.random(64)) * 0.999
        s1, p1 = out.evaluate(lam)
        s2, p2 = h.evaluate(m(lam))
        err = max(
            float(np.max(np.abs(s1 - s2) / (1 + np.abs(s2)))),
            float(np.max(np.abs(p1 - p2) / (1 + np.abs(p2)))),
        )
        if err > 1e-9:
            raise CompositionError(f"composition disagrees pointwise by {err:.3e}")
    return out
