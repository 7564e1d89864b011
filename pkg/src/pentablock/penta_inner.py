"""Rational penta-inner functions ``x = (a_in A/D, E/D, D~n/D)``.

A representation whose ``A`` is the zero polynomial stands for a function
with ``a`` identically zero (for instance ``(0, 2B, B^2)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .cpoly import (
    BlaschkeProduct,
    ComplexPoly,
    TrigPoly,
    is_outer,
    rational_degree,
    roots,
)
from .domains import PentaPoint, bpenta_margins, k1_margins, penta_margins
from .errors import AssemblyError, DomainError, PentaError
from .gamma_inner import (
    BOUNDARY_SAMPLES,
    GRID,
    VERIFY_TOL,
    GammaInnerRep,
    circle_samples,
    compose_with_blaschke,
    disc_grid,
    gamma_degree,
    verify_gamma_inner,
)
from .report import Report
from .specfact import fejer_riesz

ZERO_A_TOL = 1e-10


class DegreePair(NamedTuple):
    deg_a: int
    deg_p: int


@dataclass(frozen=True)
class PentaInnerRep:
    """Structured penta-inner function.

    Attributes
    ----------
    a_in : BlaschkeProduct
        Inner part of ``a`` (its unimodular constant included).
    A : ComplexPoly
        Outer polynomial with ``|A|^2 = |D|^2 - |E|^2/4`` on the circle;
        the zero polynomial marks ``a = 0``.
    E, D, n :
        Gamma-inner data for ``(s, p)``.
    """

    a_in: BlaschkeProduct
    A: ComplexPoly
    E: ComplexPoly
    D: ComplexPoly
    n: int

    def __post_init__(self):
        # validates E, D, n
        GammaInnerRep(self.E, self.D, self.n)
        if not isinstance(self.A, ComplexPoly):
            object.__setattr__(self, "A", ComplexPoly(self.A))

    @property
    def gamma(self) -> GammaInnerRep:
        return GammaInnerRep(self.E, self.D, self.n)

    @property
    def zero_a(self) -> bool:
        return self.A.is_zero

    def evaluate(self, lam):
        """``(a, s, p)`` at ``lam`` (scalar or array)."""
        lam = np.asarray(lam, dtype=complex)
        s, p = self.gamma.evaluate(lam)
        if self.zero_a:
            a = np.zeros_like(s)
        else:
            a = self.a_in(lam) * self.A(lam) / self.D(lam)
        return a, s, p

    def __call__(self, lam) -> PentaPoint:
        a, s, p = self.evaluate(lam)
        return PentaPoint(complex(a), complex(s), complex(p))

    def with_inner(self, a_in: BlaschkeProduct) -> "PentaInnerRep":
        return PentaInnerRep(a_in, self.A, self.E, self.D, self.n)


def penta_eval(x: PentaInnerRep, lam: complex) -> PentaPoint:
    """``x(lam)`` for ``|lam| <= 1``."""
    if abs(lam) > 1.0 + 1e-12:
        raise DomainError("evaluation point must lie in the closed disc")
    return x(lam)


def modulus_defect(h: GammaInnerRep) -> TrigPoly:
    """``|D|^2 - |E|^2/4`` on the circle."""
    return TrigPoly.modsq(h.D, h.n) - TrigPoly.modsq(h.E, h.n) * 0.25


def outer_factor(h: GammaInnerRep) -> ComplexPoly:
    """Outer ``A`` with ``|A|^2 = |D|^2 - |E|^2/4``; zero for royal ``h``."""
    f = modulus_defect(h)
    ref = max(np.abs(TrigPoly.modsq(h.D, h.n).centred).max(), 1e-300)
    if np.abs(f.centred).max() <= ZERO_A_TOL * ref:
        return ComplexPoly()
    return fejer_riesz(f).D


def assemble(a_in: BlaschkeProduct, h: GammaInnerRep, verify: bool = True) -> PentaInnerRep:
    """Build ``(a_in A/D, E/D, D~n/D)`` from Gamma-inner data.

    Raises
    ------
    AssemblyError
        If the spectral factorization fails or the result does not verify.
    """
    try:
        A = outer_factor(h)
    except PentaError as exc:
        raise AssemblyError(f"Fejer-Riesz factorization failed: {exc}") from exc
    x = PentaInnerRep(a_in, A, h.E, h.D, h.n)
    if verify:
        rep = verify_penta_inner(x)
        if not rep.passed:
            names = ", ".join(c.name for c in rep.failures)
            raise AssemblyError(f"assembled function fails verification: {names}")
    return x


def degree(x: PentaInnerRep) -> DegreePair:
    """``(deg a, deg p)`` after cancelling common roots.

    ``deg a`` is the rational degree of ``a_in A / D``; it is 0 when ``a``
    vanishes identically.
    """
    deg_p = gamma_degree(x.gamma)
    if x.zero_a:
        return DegreePair(0, deg_p)
    num = list(x.a_in.zeros) + roots(x.A)
    den = [1.0 / np.conj(z) for z in x.a_in.zeros if z != 0] + roots(x.D)
    return DegreePair(rational_degree(num, den), deg_p)


SampledTriple = Callable[[np.ndarray], tuple]


def _sampler(x):
    if isinstance(x, PentaInnerRep):
        return x.evaluate
    return x


def verify_penta_inner(
    x,
    boundary_samples: int = BOUNDARY_SAMPLES,
    grid: int = GRID,
    tol: float = VERIFY_TOL,
) -> Report:
    """Verify a penta-inner function.

    Parameters
    ----------
    x : PentaInnerRep or callable
        A structured representation, or any callable mapping an array of
        disc points to arrays ``(a, s, p)``.

    Returns
    -------
    Report
        Boundary samples must lie in b P-bar, grid samples in P-bar; for a
        representation the Gamma-inner invariants, outerness of ``A`` and
        the modulus identity are checked too.
    """
    rep = Report("penta-inner")
    if isinstance(x, PentaInnerRep):
        rep.extend(verify_gamma_inner(x.gamma, boundary_samples, grid, tol))
        lam = circle_samples(boundary_samples)
        D2 = np.abs(x.D(lam)) ** 2
        E2 = np.abs(x.E(lam)) ** 2
        if x.zero_a:
            # a = 0 forces |s| = 2 on the circle
            rep.require("|E| = 2|D| on the circle", -float(np.max(np.abs(E2 / D2 - 4.0))), tol)
        else:
            rep.add("A is outer", is_outer(x.A))
            A2 = np.abs(x.A(lam)) ** 2
            rep.require(
                "|A|^2 = |D|^2 - |E|^2/4 on the circle",
                -float(np.max(np.abs(A2 - D2 + 0.25 * E2) / D2)),
                tol,
            )
    f = _sampler(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        a, s, p = f(circle_samples(boundary_samples))
        m, _, _ = bpenta_margins(a, s, p)
        rep.require("boundary values in b P-bar", float(np.min(m)), tol)
        a, s, p = f(disc_grid(grid))
        m, _, _ = penta_margins(a, s, p, "closed")
        rep.require("interior values in P-bar", float(np.min(m)), tol)
    return rep


def boundary_trace(x, samples: int):
    """Rows ``(theta, a, s, p, b P-bar margin)`` at equispaced circle points."""
    f = _sampler(x)
    theta = 2 * np.pi * np.arange(samples) / samples
    a, s, p = f(np.exp(1j * theta))
    m, _, _ = bpenta_margins(a, s, p)
    return theta, a, s, p, m


def lift_gamma(h: GammaInnerRep) -> SampledTriple:
    """The triple ``(0, s, p)`` as a sampled function."""

    def f(lam):
        s, p = h.evaluate(lam)
        return np.zeros_like(s), s, p

    return f


def verify_k1(x, samples: int = BOUNDARY_SAMPLES, tol: float = VERIFY_TOL) -> Report:
    """Check that boundary values lie in ``K1``."""
    rep = Report("K1")
    with np.errstate(divide="ignore", invalid="ignore"):
        a, s, p = _sampler(x)(circle_samples(samples))
        m, _, _ = k1_margins(a, s, p)
    rep.require("boundary values in K1", float(np.min(m)), tol)
    return rep


# ---------------------------------------------------------------------------
# example catalog


def power_a_example(m: int) -> PentaInnerRep:
    """``(lam^m, 0, lam)``."""
    return PentaInnerRep(
        BlaschkeProduct(1.0, (0.0,) * m), ComplexPoly([1.0]), ComplexPoly(), ComplexPoly([1.0]), 1
    )


def power_p_example(n: int) -> PentaInnerRep:
    """``(lam, 0, lam^n)``."""
    return PentaInnerRep(
        BlaschkeProduct(1.0, (0.0,)), ComplexPoly([1.0]), ComplexPoly(), ComplexPoly([1.0]), n
    )


def royal_example(B: BlaschkeProduct) -> PentaInnerRep:
    """``(0, 2B, B^2)``."""
    h = compose_with_blaschke(GammaInnerRep(ComplexPoly([0.0, 2.0]), ComplexPoly([1.0]), 2), B)
    return PentaInnerRep(BlaschkeProduct(), ComplexPoly(), h.E, h.D, h.n)


def diagonal_triple(phi, psi) -> SampledTriple:
    """``pi(diag(phi, psi)) = (0, phi + psi, phi psi)``; inner only if ``phi = psi``."""

    def f(lam):
        u, v = phi(lam), psi(lam)
        return np.zeros_like(u), u + v, u * v

    return f


def rotated_diagonal_triple(phi, psi) -> SampledTriple:
    """``pi(U diag(phi, psi))`` for the unitary ``U = [[1, 1], [i, -i]]/sqrt(2)``;
    inner only if ``phi = -i psi``."""
    r = np.sqrt(2.0)

    def f(lam):
        u, v = phi(lam), psi(lam)
        return 1j * u / r, (u - 1j * v) / r, -1j * u * v

    return f


def conjugated_diagonal_triple(phi, psi, v) -> SampledTriple:
    """``pi(V* diag(phi, psi) V)`` with ``V = [[1, v], [-1, v]]/sqrt(2)`` for a
    constant ``v``; inner when ``|v| = 1`` or ``phi = psi``."""
    v = complex(v)

    def f(lam):
        u, w = phi(lam), psi(lam)
        a = 0.5 * (u - w) * np.conj(v)
        s = u + w
        p = 0.25 * (s**2 - (u - w) ** 2 * abs(v) ** 2)
        return a, s, p

    return f
