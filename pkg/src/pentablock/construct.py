"""Synthesis of rational penta-inner functions from zeros and royal nodes.

Given zeros ``alphas`` (in the disc) and ``etas`` (on the circle) of ``s``,
zeros ``betas`` of ``a`` and royal nodes ``sigmas``, the recipe forms

* ``R = t_plus prod (lam - sigma)(1 - conj(sigma) lam)``,
* ``E = t prod (lam - alpha)(1 - conj(alpha) lam) prod i exp(-i theta/2)(lam - eta)``,
* ``D`` outer with ``4|D|^2 = lam^-n R + |E|^2`` on the circle,
* ``A`` outer with ``4|A|^2 = lam^-n R``,

and returns ``(c prod B_beta A/D, E/D, D~n/D)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .cpoly import BlaschkeProduct, ComplexPoly, TrigPoly, roots
from .errors import DataError, PentaError, NumericError, RoundtripError
from .gamma_inner import royal_nodes, royal_polynomial, circle_samples
from .penta_inner import PentaInnerRep, degree, verify_penta_inner
from .report import Report
from .specfact import fejer_riesz

MATCH_TOL = 1e-6
ROYAL_TOL = 1e-6


@dataclass(frozen=True)
class ConstructionData:
    """Input of the construction.

    The counts must satisfy ``2 len(alphas) + len(etas) = len(sigmas)``.
    """

    alphas: tuple = ()
    etas: tuple = ()
    betas: tuple = ()
    sigmas: tuple = ()
    t_plus: float = 4.0
    t: float = 1.0
    c: complex = 1.0

    def __post_init__(self):
        for name in ("alphas", "etas", "betas", "sigmas"):
            vals = tuple(complex(v) for v in getattr(self, name))
            if not all(np.isfinite(v) for v in vals):
                raise DataError(f"{name} must be finite")
            object.__setattr__(self, name, vals)
        object.__setattr__(self, "t_plus", float(self.t_plus))
        object.__setattr__(self, "t", float(self.t))
        object.__setattr__(self, "c", complex(self.c))
        self.validate()

    @property
    def n(self) -> int:
        return len(self.sigmas)

    @property
    def m(self) -> int:
        return len(self.betas)

    def validate(self) -> None:
        if 2 * len(self.alphas) + len(self.etas) != len(self.sigmas):
            raise DataError("need 2 #alphas + #etas = #sigmas")
        if not self.t_plus > 0 or not math.isfinite(self.t_plus):
            raise DataError("t_plus must be positive")
        if self.t == 0 or not math.isfinite(self.t):
            raise DataError("t must be a non-zero real")
        if abs(abs(self.c) - 1.0) > 1e-9:
            raise DataError("c must be unimodular")
        if any(abs(a) >= 1 for a in self.alphas):
            raise DataError("alphas must lie in the open disc")
        if any(abs(abs(e) - 1.0) > 1e-9 for e in self.etas):
            raise DataError("etas must lie on the circle")
        if any(abs(b) >= 1 for b in self.betas):
            raise DataError("betas must lie in the open disc")
        if any(abs(s) > 1 + 1e-9 for s in self.sigmas):
            raise DataError("sigmas must lie in the closed disc")
        for s in self.sigmas:
            for e in self.etas:
                if abs(s - e) <= 1e-9:
                    raise DataError("royal nodes must differ from the circle zeros of s")


@dataclass
class ConstructionResult:
    x: PentaInnerRep
    R: ComplexPoly
    report: Report
    data: ConstructionData = field(repr=False, default=None)


def _snap(z: complex) -> complex:
    return z / abs(z) if abs(abs(z) - 1.0) <= 1e-9 else z


def royal_target(data: ConstructionData) -> ComplexPoly:
    R = ComplexPoly([data.t_plus])
    for s in data.sigmas:
        s = _snap(s)
        R = R * ComplexPoly([-s, 1.0]) * ComplexPoly([1.0, -np.conj(s)])
    return R


def s_numerator(data: ConstructionData) -> ComplexPoly:
    E = ComplexPoly([data.t])
    for a in data.alphas:
        E = E * ComplexPoly([-a, 1.0]) * ComplexPoly([1.0, -np.conj(a)])
    for e in data.etas:
        e = e / abs(e)
        theta = cmath.phase(e) % (2 * math.pi)
        E = E * ComplexPoly([-e, 1.0]) * (1j * cmath.exp(-0.5j * theta))
    return E


def build(data: ConstructionData, verify: bool = True) -> ConstructionResult:
    """Run the construction.

    Raises
    ------
    DataError
        If the data are inadmissible.
    NumericError
        If a spectral factorization fails.
    """
    data.validate()
    n = data.n
    R = royal_target(data)
    E = s_numerator(data)
    g = TrigPoly.from_laurent(R, n)
    try:
        D = fejer_riesz((g + TrigPoly.modsq(E, n)) * 0.25).D
        A = fejer_riesz(g * 0.25).D
    except PentaError as exc:
        raise NumericError(f"spectral factorization failed: {exc}") from exc
    a_in = BlaschkeProduct(data.c, data.betas)
    x = PentaInnerRep(a_in, A, E, D, n)
    rep = Report("construction")
    if verify:
        rep.extend(verify_penta_inner(x))
        h = x.gamma
        Rh = royal_polynomial(h)
        rep.require("4 D D~n - E^2 = R", -_scaled_distance(Rh, R), ROYAL_TOL)
        lam = circle_samples(512)
        rep.require(
            "|E| <= 2|D| on the circle",
            float(np.min(2 * np.abs(D(lam)) - np.abs(E(lam))) / max(D.max_coeff(), 1e-300)),
            1e-8,
        )
        dg = degree(x)
        rep.require("deg a <= m + n", data.m + n - dg.deg_a, 0)
        rep.require("deg p <= n", n - dg.deg_p, 0)
    return ConstructionResult(x, R, rep, data)


def _scaled_distance(P: ComplexPoly, Q: ComplexPoly) -> float:
    """Distance of ``P`` from the positive ray through ``Q``, relative to ``Q``."""
    qn = np.linalg.norm(Q.coeffs)
    if qn == 0:
        return P.max_coeff()
    n = max(len(P), len(Q))
    p = np.zeros(n, complex)
    q = np.zeros(n, complex)
    p[: len(P)] = P.coeffs
    q[: len(Q)] = Q.coeffs
    k = max(np.real(np.vdot(q, p)) / qn**2, 0.0)
    return float(np.abs(p - k * q).max() / np.abs(q).max())


def multiset_distance(a, b) -> float:
    """Largest distance under the optimal matching; ``inf`` on count mismatch."""
    a = np.asarray(list(a), dtype=complex)
    b = np.asarray(list(b), dtype=complex)
    if a.size != b.size:
        return math.inf
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    i, j = linear_sum_assignment(cost)
    # minimize the sum, then report the worst matched pair
    return float(cost[i, j].max())


def recovered_s_zeros(x: PentaInnerRep) -> list[complex]:
    if x.E.is_zero:
        return []
    return [z for z in roots(x.E) if abs(z) <= 1.0 + 1e-6]


def recovered_a_zeros(x: PentaInnerRep) -> list[complex]:
    out = list(x.a_in.zeros)
    if not x.zero_a:
        out += [z for z in roots(x.A) if abs(z) < 1.0 - 1e-6]
    return out


def recovered_nodes(x: PentaInnerRep) -> list[complex]:
    out = []
    for z, m in royal_nodes(x.gamma):
        out.extend([z] * m)
    return out


def roundtrip_check(result: ConstructionResult, tol: float = MATCH_TOL, strict: bool = False) -> Report:
    """Re-extract zeros and royal nodes and compare with the input data.

    Raises
    ------
    RoundtripError
        When ``strict`` and a comparison fails.
    """
    data = result.data
    x = result.x
    rep = Report("roundtrip")
    try:
        items = [
            ("zeros of s", recovered_s_zeros(x), list(data.alphas) + [e / abs(e) for e in data.etas]),
            ("zeros of a", recovered_a_zeros(x), list(data.betas)),
            ("royal nodes", recovered_nodes(x), [_snap(s) for s in data.sigmas]),
        ]
    except PentaError as exc:
        rep.add("extraction", False, None, str(exc))
        items = []
    for name, got, want in items:
        d = multiset_distance(got, want)
        rep.add(name, d <= tol, -d, f"recovered {len(got)}, expected {len(want)}")
    if strict and not rep.passed:
        raise RoundtripError("; ".join(c.name for c in rep.failures))
    return rep
