"""Two-point Schwarz problems for the pentablock.

A problem asks for an analytic ``x: D -> P-bar`` with ``x(0) = (0, 0, 0)``
and ``x(lam0) = (a0, s0, p0)``.  ``solve`` builds a rational penta-inner
interpolant:

1. an extremal Gamma-inner ``phi`` through ``(s0, p0)`` at
   ``lam* = F lam0/|lam0|`` where ``F`` is the Gamma fraction of the target,
2. precomposition with a degree-two Blaschke ``m`` sending ``lam0`` to
   ``lam*`` when ``F < |lam0|``,
3. the outer factor ``A`` of ``|D|^2 - |E|^2/4`` and an inner factor
   ``a_in`` vanishing at 0 that corrects the value of ``a`` at ``lam0``.

The first coordinate can only reach ``|a0| <= |lam0| |A(lam0)/D(lam0)|``,
which is in general smaller than ``|lam0| sqrt(1 - |s0|^2/4)``; targets in
between raise ``UnreachableTargetError``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .cpoly import BlaschkeProduct, ComplexPoly, compose_rational
from .domains import PentaPoint, in_penta, penta_bound
from .errors import (
    DataError,
    DomainError,
    InconsistencyError,
    InfeasibleError,
    UnreachableTargetError,
)
from .gamma_inner import (
    GammaInnerRep,
    ay_equality_interpolant,
    ay_params,
    compose_with_blaschke,
    gamma_fraction,
)
from .penta_inner import PentaInnerRep, outer_factor, verify_penta_inner
from .report import Report

FEAS_TOL = 1e-9
EQ_TOL = 1e-9
HIT_TOL = 1e-8
ORIGIN_TOL = 1e-12
ZERO_F = 1e-10

S_BOUND = "|s0| < 2"
F_BOUND = "F <= |lambda0|"
A_BOUND = "|a0| <= |lambda0| sqrt(1 - |s0|^2/4)"


# ---------------------------------------------------------------------------
# matrix special case


def triangular_contraction_check(lam1: complex, lam2: complex, a: complex, tol: float = 1e-12) -> bool:
    """Is ``[[lam1, 0], [a, lam2]]`` a contraction?  ``tol`` absorbs rounding at equality."""
    r1, r2 = abs(lam1), abs(lam2)
    if r1 > 1 + tol or r2 > 1 + tol:
        return False
    bound = math.sqrt(max(1 - r1 * r1, 0.0)) * math.sqrt(max(1 - r2 * r2, 0.0))
    return abs(a) <= bound + tol


@dataclass(frozen=True)
class SpecialMap:
    """``x = pi o F`` with ``F(lam) = (lam/lam0) [[lam1, 0], [a0, lam2]]``."""

    lam0: complex
    lam1: complex
    lam2: complex
    a0: complex
    construction_path: str = "matrix_scaling"

    def matrix(self, lam) -> np.ndarray:
        t = complex(lam) / self.lam0
        return t * np.array([[self.lam1, 0], [self.a0, self.lam2]], dtype=complex)

    def evaluate(self, lam):
        t = np.asarray(lam, dtype=complex) / self.lam0
        return t * self.a0, t * (self.lam1 + self.lam2), t * t * (self.lam1 * self.lam2)

    def __call__(self, lam) -> PentaPoint:
        a, s, p = self.evaluate(lam)
        return PentaPoint(complex(a), complex(s), complex(p))


def schwarz_special(lam0: complex, lam1: complex, lam2: complex, a0: complex, tol: float = FEAS_TOL) -> SpecialMap:
    """Solve the matrix two-point problem ``F(0) = 0``, ``F(lam0) = [[lam1, 0], [a0, lam2]]``.

    Raises
    ------
    InfeasibleError
        If ``(lam1, lam2, a0)/lam0`` is not a triangular contraction; then no
        such ``F`` into the closed matrix ball exists.
    """
    lam0 = complex(lam0)
    if not 0 < abs(lam0) < 1:
        raise DomainError("lambda0 must lie in the punctured disc")
    if not triangular_contraction_check(lam1 / lam0, lam2 / lam0, a0 / lam0, tol):
        raise InfeasibleError("scaled target is not a triangular contraction")
    return SpecialMap(lam0, complex(lam1), complex(lam2), complex(a0))


# ---------------------------------------------------------------------------
# problems and feasibility


@dataclass(frozen=True)
class SchwarzProblem:
    lam0: complex
    a0: complex
    s0: complex
    p0: complex

    def __post_init__(self):
        for name in ("lam0", "a0", "s0", "p0"):
            v = complex(getattr(self, name))
            if not cmath.isfinite(v):
                raise DataError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if not 0 < abs(self.lam0) < 1:
            raise DataError("lambda0 must lie in the punctured disc")

    @property
    def target(self) -> PentaPoint:
        return PentaPoint(self.a0, self.s0, self.p0)


@dataclass(frozen=True)
class FeasibilityCertificate:
    F: float
    s_bound_ok: bool
    F_ok: bool
    a_bound_ok: bool
    a_bound: float
    a_bound_beta: float
    verdict: str
    binding: str
    margins: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.verdict == "feasible"


def feasibility(prob: SchwarzProblem, tol: float = FEAS_TOL) -> FeasibilityCertificate:
    """Test ``|s0| < 2``, ``F <= |lam0|`` and ``|a0| <= |lam0| sqrt(1 - |s0|^2/4)``.

    ``a_bound_beta`` is the necessary bound ``|lam0| * |1 - (s0 conj(beta)/2)/(1 + sqrt(1 - |beta|^2))|``,
    reported for diagnosis only.
    """
    r0 = abs(prob.lam0)
    s_abs = abs(prob.s0)
    m_s = 2.0 - s_abs
    s_ok = m_s > tol
    if s_ok:
        F = gamma_fraction(prob.s0, prob.p0)
        m_F = r0 - F
        a_bound = r0 * math.sqrt(1.0 - 0.25 * s_abs**2)
    else:
        F, m_F, a_bound = math.inf, -math.inf, 0.0
    F_ok = m_F >= -tol
    m_a = a_bound - abs(prob.a0)
    a_ok = m_a >= -tol
    beta_bound = r0 * float(penta_bound(prob.s0, prob.p0))
    margins = {S_BOUND: m_s, F_BOUND: m_F, A_BOUND: m_a}
    if not s_ok:
        binding = S_BOUND
    elif not F_ok:
        binding = F_BOUND
    elif not a_ok:
        binding = A_BOUND
    else:
        binding = min(margins, key=margins.get)
    verdict = "feasible" if (s_ok and F_ok and a_ok) else "infeasible"
    return FeasibilityCertificate(float(F), s_ok, F_ok, a_ok, a_bound, beta_bound, verdict, binding, margins)


# ---------------------------------------------------------------------------
# construction pieces


def radius_match_blaschke(lam0: complex, r: float) -> BlaschkeProduct:
    """Inner ``m`` with ``m(0) = 0`` and ``m(lam0) = r lam0/|lam0|``.

    For ``r < |lam0|`` this is ``conj(u) lam B_w(lam)`` with ``u = lam0/|lam0|``,
    ``q = r/|lam0|`` and ``w = u (|lam0| - q)/(1 - q |lam0|)``; for
    ``r = |lam0|`` it is ``lam``.

    Raises
    ------
    DomainError
        If ``r`` is negative or exceeds ``|lam0|`` (impossible by Schwarz's lemma).
    """
    lam0 = complex(lam0)
    r0 = abs(lam0)
    if not 0 < r0 < 1:
        raise DomainError("lambda0 must lie in the punctured disc")
    if r < 0 or r >= 1 or r > r0 + EQ_TOL:
        raise DomainError(f"no inner m with m(0) = 0 has |m(lambda0)| = {r} > |lambda0| = {r0}")
    if r >= r0 - EQ_TOL:
        return BlaschkeProduct(1.0, (0.0,))
    u = lam0 / r0
    q = r / r0
    rho = (r0 - q) / (1.0 - q * r0)
    return BlaschkeProduct(u.conjugate(), (0.0, rho * u))


def _inner_factor(lam0: complex, mu0: complex) -> BlaschkeProduct:
    """``lam * (B_{-mu0} o B_{lam0})`` as a Blaschke product."""
    nu = (lam0 - mu0) / (1.0 - lam0.conjugate() * mu0)
    # B_{-mu0}(B_{lam0}(1)) fixes the unimodular constant
    b = (1.0 - lam0) / (1.0 - lam0.conjugate())
    g1 = (b + mu0) / (1.0 + mu0.conjugate() * b)
    kappa = g1 * (1.0 - nu.conjugate()) / (1.0 - nu)
    return BlaschkeProduct(kappa / abs(kappa), (0.0, nu))


@dataclass
class SchwarzSolution:
    x: PentaInnerRep
    construction_path: str
    aux: dict
    certificate: FeasibilityCertificate
    report: Report


def gamma_interpolant(prob: SchwarzProblem):
    """Gamma-inner ``h`` with ``h(0) = (0, 0)``, ``h(lam0) = (s0, p0)`` and the path tag."""
    lam0 = prob.lam0
    r0 = abs(lam0)
    F = gamma_fraction(prob.s0, prob.p0)
    aux: dict = {"F": F}
    if F <= ZERO_F:
        h = GammaInnerRep(ComplexPoly(), ComplexPoly([1.0, -lam0.conjugate()]), 2)
        return h, "zero_target", aux
    if F > r0 + FEAS_TOL:
        raise InfeasibleError("F exceeds |lambda0|")
    u = lam0 / r0
    reduced = F < r0 - EQ_TOL
    lam_star = F * u if reduced else lam0
    aux["lambda_star"] = lam_star
    h = ay_equality_interpolant(lam_star, prob.s0, prob.p0)
    if abs(abs(prob.p0) - F) <= 1e-8:
        path = "equality_p_eq"
        aux["omega"] = prob.p0 / lam_star / abs(prob.p0 / lam_star)
    else:
        path = "equality_p_lt"
        prm = ay_params(lam_star, prob.s0, prob.p0)
        aux.update(zeta=prm.zeta, p1=prm.p1, c=prm.c)
    if reduced:
        m = radius_match_blaschke(lam0, F)
        h = compose_with_blaschke(h, m)
        aux["m"] = m
        path = "reduced"
    return h, path, aux


def _outer_part(prob: SchwarzProblem, h: GammaInnerRep, aux: dict) -> ComplexPoly:
    """Outer ``A`` for the solver's ``h``.

    The degree-two extremal map has a closed-form factor.  For
    ``h = phi o m`` the factor is ``Q^n A_phi(P/Q)``, which has the
    right modulus on the circle and no zeros in the disc because ``m``
    maps the disc into itself.  Composing the small factor is more
    accurate than factoring the composed spectrum, whose double roots on
    the circle are split by rounding.
    """
    lam_star = aux.get("lambda_star")
    if lam_star is None:
        return outer_factor(h)
    if "c" in aux:
        # the defect of the degree-two extremal map suffers heavy cancellation
        A0 = equality_case_A(lam_star, prob.s0, prob.p0)
        n0 = 2
    else:
        base = ay_equality_interpolant(lam_star, prob.s0, prob.p0, check=False)
        A0, n0 = outer_factor(base), base.n
    m = aux.get("m")
    if m is None or A0.is_zero:
        return A0
    A = compose_rational(A0, n0, m.numerator, m.denominator)
    return A * (abs(A.coeffs[0]) / A.coeffs[0])


def constructive_bound(prob: SchwarzProblem) -> float:
    """Largest ``|a0|`` the solver can reach for this ``(lam0, s0, p0)``."""
    h, _, aux = gamma_interpolant(prob)
    A = _outer_part(prob, h, aux)
    if A.is_zero:
        return 0.0
    return abs(prob.lam0) * abs(A(prob.lam0) / h.D(prob.lam0))


def solve(prob: SchwarzProblem, verify: bool = True) -> SchwarzSolution:
    """Construct a rational penta-inner interpolant.

    Raises
    ------
    InfeasibleError
        If the feasibility test fails; carries the certificate.
    UnreachableTargetError
        If ``|a0|`` exceeds the constructive bound.
    InconsistencyError
        If the constructed function misses its postconditions.
    """
    cert = feasibility(prob)
    if not cert.feasible:
        raise InfeasibleError(f"infeasible: {cert.binding}", cert)
    lam0, a0 = prob.lam0, prob.a0
    h, path, aux = gamma_interpolant(prob)
    A = _outer_part(prob, h, aux)
    if A.is_zero:
        reach = 0.0
        if abs(a0) > EQ_TOL:
            raise UnreachableTargetError(
                f"a vanishes identically here, cannot reach |a0| = {abs(a0):.6g}", 0.0, abs(a0)
            )
        a_in = BlaschkeProduct(1.0, (0.0,))
    else:
        ratio = A(lam0) / h.D(lam0)
        reach = abs(lam0) * abs(ratio)
        mu0 = a0 / (lam0 * ratio)
        aux["mu0"] = mu0
        if abs(abs(a0) - reach) <= EQ_TOL:
            gamma = mu0 / abs(mu0)
            aux["gamma"] = gamma
            a_in = BlaschkeProduct(gamma, (0.0,))
        elif abs(mu0) < 1.0:
            a_in = _inner_factor(lam0, mu0)
        else:
            raise UnreachableTargetError(
                f"|a0| = {abs(a0):.6g} exceeds the constructive bound {reach:.6g}"
                f" (stated bound {cert.a_bound:.6g})",
                reach,
                abs(a0),
            )
    aux["reachable"] = reach
    x = PentaInnerRep(a_in, A, h.E, h.D, h.n)
    report = Report("schwarz solution")
    origin = x(0.0)
    report.require("x(0) = (0, 0, 0)", -max(abs(v) for v in origin), ORIGIN_TOL)
    hit = x(lam0)
    report.require(
        "x(lambda0) = target", -max(abs(u - v) for u, v in zip(hit, prob.target)), HIT_TOL
    )
    if verify:
        report.extend(verify_penta_inner(x))
    if not report.passed:
        names = ", ".join(c.name for c in report.failures)
        raise InconsistencyError(f"constructed interpolant fails: {names}")
    return SchwarzSolution(x, path, aux, cert, report)


# ---------------------------------------------------------------------------
# closed form of A in the equality case


def _equality_coefficients(lam0, s0, p0):
    prm = ay_params(lam0, s0, p0)
    q = prm.p1.conjugate() * prm.zeta**2
    d0 = 1.0 - q * lam0
    d1 = q - complex(lam0).conjugate()
    return prm, d0, d1


def equality_case_A(lam0: complex, s0: complex, p0: complex) -> ComplexPoly:
    """Outer ``A`` for the degree-two extremal interpolant, in closed form.

    With ``D = conj(zeta)(d0 + d1 lam)`` one has ``c = 2(|d0| - |d1|)`` and
    ``|D|^2 - c^2/4 = |d0||d1| |1 + b1 lam|^2`` on the circle, where
    ``b1 = conj(d0) d1 / (|d0||d1|)`` is unimodular.
    """
    _, d0, d1 = _equality_coefficients(complex(lam0), complex(s0), complex(p0))
    k = abs(d0) * abs(d1)
    if k == 0:
        # royal target: |D| = c/2 on the circle and a vanishes
        return ComplexPoly()
    b1 = d0.conjugate() * d1 / k
    return ComplexPoly([1.0, b1]) * math.sqrt(k)


def closed_form_A_check(
    lam0: complex, s0: complex, p0: complex, form: str = "stated", tol: float = 1e-7
) -> Report:
    """Compare the factored ``A`` of the extremal interpolant with a closed form.

    ``form="stated"`` uses ``|b0|^2 = |1 - conj(p1) zeta^2 lam0|^2`` and
    ``|b1|^2 = 2|lam0 zeta^2 - p1| / |1 - conj(p1) zeta^2 lam0| - 1`` for
    ``A = b0 (1 + b1 lam)``, compared through moduli.  ``form="corrected"``
    uses ``equality_case_A``, compared coefficientwise.
    """
    lam0, s0, p0 = complex(lam0), complex(s0), complex(p0)
    if s0 == 0 or abs(p0) >= abs(lam0) - EQ_TOL:
        raise DomainError("requires s0 != 0 and |p0| < |lambda0|")
    h = ay_equality_interpolant(lam0, s0, p0)
    A = outer_factor(h)
    coeffs = A.coeffs if not A.is_zero else np.zeros(1, complex)
    a0 = abs(coeffs[0])
    a1 = abs(coeffs[1]) if coeffs.size > 1 else 0.0
    rep = Report(f"closed-form A ({form})")
    if form == "stated":
        prm, d0, d1 = _equality_coefficients(lam0, s0, p0)
        b0sq = abs(d0) ** 2
        b1sq = 2.0 * abs(lam0 * prm.zeta**2 - prm.p1) / abs(d0) - 1.0
        rep.require("|b1|^2 >= 0", b1sq, 0.0)
        rep.require("|A(0)| = |b0|", -abs(a0 - math.sqrt(b0sq)), tol)
        b1 = math.sqrt(b1sq) if b1sq >= 0 else math.nan
        rep.require("|A'(0)| = |b0 b1|", -abs(a1 - math.sqrt(b0sq) * b1), tol)
    elif form == "corrected":
        Acf = equality_case_A(lam0, s0, p0)
        n = max(len(A), len(Acf), 1)
        x = np.zeros(n, complex)
        y = np.zeros(n, complex)
        x[: len(A)] = A.coeffs
        y[: len(Acf)] = Acf.coeffs
        # both are normalized with a positive constant term
        rep.require("A matches closed form", -float(np.abs(x - y).max()), tol)
    else:
        raise DataError(f"unknown form {form!r}")
    return rep


def in_target_domain(prob: SchwarzProblem) -> bool:
    return in_penta(prob.target, "closed").inside
