"""Membership oracles and maps for the symmetrized bidisc and the pentablock.

Points are plain complex triples ``(a, s, p)``; ``s`` and ``p`` are the
sum and product of the eigenvalues of a 2x2 matrix and ``a`` is its
lower-left entry.  Vectorised margin functions (``*_margins``) accept
numpy arrays and are used by the verifiers; the scalar functions wrap
them in a ``MembershipVerdict``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .errors import DataError, DomainError, SingularError

MEMBER_TOL = 1e-9
UNIT_P_TOL = 1e-9
DISC_TOL = 1e-14
SINGULAR_TOL = 1e-14


class GammaPoint(NamedTuple):
    s: complex
    p: complex


class PentaPoint(NamedTuple):
    a: complex
    s: complex
    p: complex

    @property
    def gamma(self) -> GammaPoint:
        return GammaPoint(self.s, self.p)


@dataclass(frozen=True)
class Matrix2:
    a11: complex
    a12: complex
    a21: complex
    a22: complex

    @classmethod
    def from_array(cls, m) -> "Matrix2":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2) or not np.all(np.isfinite(m)):
            raise DataError("expected a finite 2x2 matrix")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def to_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)


@dataclass(frozen=True)
class MembershipVerdict:
    """Result of a membership query.

    ``margin`` is the slack of the binding (smallest) condition; it is
    non-negative when every condition holds exactly.
    """

    inside: bool
    margin: float
    binding: str

    def __bool__(self):
        return self.inside


def pi_map(A) -> PentaPoint:
    """``(a21, trace, det)`` of a 2x2 matrix."""
    if not isinstance(A, Matrix2):
        A = Matrix2.from_array(A)
    return PentaPoint(
        complex(A.a21), complex(A.a11 + A.a22), complex(A.a11 * A.a22 - A.a12 * A.a21)
    )


# ---------------------------------------------------------------------------
# vectorised margins


GAMMA_CLOSED = ("|s| <= 2", "|s - conj(s)p| <= 1 - |p|^2")
GAMMA_OPEN = ("|s - conj(s)p| < 1 - |p|^2",)
GAMMA_BOUNDARY = ("|s| <= 2", "|p| = 1", "s = conj(s)p")
PENTA_A = "|a| <= |1 - (s conj(beta)/2)/(1 + sqrt(1 - |beta|^2))|"
PSI_A = "sup |Psi_z(a, s, p)| <= 1"
BPENTA = GAMMA_BOUNDARY + ("|a| = sqrt(1 - |s|^2/4)",)
K1 = GAMMA_BOUNDARY + ("|a| <= sqrt(1 - |s|^2/4)",)


def _stack_min(slacks, names):
    st = np.stack(np.broadcast_arrays(*slacks))
    idx = np.argmin(st, axis=0)
    return np.min(st, axis=0), idx, names


def gamma_margins(s, p, mode: str = "closed"):
    """Slacks of the defining inequalities of G, Gamma or b Gamma.

    Returns ``(margin, binding_index, names)``.
    """
    s = np.asarray(s, dtype=complex)
    p = np.asarray(p, dtype=complex)
    core = (1.0 - np.abs(p) ** 2) - np.abs(s - np.conj(s) * p)
    if mode == "open":
        return _stack_min([core], GAMMA_OPEN)
    if mode == "closed":
        return _stack_min([2.0 - np.abs(s), core], GAMMA_CLOSED)
    if mode == "boundary":
        return _stack_min(
            [2.0 - np.abs(s), -np.abs(np.abs(p) - 1.0), -np.abs(s - np.conj(s) * p)],
            GAMMA_BOUNDARY,
        )
    raise DataError(f"unknown mode {mode!r}")


def beta_array(s, p):
    """The parameter beta, without the membership check."""
    s = np.asarray(s, dtype=complex)
    p = np.asarray(p, dtype=complex)
    ap = np.abs(p)
    unit = ap >= 1.0 - UNIT_P_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        b = (s - np.conj(s) * p) / (1.0 - ap**2)
    return np.where(unit, 0.5 * s, b)


def penta_bound(s, p):
    """Largest ``|a|`` with ``(a, s, p)`` in the closed pentablock."""
    s = np.asarray(s, dtype=complex)
    b = beta_array(s, p)
    root = np.sqrt(np.clip(1.0 - np.abs(b) ** 2, 0.0, None))
    return np.abs(1.0 - 0.5 * s * np.conj(b) / (1.0 + root))


def penta_margins(a, s, p, mode: str = "closed"):
    """Beta-criterion slacks for the pentablock (open or closed)."""
    a = np.asarray(a, dtype=complex)
    g, gi, gnames = gamma_margins(s, p, "open" if mode == "open" else "closed")
    am = penta_bound(s, p) - np.abs(a)
    names = gnames + (PENTA_A,)
    # report the Gamma condition whenever it fails so the bound is not misread
    use_a = am < g
    margin = np.where(use_a, am, g)
    idx = np.where(use_a, len(gnames), gi)
    return margin, idx, names


def bpenta_margins(a, s, p):
    """Slacks for the distinguished boundary of the pentablock.

    The modulus condition is tested in the squared form
    ``| |a|^2 + |s|^2/4 - 1 |`` to avoid square-root amplification.
    """
    a = np.asarray(a, dtype=complex)
    s = np.asarray(s, dtype=complex)
    g, gi, gnames = gamma_margins(s, p, "boundary")
    am = -np.abs(np.abs(a) ** 2 + 0.25 * np.abs(s) ** 2 - 1.0)
    use_a = am < g
    return np.where(use_a, am, g), np.where(use_a, len(gnames), gi), BPENTA


def k1_margins(a, s, p):
    """Slacks for ``K1``: (s, p) in b Gamma and ``|a|^2 <= 1 - |s|^2/4``."""
    a = np.asarray(a, dtype=complex)
    s = np.asarray(s, dtype=complex)
    g, gi, gnames = gamma_margins(s, p, "boundary")
    am = (1.0 - 0.25 * np.abs(s) ** 2) - np.abs(a) ** 2
    use_a = am < g
    return np.where(use_a, am, g), np.where(use_a, len(gnames), gi), K1


def _verdict(result, tol, strict=False) -> MembershipVerdict:
    margin, idx, names = result
    m = float(margin)
    inside = (m > tol) if strict else (m >= -tol)
    return MembershipVerdict(bool(inside), m, names[int(idx)])


# ---------------------------------------------------------------------------
# scalar oracles


def beta(s: complex, p: complex, tol: float = MEMBER_TOL) -> complex:
    """``(s - conj(s)p)/(1 - |p|^2)``, or ``s/2`` when ``|p| = 1``.

    Raises
    ------
    DomainError
        If ``(s, p)`` is not in the closed symmetrized bidisc.
    """
    v = in_gamma(s, p, "closed", tol)
    if not v.inside:
        raise DomainError(f"(s, p) = ({s}, {p}) is outside Gamma: {v.binding}")
    return complex(beta_array(s, p))


def psi(z: complex, x) -> complex:
    """``a (1 - |z|^2) / (1 - s z + p z^2)`` for ``|z| < 1``."""
    a, s, p = x
    if abs(z) >= 1.0:
        raise DomainError("psi requires |z| < 1")
    den = 1.0 - s * z + p * z * z
    if abs(den) <= SINGULAR_TOL:
        raise SingularError("1 - s z + p z^2 vanishes")
    return complex(a * (1.0 - abs(z) ** 2) / den)


def in_gamma(s, p, mode: str = "closed", tol: float = MEMBER_TOL) -> MembershipVerdict:
    """Membership of ``(s, p)`` in G (``open``), Gamma (``closed``) or
    b Gamma (``boundary``).  Open membership is strict: ``margin > tol``.
    """
    return _verdict(gamma_margins(s, p, mode), tol, strict=(mode == "open"))


def in_penta(x, mode: str = "closed", criterion: str = "beta", tol: float = MEMBER_TOL) -> MembershipVerdict:
    """Membership in the pentablock (``open``) or its closure (``closed``).

    ``criterion="beta"`` uses the closed-form bound on ``|a|``;
    ``criterion="sup_psi"`` maximizes ``|Psi_z|`` numerically over the disc
    and is meant as a cross-check.
    """
    a, s, p = x
    strict = mode == "open"
    if mode not in ("open", "closed"):
        raise DataError(f"unknown mode {mode!r}")
    if criterion == "beta":
        return _verdict(penta_margins(a, s, p, mode), tol, strict)
    if criterion != "sup_psi":
        raise DataError(f"unknown criterion {criterion!r}")
    g = gamma_margins(s, p, "open" if strict else "closed")
    gv = _verdict(g, tol, strict)
    if not gv.inside:
        return gv
    sup = sup_psi(x)
    m = 1.0 - sup
    inside = m > tol if strict else m >= -tol
    if m < gv.margin:
        return MembershipVerdict(bool(inside), float(m), PSI_A)
    return MembershipVerdict(bool(inside), gv.margin, gv.binding)


def _psi_modulus(r, t, s, p):
    z = r * np.exp(1j * t)
    return (1.0 - r * r) / np.abs(1.0 - s * z + p * z * z)


def _golden_max(f, lo, hi, steps):
    g = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - g * (hi - lo)
    x2 = lo + g * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(steps):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + g * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - g * (hi - lo)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def sup_psi(x, grid: int = 64, steps: int = 20, passes: int = 1) -> float:
    """Numerical ``sup_{|z|<1} |Psi_z(x)|`` (a lower bound).

    A ``grid x grid`` polar grid, denser towards the circle, locates the
    maximum of ``(1 - |z|^2)/|1 - s z + p z^2|``; alternating golden-section
    searches in radius and angle and a Nelder-Mead polish refine it.
    """
    a, s, p = (complex(v) for v in x)
    if a == 0:
        return 0.0
    r = np.sin(0.5 * np.pi * (np.arange(grid) + 0.5) / grid)
    t = 2 * np.pi * np.arange(grid) / grid
    R, T = np.meshgrid(r, t, indexing="ij")
    with np.errstate(divide="ignore"):
        vals = _psi_modulus(R, T, s, p)
    if not np.all(np.isfinite(vals)):
        return math.inf
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best = float(vals[i, j])
    rr, tt = float(r[i]), float(t[j])
    r_lo = float(r[i - 1]) if i > 0 else 0.0
    r_hi = float(r[i + 1]) if i + 1 < grid else 1.0 - 1e-15
    dt = 2 * np.pi / grid
    for _ in range(passes):
        rr, v = _golden_max(lambda u: float(_psi_modulus(u, tt, s, p)), r_lo, r_hi, steps)
        best = max(best, v)
        tt, v = _golden_max(lambda u: float(_psi_modulus(rr, u, s, p)), tt - dt, tt + dt, steps)
        best = max(best, v)
    # the maximum sits on a curved ridge where coordinate search crawls;
    # finish with a simplex search in (artanh r, theta)
    res = minimize(
        lambda v: -float(_psi_modulus(math.tanh(abs(v[0])), v[1], s, p)),
        [math.atanh(min(rr, 1 - 1e-12)), tt],
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 2000},
    )
    best = max(best, -float(res.fun))
    return abs(a) * best


def in_bpenta(x, tol: float = MEMBER_TOL) -> MembershipVerdict:
    """Membership in the distinguished boundary of the pentablock."""
    return _verdict(bpenta_margins(*x), tol)


def in_k1(x, tol: float = MEMBER_TOL) -> MembershipVerdict:
    """Membership in ``K1 = {(s, p) in b Gamma, |a| <= sqrt(1 - |s|^2/4)}``."""
    return _verdict(k1_margins(*x), tol)


def on_royal(x, tol: float = MEMBER_TOL) -> MembershipVerdict:
    """Royal variety: ``s^2 = 4p``, plus ``a = 0`` for pentablock points."""
    if len(x) == 3:
        a, s, p = x
        slacks = [-abs(a), -abs(s * s - 4 * p)]
        names = ("a = 0", "s^2 = 4p")
    else:
        s, p = x
        slacks = [-abs(s * s - 4 * p)]
        names = ("s^2 = 4p",)
    k = int(np.argmin(slacks))
    return MembershipVerdict(slacks[k] >= -tol, float(slacks[k]), names[k])


def phi_omega(omega: complex, s: complex, p: complex) -> complex:
    """``(2 omega p - s)/(2 - omega s)`` for unimodular ``omega``."""
    if abs(abs(omega) - 1.0) > 1e-9:
        raise DomainError("omega must be unimodular")
    den = 2.0 - omega * s
    if abs(den) <= SINGULAR_TOL:
        raise SingularError("omega s = 2")
    return complex((2.0 * omega * p - s) / den)


def royal_geodesic(lam: complex) -> PentaPoint:
    """``(0, -2 lam, lam^2)`` for ``|lam| < 1``."""
    if abs(lam) >= 1.0:
        raise DomainError("royal geodesic requires |lambda| < 1")
    lam = complex(lam)
    return PentaPoint(0j, -2.0 * lam, lam * lam)


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class Automorphism:
    """The map ``f_{w v}`` with ``v = eta * B_alpha``."""

    w: complex = 1.0
    eta: complex = 1.0
    alpha: complex = 0.0

    def __post_init__(self):
        for name in ("w", "eta"):
            v = complex(getattr(self, name))
            if abs(abs(v) - 1.0) > 1e-9:
                raise DomainError(f"{name} must be unimodular")
            object.__setattr__(self, name, v)
        al = complex(self.alpha)
        if not abs(al) < 1.0:
            raise DomainError("alpha must lie in the open disc")
        object.__setattr__(self, "alpha", al)

    def v(self, z):
        z = np.asarray(z, dtype=complex)
        return self.eta * (z - self.alpha) / (1.0 - np.conj(self.alpha) * z)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other``."""
        # v1(v2(z)) = eta B_alpha(z); alpha is the zero of v1 o v2
        a1 = self.alpha
        a2, e2 = other.alpha, other.eta
        t = a1 * np.conj(e2)
        alpha = (t + a2) / (1.0 + np.conj(a2) * t)
        # eta from the value at a point of the circle away from alpha
        z = -alpha / abs(alpha) if abs(alpha) > 0 else 1.0 + 0j
        val = complex(self.v(other.v(z)))
        eta = val * (1.0 - np.conj(alpha) * z) / (z - alpha)
        return Automorphism(self.w * other.w, eta / abs(eta), complex(alpha))

    def inverse(self) -> "Automorphism":
        e, a = self.eta, self.alpha
        return Automorphism(np.conj(self.w), np.conj(e), -e * a)

    def __call__(self, x) -> PentaPoint:
        return automorphism_apply(self, x)


def _sym_roots(s: complex, p: complex):
    disc = s * s - 4.0 * p
    if abs(disc) < DISC_TOL:
        z = 0.5 * s
        return z, z
    sq = np.sqrt(complex(disc))
    big = s + sq if abs(s + sq) >= abs(s - sq) else s - sq
    z1 = 0.5 * big
    z2 = p / z1 if z1 != 0 else s - z1
    return z1, z2


def automorphism_apply(f: Automorphism, x, tol: float = MEMBER_TOL) -> PentaPoint:
    """Apply ``f_{w v}`` to a point of the closed pentablock.

    Raises
    ------
    DomainError
        If ``(s, p)`` is outside Gamma.
    SingularError
        If ``1 - conj(alpha) s + conj(alpha)^2 p`` vanishes.
    """
    a, s, p = (complex(v) for v in x)
    v = in_gamma(s, p, "closed", tol)
    if not v.inside:
        raise DomainError(f"(s, p) outside Gamma: {v.binding}")
    ab = np.conj(f.alpha)
    den = 1.0 - ab * s + ab * ab * p
    if abs(den) <= SINGULAR_TOL:
        raise SingularError("automorphism denominator vanishes")
    a_new = f.w * f.eta * (1.0 - abs(f.alpha) ** 2) * a / den
    z1, z2 = _sym_roots(s, p)
    v1, v2 = complex(f.v(z1)), complex(f.v(z2))
    return PentaPoint(complex(a_new), v1 + v2, v1 * v2)
