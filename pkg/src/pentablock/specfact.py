"""Fejér–Riesz spectral factorization by root pairing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cpoly import ComplexPoly, TrigPoly, _clusters_from_coeffs
from .errors import DataError, NotNonnegativeError, PairingError

NONNEG_SAMPLES = 1024
NONNEG_TOL = 1e-9
PAIR_TOL = 1e-6
SNAP_TOL = 1e-6
# double roots on the circle split like sqrt of the coefficient error
CIRCLE_GROUP_TOL = 1e-4
HERMITIAN_TOL = 1e-9


@dataclass(frozen=True)
class FejerRieszResult:
    """Outer factor ``D`` of a non-negative trigonometric polynomial.

    Attributes
    ----------
    D : ComplexPoly
        Outer polynomial with ``D(0) >= 0``.  Zero for the zero input.
    residual : float
        ``max | |D|^2 - f |`` over the sample points of the circle.
    degenerate : bool
        True when the input vanishes identically.
    """

    D: ComplexPoly
    residual: float
    degenerate: bool = False


def _scale(f: TrigPoly) -> float:
    return float(np.abs(f.centred).max())


def fejer_riesz(f: TrigPoly, samples: int = NONNEG_SAMPLES) -> FejerRieszResult:
    """Factor ``f = |D|^2`` on the unit circle with ``D`` outer.

    Parameters
    ----------
    f : TrigPoly
        Hermitian trigonometric polynomial of degree ``n``.
    samples : int
        Number of circle samples used for the non-negativity check,
        for the scale fit and for the residual.

    Returns
    -------
    FejerRieszResult

    Raises
    ------
    NotNonnegativeError
        If ``f`` dips below ``-1e-9 * scale`` at a sample.
    PairingError
        If roots cannot be matched with their reflections through the
        circle, or a root on the circle has odd multiplicity.
    """
    if f.is_zero:
        return FejerRieszResult(ComplexPoly(), 0.0, degenerate=True)
    scale = _scale(f)
    if f.hermitian_defect() > HERMITIAN_TOL * scale:
        raise DataError("trigonometric polynomial is not Hermitian")
    theta, vals = f.real_on_circle(samples)
    if vals.min() < -NONNEG_TOL * scale:
        raise NotNonnegativeError(
            f"f takes the value {vals.min():.3e} on the circle (scale {scale:.3e})"
        )
    n = f.n
    if n == 0:
        D = ComplexPoly([np.sqrt(max(f[0].real, 0.0))])
        return FejerRieszResult(D, abs(abs(D.coeffs[0]) ** 2 - f[0].real))

    q = f.to_poly()
    clusters = _clusters_from_coeffs(q.coeffs)
    if sum(m for _, m in clusters) != 2 * n:
        raise PairingError(f"expected {2 * n} roots (lam**n f has a root at 0)")
    selected = _pair_roots(clusters)

    D = ComplexPoly.from_roots(selected)
    k = int(np.argmax(vals))
    lam_star = np.exp(1j * theta[k])
    gamma = np.sqrt(vals[k]) / abs(D(lam_star))
    D = D * gamma
    d0 = D.coeffs[0]
    if d0 != 0:
        D = D * (abs(d0) / d0)
    lam = np.exp(1j * theta)
    residual = float(np.abs(np.abs(D(lam)) ** 2 - vals).max())
    return FejerRieszResult(D, residual)


def _pair_roots(clusters) -> list[complex]:
    """Select one root of modulus >= 1 from each reflected pair."""
    selected: list[complex] = []
    rest: list[complex] = []
    circ: list[tuple[complex, int]] = []
    for z, mult in clusters:
        if abs(abs(z) - 1.0) < SNAP_TOL:
            circ.append((z / abs(z), mult))
        else:
            rest.extend([z] * mult)
    selected.extend(_split_circle_roots(circ))

    inner = [z for z in rest if abs(z) < 1.0]
    outer = [z for z in rest if abs(z) > 1.0]
    if len(inner) != len(outer):
        raise PairingError(
            f"{len(inner)} roots inside the circle but {len(outer)} outside"
        )
    # greedy matching on |r conj(r') - 1|, smallest mismatch first
    if inner:
        cost = np.abs(np.outer(np.array(inner), np.conj(np.array(outer))) - 1.0)
        used_i: set[int] = set()
        used_o: set[int] = set()
        order = np.argsort(cost, axis=None, kind="stable")
        for flat in order:
            i, j = divmod(int(flat), len(outer))
            if i in used_i or j in used_o:
                continue
            if cost[i, j] > PAIR_TOL * max(1.0, abs(outer[j])):
                raise PairingError(
                    f"root {inner[i]:.6g} has no reflected partner (mismatch {cost[i, j]:.2e})"
                )
            used_i.add(i)
            used_o.add(j)
            # use the exact reflection of the better-conditioned inner root
            # averaged with the computed outer one
            selected.append(0.5 * (outer[j] + 1.0 / np.conj(inner[i])))
            if len(used_i) == len(inner):
                break
    return selected


def _split_circle_roots(circ) -> list[complex]:
    """Halve the multiplicities of roots on the circle.

    A double root perturbed by rounding shows up as two nearby simple
    roots; neighbours closer than ``CIRCLE_GROUP_TOL`` are grouped and
    paired in angular order, each pair replaced by its midpoint.
    """
    if not circ:
        return []
    pts = sorted(circ, key=lambda t: np.angle(t[0]) % (2 * np.pi))
    groups: list[list[tuple[complex, int]]] = [[pts[0]]]
    for z, m in pts[1:]:
        if abs(z - groups[-1][-1][0]) <= CIRCLE_GROUP_TOL:
            groups[-1].append((z, m))
        else:
            groups.append([(z, m)])
    if len(groups) > 1 and abs(groups[0][0][0] - groups[-1][-1][0]) <= CIRCLE_GROUP_TOL:
        groups[0] = groups.pop() + groups[0]
    out: list[complex] = []
    for g in groups:
        flat = [z for z, m in g for _ in range(m)]
        if len(flat) % 2:
            raise PairingError(
                f"root {flat[0]:.6g} on the circle has odd multiplicity {len(flat)}"
            )
        for k in range(0, len(flat), 2):
            mid = flat[k] + flat[k + 1]
            out.append(mid / abs(mid))
    return out
