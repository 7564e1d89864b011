"""Complex polynomials, trigonometric polynomials and Blaschke products.

Coefficient arrays are stored in ascending order: ``coeffs[i]`` multiplies
``lam**i``.  All value types are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import DataError, DegreeError, SingularError, UndefinedRootsError

COEFF_TOL = 1e-12  # relative to the largest coefficient
CLUSTER_TOL = 1e-7
BOUNDARY_TOL = 1e-8
MAX_ITER = 500
STEP_TOL = 1e-13

_EPS = np.finfo(float).eps


def _as_coeffs(coeffs) -> np.ndarray:
    c = np.array(coeffs, dtype=complex).ravel()
    if not np.all(np.isfinite(c)):
        raise DataError("polynomial coefficients must be finite")
    return c


def _trim(c: np.ndarray, tol: float = COEFF_TOL) -> np.ndarray:
    if c.size == 0:
        return c
    mags = np.abs(c)
    big = mags.max()
    if big == 0.0:
        return c[:0]
    keep = np.nonzero(mags > tol * big)[0]
    return c[: keep[-1] + 1]


class ComplexPoly:
    """Dense polynomial with complex coefficients.

    Parameters
    ----------
    coeffs : array_like
        Coefficients in ascending order of degree.  Trailing coefficients
        whose modulus is at most ``1e-12`` times the largest one are dropped,
        so equal polynomials have identical coefficient arrays.  The zero
        polynomial has no coefficients and ``degree`` None.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = _trim(_as_coeffs(coeffs)).copy()
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_roots(cls, roots, leading: complex = 1.0) -> "ComplexPoly":
        c = np.array([leading], dtype=complex)
        for r in np.atleast_1d(np.asarray(roots, dtype=complex)):
            c = np.convolve(c, [-r, 1.0])
        return cls(c)

    @classmethod
    def monomial(cls, k: int, coeff: complex = 1.0) -> "ComplexPoly":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coeff
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int | None:
        return None if self._c.size == 0 else self._c.size - 1

    @property
    def is_zero(self) -> bool:
        return self._c.size == 0

    def padded(self, n: int) -> np.ndarray:
        """Coefficient array zero-padded to length ``n + 1``."""
        d = self._c.size - 1
        if d > n:
            raise DegreeError(f"degree {d} exceeds {n}")
        out = np.zeros(n + 1, dtype=complex)
        out[: self._c.size] = self._c
        return out

    def __call__(self, lam):
        return horner(self._c, lam)

    def derivative(self) -> "ComplexPoly":
        if self._c.size <= 1:
            return ComplexPoly()
        return ComplexPoly(self._c[1:] * np.arange(1, self._c.size))

    def shift(self, k: int) -> "ComplexPoly":
        """Multiply by ``lam**k``."""
        if self.is_zero:
            return self
        return ComplexPoly(np.concatenate([np.zeros(k, dtype=complex), self._c]))

    def conj_coeffs(self) -> "ComplexPoly":
        return ComplexPoly(np.conj(self._c))

    def max_coeff(self) -> float:
        return float(np.abs(self._c).max()) if self._c.size else 0.0

    def allclose(self, other, tol: float = 1e-9) -> bool:
        return coeff_distance(self, other) <= tol

    # arithmetic
    def _coerce(self, other) -> "ComplexPoly":
        if isinstance(other, ComplexPoly):
            return other
        if np.isscalar(other):
            return ComplexPoly([other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(self._c.size, o._c.size)
        out = np.zeros(n, dtype=complex)
        out[: self._c.size] += self._c
        out[: o._c.size] += o._c
        return ComplexPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly(-self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return ComplexPoly(self._c * complex(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero or o.is_zero:
            return ComplexPoly()
        return ComplexPoly(np.convolve(self._c, o._c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return ComplexPoly(self._c / complex(other))
        return NotImplemented

    def __pow__(self, k: int):
        out = ComplexPoly([1.0])
        for _ in range(int(k)):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __len__(self):
        return self._c.size

    def __repr__(self):
        body = ", ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in self._c)
        return f"ComplexPoly([{body}])"

    def tolist(self) -> list[complex]:
        return [complex(z) for z in self._c]


def horner(c: np.ndarray, lam):
    """Evaluate ascending coefficients ``c`` at ``lam`` (scalar or array)."""
    lam = np.asarray(lam, dtype=complex)
    out = np.zeros_like(lam)
    for coef in c[::-1]:
        out = out * lam + coef
    return out[()] if out.ndim == 0 else out


def evaluate(p: ComplexPoly, lam):
    """Horner evaluation of ``p`` at ``lam``."""
    return p(lam)


def coeff_distance(p: ComplexPoly, q: ComplexPoly) -> float:
    """Largest coefficient difference between two polynomials."""
    n = max(len(p), len(q))
    a = np.zeros(n, dtype=complex)
    b = np.zeros(n, dtype=complex)
    a[: len(p)] = p.coeffs
    b[: len(q)] = q.coeffs
    return float(np.abs(a - b).max()) if n else 0.0


def involution(g: ComplexPoly, n: int) -> ComplexPoly:
    """Return ``lam**n * conj(g(1/conj(lam)))``.

    Coefficient ``j`` of the result is ``conj(g[n - j])``.

    Raises
    ------
    DegreeError
        If ``deg(g) > n``.
    """
    if n < 0:
        raise DegreeError("n must be non-negative")
    if g.is_zero:
        return g
    return ComplexPoly(np.conj(g.padded(n)[::-1]))


# ---------------------------------------------------------------------------
# roots


def _cauchy_radius(a: np.ndarray) -> float:
    """Unique positive root of |a_n| x^n - sum_{i<n} |a_i| x^i."""
    m = np.abs(a)
    n = m.size - 1
    lo, hi = 0.0, 1.0 + float(np.max(m[:-1]) / m[-1])

    def f(x):
        return m[-1] * x**n - np.sum(m[:-1] * x ** np.arange(n))

    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-12 * hi:
            break
    return hi


def _aberth(c: np.ndarray) -> np.ndarray:
    """Roots of a polynomial with ``c[0] != 0`` and ``deg >= 2``."""
    n = c.size - 1
    a = c / c[-1]
    upper = _cauchy_radius(a)
    lower = 1.0 / _cauchy_radius(a[::-1] / a[0])
    radius = np.sqrt(upper * lower)
    k = np.arange(n)
    z = radius * np.exp(1j * (2 * np.pi * k / n + 0.4 / n))
    da = a[1:] * np.arange(1, n + 1)
    absa = np.abs(a)
    active = np.ones(n, dtype=bool)
    for _ in range(MAX_ITER):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        zi = z[idx]
        pv = horner(a, zi)
        bound = _EPS * horner(absa, np.abs(zi)).real
        small = np.abs(pv) <= bound
        dp = horner(da, zi)
        diff = zi[:, None] - z[None, :]
        diff[np.arange(idx.size), idx] = np.inf
        s = np.sum(1.0 / diff, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dp
            w = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(w)
        if np.any(bad):
            w[bad] = 1e-8 * (1.0 + np.abs(zi[bad])) * np.exp(1j * (idx[bad] + 1.0))
        w[small] = 0.0
        z[idx] = zi - w
        done = small | (np.abs(w) <= STEP_TOL * np.maximum(np.abs(zi), 1e-300))
        active[idx[done]] = False
    return z


def _raw_roots(c: np.ndarray) -> np.ndarray:
    nz = 0
    while nz < c.size - 1 and c[nz] == 0:
        nz += 1
    c = c[nz:]
    d = c.size - 1
    if d == 0:
        rest = np.zeros(0, dtype=complex)
    elif d == 1:
        rest = np.array([-c[0] / c[1]])
    else:
        rest = _aberth(c)
    return np.concatenate([np.zeros(nz, dtype=complex), rest])


def _sort_key(z: complex):
    ang = float(np.angle(z))
    if ang < 0:
        ang += 2 * np.pi
    return (round(abs(z), 12), ang)


def _cluster(r: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    """Single-linkage clustering; returns centroids with multiplicities."""
    n = r.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(r[i] - r[j]) <= tol * max(1.0, abs(r[i])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = [(complex(np.mean(r[g])), len(g)) for g in groups.values()]
    out.sort(key=lambda t: _sort_key(t[0]))
    return out


def _deriv_coeffs(c: np.ndarray, j: int) -> np.ndarray:
    for _ in range(j):
        c = c[1:] * np.arange(1, c.size)
    return c


def _polish(c: np.ndarray, z: complex, m: int, steps: int = 8) -> complex:
    """Newton on the (m-1)-th derivative, which has a simple root at z."""
    q = _deriv_coeffs(c, m - 1)
    dq = _deriv_coeffs(q, 1)
    if dq.size == 0:
        return z
    best, best_val = z, abs(horner(q, z))
    for _ in range(steps):
        d = horner(dq, z)
        if d == 0:
            break
        z = z - horner(q, z) / d
        val = abs(horner(q, z))
        if val < best_val:
            best, best_val = z, val
        else:
            break
    return complex(best)


def _consistent_multiple(c: np.ndarray, z: complex, m: int, slack: float = 64.0) -> bool:
    """True if p, p', ..., p^(m-2) vanish at z to within rounding."""
    absc = np.abs(c)
    for j in range(m - 1):
        dj = _deriv_coeffs(c, j)
        bound = slack * c.size * _EPS * horner(_deriv_coeffs(absc, j), abs(z)).real
        if abs(horner(dj, z)) > bound:
            return False
    return True


LOOSE_TOL = 1e-3


def _clusters_from_coeffs(c: np.ndarray, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    raw = _raw_roots(c)
    groups = _cluster(raw, tol)
    # a wider component is merged when p and its derivatives vanish at
    # the component centre to within rounding (a multiple root in disguise)
    out: list[tuple[complex, int]] = []
    centres = np.array([z for z, _ in groups], dtype=complex)
    for comp in _components(centres, LOOSE_TOL):
        members = [groups[i] for i in comp]
        if len(members) > 1:
            m = sum(k for _, k in members)
            z = _polish(c, sum(k * w for w, k in members) / m, m)
            if _consistent_multiple(c, z, m):
                out.append((z, m))
                continue
        out.extend((_polish(c, w, k) if k > 1 else w, k) for w, k in members)
    out.sort(key=lambda t: _sort_key(t[0]))
    return out


def _components(z: np.ndarray, tol: float) -> list[list[int]]:
    n = z.size
    seen = [False] * n
    comps = []
    for i in range(n):
        if seen[i]:
            continue
        stack, comp = [i], []
        seen[i] = True
        while stack:
            k = stack.pop()
            comp.append(k)
            for j in range(n):
                if not seen[j] and abs(z[k] - z[j]) <= tol * max(1.0, abs(z[k])):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def root_clusters(p: ComplexPoly, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Distinct roots of ``p`` with multiplicities.

    Roots within ``tol`` of each other (relative for moduli above one) are
    merged.  Slightly wider groups are merged too when ``p`` and its
    derivatives vanish at the group centre to within rounding, which is
    how a multiple root shows up in floating point.  Multiple roots are
    refined by Newton's method on the matching derivative.
    """
    if p.is_zero:
        raise UndefinedRootsError("roots of the zero polynomial are undefined")
    return _clusters_from_coeffs(p.coeffs, tol)


def roots(p: ComplexPoly, tol: float = CLUSTER_TOL) -> list[complex]:
    """All roots of ``p`` repeated by multiplicity.

    The output is sorted by modulus, then by argument in ``[0, 2*pi)``.

    Raises
    ------
    UndefinedRootsError
        For the zero polynomial.
    """
    out: list[complex] = []
    for z, m in root_clusters(p, tol):
        out.extend([z] * m)
    return out


def is_outer(p: ComplexPoly, tol: float = BOUNDARY_TOL) -> bool:
    """True iff ``p`` has no roots of modulus below ``1 - tol``."""
    return min_root_modulus(p) >= 1.0 - tol


def min_root_modulus(p: ComplexPoly) -> float:
    """Smallest root modulus (``inf`` for a non-zero constant)."""
    r = roots(p)
    return float(min(abs(z) for z in r)) if r else np.inf


# ---------------------------------------------------------------------------
# trigonometric polynomials


class TrigPoly:
    """Laurent polynomial ``sum_{k=-n}^{n} c_k lam**k`` viewed on the circle.

    Parameters
    ----------
    coeffs : mapping or array_like
        Either a mapping ``{k: c_k}`` or a centred array of odd length
        ``2n + 1`` whose middle entry is ``c_0``.
    """

    __slots__ = ("_c", "_n")

    def __init__(self, coeffs):
        if isinstance(coeffs, Mapping):
            if not coeffs:
                arr = np.zeros(1, dtype=complex)
            else:
                n = max(abs(int(k)) for k in coeffs)
                arr = np.zeros(2 * n + 1, dtype=complex)
                for k, v in coeffs.items():
                    arr[int(k) + n] += complex(v)
        else:
            arr = _as_coeffs(coeffs)
            if arr.size % 2 == 0:
                raise DataError("centred coefficient array must have odd length")
        if not np.all(np.isfinite(arr)):
            raise DataError("coefficients must be finite")
        arr = self._trim_sym(arr)
        arr.setflags(write=False)
        self._c = arr
        self._n = (arr.size - 1) // 2

    @staticmethod
    def _trim_sym(arr: np.ndarray) -> np.ndarray:
        big = np.abs(arr).max() if arr.size else 0.0
        if big == 0.0:
            return np.zeros(1, dtype=complex)
        while arr.size > 1 and max(abs(arr[0]), abs(arr[-1])) <= COEFF_TOL * big:
            arr = arr[1:-1]
        return arr.copy()

    @classmethod
    def from_laurent(cls, poly: ComplexPoly, n: int) -> "TrigPoly":
        """``lam**(-n) * poly(lam)`` for ``deg(poly) <= 2n``."""
        return cls(poly.padded(2 * n))

    @classmethod
    def modsq(cls, p: ComplexPoly, n: int | None = None) -> "TrigPoly":
        """``|p(lam)|**2`` on the circle as a trigonometric polynomial."""
        if p.is_zero:
            return cls({0: 0.0})
        n = p.degree if n is None else n
        c = p.padded(n)
        return cls(np.convolve(c, np.conj(c[::-1])))

    @property
    def n(self) -> int:
        return self._n

    @property
    def centred(self) -> np.ndarray:
        return self._c

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self._n:
            return 0j
        return complex(self._c[k + self._n])

    def items(self):
        return [(k - self._n, complex(v)) for k, v in enumerate(self._c)]

    @property
    def is_zero(self) -> bool:
        return not np.any(self._c)

    def hermitian_defect(self) -> float:
        return float(np.abs(self._c - np.conj(self._c[::-1])).max())

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return self.hermitian_defect() <= tol * max(1.0, float(np.abs(self._c).max()))

    def to_poly(self) -> ComplexPoly:
        """``lam**n * f(lam)`` as an ordinary polynomial of degree <= 2n."""
        return ComplexPoly(self._c)

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=complex)
        return horner(self._c, lam) * lam ** (-self._n)

    def real_on_circle(self, m: int):
        """Samples ``(theta, Re f)`` at ``m`` equispaced points of the circle."""
        theta = 2 * np.pi * np.arange(m) / m
        return theta, np.real(self(np.exp(1j * theta)))

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        n = max(self._n, other._n)
        out = np.zeros(2 * n + 1, dtype=complex)
        out[n - self._n : n + self._n + 1] += self._c
        out[n - other._n : n + other._n + 1] += other._c
        return TrigPoly(out)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + other * -1.0

    def __mul__(self, t):
        return TrigPoly(self._c * complex(t))

    __rmul__ = __mul__

    def __repr__(self):
        return f"TrigPoly(n={self._n}, {dict(self.items())})"


# ---------------------------------------------------------------------------
# Blaschke products


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product ``c * prod (lam - a) / (1 - conj(a) lam)``."""

    c: complex = 1.0
    zeros: tuple = ()

    def __post_init__(self):
        c = complex(self.c)
        z = tuple(complex(a) for a in self.zeros)
        if not np.isfinite(c) or abs(abs(c) - 1.0) > 1e-9:
            raise DataError(f"Blaschke constant must be unimodular, got {c}")
        for a in z:
            if not np.isfinite(a) or abs(a) >= 1.0:
                raise DataError(f"Blaschke zero {a} must lie in the open disc")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "zeros", z)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def numerator(self) -> ComplexPoly:
        return ComplexPoly.from_roots(self.zeros, leading=self.c)

    @property
    def denominator(self) -> ComplexPoly:
        d = ComplexPoly([1.0])
        for a in self.zeros:
            d = d * ComplexPoly([1.0, -np.conj(a)])
        return d

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=complex)
        out = np.full(lam.shape, self.c, dtype=complex)
        for a in self.zeros:
            den = 1.0 - np.conj(a) * lam
            if np.any(den == 0):
                raise SingularError("Blaschke product evaluated at a pole")
            out = out * (lam - a) / den
        return out[()] if out.ndim == 0 else out


def blaschke_eval(B: BlaschkeProduct, lam):
    """Evaluate ``B`` at ``lam``; raises ``SingularError`` at a pole."""
    return B(lam)


def mobius(alpha: complex):
    """The disc automorphism ``B_alpha(z) = (z - alpha)/(1 - conj(alpha) z)``."""
    alpha = complex(alpha)
    return lambda z: (np.asarray(z) - alpha) / (1.0 - np.conj(alpha) * np.asarray(z))


@dataclass(frozen=True)
class RationalMap:
    """Quotient ``num / den`` of two polynomials."""

    num: ComplexPoly
    den: ComplexPoly

    def __call__(self, lam):
        return self.num(lam) / self.den(lam)

    def is_disc_regular(self, tol: float = BOUNDARY_TOL) -> bool:
        """True iff ``den`` has no roots in the closed unit disc."""
        if self.den.is_zero:
            return False
        return min_root_modulus(self.den) > 1.0 + tol


def compose_rational(g: ComplexPoly, k: int, m_num: ComplexPoly, m_den: ComplexPoly) -> ComplexPoly:
    """Expand ``m_den**k * g(m_num / m_den)`` as a polynomial.

    Raises
    ------
    DegreeError
        If ``deg(g) > k``.
    """
    if g.is_zero:
        return g
    gc = g.padded(k)
    num_pows = [np.array([1.0 + 0j])]
    den_pows = [np.array([1.0 + 0j])]
    for _ in range(k):
        num_pows.append(np.convolve(num_pows[-1], m_num.coeffs if len(m_num) else [0j]))
        den_pows.append(np.convolve(den_pows[-1], m_den.coeffs if len(m_den) else [0j]))
    out = ComplexPoly()
    for i in range(k + 1):
        if gc[i] == 0:
            continue
        out = out + ComplexPoly(gc[i] * np.convolve(num_pows[i], den_pows[k - i]))
    return out


def rational_degree(num_roots, den_roots, tol: float = CLUSTER_TOL) -> int:
    """Degree ``max(#num, #den)`` after cancelling common roots."""
    num = list(num_roots)
    den = list(den_roots)
    for r in list(num):
        for j, q in enumerate(den):
            if abs(r - q) <= tol * max(1.0, abs(r)):
                num.remove(r)
                del den[j]
                break
    return max(len(num), len(den))
