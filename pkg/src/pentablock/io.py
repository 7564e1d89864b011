"""JSON and CSV serialization.

Complex numbers are ``[re, im]`` pairs everywhere.  Floats are written in
their shortest round-trip form and non-finite values as ``null``, so equal
inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from collections.abc import Mapping
from typing import Any

import numpy as np

from .construct import ConstructionData, ConstructionResult
from .cpoly import BlaschkeProduct, ComplexPoly, TrigPoly
from .domains import GammaPoint, MembershipVerdict, PentaPoint
from .errors import DataError
from .gamma_inner import GammaInnerRep
from .penta_inner import PentaInnerRep
from .report import Report
from .schwarz import FeasibilityCertificate, SchwarzProblem, SchwarzSolution

# ---------------------------------------------------------------------------
# scalars


def _real(v, what: str = "value") -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DataError(f"{what}: expected a real number, got {v!r}")
    x = float(v)
    if not math.isfinite(x):
        raise DataError(f"{what}: must be finite")
    return x


def complex_to_json(z) -> list:
    z = complex(z)
    return [_float(z.real), _float(z.imag)]


def complex_from_json(v, what: str = "value") -> complex:
    """Read ``[re, im]``; a bare real number is accepted too."""
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise DataError(f"{what}: expected [re, im], got {v!r}")
        return complex(_real(v[0], what), _real(v[1], what))
    return complex(_real(v, what), 0.0)


def _float(x) -> float | None:
    x = float(x)
    if not math.isfinite(x):
        return None
    # normalise -0.0 so output does not depend on rounding signs
    return x + 0.0


def _complex_list(v, what: str) -> list[complex]:
    if not isinstance(v, (list, tuple)):
        raise DataError(f"{what}: expected a list of [re, im] pairs")
    return [complex_from_json(z, f"{what}[{i}]") for i, z in enumerate(v)]


def _field(obj: Mapping, key: str, what: str):
    if key not in obj:
        raise DataError(f"{what}: missing field {key!r}")
    return obj[key]


def _mapping(v, what: str) -> Mapping:
    if not isinstance(v, Mapping):
        raise DataError(f"{what}: expected a JSON object")
    return v


# ---------------------------------------------------------------------------
# polynomials


def poly_to_json(P: ComplexPoly) -> list:
    return [complex_to_json(c) for c in P.coeffs] if not P.is_zero else []


def poly_from_json(v, what: str = "poly") -> ComplexPoly:
    return ComplexPoly(_complex_list(v, what) or [0.0])


def trig_to_json(f: TrigPoly) -> dict:
    rows = []
    for k, c in sorted(f.items()):
        if c != 0:
            rows.append([int(k), _float(c.real), _float(c.imag)])
    return {"coeffs": rows}


def trig_from_json(v, what: str = "trigpoly") -> TrigPoly:
    """Read ``{"coeffs": [[k, re, im], ...]}``.

    The shorthand ``{"coeffs": {"k": [re, im] or re, ...}}`` is accepted,
    as is the bare mapping ``{"k": ...}``.
    """
    obj = _mapping(v, what)
    rows = obj if "coeffs" not in obj and obj else _field(obj, "coeffs", what)
    coeffs: dict[int, complex] = {}
    if isinstance(rows, Mapping):
        items = [(k, val) for k, val in rows.items()]
        for k, val in items:
            try:
                kk = int(k)
            except (TypeError, ValueError):
                raise DataError(f"{what}: bad index {k!r}") from None
            coeffs[kk] = coeffs.get(kk, 0) + complex_from_json(val, f"{what}[{k}]")
    elif isinstance(rows, list):
        for i, row in enumerate(rows):
            if not isinstance(row, (list, tuple)) or len(row) not in (2, 3):
                raise DataError(f"{what}.coeffs[{i}]: expected [k, re, im]")
            k = row[0]
            if isinstance(k, bool) or not isinstance(k, int):
                raise DataError(f"{what}.coeffs[{i}]: index must be an integer")
            im = _real(row[2], what) if len(row) == 3 else 0.0
            coeffs[k] = coeffs.get(k, 0) + complex(_real(row[1], what), im)
    else:
        raise DataError(f"{what}: coeffs must be a list or an object")
    return TrigPoly(coeffs)


# ---------------------------------------------------------------------------
# points


def point_to_json(x) -> dict:
    if isinstance(x, PentaPoint) or len(x) == 3:
        a, s, p = x
        return {"a": complex_to_json(a), "s": complex_to_json(s), "p": complex_to_json(p)}
    s, p = x
    return {"s": complex_to_json(s), "p": complex_to_json(p)}


def point_from_json(v, what: str = "point"):
    """``{"s", "p"}`` gives a ``GammaPoint``; with ``"a"`` a ``PentaPoint``."""
    obj = _mapping(v, what)
    s = complex_from_json(_field(obj, "s", what), f"{what}.s")
    p = complex_from_json(_field(obj, "p", what), f"{what}.p")
    if "a" in obj:
        return PentaPoint(complex_from_json(obj["a"], f"{what}.a"), s, p)
    return GammaPoint(s, p)


def verdict_to_json(v: MembershipVerdict) -> dict:
    return {"inside": bool(v.inside), "margin": _float(v.margin), "binding": v.binding}


# ---------------------------------------------------------------------------
# functions


def blaschke_to_json(B: BlaschkeProduct) -> dict:
    return {"c": complex_to_json(B.c), "zeros": [complex_to_json(z) for z in B.zeros]}


def blaschke_from_json(v, what: str = "a_in") -> BlaschkeProduct:
    obj = _mapping(v, what)
    c = complex_from_json(obj.get("c", [1.0, 0.0]), f"{what}.c")
    return BlaschkeProduct(c, tuple(_complex_list(obj.get("zeros", []), f"{what}.zeros")))


def _degree_n(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise DataError(f"{what}: n must be a non-negative integer")
    return v


def gamma_rep_to_json(h: GammaInnerRep) -> dict:
    return {"E": poly_to_json(h.E), "D": poly_to_json(h.D), "n": int(h.n)}


def gamma_rep_from_json(v, what: str = "function") -> GammaInnerRep:
    obj = _mapping(v, what)
    return GammaInnerRep(
        poly_from_json(_field(obj, "E", what), f"{what}.E"),
        poly_from_json(_field(obj, "D", what), f"{what}.D"),
        _degree_n(_field(obj, "n", what), f"{what}.n"),
    )


def penta_rep_to_json(x: PentaInnerRep) -> dict:
    return {
        "a_in": blaschke_to_json(x.a_in),
        "A": poly_to_json(x.A),
        "E": poly_to_json(x.E),
        "D": poly_to_json(x.D),
        "n": int(x.n),
    }


def penta_rep_from_json(v, what: str = "function") -> PentaInnerRep:
    obj = _mapping(v, what)
    h = gamma_rep_from_json(obj, what)
    return PentaInnerRep(
        blaschke_from_json(_field(obj, "a_in", what), f"{what}.a_in"),
        poly_from_json(_field(obj, "A", what), f"{what}.A"),
        h.E,
        h.D,
        h.n,
    )


def function_from_json(v, what: str = "function"):
    """A ``PentaInnerRep`` if ``a_in`` is present, else a ``GammaInnerRep``."""
    obj = _mapping(v, what)
    if "a_in" in obj or "A" in obj:
        return penta_rep_from_json(obj, what)
    return gamma_rep_from_json(obj, what)


# ---------------------------------------------------------------------------
# construction and Schwarz problems


def construction_data_to_json(d: ConstructionData) -> dict:
    return {
        "alphas": [complex_to_json(z) for z in d.alphas],
        "etas": [complex_to_json(z) for z in d.etas],
        "betas": [complex_to_json(z) for z in d.betas],
        "sigmas": [complex_to_json(z) for z in d.sigmas],
        "t_plus": _float(d.t_plus),
        "t": _float(d.t),
        "c": complex_to_json(d.c),
    }


def construction_data_from_json(v, what: str = "data") -> ConstructionData:
    obj = _mapping(v, what)
    kw: dict[str, Any] = {}
    for key in ("alphas", "etas", "betas", "sigmas"):
        kw[key] = tuple(_complex_list(obj.get(key, []), f"{what}.{key}"))
    if "t_plus" in obj:
        kw["t_plus"] = _real(obj["t_plus"], f"{what}.t_plus")
    if "t" in obj:
        kw["t"] = _real(obj["t"], f"{what}.t")
    if "c" in obj:
        kw["c"] = complex_from_json(obj["c"], f"{what}.c")
    return ConstructionData(**kw)


def construction_result_to_json(r: ConstructionResult) -> dict:
    return {"x": penta_rep_to_json(r.x), "R": poly_to_json(r.R), "report": report_to_json(r.report)}


def schwarz_problem_to_json(P: SchwarzProblem) -> dict:
    return {
        "lambda0": complex_to_json(P.lam0),
        "a0": complex_to_json(P.a0),
        "s0": complex_to_json(P.s0),
        "p0": complex_to_json(P.p0),
    }


def schwarz_problem_from_json(v, what: str = "problem") -> SchwarzProblem:
    obj = _mapping(v, what)
    return SchwarzProblem(
        *(complex_from_json(_field(obj, k, what), f"{what}.{k}") for k in ("lambda0", "a0", "s0", "p0"))
    )


def certificate_to_json(c: FeasibilityCertificate) -> dict:
    return {
        "verdict": c.verdict,
        "binding": c.binding,
        "F": _float(c.F),
        "s_bound_ok": bool(c.s_bound_ok),
        "F_ok": bool(c.F_ok),
        "a_bound_ok": bool(c.a_bound_ok),
        "a_bound": _float(c.a_bound),
        "a_bound_beta": _float(c.a_bound_beta),
        "margins": {k: _float(m) for k, m in c.margins.items()},
    }


def _aux_value(v):
    if isinstance(v, BlaschkeProduct):
        return blaschke_to_json(v)
    if isinstance(v, (complex, np.complexfloating)):
        return complex_to_json(v)
    if isinstance(v, (float, int, np.floating, np.integer)):
        return _float(v)
    return str(v)


def schwarz_solution_to_json(sol: SchwarzSolution) -> dict:
    return {
        "x": penta_rep_to_json(sol.x),
        "construction_path": sol.construction_path,
        "aux": {k: _aux_value(v) for k, v in sol.aux.items()},
        "report": report_to_json(sol.report),
    }


def report_to_json(r: Report) -> dict:
    d = r.to_dict()
    for c in d["checks"]:
        if c["margin"] is not None:
            c["margin"] = _float(c["margin"])
    return d


# ---------------------------------------------------------------------------
# files


def loads(text: str, what: str = "input"):
    """Parse JSON; syntax errors become ``DataError`` with position."""
    def reject(name):
        raise DataError(f"{what}: non-finite constant {name} is not allowed")

    try:
        return json.loads(text, parse_constant=reject)
    except json.JSONDecodeError as exc:
        raise DataError(f"{what}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, path)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, ensure_ascii=True) + "\n"


TRACE_HEADER = ("theta", "a_re", "a_im", "s_re", "s_im", "p_re", "p_im", "bpenta_margin")


def trace_csv(theta, a, s, p, margin) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_HEADER)
    for row in zip(theta, a, s, p, margin):
        t, aa, ss, pp, m = row
        w.writerow([repr(float(v) + 0.0) for v in (t, aa.real, aa.imag, ss.real, ss.imag, pp.real, pp.imag, m)])
    return buf.getvalue()
