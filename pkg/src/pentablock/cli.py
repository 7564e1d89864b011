"""Command-line interface.

Every subcommand reads one JSON file (``-`` for stdin) and prints a run
report::

    {"command": ..., "inputs": ..., "outputs": ..., "checks": [...], "exit_code": ...}

Exit codes: 0 all checks pass, 1 some check failed, 2 bad data,
3 not non-negative, 4 infeasible, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .construct import build, roundtrip_check
from .domains import gamma_margins, in_bpenta, in_gamma, in_penta, on_royal
from .errors import DataError, InfeasibleError, PentaError, UnreachableTargetError
from .gamma_inner import (
    BOUNDARY_SAMPLES,
    VERIFY_TOL,
    GammaInnerRep,
    circle_samples,
    verify_gamma_inner,
)
from .penta_inner import boundary_trace, verify_penta_inner
from .report import Report
from .schwarz import feasibility, solve
from .specfact import fejer_riesz

EXIT_OK = 0
EXIT_CHECK = 1


class Run:
    """Accumulates the pieces of a run report."""

    def __init__(self, command: str, inputs=None):
        self.command = command
        self.inputs = inputs
        self.outputs: dict = {}
        self.report = Report(command)
        self.error: dict | None = None
        self.exit_code = EXIT_OK

    def fail(self, exc: PentaError) -> None:
        self.error = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, InfeasibleError) and exc.certificate is not None:
            self.outputs["certificate"] = io.certificate_to_json(exc.certificate)
        if isinstance(exc, UnreachableTargetError):
            self.error["reachable"] = io._float(exc.reachable)
            self.error["requested"] = io._float(exc.requested)
        self.exit_code = exc.exit_code

    def finish(self) -> int:
        if self.error is None:
            self.exit_code = EXIT_OK if self.report.passed else EXIT_CHECK
        return self.exit_code

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": io.report_to_json(self.report)["checks"],
            "exit_code": self.exit_code,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def _read(path: str):
    if path == "-":
        return io.loads(sys.stdin.read(), "stdin")
    return io.load(path)


# ---------------------------------------------------------------------------
# subcommands


def _classify_one(x, tol) -> dict:
    kw = {} if tol is None else {"tol": tol}
    verdicts = {}
    notes = []
    if len(x) == 3:
        verdicts["P-bar"] = in_penta(x, "closed", **kw)
        verdicts["P"] = in_penta(x, "open", **kw)
        verdicts["bP-bar"] = in_bpenta(x, **kw)
        verdicts["royal"] = on_royal(x, **kw)
        if verdicts["bP-bar"].inside and verdicts["royal"].inside:
            notes.append("royal point of the distinguished boundary: |s| = 2, a = 0")
    else:
        s, p = x
        verdicts["Gamma"] = in_gamma(s, p, "closed", **kw)
        verdicts["G"] = in_gamma(s, p, "open", **kw)
        verdicts["b Gamma"] = in_gamma(s, p, "boundary", **kw)
        verdicts["royal"] = on_royal(x, **kw)
    return {
        "point": io.point_to_json(x),
        "verdicts": {k: io.verdict_to_json(v) for k, v in verdicts.items()},
        "notes": notes,
    }


def cmd_classify(args, run: Run) -> None:
    obj = run.inputs
    if isinstance(obj, dict) and "points" in obj:
        obj = obj["points"]
    many = isinstance(obj, list)
    items = obj if many else [obj]
    pts = [io.point_from_json(v, f"points[{i}]" if many else "point") for i, v in enumerate(items)]
    results = [_classify_one(x, args.tol) for x in pts]
    run.outputs["results" if many else "result"] = results if many else results[0]


def cmd_fejer_riesz(args, run: Run) -> None:
    f = io.trig_from_json(run.inputs)
    res = fejer_riesz(f) if args.samples is None else fejer_riesz(f, samples=args.samples)
    run.outputs["D"] = io.poly_to_json(res.D)
    run.outputs["residual"] = io._float(res.residual)
    run.outputs["degenerate"] = bool(res.degenerate)
    scale = float(np.abs(f.centred).max()) or 1.0
    tol = 1e-9 if args.tol is None else args.tol
    run.report.require("residual <= tol * max |f_k|", tol * scale - res.residual, 0.0)


def cmd_construct(args, run: Run) -> None:
    data = io.construction_data_from_json(run.inputs)
    result = build(data)
    run.outputs.update(io.construction_result_to_json(result))
    rt = roundtrip_check(result) if args.tol is None else roundtrip_check(result, tol=args.tol)
    run.outputs["roundtrip"] = io.report_to_json(rt)
    run.report.extend(result.report)
    run.report.extend(rt, "roundtrip: ")


def cmd_schwarz(args, run: Run) -> None:
    prob = io.schwarz_problem_from_json(run.inputs)
    cert = feasibility(prob) if args.tol is None else feasibility(prob, tol=args.tol)
    run.outputs["certificate"] = io.certificate_to_json(cert)
    if not cert.feasible:
        raise InfeasibleError(f"infeasible: {cert.binding}", cert)
    if args.check_only:
        return
    sol = solve(prob)
    run.outputs["solution"] = io.schwarz_solution_to_json(sol)
    run.report.extend(sol.report)


def _load_function(run: Run):
    return io.function_from_json(run.inputs)


def cmd_verify(args, run: Run) -> None:
    x = _load_function(run)
    n = BOUNDARY_SAMPLES if args.samples is None else args.samples
    tol = VERIFY_TOL if args.tol is None else args.tol
    if isinstance(x, GammaInnerRep):
        rep = verify_gamma_inner(x, boundary_samples=n, tol=tol)
    else:
        rep = verify_penta_inner(x, boundary_samples=n, tol=tol)
    run.outputs["kind"] = "gamma" if isinstance(x, GammaInnerRep) else "penta"
    run.outputs["report"] = io.report_to_json(rep)
    run.report.extend(rep)


def cmd_trace(args, run: Run) -> None:
    x = _load_function(run)
    n = BOUNDARY_SAMPLES if args.samples is None else args.samples
    if n < 1:
        raise DataError("--samples must be positive")
    tol = VERIFY_TOL if args.tol is None else args.tol
    if isinstance(x, GammaInnerRep):
        # no first coordinate: report the b Gamma margin instead
        lam = circle_samples(n)
        s, p = x.evaluate(lam)
        theta = 2 * np.pi * np.arange(n) / n
        margin, _, _ = gamma_margins(s, p, "boundary")
        a = np.zeros_like(s)
        name = "boundary values in b Gamma"
    else:
        theta, a, s, p, margin = boundary_trace(x, n)
        name = "boundary values in b P-bar"
    text = io.trace_csv(theta, a, s, p, margin)
    run.report.require(name, float(np.min(margin)), tol)
    run.outputs["rows"] = int(n)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        run.outputs["csv"] = args.out
    else:
        run.outputs["csv"] = text


COMMANDS = {
    "classify": cmd_classify,
    "fejer-riesz": cmd_fejer_riesz,
    "construct": cmd_construct,
    "schwarz": cmd_schwarz,
    "verify": cmd_verify,
    "trace": cmd_trace,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pentablock", description="Pentablock function theory toolkit.")
    ap.add_argument("--tol", type=float, default=None, help="override the default tolerance")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="membership verdicts for points")
    p.add_argument("file")

    p = sub.add_parser("fejer-riesz", help="outer factor of a non-negative trigonometric polynomial")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("construct", help="penta-inner function from zeros and royal nodes")
    p.add_argument("file")

    p = sub.add_parser("schwarz", help="two-point Schwarz problem")
    p.add_argument("file")
    p.add_argument("--check-only", action="store_true", help="only test feasibility")

    p = sub.add_parser("verify", help="verify a Gamma- or penta-inner function")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("trace", help="boundary values as CSV")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--out", default=None, help="CSV path")

    # let the global flag follow the subcommand too
    for sp in sub.choices.values():
        sp.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run = Run(args.command)
    try:
        run.inputs = _read(args.file)
        if args.tol is not None and not args.tol >= 0:
            raise DataError("--tol must be non-negative")
        COMMANDS[args.command](args, run)
    except PentaError as exc:
        run.fail(exc)
        print(f"pentablock {args.command}: {exc}", file=sys.stderr)
    code = run.finish()
    sys.stdout.write(io.dumps(run.to_json()))
    return code


if __name__ == "__main__":
    sys.exit(main())
