import csv
import io as stdio
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from pentablock import io
from pentablock.cli import main
from pentablock.construct import ConstructionData
from pentablock.cpoly import BlaschkeProduct, ComplexPoly, TrigPoly
from pentablock.errors import DataError
from pentablock.gamma_inner import GammaInnerRep
from pentablock.penta_inner import PentaInnerRep, power_p_example
from pentablock.schwarz import SchwarzProblem

R = 3 + 2 * math.sqrt(2)


@pytest.fixture
def run(tmp_path, capsys):
    def _run(cmd, payload, *flags):
        path = tmp_path / "in.json"
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        code = main([cmd, str(path), *flags])
        out = json.loads(capsys.readouterr().out)
        assert out["exit_code"] == code
        return code, out

    return _run


# --- serialization ----------------------------------------------------------


def test_complex_roundtrip():
    for z in (0, 1.5, -2j, 1e-300 + 3e300j):
        assert io.complex_from_json(io.complex_to_json(z)) == z
    assert io.complex_from_json(2.5) == 2.5
    with pytest.raises(DataError):
        io.complex_from_json([1, 2, 3])
    with pytest.raises(DataError):
        io.complex_from_json("1+2j")


def test_negative_zero_normalized():
    assert io.dumps({"v": io.complex_to_json(complex(-0.0, -0.0))}) == '{\n  "v": [\n    0.0,\n    0.0\n  ]\n}\n'


def test_rep_roundtrips(rng):
    h = GammaInnerRep(ComplexPoly([-1j, 1j]), ComplexPoly([R, -1]) / (R - 1), 1)
    assert io.gamma_rep_from_json(json.loads(io.dumps(io.gamma_rep_to_json(h)))) == h
    x = PentaInnerRep(BlaschkeProduct(1j, (0.2, 0.3j)), ComplexPoly([1]), h.E, h.D, 1)
    y = io.function_from_json(json.loads(io.dumps(io.penta_rep_to_json(x))))
    assert isinstance(y, PentaInnerRep)
    assert y.A == x.A and y.E == x.E and y.D == x.D and y.a_in.zeros == x.a_in.zeros
    d = ConstructionData(etas=(1j,), sigmas=(0.3,), betas=(0.2,), t_plus=2, t=0.5)
    assert io.construction_data_from_json(json.loads(io.dumps(io.construction_data_to_json(d)))) == d
    p = SchwarzProblem(0.5j, 0.1, 0.2, 0.01)
    assert io.schwarz_problem_from_json(json.loads(io.dumps(io.schwarz_problem_to_json(p)))) == p


def test_trig_shorthand():
    f = io.trig_from_json({"0": 1.5, "1": [-0.25, 0], "-1": -0.25})
    assert np.allclose(f.centred, [-0.25, 1.5, -0.25])
    g = io.trig_from_json(io.trig_to_json(TrigPoly.modsq(ComplexPoly([1, 1j]), 1)))
    assert g.is_hermitian()


def test_loads_rejects_bad_json():
    with pytest.raises(DataError, match="line 1"):
        io.loads("{oops")
    with pytest.raises(DataError):
        io.loads('{"s": NaN}')


# --- classify ---------------------------------------------------------------


def test_classify_bpenta(run):
    code, out = run("classify", {"a": [1, 0], "s": [0, 0], "p": [1, 0]})
    assert code == 0
    assert out["outputs"]["result"]["verdicts"]["bP-bar"]["inside"]


def test_classify_gamma_outside(run):
    code, out = run("classify", {"s": [3, 0], "p": [1, 0]})
    assert code == 0
    v = out["outputs"]["result"]["verdicts"]["Gamma"]
    assert not v["inside"] and v["binding"] == "|s| <= 2"


def test_classify_royal_boundary(run):
    code, out = run("classify", {"a": [0, 0], "s": [2, 0], "p": [1, 0]})
    res = out["outputs"]["result"]
    assert code == 0 and res["verdicts"]["bP-bar"]["inside"] and res["notes"]


def test_classify_batch(run):
    code, out = run("classify", {"points": [{"s": [0, 0], "p": [0, 0]}, {"a": [0.1, 0], "s": [0, 0], "p": [0, 0]}]})
    assert code == 0 and len(out["outputs"]["results"]) == 2


@pytest.mark.parametrize("payload", ["{not json", '{"s": [1, 0]}', '{"s": "x", "p": [0, 0]}', "[1, 2"])
def test_malformed_input_exit_2(run, payload):
    code, out = run("classify", payload)
    assert code == 2 and "error" in out


# --- fejer-riesz ------------------------------------------------------------


@pytest.mark.parametrize(
    "payload, want",
    [
        ({"0": 1}, [1]),
        ({"coeffs": [[-1, 1, 0], [0, 2, 0], [1, 1, 0]]}, [1, 1]),
        ({"coeffs": [[-1, -0.25, 0], [0, 1.5, 0], [1, -0.25, 0]]}, [(1 + math.sqrt(2)) / 2, (1 - math.sqrt(2)) / 2]),
    ],
)
def test_fejer_riesz_cli(run, payload, want):
    code, out = run("fejer-riesz", payload)
    assert code == 0
    D = [complex(*c) for c in out["outputs"]["D"]]
    assert np.allclose(D, want, atol=1e-9)


def test_fejer_riesz_negative_exit_3(run):
    code, _ = run("fejer-riesz", {"0": -1})
    assert code == 3


# --- construct, schwarz, verify, trace --------------------------------------


def test_construct_worked(run):
    code, out = run("construct", {"etas": [[1, 0]], "sigmas": [[0, 0]], "t_plus": 4, "t": 1})
    assert code == 0
    D = [complex(*c) for c in out["outputs"]["x"]["D"]]
    assert np.allclose(D, [R / (R - 1), -1 / (R - 1)])
    assert all(c["passed"] for c in out["checks"])


def test_construct_bad_data_exit_2(run):
    code, _ = run("construct", {"etas": [[2, 0]], "sigmas": [[0, 0]]})
    assert code == 2


def test_schwarz_check_only_infeasible(run):
    prob = {"lambda0": [0.5, 0], "a0": [0, 0], "s0": [1.9, 0], "p0": [0.9, 0]}
    code, out = run("schwarz", prob, "--check-only")
    assert code == 4
    assert out["outputs"]["certificate"]["binding"] == "F <= |lambda0|"


def test_schwarz_solves(run):
    prob = {"lambda0": [0.5, 0], "a0": [0.25, 0], "s0": [0, 0], "p0": [0.5, 0]}
    code, out = run("schwarz", prob)
    assert code == 0 and out["outputs"]["solution"]["construction_path"] == "equality_p_eq"
    code, out = run("schwarz", prob, "--check-only")
    assert code == 0 and "solution" not in out["outputs"]


def test_schwarz_unreachable_exit_5(run):
    a = 0.5 * math.sqrt(1 - 0.25 / 4)
    code, out = run("schwarz", {"lambda0": [0.5, 0], "a0": [a, 0], "s0": [0.5, 0], "p0": [0.1, 0]})
    assert code == 5 and out["error"]["reachable"] < a


def test_verify(run):
    x = io.penta_rep_to_json(power_p_example(2))
    code, out = run("verify", x, "--samples", "256")
    assert code == 0 and out["outputs"]["kind"] == "penta"
    code, out = run("verify", {"E": [[3, 0]], "D": [[1, 0]], "n": 0})
    assert code == 1 and out["outputs"]["kind"] == "gamma"


def test_trace_csv(run, tmp_path):
    x = io.penta_rep_to_json(power_p_example(2))
    dest = tmp_path / "trace.csv"
    code, out = run("trace", x, "--samples", "8", "--out", str(dest))
    assert code == 0 and out["outputs"]["rows"] == 8
    rows = list(csv.reader(stdio.StringIO(dest.read_text())))
    assert rows[0] == list(io.TRACE_HEADER)
    assert len(rows) == 9
    assert all(abs(float(r[-1])) <= 1e-8 for r in rows[1:])


def test_tol_after_subcommand(run):
    code, out = run("classify", {"s": [2.0000001, 0], "p": [1, 0]}, "--tol", "1e-6")
    assert code == 0 and out["outputs"]["result"]["verdicts"]["Gamma"]["inside"]


def test_deterministic_output(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"etas": [[0, 1]], "sigmas": [[0.3, 0]], "betas": [[0.2, 0]]}))
    outs = [
        subprocess.run([sys.executable, "-m", "pentablock", "construct", str(path)], capture_output=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1] and outs[0]
