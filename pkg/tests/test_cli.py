import csv
import json
import os
import subprocess
import sys

import pytest

from eorbit.cli import dumps, main
from eorbit.efunctions import E
from eorbit.rootsystem import build
from eorbit.transforms import auto_spectrum, grid_tm


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orbit_command(capsys):
    code, out, _ = run(capsys, "orbit", "A2", "1,1", "--even")
    assert code == 0
    data = json.loads(out)
    assert len(data["points"]) == 3 and data["rep"] == ["1", "1"]


def test_full_orbit_command(capsys):
    code, out, _ = run(capsys, "orbit", "G2", "1,0")
    assert code == 0 and len(json.loads(out)["points"]) == 6


def test_grid_command(capsys):
    code, out, _ = run(capsys, "grid", "G2", "--M", "2", "--even", "--json")
    assert code == 0 and len(json.loads(out)["points"]) == 3


def test_group_command(capsys):
    code, out, _ = run(capsys, "group", "A2", "--json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 6 and data["evenOrder"] == 3
    code, out, _ = run(capsys, "group", "B3")
    assert code == 0 and "48" in out and "24" in out


def test_product_and_branch_commands(capsys):
    code, out, _ = run(capsys, "product", "A2", "2,0", "2,0")
    terms = {tuple(t["rep"]): t["mult"] for t in json.loads(out)["terms"]}
    assert code == 0 and terms == {("4", "0"): 1, ("0", "2"): 2}
    code, out, _ = run(capsys, "branch", "C3", "1,2,3", "--to", "C2")
    a = json.loads(out)
    code2, out2, _ = run(capsys, "branch", "C3", "1,2,3", "--to", "C2", "--route", "cosets")
    assert code == code2 == 0 and a == json.loads(out2)
    code, out, _ = run(capsys, "branch", "G2", "1,2", "--roots", "[[1,0],[1,3]]")
    assert code == 0 and sum(t["mult"] for t in json.loads(out)["terms"]) == 2


def test_eval_command(capsys):
    code, out, _ = run(capsys, "eval", "A2", "--lambda", "1,0", "--point", "0,0", "--point", "1/3,1/2")
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and rows[0] == ["x1", "x2", "re", "im"]
    assert rows[1] == ["0", "0", "3", "0"]
    v = E(build("A2"), (1, 0), (1 / 3, 1 / 2))
    assert complex(float(rows[2][2]), float(rows[2][3])) == pytest.approx(v, abs=1e-15)


def test_symfunc_command(capsys):
    code, out, _ = run(capsys, "symfunc", "hermite", "--n", "2", "--m", "1,0", "--point", "0.5,2")
    assert code == 0 and out.splitlines()[1].split(",")[-1] == "1"


def test_dft_round_trip(tmp_path, capsys):
    s = build("A2")
    m = 5
    spec = auto_spectrum(s, m)
    samples = tmp_path / "f.csv"
    with open(samples, "w", newline="") as fh:
        w = csv.writer(fh)
        for p in grid_tm(s, m).points:
            v = 2 * E(s, spec[1], p) - 1j * E(s, spec[4], p)
            w.writerow([str(c) for c in p] + [repr(v.real), repr(v.imag)])
    coeffs = tmp_path / "c.json"
    code, _, _ = run(capsys, "dft", "analyze", "A2", "--m", str(m), "--samples", str(samples),
                     "--out", str(coeffs))
    assert code == 0
    got = {tuple(item["lambda"]): complex(item["re"], item["im"]) for item in json.load(open(coeffs))}
    key = lambda lam: tuple(str(c) for c in lam)
    assert abs(got[key(spec[1])] - 2) < 1e-10 and abs(got[key(spec[4])] + 1j) < 1e-10
    code, out, _ = run(capsys, "dft", "synthesize", "A2", "--coeffs", str(coeffs), "--point", "1/5,2/5")
    v = complex(*map(float, out.splitlines()[1].split(",")[2:]))
    p = (0.2, 0.4)
    assert code == 0 and v == pytest.approx(2 * E(s, spec[1], p) - 1j * E(s, spec[4], p), abs=1e-9)


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "orthogonality")
    assert code == 0 and out.count("PASS") == 3 and "FAIL" not in out


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "orbit", "A2", "1")
    assert code == 1 and err.startswith("RankMismatch")
    code, _, err = run(capsys, "group", "B2")
    assert code == 1 and err.startswith("InvalidDiagram")
    code, _, err = run(capsys, "branch", "G2", "1,1", "--to", "A1")
    assert code == 1 and err.startswith("UnsupportedBranch")


def test_usage_error_exit_code(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "orbit", "A2", "x,y")[0] == 2
    assert run(capsys, "grid", "A2")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "eval", "A2", "--lambda", "1,0")[0] == 2


@pytest.mark.parametrize("argv", [
    ["orbit", "C3", "1,2,3", "--even"],
    ["group", "G2", "--json"],
    ["product", "G2", "1,1", "0,1"],
    ["grid", "C2", "--M", "3", "--even", "--json", "--stabilizers"],
])
def test_json_round_trip_is_byte_identical(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert dumps(json.loads(out)) + "\n" == out


def test_float_formatting_round_trips():
    for v in [0.1, 1 / 3, -2.5e-17, 12345.678901234567]:
        assert float(dumps(v)) == v


def _cli(argv, threads):
    env = dict(os.environ, EORBIT_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "eorbit.cli", *argv], env=env, capture_output=True, text=True)


def test_output_independent_of_thread_count():
    argv = ["eval", "G2", "--lambda", "2,1"] + [a for k in range(12) for a in ("--point", f"{k}/7,{k}/11")]
    outs = {_cli(argv, t).stdout for t in (1, 4)}
    assert len(outs) == 1 and outs.pop().count("\n") == 13


def test_bad_thread_setting():
    assert _cli(["group", "A2"], "zero").returncode == 2
