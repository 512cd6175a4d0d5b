import json
import subprocess
import sys

import pytest

from cubal.cli import main
from cubal.cubic import CubicTable, intervals

from conftest import power


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("m, size", [(1, "3"), (2, "45"), (3, "56943")])
def test_size(capsys, m, size):
    code, out, _ = run(capsys, "size", "--generators", str(m))
    assert code == 0
    assert out.strip() == size


def test_size_zero_is_usage_error(capsys):
    code, out, err = run(capsys, "size", "--generators", "0")
    assert code == 2
    assert "non-empty" in err and out == ""


def test_size_table(capsys):
    code, out, _ = run(capsys, "size", "--table", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert lines[-1].split() == ["3", "13", "56943", "3^64"]


def test_size_table_json_is_exact(capsys):
    code, out, _ = run(capsys, "size", "--table", "8", "--json")
    rows = json.loads(out)["table"]
    from cubal.counting import free_algebra_size

    assert rows[-1]["size"] == free_algebra_size(8)
    assert rows[-1]["upper_bound"] == {"base": 3, "exponent": 2**16}


def test_size_needs_an_argument(capsys):
    code, _, err = run(capsys, "size")
    assert code == 2 and "--generators" in err


def test_build_k1(capsys):
    code, out, _ = run(capsys, "build", "--k", "1")
    assert code == 0
    assert "atoms: 4" in out
    assert "σ_1 = τ_1 = 0: OK" in out
    assert "I_0 = [[], [0]]" in out


def test_build_k5(capsys):
    code, out, _ = run(capsys, "build", "--k", "5")
    assert code == 0 and "atoms: 364" in out and "|L(X)|" not in out


def test_build_enumerate(capsys):
    code, out, _ = run(capsys, "build", "--k", "2", "--enumerate")
    assert code == 0 and "|L(X)| = 56943" in out


def test_build_enumerate_limit(capsys):
    code, _, err = run(capsys, "build", "--k", "3", "--enumerate")
    assert code == 2 and "infeasible" in err


def test_build_out_json(capsys, tmp_path):
    path = tmp_path / "b1.json"
    code, out, _ = run(capsys, "build", "--k", "1", "--enumerate", "--out", str(path), "--json")
    data = json.loads(path.read_text())
    assert data["atom_count"] == 4 and data["lx_size"] == 45 and data["sigma_tau_zero"]
    assert json.loads(out) == data


def test_verify_k1(capsys):
    code, out, _ = run(capsys, "verify", "--k", "1")
    assert code == 0
    assert "FAIL" not in out and "all checks passed" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--k", "0", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["generation"]["closure_size"] == 3


def test_verify_k2_needs_long(capsys):
    code, _, err = run(capsys, "verify", "--k", "2")
    assert code == 2 and "--long" in err


def write_interval_table(path, n):
    T = CubicTable.from_intervals(list(intervals(power(n))))
    path.write_text(T.dumps())
    return T


def test_check_interval_algebra(capsys, tmp_path):
    path = tmp_path / "i_b2.json"
    write_interval_table(path, 2)
    code, out, _ = run(capsys, "check", "--input", str(path))
    assert code == 0
    assert "cubic: pass" in out and "MR: pass" in out


def test_check_corrupted_delta(capsys, tmp_path):
    path = tmp_path / "bad.json"
    T = write_interval_table(path, 2)
    data = json.loads(path.read_text())
    leq = T.leq_matrix()
    for row in data["delta"]:
        y, x, _ = row
        if x != y and leq[x, y]:
            row[2] = y
            break
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", "--input", str(path), "--json")
    assert code == 1
    report = json.loads(out)
    by_name = {r["name"]: r for r in report["cubic"]["results"]}
    assert not by_name["(c)"]["passed"] and by_name["(c)"]["witness"]


def test_check_lx_fails_mr(capsys, tmp_path):
    path = tmp_path / "lx1.json"
    assert main(["export", "--k", "1", "--what", "table", "--out", str(path)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "check", "--input", str(path))
    assert code == 1
    assert "cubic: pass" in out and "MR: FAIL" in out and "witness=" in out


@pytest.mark.parametrize(
    "text, where",
    [("{\n  \"carrier\": 2,\n  oops", "line 3 column 3"), ('{"carrier": 1, "one": 0, "join": [[0]], "delta": [[0]]}', "delta[0]")],
)
def test_check_malformed(capsys, tmp_path, text, where):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, _, err = run(capsys, "check", "--input", str(path))
    assert code == 2 and where in err


def test_check_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", "--input", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_export_table_k0(capsys, tmp_path):
    path = tmp_path / "t0.json"
    code, _, _ = run(capsys, "export", "--k", "0", "--what", "table", "--out", str(path))
    assert code == 0
    T = CubicTable.loads(path.read_text())
    assert T.n == 3


def test_export_atoms_k1(capsys, tmp_path):
    path = tmp_path / "a1.json"
    run(capsys, "export", "--k", "1", "--what", "atoms", "--out", str(path))
    data = json.loads(path.read_text())
    assert data["generators"] == ["s0", "s1", "t0", "t1"]
    assert len(data["atom_labels"]) == 4


def test_export_hasse_k1(capsys, tmp_path):
    path = tmp_path / "h1.dot"
    run(capsys, "export", "--k", "1", "--what", "hasse", "--out", str(path))
    dot = path.read_text()
    assert dot.count("[label=") == 45
    # structural covers agree with the covers of the tabulated order
    from cubal.free import build

    T = CubicTable.from_intervals(build(1).LX)
    assert dot.count("->") == T.to_dot().count("->")


def test_export_table_limit(capsys, tmp_path):
    code, _, err = run(capsys, "export", "--k", "2", "--what", "table", "--out", str(tmp_path / "x"))
    assert code == 2 and "infeasible" in err


def test_export_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(capsys, "export", "--k", "1", "--what", "table", "--out", str(p))
    assert a.read_bytes() == b.read_bytes()


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["size", "--generators", "2", "--bogus"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cubal", "size", "--generators", "2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.strip() == "45"
