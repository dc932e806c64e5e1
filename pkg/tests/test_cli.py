import json
import subprocess
import sys

import pytest

from qutritct.cli import bound_constant, dump_matrix, load_matrix, main, t_count_lower_bound
from qutritct.core import Mat3, word_to_matrix
from qutritct.errors import NotCliffordTError
from qutritct.normal_form import normalize, tp_gate
from qutritct.rings import ONE6, zadd, zrot


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "circuit,want",
    [("T T", "[H2T] C=H2·Z, T-count 1"), ("", "C=Id, T-count 0"), ("T:9", "C=Id, T-count 0")],
)
def test_normalize(capsys, circuit, want):
    code, out, _ = run(capsys, "normalize", circuit)
    assert code == 0 and out.strip() == want


def test_normalize_parse_error(capsys):
    code, _, err = run(capsys, "normalize", "H Q")
    assert code == 1 and "offset 2" in err


def test_normalize_machine(capsys):
    code, out, _ = run(capsys, "normalize", "H T S", "--format", "machine", "--matrix", "--check", "--trace")
    data = json.loads(out)
    assert code == 0 and data["t_count"] == 1
    assert load_matrix(data["matrix"]) == word_to_matrix("H T S")


def _write(tmp_path, m):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(dump_matrix(m) if isinstance(m, Mat3) else m))
    return str(p)


def test_synth_t(capsys, tmp_path):
    code, out, _ = run(capsys, "synth", _write(tmp_path, word_to_matrix("T")))
    assert code == 0 and out.strip() == "[T] C=Id"


def test_synth_identity(capsys, tmp_path):
    code, out, _ = run(capsys, "synth", _write(tmp_path, Mat3.identity()))
    assert code == 0 and out.strip() == "C=Id"


def test_synth_trace(capsys, tmp_path):
    code, out, _ = run(capsys, "synth", _write(tmp_path, word_to_matrix("H T S H T")), "--trace", "--check")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[1].startswith("step 1: n=2") and lines[2].endswith("LDE 2 -> 0")


def test_synth_half_entry(capsys, tmp_path):
    z = [0] * 6
    one = [1, 0, 0, 0, 0, 0]
    doc = {"gamma_exp": 0, "entries": [[["1/2", 0, 0, 0, 0, 0], z, z], [z, one, z], [z, z, one]]}
    code, _, err = run(capsys, "synth", _write(tmp_path, doc))
    assert code == 2 and "unitarity" in err


def test_synth_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, _ = run(capsys, "synth", str(p))
    assert code == 1


@pytest.mark.parametrize("power,stage", [(3, "phase"), (1, "discriminator")])
def test_synth_unitary_outside_clifford_t(capsys, tmp_path, power, stage):
    # diag(1, 1, zeta^power) has determinant != 1, unlike every Clifford+T operator
    m = Mat3.diag(ONE6, ONE6, zrot(ONE6, power))
    code, _, err = run(capsys, "synth", _write(tmp_path, m))
    assert code == 2 and stage in err


def test_load_matrix_with_thirds():
    # T_X = lambda0 I + lambda1 X + lambda2 X^2 with lambda_j = (...)/3 written as fractions
    def third(a, b):
        return [f"{c}/3" for c in zadd(zadd(ONE6, zrot(ONE6, a)), zrot(ONE6, b))]

    lams = (third(1, 8), third(2, 7), third(4, 5))
    # (X^d)_{i,j} = 1 iff i = j + d mod 3
    entries = [[lams[(i - j) % 3] for j in range(3)] for i in range(3)]
    assert load_matrix({"gamma_exp": 0, "entries": entries}) == tp_gate("X", 1)


def test_load_matrix_ring_error():
    one = [1, 0, 0, 0, 0, 0]
    z = [0] * 6
    doc = {"gamma_exp": 0, "entries": [[one, z, z], [z, one, z], [z, z, one]]}
    assert load_matrix(doc) == Mat3.identity()
    doc["entries"][0][0] = ["5/5", 0, 0, 0, 0, 0]
    assert load_matrix(doc) == Mat3.identity()
    with pytest.raises(NotCliffordTError):
        load_matrix({"gamma_exp": 0, "entries": [[["1/2"] + [0] * 5, z, z], [z, one, z], [z, z, one]]})


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "1", "--mod-phase")
    assert code == 0 and len(out.splitlines()) == 1944


def test_enumerate_max_t(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-t", "0", "--format", "machine")
    assert code == 0 and len(out.splitlines()) == 648
    assert json.loads(out.splitlines()[0])["t_count"] == 0


def test_count(capsys):
    assert run(capsys, "count", "3", "--mod-phase")[1].strip() == "74520"
    assert run(capsys, "count", "3")[1].strip() == "223560"
    assert run(capsys, "count", "2", "--max-t", "3")[0] == 1


def test_verify_uniqueness(capsys, tmp_path):
    summary = tmp_path / "s.json"
    code, out, _ = run(capsys, "verify", "uniqueness", "2", "--summary", str(summary))
    assert code == 0 and "0 collisions" in out
    assert json.loads(summary.read_text())["ok"]


def test_verify_adjoint_suites(capsys):
    assert run(capsys, "verify", "symplectic", "--samples", "10")[0] == 0
    assert run(capsys, "verify", "orthogonality", "--samples", "10", "--format", "machine")[0] == 0


def test_convert(capsys):
    assert run(capsys, "convert", "[T]")[1].strip() == "T_Z^1"
    assert run(capsys, "convert", "T_Z^1")[1].strip() == "[T] C=Id"
    code, out, _ = run(capsys, "convert", "H T S H T", "--to", "channel")
    ch = out.strip()
    assert code == 0
    assert run(capsys, "convert", ch)[1].strip() == str(normalize("H T S H T"))


def test_convert_bad_channel(capsys):
    assert run(capsys, "convert", "T_X^1 T_X^1")[0] == 1


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "0.01")
    assert code == 0 and out.startswith("n_min=21 ")
    assert abs(bound_constant() - 0.543) < 1e-3
    assert t_count_lower_bound(0.999)[0] == 0
    assert run(capsys, "bound", "1.5")[0] == 1
    assert run(capsys, "bound", "0")[0] == 1


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_normalize_then_synth_agrees(capsys, tmp_path):
    for circuit in ("H T S H T S S H T", "T X T Z H T", "S S T H T H H T"):
        _, out, _ = run(capsys, "normalize", circuit, "--format", "machine", "--matrix")
        data = json.loads(out)
        path = _write(tmp_path, data["matrix"])
        assert run(capsys, "synth", path)[1].strip() == data["canonical"]


def test_deterministic_output(capsys):
    a = run(capsys, "enumerate", "1")[1]
    b = run(capsys, "enumerate", "1")[1]
    assert a == b


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "qutritct", "normalize", "S T"], capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "[T] C=S, T-count 1"
