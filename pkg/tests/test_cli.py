import io
import json
import subprocess
import sys

import numpy as np
import pytest

from elasinv import cli, conversions
from elasinv import tensor_core as tc
from elasinv.elasticity import decompose, from_voigt, isotropic, to_voigt
from elasinv.genericity import genericity_report
from elasinv.io import parse_tensor


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, argv in (("generic", ["gen", "--seed", "1"]),
                       ("iso", ["gen", "--kind", "isotropic", "--seed", "2"])):
        code, text = run(*argv)
        assert code == 0
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(text)
    code, text = run("gen", "--kind", "rotated-copy", "--input", str(paths["generic"]),
                     "--seed", "3")
    paths["rotated"] = tmp_path / "rotated.json"
    paths["rotated"].write_text(text)
    E = parse_tensor(paths["generic"].read_text())
    P = parse_tensor(run("gen", "--seed", "4")[1])
    paths["perturbed"] = tmp_path / "perturbed.json"
    paths["perturbed"].write_text(json.dumps(
        {"voigt": to_voigt(E + 1e-3 * P * tc.norm(E) / tc.norm(P)).tolist()}))
    paths["zero"] = tmp_path / "zero.txt"
    paths["zero"].write_text("\n".join(" ".join(["0"] * 6) for _ in range(6)))
    return paths


def test_gen_is_deterministic():
    assert run("gen", "--seed", "9") == run("gen", "--seed", "9")
    assert run("gen", "--seed", "9") != run("gen", "--seed", "10")


def test_gen_isotropic_passes_isotropy_check(files):
    dec = decompose(parse_tensor(files["iso"].read_text()))
    assert tc.norm(dec.H) < 1e-14 and tc.norm(dec.d_prime) < 1e-14


def test_gen_generic_is_generic():
    for seed in range(10):
        E = parse_tensor(run("gen", "--seed", str(seed))[1])
        assert genericity_report(decompose(E).H).generic


def test_rotated_copy_emits_rotation(files):
    data = json.loads(files["rotated"].read_text())
    g = np.array(data["rotation"])
    E = parse_tensor(files["generic"].read_text())
    assert np.allclose(tc.rotate(g, E), from_voigt(np.array(data["voigt"])))


def test_decompose_isotropic_and_zero(files):
    code, text = run("decompose", str(files["iso"]))
    d = json.loads(text)
    assert code == 0 and d["norms"]["H"] < 1e-14 and d["norms"]["d_prime"] < 1e-14
    code, text = run("decompose", str(files["zero"]), "--reconstruct")
    d = json.loads(text)
    assert code == 0 and d["lambda"] == 0 and d["round_trip_error"] == 0


def test_decompose_round_trip_flag(files):
    d = json.loads(run("decompose", str(files["generic"]), "--reconstruct")[1])
    assert d["round_trip_error"] < 1e-12


def test_invariants_output(files):
    code, text = run("invariants", str(files["zero"]))
    vals = json.loads(text)["invariants"]
    assert code == 0 and len(vals) == 21 and all(v["value"] == 0 for v in vals)
    assert run("invariants", str(files["generic"])) == run("invariants", str(files["generic"]))
    code, text = run("invariants", str(files["generic"]), "--set", "s19")
    assert code == 0 and len(json.loads(text)["invariants"]) == 19


def test_invariants_s18_non_generic(files):
    code, text = run("invariants", str(files["iso"]), "--set", "s18")
    assert code == 3 and json.loads(text)["genericity"]["generic"] is False


def test_genericity_command(files):
    assert run("genericity", str(files["generic"]))[0] == 0
    assert run("genericity", str(files["iso"]))[0] == 3


def test_compare_exit_codes(files):
    code, text = run("compare", str(files["generic"]), str(files["rotated"]), "--recover-rotation")
    d = json.loads(text)
    assert code == 0 and d["decision"] == "Equivalent"
    data = json.loads(files["rotated"].read_text())
    assert np.allclose(d["rotation"], data["rotation"], atol=1e-8)
    code, text = run("compare", str(files["generic"]), str(files["perturbed"]))
    assert code == 1 and json.loads(text)["decision"] == "Distinct"
    assert run("compare", str(files["iso"]), str(files["iso"]))[0] == 3


def test_text_format(files):
    code, text = run("invariants", str(files["generic"]), "--format", "text")
    assert code == 0 and text.startswith("set: s21")


def test_parse_errors(tmp_path, files):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    assert run("decompose", str(bad))[0] == 64
    assert run("decompose", str(tmp_path / "missing.json"))[0] == 64
    bad.write_text('{"voigt": [[1, 2], [3, 4]]}')
    assert run("decompose", str(bad))[0] == 64
    with pytest.raises(SystemExit) as info:
        run("decompose")
    assert info.value.code == 64
    assert run("compare", str(files["generic"]), str(files["generic"]), "--tol", "-1")[0] == 64


def test_components_format(tmp_path):
    E = isotropic(1.0, 2.0)
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"components": E.reshape(-1).tolist()}))
    d = json.loads(run("decompose", str(path))[1])
    assert np.isclose(d["lambda"], 3 * (3 + 4))


def test_selfcheck_subset():
    code, text = run("selfcheck", "--only", "i_from_j", "basis_determinant")
    d = json.loads(text)
    assert code == 0 and d["passed"] and [c["name"] for c in d["checks"]] == ["i_from_j", "basis_determinant"]


def test_selfcheck_detects_corrupted_coefficient(monkeypatch, capsys):
    den, terms = conversions.I_FROM_J["I9"]
    corrupted = [(num + 1 if mono == (5, 2, 2) else num, mono) for num, mono in terms]
    monkeypatch.setitem(conversions.I_FROM_J, "I9", (den, corrupted))
    code, text = run("selfcheck", "--only", "i_from_j", "j_from_i")
    assert code == 2
    failed = [c["name"] for c in json.loads(text)["checks"] if not c["passed"]]
    assert failed == ["i_from_j"]
    assert "i_from_j" in capsys.readouterr().err


def test_selfcheck_unknown_name():
    assert run("selfcheck", "--only", "nope")[0] == 64


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "elasinv", "genericity", str(files["generic"])],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["generic"] is True
