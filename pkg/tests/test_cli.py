"""CLI contract: exit codes, fixture handling, golden files, determinism."""

import json
import os
import subprocess
import sys

import pytest

from superpoints.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fx(name):
    return os.path.join(FIXTURES, name)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# check-liesuper


def test_check_liesuper_pass(capsys):
    code, out, _ = run(["check-liesuper", fx("gl11_lie.json")], capsys)
    assert code == 0 and out.startswith("PASS")


def test_check_liesuper_tampered_jacobi(capsys):
    code, out, _ = run(["check-liesuper", fx("tampered_lie.json")], capsys)
    assert code == 1 and "FAIL" in out


def test_check_liesuper_flipped_bracket_with_rho(capsys):
    code, out, _ = run(["check-liesuper", fx("flipped_bracket_lie.json")], capsys)
    assert code == 1 and "rho[Y" in out


def test_check_liesuper_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(["check-liesuper", str(p)], capsys)
    assert code == 2 and "schema error" in err


def test_check_liesuper_unknown_key(tmp_path, capsys):
    with open(fx("gl11_lie.json")) as fh:
        doc = json.load(fh)
    doc["surprise"] = 1
    p = tmp_path / "unknown.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(["check-liesuper", str(p)], capsys)
    assert code == 2 and "unknown keys" in err


# ---------------------------------------------------------------------------
# check-shcp


def test_check_shcp_pass(capsys):
    code, out, _ = run(["check-shcp", fx("gl11_pair.json"), "--samples", "8"], capsys)
    assert code == 0 and out.startswith("PASS")


def test_check_shcp_zero_odd(tmp_path, capsys):
    with open(fx("gl11_pair.json")) as fh:
        doc = json.load(fh)
    doc["lie"]["odd"] = []
    p = tmp_path / "d0.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(["check-shcp", str(p), "--samples", "4"], capsys)
    assert code == 0


def test_check_shcp_ad_unstable(tmp_path, capsys):
    # torus of GL(2|1) with odd line E13+E32: Ad-stability fails
    doc = {
        "schema": 1,
        "even_group": {"name": "diagonal_torus", "p": 2, "q": 1},
        "lie": {
            "schema": 1, "field": "Q", "kind": "constants",
            "d_plus": 3, "d_minus": 1,
            "ee": [[["0", "0", "0"]] * 3] * 3,
            "eo": [[["0"]], [["0"]], [["0"]]],
            "oo": [[["0", "0", "0"]]],
            "q2": [["0", "0", "0"]],
            "shape": [2, 1],
            "rho": {
                "even": [
                    [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]],
                    [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]],
                    [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "1"]],
                ],
                "odd": [
                    [["0", "0", "1"], ["0", "0", "0"], ["0", "1", "0"]],
                ],
            },
        },
    }
    p = tmp_path / "unstable.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(["check-shcp", str(p), "--samples", "8"], capsys)
    assert code == 1 and "Ad-stability" in out


# ---------------------------------------------------------------------------
# normal-form


def test_normal_form_identity_word(tmp_path, capsys):
    p = tmp_path / "id.json"
    p.write_text(json.dumps({"schema": 1, "tokens": []}))
    code, out, _ = run(["normal-form", "--pair", fx("gl11_pair.json"),
                        "--coeff", fx("coeff_l2.json"), "--word", str(p)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["etas"] == ["0", "0"]
    assert doc["g_plus"] == [["1", "0"], ["0", "1"]]


def test_normal_form_swap_word_oracles_agree(capsys):
    code, out, _ = run(["normal-form", "--pair", fx("gl11_pair.json"),
                        "--coeff", fx("coeff_l2.json"),
                        "--word", fx("swap_word.json"),
                        "--oracle", "both"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["etas"] == ["1 * x{2}", "1 * x{1}"]
    assert doc["g_plus"][0][0] == "1 + -1 * x{1,2}"


def test_normal_form_field_shortcut_and_trace(capsys):
    code, out, _ = run(["normal-form", "--pair", fx("gl11_pair.json"),
                        "--field", "Q", "--grassmann-rank", "2",
                        "--word", fx("swap_word.json"),
                        "--oracle", "rewrite", "--trace"], capsys)
    assert code == 0
    assert "# swapped" in out or "# merged" in out


def test_normal_form_golden_roundtrip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SUPERPOINTS_GOLDEN_DIR", str(tmp_path))
    args = ["normal-form", "--pair", fx("gl11_pair.json"),
            "--coeff", fx("coeff_l2.json"), "--word", fx("swap_word.json"),
            "--golden", "swap_word_nf.json"]
    code, out1, err = run(args, capsys)
    assert code == 0 and "created" in err
    code, out2, err = run(args, capsys)
    assert code == 0 and err == ""
    assert out1 == out2  # byte-stable across runs


# ---------------------------------------------------------------------------
# verify


def test_normal_form_oracle_disagreement_exits_3(capsys, monkeypatch):
    """The exit-3 contract: if the two routes ever disagreed, the CLI must
    report an internal invariant breach (forced here by stubbing a route)."""
    import superpoints.cli as cli_mod
    from superpoints import NormalForm
    from superpoints.serialize import load_coeff, load_pair, loads

    with open(fx("gl11_pair.json")) as fh:
        pair = load_pair(loads(fh.read()))
    with open(fx("coeff_l2.json")) as fh:
        algebra = load_coeff(loads(fh.read()))
    def stub(word, stats=None):
        return NormalForm.identity(word.pair, word.algebra)

    monkeypatch.setattr(cli_mod, "reorder_symbolic", stub)
    code, _, err = run(["normal-form", "--pair", fx("gl11_pair.json"),
                        "--coeff", fx("coeff_l2.json"),
                        "--word", fx("swap_word.json"), "--oracle", "both"], capsys)
    assert code == 3 and "DISAGREEMENT" in err


def test_normal_form_matches_committed_golden(capsys, monkeypatch):
    """The swap-word normal form must stay byte-identical to the golden
    file under version control (serialization stability)."""
    monkeypatch.setenv("SUPERPOINTS_GOLDEN_DIR", os.path.join(FIXTURES, "golden"))
    code, _, err = run(["normal-form", "--pair", fx("gl11_pair.json"),
                        "--coeff", fx("coeff_l2.json"),
                        "--word", fx("swap_word.json"),
                        "--golden", "swap_word_nf.json"], capsys)
    assert code == 0 and err == ""


def test_verify_suite_pass(capsys):
    code, out, _ = run(["verify", "pbw", "--seed", "1"], capsys)
    assert code == 0 and "PASS" in out


def test_verify_deterministic_with_seed(capsys):
    code1, out1, _ = run(["verify", "pbw", "--seed", "3", "--json"], capsys)
    code2, out2, _ = run(["verify", "pbw", "--seed", "3", "--json"], capsys)
    assert code1 == code2 == 0 and out1 == out2


def test_verify_unknown_suite(capsys):
    code, _, err = run(["verify", "no-such-suite"], capsys)
    assert code == 2 and "unknown suite" in err


# ---------------------------------------------------------------------------
# fixture schema coverage


def test_coeff_fixture_variants():
    from superpoints import DualExtension, GrassmannAlgebra, SuperNumbers
    from superpoints.serialize import dump_coeff, load_coeff

    for spec, cls in (
        ({"type": "grassmann", "field": "F3", "rank": 4}, GrassmannAlgebra),
        ({"type": "super_numbers", "field": "Q"}, SuperNumbers),
        ({"type": "dual", "inner": {"type": "grassmann", "field": "Q", "rank": 2}},
         DualExtension),
    ):
        alg = load_coeff(spec)
        assert isinstance(alg, cls)
        assert load_coeff(dump_coeff(alg)) == alg


def test_coeff_fixture_rejects_unknowns():
    from superpoints import SchemaError
    from superpoints.serialize import load_coeff

    with pytest.raises(SchemaError):
        load_coeff({"type": "grassmann", "field": "Q", "rank": 2, "extra": 1})
    with pytest.raises(SchemaError):
        load_coeff({"type": "polynomial", "field": "Q"})


def test_word_fixture_is_one_based():
    from superpoints.serialize import load_coeff, load_pair, load_word, loads

    with open(fx("gl11_pair.json")) as fh:
        pair = load_pair(loads(fh.read()))
    with open(fx("coeff_l2.json")) as fh:
        algebra = load_coeff(loads(fh.read()))
    word = load_word({"schema": 1, "tokens": [{"odd": [2, "1 * x{1}"]}]},
                     pair, algebra)
    assert word.tokens[0].index == 1


# ---------------------------------------------------------------------------
# module entry point


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "superpoints.cli", "verify", "pbw"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
