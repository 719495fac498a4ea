import csv
import io
import json

import pytest

from towercalc.cli import main
from towercalc.expansion import MaxwellPair
from towercalc.forms import Form
from towercalc.indices import enumerate_excluded
from towercalc.ring import qq
from towercalc.towers import TowerContext, TowerIndex


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def build_file(tmp_path, capsys, *extra):
    path = tmp_path / "fams.json"
    argv = ["build", "--n", "3", "--q", "1", "--sign", "both",
            "--sigma-max", "1", "--floors", "2", "--out", str(path)] + list(extra)
    code, _, _ = run(capsys, *argv)
    assert code == 0
    return path


def test_build_emits_schema_and_is_deterministic(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    for p in (p1, p2):
        code, out, err = run(capsys, "build", "--n", "3", "--q", "0",
                             "--sigma", "1", "--floors", "2", "--out", str(p))
        assert code == 0
    b1, b2 = p1.read_bytes(), p2.read_bytes()
    assert b1 == b2
    assert b1.endswith(b"\n")
    obj = json.loads(b1)
    assert obj["schema"] == "towercalc/1"
    assert obj["kind"] == "tower_family_set"
    assert len(obj["families"]) == 2          # both signs at sigma = 1


def test_build_rejects_even_dimension(capsys):
    code, out, err = run(capsys, "build", "--n", "4", "--q", "1")
    assert code == 2
    assert "even dimension" in err


def test_verify_passes_on_fresh_build(tmp_path, capsys):
    path = build_file(tmp_path, capsys)
    code, out, err = run(capsys, "verify", str(path))
    assert code == 0
    lines = [l for l in out.splitlines() if l]
    assert lines and all(l.startswith("PASS") for l in lines)
    assert any("rot-ladder" in l for l in lines)
    assert any("div-ladder" in l for l in lines)
    # harmonicity adds its own named checks
    code2, out2, _ = run(capsys, "verify", str(path), "--harmonicity")
    assert code2 == 0
    assert len(out2.splitlines()) > len(lines)


def test_verify_detects_single_coefficient_tamper(tmp_path, capsys):
    path = build_file(tmp_path, capsys)
    obj = json.loads(path.read_text())
    # scale one stored coefficient of one floor member
    fam = obj["families"][0]
    floor = fam["d_floors"][1][0]
    comp = next(iter(floor["components"].values()))
    term = comp[0]["terms"][0]
    num, _, den = term["coef"].partition("/")
    term["coef"] = f"{int(num) * 3}{'/' + den if den else ''}"
    path.write_text(json.dumps(obj))
    code, out, err = run(capsys, "verify", str(path), "--no-independence")
    assert code == 1
    bad = [l for l in out.splitlines() if l.startswith("FAIL")]
    assert bad
    named = ("rot-ladder", "div-ladder", "canonical-rebuild",
             "div-free-d-line", "rot-free-r-line", "floor-homogeneity",
             "seed-closedness")
    assert any(any(nm in l for nm in named) for l in bad)
    assert all("family(n=3,q=1" in l for l in bad)


def test_verify_rejects_wrong_document_kind(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "something_else"}))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "expected a tower_family" in err


def test_missing_and_malformed_files(tmp_path, capsys):
    code, _, err = run(capsys, "verify", str(tmp_path / "nope.json"))
    assert code == 2 and "not found" in err
    bad = tmp_path / "broken.json"
    bad.write_text('{"kind": "tower_family",')
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2
    assert "line 1" in err and "column" in err


def pair_file(tmp_path, ctx, parts, name="pair.json"):
    q = 1
    e = Form.zero(3, q)
    h = Form.zero(3, q + 1)
    for side, idx, c in parts:
        if side == "e":
            e = e + ctx.d_form(q, idx).scale(qq(c))
        else:
            h = h + ctx.r_form(q + 1, idx).scale(qq(c))
    path = tmp_path / name
    path.write_text(json.dumps(MaxwellPair(e, h).to_obj()))
    return path


def test_expand_round_trip_via_cli(tmp_path, capsys, ctx3):
    path = pair_file(tmp_path, ctx3,
                     [("e", TowerIndex(1, 1, 1, 2), "3/7"),
                      ("h", TowerIndex(-1, 0, 0, 1), "2")])
    code, out, err = run(capsys, "expand", "--input", str(path),
                         "--floors", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "expansion" and obj["exact"] is True
    coeffs = {(r["sign"], r["k"], r["sigma"], r["m"]): r["coeff"]
              for r in obj["e"]["coeffs"]}
    assert coeffs == {("+", 1, 1, 2): "3/7"}


def test_expand_membership_flag(tmp_path, capsys, ctx3):
    path = pair_file(tmp_path, ctx3, [("e", TowerIndex(1, 0, 1, 1), "2")])
    code, out, err = run(capsys, "expand", "--input", str(path),
                         "--floors", "2", "--weight", "0")
    assert code == 0
    obj = json.loads(out)
    assert obj["membership"]["passed"] is False
    assert obj["membership"]["e_offending"]
    assert "membership at s=0: FAIL" in err
    assert "offending E index" in err


def test_expand_rejects_non_static_pair(tmp_path, capsys):
    from towercalc.ring import RadialRingElement
    x1 = RadialRingElement.variable(3, 1)
    pair = MaxwellPair(Form.dx(3, (1,), x1), Form.zero(3, 2))
    path = tmp_path / "ns.json"
    path.write_text(json.dumps(pair.to_obj()))
    code, out, err = run(capsys, "expand", "--input", str(path),
                         "--floors", "2")
    assert code == 1
    assert "FAIL expand" in err


def test_classify_command(tmp_path, capsys, ctx3):
    form = ctx3.d_form(1, TowerIndex(-1, 0, 0, 1))
    path = tmp_path / "form.json"
    path.write_text(json.dumps(form.to_obj()))
    code, out, err = run(capsys, "classify", "--input", str(path),
                         "--weight", "0")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "classification"
    assert obj["class"] == "both"
    assert obj["weight"] == "0"


def test_indices_csv_matches_library(capsys):
    code, out, err = run(capsys, "indices", "--n", "3", "--q", "1",
                         "--line", "D", "--max-floor", "2", "--weight", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["sign", "k", "sigma", "m", "degree"]
    want = enumerate_excluded(3, 1, "D", 2, qq(2))
    assert len(rows) - 1 == len(want)
    got_first = rows[1]
    assert got_first[0] == "-" and int(got_first[1]) == want[0].k


def test_indices_warns_on_exceptional_weight(capsys):
    code, out, err = run(capsys, "indices", "--n", "3", "--q", "1",
                         "--line", "D", "--max-floor", "1", "--weight", "3/2")
    assert code == 0
    assert "theorems inapplicable" in err


def test_indices_rejects_bad_rational(capsys):
    code, _, err = run(capsys, "indices", "--n", "3", "--q", "1",
                       "--line", "D", "--max-floor", "1", "--weight", "w0t")
    assert code == 2
    assert "not a rational" in err


def test_weights_csv(capsys):
    code, out, err = run(capsys, "weights", "--n", "3", "--list", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["weight"]
    vals = [r[0] for r in rows[1:]]
    assert "3/2" in vals and "-1/2" in vals
    assert len(vals) == 6


def test_iterate_command(tmp_path, capsys):
    seed = {"schema": "towercalc/1", "kind": "profile_seed",
            "f_coeffs": [{"sign": "-", "k": 0, "sigma": 0, "m": 1,
                          "coeff": "2"}],
            "g_coeffs": []}
    spath = tmp_path / "seed.json"
    spath.write_text(json.dumps(seed))
    code, out, err = run(capsys, "iterate", "--n", "3", "--q", "1",
                         "--weight", "2", "--power", "2", "--tau", "10",
                         "--seed", str(spath))
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "iteration"
    assert len(obj["profiles"]) == 3
    assert obj["range"]["power"] == 2


def test_iterate_rejects_exceptional_weight(capsys):
    code, _, err = run(capsys, "iterate", "--n", "3", "--q", "1",
                       "--weight", "3/2", "--power", "1", "--tau", "10")
    assert code == 2
    assert "inadmissible" in err


def test_dims_table(capsys):
    code, out, err = run(capsys, "dims", "--n", "3", "--sigma-max", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["q\\sigma", "0", "1", "2"]
    # middle ranks 2 sigma + 3; extremes collapse to the constant slot
    assert rows[1] == ["0", "1", "0", "0"]
    assert rows[2] == ["1", "3", "5", "7"]
    assert rows[4] == ["3", "1", "0", "0"]


def test_usage_exit_code_for_unknown_command(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_out_flag_writes_file_not_stdout(tmp_path, capsys):
    path = tmp_path / "dims.csv"
    code, out, err = run(capsys, "dims", "--n", "3", "--sigma-max", "1",
                         "--out", str(path))
    assert code == 0
    assert out == ""
    assert path.read_text().startswith("q\\sigma")
