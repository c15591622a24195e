import contextlib
import io
import json
import subprocess
import sys

import pytest

from orbikit.cli import JobConfig, main, run

FIX = "fixture:"


def cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_h1_text_and_json(capsys):
    code, out, _ = cli(capsys, "h1", "-i", FIX + "seven-line")
    assert code == 0 and out.strip() == "Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2"
    code, out, _ = cli(capsys, "h1", "-i", FIX + "gprime", "--format", "json")
    assert json.loads(out) == {"free_rank": 4, "torsion": [4]}


def test_depth_single_character(capsys):
    code, out, _ = cli(capsys, "depth", "-i", FIX + "p1-236", "--character", "3,2,1", "--level", "6", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["character"] == [3, 2, 1] and doc["depth"] == 1


def test_depth_table_and_charvar(capsys):
    code, out, _ = cli(capsys, "depth", "-i", FIX + "p1-236", "--format", "json")
    assert [r["depth"] for r in json.loads(out)["depths"]] == [1, 0, 0, 0, 1]
    code, out, _ = cli(capsys, "charvar", "-i", FIX + "p1-236", "-k", "1", "--format", "json")
    assert json.loads(out)["characters"] == [[1], [5]]


def test_sakuma_with_oracle(capsys):
    code, out, _ = cli(capsys, "sakuma", "--base", FIX + "p1-236", "--quotient", FIX + "abelianization", "--oracle", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["b1_cover"] == 2 and doc["oracle_b1"] == 2


def test_cover_analyze(capsys):
    code, out, _ = cli(capsys, "cover", "analyze", "--spec", FIX + "p1-235", "--rep", FIX + "icosahedral5", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["upstairs_orbicurve"] == {"genus": 0, "punctures": 0, "indices": [2, 3, 3]}
    assert doc["flags"]["regular"] is False and doc["flags"]["uniformization"] is False


def test_cover_rs_and_fibers(capsys, tmp_path):
    rep = tmp_path / "rep.json"
    rep.write_text(json.dumps({"degree": 3, "images": {"f1": [2, 3, 1], "f2": [1, 3, 2]}}))
    grp = tmp_path / "f2.json"
    grp.write_text(json.dumps({"generators": ["f1", "f2"], "relators": []}))
    code, out, _ = cli(capsys, "cover", "rs", "-i", str(grp), "--rep", str(rep), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["h1"] == {"free_rank": 4, "torsion": []}
    code, out, _ = cli(capsys, "cover", "fibers", "-i", FIX + "degree6-map", "--format", "json")
    assert json.loads(out)["source"]["indices"] == [2] * 6


def test_abelian_cover_and_refusal(capsys):
    code, out, _ = cli(capsys, "abelian-cover", "--indices", "2,3,6", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["genus"] == 1 and doc["degree"] == 6
    assert doc["genus_constant_1"] == {"num": 4, "den": 1}
    code, _, err = cli(capsys, "abelian-cover", "--indices", "2,3,5")
    assert code == 2 and "lcm" in err


def test_saturation_and_restriction(capsys, tmp_path):
    code, out, _ = cli(capsys, "saturation", "-i", FIX + "p1-235", "--rep", FIX + "icosahedral5", "--format", "json")
    rows = json.loads(out)["meridians"]
    assert code == 0 and [r["order_rep"] for r in rows] == [2, 3, 5]
    orb = tmp_path / "orb.json"
    orb.write_text(json.dumps({"indices": [2, 2, 2, 2]}))
    opn = tmp_path / "open.json"
    opn.write_text(json.dumps({"punctures": 4}))
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"p1": "x1", "p2": "x2", "p3": "x3"}))
    code, out, _ = cli(capsys, "restriction", "--orbifold", str(orb), "--open", str(opn), "--matching", str(m), "--format", "json")
    assert code == 0 and len(json.loads(out)["rows"]) == 7


def test_fixture_command(capsys):
    code, out, _ = cli(capsys, "fixture", "seven-line", "--format", "json")
    assert code == 0 and len(json.loads(out)["generators"]) == 7
    code, _, err = cli(capsys, "fixture", "nope")
    assert code == 2 and "unknown fixture" in err


def test_malformed_json_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"generators": ["a",\n ]')
    code, _, err = cli(capsys, "h1", "-i", str(bad))
    assert code == 1 and "line 2 column" in err
    code, _, _ = cli(capsys, "h1", "-i", str(tmp_path / "missing.json"))
    assert code == 1


def test_usage_errors_exit_1():
    for argv in (["h1"], ["depth", "-i", "fixture:p1-236", "--character", "1,2"]):
        with contextlib.redirect_stderr(io.StringIO()) as err, pytest.raises(SystemExit) as e:
            main(argv)
        assert e.value.code == 1 and "error" in err.getvalue()
    with pytest.raises(ValueError):
        JobConfig("h1", jobs=0)


def test_consistency_failure_exit_3(monkeypatch, capsys):
    import orbikit.sakuma as sk

    monkeypatch.setattr(sk, "oracle_b1", lambda q, coset_limit=0: 99)
    code, _, err = cli(capsys, "sakuma", "--base", FIX + "p1-236", "--oracle")
    assert code == 3 and "oracle" in err


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, stdout, _ = cli(capsys, "h1", "-i", FIX + "p1-236", "--format", "json", "-o", str(out))
    assert code == 0 and stdout == "" and json.loads(out.read_text())["torsion"] == [6]


@pytest.mark.parametrize(
    "command,inputs,options",
    [
        ("depth", {"input": "fixture:seven-line"}, {}),
        ("charvar", {"input": "fixture:seven-line"}, {"k": 1}),
        ("sakuma", {"base": "fixture:seven-line"}, {"oracle": True}),
        ("restriction", {"orbifold": "fixture:seven-line", "open": "fixture:seven-line"}, {"k": 1}),
    ],
)
def test_reports_byte_identical_across_jobs(command, inputs, options):
    reports = {run(JobConfig(command, inputs, options, "json", jobs))[1] for jobs in (1, 2, 4)}
    assert len(reports) == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "orbikit", "abelian-cover", "--indices", "2,3,6"], capture_output=True, text=True
    )
    assert res.returncode == 0 and "genus 1" in res.stdout
