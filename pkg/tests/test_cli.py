import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmix.cli import main
from qmix.graphspec import GraphSpec
from qmix.report import run_check


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize("text,canonical", [
    ("hamming 3 3", "hamming 3 3"),
    ("  hamming   2   4 ", "hamming 2 4"),
    ("quotient q3 gens=1,1,1,0,0; 0,0,1,1,1", "quotient q3 gens=1,1,1,0,0;0,0,1,1,1"),
    ("distance 9 3 classes=8,2", "distance 9 3 2,8"),
    ("union3 2 1", "union3 2 1"),
    ("union3 2 1 d=5", "union3 2 1"),
    ("union3 2 1 d=4", "union3 2 1 d=4"),
    ("star 4", "star 4"),
    ("claw-power 2", "claw-power 2"),
    ("folded 3 3", "folded 3 3"),
    ("cartesian [hamming 1 2]   [star 3]", "cartesian [hamming 1 2] [star 3]"),
])
def test_graphspec_canonical(text, canonical):
    spec = GraphSpec.parse(text)
    assert spec.render() == canonical
    assert GraphSpec.parse(spec.render()) == spec


@given(st.integers(1, 9), st.integers(2, 7))
def test_graphspec_roundtrip_property(d, q):
    for text in (f"hamming {d} {q}", f"distance {d} {q} {d}", f"star {d}"):
        assert GraphSpec.parse(GraphSpec.parse(text).render()).render() == GraphSpec.parse(text).render()


@pytest.mark.parametrize("bad", ["", "hamming 3", "quotient 3 gens=1,1,1", "cartesian [star 3]",
                                 "cartesian [star 3", "teapot 1", "distance 4 3"])
def test_graphspec_errors(bad):
    with pytest.raises(ValueError):
        GraphSpec.parse(bad)


def test_quotient_from_file(tmp_path):
    f = tmp_path / "gens.txt"
    f.write_text("1,1,1,0,0\n0,0,1,1,1\n")
    spec = GraphSpec.parse(f"quotient q3 file={f}")
    assert spec.render() == "quotient q3 gens=1,1,1,0,0;0,0,1,1,1"


def test_cayley_from_file(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"q": 3, "d": 1, "elements": [[1], [2]]}))
    assert run_check(f"cayley-from-file {f}", "2pi/9")["flat"]


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", "--graph", "hamming 3 3", "--time", "2pi/9")
    r = rows(out)[0]
    assert code == 0 and r["flat"] and r["method"] == "character-sum" and r["graph"] == "hamming 3 3"
    code, out, _ = run(capsys, "check", "--graph", "quotient q3 gens=1,1,1,0,0;0,0,1,1,1",
                       "--time", "2pi/9", "--cross-check")
    r = rows(out)[0]
    assert r["flat"] and r["symbolic"] and r["symbolic_agrees"] and r["cross_check"]["agrees"]
    code, out, _ = run(capsys, "check", "--graph", "star 4", "--time", "real:0.5")
    r = rows(out)[0]
    assert code == 0 and not r["flat"] and "witness" in r


def test_check_not_flat_still_exit_zero(capsys):
    code, out, _ = run(capsys, "check", "--graph", "hamming 2 3", "--time", "pi/4")
    assert code == 0 and not rows(out)[0]["flat"]


def test_errors_exit_nonzero(capsys):
    code, _, err = run(capsys, "check", "--graph", "hamming 3", "--time", "pi/4")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "check", "--graph", "quotient q3 gens=1,1,0", "--time", "2pi/9")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["check", "--graph", "hamming 2 2"])
    assert exc.value.code == 2


def test_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("QMIX_CAP", "10")
    code, _, err = run(capsys, "check", "--graph", "hamming 3 3", "--time", "2pi/9")
    assert code == 1 and "QMIX_CAP" in err


def test_csv_output(capsys):
    code, out, _ = run(capsys, "krawtchouk", "--d", "3", "--q", "3", "--format", "csv")
    table = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["r1"] for r in table] == ["6", "3", "0", "-3"]


def test_krawtchouk_json(capsys):
    _, out, _ = run(capsys, "krawtchouk", "--d", "2", "--q", "2")
    assert rows(out) == [{"s": 0, "r0": 1, "r1": 2, "r2": 1}, {"s": 1, "r0": 1, "r1": 0, "r2": -1},
                         {"s": 2, "r0": 1, "r1": -2, "r2": 1}]


def test_survey_known_examples(capsys):
    code, out, _ = run(capsys, "survey", "--known-examples")
    rs = rows(out)
    summary = rs[-1]
    assert code == 0 and summary["summary"] and summary["fail"] == 0 and summary["instances"] == len(rs) - 1


def test_survey_two_gen_deterministic_across_jobs(capsys):
    _, serial, _ = run(capsys, "survey", "--two-gen", "--d", "5")
    _, parallel, _ = run(capsys, "survey", "--two-gen", "--d", "5", "--jobs", "2")
    assert serial == parallel
    assert rows(serial)[-1]["fail"] == 0


def test_survey_q1_scan_seeded(capsys):
    _, a, _ = run(capsys, "survey", "--q1-scan", "--d", "6", "--samples", "40", "--seed", "3")
    _, b, _ = run(capsys, "survey", "--q1-scan", "--d", "6", "--samples", "40", "--seed", "3")
    assert a == b and rows(a)[0]["checked"] == 40


def test_times_command(capsys):
    _, out, _ = run(capsys, "times", "--graph", "hamming 2 3", "--scan-N", "36")
    r = rows(out)[0]
    assert r["cyclotomic_times"][0]["N"] == 3 and "2pi/9" in r["cyclotomic_times"][0]["times"]


def test_families_command(capsys):
    _, out, _ = run(capsys, "families", "--q", "3", "--kmax", "2", "--verify")
    rs = rows(out)
    assert [(r["d"], r["r"]) for r in rs] == [(9, 8), (9, 5), (9, 2)]
    assert all(r["condition"] and r["flat"] for r in rs)


def test_characterize_command(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("1,1,1,1\n")
    _, out, _ = run(capsys, "characterize", "--q", "3", "--generators", str(f), "--time", "2pi/9")
    r = rows(out)[0]
    assert r["verdict_symbolic"] is True and r["verdict_bruteforce"] is True
    assert len(r["coset_report"]) == 27 and all(e["ok"] for e in r["coset_report"])


def test_star_and_claw_commands(capsys):
    _, out, _ = run(capsys, "star", "--n", "3", "--mode", "global")
    assert not rows(out)[0]["empty"]
    _, out, _ = run(capsys, "star", "--n", "5", "--mode", "global")
    assert rows(out)[0]["empty"]
    _, out, _ = run(capsys, "star", "--n", "5", "--mode", "local")
    assert len(rows(out)[0]["verified_times"]) == 4
    _, out, _ = run(capsys, "claw-power", "--m", "2", "--time", "2pi/sqrt27")
    r = rows(out)[0]
    assert r["flat"] and not r["regular"]


def test_timing_flag_only_when_requested(capsys):
    _, out, _ = run(capsys, "check", "--graph", "hamming 1 2", "--time", "pi/4")
    assert "wall_time" not in rows(out)[0]
    _, out, _ = run(capsys, "check", "--graph", "hamming 1 2", "--time", "pi/4", "--timing")
    assert "wall_time" in rows(out)[0]


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "qmix.cli", "check", "--graph", "hamming 1 3",
                          "--time", "2pi/9"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["flat"]
