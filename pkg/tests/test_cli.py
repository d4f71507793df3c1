import io
import json
import re
from pathlib import Path

import pytest

from rootcomp.battery import CaseError, battery_cases, parse_case_line, read_cases, render_battery_file, shipped_battery_text
from rootcomp.cli import main

GOLDEN = Path(__file__).parent / "golden"
RUNNING = "--n 4 --lambda fw:0,1,1,0 --mu fw:1,1,1,1 --beta 2..3 --N 1"
CONSTRUCTED = "--n 2 --lambda fw:2,2 --mu fw:2,2 --beta 1..2 --N 2"
SIMPLE = "--n 3 --lambda fw:0,1,0 --mu fw:0,1,0 --beta 2..2 --N 1"

GOLDEN_CASES = {
    "check_running": f"check {RUNNING}",
    "check_constructed": f"check {CONSTRUCTED}",
    "verify_running": f"verify {RUNNING}",
    "verify_simple": f"verify {SIMPLE}",
    "verify_family": "verify --n 2 --a 2",
    "orbitdim_running": f"orbitdim {RUNNING}",
    "orbitdim_family": "orbitdim --n 2 --a 2",
    "orbitdim_constructed": f"orbitdim {CONSTRUCTED}",
    "disjoint_running": f"disjoint {RUNNING}",
    "disjoint_simple": f"disjoint {SIMPLE}",
    "disjoint_constructed": f"disjoint {CONSTRUCTED}",
    "mult_constructed": f"mult {CONSTRUCTED}",
    "mult_running": f"mult {RUNNING}",
    "mult_trivial": "mult --n 2 --lambda fw:1,0 --mu fw:0,0 --beta 1..1 --N 0",
}


def run(argv):
    out = io.StringIO()
    code = main(argv.split(), out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
@pytest.mark.parametrize("fmt", ["text", "json-lines"])
def test_golden(name, fmt):
    code, out = run(f"{GOLDEN_CASES[name]} --format {fmt}")
    suffix = "txt" if fmt == "text" else "jsonl"
    want = (GOLDEN / f"{name}.{suffix}").read_text()
    assert out == want
    assert code == 0


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_carries_every_number(name):
    _, text = run(f"{GOLDEN_CASES[name]} --format text")
    _, js = run(f"{GOLDEN_CASES[name]} --format json-lines")
    recs = [json.loads(line) for line in js.splitlines()]
    flat = json.dumps(recs)
    body = "\n".join(line for line in text.splitlines() if not line.startswith(name.split("_")[0] + " "))
    for num in re.findall(r"-?\d+", body):
        assert num in flat


def test_exit_codes():
    assert run(f"check {RUNNING}")[0] == 0
    assert run("check --n 2 --lambda fw:1,0 --mu fw:1,0 --beta 1..2 --N 1")[0] == 1
    assert run("check --n 2 --lambda fw:2,2 --mu fw:2,2 --beta 1..3 --N 2")[0] == 2
    assert run("check --n 2 --lambda fw:2 --mu fw:2,2 --beta 1..2 --N 2")[0] == 2
    assert run("check --n 2")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("verify --n 2 --a 1")[0] == 2
    assert run("disjoint --n 2 --a 2")[0] == 2
    assert run(f"mult {CONSTRUCTED} --expect-mult 4")[0] == 1
    assert run(f"orbitdim {RUNNING} --expect-dim 29")[0] == 1


def test_truncation_override():
    code, out = run(f"orbitdim {RUNNING} --truncation-override 20 --format json-lines")
    assert code == 0 and json.loads(out)["truncation"] == 20
    code, out = run(f"orbitdim {RUNNING} --truncation-override 2")
    assert code == 1 and "[MISMATCH] stable[xi]" in out


def test_battery_runs(tmp_path):
    f = tmp_path / "cases.txt"
    f.write_text(f"# comment\n{RUNNING} --expect-dim 30\n\n{SIMPLE}\n")
    code, out = run(f"battery {f} --format json-lines")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs[-1]["cases"] == 2 and recs[-1]["passed"] == 2
    assert [r["case"] for r in recs[:-1]] == sorted([r["case"] for r in recs[:-1]], key=lambda c: parse_case_line(c).key)


def test_battery_empty_and_failing(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    code, out = run(f"battery {empty}")
    assert code == 0 and "cases = 0" in out
    bad = tmp_path / "bad.txt"
    bad.write_text(f"{CONSTRUCTED} --expect-mult 4\n")
    assert run(f"battery {bad}")[0] == 1
    broken = tmp_path / "broken.txt"
    broken.write_text("--n 2 --beta 9..9\n")
    assert run(f"battery {broken}")[0] == 2
    assert run(f"battery {tmp_path / 'missing.txt'}")[0] == 2


def test_battery_parallel_matches_serial(tmp_path):
    f = tmp_path / "cases.txt"
    f.write_text("\n".join(c.to_line() for c in battery_cases()[:12]) + "\n")
    serial = run(f"battery {f} --format json-lines")
    parallel = run(f"battery {f} --format json-lines --jobs 3")
    assert serial == parallel


def test_shipped_battery_is_current():
    assert shipped_battery_text() == render_battery_file()
    assert [c.to_line() for c in read_cases(shipped_battery_text())] == [c.to_line() for c in battery_cases()]


def test_case_round_trip():
    for spec in battery_cases():
        again = parse_case_line(spec.to_line())
        assert again == spec and again.to_line() == spec.to_line()
    with pytest.raises(CaseError):
        parse_case_line("--n 2 --a 2 --N 1")
    with pytest.raises(CaseError):
        parse_case_line("--n 3 --a 2")
    with pytest.raises(CaseError):
        parse_case_line("--n 2 --lambda fw:1,1 --mu fw:1,1 --beta 1..2 --N 1 --bogus 3")
