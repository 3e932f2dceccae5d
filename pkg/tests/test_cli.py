"""Command line behaviour: reports, exit codes and machine-form determinism."""

import json
import subprocess
import sys

import pytest

from numevents import fixture_path
from numevents.classify import classify
from numevents.cli import main
from numevents.documents import parse_family

EX1 = str(fixture_path("example1.json"))
EX2 = str(fixture_path("example2.json"))
BOOL4 = str(fixture_path("boolean4.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="doc.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return _write


class TestClassify:
    def test_example1_text(self, capsys):
        code, out, _ = run(capsys, "classify", EX1)
        assert code == 0
        assert "(1,5/4) exceeds 1, not in P" in out
        assert "  specific: yes" in out and "  structured: no" in out

    def test_example2_json(self, capsys):
        code, out, _ = run(capsys, "classify", EX2, "--json")
        data = json.loads(out)
        assert code == 0
        assert data["flags"]["weakly_structured"] is True
        assert data["flags"]["vee_specific"] is False
        c6 = data["conditions"]["6"]
        assert c6["witness"] == ["(0,1/2)", "(1/2,0)"]

    def test_bounds_all_yes(self, capsys, write):
        path = write({"states": ["a", "b"], "events": [["0", "0"], ["1", "1"]]})
        code, out, _ = run(capsys, "classify", path, "--json")
        assert code == 0 and all(json.loads(out)["flags"].values())

    @pytest.mark.parametrize("doc, fragment", [
        ({"states": ["a"], "events": [["0"], ["3/2"]]}, "events[1][0]: value 3/2 outside [0,1]"),
        ({"states": ["a", "b"], "events": [["0"]]}, "events[0]: arity 1 != 2"),
        ({"states": ["a"], "events": [["0"], ["0"]]}, "duplicate"),
        ({"states": ["a"], "events": [[0.5]]}, "events[0][0]"),
        ({"events": [["0"]]}, "missing field 'states'"),
        ('{"states": ["a"],\n "events": [["0"]', "line 2"),
    ])
    def test_parse_errors(self, capsys, write, doc, fragment):
        code, _, err = run(capsys, "classify", write(doc))
        assert code == 2
        assert fragment in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "classify", str(tmp_path / "absent.json"))
        assert code == 2 and "error" in err


class TestStates:
    def test_example2(self, capsys):
        code, out, _ = run(capsys, "states", EX2, "--check-canonical")
        assert code == 0
        assert "full: yes, uniform: no, pair ((0,1/2),(1/2,0)) forces r=(1/2,1/2) ∉ P" in out

    def test_example2_json(self, capsys):
        _, out, _ = run(capsys, "states", EX2, "--json")
        data = json.loads(out)
        assert data["full"] is True and data["uniform"] is False
        assert data["forced_r"] == "(1/2,1/2)"

    def test_poset_table(self, capsys):
        code, out, _ = run(capsys, "states", BOOL4, "--json")
        data = json.loads(out)
        assert code == 0 and data["full"] and data["uniform"]

    def test_non_specific_state_table(self, capsys, write):
        doc = json.loads(open(BOOL4).read())
        doc["states"]["ta"]["a"] = "1/2"
        code, out, _ = run(capsys, "states", write(doc))
        assert code == 3
        assert "S2 fails" in out

    def test_wrong_flag_for_document(self, capsys):
        code, _, _ = run(capsys, "states", BOOL4, "--check-canonical")
        assert code == 2

    def test_family_without_complements(self, capsys, write):
        path = write({"states": ["a"], "events": [["0"], ["1/3"], ["1"]]})
        code, _, err = run(capsys, "states", path)
        assert code == 3 and "precondition" in err


class TestSubalgebra:
    def test_powerset(self, capsys, write):
        rows = [[a, b, c] for a in "01" for b in "01" for c in "01"]
        path = write({"states": ["a", "b", "c"], "events": rows})
        # rows[6] = (1,1,0), rows[3] = (0,1,1)
        code, out, _ = run(capsys, "subalgebra", path, "--elements", "6,3", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["product_criterion"] is True and data["agree"] is True
        assert "(0,1,0)" in data["oracle"]

    def test_fractional_family_is_precondition_error(self, capsys):
        code, _, err = run(capsys, "subalgebra", EX2, "--elements", "0,1")
        assert code == 3 and "{0,1}" in err

    @pytest.mark.parametrize("elements", ["9", "a,b"])
    def test_bad_indices(self, capsys, elements):
        code, _, _ = run(capsys, "subalgebra", EX2, "--elements", elements)
        assert code == 2


class TestRepresent:
    def test_poset(self, capsys):
        code, out, _ = run(capsys, "represent", BOOL4, "--json")
        data = json.loads(out)
        assert code == 0
        assert data["representation"]["element_map"]["a"] == "(1,0)"
        assert sorted(data["carrier"]["events"]) == [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]

    def test_family_without_two_valued_states(self, capsys, write):
        path = write({"states": ["a"], "events": [["0"], ["1/2"], ["1"]]})
        code, out, _ = run(capsys, "represent", path)
        assert code == 0 and "no concrete representation" in out

    def test_not_full(self, capsys, write):
        doc = json.loads(open(BOOL4).read())
        del doc["states"]["tb"]
        code, _, err = run(capsys, "represent", write(doc))
        assert code == 3 and "not full" in err


class TestSearch:
    def test_witness_replays(self, capsys, write):
        code, out, _ = run(capsys, "search", "--states", "2", "--denominator", "2",
                           "--max-size", "9", "--want", "C4", "--avoid", "C2", "--json")
        data = json.loads(out)
        assert code == 0 and data["status"] == "found"
        F = parse_family(write(data["witness"]))
        assert classify(F).flags == data["flags"]

    def test_none(self, capsys):
        code, out, _ = run(capsys, "search", "--states", "1", "--denominator", "1", "--max-size", "2",
                           "--want", "specific", "--avoid", "boolean_algebra")
        assert code == 0 and out.startswith("none")

    def test_budget_inconclusive(self, capsys):
        code, out, _ = run(capsys, "search", "--states", "2", "--denominator", "2", "--max-size", "9",
                           "--want", "C4", "--avoid", "C2", "--budget", "1")
        assert code == 5 and "inconclusive" in out

    def test_sweep_budget_inconclusive(self, capsys):
        code, _, _ = run(capsys, "search", "--states", "2", "--denominator", "1", "--max-size", "4",
                         "--budget", "1")
        assert code == 5

    def test_sweep_clean_space(self, capsys):
        code, out, _ = run(capsys, "search", "--states", "1", "--denominator", "1", "--max-size", "2",
                           "--json")
        assert code == 0 and json.loads(out)["status"] == "complete"

    def test_sweep_violation_exit(self, capsys):
        code, out, _ = run(capsys, "search", "--states", "1", "--denominator", "2", "--max-size", "3")
        assert code == 4 and "structured_faithful_algebra" in out

    def test_unknown_flag(self, capsys):
        code, _, _ = run(capsys, "search", "--states", "1", "--denominator", "1", "--max-size", "2",
                         "--want", "nonsense")
        assert code == 2

    def test_bad_space(self, capsys):
        code, _, _ = run(capsys, "search", "--states", "0", "--denominator", "1", "--max-size", "2")
        assert code == 2


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["classify", EX1, "--json"],
        ["classify", EX2, "--json"],
        ["states", EX2, "--json"],
        ["represent", BOOL4, "--json"],
        ["search", "--states", "2", "--denominator", "2", "--max-size", "8", "--json"],
        ["search", "--states", "2", "--denominator", "2", "--max-size", "8", "--workers", "2", "--json"],
    ])
    def test_byte_identical(self, argv):
        cmd = [sys.executable, "-m", "numevents", *argv]
        first = subprocess.run(cmd, capture_output=True, check=False).stdout
        second = subprocess.run(cmd, capture_output=True, check=False).stdout
        assert first and first == second

    def test_parallel_equals_serial(self):
        base = [sys.executable, "-m", "numevents", "search", "--states", "2", "--denominator", "2",
                "--max-size", "8", "--json"]
        serial = subprocess.run(base + ["--workers", "1"], capture_output=True).stdout
        parallel = subprocess.run(base + ["--workers", "3"], capture_output=True).stdout
        assert serial == parallel
