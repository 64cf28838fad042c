import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from splitsuper import parse_report
from splitsuper.cli import run

FIX = Path(__file__).parent / "fixtures"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def payload(text):
    return json.loads(text)["result"]


def test_split_check_even_subalgebra_document():
    code, out, _ = call("split-check", "--algebra", str(FIX / "gl11.json"), "--subalgebra", str(FIX / "gl11_even.json"))
    assert code == 0
    assert payload(out)["verdict"] == "SPLIT_BY_SUFFICIENT_CONDITION"


def test_split_check_grassmannian():
    code, out, _ = call("split-check", "--catalog", "gl:2,2", "--parabolic", "1,1")
    assert code == 0
    res = payload(out)
    assert res["verdict"] == "NO_COMPATIBLE_LEFT_INVARIANT_GRADING"
    assert res["inconclusive_about_splitness"] is True
    assert res["solution"]["feasible"] is False


def test_unknown_label_is_an_input_error():
    code, out, err = call("validate", "--algebra", str(FIX / "gl11_unknown_label.json"))
    assert code == 2
    assert out == ""
    assert "unknown basis label" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["validate"],
        ["validate", "--algebra", "/nonexistent.json"],
        ["validate", "--catalog", "sl:2"],
        ["split-check", "--catalog", "gl:1,1"],
        ["split-check", "--catalog", "gl:2,2", "--parabolic", "5,0"],
        ["envelope", "--catalog", "gl:1,1", "--word", "E12,Q"],
        ["envelope", "--catalog", "gl:1,1", "--word", "E11", "--mode", "gamma"],
        ["ranks", "--catalog", "gl:1,1", "--h0", "--no-assume-connected"],
        ["nonsense"],
    ],
)
def test_input_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_validate_reports_payload():
    code, out, _ = call("validate", "--catalog", "osp12")
    assert code == 0
    assert payload(out) == {"valid": True, "violations": []}


def test_gr_output_is_a_loadable_algebra():
    code, out, _ = call("gr", "--catalog", "gl:1,1")
    doc = payload(out)["algebra"]
    assert all(not ({e["pair"][0], e["pair"][1]} <= {"E12", "E21"}) for e in doc["brackets"])


def test_envelope_modes():
    _, out, _ = call("envelope", "--algebra", str(FIX / "gl11.json"), "--word", "y,x")
    terms = payload(out)["element"]
    assert {"coef": "-1", "even": [], "odd": ["x", "y"]} in terms
    _, out, _ = call("envelope", "--algebra", str(FIX / "gl11.json"), "--word", "x,y", "--mode", "antipode")
    assert payload(out)["filtration_degree"] == 2


def test_ranks_and_invariants():
    _, out, _ = call("ranks", "--catalog", "gl:2,2", "--parabolic", "1,1")
    assert payload(out)["ranks"] == [1, 2, 1, 0, 0, 0, 0, 0, 0]
    _, out, _ = call("invariants", "--catalog", "gl:1,1", "--whole", "--space", "quotient")
    assert payload(out)["dimension"] == 0


def test_strict_invariance():
    code, out, _ = call("strict-invariance", "--catalog", "gl:2,1", "--parabolic", "1,1")
    assert code == 0 and payload(out)["solution"]["feasible"] is False


def test_report_round_trips():
    _, out, _ = call("ranks", "--catalog", "gl:2,1", "--h0")
    rep = parse_report(out)
    assert rep.operation == "ranks"
    assert rep.assumptions["assume_connected"] is True


def test_human_format():
    code, out, _ = call("split-check", "--catalog", "gl:1,1", "--h0", "--format", "human")
    assert code == 0
    assert 'verdict: "SPLIT_BY_SUFFICIENT_CONDITION"' in out


def test_internal_errors_exit_3(monkeypatch):
    import splitsuper.cli as cli

    def boom(args):
        raise RuntimeError("bug")

    monkeypatch.setitem(cli.COMMANDS, "ranks", boom)
    code, _, err = call("ranks", "--catalog", "gl:1,1", "--h0")
    assert code == 3 and "internal error" in err


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "splitsuper", "split-check", "--catalog", "gl:2,1", "--parabolic", "1,0"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv + ["--threads", "3"], capture_output=True, check=True).stdout
    assert first == second
