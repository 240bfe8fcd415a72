import io
import json
from pathlib import Path

import pytest

from ordalg.cli import (
    DocumentError,
    format_algebra,
    format_oset,
    parse_document,
    render_report_text,
    run,
)
from ordalg.corpus import named_algebras
from ordalg.oset import chain, validate_oset

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_oset_round_trip():
    for X in (chain(3), validate_oset(["a", "b", "c"], [("a", "b"), ("c", "b")])):
        doc = parse_document(format_oset("X", X))
        assert doc.osets["X"] == X


@pytest.mark.parametrize("name", sorted(named_algebras()))
def test_algebra_round_trip(name):
    A = named_algebras()[name]
    if any(isinstance(e, tuple) for e in A.elements):
        pytest.skip("tuple elements have no token form")
    doc = parse_document(format_algebra(A, "M", "C", with_theory=True))
    got = doc.algebras["M"]
    assert got.carrier == A.carrier and got.tables == A.tables
    assert got.theory == A.theory


def test_non_monotone_table_entry_names_the_arity_pair():
    text = """oset two { elements: 0 1; le: 0<=1; }
algebra bad over Magma {
  carrier two;
  table mul: (0,0)->1 (0,1)->0 (1,0)->1 (1,1)->1;
}
"""
    with pytest.raises(DocumentError) as info:
        parse_document(text)
    assert info.value.line == 4
    assert "monoton" in str(info.value)


def test_unknown_reference_reports_line():
    text = "\n\nalgebra x over Nope { carrier two; }\n"
    with pytest.raises(DocumentError) as info:
        parse_document(text)
    assert info.value.line == 3


def test_trunc_document_matches_builtin():
    doc = parse_document((DATA / "trunc.alg").read_text())
    assert doc.algebras["trunc3"].tables == named_algebras()["trunc3"].tables


def test_validate_all_demo_documents():
    files = sorted(str(p) for p in DATA.glob("*.alg"))
    code, out, err = call("validate", *files)
    assert code == 0, err
    assert "declarations" in out


def test_exit_codes():
    assert call("check", "maltsev", "Z3")[0] == 0
    assert call("check", "degenerate", "lax_chain2")[0] == 1
    assert call("check", "maltsev", "Z3", "--depth", "1")[0] == 2
    assert call("check", "maltsev", "nothing_by_this_name")[0] == 3
    assert call("frobnicate")[0] == 3


def test_failure_prints_counterexample():
    code, out, _ = call("-f", str(DATA / "chains.alg"), "check", "degenerate", "chain2")
    assert code == 1
    assert "counterexample: [0, 1]" in out


def test_proto_on_document_algebra():
    code, out, _ = call("check", "proto", "chain2", "-f", str(DATA / "chains.alg"))
    assert code == 0
    assert 'alpha: ["x"]' in out and 'theta: "t1"' in out


def test_ss5l_document_diagram():
    code, out, _ = call("-f", str(DATA / "pointed.alg"), "check", "ss5l", "squeeze")
    assert code == 1
    assert "b not surjective" in out


def test_report_mirrors_stdout(tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = call("check", "ord-maltsev", "lax_chain2", "--report", str(path))
    report = json.loads(path.read_text())
    assert report["exit_status"] == code == 1
    assert render_report_text(report) == out
    assert report["command"] == ["check", "ord-maltsev", "lax_chain2"]


def test_global_options_do_not_change_reports(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    call("check", "permutability", "Z4", "--report", str(a))
    call("--jobs", "3", "check", "permutability", "Z4", "--report", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_seed_is_rejected():
    code, _, err = call("--seed", "7", "check", "maltsev", "Z2")
    assert code == 3 and "deterministic" in err


def test_compose_command():
    code, out, _ = call("compose", "Z4", "(0,2)", "(0,1)")
    assert code == 0
    assert "RS" in out
    assert call("compose", "Z4", "garbage", "(0,1)")[0] == 3


def test_kernel_and_comma_commands(tmp_path):
    text = """oset two { elements: 0 1; le: 0<=1; }
algebra c over LaxProto1 { carrier two; const 0 = 0; op alpha(x,y) = x; op theta(x,y) = x; }
hom i : c -> c { 0->0; 1->1; }
"""
    path = tmp_path / "c.alg"
    path.write_text(text)
    code, out, _ = call("-f", str(path), "comma", "i", "i")
    assert code == 0 and "[0, 1]" in out
    code, out, _ = call("-f", str(path), "kernel", "i", "--colax")
    assert code == 0 and "kernel" in out


def test_congruences_command():
    code, out, _ = call("congruences", "Z4")
    assert code == 0
    cons = json.loads(out.split("congruences: ", 1)[1].splitlines()[0])
    assert len(cons) == 3
