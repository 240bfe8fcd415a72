import pytest
from hypothesis import given, settings

from helpers import small_algebras
from ordalg.algebra import algebra_from_functions, eval_term
from ordalg.clone import (
    SearchBudget,
    exhaustive_maltsev_tables,
    find_maltsev,
    find_proto_witnesses,
    generate_clone,
    maltsev_table_ok,
    verify_witnesses,
)
from ordalg.corpus import named_algebra, named_algebras, random_corpus
from ordalg.oracles import brute_clone_tables, brute_maltsev_tables
from ordalg.oset import chain, discrete, validate_oset
from ordalg.results import FAIL, PASS
from ordalg.theory import TheoryError, builtin_theory

XY = discrete(["x", "y"])


def _budget(A):
    # ternary symbols on three points blow up at depth 3
    wide = any(s.nargs > 2 for s in A.theory.symbols)
    return SearchBudget(max_term_depth=2 if wide and len(A) > 2 else 3)


def test_chain_clone_is_projections_and_zero():
    res = generate_clone(named_algebra("lax_chain2"), XY)
    assert res.complete
    assert sorted(str(op.witness) for op in res) == ["0", "x", "y"]


def test_group_clone_contains_sum_of_three():
    A = named_algebra("Z2")
    res = generate_clone(A, discrete(["x", "y", "z"]))
    assert res.complete and len(res) == 8
    want = {t: (t[0] + t[1] + t[2]) % 2 for t in res.operations[0].inputs}
    assert any(op.as_dict() == want for op in res)


def test_empty_context_gives_constants():
    res = generate_clone(named_algebra("lax_Z3"), discrete([]))
    assert [str(op.witness) for op in res] == ["0"]


def test_budget_truncation_is_reported():
    A = named_algebra("Z3")
    res = generate_clone(A, discrete(["a", "b", "c"]), SearchBudget(max_term_depth=1))
    assert not res.complete and res.stop_reason
    res = generate_clone(A, discrete(["a", "b", "c"]), SearchBudget(max_clone_size=5))
    assert not res.complete and len(res) <= 5
    with pytest.raises(ValueError):
        SearchBudget(max_term_depth=0)


def test_witness_terms_evaluate_to_their_tables():
    A = named_algebra("trunc3")
    res = generate_clone(A, XY, SearchBudget(max_term_depth=2))
    for op in res:
        for inp, v in op.as_dict().items():
            assert eval_term(A, op.witness, dict(zip("xy", inp))) == v


def test_find_maltsev_examples():
    found = find_maltsev(named_algebra("affine2"))
    assert found and found.complete
    assert str(found.witness.witness) == "t(a,b,c)"
    chain2 = find_maltsev(named_algebra("lax_chain2"))
    assert not chain2 and chain2.complete
    z3 = find_maltsev(named_algebra("Z3"), SearchBudget(max_term_depth=1))
    assert not z3 and not z3.complete


def test_exhaustive_maltsev_against_brute_force():
    two = [A for A in list(named_algebras().values()) + random_corpus() if len(A) == 2]
    assert two
    for A in two:
        tables = brute_maltsev_tables(A)
        got = exhaustive_maltsev_tables(A)
        if tables:
            assert got is not None and got in tables
            assert got == min(tables, key=lambda r: [A.carrier.index(r[k]) for k in sorted(r)])
        else:
            assert got is None


def test_find_proto_examples():
    s = find_proto_witnesses(named_algebra("lax_chain2"))
    assert s and [str(a.witness) for a in s.alphas] == ["x"]
    assert str(s.theta.witness) == "t1"
    none = find_proto_witnesses(named_algebra("pointed2"))
    assert not none and none.complete
    with pytest.raises(TheoryError):
        find_proto_witnesses(
            algebra_from_functions(chain(1), builtin_theory("Magma"), {"mul": lambda x, y: 0}))


def test_verify_witness_examples():
    A = named_algebra("lax_chain2")
    res = verify_witnesses(A, {"alpha": ["x"], "theta": "t1"}, "lax")
    assert res.verdict == PASS
    bad = verify_witnesses(A, {"alpha": ["y"], "theta": "t1"}, "lax")
    assert bad.verdict == FAIL
    assert bad.counterexamples[0][0] == "theta(alpha(x,y)...,y) = x"
    proj = verify_witnesses(A, {"rho": "a"}, "maltsev")
    assert proj.verdict == FAIL
    cond, where, lhs, rhs = proj.counterexamples[0]
    assert cond.startswith("rho(u,v,w) <= w") and where == (1, 1, 0)
    with pytest.raises(TheoryError):
        verify_witnesses(A, {"rho": "q(a)"}, "maltsev")


def test_singleton_passes_everything():
    th = builtin_theory("MaltsevOrd")
    A = algebra_from_functions(chain(1), th, {"rho": lambda a, b, c: 0})
    assert verify_witnesses(A, {"rho": "rho(a,b,c)"}, "maltsev").verdict == PASS
    assert find_maltsev(A)


def test_non_monotone_witness_term_is_a_failure():
    A = named_algebra("trunc2")
    # monus(a,b) needs b <= a, which fails on some assignments
    res = verify_witnesses(A, {"rho": "monus(a,b)"}, "maltsev")
    assert res.verdict == FAIL
    assert any(c[2] == "undefined" or c[3] == "undefined" for c in res.counterexamples)


@pytest.mark.parametrize(
    "A", [A for A in list(named_algebras().values()) + random_corpus() if len(A) <= 3],
    ids=lambda A: A.name,
)
def test_clone_matches_naive_iteration(A):
    for ctx in (XY, validate_oset(["x", "y"], [("x", "y")])):
        res = generate_clone(A, ctx, SearchBudget(max_term_depth=2))
        assert res.tables() == brute_clone_tables(A, ctx, 2)


@given(small_algebras(max_size=3))
@settings(max_examples=40, deadline=None, derandomize=True)
def test_clone_members_are_sound_and_monotone(A):
    res = generate_clone(A, XY, _budget(A))
    for op in res:
        for inp, v in op.as_dict().items():
            assert eval_term(A, op.witness, dict(zip("xy", inp))) == v
        if A.theory.is_coherent:
            assert op.is_monotone()


@given(small_algebras(max_size=3))
@settings(max_examples=30, deadline=None, derandomize=True)
def test_found_maltsev_witness_verifies(A):
    res = find_maltsev(A, _budget(A))
    if res:
        assert maltsev_table_ok(A, res.rho)
        check = verify_witnesses(A, {"rho": res.witness.witness}, "maltsev")
        assert check.verdict == PASS
        assert exhaustive_maltsev_tables(A) is not None


@pytest.mark.parametrize(
    "A", [A for A in list(named_algebras().values()) + random_corpus()
          if A.theory.is_pointed and len(A) <= 3],
    ids=lambda A: A.name,
)
@pytest.mark.parametrize("mode", ["lax", "colax"])
def test_found_proto_witnesses_verify(A, mode):
    res = find_proto_witnesses(A, mode=mode, budget=SearchBudget(max_term_depth=3))
    if res:
        w = {"alpha": [a.witness for a in res.alphas], "theta": res.theta.witness}
        assert verify_witnesses(A, w, mode).verdict == PASS


def test_generation_is_deterministic():
    A = named_algebra("trunc3")
    a = generate_clone(A, XY, SearchBudget(max_term_depth=3))
    b = generate_clone(A, XY, SearchBudget(max_term_depth=3))
    assert [str(o.witness) for o in a] == [str(o.witness) for o in b]
