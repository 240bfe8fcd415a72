import pytest
from hypothesis import given, settings, strategies as st

from helpers import small_algebras
from ordalg.corpus import (
    cyclic_group,
    lax_chain,
    named_algebras,
    pointed_set,
    random_corpus,
)
from ordalg.oracles import (
    brute_closed_sets,
    brute_compose,
    brute_congruences,
    brute_ideals,
    brute_least_closed,
)
from ordalg.relations import (
    Relation,
    RelationError,
    compose,
    congruence_violation,
    enumerate_congruences,
    enumerate_ideals,
    generate_relation,
    ideal_violation,
    is_congruence,
    is_ideal,
    opposite,
    set_composite,
)


def tiny(limit=3):
    algs = list(named_algebras().values()) + random_corpus()
    return [A for A in algs if len(A) <= limit]


TINY = tiny()


def test_empty_seeds_subalgebra_mode():
    A = lax_chain(2)
    R = generate_relation(A, A, ())
    assert R.pairs == {(0, 0)}


def test_ideal_mode_on_chain():
    A = lax_chain(2)
    R = generate_relation(A, A, (), "ideal")
    assert R.pairs == {(0, 0), (0, 1)}
    assert is_ideal(R) and not is_congruence(R)


def test_congruence_mode_needs_one_algebra():
    with pytest.raises(RelationError):
        generate_relation(lax_chain(2), lax_chain(3), (), "congruence")
    with pytest.raises(RelationError):
        generate_relation(lax_chain(2), lax_chain(2), (), "bogus")
    with pytest.raises(RelationError):
        generate_relation(lax_chain(2), lax_chain(2), [(0, 7)])


def test_ideal_and_congruence_examples():
    A = lax_chain(2)
    le = Relation(A, A, A.carrier.le)
    assert is_congruence(le)
    eq = Relation(A, A, {(0, 0), (1, 1)})
    assert ideal_violation(eq) == (0, 0, 0, 1)
    full = Relation(A, A, {(a, b) for a in A.elements for b in A.elements})
    assert is_congruence(full)
    up = Relation(A, A, {(0, 1)})
    assert congruence_violation(up) == ("missing diagonal pair", (0, 0))
    down = Relation(A, A, {(1, 0)})
    assert congruence_violation(down)[0] == "not an ideal"


def test_opposite_swaps_and_need_not_be_ideal():
    A = lax_chain(2)
    le = Relation(A, A, A.carrier.le)
    op = opposite(le)
    assert op.pairs == {(0, 0), (1, 0), (1, 1)}
    assert not is_ideal(op)
    assert opposite(op) == le


def test_compose_mod_two_on_z4():
    A = cyclic_group(4)
    mod2 = generate_relation(A, A, {(0, 2)}, "congruence")
    assert mod2.pairs == {(a, b) for a in range(4) for b in range(4) if (a - b) % 2 == 0}
    C = compose(mod2, mod2)
    assert C.pairs == mod2.pairs
    assert not C.diagnostics["operation_closure_added"]


def test_compose_rejects_mismatched_middle():
    A, B = lax_chain(2), lax_chain(3)
    R = Relation(A, B, {(0, 0)})
    with pytest.raises(RelationError):
        compose(R, R)


@pytest.mark.parametrize("A", TINY, ids=lambda A: A.name)
def test_ideal_closure_never_needed_between_ideals(A):
    ideals, exact = enumerate_ideals(A, A)
    assert exact
    for R in ideals[:12]:
        for S in ideals[:12]:
            assert not compose(R, S).diagnostics["ideal_closure_added"]


@pytest.mark.parametrize("A", TINY, ids=lambda A: A.name)
def test_enumerations_match_brute_force(A):
    cons, exact = enumerate_congruences(A)
    assert exact
    assert {R.pairs for R in cons} == set(brute_congruences(A))
    ideals, exact = enumerate_ideals(A, A)
    assert exact
    assert {R.pairs for R in ideals} == set(brute_ideals(A, A))


@pytest.mark.parametrize("A", TINY, ids=lambda A: A.name)
def test_join_method_agrees_with_filtering(A):
    full, _ = enumerate_congruences(A)
    joins, exact = enumerate_congruences(A, cap=0)
    assert exact
    assert [R.pairs for R in joins] == [R.pairs for R in full]
    full, _ = enumerate_ideals(A, A)
    joins, exact = enumerate_ideals(A, A, cap=0)
    assert exact and [R.pairs for R in joins] == [R.pairs for R in full]


def test_enumerate_examples():
    cons, _ = enumerate_congruences(lax_chain(2))
    assert [len(R) for R in cons] == [3, 4]
    cons, _ = enumerate_congruences(cyclic_group(4))
    assert len(cons) == 3
    # every preorder on three points is a congruence of a bare pointed set
    cons, _ = enumerate_congruences(pointed_set(3))
    assert len(cons) == 29


def test_join_method_reports_truncation():
    cons, exact = enumerate_congruences(pointed_set(3), cap=0, max_relations=5)
    assert not exact


@pytest.mark.parametrize("A", TINY[:12], ids=lambda A: A.name)
@pytest.mark.parametrize("mode", ["subalgebra", "ideal", "congruence"])
def test_generated_relation_is_least_closed(A, mode):
    closed = brute_closed_sets(A, A, mode)
    pairs = [(a, b) for a in A.elements for b in A.elements]
    for seeds in ([], pairs[:1], pairs[-2:], pairs[1::3]):
        R = generate_relation(A, A, seeds, mode)
        assert R.pairs == brute_least_closed(A, A, seeds, mode, closed)


@pytest.mark.parametrize("A", TINY, ids=lambda A: A.name)
def test_compose_matches_oracle(A):
    ideals, _ = enumerate_ideals(A, A)
    closed = brute_closed_sets(A, A, "ideal")
    for R in ideals[:8]:
        for S in ideals[:8]:
            got = compose(R, S)
            assert got.pairs == brute_compose(A, R.pairs, S.pairs, closed=closed)
            assert is_ideal(got)


@given(small_algebras(max_size=3), st.data())
@settings(max_examples=40, deadline=None)
def test_closure_operator_laws(A, data):
    pairs = [(a, b) for a in A.elements for b in A.elements]
    seeds = data.draw(st.sets(st.sampled_from(pairs)))
    more = seeds | data.draw(st.sets(st.sampled_from(pairs)))
    for mode in ("subalgebra", "ideal", "congruence"):
        R = generate_relation(A, A, seeds, mode)
        assert seeds <= R.pairs
        assert generate_relation(A, A, R.pairs, mode).pairs == R.pairs
        assert R.pairs <= generate_relation(A, A, more, mode).pairs
    C = generate_relation(A, A, seeds, "congruence")
    assert set(A.carrier.le) <= C.pairs


@given(small_algebras(max_size=3), st.data())
@settings(max_examples=30, deadline=None)
def test_compose_is_associative_on_ideals(A, data):
    ideals, _ = enumerate_ideals(A, A)
    R, S, T = (data.draw(st.sampled_from(ideals)) for _ in range(3))
    left = compose(compose(R, S), T)
    right = compose(R, compose(S, T))
    assert left.pairs == right.pairs
    assert set_composite(R, S) <= compose(R, S).pairs
