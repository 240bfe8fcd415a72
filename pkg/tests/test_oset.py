from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from helpers import preorders
from ordalg.oracles import brute_monotone_maps
from ordalg.oset import (
    MonotoneMap,
    OrderError,
    OSet,
    chain,
    classify_map,
    codiscrete,
    diagonal_fill_in,
    discrete,
    image_factorization,
    monotone_tuples,
    power,
    product,
    validate_oset,
)


def test_validate_discrete():
    X = validate_oset(["x", "y"], [])
    assert X.le == {("x", "x"), ("y", "y")}
    assert X.elements == ("x", "y")


def test_validate_adds_transitive_pair():
    X = validate_oset([0, 1, 2], [(0, 1), (1, 2)])
    assert (0, 2) in X.le
    assert X == chain(3)


def test_validate_symmetric_pair_is_codiscrete():
    X = validate_oset(["a", "b"], [("a", "b"), ("b", "a")])
    assert X == codiscrete(["a", "b"])
    assert X.is_symmetric()


def test_validate_rejects_duplicates_and_strangers():
    with pytest.raises(OrderError, match="'a'"):
        validate_oset(["a", "b", "a"])
    with pytest.raises(OrderError):
        validate_oset(["a"], [("a", "z")])


def test_power_of_chains():
    P = power(validate_oset(["x", "y"], [("x", "y")]), chain(2))
    assert P.elements == ((0, 0), (0, 1), (1, 1))
    assert P.leq((0, 0), (1, 1)) and not P.leq((0, 1), (0, 0))


def test_power_discrete_source_and_empty_arity():
    C = validate_oset(["p", "q", "r"], [("p", "q")])
    assert len(power(discrete(["x", "y"]), C)) == 9
    P = power(discrete([]), C)
    assert P.elements == ((),)


def test_products():
    P = product(chain(2), chain(2))
    assert len(P) == 4 and len(P.le) == 9
    S = product(chain(3), discrete(["*"]))
    f = MonotoneMap(S, chain(3), {(a, "*"): a for a in range(3)})
    assert classify_map(f) == (True, True, True)
    assert product(discrete([0, 1]), discrete("ab")).is_discrete()


def test_classify_examples():
    inc = MonotoneMap(chain(2), chain(3), {0: 0, 1: 1})
    c = classify_map(inc)
    assert c.is_ff_mono and c.is_full and not c.is_so
    assert classify_map(MonotoneMap.identity(chain(3))) == (True, True, True)
    onto = MonotoneMap(discrete(["x", "y"]), chain(2), {"x": 0, "y": 1})
    c = classify_map(onto)
    assert c.is_so and not c.is_full and not c.is_ff_mono


def test_image_factorization_examples():
    const = MonotoneMap(chain(3), chain(2), {0: 1, 1: 1, 2: 1})
    e, m = image_factorization(const)
    assert len(e.cod) == 1
    ident = MonotoneMap.identity(chain(2))
    e, m = image_factorization(ident)
    assert e.values == ident.values and m.values == ident.values
    onto = MonotoneMap(discrete(["x", "y"]), chain(2), {"x": 0, "y": 1})
    e, m = image_factorization(onto)
    assert e.cod == chain(2)
    assert classify_map(e).is_so and not classify_map(e).is_full


def test_monotone_map_rejects_order_breaking_table():
    with pytest.raises(OrderError):
        MonotoneMap(chain(2), chain(2), {0: 1, 1: 0})


@given(preorders())
def test_closure_idempotent(X):
    assert validate_oset(list(X.elements), X.le) == X


@given(preorders(max_size=3), preorders(max_size=3))
@settings(max_examples=60)
def test_power_matches_brute_force(X, C):
    P = power(X, C)
    assert list(P.elements) == brute_monotone_maps(X, C)
    assert validate_oset(list(P.elements), P.le) == P
    assert list(monotone_tuples(X, C)) == list(P.elements)


@given(preorders(max_size=3), preorders(max_size=3), st.data())
@settings(max_examples=80)
def test_factorization_laws(X, Y, data):
    values = data.draw(st.sampled_from(brute_monotone_maps(X, Y)))
    f = MonotoneMap(X, Y, dict(zip(X.elements, values)))
    c = classify_map(f)
    assert not c.is_ff_mono or c.is_full
    e, m = image_factorization(f)
    assert classify_map(e).is_so and classify_map(m).is_ff_mono
    assert m.compose(e).values == f.values


@given(preorders(max_size=3), preorders(max_size=3), preorders(max_size=3), st.data())
@settings(max_examples=60)
def test_diagonal_fill_in(A, B, D, data):
    onto = [v for v in brute_monotone_maps(A, B) if set(v) == set(B.elements)]
    if not onto:
        return
    e = MonotoneMap(A, B, dict(zip(A.elements, data.draw(st.sampled_from(onto)))))
    keep = data.draw(st.sets(st.sampled_from(D.elements), min_size=1))
    C = D.sub(keep)
    m = MonotoneMap(C, D, {c: c for c in C.elements})
    for vals in brute_monotone_maps(B, D):
        v = MonotoneMap(B, D, dict(zip(B.elements, vals)))
        if not all(v(e(a)) in keep for a in A.elements):
            continue
        u = MonotoneMap(A, C, {a: v(e(a)) for a in A.elements})
        d = diagonal_fill_in(e, m, u, v)
        assert d.compose(e).values == u.values
        assert m.compose(d).values == v.values


def test_fill_in_rejects_noncommuting_square():
    e = MonotoneMap.identity(chain(2))
    m = MonotoneMap.identity(chain(2))
    u = MonotoneMap(chain(2), chain(2), {0: 0, 1: 0})
    with pytest.raises(OrderError):
        diagonal_fill_in(e, m, u, MonotoneMap.identity(chain(2)))


def test_validate_repairs_non_transitive_input():
    raw = {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)}
    X = validate_oset([0, 1, 2], raw)
    assert X.le == raw | {(0, 2)}
    assert isinstance(X, OSet)


def test_every_map_from_discrete_is_monotone():
    X = discrete("xyz")
    assert len(brute_monotone_maps(X, chain(2))) == len(list(cartesian(range(2), repeat=3)))
