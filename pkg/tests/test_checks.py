import pytest

from ordalg.acceptance import lax_diagrams, pointed_counterexample
from ordalg.algebra import (
    Homomorphism,
    algebra_from_functions,
    identity_hom,
    kernel_comma,
)
from ordalg.checks import (
    Diagram,
    DiagramError,
    HypothesisError,
    check_degenerate,
    check_ideal_kernels,
    check_maltsev_ideal_property,
    check_noncoherent_example,
    check_ord_maltsev,
    check_permutability,
    check_ss5l_instance,
)
from ordalg.clone import find_maltsev
from ordalg.corpus import named_algebra, named_algebras, random_corpus
from ordalg.oset import MonotoneMap, chain, discrete, validate_oset
from ordalg.relations import Relation, RelationError, enumerate_ideals
from ordalg.results import FAIL, PASS
from ordalg.theory import OperationSymbol, Theory, TheoryError, builtin_theory

SMALL = [A for A in list(named_algebras().values()) + random_corpus() if len(A) <= 3]


def test_degenerate_examples():
    r = check_degenerate(named_algebra("lax_chain2"))
    assert r.verdict == FAIL and r.counterexamples == [(0, 1)]
    assert check_degenerate(named_algebra("Z3")).verdict == PASS
    assert check_degenerate(named_algebra("pointed_codiscrete2")).verdict == PASS


def test_ord_maltsev_examples():
    r = check_ord_maltsev(named_algebra("lax_chain2"))
    assert r.verdict == FAIL
    assert len(r.counterexamples[0]["tuple"]) == 6
    assert check_ord_maltsev(named_algebra("affine2")).verdict == PASS
    with pytest.raises(TheoryError):
        check_ord_maltsev(named_algebra("Z2"), named_algebra("affine2"))


def test_join_fallback_keeps_verdicts():
    for name in ("Z2", "lax_chain2", "trunc3"):
        A = named_algebra(name)
        assert check_ord_maltsev(A, cap=0).verdict == check_ord_maltsev(A).verdict
        assert check_permutability(A, cap=0).verdict == check_permutability(A).verdict


def test_maltsev_ideal_property_needs_ideal():
    A = named_algebra("lax_chain2")
    with pytest.raises(RelationError):
        check_maltsev_ideal_property(Relation(A, A, {(1, 0)}))
    with pytest.raises(RelationError):
        check_ideal_kernels(Relation(A, A, {(1, 0)}))


def test_permutability_examples():
    assert check_permutability(named_algebra("Z4")).verdict == PASS
    r = check_permutability(named_algebra("pointed3"))
    assert r.verdict == FAIL
    bad = r.counterexamples[0]
    assert bad["only_in"] in ("RS", "SR") and bad["pair"]


@pytest.mark.parametrize("A", SMALL, ids=lambda A: A.name)
def test_kernel_pair_criterion_agrees_with_zig_zag(A):
    ideals, exact = enumerate_ideals(A, A)
    assert exact
    for D in ideals:
        assert check_ideal_kernels(D).verdict == check_maltsev_ideal_property(D).verdict


@pytest.mark.parametrize("A", SMALL, ids=lambda A: A.name)
def test_non_permutable_algebras_fail_zig_zag(A):
    if check_permutability(A).verdict == FAIL:
        assert check_ord_maltsev(A).verdict == FAIL


@pytest.mark.parametrize("A", SMALL, ids=lambda A: A.name)
def test_maltsev_term_gives_permutability(A):
    if find_maltsev(A):
        assert check_permutability(A).verdict == PASS
        assert check_ord_maltsev(A).verdict == PASS


def test_pointed_counterexample_breaks_five_lemma():
    r = check_ss5l_instance(pointed_counterexample())
    assert r.verdict == FAIL
    assert r.counterexamples[0] == ("b not surjective", ("y",))


def test_lax_diagrams_pass():
    ds = lax_diagrams(limit=10)
    assert len(ds) == 10
    for d in ds:
        assert check_ss5l_instance(d).verdict == PASS


def _pointed_diagram(b_values):
    th = builtin_theory("Pointed")
    A = algebra_from_functions(discrete(["0", "x"]), th, {"0": "0"})
    ident = identity_hom(A)
    K, _ = kernel_comma(ident)
    a = Homomorphism(K, K, MonotoneMap(K.carrier, K.carrier, {"0": "0"}))
    b = Homomorphism(A, A, MonotoneMap(A.carrier, A.carrier, b_values))
    return Diagram(ident, ident, ident, ident, a, b, ident)


def test_ss5l_rejects_noncommuting_square():
    with pytest.raises(DiagramError, match="commute|fails"):
        check_ss5l_instance(_pointed_diagram({"0": "0", "x": "0"}))
    assert check_ss5l_instance(_pointed_diagram({"0": "0", "x": "x"})).verdict == PASS


def test_ss5l_needs_pointed_theory_and_isomorphisms():
    th = builtin_theory("Magma")
    M = algebra_from_functions(chain(1), th, {"mul": lambda x, y: 0})
    ident = identity_hom(M)
    with pytest.raises(DiagramError, match="pointed"):
        check_ss5l_instance(Diagram(ident, ident, ident, ident, ident, ident, ident))

    P = builtin_theory("Pointed")
    B = algebra_from_functions(discrete(["0", "x"]), P, {"0": "0"})
    collapse = Homomorphism(B, B, MonotoneMap(B.carrier, B.carrier, {"0": "0", "x": "0"}))
    one = algebra_from_functions(discrete(["0"]), P, {"0": "0"})
    to_one = Homomorphism(B, one, MonotoneMap(B.carrier, one.carrier, {"0": "0", "x": "0"}))
    from_one = Homomorphism(one, B, MonotoneMap(one.carrier, B.carrier, {"0": "0"}))
    K, _ = kernel_comma(to_one)
    a = Homomorphism(K, K, MonotoneMap(K.carrier, K.carrier, {k: "0" for k in K.elements}))
    d = Diagram(to_one, from_one, to_one, from_one, a, collapse, identity_hom(one))
    with pytest.raises(HypothesisError):
        check_ss5l_instance(d)


def test_noncoherent_example_on_truncated_chains():
    for n in (2, 3, 4):
        for m in (2, 3):
            A, B = named_algebra(f"trunc{n}"), named_algebra(f"trunc{m}")
            assert check_noncoherent_example(A, B).verdict == PASS


def test_noncoherent_example_needs_subtraction():
    with pytest.raises(TheoryError):
        check_noncoherent_example(named_algebra("Z2"))


def test_constant_subtraction_fails_condition_two():
    # same signature, monoid axioms only, so monus may be anything
    th = builtin_theory("TruncMonoid")
    loose = Theory(
        "LooseMonus",
        th.symbols,
        tuple(ax for ax in th.axioms if "monus" not in str(ax)),
    )
    A = algebra_from_functions(
        chain(3), loose,
        {"0": 0, "add": lambda a, b: min(a + b, 2), "monus": lambda a, b: 0},
    )
    r = check_noncoherent_example(A)
    assert r.verdict == FAIL
    assert r.counterexamples[0] == ("(2) a - 0 = a", (1, 0))


def test_monus_detection_uses_the_arity_order():
    sym = OperationSymbol("minus", validate_oset(["x", "y"], [("y", "x")]), coherent=False)
    th = Theory("Sub", (OperationSymbol("0", discrete([])), sym))
    A = algebra_from_functions(chain(1), th, {"0": 0, "minus": lambda a, b: 0})
    with pytest.raises(TheoryError, match="add"):
        check_noncoherent_example(A)
