"""Shared hypothesis strategies for small preorders and models."""

import random

from hypothesis import strategies as st

from ordalg.corpus import random_preorder, _random_monotone_table
from ordalg.algebra import validate_algebra
from ordalg.oset import validate_oset
from ordalg.theory import builtin_theory


@st.composite
def preorders(draw, max_size=4, min_size=1):
    n = draw(st.integers(min_size, max_size))
    els = list(range(n))
    pairs = draw(st.lists(st.tuples(st.sampled_from(els), st.sampled_from(els)), max_size=2 * n))
    return validate_oset(els, pairs)


@st.composite
def small_algebras(draw, theories=("Magma", "PointedMagma", "Ternary"), max_size=3):
    """Random models of axiom-free theories, built from a drawn seed."""
    th = builtin_theory(draw(st.sampled_from(theories)))
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    carrier = random_preorder(rng, draw(st.integers(1, max_size)))
    tables = {}
    for sym in th.symbols:
        if sym.is_constant:
            tables[sym.name] = {(): rng.choice(carrier.elements)}
        else:
            tables[sym.name] = _random_monotone_table(rng, sym.arity, carrier)
    return validate_algebra(carrier, tables, th, name=f"h{seed}")
