"""Brute-force reference computations for small carriers.

Nothing here reuses the closure or search code of the other modules: each
function enumerates every candidate (all maps, all pair sets, all tables)
and filters by the definitions.  Sizes are kept tiny on purpose.
"""

from __future__ import annotations

from itertools import product as _cartesian

__all__ = [
    "brute_monotone_maps",
    "closure_rules",
    "brute_closed_sets",
    "brute_least_closed",
    "brute_congruences",
    "brute_ideals",
    "brute_compose",
    "brute_maltsev_tables",
    "brute_clone_tables",
]


def brute_monotone_maps(X, C):
    """All maps X -> C (as tuples aligned with X.elements) that preserve <=."""
    xs = X.elements
    out = []
    for values in _cartesian(C.elements, repeat=len(xs)):
        f = dict(zip(xs, values))
        if all(C.leq(f[a], f[b]) for a, b in X.le):
            out.append(values)
    return out


def _domain(A, sym):
    return list(A.tables[sym.name])


def closure_rules(A, B, mode):
    """Horn rules (premises, conclusion) over pairs of A x B whose models are
    exactly the closed relations of the given kind."""
    pairs = list(_cartesian(A.elements, B.elements))
    rules = []
    for sym in A.theory.symbols:
        da, db = _domain(A, sym), _domain(B, sym)
        for s in da:
            for t in db:
                rules.append((frozenset(zip(s, t)), (A.tables[sym.name][s], B.tables[sym.name][t])))
    if mode in ("ideal", "congruence"):
        for x, y in pairs:
            for x2 in A.elements:
                for y2 in B.elements:
                    if A.leq(x2, x) and B.leq(y, y2):
                        rules.append((frozenset([(x, y)]), (x2, y2)))
    if mode == "congruence":
        for a in A.elements:
            rules.append((frozenset(), (a, a)))
        for a, b, c in _cartesian(A.elements, repeat=3):
            rules.append((frozenset([(a, b), (b, c)]), (a, c)))
    return pairs, rules


def brute_closed_sets(A, B, mode):
    """Every closed pair set, found by testing all 2^|A x B| subsets."""
    pairs, rules = closure_rules(A, B, mode)
    bit = {p: 1 << i for i, p in enumerate(pairs)}
    masks = [(sum(bit[p] for p in prem), bit[c]) for prem, c in rules]
    out = []
    for S in range(1 << len(pairs)):
        if all(S & c or (S & pm) != pm for pm, c in masks):
            out.append(frozenset(p for p in pairs if S & bit[p]))
    return out


def brute_least_closed(A, B, seeds, mode, closed=None):
    """Intersection of all closed sets containing ``seeds``."""
    closed = brute_closed_sets(A, B, mode) if closed is None else closed
    seeds = frozenset(seeds)
    result = None
    for S in closed:
        if seeds <= S:
            result = S if result is None else result & S
    return result


def brute_congruences(A):
    return brute_closed_sets(A, A, "congruence")


def brute_ideals(A, B):
    return brute_closed_sets(A, B, "ideal")


def brute_compose(A, R, S, C=None, closed=None):
    """Least ideal A -> C containing the set composite of pair sets R, S."""
    C = A if C is None else C
    base = {(a, c) for a, b in R for b2, c in S if b == b2}
    return brute_least_closed(A, C, base, "ideal", closed)


def brute_maltsev_tables(A):
    """All monotone ternary tables meeting a <= r(a,b,c) when b <= c and
    r(u,v,w) <= w when u <= v.  Feasible for 2-element carriers."""
    els = A.elements
    keys = list(_cartesian(els, repeat=3))
    out = []
    for values in _cartesian(els, repeat=len(keys)):
        r = dict(zip(keys, values))
        if any(A.leq(b, c) and not A.leq(a, r[a, b, c]) for a, b, c in keys):
            continue
        if any(A.leq(u, v) and not A.leq(r[u, v, w], w) for u, v, w in keys):
            continue
        if all(A.leq(r[s], r[t]) for s in keys for t in keys
               if all(A.leq(x, y) for x, y in zip(s, t))):
            out.append(r)
    return out


def brute_clone_tables(A, ctx, rounds):
    """Tables of terms of depth <= ``rounds`` over ``ctx``, by naive
    iteration: every symbol applied to every tuple of known tables whose
    values form an admissible argument at every input."""
    inputs = [t for t in _cartesian(A.elements, repeat=len(ctx.elements))
              if all(A.leq(t[ctx.index(x)], t[ctx.index(y)]) for x, y in ctx.le)]
    known = {tuple(t[i] for t in inputs) for i in range(len(ctx.elements))}
    for sym in A.theory.symbols:
        if sym.is_constant:
            known.add(tuple(A.tables[sym.name][()] for _ in inputs))
    for _ in range(rounds):
        new = set(known)
        for sym in A.theory.symbols:
            if sym.is_constant:
                continue
            table = A.tables[sym.name]
            for args in _cartesian(sorted(known, key=repr), repeat=sym.nargs):
                cols = [tuple(a[j] for a in args) for j in range(len(inputs))]
                if all(c in table for c in cols):
                    new.add(tuple(table[c] for c in cols))
        if new == known:
            break
        known = new
    return known
