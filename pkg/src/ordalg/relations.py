"""Relations between finite algebras: ideals, congruences, composition.

A relation from A to B is a set of pairs that is a subalgebra of A x B with
the inherited componentwise order.  All fixpoints process pairs in the
canonical order of the product so results never depend on set iteration.
"""

from __future__ import annotations

from itertools import product as _cartesian

from .oset import OSet, monotone_tuples

__all__ = [
    "RelationError",
    "Relation",
    "generate_relation",
    "ideal_violation",
    "is_ideal",
    "congruence_violation",
    "is_congruence",
    "closure_violation",
    "is_subalgebra",
    "opposite",
    "compose",
    "set_composite",
    "enumerate_congruences",
    "enumerate_ideals",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 4096
MODES = ("subalgebra", "ideal", "congruence")


class RelationError(ValueError):
    pass


class Relation:
    """A set of pairs ``(a, b)`` from ``left`` to ``right``.

    ``seeds`` and ``trace`` record how the relation was produced (trace is a
    list of ``(step, added pairs)``); ``diagnostics`` is filled by
    :func:`compose`.
    """

    __slots__ = ("left", "right", "pairs", "seeds", "trace", "diagnostics")

    def __init__(self, left, right, pairs, seeds=None, trace=(), diagnostics=None):
        self.left = left
        self.right = right
        self.pairs = frozenset(pairs)
        self.seeds = frozenset(self.pairs if seeds is None else seeds)
        self.trace = tuple(trace)
        self.diagnostics = dict(diagnostics or {})

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return (
            self.pairs == other.pairs
            and (self.left is other.left or self.left == other.left)
            and (self.right is other.right or self.right == other.right)
        )

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return f"Relation({self.sorted_pairs()!r})"

    def _key(self, p):
        return (self.left.carrier.index(p[0]), self.right.carrier.index(p[1]))

    def sorted_pairs(self):
        return sorted(self.pairs, key=self._key)

    def canonical_key(self):
        return (len(self.pairs), tuple(sorted(self._key(p) for p in self.pairs)))

    def holds(self, a, b):
        return (a, b) in self.pairs


def _sort_pairs(A, B, pairs):
    ia, ib = A.carrier.index, B.carrier.index
    return sorted(pairs, key=lambda p: (ia(p[0]), ib(p[1])))


def _pair_oset(A, B, pairs):
    elems = _sort_pairs(A, B, pairs)
    la, lb = A.carrier.le, B.carrier.le
    le = [
        (p, q)
        for p in elems
        for q in elems
        if (p[0], q[0]) in la and (p[1], q[1]) in lb
    ]
    return OSet(elems, le)


def _operation_images(A, B, pairs):
    """Images of all operations applied to monotone tuples of ``pairs``."""
    R = _pair_oset(A, B, pairs)
    out = []
    for sym in A.theory.symbols:
        ta, tb = A.tables[sym.name], B.tables[sym.name]
        for t in monotone_tuples(sym.arity, R):
            left = tuple(p[0] for p in t)
            right = tuple(p[1] for p in t)
            out.append((sym.name, t, (ta[left], tb[right])))
    return out


def closure_violation(R):
    """First ``(symbol, tuple, value)`` escaping R, or None."""
    for name, t, v in _operation_images(R.left, R.right, R.pairs):
        if v not in R.pairs:
            return (name, t, v)
    return None


def is_subalgebra(R):
    return closure_violation(R) is None


def _ideal_step(A, B, pairs):
    ca, cb = A.carrier, B.carrier
    new = set()
    for x, y in _sort_pairs(A, B, pairs):
        for x2 in ca.down(x):
            for y2 in cb.up(y):
                if (x2, y2) not in pairs:
                    new.add((x2, y2))
    return new


def _congruence_step(A, pairs):
    new = {(a, a) for a in A.elements if (a, a) not in pairs}
    succ = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    for a, b in pairs:
        for c in succ.get(b, ()):
            if (a, c) not in pairs:
                new.add((a, c))
    return new


def _fixpoint(A, B, seeds, mode):
    pairs = set(seeds)
    trace = []
    while True:
        grown = False
        added = {v for _, _, v in _operation_images(A, B, pairs)} - pairs
        if added:
            trace.append(("operations", tuple(_sort_pairs(A, B, added))))
            pairs |= added
            grown = True
        if mode in ("ideal", "congruence"):
            added = _ideal_step(A, B, pairs)
            if added:
                trace.append(("ideal", tuple(_sort_pairs(A, B, added))))
                pairs |= added
                grown = True
        if mode == "congruence":
            added = _congruence_step(A, pairs)
            if added:
                trace.append(("congruence", tuple(_sort_pairs(A, B, added))))
                pairs |= added
                grown = True
        if not grown:
            return pairs, trace


def generate_relation(A, B, seeds=(), mode="subalgebra"):
    """Least relation of the given kind containing ``seeds``.

    ``mode`` is ``"subalgebra"`` (operation closure), ``"ideal"`` (plus
    down-up closure) or ``"congruence"`` (plus reflexive and transitive
    closure; needs ``A == B``).
    """
    if mode not in MODES:
        raise RelationError(f"unknown mode {mode!r}")
    if mode == "congruence" and not (A is B or A == B):
        raise RelationError("congruence mode needs a single algebra")
    seeds = set(seeds)
    for a, b in seeds:
        if a not in A.carrier or b not in B.carrier:
            raise RelationError(f"seed {(a, b)!r} outside the carriers")
    pairs, trace = _fixpoint(A, B, seeds, mode)
    return Relation(A, B, pairs, seeds=seeds, trace=trace)


def ideal_violation(R):
    """First ``(x', x, y, y')`` with x' <= x R y <= y' but not x' R y'."""
    ca, cb = R.left.carrier, R.right.carrier
    for x, y in R.sorted_pairs():
        for x2 in ca.down(x):
            for y2 in cb.up(y):
                if (x2, y2) not in R.pairs:
                    return (x2, x, y, y2)
    return None


def is_ideal(R):
    return ideal_violation(R) is None


def congruence_violation(R):
    """None, or ``(reason, witness)`` for the first failed requirement."""
    if not (R.left is R.right or R.left == R.right):
        raise RelationError("congruences live on a single algebra")
    v = ideal_violation(R)
    if v is not None:
        return ("not an ideal", v)
    for a in R.left.elements:
        if (a, a) not in R.pairs:
            return ("missing diagonal pair", (a, a))
    for a, b in R.sorted_pairs():
        for c in R.left.elements:
            if (b, c) in R.pairs and (a, c) not in R.pairs:
                return ("not transitive", (a, b, c))
    return None


def is_congruence(R):
    return congruence_violation(R) is None


def opposite(R):
    """Swap components.  The result need not be an ideal."""
    return Relation(
        R.right,
        R.left,
        ((b, a) for a, b in R.pairs),
        seeds=((b, a) for a, b in R.seeds),
    )


def set_composite(R, S):
    """``{(a, c) : a R b and b S c for some b}``."""
    succ = {}
    for b, c in S.pairs:
        succ.setdefault(b, []).append(c)
    return {(a, c) for a, b in R.pairs for c in succ.get(b, ())}


def compose(R, S):
    """Composite relation ``R`` then ``S`` from ``R.left`` to ``S.right``.

    Starts from the set composite and closes under operations (on monotone
    tuples) and down-up closure until stable.  ``diagnostics`` records whether
    either closure added pairs beyond the set composite.
    """
    if not (R.right is S.left or R.right == S.left):
        raise RelationError("compose: R.right and S.left differ")
    A, C = R.left, S.right
    base = set_composite(R, S)
    pairs = set(base)
    ops_added = set()
    ideal_added = set()
    trace = []
    while True:
        added = {v for _, _, v in _operation_images(A, C, pairs)} - pairs
        if added:
            ops_added |= added
            trace.append(("operations", tuple(_sort_pairs(A, C, added))))
            pairs |= added
        added2 = _ideal_step(A, C, pairs)
        if added2:
            ideal_added |= added2
            trace.append(("ideal", tuple(_sort_pairs(A, C, added2))))
            pairs |= added2
        if not added and not added2:
            break
    diag = {
        "operation_closure_added": bool(ops_added),
        "ideal_closure_added": bool(ideal_added),
        "extra_pairs": tuple(_sort_pairs(A, C, ops_added | ideal_added)),
    }
    return Relation(A, C, pairs, seeds=base, trace=trace, diagnostics=diag)


def _canonical(relations):
    return sorted(relations, key=lambda r: r.canonical_key())


def _join_closure(A, B, mode, limit):
    """Every closed relation, as joins of the bottom and principal ones.

    Each closed set is the join of the principal closed sets of its own
    pairs, so adding principals one at a time reaches all of them.  Returns
    ``(relations, complete)``; ``complete`` is False once ``limit`` is hit.
    """
    bottom = generate_relation(A, B, (), mode)
    found = {bottom.pairs: bottom}
    order = [bottom]
    for a, b in _cartesian(A.elements, B.elements):
        principal = generate_relation(A, B, {(a, b)}, mode)
        for X in list(order):
            if principal.pairs <= X.pairs:
                continue
            J = generate_relation(A, B, X.pairs | principal.pairs, mode)
            if J.pairs not in found:
                found[J.pairs] = J
                order.append(J)
                if len(order) > limit:
                    return _canonical(order), False
    return _canonical(order), True


def enumerate_congruences(A, cap=DEFAULT_CAP, max_relations=20000):
    """All congruences of ``A`` in canonical order, plus an exactness flag.

    When the number of candidate pair sets above the forced base (the carrier
    order) is at most ``cap`` they are filtered one by one; otherwise the
    lattice is generated from principal congruences by joins.
    """
    base = set(A.carrier.le)
    free = [p for p in _cartesian(A.elements, A.elements) if p not in base]
    if 2 ** len(free) <= cap:
        out = []
        for mask in range(2 ** len(free)):
            pairs = set(base)
            for i, p in enumerate(free):
                if mask >> i & 1:
                    pairs.add(p)
            R = Relation(A, A, pairs)
            if congruence_violation(R) is None and closure_violation(R) is None:
                out.append(R)
        return _canonical(out), True
    return _join_closure(A, A, "congruence", max_relations)


def _up_sets(P, limit):
    """Up-closed subsets of preorder P, or None if there are more than ``limit``."""
    elems = P.elements
    n = len(elems)
    out = []
    state = {}

    def force(e, val, changed):
        stack = [e]
        while stack:
            x = stack.pop()
            cur = state.get(x)
            if cur is None:
                state[x] = val
                changed.append(x)
                stack.extend(P.up(x) if val else P.down(x))
            elif cur != val:
                return False
        return True

    def rec(i):
        while i < n and elems[i] in state:
            i += 1
        if i == n:
            out.append(frozenset(x for x in elems if state[x]))
            return len(out) <= limit
        for val in (False, True):
            changed = []
            ok = force(elems[i], val, changed)
            if ok and not rec(i + 1):
                return False
            for x in changed:
                del state[x]
        return True

    return out if rec(0) else None


def enumerate_ideals(A, B, cap=DEFAULT_CAP, max_relations=20000):
    """All ideals ``A -> B`` (down-up closed subalgebras of A x B).

    Down-up closed pair sets are the up-sets of A^op x B; if there are at
    most ``cap`` of them they are enumerated and filtered for operation
    closure, otherwise ideals are generated by joins of principal ones.
    Returns ``(ideals, exact)``.
    """
    ca, cb = A.carrier, B.carrier
    elems = list(_cartesian(ca.elements, cb.elements))
    le = [
        ((a, b), (a2, b2))
        for (a, b) in elems
        for (a2, b2) in elems
        if ca.leq(a2, a) and cb.leq(b, b2)
    ]
    candidates = _up_sets(OSet(elems, le), cap)
    if candidates is None:
        return _join_closure(A, B, "ideal", max_relations)
    out = []
    for pairs in candidates:
        R = Relation(A, B, pairs)
        if closure_violation(R) is None:
            out.append(R)
    return _canonical(out), True
