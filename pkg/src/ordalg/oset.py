"""Finite preordered sets, monotone maps, powers and products.

Elements are arbitrary hashable identifiers.  Every OSet keeps a canonical
enumeration order (input order for user-built sets, lexicographic for derived
ones) and all iteration in the package follows it, which is what makes every
search below deterministic.

Antisymmetry is never assumed: "ordered" always means preordered.
"""

from __future__ import annotations

from collections import namedtuple
from itertools import product as _cartesian

__all__ = [
    "OrderError",
    "OSet",
    "MonotoneMap",
    "validate_oset",
    "chain",
    "discrete",
    "codiscrete",
    "power",
    "product",
    "monotone_tuples",
    "classify_map",
    "MapClass",
    "image_factorization",
    "diagonal_fill_in",
]


class OrderError(ValueError):
    """Raised for malformed preorders or non-monotone maps."""


def _closure(elements, pairs):
    # Warshall on index matrices; n is tiny.
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[index[a]][index[b]] = True
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return frozenset(
        (elements[i], elements[j]) for i in range(n) for j in range(n) if rel[i][j]
    )


class OSet:
    """A finite preordered set.

    ``le`` must already be reflexive and transitive; use :func:`validate_oset`
    to build one from arbitrary generating pairs.
    """

    __slots__ = ("elements", "le", "_index", "_up", "_down", "_hash")

    def __init__(self, elements, le):
        self.elements = tuple(elements)
        self.le = frozenset(le)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise OrderError("duplicate elements")
        up = {e: [] for e in self.elements}
        down = {e: [] for e in self.elements}
        # canonical order inside up/down sets
        for a in self.elements:
            for b in self.elements:
                if (a, b) in self.le:
                    up[a].append(b)
                    down[b].append(a)
        self._up = {e: tuple(v) for e, v in up.items()}
        self._down = {e: tuple(v) for e, v in down.items()}
        self._hash = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        if not isinstance(other, OSet):
            return NotImplemented
        return self.elements == other.elements and self.le == other.le

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.elements, self.le))
        return self._hash

    def __repr__(self):
        strict = sorted(
            ((a, b) for a, b in self.le if a != b),
            key=lambda p: (self._index[p[0]], self._index[p[1]]),
        )
        return f"OSet({list(self.elements)!r}, le={strict!r})"

    def index(self, x):
        return self._index[x]

    def leq(self, a, b):
        return (a, b) in self.le

    def up(self, a):
        """Elements above ``a`` (inclusive), canonical order."""
        return self._up[a]

    def down(self, a):
        return self._down[a]

    def sorted_pairs(self):
        ix = self._index
        return sorted(self.le, key=lambda p: (ix[p[0]], ix[p[1]]))

    def is_symmetric(self):
        return all((b, a) in self.le for a, b in self.le)

    def is_discrete(self):
        return all(a == b for a, b in self.le)

    def sub(self, elements):
        """Full sub-preorder on ``elements`` (kept in this set's order)."""
        keep = set(elements)
        elems = [e for e in self.elements if e in keep]
        return OSet(elems, ((a, b) for a, b in self.le if a in keep and b in keep))

    def opposite(self):
        return OSet(self.elements, ((b, a) for a, b in self.le))


def validate_oset(raw_elements, raw_pairs=()):
    """Build the preorder generated by ``raw_pairs`` on ``raw_elements``.

    The result's ``le`` is the reflexive-transitive closure of the pairs and
    the input order of the elements becomes the canonical order.
    """
    elements = list(raw_elements)
    seen = set()
    for e in elements:
        if e in seen:
            raise OrderError(f"duplicate element {e!r}")
        seen.add(e)
    pairs = list(raw_pairs)
    for a, b in pairs:
        for x in (a, b):
            if x not in seen:
                raise OrderError(f"pair ({a!r}, {b!r}) mentions unknown element {x!r}")
    return OSet(elements, _closure(elements, pairs))


def chain(n_or_elements):
    """The chain e0 <= e1 <= ... (``n`` given means elements 0..n-1)."""
    if isinstance(n_or_elements, int):
        elems = list(range(n_or_elements))
    else:
        elems = list(n_or_elements)
    return validate_oset(elems, zip(elems, elems[1:]))


def discrete(elements):
    return validate_oset(list(elements))


def codiscrete(elements):
    elems = list(elements)
    return OSet(elems, ((a, b) for a in elems for b in elems))


def monotone_tuples(X, C):
    """Yield the monotone maps X -> C as tuples aligned with ``X.elements``.

    Output is lexicographic in the canonical orders of X and C (first element
    of X most significant).  Backtracking prunes against already placed
    coordinates, so the cost is proportional to the output.
    """
    xs = X.elements
    n = len(xs)
    if n == 0:
        yield ()
        return
    # constraints[i]: (j, j_le_i, i_le_j) for j < i that are comparable to i
    constraints = []
    for i in range(n):
        cons = []
        for j in range(i):
            lo = X.leq(xs[j], xs[i])
            hi = X.leq(xs[i], xs[j])
            if lo or hi:
                cons.append((j, lo, hi))
        constraints.append(cons)
    cels = C.elements
    le = C.le
    current = [None] * n

    def rec(i):
        if i == n:
            yield tuple(current)
            return
        cons = constraints[i]
        for c in cels:
            ok = True
            for j, lo, hi in cons:
                v = current[j]
                if lo and (v, c) not in le:
                    ok = False
                    break
                if hi and (c, v) not in le:
                    ok = False
                    break
            if ok:
                current[i] = c
                yield from rec(i + 1)

    yield from rec(0)


def _pointwise_le(C, f, g):
    return all((a, b) in C.le for a, b in zip(f, g))


def power(X, C):
    """The power X ⋔ C: monotone maps X -> C with the pointwise preorder.

    Elements are tuples indexed by ``X.elements``.
    """
    elems = list(monotone_tuples(X, C))
    le = [(f, g) for f in elems for g in elems if _pointwise_le(C, f, g)]
    return OSet(elems, le)


def product(A, B):
    """Componentwise preorder on A x B, elements ``(a, b)`` in lex order."""
    elems = list(_cartesian(A.elements, B.elements))
    le = [
        ((a, b), (a2, b2))
        for (a, a2) in A.sorted_pairs()
        for (b, b2) in B.sorted_pairs()
    ]
    return OSet(elems, le)


class MonotoneMap:
    """A monotone map between two OSets, stored as a total table."""

    __slots__ = ("dom", "cod", "values")

    def __init__(self, dom, cod, values, check=True):
        self.dom = dom
        self.cod = cod
        if not isinstance(values, dict):
            values = dict(values)
        self.values = values
        if check:
            self._check()

    def _check(self):
        for a in self.dom.elements:
            if a not in self.values:
                raise OrderError(f"map undefined at {a!r}")
            if self.values[a] not in self.cod:
                raise OrderError(f"value {self.values[a]!r} of {a!r} not in codomain")
        extra = set(self.values) - set(self.dom.elements)
        if extra:
            raise OrderError(f"map defined outside its domain: {sorted(map(repr, extra))}")
        for a, b in self.dom.sorted_pairs():
            if not self.cod.leq(self.values[a], self.values[b]):
                raise OrderError(
                    f"not monotone: {a!r} <= {b!r} but "
                    f"{self.values[a]!r} </= {self.values[b]!r}"
                )

    def __call__(self, a):
        return self.values[a]

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and all(self.values[a] == other.values[a] for a in self.dom)
        )

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(self.values[a] for a in self.dom)))

    def __repr__(self):
        body = ", ".join(f"{a!r}->{self.values[a]!r}" for a in self.dom)
        return f"MonotoneMap({body})"

    def table(self):
        return tuple(self.values[a] for a in self.dom.elements)

    def compose(self, first):
        """``self ∘ first``."""
        return MonotoneMap(
            first.dom, self.cod, {a: self.values[first.values[a]] for a in first.dom}
        )

    @classmethod
    def identity(cls, X):
        return cls(X, X, {a: a for a in X}, check=False)

    def image(self):
        hit = set(self.values[a] for a in self.dom)
        return [c for c in self.cod.elements if c in hit]


MapClass = namedtuple("MapClass", "is_full is_ff_mono is_so")


def classify_map(f):
    """Elementwise fullness, ff-mono (full + injective) and so (surjective)."""
    dom, cod = f.dom, f.cod
    full = all(
        dom.leq(a, b)
        for a in dom
        for b in dom
        if cod.leq(f(a), f(b))
    )
    injective = len(set(f(a) for a in dom)) == len(dom)
    surjective = len(f.image()) == len(cod)
    return MapClass(full, full and injective, surjective)


def image_factorization(f):
    """Factor ``f = m ∘ e`` with ``e`` surjective and ``m`` a full embedding."""
    img = f.cod.sub(f.image())
    e = MonotoneMap(f.dom, img, dict(f.values))
    m = MonotoneMap(img, f.cod, {c: c for c in img})
    return e, m


def diagonal_fill_in(e, m, u, v):
    """Diagonal ``d`` with ``d∘e = u`` and ``m∘d = v`` for a commuting square.

    ``e: A -> B`` surjective, ``m: U -> V`` full and injective, and
    ``m∘u = v∘e``.  Raises OrderError when the square does not commute or no
    monotone diagonal exists.
    """
    for a in e.dom:
        if m(u(a)) != v(e(a)):
            raise OrderError(f"square does not commute at {a!r}")
    values = {}
    for a in e.dom:
        b = e(a)
        if b in values and values[b] != u(a):
            raise OrderError(f"no diagonal: {b!r} has two candidate values")
        values[b] = u(a)
    if len(values) != len(e.cod):
        raise OrderError("e is not surjective")
    return MonotoneMap(e.cod, u.cod, values)
