"""Term operations of a finite algebra and bounded witness searches.

The clone is generated semantically: members are value tables on the
monotone assignments of a variable context, deduplicated by table, each with
the first (shallowest, then lexicographically least) term found for it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product as _cartesian

import numpy as np

from .algebra import NonMonotoneArgument, eval_term
from .oset import discrete, monotone_tuples, validate_oset
from .results import FAIL, PASS, CheckResult
from .theory import App, TheoryError, Var, wellformed_term

__all__ = [
    "SearchBudget",
    "TermOperation",
    "CloneResult",
    "generate_clone",
    "MaltsevSearch",
    "ProtoSearch",
    "find_maltsev",
    "maltsev_table_ok",
    "exhaustive_maltsev_tables",
    "find_proto_witnesses",
    "verify_witnesses",
]


@dataclass(frozen=True)
class SearchBudget:
    max_term_depth: int = 4
    max_clone_size: int = 20000
    time_limit: float | None = None  # seconds; None means unbounded

    def __post_init__(self):
        if self.max_term_depth <= 0 or self.max_clone_size <= 0:
            raise ValueError("budget bounds must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


class TermOperation:
    """A derived operation: value table on ``inputs`` plus a witnessing term."""

    __slots__ = ("algebra", "ctx", "inputs", "table", "witness", "_index")

    def __init__(self, algebra, ctx, inputs, table, witness, index=None):
        self.algebra = algebra
        self.ctx = ctx
        self.inputs = inputs
        self.table = table
        self.witness = witness
        self._index = index if index is not None else {t: i for i, t in enumerate(inputs)}

    def __call__(self, *args):
        return self.table[self._index[args]]

    def __repr__(self):
        return f"TermOperation({self.witness})"

    def as_dict(self):
        return dict(zip(self.inputs, self.table))

    def is_monotone(self):
        le = self.algebra.carrier.le
        X = self.ctx.elements
        pos = range(len(X))
        for i, s in enumerate(self.inputs):
            for j, t in enumerate(self.inputs):
                if i != j and all((s[k], t[k]) in le for k in pos):
                    if (self.table[i], self.table[j]) not in le:
                        return False
        return True


@dataclass
class CloneResult:
    operations: list
    complete: bool
    depth: int
    stop_reason: str = "fixpoint"

    def __iter__(self):
        return iter(self.operations)

    def __len__(self):
        return len(self.operations)

    def tables(self):
        return {op.table for op in self.operations}


class CloneGenerator:
    """Lazy, canonical-order enumeration of the clone.

    Iterating yields TermOperations shallowest first; within a round, in
    lexicographic order of (symbol, argument member indices).  After
    exhaustion ``complete`` and ``stop_reason`` describe why it stopped.
    Tables are handled as numpy index arrays internally.
    """

    def __init__(self, A, ctx, budget=None):
        self.A = A
        self.ctx = ctx
        self.budget = budget or SearchBudget()
        self.inputs = list(monotone_tuples(ctx, A.carrier))
        self.index = {t: i for i, t in enumerate(self.inputs)}
        self.members = []
        self.complete = False
        self.stop_reason = None
        self.depth = 0

    def __iter__(self):
        A, budget = self.A, self.budget
        deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
        els = A.elements
        pos = {e: i for i, e in enumerate(els)}
        n = len(els)
        m = len(self.inputs)
        leq = np.zeros((n, n), dtype=bool)
        for a, b in A.carrier.le:
            leq[pos[a], pos[b]] = True
        cap = budget.max_clone_size
        T = np.zeros((max(cap, 1), m), dtype=np.int16)
        terms = []
        seen = set()
        # rows are keyed by their base-n code when that fits in an int64
        if n ** m < 2 ** 62:
            weights = np.array([n ** i for i in range(m)], dtype=np.int64)
            encode = lambda rows: rows.astype(np.int64) @ weights
        else:
            encode = lambda rows: np.ascontiguousarray(rows).view(
                np.dtype((np.void, 2 * m))).ravel()

        def admit(row, term):
            T[len(terms)] = row
            terms.append(term)
            op = TermOperation(A, self.ctx, self.inputs, tuple(els[v] for v in row), term, self.index)
            self.members.append(op)
            return op

        start = []
        for i, x in enumerate(self.ctx.elements):
            start.append((np.array([pos[inp[i]] for inp in self.inputs], dtype=np.int16), Var(x)))
        for s in A.theory.symbols:
            if s.is_constant:
                start.append((np.full(m, pos[A.tables[s.name][()]], dtype=np.int16), App(s.name)))
        for row, term in start:
            if len(terms) >= cap:
                self.stop_reason = "size"
                return
            key = encode(row[None, :])[0].item() if m else b""
            if key in seen:
                continue
            seen.add(key)
            yield admit(row, term)

        plans = []
        for s in A.theory.symbols:
            if s.is_constant:
                continue
            k = s.nargs
            apos = {x: j for j, x in enumerate(s.arity.elements)}
            strict = [(apos[x], apos[y]) for x, y in s.arity.sorted_pairs() if x != y]
            optab = np.full((n,) * k, -1, dtype=np.int16)
            for t, v in A.tables[s.name].items():
                optab[tuple(pos[a] for a in t)] = pos[v]
            plans.append((s, k, strict, optab))

        prev = 0
        while True:
            if self.depth >= budget.max_term_depth:
                self.stop_reason = "depth"
                return
            self.depth += 1
            cur = len(terms)
            grew = False
            for s, k, strict, optab in plans:
                for combos in _combo_blocks(cur, k, m):
                    if deadline is not None and time.monotonic() > deadline:
                        self.stop_reason = "time"
                        return
                    if prev:
                        combos = combos[combos.max(axis=1) >= prev]
                    for a, b in strict:
                        if not len(combos):
                            break
                        ok = leq[T[combos[:, a]], T[combos[:, b]]].all(axis=1)
                        combos = combos[ok]
                    if not len(combos):
                        continue
                    rows = optab[tuple(T[combos[:, j]] for j in range(k))]
                    if m:
                        _, first = np.unique(encode(rows), return_index=True)
                        first.sort()
                    else:
                        first = np.array([0])
                    codes = encode(rows[first]) if m else [b""]
                    for r, key in zip(first, codes):
                        key = key.item() if m else key
                        if key in seen:
                            continue
                        seen.add(key)
                        combo = tuple(int(c) for c in combos[r])
                        grew = True
                        yield admit(rows[r], App(s.name, tuple(terms[c] for c in combo)))
                        if len(terms) >= cap:
                            self.stop_reason = "size"
                            return
            if not grew:
                self.complete = True
                self.stop_reason = "fixpoint"
                return
            prev = cur


def _combo_blocks(cur, k, m, budget=1 << 21):
    """All k-tuples over range(cur) in lexicographic order, as int arrays
    of at most about ``budget / m`` rows."""
    if k == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    step = max(1, budget // max(1, m * cur))
    last = np.arange(cur, dtype=np.int64)
    for prefix in _cartesian(range(cur), repeat=max(0, k - 2)):
        if k == 1:
            yield last[:, None]
            return
        for lo in range(0, cur, step):
            hi = min(cur, lo + step)
            second = np.repeat(np.arange(lo, hi, dtype=np.int64), cur)
            third = np.tile(last, hi - lo)
            head = np.broadcast_to(np.array(prefix, dtype=np.int64), (len(second), k - 2))
            yield np.column_stack([head, second, third])


def generate_clone(A, ctx, budget=None):
    """Term operations of ``A`` over the variable context ``ctx``.

    Starts from projections and constants and applies every operation symbol
    to tuples of members that are pointwise monotone along the symbol's arity.
    Stops at a fixpoint (``complete=True``) or when the budget runs out.
    """
    gen = CloneGenerator(A, ctx, budget)
    for _ in gen:
        pass
    return CloneResult(gen.members, gen.complete, gen.depth, gen.stop_reason)


def maltsev_table_ok(A, rho):
    """Both inequality families for a ternary callable ``rho``."""
    els = A.elements
    for a, b, c in _cartesian(els, els, els):
        if A.leq(b, c) and not A.leq(a, rho(a, b, c)):
            return False
    for u, v, w in _cartesian(els, els, els):
        if A.leq(u, v) and not A.leq(rho(u, v, w), w):
            return False
    return True


@dataclass
class MaltsevSearch:
    found: bool
    complete: bool
    mode: str
    witness: TermOperation | None = None
    table: dict | None = None
    noncoherent_candidates: list = field(default_factory=list)
    clone_size: int = 0
    reason: str = ""

    def __bool__(self):
        return self.found

    def rho(self, a, b, c):
        return self.table[(a, b, c)]


def _ternary_monotone(A, table):
    els = A.elements
    keys = list(_cartesian(els, els, els))
    for s in keys:
        for t in keys:
            if s != t and all(A.leq(x, y) for x, y in zip(s, t)):
                if not A.leq(table[s], table[t]):
                    return False
    return True


def find_maltsev(A, budget=None, exhaustive_tables=False):
    """Search for a ternary operation with a <= rho(a,b,c) when b <= c and
    rho(u,v,w) <= w when u <= v.

    Clone mode looks among term operations and can only say "not found within
    budget" unless no monotone table can
    qualify at all.  ``exhaustive_tables=True`` decides whether *any* monotone
    ternary table on the carrier qualifies.  Non-monotone clone members that
    satisfy the inequalities are listed as ``noncoherent_candidates`` and are
    never reported as witnesses.
    """
    if exhaustive_tables:
        table = exhaustive_maltsev_tables(A)
        return MaltsevSearch(table is not None, True, "exhaustive", table=table)
    if A.theory.is_coherent and exhaustive_maltsev_tables(A) is None:
        # clone members are monotone here, so none can qualify
        return MaltsevSearch(False, True, "clone", reason="no monotone table qualifies")
    gen = CloneGenerator(A, discrete(["a", "b", "c"]), budget)
    others = []
    for op in gen:
        if not maltsev_table_ok(A, op):
            continue
        if op.is_monotone():
            return MaltsevSearch(
                True, True, "clone", witness=op, table=op.as_dict(),
                noncoherent_candidates=others, clone_size=len(gen.members), reason="found",
            )
        others.append(op)
    return MaltsevSearch(
        False, gen.complete, "clone", noncoherent_candidates=others,
        clone_size=len(gen.members), reason=gen.stop_reason,
    )


def exhaustive_maltsev_tables(A):
    """Lexicographically first monotone ternary table meeting both families.

    Constraint search over the triples of the carrier: unary bounds from the
    two inequality families, binary constraints from monotonicity, arc
    consistency after every assignment.  Returns a dict or None.
    """
    carrier = A.carrier
    els = carrier.elements
    le = carrier.le
    keys = list(_cartesian(els, els, els))
    n = len(keys)
    domains = []
    for a, b, c in keys:
        dom = set(els)
        if (b, c) in le:
            dom &= set(carrier.up(a))
        if (a, b) in le:
            dom &= set(carrier.down(c))
        domains.append(dom)
    above = [[] for _ in range(n)]
    below = [[] for _ in range(n)]
    for i, s in enumerate(keys):
        for j, t in enumerate(keys):
            if i != j and all((x, y) in le for x, y in zip(s, t)):
                above[i].append(j)
                below[j].append(i)

    def revise(doms, queue):
        while queue:
            i = queue.pop()
            di = doms[i]
            for j in above[i]:
                dj = doms[j]
                keep = {y for y in dj if any((x, y) in le for x in di)}
                if keep != dj:
                    if not keep:
                        return False
                    doms[j] = keep
                    queue.append(j)
            for j in below[i]:
                dj = doms[j]
                keep = {x for x in dj if any((x, y) in le for y in di)}
                if keep != dj:
                    if not keep:
                        return False
                    doms[j] = keep
                    queue.append(j)
        return True

    if any(not d for d in domains) or not revise(domains, list(range(n))):
        return None

    def search(doms, i):
        if i == n:
            return doms
        if len(doms[i]) == 1:
            return search(doms, i + 1)
        for v in els:
            if v not in doms[i]:
                continue
            trial = list(doms)
            trial[i] = {v}
            if revise(trial, [i]):
                res = search(trial, i + 1)
                if res is not None:
                    return res
        return None

    final = search(domains, 0)
    if final is None:
        return None
    return {k: next(iter(d)) for k, d in zip(keys, final)}


@dataclass
class ProtoSearch:
    found: bool
    complete: bool
    mode: str
    n: int
    alphas: tuple = ()
    theta: TermOperation | None = None
    alpha_candidates: int = 0

    def __bool__(self):
        return self.found


def _check_mode(mode, allowed):
    if mode not in allowed:
        raise ValueError(f"mode must be one of {allowed}, got {mode!r}")


def find_proto_witnesses(A, n=1, budget=None, mode="lax"):
    """Binary alpha_1..alpha_n and (n+1)-ary theta from the clone with
    0 <= alpha_i(x,x) (lax) or alpha_i(x,x) <= 0 (colax) and
    theta(alpha_1(x,y),...,alpha_n(x,y),y) = x.
    """
    _check_mode(mode, ("lax", "colax"))
    if not A.theory.is_pointed:
        raise TheoryError(f"theory {A.theory.name} is not pointed")
    if n < 1:
        raise ValueError("n must be positive")
    zero = A.zero
    els = A.elements
    xy = discrete(["x", "y"])
    aclone = generate_clone(A, xy, budget)
    if mode == "lax":
        ok = lambda op: all(A.leq(zero, op(x, x)) for x in els)
    else:
        ok = lambda op: all(A.leq(op(x, x), zero) for x in els)
    alphas = [op for op in aclone if ok(op)]
    tvars = [f"t{i}" for i in range(1, n + 1)] + ["y"]
    tgen = CloneGenerator(A, discrete(tvars), budget)
    pairs = list(_cartesian(els, els))
    # each alpha combination fixes theta on a few inputs; drop the
    # combinations that already demand two values at one input
    wanted = []
    for combo in _cartesian(alphas, repeat=n):
        need = {}
        for x, y in pairs:
            k = tgen.index[tuple(a(x, y) for a in combo) + (y,)]
            if need.setdefault(k, x) != x:
                break
        else:
            wanted.append((combo, sorted(need.items())))
    if wanted:
        for theta in tgen:
            tab = theta.table
            for combo, need in wanted:
                if all(tab[k] == x for k, x in need):
                    return ProtoSearch(True, True, mode, n, tuple(combo), theta, len(alphas))
    complete = aclone.complete and (tgen.complete or not wanted)
    return ProtoSearch(False, complete, mode, n, alpha_candidates=len(alphas))


def _parse(A, t, ctx):
    try:
        return wellformed_term(t, ctx, A.theory)
    except TheoryError as exc:
        raise TheoryError(f"ill-formed witness {t!s}: {exc}") from None


def verify_witnesses(A, witnesses, mode):
    """Evaluate the mode's (in)equalities on every admissible assignment.

    ``witnesses`` is ``{"alpha": [terms over x, y], "theta": term over
    t1..tn, y}`` for lax/colax and ``{"rho": term over a, b, c}`` for
    maltsev; terms may be strings.  Returns a CheckResult whose
    counterexamples are ``(condition, assignment, lhs, rhs)`` in canonical
    order.
    """
    _check_mode(mode, ("lax", "colax", "maltsev"))
    bad = []
    checked = 0

    def ev(term, env):
        try:
            return eval_term(A, term, env)
        except NonMonotoneArgument as exc:
            return exc

    if mode == "maltsev":
        abc = discrete(["a", "b", "c"])
        rho = _parse(A, witnesses["rho"], abc)
        fam1 = validate_oset(["a", "b", "c"], [("b", "c")])
        for vals in monotone_tuples(fam1, A.carrier):
            env = dict(zip("abc", vals))
            r = ev(rho, env)
            checked += 1
            if isinstance(r, Exception) or not A.leq(vals[0], r):
                bad.append(("a <= rho(a,b,c) when b <= c", vals, vals[0], _show(r)))
        fam2 = validate_oset(["a", "b", "c"], [("a", "b")])
        for vals in monotone_tuples(fam2, A.carrier):
            env = dict(zip("abc", vals))
            r = ev(rho, env)
            checked += 1
            if isinstance(r, Exception) or not A.leq(r, vals[2]):
                bad.append(("rho(u,v,w) <= w when u <= v", vals, _show(r), vals[2]))
    else:
        if not A.theory.is_pointed:
            raise TheoryError(f"theory {A.theory.name} is not pointed")
        xy = discrete(["x", "y"])
        alphas = [_parse(A, t, xy) for t in witnesses["alpha"]]
        n = len(alphas)
        tvars = [f"t{i}" for i in range(1, n + 1)] + ["y"]
        theta = _parse(A, witnesses["theta"], discrete(tvars))
        zero = A.zero
        for i, alpha in enumerate(alphas, 1):
            for x in A.elements:
                r = ev(alpha, {"x": x, "y": x})
                checked += 1
                if isinstance(r, Exception):
                    holds = False
                elif mode == "lax":
                    holds = A.leq(zero, r)
                else:
                    holds = A.leq(r, zero)
                if not holds:
                    cond = f"0 <= alpha{i}(x,x)" if mode == "lax" else f"alpha{i}(x,x) <= 0"
                    sides = (zero, _show(r)) if mode == "lax" else (_show(r), zero)
                    bad.append((cond, (x,)) + sides)
        for x, y in _cartesian(A.elements, A.elements):
            checked += 1
            env = {"x": x, "y": y}
            vals = [ev(a, env) for a in alphas]
            if any(isinstance(v, Exception) for v in vals):
                bad.append(("theta(alpha(x,y)...,y) = x", (x, y), "undefined", x))
                continue
            r = ev(theta, dict(zip(tvars, vals + [y])))
            if isinstance(r, Exception) or r != x:
                bad.append(("theta(alpha(x,y)...,y) = x", (x, y), _show(r), x))
    verdict = FAIL if bad else PASS
    return CheckResult(verdict, bad, {"assignments_checked": checked, "mode": mode},
                       name=f"verify_witnesses[{mode}]")


def _show(r):
    return "undefined" if isinstance(r, Exception) else r
