"""Verdicts on finite instances: ideal zig-zag property, permutability,
degenerate order, split short five lemma probes, the truncated-subtraction
example.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    HomomorphismError,
    check_homomorphism,
    is_isomorphism,
    kernel_comma,
    product_algebra,
    subalgebra,
)
from .oset import classify_map
from .relations import (
    DEFAULT_CAP,
    Relation,
    RelationError,
    compose,
    enumerate_congruences,
    enumerate_ideals,
    ideal_violation,
    set_composite,
)
from .results import FAIL, INCONCLUSIVE, PASS, CheckResult
from .theory import TheoryError

__all__ = [
    "DiagramError",
    "HypothesisError",
    "Diagram",
    "REGULARITY_NOTE",
    "maltsev_ideal_violations",
    "check_maltsev_ideal_property",
    "check_ord_maltsev",
    "ideal_kernels",
    "check_ideal_kernels",
    "check_permutability",
    "check_degenerate",
    "check_ss5l_instance",
    "check_noncoherent_example",
]

REGULARITY_NOTE = (
    "finite algebras are treated as objects of a regular Ord-category; "
    "the bicoinserter axiom is not re-verified"
)


class DiagramError(ValueError):
    """Malformed split-sequence diagram (an input error, not a verdict)."""


class HypothesisError(DiagramError):
    """The maps a or c are not isomorphisms, so the probe says nothing."""


def maltsev_ideal_violations(D, limit=None):
    """6-tuples (x, y, y', u, u', v) with x D y <= y', u D y', u <= u', u' D v
    but not x D v, in lexicographic order of the canonical enumeration."""
    A, B = D.left, D.right
    ca, cb = A.carrier, B.carrier
    pairs = D.pairs
    by_right = {}
    by_left = {}
    for a, b in D.sorted_pairs():
        by_right.setdefault(b, []).append(a)
        by_left.setdefault(a, []).append(b)
    # a D-path x D y <= y' D^o u <= u' D v reaches v from x
    out = []
    for x in ca.elements:
        for y in by_left.get(x, ()):
            for y2 in cb.up(y):
                for u in by_right.get(y2, ()):
                    for u2 in ca.up(u):
                        for v in by_left.get(u2, ()):
                            if (x, v) not in pairs:
                                out.append((x, y, y2, u, u2, v))
                                if limit is not None and len(out) >= limit:
                                    return out
    return out


def check_maltsev_ideal_property(D):
    if ideal_violation(D) is not None:
        raise RelationError("check_maltsev_ideal_property needs an ideal")
    bad = maltsev_ideal_violations(D, limit=1)
    if bad:
        return CheckResult(FAIL, [{"ideal": D.sorted_pairs(), "tuple": bad[0]}],
                           name="maltsev_ideal_property")
    return CheckResult(PASS, name="maltsev_ideal_property")


def check_ord_maltsev(A, B=None, cap=DEFAULT_CAP):
    """Zig-zag property for every ideal A -> B (B defaults to A)."""
    B = A if B is None else B
    if A.theory != B.theory:
        raise TheoryError("check_ord_maltsev needs algebras over one theory")
    ideals, exact = enumerate_ideals(A, B, cap)
    bad = []
    for D in ideals:
        v = maltsev_ideal_violations(D, limit=1)
        if v:
            bad.append({"ideal": D.sorted_pairs(), "tuple": v[0]})
    verdict = FAIL if bad else (PASS if exact else INCONCLUSIVE)
    diag = {"ideals": len(ideals), "exact": exact, "assumption": REGULARITY_NOTE}
    return CheckResult(verdict, bad, diag, name="ord_maltsev")


def ideal_kernels(D):
    """D as a subalgebra of the product, with the congruences K1, K2 on it
    relating d to e when the first (second) component of d is below that
    of e."""
    A, B = D.left, D.right
    DA = subalgebra(product_algebra(A, B), D.pairs)
    E = DA.elements
    K1 = Relation(DA, DA, {(d, e) for d in E for e in E if A.leq(d[0], e[0])})
    K2 = Relation(DA, DA, {(d, e) for d in E for e in E if B.leq(d[1], e[1])})
    return DA, K1, K2


def check_ideal_kernels(D):
    """Pass iff K2 K1 is contained in K1 K2 as pair sets (see ideal_kernels).

    A pair (d, d'') in K2 K1 but not in K1 K2 is the same datum as a zig-zag
    counterexample for D, so this agrees with check_maltsev_ideal_property
    on every ideal."""
    if ideal_violation(D) is not None:
        raise RelationError("check_ideal_kernels needs an ideal")
    DA, K1, K2 = ideal_kernels(D)
    missing = set_composite(K2, K1) - set_composite(K1, K2)
    if missing:
        first = sorted(missing, key=K1._key)[0]
        return CheckResult(FAIL, [{"ideal": D.sorted_pairs(), "pair": first}],
                           {"size": len(DA)}, name="ideal_kernels")
    return CheckResult(PASS, diagnostics={"size": len(DA)}, name="ideal_kernels")


def check_permutability(A, cap=DEFAULT_CAP):
    """RS = SR (as pair sets) for every pair of congruences R, S."""
    congs, exact = enumerate_congruences(A, cap)
    bad = []
    extra = 0
    for i, R in enumerate(congs):
        for S in congs[i + 1:]:
            rs = compose(R, S)
            sr = compose(S, R)
            extra += rs.diagnostics["operation_closure_added"] + sr.diagnostics["operation_closure_added"]
            if rs.pairs != sr.pairs:
                only = sorted(rs.pairs ^ sr.pairs, key=rs._key)[0]
                side = "RS" if only in rs.pairs else "SR"
                bad.append({
                    "R": R.sorted_pairs(),
                    "S": S.sorted_pairs(),
                    "pair": only,
                    "only_in": side,
                })
    verdict = FAIL if bad else (PASS if exact else INCONCLUSIVE)
    diag = {
        "congruences": len(congs),
        "exact": exact,
        "composites_enlarged_by_operations": extra,
        "assumption": REGULARITY_NOTE,
    }
    return CheckResult(verdict, bad, diag, name="permutability")


def check_degenerate(A):
    """Pass iff the carrier preorder is symmetric."""
    for a, b in A.carrier.sorted_pairs():
        if not A.leq(b, a):
            return CheckResult(FAIL, [(a, b)], name="degenerate")
    return CheckResult(PASS, name="degenerate")


@dataclass
class Diagram:
    """Two split sequences over B, B' with comparison maps.

    ``f: A -> B`` with section ``s``, ``f2: A2 -> B2`` with section ``s2``;
    ``a: K -> K2`` between the kernel objects, ``b: A -> A2``, ``c: B -> B2``.
    ``mode`` selects kernels ``i_B/f`` ("lax") or ``f/i_B`` ("colax").
    """

    f: object
    s: object
    f2: object
    s2: object
    a: object
    b: object
    c: object
    mode: str = "lax"
    name: str = ""


def _same_subalgebra(X, Y):
    return X.carrier == Y.carrier and X.tables == Y.tables


def check_ss5l_instance(d):
    """Split short five lemma probe: with a and c isomorphisms, is b one?"""
    f, s, f2, s2, a, b, c = d.f, d.s, d.f2, d.s2, d.a, d.b, d.c
    if not f.dom.theory.is_pointed:
        raise DiagramError(f"theory {f.dom.theory.name} is not pointed")
    if d.mode not in ("lax", "colax"):
        raise DiagramError(f"mode must be lax or colax, got {d.mode!r}")
    for label, p, q in (("f.s", f, s), ("f'.s'", f2, s2)):
        if p.dom != q.cod or q.dom != p.cod:
            raise DiagramError(f"{label}: domains and codomains do not match")
        for x in p.cod.elements:
            if p(q(x)) != x:
                raise DiagramError(f"{label} is not the identity at {x!r}")
    K, _ = kernel_comma(f, d.mode)
    K2, _ = kernel_comma(f2, d.mode)
    if not _same_subalgebra(a.dom, K) or not _same_subalgebra(a.cod, K2):
        raise DiagramError("the kernel objects in the diagram differ from the recomputed ones")
    if b.dom != f.dom or b.cod != f2.dom or c.dom != f.cod or c.cod != f2.cod:
        raise DiagramError("b or c has the wrong domain or codomain")
    for k in K.elements:
        if a(k) != b(k):
            raise DiagramError(f"kernel square does not commute at {k!r}")
    for x in f.dom.elements:
        if f2(b(x)) != c(f(x)):
            raise DiagramError(f"f'b = cf fails at {x!r}")
    for y in f.cod.elements:
        if b(s(y)) != s2(c(y)):
            raise DiagramError(f"bs = s'c fails at {y!r}")
    if not is_isomorphism(a) or not is_isomorphism(c):
        raise HypothesisError("a and c must both be isomorphisms")

    bad = []
    A, A2 = b.dom, b.cod
    seen = {}
    for x in A.elements:
        y = b(x)
        if y in seen:
            bad.append(("b not injective", (seen[y], x)))
            break
        seen[y] = x
    missing = [y for y in A2.elements if y not in seen]
    if missing:
        bad.append(("b not surjective", tuple(missing)))
    cls = classify_map(b.map)
    if not cls.is_full:
        for x in A.elements:
            for x2 in A.elements:
                if A2.leq(b(x), b(x2)) and not A.leq(x, x2):
                    bad.append(("b not full", (x, x2)))
                    break
            else:
                continue
            break
    if not bad:
        try:
            check_homomorphism({b(x): x for x in A.elements}, A2, A)
        except HomomorphismError as exc:
            bad.append(("inverse of b not a homomorphism", (exc.symbol, exc.args_tuple)))
    diag = {"mode": d.mode, "kernel_size": len(K), "b_injective": not any(r[0] == "b not injective" for r in bad),
            "b_surjective": not missing}
    return CheckResult(FAIL if bad else PASS, bad, diag, name="ss5l")


def _monus_symbol(theory):
    for sym in theory.symbols:
        if sym.coherent or sym.nargs != 2:
            continue
        strict = [(x, y) for x, y in sym.arity.le if x != y]
        if len(strict) == 1:
            small, big = strict[0]
            return sym.name, sym.arity.index(big)
    return None


def check_noncoherent_example(A, B=None, cap=DEFAULT_CAP):
    """Conditions 0 <= a, a-0 = a, a-a = 0 and the elementwise replay of the
    zig-zag argument on every ideal A -> B."""
    B = A if B is None else B
    th = A.theory
    found = _monus_symbol(th)
    if not th.is_pointed or not th.has_symbol("add") or found is None:
        raise TheoryError(f"theory {th.name} lacks 0, add and a non-coherent subtraction")
    if B.theory != th:
        raise TheoryError("algebras over different theories")
    monus, big_pos = found

    def minus(X, a, b):
        args = (a, b) if big_pos == 0 else (b, a)
        return X.apply(monus, *args)

    bad = []
    for X in (A, B) if B is not A else (A,):
        z = X.zero
        for a in X.elements:
            if not X.leq(z, a):
                bad.append(("(1) 0 <= a", (a,)))
        if bad:
            continue
        for a in X.elements:
            if minus(X, a, z) != a:
                bad.append(("(2) a - 0 = a", (a, minus(X, a, z))))
            if minus(X, a, a) != z:
                bad.append(("(2) a - a = 0", (a, minus(X, a, a))))
    if bad:
        return CheckResult(FAIL, bad, name="noncoherent_example")

    ideals, exact = enumerate_ideals(A, B, cap)
    za, zb = A.zero, B.zero
    steps = 0
    for D in ideals:
        pairs = D.pairs
        for f1, g1 in D.sorted_pairs():
            if (za, g1) not in pairs:
                bad.append(("0 D g", {"ideal": D.sorted_pairs(), "pair": (f1, g1)}))
                continue
            image = (minus(A, f1, za), minus(B, g1, g1))
            steps += 1
            if image != (f1, zb) or image not in pairs:
                bad.append(("(f1, 0) in D", {"ideal": D.sorted_pairs(), "pair": (f1, g1), "image": image}))
                continue
            for _, g3 in D.sorted_pairs():
                if (f1, g3) not in pairs:
                    bad.append(("f1 D g3", {"ideal": D.sorted_pairs(), "pair": (f1, g3)}))
    verdict = FAIL if bad else (PASS if exact else INCONCLUSIVE)
    return CheckResult(verdict, bad, {"ideals": len(ideals), "exact": exact, "monus_steps": steps},
                       name="noncoherent_example")
