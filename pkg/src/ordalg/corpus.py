"""Named algebras and a seeded generator of small random models.

Everything here is deterministic: the random corpus uses a private
``random.Random`` with a fixed seed.
"""

from __future__ import annotations

import random

from .algebra import algebra_from_functions, validate_algebra
from .oset import chain, codiscrete, discrete, validate_oset
from .theory import builtin_theory

__all__ = [
    "lax_chain",
    "colax_chain",
    "trunc_monoid",
    "cyclic_group",
    "lax_group",
    "pointed_set",
    "affine_ternary",
    "named_algebras",
    "named_algebra",
    "random_preorder",
    "random_corpus",
]


def lax_chain(n):
    """n-chain with bottom 0 and alpha = theta = first projection."""
    first = lambda x, y: x
    return algebra_from_functions(
        chain(n), builtin_theory("LaxProto1"), {"0": 0, "alpha": first, "theta": first},
        name=f"lax_chain{n}",
    )


def colax_chain(n):
    """n-chain whose top element n-1 is the constant 0."""
    first = lambda x, y: x
    return algebra_from_functions(
        chain(n), builtin_theory("ColaxProto1"), {"0": n - 1, "alpha": first, "theta": first},
        name=f"colax_chain{n}",
    )


def trunc_monoid(n):
    """{0..n-1} with truncated addition and a - b on b <= a."""
    top = n - 1
    return algebra_from_functions(
        chain(n),
        builtin_theory("TruncMonoid"),
        {"0": 0, "add": lambda a, b: min(a + b, top), "monus": lambda a, b: a - b},
        name=f"trunc{n}",
    )


def cyclic_group(n, order=None):
    """Z_n with add, neg, 0; discrete order unless ``order`` is given."""
    carrier = order if order is not None else discrete(range(n))
    return algebra_from_functions(
        carrier,
        builtin_theory("AbGroup"),
        {"0": 0, "add": lambda a, b: (a + b) % n, "neg": lambda a: (-a) % n},
        name=f"Z{n}",
    )


def lax_group(n):
    """Z_n as a LaxProto1 model: alpha = x - y, theta = x + y."""
    return algebra_from_functions(
        discrete(range(n)),
        builtin_theory("LaxProto1"),
        {"0": 0, "alpha": lambda x, y: (x - y) % n, "theta": lambda x, y: (x + y) % n},
        name=f"lax_Z{n}",
    )


def pointed_set(n, order="discrete"):
    els = list(range(n))
    carrier = {"discrete": discrete, "codiscrete": codiscrete, "chain": chain}[order](els)
    return algebra_from_functions(
        carrier, builtin_theory("Pointed"), {"0": 0}, name=f"pointed_{order}{n}"
    )


def affine_ternary(n, order=None):
    """x - y + z mod n as the single ternary operation."""
    carrier = order if order is not None else discrete(range(n))
    return algebra_from_functions(
        carrier, builtin_theory("Ternary"), {"t": lambda x, y, z: (x - y + z) % n},
        name=f"affine{n}",
    )


def _parity_order(n):
    els = list(range(n))
    return validate_oset(els, [(a, b) for a in els for b in els if (a - b) % 2 == 0])


def _named():
    return {
        "lax_chain2": lambda: lax_chain(2),
        "lax_chain3": lambda: lax_chain(3),
        "lax_chain5": lambda: lax_chain(5),
        "colax_chain2": lambda: colax_chain(2),
        "colax_chain3": lambda: colax_chain(3),
        "colax_chain5": lambda: colax_chain(5),
        "trunc2": lambda: trunc_monoid(2),
        "trunc3": lambda: trunc_monoid(3),
        "trunc4": lambda: trunc_monoid(4),
        "Z2": lambda: cyclic_group(2),
        "Z3": lambda: cyclic_group(3),
        "Z4": lambda: cyclic_group(4),
        "lax_Z2": lambda: lax_group(2),
        "lax_Z3": lambda: lax_group(3),
        "pointed2": lambda: pointed_set(2),
        "pointed3": lambda: pointed_set(3),
        "pointed_codiscrete2": lambda: pointed_set(2, "codiscrete"),
        "pointed_chain2": lambda: pointed_set(2, "chain"),
        "affine2": lambda: affine_ternary(2),
        "affine3": lambda: affine_ternary(3),
        "affine4_parity": lambda: _renamed(affine_ternary(4, _parity_order(4)), "affine4_parity"),
        "Z4_parity": lambda: _renamed(cyclic_group(4, _parity_order(4)), "Z4_parity"),
    }


def _renamed(A, name):
    A.name = name
    return A


_NAMED = _named()
_CACHE = {}


def named_algebra(name):
    if name not in _CACHE:
        try:
            _CACHE[name] = _NAMED[name]()
        except KeyError:
            raise KeyError(f"no named algebra {name!r}") from None
    return _CACHE[name]


def named_algebras():
    return {n: named_algebra(n) for n in _NAMED}


def random_preorder(rng, n):
    els = list(range(n))
    kind = rng.choice(["discrete", "chain", "codiscrete", "random", "random", "blocks"])
    if kind == "discrete":
        return discrete(els)
    if kind == "chain":
        return chain(els)
    if kind == "codiscrete":
        return codiscrete(els)
    if kind == "blocks":
        blocks = [rng.randrange(2) for _ in els]
        return validate_oset(els, [(a, b) for a in els for b in els if blocks[a] == blocks[b]])
    pairs = [(a, b) for a in els for b in els if a != b and rng.random() < 0.3]
    return validate_oset(els, pairs)


def _random_monotone_table(rng, arity, carrier):
    """Random monotone map from the power ``arity ⋔ carrier`` to ``carrier``."""
    from .oset import power

    P = power(arity, carrier)
    keys = list(P.elements)
    values = {}

    def rec(i):
        if i == len(keys):
            return True
        k = keys[i]
        options = list(carrier.elements)
        rng.shuffle(options)
        for v in options:
            ok = all(
                (not P.leq(k2, k) or carrier.leq(values[k2], v))
                and (not P.leq(k, k2) or carrier.leq(v, values[k2]))
                for k2 in keys[:i]
            )
            if ok:
                values[k] = v
                if rec(i + 1):
                    return True
                del values[k]
        return False

    rec(0)
    return values


def random_corpus(count=24, seed=20261018, max_size=4):
    """``count`` random models of axiom-free theories on small preorders."""
    rng = random.Random(seed)
    theories = [builtin_theory(n) for n in ("Magma", "PointedMagma", "Ternary")]
    out = []
    for i in range(count):
        th = theories[i % len(theories)]
        n = 2 + rng.randrange(max_size - 1) if i % 8 else 1 + rng.randrange(max_size)
        carrier = random_preorder(rng, n)
        tables = {}
        for sym in th.symbols:
            if sym.is_constant:
                tables[sym.name] = {(): rng.choice(carrier.elements)}
            else:
                tables[sym.name] = _random_monotone_table(rng, sym.arity, carrier)
        out.append(validate_algebra(carrier, tables, th, name=f"rand{i:02d}_{th.name}"))
    return out
