"""Signatures with ordered arities, terms, (in)equational axioms.

A term applies an operation symbol to a tuple of subterms aligned with the
canonical element order of the symbol's arity.  Nothing here checks that such
a tuple is monotone: applications over ordered arities are partial and the
check happens at evaluation time (see ``algebra.eval_term``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .oset import OSet, discrete, monotone_tuples, validate_oset

__all__ = [
    "TheoryError",
    "Var",
    "App",
    "OperationSymbol",
    "Axiom",
    "Theory",
    "parse_term",
    "wellformed_term",
    "term_variables",
    "substitute",
    "axiom_instances",
    "builtin_theories",
    "builtin_theory",
]


class TheoryError(ValueError):
    """Ill-formed term, symbol table or axiom."""


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name

    @property
    def depth(self):
        return 0


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.op
        return f"{self.op}({','.join(str(a) for a in self.args)})"

    @property
    def depth(self):
        return 1 + max((a.depth for a in self.args), default=0)


@dataclass(frozen=True)
class OperationSymbol:
    name: str
    arity: OSet
    coherent: bool = True

    @property
    def nargs(self):
        return len(self.arity)

    @property
    def is_constant(self):
        return len(self.arity) == 0


@dataclass(frozen=True)
class Axiom:
    context: OSet
    lhs: object
    rhs: object
    kind: str = "eq"  # "eq" | "le"

    def __post_init__(self):
        if self.kind not in ("eq", "le"):
            raise TheoryError(f"axiom kind must be 'eq' or 'le', got {self.kind!r}")

    def __str__(self):
        rel = "=" if self.kind == "eq" else "<="
        return f"{self.lhs} {rel} {self.rhs}"


@dataclass(frozen=True)
class Theory:
    name: str
    symbols: tuple = ()
    axioms: tuple = ()
    _by_name: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "axioms", tuple(self.axioms))
        by_name = {}
        for s in self.symbols:
            if s.name in by_name:
                raise TheoryError(f"duplicate operation symbol {s.name!r}")
            by_name[s.name] = s
        object.__setattr__(self, "_by_name", by_name)
        for i, ax in enumerate(self.axioms):
            try:
                wellformed_term(ax.lhs, ax.context, self)
                wellformed_term(ax.rhs, ax.context, self)
            except TheoryError as exc:
                raise TheoryError(f"axiom {i} ({ax}): {exc}") from None

    def __hash__(self):
        return hash((self.name, self.symbols, self.axioms))

    def symbol(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise TheoryError(f"unknown operation symbol {name!r}") from None

    def has_symbol(self, name):
        return name in self._by_name

    def constants(self):
        return [s for s in self.symbols if s.is_constant]

    @property
    def is_pointed(self):
        consts = self.constants()
        return len(consts) == 1 and consts[0].name == "0"

    @property
    def is_coherent(self):
        return all(s.coherent for s in self.symbols)


_TOKEN = re.compile(r"\s*(?:([\w']+)|(.))", re.UNICODE)


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2)
        if tok.strip():
            out.append((tok, m.start(m.lastindex)))
        pos = m.end()
    return out


def parse_term(text, ctx, theory):
    """Parse ``f(t1,...,tk)`` syntax.

    A bare identifier is a variable when it belongs to ``ctx``, otherwise a
    constant of ``theory``.
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def expect(t):
        nonlocal pos
        if peek() != t:
            where = toks[pos][1] if pos < len(toks) else len(text)
            raise TheoryError(f"expected {t!r} at column {where} in {text!r}")
        pos += 1

    def term():
        nonlocal pos
        if pos >= len(toks):
            raise TheoryError(f"unexpected end of term {text!r}")
        name, col = toks[pos]
        if not re.fullmatch(r"[\w']+", name):
            raise TheoryError(f"unexpected {name!r} at column {col} in {text!r}")
        pos += 1
        if peek() == "(":
            pos += 1
            args = []
            if peek() != ")":
                args.append(term())
                while peek() == ",":
                    pos += 1
                    args.append(term())
            expect(")")
            return App(name, tuple(args))
        if name in ctx:
            return Var(name)
        return App(name, ())

    t = term()
    if pos != len(toks):
        raise TheoryError(f"trailing input at column {toks[pos][1]} in {text!r}")
    return t


def wellformed_term(t, ctx, theory):
    """Check ``t`` against ``ctx`` and the signature; strings are parsed first.

    Argument tuples over ordered arities are *not* required to be monotone.
    """
    if isinstance(t, str):
        t = parse_term(t, ctx, theory)
    _check(t, ctx, theory)
    return t


def _check(t, ctx, theory):
    if isinstance(t, Var):
        if t.name not in ctx:
            raise TheoryError(f"unknown variable {t.name!r}")
        return
    if not isinstance(t, App):
        raise TheoryError(f"not a term: {t!r}")
    sym = theory.symbol(t.op)
    if len(t.args) != sym.nargs:
        raise TheoryError(
            f"{t.op} takes {sym.nargs} argument(s), got {len(t.args)}"
        )
    for a in t.args:
        _check(a, ctx, theory)


def term_variables(t):
    if isinstance(t, Var):
        return {t.name}
    out = set()
    for a in t.args:
        out |= term_variables(a)
    return out


def substitute(t, mapping):
    """Replace variables by terms."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    return App(t.op, tuple(substitute(a, mapping) for a in t.args))


def axiom_instances(ax, carrier):
    """Assignments of the axiom's variables respecting the context order."""
    names = ax.context.elements
    for values in monotone_tuples(ax.context, carrier):
        yield dict(zip(names, values))


def _ax(theory_syms, ctx, lhs, rhs, kind="eq"):
    probe = Theory("_probe", theory_syms)
    return Axiom(ctx, parse_term(lhs, ctx, probe), parse_term(rhs, ctx, probe), kind)


def _lax_proto(name, kind):
    syms = (
        OperationSymbol("0", discrete([])),
        OperationSymbol("alpha", discrete(["x", "y"])),
        OperationSymbol("theta", discrete(["x", "y"])),
    )
    v = discrete(["v"])
    vw = discrete(["v", "w"])
    if kind == "lax":
        first = _ax(syms, v, "0", "alpha(v,v)", "le")
    else:
        first = _ax(syms, v, "alpha(v,v)", "0", "le")
    return Theory(name, syms, (first, _ax(syms, vw, "theta(alpha(v,w),w)", "v")))


def _maltsev_ord():
    syms = (OperationSymbol("rho", discrete(["x1", "x2", "x3"])),)
    abc = validate_oset(["a", "b", "c"], [("b", "c")])
    uvw = validate_oset(["u", "v", "w"], [("u", "v")])
    return Theory(
        "MaltsevOrd",
        syms,
        (
            _ax(syms, abc, "a", "rho(a,b,c)", "le"),
            _ax(syms, uvw, "rho(u,v,w)", "w", "le"),
        ),
    )


def _trunc_monoid():
    syms = (
        OperationSymbol("0", discrete([])),
        OperationSymbol("add", discrete(["x", "y"])),
        # defined on (x, y) with y <= x; not required to be monotone
        OperationSymbol("monus", validate_oset(["x", "y"], [("y", "x")]), coherent=False),
    )
    a = discrete(["a"])
    abc = discrete(["a", "b", "c"])
    return Theory(
        "TruncMonoid",
        syms,
        (
            _ax(syms, a, "0", "a", "le"),
            _ax(syms, a, "monus(a,0)", "a"),
            _ax(syms, a, "monus(a,a)", "0"),
            _ax(syms, abc, "add(add(a,b),c)", "add(a,add(b,c))"),
            _ax(syms, a, "add(a,0)", "a"),
            _ax(syms, a, "add(0,a)", "a"),
        ),
    )


def _pointed():
    return Theory("Pointed", (OperationSymbol("0", discrete([])),))


def _ab_group():
    syms = (
        OperationSymbol("0", discrete([])),
        OperationSymbol("add", discrete(["x", "y"])),
        OperationSymbol("neg", discrete(["x"])),
    )
    a = discrete(["a"])
    ab = discrete(["a", "b"])
    abc = discrete(["a", "b", "c"])
    return Theory(
        "AbGroup",
        syms,
        (
            _ax(syms, abc, "add(add(a,b),c)", "add(a,add(b,c))"),
            _ax(syms, ab, "add(a,b)", "add(b,a)"),
            _ax(syms, a, "add(a,0)", "a"),
            _ax(syms, a, "add(a,neg(a))", "0"),
        ),
    )


def _magma():
    return Theory("Magma", (OperationSymbol("mul", discrete(["x", "y"])),))


def _ternary():
    return Theory("Ternary", (OperationSymbol("t", discrete(["x", "y", "z"])),))


def _pointed_magma():
    return Theory(
        "PointedMagma",
        (OperationSymbol("0", discrete([])), OperationSymbol("mul", discrete(["x", "y"]))),
    )


def _empty():
    return Theory("Sets", ())


_BUILTINS = {
    "LaxProto1": lambda: _lax_proto("LaxProto1", "lax"),
    "ColaxProto1": lambda: _lax_proto("ColaxProto1", "colax"),
    "MaltsevOrd": _maltsev_ord,
    "TruncMonoid": _trunc_monoid,
    "Pointed": _pointed,
    "AbGroup": _ab_group,
    "Magma": _magma,
    "PointedMagma": _pointed_magma,
    "Ternary": _ternary,
    "Sets": _empty,
}
_CACHE = {}


def builtin_theory(name):
    if name not in _CACHE:
        try:
            _CACHE[name] = _BUILTINS[name]()
        except KeyError:
            raise TheoryError(f"no builtin theory named {name!r}") from None
    return _CACHE[name]


def builtin_theories():
    """All shipped theories, in a fixed order."""
    return [builtin_theory(n) for n in _BUILTINS]
