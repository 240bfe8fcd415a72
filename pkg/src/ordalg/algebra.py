"""Finite ordered algebras: tables, validation, homomorphisms, limits.

An operation of arity X is stored as a table on the monotone X-tuples of the
carrier, keyed by tuples aligned with ``X.elements``; it is undefined
elsewhere.  Coherent symbols must have monotone tables, non-coherent ones need
not.
"""

from __future__ import annotations

from collections import namedtuple
from itertools import product as _cartesian

from .oset import MonotoneMap, OrderError, OSet, monotone_tuples, product
from .theory import TheoryError, Var, axiom_instances

__all__ = [
    "ModelError",
    "NonMonotoneArgument",
    "HomomorphismError",
    "ClosureError",
    "Violation",
    "Algebra",
    "Homomorphism",
    "validate_algebra",
    "algebra_from_functions",
    "eval_term",
    "check_homomorphism",
    "hom_le",
    "identity_hom",
    "terminal_algebra",
    "terminal_hom",
    "zero_hom",
    "product_algebra",
    "subalgebra",
    "comma_algebra",
    "kernel_comma",
    "is_isomorphism",
    "enumerate_homomorphisms",
]


class ModelError(ValueError):
    """A candidate algebra failed validation; ``violations`` lists every problem."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            head += f"; ... ({more} more)"
        super().__init__(head)


class NonMonotoneArgument(ValueError):
    """An operation over an ordered arity met a non-monotone argument tuple.

    This is partiality, not a bug: the operation is simply undefined there.
    """

    def __init__(self, symbol, args):
        self.symbol = symbol
        self.args = tuple(args)
        super().__init__(f"{symbol} is undefined at non-monotone tuple {self.args!r}")


class HomomorphismError(ValueError):
    def __init__(self, message, symbol=None, args=None):
        self.symbol = symbol
        self.args_tuple = args
        super().__init__(message)


class ClosureError(ValueError):
    """A subset of an algebra is not closed under some operation."""

    def __init__(self, symbol, args, value):
        self.symbol = symbol
        self.args = tuple(args)
        self.value = value
        super().__init__(
            f"not closed under {symbol}: {self.args!r} |-> {value!r} leaves the subset"
        )


_Violation = namedtuple("Violation", "kind where detail")


class Violation(_Violation):
    __slots__ = ()

    def __str__(self):
        return f"{self.kind} [{self.where}]: {self.detail}"


class Algebra:
    """A model of a theory on a finite preordered carrier.

    Construct through :func:`validate_algebra`; the bare constructor trusts its
    input (it is used for derived algebras whose validity follows from the
    construction and is re-checked in tests).
    """

    def __init__(self, theory, carrier, tables, name=None):
        self.theory = theory
        self.carrier = carrier
        self.tables = {k: dict(v) for k, v in tables.items()}
        self.name = name
        self._domains = {}

    def __repr__(self):
        label = self.name or "?"
        return f"<Algebra {label} over {self.theory.name}, |A|={len(self.carrier)}>"

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.theory == other.theory
            and self.carrier == other.carrier
            and self.tables == other.tables
        )

    def __hash__(self):
        return hash((self.theory.name, self.carrier))

    def __len__(self):
        return len(self.carrier)

    @property
    def elements(self):
        return self.carrier.elements

    def leq(self, a, b):
        return self.carrier.leq(a, b)

    def domain(self, name):
        """Monotone argument tuples of ``name`` in canonical order."""
        if name not in self._domains:
            sym = self.theory.symbol(name)
            self._domains[name] = list(monotone_tuples(sym.arity, self.carrier))
        return self._domains[name]

    def apply(self, name, *args):
        table = self.tables[name]
        try:
            return table[args]
        except KeyError:
            raise NonMonotoneArgument(name, args) from None

    def constant(self, name="0"):
        return self.tables[name][()]

    @property
    def zero(self):
        if not self.theory.is_pointed:
            raise TheoryError(f"theory {self.theory.name} is not pointed")
        return self.tables["0"][()]


class Homomorphism:
    __slots__ = ("dom", "cod", "map")

    def __init__(self, dom, cod, map):
        self.dom = dom
        self.cod = cod
        self.map = map

    def __call__(self, a):
        return self.map.values[a]

    def __repr__(self):
        return f"Homomorphism({self.map!r})"

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.map == other.map

    def __hash__(self):
        return hash(self.map)

    @property
    def values(self):
        return self.map.values

    def compose(self, first):
        """``self ∘ first``."""
        return Homomorphism(first.dom, self.cod, self.map.compose(first.map))


def _is_monotone_args(arity, args, carrier):
    pos = {x: i for i, x in enumerate(arity.elements)}
    return all(carrier.leq(args[pos[x]], args[pos[y]]) for x, y in arity.le)


def eval_term(A, t, env):
    """Evaluate ``t`` in ``A`` under ``env`` (variable name -> element).

    Raises :class:`NonMonotoneArgument` where an operation over an ordered
    arity receives a non-monotone tuple.
    """
    if isinstance(t, Var):
        return env[t.name]
    args = tuple(eval_term(A, a, env) for a in t.args)
    table = A.tables[t.op]
    try:
        return table[args]
    except KeyError:
        raise NonMonotoneArgument(t.op, args) from None


def validate_algebra(carrier, tables, theory, name=None):
    """Check a candidate model exhaustively and return it as an Algebra.

    ``tables`` maps each symbol name to ``{argument tuple: value}``.  Every
    violation found is collected into a single :class:`ModelError`.
    """
    violations = []
    structural = False
    tables = {k: dict(v) for k, v in tables.items()}
    for extra in sorted(set(tables) - {s.name for s in theory.symbols}):
        violations.append(Violation("unknown symbol", extra, "no such operation in theory"))
        structural = True
    for sym in theory.symbols:
        if sym.name not in tables:
            violations.append(Violation("missing table", sym.name, "no table given"))
            structural = True
            continue
        table = tables[sym.name]
        domain = list(monotone_tuples(sym.arity, carrier))
        domset = set(domain)
        for t in domain:
            if t not in table:
                violations.append(Violation("missing entry", sym.name, t))
                structural = True
            elif table[t] not in carrier:
                violations.append(
                    Violation("value outside carrier", sym.name, (t, table[t]))
                )
                structural = True
        for t in table:
            if t in domset:
                continue
            structural = True
            if not isinstance(t, tuple) or len(t) != sym.nargs:
                violations.append(Violation("wrong tuple shape", sym.name, t))
            elif any(x not in carrier for x in t):
                violations.append(Violation("argument outside carrier", sym.name, t))
            else:
                bad = [
                    (x, y)
                    for x, y in sym.arity.sorted_pairs()
                    if not carrier.leq(t[sym.arity.index(x)], t[sym.arity.index(y)])
                ]
                violations.append(
                    Violation("entry on non-monotone tuple", sym.name, (t, bad[0]))
                )
    if structural:
        raise ModelError(violations)

    for sym in theory.symbols:
        if not sym.coherent or sym.nargs == 0:
            continue
        table = tables[sym.name]
        domain = list(monotone_tuples(sym.arity, carrier))
        for s in domain:
            for t in domain:
                if s == t:
                    continue
                if all(carrier.leq(a, b) for a, b in zip(s, t)) and not carrier.leq(
                    table[s], table[t]
                ):
                    violations.append(
                        Violation("not monotone", sym.name, (s, t, table[s], table[t]))
                    )

    A = Algebra(theory, carrier, tables, name)
    for i, ax in enumerate(theory.axioms):
        for env in axiom_instances(ax, carrier):
            try:
                lhs = eval_term(A, ax.lhs, env)
                rhs = eval_term(A, ax.rhs, env)
            except NonMonotoneArgument as exc:
                violations.append(Violation("axiom undefined", f"axiom {i}: {ax}", (env, str(exc))))
                continue
            ok = lhs == rhs if ax.kind == "eq" else carrier.leq(lhs, rhs)
            if not ok:
                violations.append(
                    Violation("axiom violated", f"axiom {i}: {ax}", (env, lhs, rhs))
                )
    if violations:
        raise ModelError(violations)
    return A


def algebra_from_functions(carrier, theory, funcs, name=None):
    """Tabulate Python callables on the monotone tuples, then validate.

    ``funcs`` maps symbol names to callables (constants may be given as plain
    values).
    """
    tables = {}
    for sym in theory.symbols:
        fn = funcs[sym.name]
        if sym.is_constant and not callable(fn):
            tables[sym.name] = {(): fn}
            continue
        tables[sym.name] = {t: fn(*t) for t in monotone_tuples(sym.arity, carrier)}
    return validate_algebra(carrier, tables, theory, name)


def check_homomorphism(f, A, B):
    """Verify that ``f`` (mapping or MonotoneMap) is a homomorphism A -> B."""
    if not isinstance(f, MonotoneMap):
        try:
            f = MonotoneMap(A.carrier, B.carrier, f)
        except OrderError as exc:
            raise HomomorphismError(str(exc)) from None
    if A.theory != B.theory:
        raise HomomorphismError("algebras over different theories")
    v = f.values
    for sym in A.theory.symbols:
        ta = A.tables[sym.name]
        tb = B.tables[sym.name]
        for t in A.domain(sym.name):
            lhs = v[ta[t]]
            rhs = tb[tuple(v[x] for x in t)]
            if lhs != rhs:
                raise HomomorphismError(
                    f"{sym.name} not preserved at {t!r}: f({ta[t]!r}) = {lhs!r} "
                    f"but {sym.name}(f...) = {rhs!r}",
                    sym.name,
                    t,
                )
    return Homomorphism(A, B, f)


def hom_le(f, g):
    """Pointwise order on parallel homomorphisms."""
    if f.dom != g.dom or f.cod != g.cod:
        raise HomomorphismError("hom_le needs parallel homomorphisms")
    return all(f.cod.leq(f(a), g(a)) for a in f.dom.elements)


def identity_hom(A):
    return Homomorphism(A, A, MonotoneMap.identity(A.carrier))


def terminal_algebra(theory):
    """The one-element algebra (the zero algebra when the theory is pointed)."""
    pt = "0" if theory.is_pointed else "*"
    carrier = OSet([pt], [(pt, pt)])
    tables = {s.name: {t: pt for t in monotone_tuples(s.arity, carrier)} for s in theory.symbols}
    return Algebra(theory, carrier, tables, name="1")


def terminal_hom(A):
    T = terminal_algebra(A.theory)
    pt = T.elements[0]
    return Homomorphism(A, T, MonotoneMap(A.carrier, T.carrier, {a: pt for a in A.elements}))


def zero_hom(B):
    """The map from the zero algebra picking out ``0`` (checked)."""
    Z = terminal_algebra(B.theory)
    return check_homomorphism({Z.elements[0]: B.zero}, Z, B)


def product_algebra(A, B):
    """Componentwise product; carrier elements are pairs ``(a, b)``."""
    if A.theory != B.theory:
        raise TheoryError("product of algebras over different theories")
    carrier = product(A.carrier, B.carrier)
    tables = {}
    for sym in A.theory.symbols:
        ta, tb = A.tables[sym.name], B.tables[sym.name]
        tables[sym.name] = {
            tuple(zip(s, t)): (ta[s], tb[t])
            for s, t in _cartesian(A.domain(sym.name), B.domain(sym.name))
        }
    name = f"{A.name}x{B.name}" if A.name and B.name else None
    return Algebra(A.theory, carrier, tables, name)


def subalgebra(A, elements, name=None):
    """Full subalgebra on ``elements``; raises ClosureError if not closed."""
    keep = set(elements)
    sub = A.carrier.sub(keep)
    tables = {}
    for sym in A.theory.symbols:
        table = A.tables[sym.name]
        out = {}
        for t in monotone_tuples(sym.arity, sub):
            v = table[t]
            if v not in keep:
                raise ClosureError(sym.name, t, v)
            out[t] = v
        tables[sym.name] = out
    return Algebra(A.theory, sub, tables, name)


def comma_algebra(f, g):
    """The comma object ``f/g = {(a, c) : f(a) <= g(c)}`` with its projections.

    Closure under every operation (non-coherent ones included) is verified,
    not assumed; a failure raises ClosureError.
    """
    if f.cod != g.cod:
        raise TheoryError("comma object needs a common codomain")
    B = f.cod
    P = product_algebra(f.dom, g.dom)
    keep = [(a, c) for (a, c) in P.elements if B.leq(f(a), g(c))]
    C = subalgebra(P, keep)
    p1 = Homomorphism(C, f.dom, MonotoneMap(C.carrier, f.dom.carrier, {x: x[0] for x in keep}))
    p2 = Homomorphism(C, g.dom, MonotoneMap(C.carrier, g.dom.carrier, {x: x[1] for x in keep}))
    return C, p1, p2


def kernel_comma(f, mode="lax"):
    """Kernel object of a homomorphism of pointed algebras.

    ``mode="lax"`` gives ``i_B/f = {a : 0 <= f(a)}``; ``"colax"`` gives
    ``f/i_B = {a : f(a) <= 0}``.  Returns ``(K, inclusion)``.
    """
    A, B = f.dom, f.cod
    if not A.theory.is_pointed:
        raise TheoryError(f"theory {A.theory.name} is not pointed")
    z = B.zero
    if mode == "lax":
        keep = [a for a in A.elements if B.leq(z, f(a))]
    elif mode == "colax":
        keep = [a for a in A.elements if B.leq(f(a), z)]
    else:
        raise ValueError(f"mode must be 'lax' or 'colax', got {mode!r}")
    K = subalgebra(A, keep)
    inc = Homomorphism(K, A, MonotoneMap(K.carrier, A.carrier, {a: a for a in keep}))
    return K, inc


def is_isomorphism(h):
    """Bijective homomorphism whose inverse is again a homomorphism."""
    values = h.values
    if len(set(values.values())) != len(h.dom) or len(h.dom) != len(h.cod):
        return False
    inverse = {b: a for a, b in values.items()}
    try:
        check_homomorphism(inverse, h.cod, h.dom)
    except HomomorphismError:
        return False
    return True


def enumerate_homomorphisms(A, B, fixed=None, allowed=None):
    """Every homomorphism A -> B, in lexicographic order of value tuples.

    ``fixed`` pins some values; ``allowed(a)`` (optional) narrows the
    candidates for ``a``.  Plain enumeration, meant for small carriers.
    """
    fixed = dict(fixed or {})
    choices = []
    for a in A.elements:
        if a in fixed:
            choices.append((fixed[a],))
        else:
            opts = B.elements if allowed is None else tuple(b for b in B.elements if b in allowed(a))
            choices.append(opts)
    out = []
    for values in _cartesian(*choices):
        f = dict(zip(A.elements, values))
        if any(not B.leq(f[x], f[y]) for x, y in A.carrier.le):
            continue
        try:
            out.append(check_homomorphism(f, A, B))
        except HomomorphismError:
            continue
    return out
