"""Command line front end and the textual definition language.

Documents are sequences of blocks::

    oset NAME { elements: e1 e2 ...; le: a<=b, c<=d; }
    theory NAME { const 0; op NAME : arity OSET [noncoherent]; axiom [eq|le] CTX : TERM <= TERM; }
    algebra NAME over THEORY { carrier OSET; const 0 = e; table OP: (t1,...,tk)->e ...; op OP(x,y) = TERM; }
    hom NAME : ALG -> ALG { e1->d1; ... }
    diagram NAME { split f s over B; split f' s' over B'; maps a b c; [mode colax;] }

Statements end with ';', '#' starts a comment.  Identifiers that are plain
decimal numbers denote integer elements.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from .algebra import (
    Algebra,
    ClosureError,
    HomomorphismError,
    ModelError,
    NonMonotoneArgument,
    check_homomorphism,
    comma_algebra,
    eval_term,
    kernel_comma,
    validate_algebra,
)
from .checks import (
    Diagram,
    DiagramError,
    HypothesisError,
    check_degenerate,
    check_noncoherent_example,
    check_ord_maltsev,
    check_permutability,
    check_ss5l_instance,
)
from .clone import SearchBudget, find_maltsev, find_proto_witnesses
from .corpus import named_algebra
from .oset import OrderError, OSet, discrete, monotone_tuples, validate_oset
from .relations import DEFAULT_CAP, RelationError, compose, enumerate_congruences, generate_relation
from .results import FAIL, INCONCLUSIVE, PASS, CheckResult, combine, exit_status, jsonable
from .theory import Axiom, OperationSymbol, Theory, TheoryError, builtin_theory, wellformed_term

__all__ = [
    "DocumentError",
    "UsageError",
    "SourceDocument",
    "parse_document",
    "load_documents",
    "format_oset",
    "format_theory",
    "format_algebra",
    "run",
    "main",
]

IDENT = r"[\w']+"
_IDENT = re.compile(IDENT)


class DocumentError(ValueError):
    """Syntax or resolution error, annotated with a position."""

    def __init__(self, msg, line=None, path=None):
        self.msg = msg
        self.line = line
        self.path = path
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {msg}" if where else msg)


class UsageError(ValueError):
    pass


@dataclass
class SourceDocument:
    path: str | None = None
    declarations: list = field(default_factory=list)  # (kind, name, object, line)
    osets: dict = field(default_factory=dict)
    theories: dict = field(default_factory=dict)
    algebras: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    diagrams: dict = field(default_factory=dict)

    def table(self, kind):
        return {"oset": self.osets, "theory": self.theories, "algebra": self.algebras,
                "hom": self.homs, "diagram": self.diagrams}[kind]

    def add(self, kind, name, obj, line):
        table = self.table(kind)
        if name in table:
            raise DocumentError(f"duplicate {kind} {name!r}", line, self.path)
        table[name] = obj
        self.declarations.append((kind, name, obj, line))


# ---------------------------------------------------------------- parsing

def _atom(tok):
    if tok.isdigit() and str(int(tok)) == tok:
        return int(tok)
    return tok


def _strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.split("\n"))


def _blocks(text):
    """Yield (keyword, header, [(statement, line)], line) for each block."""
    head = re.compile(r"\s*(oset|theory|algebra|hom|diagram)\b([^{}]*)\{", re.S)
    pos = 0
    while True:
        m = re.compile(r"\s*").match(text, pos)
        pos = m.end()
        if pos >= len(text):
            return
        line = text.count("\n", 0, pos) + 1
        m = head.match(text, pos)
        if m is None:
            word = text[pos:].split(None, 1)[0]
            raise DocumentError(f"expected a block keyword, found {word!r}", line)
        close = text.find("}", m.end())
        if close < 0:
            raise DocumentError(f"unterminated {m.group(1)} block", line)
        body_start = m.end()
        stmts = []
        start = body_start
        for i in range(body_start, close + 1):
            if i == close or text[i] == ";":
                chunk = text[start:i]
                if chunk.strip():
                    lead = len(chunk) - len(chunk.lstrip())
                    stmts.append((chunk.strip(), text.count("\n", 0, start + lead) + 1))
                start = i + 1
        yield m.group(1), m.group(2).strip(), stmts, line
        pos = close + 1


def parse_document(text, path=None, base=None):
    """Parse a document.  ``base`` (another SourceDocument) supplies names
    declared earlier, e.g. in files given before this one."""
    doc = SourceDocument(path)
    text = _strip_comments(text)
    try:
        for kind, header, stmts, line in _blocks(text):
            parser = _PARSERS[kind]
            name, obj = parser(doc, base, header, stmts, line)
            doc.add(kind, name, obj, line)
    except DocumentError as exc:
        if exc.path is None and path is not None:
            raise DocumentError(exc.msg, exc.line, path) from None
        raise
    return doc


def _lookup(doc, base, kind, name, line):
    for d in (doc, base):
        if d is not None and name in d.table(kind):
            return d.table(kind)[name]
    if kind == "theory":
        try:
            return builtin_theory(name)
        except (KeyError, TheoryError):
            pass
    if kind == "algebra":
        try:
            return named_algebra(name)
        except KeyError:
            pass
    raise DocumentError(f"unknown {kind} {name!r}", line)


def _name(header, line, kind):
    m = re.fullmatch(f"({IDENT})", header)
    if m is None:
        raise DocumentError(f"bad {kind} header {header!r}", line)
    return m.group(1)


def _parse_oset(doc, base, header, stmts, line):
    name = _name(header, line, "oset")
    elements, pairs = None, []
    for st, ln in stmts:
        key, _, rest = st.partition(":")
        key = key.strip()
        if key == "elements":
            elements = [_atom(t) for t in re.findall(IDENT, rest)]
        elif key == "le":
            for item in filter(None, (s.strip() for s in rest.split(","))):
                m = re.fullmatch(f"({IDENT})\\s*<=\\s*({IDENT})", item)
                if m is None:
                    raise DocumentError(f"bad order pair {item!r}", ln)
                pairs.append((_atom(m.group(1)), _atom(m.group(2))))
        else:
            raise DocumentError(f"unknown oset statement {st!r}", ln)
    if elements is None:
        raise DocumentError(f"oset {name} has no elements statement", line)
    try:
        return name, validate_oset(elements, pairs)
    except OrderError as exc:
        raise DocumentError(f"oset {name}: {exc}", line) from None


def _split_relation(text, ln):
    if "<=" in text:
        lhs, rhs = text.split("<=", 1)
        return lhs.strip(), rhs.strip(), "le"
    if "=" in text:
        lhs, rhs = text.split("=", 1)
        return lhs.strip(), rhs.strip(), "eq"
    raise DocumentError(f"axiom {text!r} needs = or <=", ln)


def _parse_theory(doc, base, header, stmts, line):
    name = _name(header, line, "theory")
    symbols = []
    pending = []
    for st, ln in stmts:
        words = st.split(None, 1)
        if words[0] == "const":
            m = re.fullmatch(f"const\\s+({IDENT})", st)
            if m is None:
                raise DocumentError(f"bad constant declaration {st!r}", ln)
            symbols.append(OperationSymbol(m.group(1), discrete([])))
        elif words[0] == "op":
            m = re.fullmatch(f"op\\s+({IDENT})\\s*:\\s*arity\\s+({IDENT})(\\s+noncoherent)?", st)
            if m is None:
                raise DocumentError(f"bad operation declaration {st!r}", ln)
            arity = _lookup(doc, base, "oset", m.group(2), ln)
            symbols.append(OperationSymbol(m.group(1), arity, coherent=m.group(3) is None))
        elif words[0] == "axiom":
            m = re.fullmatch(f"axiom\\s+(?:(eq|le)\\s+)?({IDENT})\\s*:(.*)", st, re.S)
            if m is None:
                raise DocumentError(f"bad axiom {st!r}", ln)
            lhs, rhs, kind = _split_relation(m.group(3), ln)
            if m.group(1) and m.group(1) != kind:
                raise DocumentError(f"axiom marked {m.group(1)} but written with {kind}", ln)
            ctx = _lookup(doc, base, "oset", m.group(2), ln)
            pending.append((ctx, lhs, rhs, kind, ln))
        else:
            raise DocumentError(f"unknown theory statement {st!r}", ln)
    try:
        probe = Theory(name, symbols)
    except TheoryError as exc:
        raise DocumentError(f"theory {name}: {exc}", line) from None
    axioms = []
    for ctx, lhs, rhs, kind, ln in pending:
        try:
            axioms.append(Axiom(ctx, wellformed_term(lhs, ctx, probe), wellformed_term(rhs, ctx, probe), kind))
        except TheoryError as exc:
            raise DocumentError(f"axiom: {exc}", ln) from None
    return name, Theory(name, symbols, axioms)


def _parse_entry_tuple(text, ln):
    inner = text.strip()
    if not (inner.startswith("(") and inner.endswith(")")):
        raise DocumentError(f"bad table key {text!r}", ln)
    inner = inner[1:-1].strip()
    if not inner:
        return ()
    parts = [p.strip() for p in inner.split(",")]
    if not all(_IDENT.fullmatch(p) for p in parts):
        raise DocumentError(f"bad table key {text!r}", ln)
    return tuple(_atom(p) for p in parts)


def _check_entry(sym, key, carrier, ln):
    if len(key) != sym.nargs:
        raise DocumentError(f"{sym.name} takes {sym.nargs} argument(s), entry {key!r} has {len(key)}", ln)
    for e in key:
        if e not in carrier:
            raise DocumentError(f"unknown element {e!r} in entry {key!r} of {sym.name}", ln)
    arity = sym.arity
    for x, y in arity.sorted_pairs():
        a, b = key[arity.index(x)], key[arity.index(y)]
        if not carrier.leq(a, b):
            raise DocumentError(
                f"entry {key!r} of {sym.name} is not monotone: arity pair {x}<={y} "
                f"needs {a!r} <= {b!r}", ln)


def _parse_algebra(doc, base, header, stmts, line):
    m = re.fullmatch(f"({IDENT})\\s+over\\s+({IDENT})", header)
    if m is None:
        raise DocumentError(f"bad algebra header {header!r}", line)
    name = m.group(1)
    theory = _lookup(doc, base, "theory", m.group(2), line)
    carrier = None
    tables = {}
    for st, ln in stmts:
        word = st.split(None, 1)[0]
        if word == "carrier":
            mm = re.fullmatch(f"carrier\\s+({IDENT})", st)
            if mm is None:
                raise DocumentError(f"bad carrier statement {st!r}", ln)
            carrier = _lookup(doc, base, "oset", mm.group(1), ln)
            continue
        if carrier is None:
            raise DocumentError("the carrier statement must come first", ln)
        if word == "const":
            mm = re.fullmatch(f"const\\s+({IDENT})\\s*=\\s*({IDENT})", st)
            if mm is None:
                raise DocumentError(f"bad constant statement {st!r}", ln)
            sym = _symbol(theory, mm.group(1), ln)
            if not sym.is_constant:
                raise DocumentError(f"{sym.name} is not a constant", ln)
            e = _atom(mm.group(2))
            if e not in carrier:
                raise DocumentError(f"unknown element {e!r}", ln)
            _define(tables, sym.name, {(): e}, ln)
        elif word == "table":
            mm = re.fullmatch(f"table\\s+({IDENT})\\s*:(.*)", st, re.S)
            if mm is None:
                raise DocumentError(f"bad table statement {st!r}", ln)
            sym = _symbol(theory, mm.group(1), ln)
            entries = {}
            for key, val in re.findall(r"(\([^()]*\))\s*->\s*(" + IDENT + ")", mm.group(2)):
                k = _parse_entry_tuple(key, ln)
                _check_entry(sym, k, carrier, ln)
                v = _atom(val)
                if v not in carrier:
                    raise DocumentError(f"unknown element {v!r} as value of {sym.name}{k!r}", ln)
                if k in entries:
                    raise DocumentError(f"duplicate entry {k!r} for {sym.name}", ln)
                entries[k] = v
            leftover = re.sub(r"(\([^()]*\))\s*->\s*" + IDENT, "", mm.group(2)).replace(",", "").strip()
            if leftover:
                raise DocumentError(f"cannot read table entries near {leftover[:20]!r}", ln)
            if sym.coherent:
                _check_table_monotone(sym, entries, carrier, ln)
            _define(tables, sym.name, entries, ln)
        elif word == "op":
            mm = re.fullmatch(f"op\\s+({IDENT})\\s*\\(([^()]*)\\)\\s*=(.*)", st, re.S)
            if mm is None:
                raise DocumentError(f"bad operation definition {st!r}", ln)
            sym = _symbol(theory, mm.group(1), ln)
            names = [v.strip() for v in mm.group(2).split(",") if v.strip()]
            if len(names) != sym.nargs or len(set(names)) != len(names):
                raise DocumentError(f"{sym.name} needs {sym.nargs} distinct variables", ln)
            _define(tables, sym.name, _sugar(theory, carrier, tables, sym, names, mm.group(3), ln), ln)
        else:
            raise DocumentError(f"unknown algebra statement {st!r}", ln)
    if carrier is None:
        raise DocumentError(f"algebra {name} has no carrier", line)
    try:
        return name, validate_algebra(carrier, tables, theory, name=name)
    except ModelError as exc:
        raise DocumentError(f"algebra {name} is not a model: {exc}", line) from None


def _symbol(theory, name, ln):
    try:
        return theory.symbol(name)
    except TheoryError as exc:
        raise DocumentError(str(exc), ln) from None


def _check_table_monotone(sym, entries, carrier, ln):
    keys = list(entries)
    for s in keys:
        for t in keys:
            if s != t and all(carrier.leq(x, y) for x, y in zip(s, t)):
                if not carrier.leq(entries[s], entries[t]):
                    raise DocumentError(
                        f"table {sym.name} is not monotone: {s!r} <= {t!r} but "
                        f"{entries[s]!r} is not below {entries[t]!r}", ln)


def _define(tables, name, entries, ln):
    if name in tables:
        raise DocumentError(f"{name} defined twice", ln)
    tables[name] = entries


def _sugar(theory, carrier, tables, sym, names, text, ln):
    """Tabulate ``op OP(vars) = TERM`` with the tables defined so far."""
    arity = sym.arity
    rename = dict(zip(arity.elements, names))
    ctx = OSet(names, [(rename[x], rename[y]) for x, y in arity.le])
    try:
        term = wellformed_term(text.strip(), ctx, theory)
    except TheoryError as exc:
        raise DocumentError(f"definition of {sym.name}: {exc}", ln) from None
    partial = Algebra(theory, carrier, tables)
    out = {}
    for t in monotone_tuples(arity, carrier):
        try:
            out[t] = eval_term(partial, term, dict(zip(names, t)))
        except KeyError as exc:
            raise DocumentError(f"definition of {sym.name} uses {exc} before it is defined", ln) from None
        except NonMonotoneArgument as exc:
            raise DocumentError(f"definition of {sym.name} is undefined at {t!r}: {exc}", ln) from None
    return out


def _parse_hom(doc, base, header, stmts, line):
    m = re.fullmatch(f"({IDENT})\\s*:\\s*({IDENT})\\s*->\\s*({IDENT})", header)
    if m is None:
        raise DocumentError(f"bad hom header {header!r}", line)
    A = _lookup(doc, base, "algebra", m.group(2), line)
    B = _lookup(doc, base, "algebra", m.group(3), line)
    values = {}
    for st, ln in stmts:
        for item in filter(None, (s.strip() for s in st.split(","))):
            mm = re.fullmatch(f"({IDENT})\\s*->\\s*({IDENT})", item)
            if mm is None:
                raise DocumentError(f"bad assignment {item!r}", ln)
            a, b = _atom(mm.group(1)), _atom(mm.group(2))
            if a in values:
                raise DocumentError(f"{a!r} assigned twice", ln)
            values[a] = b
    try:
        return m.group(1), check_homomorphism(values, A, B)
    except HomomorphismError as exc:
        raise DocumentError(f"hom {m.group(1)}: {exc}", line) from None


def _parse_diagram(doc, base, header, stmts, line):
    name = _name(header, line, "diagram")
    splits = []
    maps = None
    mode = "lax"
    for st, ln in stmts:
        words = st.split()
        if words[0] == "split" and len(words) == 5 and words[3] == "over":
            f = _lookup(doc, base, "hom", words[1], ln)
            s = _lookup(doc, base, "hom", words[2], ln)
            B = _lookup(doc, base, "algebra", words[4], ln)
            if f.cod != B:
                raise DocumentError(f"{words[1]} does not land in {words[4]}", ln)
            splits.append((f, s))
        elif words[0] == "maps" and len(words) == 4:
            maps = [_lookup(doc, base, "hom", w, ln) for w in words[1:]]
        elif words[0] == "mode" and len(words) == 2 and words[1] in ("lax", "colax"):
            mode = words[1]
        else:
            raise DocumentError(f"bad diagram statement {st!r}", ln)
    if len(splits) != 2 or maps is None:
        raise DocumentError(f"diagram {name} needs two split statements and a maps statement", line)
    (f, s), (f2, s2) = splits
    a, b, c = maps
    return name, Diagram(f, s, f2, s2, a, b, c, mode=mode, name=name)


_PARSERS = {
    "oset": _parse_oset,
    "theory": _parse_theory,
    "algebra": _parse_algebra,
    "hom": _parse_hom,
    "diagram": _parse_diagram,
}


def load_documents(paths):
    """Parse files in order; later files may refer to earlier names."""
    merged = SourceDocument()
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read: {exc.strerror}", None, path) from None
        doc = parse_document(text, path, base=merged)
        for kind, name, obj, line in doc.declarations:
            try:
                merged.add(kind, name, obj, line)
            except DocumentError:
                raise DocumentError(f"duplicate {kind} {name!r}", line, path) from None
    return merged


# --------------------------------------------------------------- printing

def _tok(e):
    s = str(e)
    if not _IDENT.fullmatch(s) or _atom(s) != e:
        raise DocumentError(f"element {e!r} has no textual form")
    return s


def format_oset(name, X):
    els = " ".join(_tok(e) for e in X.elements)
    pairs = ", ".join(f"{_tok(a)}<={_tok(b)}" for a, b in X.sorted_pairs() if a != b)
    return f"oset {name} {{ elements: {els}; le: {pairs}; }}\n"


def format_theory(T):
    """Theory block preceded by the osets it needs."""
    osets = []

    def oset_name(X, hint):
        for n, Y in osets:
            if Y == X:
                return n
        osets.append((hint, X))
        return hint

    body = []
    for sym in T.symbols:
        if sym.is_constant:
            body.append(f"  const {sym.name};")
        else:
            n = oset_name(sym.arity, f"{T.name}_{sym.name}")
            tail = "" if sym.coherent else " noncoherent"
            body.append(f"  op {sym.name} : arity {n}{tail};")
    for i, ax in enumerate(T.axioms, 1):
        n = oset_name(ax.context, f"{T.name}_ctx{i}")
        rel = "=" if ax.kind == "eq" else "<="
        body.append(f"  axiom {ax.kind} {n} : {ax.lhs} {rel} {ax.rhs};")
    head = "".join(format_oset(n, X) for n, X in osets)
    return head + f"theory {T.name} {{\n" + "\n".join(body) + "\n}\n"


def format_algebra(A, name=None, carrier_name=None, with_theory=False):
    name = name or A.name
    carrier_name = carrier_name or f"{name}_carrier"
    out = []
    if with_theory:
        out.append(format_theory(A.theory))
    out.append(format_oset(carrier_name, A.carrier))
    out.append(f"algebra {name} over {A.theory.name} {{\n  carrier {carrier_name};\n")
    for sym in A.theory.symbols:
        table = A.tables[sym.name]
        if sym.is_constant:
            out.append(f"  const {sym.name} = {_tok(table[()])};\n")
        else:
            entries = " ".join(
                f"({','.join(_tok(x) for x in k)})->{_tok(v)}" for k, v in table.items()
            )
            out.append(f"  table {sym.name}: {entries};\n")
    out.append("}\n")
    return "".join(out)


# ---------------------------------------------------------------- running

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("-f", "--file", action="append", default=argparse.SUPPRESS,
                   help="definition file (repeatable)")
    p.add_argument("--report", default=argparse.SUPPRESS, help="write the JSON report here")
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for demo")
    p.add_argument("--seed", default=argparse.SUPPRESS, help=argparse.SUPPRESS)


def build_parser():
    p = _Parser(prog="ordalg", description="Checks on finite ordered algebras.")
    _common(p)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="parse and validate definition files")
    v.add_argument("files", nargs="+")
    _common(v)
    c = sub.add_parser("comma", help="comma object of two homomorphisms")
    c.add_argument("f")
    c.add_argument("g")
    _common(c)
    k = sub.add_parser("kernel", help="kernel object of a homomorphism")
    k.add_argument("f")
    k.add_argument("--colax", action="store_true")
    _common(k)
    cg = sub.add_parser("congruences", help="list the congruences of an algebra")
    cg.add_argument("alg")
    cg.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _common(cg)
    cp = sub.add_parser("compose", help="compose relations generated from seed pairs")
    cp.add_argument("alg")
    cp.add_argument("r_seeds")
    cp.add_argument("s_seeds")
    cp.add_argument("--mode", choices=["congruence", "ideal", "subalgebra"], default="congruence")
    _common(cp)
    dm = sub.add_parser("demo", help="run the acceptance suite")
    _common(dm)

    ch = sub.add_parser("check", help="run a check")
    _common(ch)
    cs = ch.add_subparsers(dest="check", required=True, parser_class=_Parser)
    m = cs.add_parser("maltsev")
    m.add_argument("alg")
    m.add_argument("--exhaustive", action="store_true")
    m.add_argument("--depth", type=int, default=None)
    pr = cs.add_parser("proto")
    pr.add_argument("alg")
    pr.add_argument("--n", type=int, default=1)
    pr.add_argument("--colax", action="store_true")
    pr.add_argument("--depth", type=int, default=None)
    om = cs.add_parser("ord-maltsev")
    om.add_argument("alg")
    om.add_argument("alg2", nargs="?")
    om.add_argument("--cap", type=int, default=DEFAULT_CAP)
    pm = cs.add_parser("permutability")
    pm.add_argument("alg")
    pm.add_argument("--cap", type=int, default=DEFAULT_CAP)
    dg = cs.add_parser("degenerate")
    dg.add_argument("alg")
    ss = cs.add_parser("ss5l")
    ss.add_argument("diagram")
    nc = cs.add_parser("noncoherent")
    nc.add_argument("alg")
    nc.add_argument("alg2", nargs="?")
    for q in (m, pr, om, pm, dg, ss, nc):
        _common(q)
    return p


def _echo(argv):
    """Command words without the global options (they must not change the report)."""
    out = []
    skip = False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("-f", "--file", "--report", "--jobs"):
            skip = True
            continue
        if a.startswith(("--report=", "--jobs=", "--file=")):
            continue
        out.append(a)
    return out


def _witness_text(t):
    return str(t.witness) if hasattr(t, "witness") else str(t)


def _maltsev_result(A, args):
    budget = SearchBudget(max_term_depth=args.depth) if args.depth else None
    r = find_maltsev(A, budget, exhaustive_tables=args.exhaustive)
    diag = {"mode": r.mode, "complete": r.complete}
    if r.found:
        if r.witness is not None:
            diag["witness"] = str(r.witness.witness)
        diag["table"] = sorted(r.table.items(), key=lambda kv: tuple(A.carrier.index(x) for x in kv[0]))
        return CheckResult(PASS, diagnostics=diag, name="maltsev")
    if r.mode == "clone":
        diag.update(clone_size=r.clone_size, stop=r.reason,
                    noncoherent_candidates=[str(o.witness) for o in r.noncoherent_candidates])
    if not r.complete:
        return CheckResult(INCONCLUSIVE, diagnostics=diag, name="maltsev")
    asym = [(a, b) for a, b in A.carrier.sorted_pairs() if not A.leq(b, a)]
    if asym:
        cx = {"order_pair": asym[0], "note": "a qualifying operation would force the reverse inequality"}
    else:
        cx = {"note": "no monotone ternary table satisfies both inequality families"}
    return CheckResult(FAIL, [cx], diag, name="maltsev")


def _proto_result(A, args):
    mode = "colax" if args.colax else "lax"
    budget = SearchBudget(max_term_depth=args.depth) if args.depth else None
    r = find_proto_witnesses(A, args.n, budget, mode=mode)
    diag = {"mode": mode, "n": args.n, "complete": r.complete, "alpha_candidates": r.alpha_candidates}
    if r.found:
        diag["alpha"] = [str(a.witness) for a in r.alphas]
        diag["theta"] = str(r.theta.witness)
        return CheckResult(PASS, diagnostics=diag, name="proto")
    if not r.complete:
        return CheckResult(INCONCLUSIVE, diagnostics=diag, name="proto")
    return CheckResult(FAIL, [{"note": "no clone members satisfy the witness identities",
                               "alpha_candidates": r.alpha_candidates}], diag, name="proto")


def _seeds(text):
    pairs = re.findall(r"\(\s*(" + IDENT + r")\s*,\s*(" + IDENT + r")\s*\)", text)
    if not pairs and text.strip():
        raise UsageError(f"cannot read seed pairs from {text!r}; write them as (a,b) (c,d)")
    return {(_atom(a), _atom(b)) for a, b in pairs}


def _relation_info(R):
    return R.sorted_pairs()


def _execute(args, doc):
    """Returns (results, infos): CheckResults and plain informational entries."""
    def alg(name):
        return _lookup(doc, None, "algebra", name, None)

    def hom(name):
        return _lookup(doc, None, "hom", name, None)

    cmd = args.command
    if cmd == "validate":
        extra = load_documents(args.files)
        return [], [{"declarations": [[k, n, ln] for k, n, _, ln in extra.declarations]}]
    if cmd == "comma":
        C, _, _ = comma_algebra(hom(args.f), hom(args.g))
        return [], [{"comma": {"elements": C.elements, "le": C.carrier.sorted_pairs()}}]
    if cmd == "kernel":
        K, _ = kernel_comma(hom(args.f), "colax" if args.colax else "lax")
        return [], [{"kernel": {"elements": K.elements, "le": K.carrier.sorted_pairs()}}]
    if cmd == "congruences":
        congs, exact = enumerate_congruences(alg(args.alg), args.cap)
        return [], [{"congruences": [_relation_info(R) for R in congs], "exact": exact}]
    if cmd == "compose":
        A = alg(args.alg)
        R = generate_relation(A, A, _seeds(args.r_seeds), args.mode)
        S = generate_relation(A, A, _seeds(args.s_seeds), args.mode)
        RS = compose(R, S)
        return [], [{"R": R.sorted_pairs(), "S": S.sorted_pairs(), "RS": RS.sorted_pairs(),
                     "diagnostics": RS.diagnostics}]
    if cmd == "check":
        which = args.check
        if which == "maltsev":
            return [_maltsev_result(alg(args.alg), args)], []
        if which == "proto":
            return [_proto_result(alg(args.alg), args)], []
        if which == "ord-maltsev":
            A = alg(args.alg)
            return [check_ord_maltsev(A, alg(args.alg2) if args.alg2 else None, args.cap)], []
        if which == "permutability":
            return [check_permutability(alg(args.alg), args.cap)], []
        if which == "degenerate":
            return [check_degenerate(alg(args.alg))], []
        if which == "ss5l":
            d = _lookup(doc, None, "diagram", args.diagram, None)
            return [check_ss5l_instance(d)], []
        if which == "noncoherent":
            A = alg(args.alg)
            return [check_noncoherent_example(A, alg(args.alg2) if args.alg2 else None)], []
    raise UsageError(f"unknown command {cmd!r}")


def render_report(echo, results, infos):
    doc = {
        "command": echo,
        "results": [jsonable(r) for r in results],
        "info": jsonable(infos),
        "verdict": combine(r.verdict for r in results),
        "exit_status": exit_status(r.verdict for r in results),
    }
    return doc


def render_report_text(doc):
    lines = ["$ ordalg " + " ".join(doc["command"])]
    for r in doc["results"]:
        lines.append(f"{r['name']}: {r['verdict'].upper()}")
        for cx in r["counterexamples"]:
            lines.append(f"  counterexample: {json.dumps(cx, sort_keys=True)}")
        for key in sorted(r["diagnostics"]):
            lines.append(f"  {key}: {json.dumps(r['diagnostics'][key], sort_keys=True)}")
    for info in doc["info"]:
        for key in sorted(info):
            lines.append(f"{key}: {json.dumps(info[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def run(argv, out=None, err=None):
    """Run one command line; returns the exit status (0 pass, 1 fail,
    2 inconclusive, 3 usage or input error)."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", None) is not None:
            raise UsageError("--seed has no effect: every algorithm here is deterministic")
        jobs = getattr(args, "jobs", 1)
        if jobs < 1:
            raise UsageError("--jobs must be positive")
        report_path = getattr(args, "report", None)
        echo = _echo(argv)
        if args.command == "demo":
            from .acceptance import render_json, render_text, run_suite

            records = run_suite(jobs=jobs)
            out.write(render_text(records))
            text = render_json(records)
            if report_path:
                with open(report_path, "w", encoding="utf-8") as fh:
                    fh.write(text)
            return json.loads(text)["exit_status"]
        doc = load_documents(getattr(args, "file", []))
        results, infos = _execute(args, doc)
        report = render_report(echo, results, infos)
        out.write(render_report_text(report))
        if report_path:
            with open(report_path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return report["exit_status"]
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 3
    except HypothesisError as exc:
        err.write(f"hypothesis failure: {exc}\n")
        return 3
    except (DocumentError, DiagramError, TheoryError, RelationError, ClosureError,
            HomomorphismError, OrderError) as exc:
        err.write(f"error: {exc}\n")
        return 3


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
