from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

_RANK = {PASS: 0, INCONCLUSIVE: 1, FAIL: 2}


@dataclass
class CheckResult:
    """Verdict of one check.

    ``fail`` always carries at least one counterexample; ``inconclusive`` is
    only used when an enumeration or search budget was partial.
    """

    verdict: str
    counterexamples: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.verdict not in _RANK:
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.counterexamples:
            raise ValueError("a failing check needs a counterexample")

    @property
    def passed(self):
        return self.verdict == PASS

    def __bool__(self):
        return self.passed


def combine(verdicts):
    """fail beats inconclusive beats pass."""
    worst = PASS
    for v in verdicts:
        if _RANK[v] > _RANK[worst]:
            worst = v
    return worst


def exit_status(verdicts):
    return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}[combine(verdicts)]


def jsonable(x):
    """Plain JSON data: tuples and sets become lists (sets sorted by repr),
    dicts with non-string keys become sorted [key, value] lists."""
    if isinstance(x, CheckResult):
        return {"name": x.name, "verdict": x.verdict,
                "counterexamples": jsonable(x.counterexamples),
                "diagnostics": jsonable(x.diagnostics)}
    if isinstance(x, dict):
        if all(isinstance(k, str) for k in x):
            return {k: jsonable(v) for k, v in x.items()}
        return [[jsonable(k), jsonable(v)] for k, v in sorted(x.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [jsonable(v) for v in sorted(x, key=repr)]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)
