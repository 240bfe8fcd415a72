# Truncated addition on {0,...,n-1} with a subtraction that is only defined
# when the second argument is below the first.
#
# Run from the repository root:  python demos/04_truncated_monoid.py

from ordalg.algebra import NonMonotoneArgument, eval_term
from ordalg.checks import check_noncoherent_example, check_ord_maltsev
from ordalg.corpus import trunc_monoid
from ordalg.theory import App, Var

T = trunc_monoid(3)
print(sorted(T.tables["monus"].items()))

# Evaluation follows the ordered arity; a bad argument pair is an error,
# not a silent value.

minus = App("monus", (Var("x"), Var("y")))
print(eval_term(T, minus, {"x": 2, "y": 1}))
try:
    eval_term(T, minus, {"x": 0, "y": 2})
except NonMonotoneArgument as exc:
    print("undefined:", exc)

# Every ideal between two truncated monoids has the zig-zag property, and the
# elementwise argument with the subtraction goes through on each of them.

for n, m in [(2, 3), (3, 3), (4, 2)]:
    A, B = trunc_monoid(n), trunc_monoid(m)
    om = check_ord_maltsev(A, B)
    nc = check_noncoherent_example(A, B)
    print(n, m, om.verdict, om.diagnostics["ideals"], nc.verdict, nc.diagnostics["monus_steps"])
