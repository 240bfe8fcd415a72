# Looking for an ordered Mal'tsev operation: a ternary rho with
#   a <= rho(a,b,c) whenever b <= c,   rho(u,v,w) <= w whenever u <= v.
#
# Run from the repository root:  python demos/02_maltsev_search.py

from ordalg.clone import SearchBudget, exhaustive_maltsev_tables, find_maltsev
from ordalg.checks import check_degenerate
from ordalg.corpus import named_algebra

# In a group the usual a - b + c works and the order is discrete.

Z3 = named_algebra("Z3")
r = find_maltsev(Z3)
print("Z3 witness:", r.witness.witness)
print("Z3 order symmetric:", check_degenerate(Z3).verdict)

# With a small depth budget the search gives up without a verdict.

short = find_maltsev(Z3, SearchBudget(max_term_depth=1))
print("depth 1:", short.found, "complete:", short.complete, short.reason)

# On a two-element chain no monotone ternary table qualifies at all, so the
# clone search can stop at once.  Taking b = c = a' >= a in the first family
# and u = v in the second forces a' <= a, so any order carrying such an rho
# is symmetric.

chain = named_algebra("lax_chain2")
print("chain:", find_maltsev(chain).reason)
print("any table at all:", exhaustive_maltsev_tables(chain))
print("chain order symmetric:", check_degenerate(chain).counterexamples)
