# Congruences, their composites, and the zig-zag property of ideals.
#
# Run from the repository root:  python demos/03_permutability.py

from ordalg.checks import check_ord_maltsev, check_permutability
from ordalg.corpus import named_algebra
from ordalg.relations import compose, enumerate_congruences, generate_relation

# Congruences here are preorders containing the carrier order and closed
# under the operations.  Z4 has three: equality, mod 2 and everything.

Z4 = named_algebra("Z4")
congs, exact = enumerate_congruences(Z4)
for R in congs:
    print(len(R), R.sorted_pairs())

# Composites of relations are closed under the operations again.

mod2 = generate_relation(Z4, Z4, {(0, 2)}, "congruence")
RS = compose(mod2, congs[0])
print(RS.pairs == mod2.pairs, RS.diagnostics["operation_closure_added"])

# Z4 has a Mal'tsev term, so every pair of congruences permutes.

print("Z4:", check_permutability(Z4).verdict)

# A bare pointed set on three points has 29 congruences (all the preorders)
# and some of them do not permute.

p3 = named_algebra("pointed3")
r = check_permutability(p3)
print("pointed3:", r.verdict, r.diagnostics["congruences"], r.counterexamples[0])

# The zig-zag property for ideals fails on the two-element chain, while its
# only two congruences trivially permute.  So the two conditions are not the
# same thing on these small examples.

chain = named_algebra("lax_chain2")
print("chain permutability:", check_permutability(chain).verdict)
zz = check_ord_maltsev(chain)
print("chain zig-zag:", zz.verdict, zz.counterexamples[0])
