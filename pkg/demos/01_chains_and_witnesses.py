# Chains with a bottom element, and the binary/ternary witnesses that make
# them behave like "lax" protomodular objects.
#
# Run from the repository root:  python demos/01_chains_and_witnesses.py

from ordalg.clone import find_proto_witnesses, generate_clone, verify_witnesses
from ordalg.corpus import colax_chain, lax_chain
from ordalg.oset import discrete

# A chain 0 < 1 < ... < n-1 with 0 as the constant.  Both alpha and theta are
# first projections, which is enough for theta(alpha(x,y), y) = x.

A = lax_chain(3)
print(A.carrier)
print("alpha(2,0) =", A.apply("alpha", 2, 0))

# The binary term operations are tiny: the two projections and the constant.

clone = generate_clone(A, discrete(["x", "y"]))
print([str(op.witness) for op in clone], "complete:", clone.complete)

# Search the clone for witnesses, then check them on every assignment.

found = find_proto_witnesses(A)
w = {"alpha": [a.witness for a in found.alphas], "theta": found.theta.witness}
print("alpha:", [str(a) for a in w["alpha"]], "theta:", w["theta"])
print(verify_witnesses(A, w, "lax").verdict)

# The colax version puts the constant at the top instead.

B = colax_chain(3)
print("colax:", verify_witnesses(B, {"alpha": ["x"], "theta": "t1"}, "colax").verdict)

# A wrong choice of alpha gets caught with the first failing pair.

bad = verify_witnesses(A, {"alpha": ["y"], "theta": "t1"}, "lax")
print(bad.verdict, bad.counterexamples[0])
