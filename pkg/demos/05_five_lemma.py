# Split short five lemma probes: two split extensions with comparison maps
# a, b, c.  With a and c isomorphisms, is the middle map b one too?
#
# Run from the repository root:  python demos/05_five_lemma.py

from ordalg.acceptance import lax_diagrams, pointed_counterexample
from ordalg.checks import check_ss5l_instance

# Pointed sets: the kernels and the bases match, but the middle map is the
# inclusion of {0,x} into {0,x,y}.

r = check_ss5l_instance(pointed_counterexample())
print(r.verdict, r.counterexamples)

# Over small lax models every compatible middle map comes out invertible.

ds = lax_diagrams()
verdicts = [check_ss5l_instance(d).verdict for d in ds]
print(len(ds), "diagrams,", verdicts.count("pass"), "pass")
print(ds[0].name, ds[-1].name)
