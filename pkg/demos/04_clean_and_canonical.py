"""Pushing P and Fus to the axioms, and splitting intersection axioms."""
from intersync import corpus, isc, syntax
from intersync.core import LConj, Var

a, b, c = Var("a"), Var("b"), Var("c")

# copy an atom whose succedent was built by a right intersection
merged = isc.lconj_r(isc.arrow_r(isc.w(isc.ax([a, a]), [b, c])), 0)
d = isc.fus(merged, 0, 1)
print("with Fus:")
print(syntax.format_derivation(d))
out = isc.clean(d)
print("clean:")
print(syntax.format_derivation(out))
print("thread heights", d.threads, "->", out.threads)

print()
print("canonical form of an axiom on (a^b)^c:")
print(syntax.format_tree(isc.canonicalize(isc.ax([LConj(LConj(a, b), c)]))))

# random derivations with injected P/Fus keep their projection heights
same = sum(corpus.heights(isc.clean(x)) == corpus.heights(x)
           for x in (corpus.random_isc(s, local=True) for s in range(200)))
print(f"{same}/200 random derivations keep their heights under clean")
