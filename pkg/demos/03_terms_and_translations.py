"""From natural deduction to lambda terms and to the sequent calculus.

The ISL derivation below types ``y x`` twice at once: once with an
intersection result and once through an intersection elimination.
"""
from intersync import corpus, isc, isl, it, syntax
from intersync.core import Var, format_molecule

d = corpus.example_isl_normal_form()
print("ISL molecule:", format_molecule(isl.check_isl(d)))

term, proofs = isl.extract_term(d, ["x", "y"])
print("term:", it.format_term(term))
for p in proofs:
    print("  ", it.check_it(p))

back = isl.embed_typings(proofs)
print("re-embedded:", format_molecule(isl.check_isl(back)))

seq = isc.isl_to_isc(d)
print("as ISC (cuts against left rules):")
print(syntax.format_derivation(seq))

round_trip = isc.isc_to_isl(seq)
print("back to ISL, same molecule:", isl.check_isl(round_trip) == isl.check_isl(d))

ident, (proof,) = isl.extract_term(isl.arrow_i(isl.ax([Var("a")])), [])
print("identity:", it.check_it(proof))
