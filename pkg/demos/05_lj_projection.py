"""Every ISC derivation projects to one LJ derivation per atom.

Eliminating in ISC and then projecting gives the same sequents as
projecting first and eliminating in LJ.
"""
from intersync import corpus, cutelim, isc, lj, syntax

pi = corpus.example_pi()
for i, q in enumerate(isc.project_to_lj(pi)):
    print(f"atom {i}: {lj.check_lj(q)}  height {lj.height(q)}, "
          f"unpadded {isc.unpadded_height(q)}")
    print(syntax.format_derivation(q, indent=2))

result, _ = cutelim.eliminate(pi)
for i, (q, r) in enumerate(zip(isc.project_to_lj(pi), isc.project_to_lj(result))):
    direct = lj.lj_eliminate(q)
    print(f"atom {i}: LJ route {lj.check_lj(direct)}, ISC route {lj.check_lj(r)}, "
          f"cut-free {lj.is_cut_free(direct) and lj.is_cut_free(r)}")
