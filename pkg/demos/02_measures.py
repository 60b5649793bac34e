"""Before/after cut measures for the three intersection cases.

Each schema instance records the heights of its components, read off the LJ
projections, so the closed forms can be evaluated next to the measured values.
"""
from intersync import corpus, cutelim, isc


def after(d):
    out, kind = cutelim.step(d)
    out = isc.clean(out)
    return kind, cutelim.measure(out, cutelim.find_topmost_cut(out))


def show(name, si, *forms):
    kind, got = after(si.cut)
    print(f"{name}: {kind}")
    print("  heights  ", {k: v for k, v in si.heights.items() if not isinstance(v, tuple)})
    print("  before   ", [tuple(m) for m in cutelim.measure(si.cut)])
    print("  after    ", [tuple(m) for m in got])
    for label, value in forms:
        print(f"  {label:9}", value)


si = corpus.commutation_instance(h0=3, ka=2, kb=1, pad_r=1)
H = si.heights
show("commutation", si, ("h0+h1+h2+1", H["h0"] + H["h1"] + H["h2"] + 1),
     ("split", (H["h0"] + H["h1"], H["h0"] + H["h2"])))

si = corpus.symmetric_instance(ka=2, kb=1, pad_l=1, h3=3)
H = si.heights
show("symmetric", si, ("h1+h2+h3+2", H["h1"] + H["h2"] + H["h3"] + 2),
     ("h1+h3", H["h1"] + H["h3"]))

# the discarded premise of the inner intersection no longer counts, so the
# rewritten thread is shorter than h3+h5-1 by that premise's height
si = corpus.asymmetric_instance(ka=1, kb=1, kmu=2, knu=1, pad_l=1, pad_r=0)
H = si.heights
show("asymmetric", si, ("h3+h5-1", H["h3"] + H["h5"] - 1),
     ("measured", H["h3"] + H["h5"] - 1 - H["t_nu"]))
