"""Eliminate the cut in the two-atom example and watch each step.

The left premise merges two arrow threads with a right intersection; the
right premise opens the intersection on the second atom.  The algorithm
needs five steps, two of which rewrite an intersection deep inside the left
premise.
"""
import os

from intersync import cutelim, syntax
from intersync.core import format_molecule

here = os.path.join(os.path.dirname(__file__), "..", "tests", "data")
with open(os.path.join(here, "pi.isc")) as fh:
    doc = syntax.parse(fh.read())
pi = doc.derivation

print("input:")
print(syntax.format_tree(pi))

result, trace = cutelim.eliminate(pi)
print("steps:")
for entry in trace:
    before = [tuple(m) for m in entry.measure_before]
    created = [[tuple(m) for m in ms] for ms in entry.created_measures]
    print(f"  {entry.kind:22} at {list(entry.path)}  {before} -> {created}")

print("cut-free result:")
print(syntax.format_tree(result))
print("molecule:", format_molecule(result.conclusion))
