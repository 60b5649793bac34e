"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from intersync.core import Arrow, Conj, GConj, LConj, Var

variables = st.sampled_from([Var("a"), Var("b"), Var("c")])


def formulas(kinds=(Arrow, GConj, LConj), max_leaves=6):
    return st.recursive(
        variables,
        lambda sub: st.one_of(*[st.builds(k, sub, sub) for k in kinds]),
        max_leaves=max_leaves,
    )


isc_formulas = formulas()
lj_formulas = formulas((Arrow, Conj))
seeds = st.integers(min_value=0, max_value=10 ** 6)
