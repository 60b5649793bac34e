"""Proof kernel, translations and cut elimination for a synchronous intersection calculus.

Modules: ``core`` (formulas, molecules), ``it`` (intersection type
assignment), ``isl`` (natural deduction), ``isc`` (sequent calculus),
``lj`` (intuitionistic reference calculus), ``cutelim`` (the elimination
algorithm), ``syntax`` (text format) and ``cli``.
"""
import sys

# derivations are deep trees and every traversal is recursive
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

from .core import (Arrow, Atom, Conj, GConj, LConj, Var, atom, cardinality, collapse,
                   format_formula, format_molecule, formula_size, is_canonical_formula,
                   molecule_eq, molecule_wf)
from .errors import KernelError, PreconditionError, ProofSyntaxError, StepBudgetExceeded
from .syntax import (ProofDocument, parse, parse_derivation, parse_formula, parse_molecule,
                     parse_term, serialize)

__version__ = "0.1.0"
