"""Nominal absolute semantics for first-order logic with equality.

Atoms and permutations, substitution algebras and their powerset duals,
the lattice interface behind first-order logic, an executable lift of
finite Tarski models, a bounded sequent prover with countermodel search,
and a filter/point workbench.
"""

from .nominal import Atom, Perm, act, atoms, fresh, new_check, support, swap
from .syntax import (Formula, Signature, Term, alpha_eq, free_atoms,
                     parse_formula, parse_term, pretty, subst_formula,
                     subst_term)

__all__ = [
    "Atom", "Perm", "act", "atoms", "fresh", "new_check", "support", "swap",
    "Formula", "Signature", "Term", "alpha_eq", "free_atoms",
    "parse_formula", "parse_term", "pretty", "subst_formula", "subst_term",
]

__version__ = "0.1.0"
