"""Tag-system halting reduced to axiomatizability of implicational calculi.

Encoders, the reduction calculus generator, a proof kernel with the
constructive derivations of the reduction, and a condensed-detachment
saturation engine that audits the reduction at desk scale.
"""

from .formula import Conn, Formula, Imp, Var, apply_subst, format_formula, match_instance, parse_formula, vars_of
from .unify import mgu, rename_apart, unifiable
from .tagsys import TagSystem, TagTrace, run, step
from .calculus import Calculus, build_reduction, builtin, subsystem
from .proof import Proof, check

__version__ = "0.1.0"

__all__ = [
    "Conn", "Formula", "Imp", "Var", "apply_subst", "format_formula", "match_instance", "parse_formula", "vars_of",
    "mgu", "rename_apart", "unifiable",
    "TagSystem", "TagTrace", "run", "step",
    "Calculus", "build_reduction", "builtin", "subsystem",
    "Proof", "check",
]
