"""Modular systems over finite structures.

Primitive modules are sets of structures given directly or by axioms in
propositional logic or logic programs (stable or well-founded semantics).
An algebra of projection, composition, union, feedback and complement
builds compound systems, which can be read model-theoretically
(``mt_models``), operationally over τ-states (``op_models``), or through
entailed inferences (``ent_inferences``).
"""

from .algebra import (
    Complement,
    Compose,
    Feedback,
    ModuleExpr,
    Prim,
    Project,
    Signature,
    Union,
    check_wellformed,
    render,
    signature_of,
    subsystems,
)
from .errors import ModsysError
from .inference import Conflict, InferenceSet, ent_inferences, inf_models, module_from_inferences, propagate
from .kernels import BACKEND
from .logics import module_of_axioms, stable_models, well_founded_model
from .modules import ExplicitModule, PrimitiveModule
from .mt import ModelSet, expand, mt_models
from .op import OperationalSemantics, derivation_trace, is_fixpoint, op_models, step
from .structures import Domain, PartialAssignment, Structure, Symbol, Vocabulary, atom, enumerate_structures

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Complement",
    "Compose",
    "Conflict",
    "Domain",
    "ExplicitModule",
    "Feedback",
    "InferenceSet",
    "ModelSet",
    "ModsysError",
    "ModuleExpr",
    "OperationalSemantics",
    "PartialAssignment",
    "Prim",
    "PrimitiveModule",
    "Project",
    "Signature",
    "Structure",
    "Symbol",
    "Union",
    "Vocabulary",
    "atom",
    "check_wellformed",
    "derivation_trace",
    "ent_inferences",
    "enumerate_structures",
    "expand",
    "inf_models",
    "is_fixpoint",
    "module_from_inferences",
    "module_of_axioms",
    "mt_models",
    "op_models",
    "propagate",
    "render",
    "signature_of",
    "stable_models",
    "step",
    "subsystems",
    "well_founded_model",
]
