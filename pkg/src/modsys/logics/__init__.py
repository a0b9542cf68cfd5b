"""Mini-logics that axiomatize primitive modules.

``p``  classical propositional formulas (Mod(phi))
``sm`` normal programs under the stable-model semantics
``wf`` normal programs under the well-founded semantics

For ``wf`` a module accepts an input exactly when the well-founded model of
program plus input is total; that model is then the unique expansion.
"""

from __future__ import annotations

from ..errors import SymbolLeakage, UnsupportedConstruct
from ..modules import PrimitiveModule
from ..structures import EMPTY_VOCABULARY, Domain, Vocabulary, check_ceiling
from .programs import (
    SM,
    WF,
    AtomPattern,
    Choice,
    LogicProgram,
    Rule,
    desugar_choices,
    ground,
    pattern,
)
from .propositional import (
    And,
    Bottom,
    FormulaModule,
    Iff,
    Implies,
    Not,
    Or,
    PropFormula,
    Top,
    Var,
    evaluate,
    formula_atoms,
    prop_models,
)
from .solver import (
    CompiledProgram,
    ThreeValuedModel,
    is_stable_model,
    stable_models,
    well_founded_model,
)

P = "p"
LOGICS = (P, SM, WF)


class ProgramModule(PrimitiveModule):
    def __init__(self, name: str, program: LogicProgram):
        super().__init__(name, program.sigma, program.epsilon)
        if not program.hidden.isdisjoint(program.sigma | program.epsilon):
            raise SymbolLeakage(f"module {name}: hidden symbols overlap the interface")
        program.check_symbols(f"module {name}")
        if program.semantics == WF and any(r.is_choice for r in program.rules):
            raise UnsupportedConstruct(f"module {name}: choice rules are not allowed under wf")
        self.program = program
        self.kind = program.semantics
        self._compiled: dict = {}

    def compiled(self, domain: Domain) -> CompiledProgram:
        cp = self._compiled.get(domain)
        if cp is None:
            cp = CompiledProgram(self.program, domain)
            self._compiled[domain] = cp
        return cp

    def _expansions(self, instance, domain):
        cp = self.compiled(domain)
        keep = cp.encode(a for a in cp.vocab_atoms if a.symbol in self.vocab.symbols)
        facts = cp.encode(instance)
        if self.program.semantics == SM:
            seen = set()
            for m in cp.stable_models(instance):
                m &= keep
                if m not in seen:
                    seen.add(m)
                    yield cp.decode(m)
            return
        t, u = cp.well_founded(facts)
        if t != u:
            return  # partial well-founded model: no expansion for this input
        if t & cp.sigma_mask != facts or not cp.constraints_hold(t):
            return
        yield cp.decode(t & keep)


def make_module(
    logic: str,
    body,
    sigma: Vocabulary,
    epsilon: Vocabulary,
    hidden: Vocabulary = EMPTY_VOCABULARY,
    name: str = "M",
) -> PrimitiveModule:
    """Primitive module axiomatized by ``body`` in ``logic``."""
    if logic == P:
        return FormulaModule(name, sigma, epsilon, body, hidden)
    if logic in (SM, WF):
        rules = body.rules if isinstance(body, LogicProgram) else tuple(body)
        return ProgramModule(name, LogicProgram(rules, logic, sigma, epsilon, hidden))
    raise UnsupportedConstruct(f"unknown logic {logic!r}")


def module_of_axioms(
    logic: str,
    body,
    sigma: Vocabulary,
    epsilon: Vocabulary,
    hidden: Vocabulary = EMPTY_VOCABULARY,
    domain: Domain | None = None,
) -> list:
    """The extension (structures over sigma ∪ epsilon) of an axiomatized module."""
    from ..structures import PROPOSITIONAL

    domain = domain or PROPOSITIONAL
    module = make_module(logic, body, sigma, epsilon, hidden)
    return module.extension(domain)


__all__ = [
    "P",
    "SM",
    "WF",
    "LOGICS",
    "And",
    "AtomPattern",
    "Bottom",
    "Choice",
    "CompiledProgram",
    "FormulaModule",
    "Iff",
    "Implies",
    "LogicProgram",
    "Not",
    "Or",
    "ProgramModule",
    "PropFormula",
    "Rule",
    "ThreeValuedModel",
    "Top",
    "Var",
    "check_ceiling",
    "desugar_choices",
    "evaluate",
    "formula_atoms",
    "ground",
    "is_stable_model",
    "make_module",
    "module_of_axioms",
    "pattern",
    "prop_models",
    "stable_models",
    "well_founded_model",
]
