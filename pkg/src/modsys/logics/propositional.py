"""Classical propositional formulas over ground atoms."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SymbolLeakage
from ..modules import PrimitiveModule
from ..structures import (
    EMPTY_VOCABULARY,
    Domain,
    GroundAtom,
    Structure,
    Vocabulary,
    atoms_of,
    check_ceiling,
    enumerate_atom_sets,
)


class PropFormula:
    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def implies(self, other):
        return Implies(self, other)

    def iff(self, other):
        return Iff(self, other)


@dataclass(frozen=True)
class Top(PropFormula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Bottom(PropFormula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Var(PropFormula):
    atom: GroundAtom

    def __str__(self):
        return str(self.atom)


@dataclass(frozen=True)
class Not(PropFormula):
    arg: PropFormula

    def __str__(self):
        return f"~{self.arg}"


@dataclass(frozen=True)
class And(PropFormula):
    left: PropFormula
    right: PropFormula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(PropFormula):
    left: PropFormula
    right: PropFormula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Implies(PropFormula):
    left: PropFormula
    right: PropFormula

    def __str__(self):
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Iff(PropFormula):
    left: PropFormula
    right: PropFormula

    def __str__(self):
        return f"({self.left} <-> {self.right})"


def evaluate(f: PropFormula, true_atoms) -> bool:
    if isinstance(f, Var):
        return f.atom in true_atoms
    if isinstance(f, Not):
        return not evaluate(f.arg, true_atoms)
    if isinstance(f, And):
        return evaluate(f.left, true_atoms) and evaluate(f.right, true_atoms)
    if isinstance(f, Or):
        return evaluate(f.left, true_atoms) or evaluate(f.right, true_atoms)
    if isinstance(f, Implies):
        return not evaluate(f.left, true_atoms) or evaluate(f.right, true_atoms)
    if isinstance(f, Iff):
        return evaluate(f.left, true_atoms) == evaluate(f.right, true_atoms)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    raise TypeError(f"not a formula: {f!r}")


def formula_atoms(f: PropFormula) -> frozenset:
    if isinstance(f, Var):
        return frozenset([f.atom])
    if isinstance(f, Not):
        return formula_atoms(f.arg)
    if isinstance(f, (And, Or, Implies, Iff)):
        return formula_atoms(f.left) | formula_atoms(f.right)
    return frozenset()


def prop_models(phi: PropFormula, vocab: Vocabulary, domain: Domain) -> list:
    """Structures over ``vocab`` satisfying ``phi``, in enumeration order."""
    symbols = vocab.symbols
    for a in formula_atoms(phi):
        if a.symbol not in symbols:
            raise SymbolLeakage(f"formula atom {a} is not over {vocab}")
    return [
        Structure(vocab, domain, atoms)
        for atoms in enumerate_atom_sets(atoms_of(vocab, domain))
        if evaluate(phi, atoms)
    ]


class FormulaModule(PrimitiveModule):
    """Mod(phi) restricted to sigma ∪ epsilon; phi may use hidden symbols."""

    kind = "p"

    def __init__(self, name, sigma, epsilon, formula: PropFormula, hidden: Vocabulary = EMPTY_VOCABULARY):
        super().__init__(name, sigma, epsilon)
        if not hidden.isdisjoint(sigma | epsilon):
            raise SymbolLeakage(f"module {name}: hidden symbols overlap the interface")
        self.hidden = hidden
        self.formula = formula
        allowed = (sigma | epsilon | hidden).symbols
        for a in formula_atoms(formula):
            if a.symbol not in allowed:
                raise SymbolLeakage(f"module {name}: formula mentions {a.symbol} outside its vocabularies")

    def _expansions(self, instance, domain):
        free = atoms_of(self.epsilon | self.hidden, domain)
        check_ceiling(len(free), f"expansions of {self.name}")
        keep = self.vocab.symbols
        seen = set()
        for chosen in enumerate_atom_sets(free):
            world = instance | chosen
            if evaluate(self.formula, world):
                out = frozenset(a for a in world if a.symbol in keep)
                if out not in seen:
                    seen.add(out)
                    yield out
