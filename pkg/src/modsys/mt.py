"""Model-theoretic semantics: Mod(e) by structural recursion.

The recursion is organized around model expansion.  ``_MT.solve(e, A)``
returns the atom sets over sigma ∪ epsilon of ``e`` that expand the input
``A``; the full model set is the union over every input.  Each operator
reads its defining clause directly:

* projection: some model of the child, for some value of the hidden inputs,
  restricts to the candidate;
* composition: solve the left module, feed its output to the right one;
* union: a solution of either branch, symbols outside that branch free;
* feedback: child solutions in which R and S have the same extension;
* complement: every expansion of the input that the child rejects.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Complement,
    Compose,
    Feedback,
    ModuleExpr,
    Prim,
    Project,
    Signature,
    Union,
    raw_signature,
    signature_of,
)
from .errors import VocabularyMismatch
from .structures import (
    Domain,
    Structure,
    Vocabulary,
    atoms_of,
    enumerate_atom_sets,
    format_atoms,
)


@dataclass(frozen=True)
class ModelSet:
    signature: Signature
    domain: Domain
    structures: tuple = ()

    def __post_init__(self):
        unique = {s.true_atoms: s for s in self.structures}
        object.__setattr__(self, "structures", tuple(sorted(unique.values(), key=str)))

    @classmethod
    def from_atom_sets(cls, signature: Signature, domain: Domain, atom_sets) -> "ModelSet":
        vocab = signature.vocab
        return cls(signature, domain, tuple(Structure(vocab, domain, a) for a in atom_sets))

    def __iter__(self):
        return iter(self.structures)

    def __len__(self):
        return len(self.structures)

    def __contains__(self, item):
        atoms = item.true_atoms if isinstance(item, Structure) else frozenset(item)
        return atoms in self.atom_sets()

    def atom_sets(self) -> frozenset:
        return frozenset(s.true_atoms for s in self.structures)

    def lines(self) -> list:
        """Canonical text: one structure per line, lines sorted."""
        return sorted(str(s) for s in self.structures)

    def to_json(self) -> list:
        return sorted(sorted(str(a) for a in s.true_atoms) for s in self.structures)

    def __str__(self):
        return "\n".join(self.lines())


def _keep(atoms: frozenset, symbols: frozenset) -> frozenset:
    return frozenset(a for a in atoms if a.symbol in symbols)


class _MT:
    def __init__(self, domain: Domain):
        self.domain = domain
        self.sigs: dict = {}
        self.memo: dict = {}

    def sig(self, e: ModuleExpr) -> Signature:
        s = self.sigs.get(id(e))
        if s is None:
            s = raw_signature(e)
            self.sigs[id(e)] = (s, e)
            return s
        return s[0]

    def free(self, vocab: Vocabulary):
        return enumerate_atom_sets(atoms_of(vocab, self.domain))

    def solve(self, e: ModuleExpr, inst: frozenset) -> frozenset:
        key = (id(e), inst)
        hit = self.memo.get(key)
        if hit is None:
            hit = frozenset(self._solve(e, inst))
            self.memo[key] = hit
        return hit

    def _solve(self, e, inst):
        if isinstance(e, Prim):
            return e.module.expansions(inst, self.domain)
        out = set()
        if isinstance(e, Project):
            child = self.sig(e.child)
            nu = e.nu.symbols
            for h in self.free(child.sigma - e.nu):
                for b in self.solve(e.child, inst | h):
                    out.add(_keep(b, nu))
        elif isinstance(e, Compose):
            l, r = self.sig(e.left), self.sig(e.right)
            for bl in self.solve(e.left, _keep(inst, l.sigma.symbols)):
                ctx = inst | bl
                for br in self.solve(e.right, _keep(ctx, r.sigma.symbols)):
                    out.add(ctx | br)
        elif isinstance(e, Union):
            eps = self.sig(e).epsilon
            for branch in (e.left, e.right):
                s = self.sig(branch)
                rest = list(self.free(eps - s.epsilon))
                for b in self.solve(branch, _keep(inst, s.sigma.symbols)):
                    for y in rest:
                        out.add(inst | b | y)
        elif isinstance(e, Feedback):
            for rv in self.free(Vocabulary(frozenset([e.r]))):
                for b in self.solve(e.child, inst | rv):
                    if _extension(b, e.r) == _extension(b, e.s):
                        out.add(b)
        elif isinstance(e, Complement):
            rejected = self.solve(e.child, inst)
            for y in self.free(self.sig(e).epsilon):
                if inst | y not in rejected:
                    out.add(inst | y)
        else:
            raise TypeError(f"not a module expression: {e!r}")
        return out


def _extension(atoms, symbol) -> frozenset:
    return frozenset(a.args for a in atoms if a.symbol == symbol)


def mt_models(e: ModuleExpr, domain: Domain) -> ModelSet:
    """Mod(e) over ``domain``."""
    sig = signature_of(e)
    engine = _MT(domain)
    out = set()
    for inst in engine.free(sig.sigma):
        out.update(engine.solve(e, inst))
    return ModelSet.from_atom_sets(sig, domain, out)


def expand(e: ModuleExpr, instance: Structure) -> list:
    """Solutions of ``e`` for ``instance``: models of ``e`` expanding it.  Empty when none exists."""
    sig = signature_of(e)
    if instance.vocab != sig.sigma:
        raise VocabularyMismatch(
            f"instance is over {instance.vocab} but the system's inputs are {sig.sigma}"
        )
    engine = _MT(instance.domain)
    found = engine.solve(e, instance.true_atoms)
    return sorted((Structure(sig.vocab, instance.domain, b) for b in found), key=str)


def format_model_lines(structures) -> str:
    return "\n".join(sorted(format_atoms(s.true_atoms) for s in structures))
