"""Primitive modules: sets of structures over an input and output vocabulary.

Every concrete module answers one question, ``expansions(instance, domain)``:
the (sigma ∪ epsilon)-structures of the module that expand a given
sigma-structure.  The full extension is derived from that by enumerating
instances, so axiomatized modules never have to materialize it.
"""

from __future__ import annotations

from typing import Iterable

from .errors import PreconditionError, VocabularyMismatch
from .structures import (
    Domain,
    GroundAtom,
    Structure,
    Vocabulary,
    atoms_of,
    enumerate_atom_sets,
)


class PrimitiveModule:
    """Base class.  Subclasses implement ``_expansions``."""

    kind = "abstract"

    def __init__(self, name: str, sigma: Vocabulary, epsilon: Vocabulary):
        if not sigma.isdisjoint(epsilon) or not sigma.names.isdisjoint(epsilon.names):
            raise VocabularyMismatch(
                f"module {name}: input and output vocabularies overlap ({sigma & epsilon})"
            )
        self.name = name
        self.sigma = sigma
        self.epsilon = epsilon
        self._cache: dict = {}

    @property
    def vocab(self) -> Vocabulary:
        return self.sigma | self.epsilon

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}: {self.sigma} -> {self.epsilon}>"

    def expansions(self, instance: frozenset, domain: Domain) -> frozenset:
        """Atom sets over sigma ∪ epsilon in the module that agree with ``instance`` on sigma."""
        key = (instance, domain)
        hit = self._cache.get(key)
        if hit is None:
            hit = frozenset(self._expansions(frozenset(instance), domain))
            self._cache[key] = hit
        return hit

    def _expansions(self, instance: frozenset, domain: Domain) -> Iterable[frozenset]:
        raise NotImplementedError

    def contains(self, atoms: Iterable[GroundAtom], domain: Domain) -> bool:
        atoms = frozenset(atoms)
        sigma = self.sigma.symbols
        instance = frozenset(a for a in atoms if a.symbol in sigma)
        return atoms in self.expansions(instance, domain)

    def extension(self, domain: Domain) -> list:
        """Every structure of the module, in canonical text order."""
        out = set()
        for instance in enumerate_atom_sets(atoms_of(self.sigma, domain)):
            for atoms in self.expansions(instance, domain):
                out.add(Structure(self.vocab, domain, atoms))
        return sorted(out, key=str)


class ExplicitModule(PrimitiveModule):
    """A module given by listing its structures."""

    kind = "explicit"

    def __init__(self, name: str, sigma: Vocabulary, epsilon: Vocabulary, structures: Iterable):
        super().__init__(name, sigma, epsilon)
        vocab = self.vocab.symbols
        rows = set()
        for s in structures:
            atoms = frozenset(s.true_atoms if isinstance(s, Structure) else s)
            for a in atoms:
                if a.symbol not in vocab:
                    raise VocabularyMismatch(f"module {name}: atom {a} outside {self.vocab}")
            rows.add(atoms)
        self.rows = frozenset(rows)
        self._by_instance: dict = {}
        sigma_syms = sigma.symbols
        for atoms in self.rows:
            key = frozenset(a for a in atoms if a.symbol in sigma_syms)
            self._by_instance.setdefault(key, set()).add(atoms)

    def _expansions(self, instance, domain):
        for atoms in self._by_instance.get(instance, ()):
            for a in atoms:
                if any(e not in domain for e in a.args):
                    raise PreconditionError(f"module {self.name}: {a} is outside domain {domain}")
            yield atoms


def as_structures(vocab: Vocabulary, domain: Domain, atom_sets) -> list:
    return sorted((Structure(vocab, domain, a) for a in atom_sets), key=str)
