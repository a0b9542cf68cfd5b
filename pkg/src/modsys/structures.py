"""Finite relational vocabularies, structures and partial assignments.

Structures are total interpretations encoded as the set of ground atoms that
are true; everything else is false.  Partial assignments are consistent sets
of signed atoms.  Canonical order everywhere is (symbol name, argument tuple),
which is what makes printed output byte-stable.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import EnumerationTooLarge, PreconditionError, VocabularyMismatch

DEFAULT_ATOM_CEILING = 24


def atom_ceiling() -> int:
    raw = os.environ.get("MODSYS_ATOM_CEILING")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_ATOM_CEILING


def check_ceiling(atoms: int, what: str = "enumeration", ceiling: int | None = None) -> None:
    limit = atom_ceiling() if ceiling is None else ceiling
    if atoms > limit:
        raise EnumerationTooLarge(atoms, limit, what)


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    arity: int = 0

    def __post_init__(self):
        if not self.name:
            raise ValueError("symbol name must be nonempty")
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name}")

    def __str__(self):
        return f"{self.name}/{self.arity}" if self.arity else self.name


def _as_symbol(item) -> Symbol:
    if isinstance(item, Symbol):
        return item
    name, _, arity = str(item).partition("/")
    return Symbol(name.strip(), int(arity) if arity else 0)


@dataclass(frozen=True)
class Vocabulary:
    symbols: frozenset = frozenset()

    def __post_init__(self):
        names = [s.name for s in self.symbols]
        if len(names) != len(set(names)):
            clash = sorted({n for n in names if names.count(n) > 1})
            raise VocabularyMismatch(f"symbols share a name: {', '.join(clash)}")

    @classmethod
    def of(cls, *items) -> "Vocabulary":
        """Build from Symbols or ``"name"`` / ``"name/arity"`` strings."""
        if len(items) == 1 and not isinstance(items[0], (str, Symbol)):
            items = tuple(items[0])
        return cls(frozenset(_as_symbol(i) for i in items))

    def __iter__(self) -> Iterator[Symbol]:
        return iter(sorted(self.symbols))

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, item):
        if isinstance(item, str):
            return any(s.name == item for s in self.symbols)
        return item in self.symbols

    def __bool__(self):
        return bool(self.symbols)

    def get(self, name: str) -> Symbol | None:
        for s in self.symbols:
            if s.name == name:
                return s
        return None

    @property
    def names(self) -> frozenset:
        return frozenset(s.name for s in self.symbols)

    def __or__(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.symbols | other.symbols)

    def __and__(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.symbols & other.symbols)

    def __sub__(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.symbols - other.symbols)

    def __le__(self, other: "Vocabulary") -> bool:
        return self.symbols <= other.symbols

    def isdisjoint(self, other: "Vocabulary") -> bool:
        return self.symbols.isdisjoint(other.symbols)

    def __str__(self):
        return "{" + ", ".join(str(s) for s in self) + "}"


EMPTY_VOCABULARY = Vocabulary()


@dataclass(frozen=True)
class Domain:
    elements: tuple
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        if not elements:
            raise ValueError("domain must be nonempty")
        if len(set(elements)) != len(elements):
            raise ValueError("domain element names must be unique")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_members", frozenset(elements))

    @classmethod
    def of(cls, *elements) -> "Domain":
        if len(elements) == 1 and not isinstance(elements[0], (str, int)):
            elements = tuple(elements[0])
        return cls(tuple(elements))

    def __contains__(self, element):
        return element in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ",".join(self.elements) + "}"


# Arity-0 atoms do not look at the domain; a single element stands in for it.
PROPOSITIONAL = Domain(("u",))


@dataclass(frozen=True, order=True)
class GroundAtom:
    symbol: Symbol
    args: tuple = ()

    def __post_init__(self):
        if len(self.args) != self.symbol.arity:
            raise ValueError(
                f"{self.symbol.name} has arity {self.symbol.arity}, got {len(self.args)} args"
            )

    @property
    def name(self) -> str:
        return self.symbol.name

    def __str__(self):
        if not self.args:
            return self.symbol.name
        return f"{self.symbol.name}({','.join(self.args)})"


def atom(name: str, *args) -> GroundAtom:
    return GroundAtom(Symbol(name, len(args)), tuple(str(a) for a in args))


@dataclass(frozen=True, order=True)
class Literal:
    atom: GroundAtom
    positive: bool = True

    def __neg__(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self):
        return str(self.atom) if self.positive else f"~{self.atom}"


def lit(spec) -> Literal:
    """``"a"`` / ``"~a"`` / GroundAtom / Literal to a Literal (arity 0 for strings)."""
    if isinstance(spec, Literal):
        return spec
    if isinstance(spec, GroundAtom):
        return Literal(spec)
    text = str(spec).strip()
    if text.startswith("~"):
        return Literal(atom(text[1:].strip()), False)
    return Literal(atom(text))


@dataclass(frozen=True)
class PartialAssignment:
    literals: frozenset = frozenset()

    @classmethod
    def of(cls, *items) -> "PartialAssignment":
        if len(items) == 1 and not isinstance(items[0], (str, Literal, GroundAtom)):
            items = tuple(items[0])
        return cls(frozenset(lit(i) for i in items))

    @classmethod
    def from_sets(cls, pos: Iterable[GroundAtom] = (), neg: Iterable[GroundAtom] = ()):
        return cls(frozenset([Literal(a) for a in pos] + [Literal(a, False) for a in neg]))

    @property
    def pos(self) -> frozenset:
        return frozenset(l.atom for l in self.literals if l.positive)

    @property
    def neg(self) -> frozenset:
        return frozenset(l.atom for l in self.literals if not l.positive)

    def is_consistent(self) -> bool:
        return is_consistent(self)

    def __iter__(self):
        return iter(sorted(self.literals))

    def __len__(self):
        return len(self.literals)

    def __contains__(self, item):
        return lit(item) in self.literals

    def __le__(self, other: "PartialAssignment") -> bool:
        return self.literals <= other.literals

    def __or__(self, other: "PartialAssignment") -> "PartialAssignment":
        return PartialAssignment(self.literals | other.literals)

    def __str__(self):
        return "{" + ",".join(str(l) for l in self) + "}"


def format_atoms(atoms: Iterable[GroundAtom]) -> str:
    return "{" + ",".join(str(a) for a in sorted(atoms)) + "}"


@dataclass(frozen=True)
class Structure:
    vocab: Vocabulary
    domain: Domain
    true_atoms: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "true_atoms", frozenset(self.true_atoms))
        symbols = self.vocab.symbols
        for a in self.true_atoms:
            if a.symbol not in symbols:
                raise VocabularyMismatch(f"atom {a} is not over vocabulary {self.vocab}")
            for e in a.args:
                if e not in self.domain:
                    raise VocabularyMismatch(f"atom {a} uses {e!r} outside the domain")

    def __contains__(self, item):
        return item in self.true_atoms

    def __len__(self):
        return len(self.true_atoms)

    def __str__(self):
        return format_atoms(self.true_atoms)

    def sorted_atoms(self) -> list:
        return sorted(self.true_atoms)

    def extension(self, symbol: Symbol) -> frozenset:
        """Argument tuples for which ``symbol`` is true."""
        return frozenset(a.args for a in self.true_atoms if a.symbol == symbol)


def atoms_of(vocab: Vocabulary, domain: Domain) -> tuple:
    """Every ground atom over ``vocab`` and ``domain`` in canonical order."""
    out = []
    for s in vocab:
        for args in itertools.product(domain.elements, repeat=s.arity):
            out.append(GroundAtom(s, args))
    return tuple(sorted(out))


def atom_count(vocab: Vocabulary, domain: Domain) -> int:
    return sum(len(domain) ** s.arity for s in vocab.symbols)


class AtomIndex:
    """Bit positions for the atoms of a vocabulary; bit i is the i-th atom in canonical order."""

    def __init__(self, vocab: Vocabulary, domain: Domain):
        self.vocab = vocab
        self.domain = domain
        self.atoms = atoms_of(vocab, domain)
        self.position = {a: i for i, a in enumerate(self.atoms)}

    def __len__(self):
        return len(self.atoms)

    def encode(self, atoms: Iterable[GroundAtom]) -> int:
        mask = 0
        pos = self.position
        for a in atoms:
            mask |= 1 << pos[a]
        return mask

    def decode(self, mask: int) -> frozenset:
        atoms = self.atoms
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(atoms[i])
            mask >>= 1
            i += 1
        return frozenset(out)

    def mask_of(self, vocab: Vocabulary) -> int:
        mask = 0
        for i, a in enumerate(self.atoms):
            if a.symbol in vocab.symbols:
                mask |= 1 << i
        return mask

    def structure(self, mask: int) -> Structure:
        return Structure(self.vocab, self.domain, self.decode(mask))


def enumerate_structures(
    vocab: Vocabulary, domain: Domain, ceiling: int | None = None
) -> Iterator[Structure]:
    """All structures over ``vocab`` and ``domain``, subsets in binary-counter order."""
    index = AtomIndex(vocab, domain)
    check_ceiling(len(index), ceiling=ceiling)
    for mask in range(1 << len(index)):
        yield Structure(vocab, domain, index.decode(mask))


def enumerate_atom_sets(atoms: tuple, ceiling: int | None = None) -> Iterator[frozenset]:
    check_ceiling(len(atoms), ceiling=ceiling)
    n = len(atoms)
    for mask in range(1 << n):
        yield frozenset(atoms[i] for i in range(n) if mask >> i & 1)


def restrict(b: Structure, nu: Vocabulary) -> Structure:
    if not nu <= b.vocab:
        missing = ", ".join(str(s) for s in nu - b.vocab)
        raise VocabularyMismatch(f"cannot restrict to symbols absent from the structure: {missing}")
    keep = nu.symbols
    return Structure(nu, b.domain, frozenset(a for a in b.true_atoms if a.symbol in keep))


def expands(bp: Structure, b: Structure) -> bool:
    if bp.domain != b.domain or not b.vocab <= bp.vocab:
        return False
    return restrict(bp, b.vocab) == b


def consistent_with(s: PartialAssignment, b: Structure) -> bool:
    for l in s.literals:
        if l.atom.symbol not in b.vocab.symbols:
            raise VocabularyMismatch(f"literal {l} is outside the vocabulary {b.vocab}")
    return s.pos <= b.true_atoms and s.neg.isdisjoint(b.true_atoms)


def is_consistent(s: PartialAssignment) -> bool:
    return s.pos.isdisjoint(s.neg)


def require_consistent(s: PartialAssignment) -> None:
    if not is_consistent(s):
        raise PreconditionError(f"inconsistent partial assignment {s}")
