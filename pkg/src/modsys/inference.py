"""Inference-based semantics.

An inference ``(S, l)`` says: any structure consistent with the premise ``S``
is consistent with the literal ``l``.  A set of inferences defines the
structures that respect all of them; ``ent_inferences`` goes the other way
and collects every inference a given extension entails.

Text format, one inference per line::

    a, b | c => ~d      # positive premise a, b; negative premise c
    => a                # empty premise
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import kernels
from .errors import ParseError, PreconditionError, VocabularyMismatch
from .modules import PrimitiveModule
from .structures import (
    AtomIndex,
    Domain,
    GroundAtom,
    Literal,
    PartialAssignment,
    Structure,
    Vocabulary,
    check_ceiling,
    require_consistent,
)


@dataclass(frozen=True)
class Inference:
    premise: PartialAssignment
    conclusion: Literal

    def __post_init__(self):
        require_consistent(self.premise)
        if self.conclusion in self.premise.literals:
            raise PreconditionError(f"conclusion {self.conclusion} is part of its own premise")

    def __str__(self):
        return format_inference(self)


@dataclass(frozen=True)
class InferenceSet:
    vocab: Vocabulary
    domain: Domain
    inferences: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "inferences", frozenset(self.inferences))
        symbols = self.vocab.symbols
        for inf in self.inferences:
            for l in (*inf.premise.literals, inf.conclusion):
                a = l.atom
                if a.symbol not in symbols or any(e not in self.domain for e in a.args):
                    raise VocabularyMismatch(f"inference {inf} mentions {a} outside {self.vocab}")

    def __len__(self):
        return len(self.inferences)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list:
        return sorted(self.inferences, key=_inference_key)

    def lines(self) -> list:
        return [format_inference(i) for i in self.sorted()]

    def __str__(self):
        return "\n".join(self.lines())


def _inference_key(inf: Inference):
    prem = inf.premise
    return (len(prem), sorted(prem.pos), sorted(prem.neg), inf.conclusion.atom, not inf.conclusion.positive)


@dataclass(frozen=True)
class Conflict:
    """Propagation reached both ``atom`` and its negation."""

    atom: GroundAtom
    assignment: PartialAssignment

    def __str__(self):
        return f"CONFLICT on {self.atom}"


# -- bit-level views -----------------------------------------------------------


class _Tables:
    def __init__(self, I: InferenceSet):
        self.index = AtomIndex(I.vocab, I.domain)
        self.n = len(self.index)
        self.rules = I.sorted()
        enc = self.index.encode
        self.prem_pos = [enc(r.premise.pos) for r in self.rules]
        self.prem_neg = [enc(r.premise.neg) for r in self.rules]
        self.concl_bit = [self.index.position[r.conclusion.atom] for r in self.rules]
        self.concl_pos = [1 if r.conclusion.positive else 0 for r in self.rules]


def ent_inferences(
    extension, vocab: Vocabulary, domain: Domain, max_premise_size: int = 3
) -> InferenceSet:
    """Every (S, l) with |S| ≤ the bound and l ∉ S that ``extension`` entails.

    Bounds above the atom count are clamped to it.
    """
    index = AtomIndex(vocab, domain)
    n = len(index)
    check_ceiling(n, "inference premises")
    if max_premise_size < 0:
        raise PreconditionError("premise bound must be non-negative")
    k = min(max_premise_size, n)
    models = []
    for b in extension:
        if isinstance(b, Structure):
            if b.vocab != vocab or b.domain != domain:
                raise VocabularyMismatch(f"structure {b} is not over {vocab}")
            b = b.true_atoms
        models.append(index.encode(b))
    atoms = index.atoms
    out = set()
    for p, q, bit, sign in kernels.ent_pairs(n, sorted(set(models)), k):
        premise = PartialAssignment(frozenset(
            [Literal(atoms[i], True) for i in range(n) if p >> i & 1]
            + [Literal(atoms[i], False) for i in range(n) if q >> i & 1]
        ))
        out.add(Inference(premise, Literal(atoms[bit], bool(sign))))
    return InferenceSet(vocab, domain, frozenset(out))


def inf_models(I: InferenceSet) -> list:
    """Structures over I.vocab respecting every inference, canonical order."""
    t = _Tables(I)
    check_ceiling(t.n, "inference models")
    masks = kernels.filter_inference_models(t.n, t.prem_pos, t.prem_neg, t.concl_bit, t.concl_pos)
    return sorted((t.index.structure(m) for m in masks), key=str)


def propagate(I: InferenceSet, start: PartialAssignment, order=None):
    """Close ``start`` under the inferences whose premise it contains.

    Returns the closed PartialAssignment, or a Conflict as soon as an
    inference would add the complement of a literal already present.
    ``order`` permutes the firing order; the result does not depend on it.
    """
    require_consistent(start)
    t = _Tables(I)
    pos = t.index.position
    for l in start.literals:
        if l.atom not in pos:
            raise VocabularyMismatch(f"literal {l} is outside {I.vocab}")
    order = list(range(len(t.rules))) if order is None else list(order)
    if sorted(order) != list(range(len(t.rules))):
        raise PreconditionError("order must be a permutation of the inference indices")
    p, q, clash = kernels.propagate(
        t.n, t.prem_pos, t.prem_neg, t.concl_bit, t.concl_pos,
        t.index.encode(start.pos), t.index.encode(start.neg), order,
    )
    state = PartialAssignment.from_sets(t.index.decode(p & ~q), t.index.decode(q & ~p))
    if clash >= 0:
        return Conflict(t.index.atoms[clash], state)
    return state


class InferenceModule(PrimitiveModule):
    """The primitive module whose structures are ``inf_models(I)``."""

    kind = "inf"

    def __init__(self, name: str, inferences: InferenceSet, sigma: Vocabulary, epsilon: Vocabulary):
        super().__init__(name, sigma, epsilon)
        if inferences.vocab != sigma | epsilon:
            raise VocabularyMismatch(
                f"module {name}: inferences are over {inferences.vocab}, expected {sigma | epsilon}"
            )
        self.inferences = inferences
        self._rows = None

    def _expansions(self, instance, domain):
        if domain != self.inferences.domain:
            raise VocabularyMismatch(f"module {self.name} is defined over domain {self.inferences.domain}")
        if self._rows is None:
            rows: dict = {}
            sigma = self.sigma.symbols
            for s in inf_models(self.inferences):
                key = frozenset(a for a in s.true_atoms if a.symbol in sigma)
                rows.setdefault(key, []).append(s.true_atoms)
            self._rows = rows
        return self._rows.get(instance, ())


def module_from_inferences(
    I: InferenceSet, sigma: Vocabulary, epsilon: Vocabulary, name: str = "M"
) -> InferenceModule:
    return InferenceModule(name, I, sigma, epsilon)


# -- text format ---------------------------------------------------------------

_ATOM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)\s*(?:\(([^()]*)\))?\s*$")


def parse_atom(text: str, vocab: Vocabulary) -> GroundAtom:
    m = _ATOM.match(text)
    if not m:
        raise ParseError(f"malformed atom {text.strip()!r}")
    name, args = m.group(1), m.group(2)
    terms = tuple(t.strip() for t in args.split(",")) if args and args.strip() else ()
    symbol = vocab.get(name)
    if symbol is None:
        raise VocabularyMismatch(f"unknown symbol {name!r}")
    if symbol.arity != len(terms):
        raise ParseError(f"{name} expects {symbol.arity} arguments, got {len(terms)}")
    return GroundAtom(symbol, terms)


def _split_atoms(text: str) -> list:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p for p in parts if p.strip()]


def parse_literal(text: str, vocab: Vocabulary) -> Literal:
    text = text.strip()
    positive = not text.startswith("~")
    return Literal(parse_atom(text.lstrip("~"), vocab), positive)


def parse_inference(line: str, vocab: Vocabulary) -> Inference:
    if "=>" not in line:
        raise ParseError(f"inference needs '=>': {line.strip()!r}")
    left, right = line.split("=>", 1)
    pos_text, _, neg_text = left.partition("|")
    premise = PartialAssignment.from_sets(
        [parse_atom(t, vocab) for t in _split_atoms(pos_text)],
        [parse_atom(t, vocab) for t in _split_atoms(neg_text)],
    )
    return Inference(premise, parse_literal(right, vocab))


def parse_inferences(text: str, vocab: Vocabulary, domain: Domain) -> InferenceSet:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split("%", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_inference(line, vocab))
        except ParseError as exc:
            raise ParseError(exc.bare_message, lineno, 1) from None
    return InferenceSet(vocab, domain, frozenset(out))


def format_inference(inf: Inference) -> str:
    pos = ",".join(str(a) for a in sorted(inf.premise.pos))
    neg = ",".join(str(a) for a in sorted(inf.premise.neg))
    left = pos + (f" | {neg}" if neg else "")
    return f"{left} => {inf.conclusion}".lstrip()
