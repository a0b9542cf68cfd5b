"""Stable-model search and well-founded evaluation for ground normal programs.

Atoms are bits.  Both engines are built on one primitive: the least model of
the definite rules that survive a reduct (``kernels.least_model``).

Stable models are enumerated by branching on atoms that occur under ``not``,
pruning with the usual lower/upper bounds (atoms that must be derived, atoms
that can still be derived) and with unit propagation over constraints.  Every
leaf is re-checked against the Gelfond-Lifschitz fixpoint condition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import kernels
from ..errors import PreconditionError, UnsupportedConstruct
from ..structures import AtomIndex, Domain, Structure, atoms_of, restrict
from .programs import SM, WF, LogicProgram, desugar_choices, ground


@dataclass(frozen=True)
class ThreeValuedModel:
    true_atoms: frozenset
    false_atoms: frozenset
    undefined_atoms: frozenset

    @property
    def is_total(self) -> bool:
        return not self.undefined_atoms

    def __str__(self):
        fmt = lambda s: "{" + ",".join(str(a) for a in sorted(s)) + "}"
        return f"true={fmt(self.true_atoms)} false={fmt(self.false_atoms)} undefined={fmt(self.undefined_atoms)}"


class CompiledProgram:
    """A ground program over a fixed atom universe, as bitmask rule tables."""

    def __init__(self, program: LogicProgram, domain: Domain):
        if not all(r.is_ground() for r in program.rules):
            program = ground(program, domain)
        rules, aux = desugar_choices(program.rules)
        universe = set(atoms_of(program.vocab, domain)) | aux
        for r in rules:
            universe.update(r.atoms())
        self.atoms = tuple(sorted(universe))
        self.position = {a: i for i, a in enumerate(self.atoms)}
        self.n = len(self.atoms)
        self.all = (1 << self.n) - 1
        self.program = program
        self.domain = domain
        enc = self.encode

        self.heads, self.pos, self.neg = [], [], []
        self.cons = []
        self.aux_rules = []
        aux_mask = enc(aux)
        self.naf = 0
        for r in rules:
            p, q = enc(r.pos), enc(r.neg)
            self.naf |= q
            if r.head is None:
                self.cons.append((p, q))
            else:
                h = self.position[r.head]
                self.heads.append(h)
                self.pos.append(p)
                self.neg.append(q)
                if aux_mask >> h & 1:
                    self.aux_rules.append((h, p, q))
        self.has_choice = bool(aux)
        self.aux_mask = aux_mask
        vocab_index = AtomIndex(program.vocab, domain)
        self.vocab_atoms = vocab_index.atoms
        self.vocab_mask = enc(vocab_index.atoms)
        self.sigma_mask = enc(atoms_of(program.sigma, domain))

    def encode(self, atoms) -> int:
        m = 0
        for a in atoms:
            m |= 1 << self.position[a]
        return m

    def decode(self, mask: int) -> frozenset:
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)

    def lm(self, blocked: int, base: int) -> int:
        return kernels.least_model(self.n, self.heads, self.pos, self.neg, blocked, base)

    def constraints_hold(self, m: int) -> bool:
        return all(not (p & m == p and not q & m) for p, q in self.cons)

    def is_stable(self, m: int, facts: int) -> bool:
        return self.lm(m, facts) == m and self.constraints_hold(m)

    # -- stable model search -------------------------------------------------

    def _propagate(self, t: int, f: int, facts: int):
        full = self.all
        while True:
            lower = self.lm(full & ~f, t)
            if lower & f:
                return None
            upper = self.lm(t, facts)
            if t & ~upper:
                return None
            t2, f2 = lower, f | (full & ~upper)
            if t2 & f2:
                return None
            changed = True
            while changed:
                changed = False
                clauses = list(self.cons)
                clauses.extend(
                    (p, q) for h, p, q in zip(self.heads, self.pos, self.neg) if f2 >> h & 1
                )
                for p, q in clauses:
                    if p & f2 or q & t2:
                        continue
                    open_ = (p & ~t2) | (q & ~f2)
                    if not open_:
                        return None
                    if not open_ & (open_ - 1):
                        if open_ & p:
                            f2 |= open_
                        else:
                            t2 |= open_
                        changed = True
                if t2 & f2:
                    return None
            if t2 == t and f2 == f:
                return t, f
            t, f = t2, f2

    def search(self, facts: int, t: int = 0, f: int = 0):
        """Yield every stable model (as a mask) extending the partial assignment (t, f)."""
        stack = [(t | facts, f)]
        while stack:
            t, f = stack.pop()
            r = self._propagate(t, f, facts)
            if r is None:
                continue
            t, f = r
            free = self.naf & ~(t | f)
            if not free:
                free = self.all & ~(t | f)
                if not free:
                    if self.is_stable(t, facts):
                        yield t
                    continue
            bit = free & -free
            stack.append((t, f | bit))
            stack.append((t | bit, f))

    def stable_models(self, instance: frozenset):
        facts = self.encode(instance)
        false_inputs = self.sigma_mask & ~facts
        return self.search(facts, facts, false_inputs)

    # -- well-founded model --------------------------------------------------

    def well_founded(self, facts: int):
        """Alternating fixpoint; returns (true_mask, possibly_true_mask)."""
        t = 0
        while True:
            u = self.lm(t, facts)
            t2 = self.lm(u, facts)
            if t2 == t:
                return t, u
            t = t2


def _require_expansion(facts: Structure, candidate: Structure) -> None:
    if candidate.domain != facts.domain or not facts.vocab <= candidate.vocab:
        raise PreconditionError("candidate does not expand the facts")
    if restrict(candidate, facts.vocab) != facts:
        raise PreconditionError(f"candidate {candidate} does not expand the facts {facts}")


def _compiled(program: LogicProgram, domain: Domain) -> CompiledProgram:
    return CompiledProgram(program, domain)


def is_stable_model(program: LogicProgram, facts: Structure, candidate: Structure) -> bool:
    """Gelfond-Lifschitz check of ``candidate`` against ``program`` plus ``facts``."""
    _require_expansion(facts, candidate)
    cp = _compiled(program, candidate.domain)
    inputs = frozenset(a for a in candidate.true_atoms if a.symbol in program.sigma.symbols)
    inputs |= facts.true_atoms
    fmask = cp.encode(inputs)
    m = cp.encode(a for a in candidate.true_atoms if a in cp.position)
    if any(a not in cp.position for a in candidate.true_atoms):
        return False
    if program.vocab <= candidate.vocab:
        for h, p, q in cp.aux_rules:
            if p & m == p and not q & m:
                m |= 1 << h
        return cp.is_stable(m, fmask)
    # candidate leaves some program symbols open: search over the rest
    known = cp.encode(atoms_of(candidate.vocab & program.vocab, candidate.domain))
    return next(cp.search(fmask, m | fmask, known & ~m), None) is not None


def stable_models(program: LogicProgram, facts: Structure) -> list:
    """Stable models of ``program`` ∪ ``facts`` as structures over the program vocabulary."""
    cp = _compiled(program, facts.domain)
    vocab = program.vocab
    extra = facts.vocab - vocab
    if extra:
        raise PreconditionError(f"facts use symbols outside the program: {extra}")
    instance = facts.true_atoms
    out = set()
    # facts may interpret more than sigma; treat all of facts.vocab as fixed
    facts_mask = cp.encode(instance)
    fixed = cp.encode(atoms_of(facts.vocab, facts.domain)) | cp.sigma_mask
    for m in cp.search(facts_mask, facts_mask, fixed & ~facts_mask):
        out.add(Structure(vocab, facts.domain, cp.decode(m & cp.vocab_mask)))
    return sorted(out, key=str)


def well_founded_model(program: LogicProgram, facts: Structure) -> ThreeValuedModel:
    if any(r.is_choice for r in program.rules):
        raise UnsupportedConstruct("choice rules are not supported under the well-founded semantics")
    cp = _compiled(program, facts.domain)
    t, u = cp.well_founded(cp.encode(facts.true_atoms))
    universe = cp.all
    return ThreeValuedModel(
        cp.decode(t), cp.decode(universe & ~u), cp.decode(u & ~t)
    )


__all__ = [
    "SM",
    "WF",
    "CompiledProgram",
    "ThreeValuedModel",
    "is_stable_model",
    "stable_models",
    "well_founded_model",
]
