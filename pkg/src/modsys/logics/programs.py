"""Normal logic programs with constraints and one cardinality-choice form.

Rule atoms are ``AtomPattern`` until grounded.  A term is a variable when it
starts with an uppercase letter or an underscore; everything else is a
domain constant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import SymbolLeakage
from ..structures import EMPTY_VOCABULARY, Domain, GroundAtom, Symbol, Vocabulary

SM = "sm"
WF = "wf"


def is_variable(term: str) -> bool:
    return term[:1].isupper() or term[:1] == "_"


@dataclass(frozen=True, order=True)
class AtomPattern:
    symbol: Symbol
    terms: tuple = ()

    def variables(self) -> list:
        return [t for t in self.terms if is_variable(t)]

    def substitute(self, binding: dict) -> GroundAtom:
        return GroundAtom(self.symbol, tuple(binding.get(t, t) for t in self.terms))

    def __str__(self):
        if not self.terms:
            return self.symbol.name
        return f"{self.symbol.name}({','.join(self.terms)})"


def pattern(name: str, *terms) -> AtomPattern:
    return AtomPattern(Symbol(name, len(terms)), tuple(str(t) for t in terms))


@dataclass(frozen=True)
class Choice:
    lower: int
    atoms: tuple
    upper: int

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper <= len(self.atoms):
            raise ValueError(f"bad cardinality bounds {self.lower}..{self.upper} over {len(self.atoms)} atoms")

    def __str__(self):
        return f"{self.lower} {{{'; '.join(str(a) for a in self.atoms)}}} {self.upper}"


@dataclass(frozen=True)
class Rule:
    head: object = None  # atom, Choice, or None for a constraint
    pos: tuple = ()
    neg: tuple = ()

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_choice(self) -> bool:
        return isinstance(self.head, Choice)

    def atoms(self):
        if isinstance(self.head, Choice):
            yield from self.head.atoms
        elif self.head is not None:
            yield self.head
        yield from self.pos
        yield from self.neg

    def variables(self) -> list:
        seen = []
        for a in self.atoms():
            if isinstance(a, AtomPattern):
                for v in a.variables():
                    if v not in seen:
                        seen.append(v)
        return seen

    def is_ground(self) -> bool:
        return all(isinstance(a, GroundAtom) for a in self.atoms())

    def __str__(self):
        body = [str(a) for a in self.pos] + [f"not {a}" for a in self.neg]
        head = "" if self.head is None else str(self.head)
        if not body:
            return f"{head}."
        sep = " :- " if head else ":- "
        return f"{head}{sep}{', '.join(body)}."


@dataclass(frozen=True)
class LogicProgram:
    rules: tuple
    semantics: str = SM
    sigma: Vocabulary = EMPTY_VOCABULARY
    epsilon: Vocabulary = EMPTY_VOCABULARY
    hidden: Vocabulary = EMPTY_VOCABULARY

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.semantics not in (SM, WF):
            raise ValueError(f"unknown semantics tag {self.semantics!r}")

    @property
    def vocab(self) -> Vocabulary:
        return self.sigma | self.epsilon | self.hidden

    def check_symbols(self, name: str = "program") -> None:
        allowed = self.vocab.symbols
        for r in self.rules:
            for a in r.atoms():
                if a.symbol not in allowed:
                    raise SymbolLeakage(
                        f"{name}: rule `{r}` uses {a.symbol} outside sigma ∪ epsilon ∪ hidden"
                    )

    def with_rules(self, rules) -> "LogicProgram":
        return LogicProgram(tuple(rules), self.semantics, self.sigma, self.epsilon, self.hidden)

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


def _ground_atom(a, binding):
    return a.substitute(binding) if isinstance(a, AtomPattern) else a


def ground_rule(rule: Rule, domain: Domain):
    variables = rule.variables()
    for values in itertools.product(domain.elements, repeat=len(variables)):
        binding = dict(zip(variables, values))
        head = rule.head
        if isinstance(head, Choice):
            head = Choice(head.lower, tuple(_ground_atom(a, binding) for a in head.atoms), head.upper)
        elif head is not None:
            head = _ground_atom(head, binding)
        yield Rule(
            head,
            tuple(_ground_atom(a, binding) for a in rule.pos),
            tuple(_ground_atom(a, binding) for a in rule.neg),
        )


def ground(program: LogicProgram, domain: Domain) -> LogicProgram:
    """One instance of each rule per substitution of its variables by domain elements."""
    rules = []
    for r in program.rules:
        rules.extend(ground_rule(r, domain))
    return program.with_rules(rules)


def choice_aux(a: GroundAtom) -> GroundAtom:
    # '#' cannot appear in a parsed name, so these never collide with user symbols
    return GroundAtom(Symbol(a.symbol.name + "#neg", a.symbol.arity), a.args)


def desugar_choices(rules) -> tuple:
    """Replace ground choice rules by guessing pairs plus count constraints.

    Returns ``(normal_rules, aux_atoms)``.
    """
    out = []
    aux = set()
    for r in rules:
        if not r.is_choice:
            out.append(r)
            continue
        ch = r.head
        atoms = ch.atoms
        k = len(atoms)
        for a in atoms:
            na = choice_aux(a)
            aux.add(na)
            out.append(Rule(a, r.pos, r.neg + (na,)))
            out.append(Rule(na, r.pos, r.neg + (a,)))
        if ch.lower > 0:
            for group in itertools.combinations(atoms, k - ch.lower + 1):
                out.append(Rule(None, r.pos, r.neg + tuple(group)))
        if ch.upper < k:
            for group in itertools.combinations(atoms, ch.upper + 1):
                out.append(Rule(None, r.pos + tuple(group), r.neg))
    return tuple(out), frozenset(aux)
