"""Expressions of the module algebra and their well-formedness.

Five operators over primitive modules: projection, sequential composition,
union, feedback and complementation.  Signatures are computed bottom-up;
``check_wellformed`` reports every violation instead of stopping at the first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import IllFormedSystem, VocabularyMismatch
from .modules import PrimitiveModule
from .structures import Symbol, Vocabulary


class ModuleExpr:
    def children(self) -> tuple:
        return ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Prim(ModuleExpr):
    name: str
    module: PrimitiveModule = field(default=None, compare=False, hash=False, repr=False)


@dataclass(frozen=True)
class Project(ModuleExpr):
    nu: Vocabulary
    child: ModuleExpr

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Compose(ModuleExpr):
    left: ModuleExpr
    right: ModuleExpr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Union(ModuleExpr):
    left: ModuleExpr
    right: ModuleExpr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Feedback(ModuleExpr):
    child: ModuleExpr
    r: Symbol
    s: Symbol

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Complement(ModuleExpr):
    child: ModuleExpr

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Signature:
    sigma: Vocabulary
    epsilon: Vocabulary

    @property
    def vocab(self) -> Vocabulary:
        return self.sigma | self.epsilon

    def __str__(self):
        return f"sigma={self.sigma} epsilon={self.epsilon}"


class ViolationKind(str, Enum):
    OUTPUT_INTERFERENCE = "OutputInterference"
    CYCLIC_DEPENDENCY = "CyclicDependency"
    UNION_DEPENDENCY = "UnionDependency"
    PROJECTION_OUTSIDE_VOCABULARY = "ProjectionOutsideVocabulary"
    FEEDBACK_ON_CLOSED_MODULE = "FeedbackOnClosedModule"
    FEEDBACK_INPUT_NOT_IN_SIGMA = "FeedbackInputNotInSigma"
    FEEDBACK_OUTPUT_NOT_IN_EPSILON = "FeedbackOutputNotInEpsilon"
    FEEDBACK_ARITY_MISMATCH = "FeedbackArityMismatch"
    ARITY_CLASH = "ArityClash"
    UNBOUND_PRIMITIVE = "UnboundPrimitive"


@dataclass(frozen=True)
class Violation:
    path: tuple
    kind: ViolationKind
    message: str

    def __str__(self):
        return f"{format_path(self.path)}: {self.kind.value}: {self.message}"


@dataclass(frozen=True)
class WellFormednessReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "well-formed"
        return "\n".join(str(v) for v in self.violations)


def format_path(path: tuple) -> str:
    return "root" + "".join(f".{i}" for i in path)


def _union(a: Vocabulary, b: Vocabulary, path, violations) -> Vocabulary:
    try:
        return a | b
    except VocabularyMismatch as exc:
        violations.append(Violation(path, ViolationKind.ARITY_CLASH, str(exc)))
        by_name = {s.name: s for s in a}
        for s in b:
            by_name.setdefault(s.name, s)
        return Vocabulary(frozenset(by_name.values()))


def _check(e: ModuleExpr, path: tuple, violations: list) -> Signature:
    V = ViolationKind
    if isinstance(e, Prim):
        if e.module is None:
            violations.append(Violation(path, V.UNBOUND_PRIMITIVE, f"{e.name} has no module binding"))
            return Signature(Vocabulary(), Vocabulary())
        return Signature(e.module.sigma, e.module.epsilon)
    if isinstance(e, Project):
        sig = _check(e.child, path + (0,), violations)
        outside = e.nu - sig.vocab
        if outside:
            violations.append(Violation(
                path, V.PROJECTION_OUTSIDE_VOCABULARY,
                f"projection onto {outside} which is not in sigma ∪ epsilon = {sig.vocab}",
            ))
        return Signature(sig.sigma & e.nu, sig.epsilon & e.nu)
    if isinstance(e, Compose):
        l = _check(e.left, path + (0,), violations)
        r = _check(e.right, path + (1,), violations)
        clash = l.epsilon & r.epsilon
        if clash:
            violations.append(Violation(
                path, V.OUTPUT_INTERFERENCE, f"both sides output {clash}"
            ))
        cycle = l.sigma & r.epsilon
        if cycle:
            violations.append(Violation(
                path, V.CYCLIC_DEPENDENCY,
                f"left input {cycle} is an output of the right module",
            ))
        eps = _union(l.epsilon, r.epsilon, path, violations)
        sigma = _union(l.sigma, r.sigma - l.epsilon, path, violations)
        return Signature(sigma, eps)
    if isinstance(e, Union):
        l = _check(e.left, path + (0,), violations)
        r = _check(e.right, path + (1,), violations)
        for a, b, side in ((l, r, "left"), (r, l, "right")):
            dep = a.sigma & b.epsilon
            if dep:
                violations.append(Violation(
                    path, V.UNION_DEPENDENCY,
                    f"{side} input {dep} is an output of the other branch",
                ))
        return Signature(
            _union(l.sigma, r.sigma, path, violations),
            _union(l.epsilon, r.epsilon, path, violations),
        )
    if isinstance(e, Feedback):
        sig = _check(e.child, path + (0,), violations)
        if not sig.sigma:
            violations.append(Violation(
                path, V.FEEDBACK_ON_CLOSED_MODULE, "feedback on a module with empty input vocabulary"
            ))
        if e.r not in sig.sigma:
            violations.append(Violation(
                path, V.FEEDBACK_INPUT_NOT_IN_SIGMA, f"{e.r.name} is not an input of the module"
            ))
        if e.s not in sig.epsilon:
            violations.append(Violation(
                path, V.FEEDBACK_OUTPUT_NOT_IN_EPSILON, f"{e.s.name} is not an output of the module"
            ))
        if e.r.arity != e.s.arity:
            violations.append(Violation(
                path, V.FEEDBACK_ARITY_MISMATCH,
                f"{e.r.name}/{e.r.arity} and {e.s.name}/{e.s.arity} differ in arity",
            ))
        r_sym = Vocabulary(frozenset([e.r]))
        return Signature(sig.sigma - r_sym, _union(sig.epsilon, r_sym, path, violations))
    if isinstance(e, Complement):
        return _check(e.child, path + (0,), violations)
    raise TypeError(f"not a module expression: {e!r}")


def check_wellformed(e: ModuleExpr) -> WellFormednessReport:
    violations: list = []
    _check(e, (), violations)
    return WellFormednessReport(tuple(violations))


def signature_of(e: ModuleExpr) -> Signature:
    violations: list = []
    sig = _check(e, (), violations)
    if violations:
        raise IllFormedSystem(WellFormednessReport(tuple(violations)))
    return sig


def raw_signature(e: ModuleExpr) -> Signature:
    """Signature by the five rules, ignoring violations."""
    return _check(e, (), [])


def subsystems_with_paths(e: ModuleExpr, path: tuple = ()) -> list:
    out = []
    for i, c in enumerate(e.children()):
        out.extend(subsystems_with_paths(c, path + (i,)))
    out.append((path, e))
    return out


def subsystems(e: ModuleExpr) -> list:
    """Every subexpression including ``e`` itself, in post-order."""
    return [s for _, s in subsystems_with_paths(e)]


def primitives(e: ModuleExpr) -> list:
    seen = {}
    for s in subsystems(e):
        if isinstance(s, Prim) and s.name not in seen:
            seen[s.name] = s
    return list(seen.values())


def full_vocab(e: ModuleExpr) -> Vocabulary:
    """Every symbol mentioned anywhere in ``e``, hidden ones included."""
    vocab = Vocabulary()
    for p in primitives(e):
        if p.module is not None:
            vocab = vocab | p.module.vocab
    for s in subsystems(e):
        if isinstance(s, Project):
            vocab = vocab | s.nu
        elif isinstance(s, Feedback):
            vocab = vocab | Vocabulary(frozenset([s.r, s.s]))
    return vocab


# -- canonical text -----------------------------------------------------------

_PREC = {Union: 1, Compose: 2, Complement: 3}


def _prec(e) -> int:
    return _PREC.get(type(e), 4)


def render(e: ModuleExpr, minimum: int = 0) -> str:
    """Canonical algebra text; ``parse_expression(render(e))`` rebuilds ``e``."""
    if isinstance(e, Prim):
        text = e.name
    elif isinstance(e, Project):
        names = ", ".join(s.name for s in e.nu)
        text = f"project {{{names}}} ({render(e.child)})"
    elif isinstance(e, Compose):
        text = f"{render(e.left, 2)} >> {render(e.right, 3)}"
    elif isinstance(e, Union):
        text = f"{render(e.left, 1)} | {render(e.right, 2)}"
    elif isinstance(e, Feedback):
        text = f"{render(e.child, 4)}[{e.r.name}={e.s.name}]"
    elif isinstance(e, Complement):
        text = f"~{render(e.child, 3)}"
    else:
        raise TypeError(f"not a module expression: {e!r}")
    return f"({text})" if _prec(e) < minimum else text
