"""Structural operational semantics: modules as nondeterministic operators on τ-states.

A τ-state is a structure over an all-inclusive vocabulary τ.  Internally a
state is a bitmask over ``AtomIndex(τ, domain)``.  ``step`` computes every
B2 with (e, B1) ⟶ B2 derivable, one rule per operator:

primitive    B2 agrees with B1 off ε and B2|σ∪ε is a model of the module
projection   some child transition (B1', B2') with B1' agreeing with B1 on
             every symbol the child can see except the hidden ones; B2
             takes ε from B2' and keeps everything else from B1
composition  chain a left transition and a right transition
union        a transition of either branch
feedback     a child transition with R^B1 = S^B2
complement   B2 agrees with B1 off ε and no ε-variant of B1 lets the child
             reach B2

Two rules keep full inertia off ε (projection, complement), which is what
makes every operator's outputs fixpoints and M^op equal to M^mt.  The
``complement="literal"`` mode checks only the child's transitions from B1
itself; it is kept to exhibit why the stronger reading is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    Complement,
    Compose,
    Feedback,
    ModuleExpr,
    Prim,
    Project,
    Union,
    full_vocab,
    raw_signature,
    render,
    signature_of,
)
from .errors import PreconditionError, VocabularyMismatch
from .mt import ModelSet
from .structures import AtomIndex, Domain, Structure, Vocabulary, check_ceiling, format_atoms

LIFTED = "lifted"
LITERAL = "literal"


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if not sub:
            return
        sub = (sub - 1) & mask


@dataclass
class _Node:
    expr: ModuleExpr
    sigma: int
    eps: int
    vocab: int
    full: int  # every bit the subtree mentions, hidden symbols included
    extra: dict = field(default_factory=dict)


class OperationalSemantics:
    """Transition relation of one well-formed system over a fixed τ and domain."""

    def __init__(
        self,
        e: ModuleExpr,
        domain: Domain,
        tau: Vocabulary | None = None,
        complement: str = LIFTED,
    ):
        self.signature = signature_of(e)
        needed = full_vocab(e)
        tau = needed if tau is None else tau
        if not needed <= tau:
            raise VocabularyMismatch(f"τ must contain every symbol of the system; missing {needed - tau}")
        if complement not in (LIFTED, LITERAL):
            raise ValueError(f"unknown complement mode {complement!r}")
        self.expr = e
        self.domain = domain
        self.tau = tau
        self.complement = complement
        self.index = AtomIndex(tau, domain)
        self.n = len(self.index)
        check_ceiling(self.n, "τ-states")
        self.nodes: dict = {}
        self._build(e)
        self.memo: dict = {}

    # -- setup ---------------------------------------------------------------

    def _build(self, e: ModuleExpr) -> _Node:
        for c in e.children():
            self._build(c)
        mask = self.index.mask_of
        sig = raw_signature(e)
        node = _Node(e, mask(sig.sigma), mask(sig.epsilon), mask(sig.vocab), mask(full_vocab(e)))
        if isinstance(e, Project):
            node.extra["nu"] = mask(e.nu)
        elif isinstance(e, Feedback):
            node.extra["r"] = self._positions(e.r)
            node.extra["s"] = self._positions(e.s)
        elif isinstance(e, Prim):
            node.extra["solutions"] = {}
        self.nodes[id(e)] = node
        return node

    def _positions(self, symbol) -> list:
        return sorted(
            (a.args, i) for i, a in enumerate(self.index.atoms) if a.symbol == symbol
        )

    def _ext(self, b: int, positions) -> tuple:
        return tuple(args for args, i in positions if b >> i & 1)

    # -- conversions ---------------------------------------------------------

    def state(self, s) -> int:
        """Mask of a τ-state given as a Structure over τ or as a set of atoms."""
        if isinstance(s, int):
            return s
        if isinstance(s, Structure):
            if s.vocab != self.tau or s.domain != self.domain:
                raise VocabularyMismatch(f"state over {s.vocab} is not a τ-state for τ = {self.tau}")
            s = s.true_atoms
        try:
            return self.index.encode(s)
        except KeyError as exc:
            raise VocabularyMismatch(f"atom {exc.args[0]} is outside τ") from None

    def structure(self, mask: int) -> Structure:
        return self.index.structure(mask)

    # -- transitions ---------------------------------------------------------

    def successors(self, e: ModuleExpr, b1: int) -> frozenset:
        key = (id(e), b1)
        hit = self.memo.get(key)
        if hit is None:
            hit = frozenset(self._step(self.nodes[id(e)], b1))
            self.memo[key] = hit
        return hit

    def _prim_solutions(self, node: _Node, inst: int) -> tuple:
        cache = node.extra["solutions"]
        hit = cache.get(inst)
        if hit is None:
            atoms = self.index.decode(inst)
            found = node.expr.module.expansions(atoms, self.domain)
            hit = tuple(self.index.encode(b) for b in found)
            cache[inst] = hit
        return hit

    def _step(self, node: _Node, b1: int):
        e = node.expr
        if isinstance(e, Prim):
            keep = b1 & ~node.eps
            return {keep | (m & node.eps) for m in self._prim_solutions(node, b1 & node.sigma)}
        if isinstance(e, Project):
            child = self.nodes[id(e.child)]
            nu = node.extra["nu"]
            vary = child.full & ~nu
            keep = b1 & ~node.eps
            out = set()
            for sub in _submasks(vary):
                b1p = (b1 & ~vary) | sub
                for b2p in self.successors(e.child, b1p):
                    b2 = keep | (b2p & node.eps)
                    if (b2p ^ b2) & nu == 0:
                        out.add(b2)
            return out
        if isinstance(e, Compose):
            out = set()
            for mid in self.successors(e.left, b1):
                out |= self.successors(e.right, mid)
            return out
        if isinstance(e, Union):
            return self.successors(e.left, b1) | self.successors(e.right, b1)
        if isinstance(e, Feedback):
            want = self._ext(b1, node.extra["r"])
            return {b2 for b2 in self.successors(e.child, b1) if self._ext(b2, node.extra["s"]) == want}
        if isinstance(e, Complement):
            keep = b1 & ~node.eps
            frame = {keep | sub for sub in _submasks(node.eps)}
            return frame - self._complement_excluded(e, node, b1)
        raise TypeError(f"not a module expression: {e!r}")

    def _complement_excluded(self, e: Complement, node: _Node, b1: int) -> set:
        if self.complement == LITERAL:
            return set(self.successors(e.child, b1))
        keep = b1 & ~node.eps
        excluded = set()
        for sub in _submasks(node.eps):
            excluded |= self.successors(e.child, keep | sub)
        return excluded

    def step(self, b1, e: ModuleExpr | None = None) -> list:
        """Successor τ-states of ``b1`` under ``e`` (the whole system by default)."""
        e = self.expr if e is None else e
        return sorted((self.structure(m) for m in self.successors(e, self.state(b1))), key=str)

    def is_fixpoint(self, b, e: ModuleExpr | None = None) -> bool:
        e = self.expr if e is None else e
        m = self.state(b)
        return m in self.successors(e, m)

    def transitions(self, e: ModuleExpr | None = None):
        """Every derivable pair (B1, B2) as masks, B1 in counting order."""
        e = self.expr if e is None else e
        for b1 in range(1 << self.n):
            for b2 in sorted(self.successors(e, b1)):
                yield b1, b2

    def models(self) -> ModelSet:
        sig = self.signature
        sigma = self.index.mask_of(sig.sigma)
        eps = self.index.mask_of(sig.epsilon)
        found = {(b1 & sigma) | (b2 & eps) for b1, b2 in self.transitions()}
        return ModelSet.from_atom_sets(sig, self.domain, (self.index.decode(m) for m in found))

    # -- derivations ---------------------------------------------------------

    def derive(self, b1, b2, e: ModuleExpr | None = None):
        """A derivation tree for (e, B1) ⟶ B2, or None when it is not derivable."""
        e = self.expr if e is None else e
        return self._derive(e, self.state(b1), self.state(b2))

    def _derive(self, e, b1: int, b2: int):
        if b2 not in self.successors(e, b1):
            return None
        node = self.nodes[id(e)]
        fmt = lambda m: format_atoms(self.index.decode(m))
        if isinstance(e, Prim):
            model = b2 & node.vocab
            return DerivationTree("primitive", e, b1, b2, (
                ("B2|σ∪ε in module", fmt(model)),
                ("unchanged off ε", "yes"),
            ))
        if isinstance(e, Project):
            nu = node.extra["nu"]
            vary = self.nodes[id(e.child)].full & ~nu
            for sub in _submasks(vary):
                b1p = (b1 & ~vary) | sub
                for b2p in sorted(self.successors(e.child, b1p)):
                    if (b2p ^ b2) & nu == 0 and (b2 & node.eps) == (b2p & node.eps):
                        child = self._derive(e.child, b1p, b2p)
                        return DerivationTree("projection", e, b1, b2, (
                            ("B1'", fmt(b1p)), ("B2'", fmt(b2p)),
                        ), (child,))
        if isinstance(e, Compose):
            for mid in sorted(self.successors(e.left, b1)):
                if b2 in self.successors(e.right, mid):
                    return DerivationTree("composition", e, b1, b2, (("B'", fmt(mid)),), (
                        self._derive(e.left, b1, mid), self._derive(e.right, mid, b2),
                    ))
        if isinstance(e, Union):
            for rule, branch in (("union-left", e.left), ("union-right", e.right)):
                if b2 in self.successors(branch, b1):
                    return DerivationTree(rule, e, b1, b2, (), (self._derive(branch, b1, b2),))
        if isinstance(e, Feedback):
            ext = self._ext(b1, node.extra["r"])
            if e.r.arity == 0:
                value = "true" if ext else "false"
            else:
                value = "{" + ",".join("(" + ",".join(t) + ")" for t in ext) + "}"
            return DerivationTree("feedback", e, b1, b2, (
                (f"{e.r.name}^B1 = {e.s.name}^B2", value),
            ), (self._derive(e.child, b1, b2),))
        if isinstance(e, Complement):
            return DerivationTree("complement", e, b1, b2, (
                ("child reaches B2 from an ε-variant of B1" if self.complement == LIFTED
                 else "child reaches B2 from B1", "no"),
            ))
        raise AssertionError("successor without derivation")  # pragma: no cover

    def replay(self, tree: "DerivationTree") -> bool:
        """Re-check every rule application and side condition of ``tree``."""
        e, b1, b2 = tree.expr, tree.source, tree.target
        node = self.nodes[id(e)]
        kids = tree.children
        if isinstance(e, Prim):
            inst = b1 & node.sigma
            return (
                tree.rule == "primitive" and not kids
                and (b1 ^ b2) & ~node.eps == 0
                and (b2 & node.vocab) in {m & node.vocab for m in self._prim_solutions(node, inst)}
            )
        if isinstance(e, Project):
            if tree.rule != "projection" or len(kids) != 1:
                return False
            (k,) = kids
            nu = node.extra["nu"]
            vary = self.nodes[id(e.child)].full & ~nu
            return (
                k.expr is e.child and self.replay(k)
                and (k.source ^ b1) & ~vary == 0
                and (k.target ^ b2) & nu == 0
                and (b1 ^ b2) & ~node.eps == 0
                and (k.target ^ b2) & node.eps == 0
            )
        if isinstance(e, Compose):
            if tree.rule != "composition" or len(kids) != 2:
                return False
            l, r = kids
            return (
                l.expr is e.left and r.expr is e.right
                and l.source == b1 and l.target == r.source and r.target == b2
                and self.replay(l) and self.replay(r)
            )
        if isinstance(e, Union):
            if len(kids) != 1:
                return False
            (k,) = kids
            branch = {"union-left": e.left, "union-right": e.right}.get(tree.rule)
            return k.expr is branch and k.source == b1 and k.target == b2 and self.replay(k)
        if isinstance(e, Feedback):
            if tree.rule != "feedback" or len(kids) != 1:
                return False
            (k,) = kids
            return (
                k.expr is e.child and k.source == b1 and k.target == b2 and self.replay(k)
                and self._ext(b1, node.extra["r"]) == self._ext(b2, node.extra["s"])
            )
        if isinstance(e, Complement):
            return (
                tree.rule == "complement" and not kids
                and (b1 ^ b2) & ~node.eps == 0
                and b2 not in self._complement_excluded(e, node, b1)
            )
        return False

    def render_tree(self, tree: "DerivationTree") -> str:
        fmt = lambda m: format_atoms(self.index.decode(m))
        lines = []

        def walk(t, depth):
            pad = "  " * depth
            lines.append(f"{pad}[{t.rule}] ({render(t.expr)}, {fmt(t.source)}) -> {fmt(t.target)}")
            for k, v in t.side:
                lines.append(f"{pad}    where {k}: {v}")
            for c in t.children:
                walk(c, depth + 1)

        walk(tree, 0)
        return "\n".join(lines)


@dataclass(frozen=True)
class DerivationTree:
    rule: str
    expr: ModuleExpr
    source: int
    target: int
    side: tuple = ()
    children: tuple = ()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


# -- functional interface -----------------------------------------------------


def step(e: ModuleExpr, b1: Structure, tau: Vocabulary | None = None, complement: str = LIFTED) -> list:
    tau = tau or b1.vocab
    return OperationalSemantics(e, b1.domain, tau, complement).step(b1)


def is_fixpoint(e: ModuleExpr, b: Structure, complement: str = LIFTED) -> bool:
    return OperationalSemantics(e, b.domain, b.vocab, complement).is_fixpoint(b)


def op_models(
    e: ModuleExpr, domain: Domain, tau: Vocabulary | None = None, complement: str = LIFTED
) -> ModelSet:
    """M^op: {B : B|σ = B1|σ and B|ε = B2|ε for some derivable (e, B1) ⟶ B2}."""
    return OperationalSemantics(e, domain, tau, complement).models()


def derivation_trace(e: ModuleExpr, b1: Structure, b2: Structure):
    """``(semantics, tree)``; the tree is None when the transition is not derivable."""
    if b1.vocab != b2.vocab or b1.domain != b2.domain:
        raise PreconditionError("source and target must be states over the same τ and domain")
    sem = OperationalSemantics(e, b1.domain, b1.vocab)
    return sem, sem.derive(b1, b2)
