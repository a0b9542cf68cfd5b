"""Multi-language formulas to algebra expressions.

``&`` becomes sequential composition, ``|`` union, ``exists x . f``
projection onto the symbols of ``f`` other than ``x``, and ``[r=s]``
feedback.  Leaves are primitive modules.  The result is checked for
well-formedness; a violation is reported against the connective that
introduced the offending node.
"""

from __future__ import annotations

from ..algebra import (
    Compose,
    Feedback,
    ModuleExpr,
    Prim,
    Project,
    Union,
    check_wellformed,
    raw_signature,
)
from ..errors import CompileError
from ..structures import Vocabulary
from .parser import Conj, Disj, Equate, Exists, Leaf, ModuleRef

_CONNECTIVE = {
    Conj: "conjunction (&)",
    Disj: "disjunction (|)",
    Exists: "existential quantifier",
    Equate: "equation [r=s]",
    Leaf: "leaf",
    ModuleRef: "module reference",
}


def _compile(f, path: tuple, origin: dict) -> ModuleExpr:
    origin[path] = f
    if isinstance(f, Leaf):
        return Prim(f.module.name, f.module)
    if isinstance(f, ModuleRef):
        return f.expr
    if isinstance(f, Conj):
        return Compose(_compile(f.left, path + (0,), origin), _compile(f.right, path + (1,), origin))
    if isinstance(f, Disj):
        return Union(_compile(f.left, path + (0,), origin), _compile(f.right, path + (1,), origin))
    if isinstance(f, Equate):
        return Feedback(_compile(f.body, path + (0,), origin), f.r, f.s)
    if isinstance(f, Exists):
        body = _compile(f.body, path + (0,), origin)
        bound = frozenset(f.symbols)
        vocab = raw_signature(body).vocab
        return Project(Vocabulary(frozenset(s for s in vocab if s not in bound)), body)
    raise TypeError(f"not a multi-language formula: {f!r}")


def compile_logic_formula(f) -> ModuleExpr:
    origin: dict = {}
    expr = _compile(f, (), origin)
    report = check_wellformed(expr)
    if not report.ok:
        v = report.violations[0]
        path = v.path
        while path not in origin:  # inside a referenced system: blame the reference
            path = path[:-1]
        src = origin[path]
        raise CompileError(
            f"{src.span}: {_CONNECTIVE[type(src)]} yields an ill-formed system: "
            f"{v.kind.value}: {v.message}"
        )
    return expr
