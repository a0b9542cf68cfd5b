"""Recursive-descent parser for .msl documents.

Grammar (statements may end with an optional ``;`` unless noted)::

    domain {e1, e2, ...}
    vocab {name/arity, ...}
    module NAME : p|sm|wf|explicit|inf { SECTION* }
        inputs {syms}  outputs {syms}  hidden {syms}
        rules {RULE*}  formula {PROP}  models {{atoms}*}  inferences {INF;*}
    system NAME = EXPR ;
    logic NAME = LFORMULA ;
    instance NAME {atoms}

    EXPR    := CEXPR ('|' CEXPR)*                      union, left-assoc
    CEXPR   := UNARY ('>>' UNARY)*                     composition, left-assoc
    UNARY   := '~' UNARY | POSTFIX
    POSTFIX := PRIMARY ('[' r=s (',' r=s)* ']')*
    PRIMARY := NAME | '(' EXPR ')' | 'project' '{' names '}' '(' EXPR ')'

    LFORMULA := 'exists' names '.' LFORMULA | LDISJ
    LDISJ    := LCONJ ('|' LCONJ)*
    LCONJ    := LPOST ('&' (LPOST | '[' pairs ']'))*
    LPOST    := LATOM ('[' pairs ']')*
    LATOM    := NAME | '(' LFORMULA ')' | '{' TAG [inputs {..} outputs {..} hidden {..}] ':' BODY '}'

A name in an expression refers to a module or to an earlier system.  Terms
starting with an uppercase letter or underscore are rule variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import Complement, Compose, Feedback, ModuleExpr, Prim, Project, Union
from ..errors import ModsysError, ParseError, VocabularyMismatch
from ..inference import Inference, InferenceSet, module_from_inferences
from ..logics import P, SM, WF, make_module
from ..logics.programs import AtomPattern, Choice, Rule, is_variable
from ..logics.propositional import And, Bottom, Iff, Implies, Not, Or, Top, Var
from ..modules import ExplicitModule
from ..structures import (
    PROPOSITIONAL,
    Domain,
    GroundAtom,
    Literal,
    PartialAssignment,
    Structure,
    Symbol,
    Vocabulary,
)
from .lexer import Token, tokenize

KINDS = (P, SM, WF, "explicit", "inf")


# -- multi-language formula AST ----------------------------------------------


@dataclass(frozen=True)
class Span:
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Leaf:
    module: object  # PrimitiveModule
    span: Span


@dataclass(frozen=True)
class ModuleRef:
    name: str
    expr: ModuleExpr
    span: Span


@dataclass(frozen=True)
class Conj:
    left: object
    right: object
    span: Span


@dataclass(frozen=True)
class Disj:
    left: object
    right: object
    span: Span


@dataclass(frozen=True)
class Exists:
    symbols: tuple
    body: object
    span: Span


@dataclass(frozen=True)
class Equate:
    body: object
    r: Symbol
    s: Symbol
    span: Span


# -- document ----------------------------------------------------------------


@dataclass
class SpecDocument:
    domain: Domain = PROPOSITIONAL
    symbols: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    logics: dict = field(default_factory=dict)
    instances: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)

    def vocabulary(self, names=None) -> Vocabulary:
        syms = self.symbols.values() if names is None else (self.symbols[n] for n in names)
        return Vocabulary(frozenset(syms))

    def expression(self, name: str) -> ModuleExpr:
        """A system, a compiled logic formula, or a bare module, by name."""
        if name in self.systems:
            return self.systems[name]
        if name in self.logics:
            from .compiler import compile_logic_formula

            return compile_logic_formula(self.logics[name])
        if name in self.modules:
            return Prim(name, self.modules[name])
        raise ParseError(f"no system, logic formula or module named {name!r}")

    def instance(self, name: str, vocab: Vocabulary) -> Structure:
        if name not in self.instances:
            raise ParseError(f"no instance named {name!r}")
        atoms = self.instances[name]
        outside = [a for a in atoms if a.symbol not in vocab.symbols]
        if outside:
            raise VocabularyMismatch(
                f"instance {name} mentions {', '.join(map(str, sorted(outside)))} outside the inputs {vocab}"
            )
        return Structure(vocab, self.domain, atoms)


class Parser:
    def __init__(self, text: str, doc: SpecDocument | None = None):
        self.tokens = tokenize(text)
        self.i = 0
        self.doc = doc if doc is not None else SpecDocument()
        self._domain_set = False
        self._auto_leaf = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("OP", "IDENT") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {self.tok}")
        t = self.tok
        self.i += 1
        return t

    def ident(self, what: str = "name") -> Token:
        t = self.tok
        if t.kind != "IDENT":
            raise self.error(f"expected {what}, found {t}")
        self.i += 1
        return t

    def term(self) -> str:
        t = self.tok
        if t.kind not in ("IDENT", "NUMBER"):
            raise self.error(f"expected a term, found {t}")
        self.i += 1
        return t.text

    def number(self) -> int:
        t = self.tok
        if t.kind != "NUMBER":
            raise self.error(f"expected a number, found {t}")
        self.i += 1
        return int(t.text)

    def span(self) -> Span:
        return Span(self.tok.line, self.tok.column)

    def guard(self, tok: Token, fn, *args):
        """Run ``fn`` and pin any library error to ``tok``'s position."""
        try:
            return fn(*args)
        except ParseError:
            raise
        except ModsysError as exc:
            raise ParseError(str(exc), tok.line, tok.column) from None

    # -- symbols and atoms ---------------------------------------------------

    def declare(self, name: str, arity: int, tok: Token) -> Symbol:
        known = self.doc.symbols.get(name)
        if known is not None:
            if known.arity != arity:
                raise self.error(f"{name} declared with arity {known.arity}, used with arity {arity}", tok)
            return known
        sym = Symbol(name, arity)
        self.doc.symbols[name] = sym
        return sym

    def symbol_decl(self) -> Symbol:
        tok = self.ident("symbol")
        if self.accept("/"):
            return self.declare(tok.text, self.number(), tok)
        known = self.doc.symbols.get(tok.text)
        return known if known is not None else self.declare(tok.text, 0, tok)

    def symbol_set(self) -> Vocabulary:
        self.expect("{")
        out = []
        while not self.at("}"):
            out.append(self.symbol_decl())
            if not self.accept(","):
                break
        self.expect("}")
        return Vocabulary(frozenset(out))

    def name_list(self, closer: str | None = None) -> list:
        """Comma-separated symbol names resolved against declarations."""
        out = []
        while True:
            tok = self.ident("symbol")
            sym = self.doc.symbols.get(tok.text)
            if sym is None:
                raise self.error(f"undeclared symbol {tok.text!r}", tok)
            out.append(sym)
            if not self.accept(","):
                return out

    def atom_pattern(self, auto: bool = False):
        tok = self.ident("atom")
        terms = []
        if self.accept("("):
            while True:
                terms.append(self.term())
                if not self.accept(","):
                    break
            self.expect(")")
        sym = self.doc.symbols.get(tok.text)
        if sym is None:
            if not auto:
                raise self.error(f"undeclared symbol {tok.text!r}", tok)
            sym = self.declare(tok.text, len(terms), tok)
        if sym.arity != len(terms):
            raise self.error(f"{sym.name} has arity {sym.arity}, got {len(terms)} arguments", tok)
        return AtomPattern(sym, tuple(terms)), tok

    def ground_atom(self, auto: bool = False) -> GroundAtom:
        pat, tok = self.atom_pattern(auto)
        for t in pat.terms:
            if is_variable(t):
                raise self.error(f"variable {t} in a ground atom", tok)
            if t not in self.doc.domain:
                raise self.error(f"{t!r} is not a domain element", tok)
        return GroundAtom(pat.symbol, pat.terms)

    def atom_set(self, auto: bool = False) -> frozenset:
        """``{a, b(1), ...}``; separators ``,`` ``;`` ``.`` are interchangeable."""
        self.expect("{")
        out = []
        while not self.at("}"):
            out.append(self.ground_atom(auto))
            if not (self.accept(",") or self.accept(";") or self.accept(".")):
                break
        self.expect("}")
        return frozenset(out)

    # -- document --------------------------------------------------------------

    def document(self) -> SpecDocument:
        while self.tok.kind != "EOF":
            t = self.tok
            if t.kind != "IDENT":
                raise self.error(f"expected a statement, found {t}")
            handler = {
                "domain": self.domain_stmt,
                "vocab": self.vocab_stmt,
                "module": self.module_stmt,
                "system": self.system_stmt,
                "logic": self.logic_stmt,
                "instance": self.instance_stmt,
            }.get(t.text)
            if handler is None:
                raise self.error(f"unknown statement {t.text!r}")
            self.i += 1
            handler()
            self.accept(";")
        return self.doc

    def _define(self, table: dict, tok: Token, value):
        name = tok.text
        if table is self.doc.instances:
            taken = name in self.doc.instances
        else:
            taken = any(name in t for t in (self.doc.modules, self.doc.systems, self.doc.logics))
        if taken:
            raise self.error(f"duplicate definition of {name!r}", tok)
        table[name] = value
        self.doc.spans[name] = Span(tok.line, tok.column)

    def domain_stmt(self):
        tok = self.tokens[self.i - 1]
        if self._domain_set:
            raise self.error("only one domain per document", tok)
        if self.doc.modules or self.doc.instances:
            raise self.error("the domain must be declared before modules and instances", tok)
        self.expect("{")
        elements = []
        while not self.at("}"):
            elements.append(self.term())
            if not self.accept(","):
                break
        self.expect("}")
        self.doc.domain = self.guard(tok, Domain, tuple(elements))
        self._domain_set = True

    def vocab_stmt(self):
        self.symbol_set()

    def module_stmt(self):
        name = self.ident("module name")
        self.expect(":")
        kind_tok = self.ident("module kind")
        kind = kind_tok.text
        if kind not in KINDS:
            raise self.error(f"unknown module kind {kind!r}; expected one of {', '.join(KINDS)}", kind_tok)
        self.expect("{")
        module = self.module_body(name.text, kind, kind_tok, "}")
        self.expect("}")
        self._define(self.doc.modules, name, module)

    def module_body(self, name: str, kind: str, kind_tok: Token, closer: str):
        sections = {"inputs": Vocabulary(), "outputs": Vocabulary(), "hidden": Vocabulary()}
        body = None
        while not self.at(closer):
            sec = self.ident("section name")
            if sec.text in sections:
                sections[sec.text] = self.symbol_set()
                continue
            expected = {P: "formula", SM: "rules", WF: "rules", "explicit": "models", "inf": "inferences"}[kind]
            if sec.text != expected:
                raise self.error(f"module {name} of kind {kind} takes a {expected!r} section, not {sec.text!r}", sec)
            if body is not None:
                raise self.error(f"duplicate {expected} section", sec)
            self.expect("{")
            body = self.section_body(kind)
            self.expect("}")
        return self.build_module(name, kind, kind_tok, sections, body)

    def section_body(self, kind: str, closer: str = "}"):
        if kind == P:
            return self.prop_formula()
        if kind in (SM, WF):
            return self.rules(closer)
        if kind == "explicit":
            rows = []
            while not self.at(closer):
                rows.append(self.atom_set())
                self.accept(",") or self.accept(";")
            return rows
        return self.inferences(closer)

    def build_module(self, name, kind, tok, sections, body):
        sigma, eps, hidden = sections["inputs"], sections["outputs"], sections["hidden"]
        if kind == "explicit":
            return self.guard(tok, ExplicitModule, name, sigma, eps, body or [])
        if kind == "inf":
            inf = self.guard(tok, InferenceSet, sigma | eps, self.doc.domain, frozenset(body or ()))
            return self.guard(tok, module_from_inferences, inf, sigma, eps, name)
        if body is None:
            body = Top() if kind == P else []
        return self.guard(tok, make_module, kind, body, sigma, eps, hidden, name)

    # -- rules -----------------------------------------------------------------

    def rules(self, closer: str = "}", final_period: bool = True) -> list:
        out = []
        while not self.at(closer):
            out.append(self.rule())
            if not self.accept(".") and (final_period or not self.at(closer)):
                raise self.error(f"expected '.', found {self.tok}")
        return out

    def rule(self) -> Rule:
        head = None
        if not self.at(":-"):
            if self.tok.kind == "NUMBER" or self.at("{"):
                head = self.choice()
            else:
                head, _ = self.atom_pattern(auto=True)
        pos, neg = [], []
        if self.accept(":-"):
            while True:
                if self.at("not"):
                    self.i += 1
                    neg.append(self.atom_pattern(auto=True)[0])
                else:
                    pos.append(self.atom_pattern(auto=True)[0])
                if not self.accept(","):
                    break
        return Rule(head, tuple(pos), tuple(neg))

    def choice(self) -> Choice:
        tok = self.tok
        lower = self.number() if self.tok.kind == "NUMBER" else None
        self.expect("{")
        atoms = []
        while not self.at("}"):
            atoms.append(self.atom_pattern(auto=True)[0])
            if not self.accept(";"):
                break
        self.expect("}")
        upper = self.number() if self.tok.kind == "NUMBER" else None
        lower = 0 if lower is None else lower
        upper = len(atoms) if upper is None else upper
        try:
            return Choice(lower, tuple(atoms), upper)
        except ValueError as exc:
            raise self.error(str(exc), tok) from None

    # -- propositional formulas ----------------------------------------------

    def prop_formula(self):
        left = self.prop_implies()
        while self.accept("<->"):
            left = Iff(left, self.prop_implies())
        return left

    def prop_implies(self):
        left = self.prop_or()
        if self.accept("->"):
            return Implies(left, self.prop_implies())
        return left

    def prop_or(self):
        left = self.prop_and()
        while self.accept("|"):
            left = Or(left, self.prop_and())
        return left

    def prop_and(self):
        left = self.prop_not()
        while self.accept("&"):
            left = And(left, self.prop_not())
        return left

    def prop_not(self):
        if self.accept("~"):
            return Not(self.prop_not())
        if self.accept("("):
            f = self.prop_formula()
            self.expect(")")
            return f
        if self.accept("true"):
            return Top()
        if self.accept("false"):
            return Bottom()
        return Var(self.ground_atom(auto=True))

    # -- inferences --------------------------------------------------------------

    def inferences(self, closer: str = "}") -> list:
        out = []
        while not self.at(closer):
            start = self.tok
            pos, neg = [], []
            while not (self.at("|") or self.at("=>")):
                pos.append(self.ground_atom())
                if not self.accept(","):
                    break
            if self.accept("|"):
                while not self.at("=>"):
                    neg.append(self.ground_atom())
                    if not self.accept(","):
                        break
            self.expect("=>")
            positive = not self.accept("~")
            concl = Literal(self.ground_atom(), positive)
            premise = PartialAssignment.from_sets(pos, neg)
            out.append(self.guard(start, Inference, premise, concl))
            if not self.accept(";"):
                break
        return out

    # -- system instances --------------------------------------------------------

    def instance_stmt(self):
        name = self.ident("instance name")
        atoms = self.atom_set()
        self._define(self.doc.instances, name, atoms)

    # -- algebra expressions -----------------------------------------------------

    def system_stmt(self):
        name = self.ident("system name")
        self.expect("=")
        expr = self.expr()
        self._define(self.doc.systems, name, expr)

    def expr(self) -> ModuleExpr:
        left = self.cexpr()
        while self.accept("|"):
            left = Union(left, self.cexpr())
        return left

    def cexpr(self) -> ModuleExpr:
        left = self.unary()
        while self.accept(">>"):
            left = Compose(left, self.unary())
        return left

    def unary(self) -> ModuleExpr:
        if self.accept("~"):
            return Complement(self.unary())
        return self.postfix()

    def postfix(self) -> ModuleExpr:
        e = self.primary()
        while self.at("["):
            for r, s in self.pairs():
                e = Feedback(e, r, s)
        return e

    def pairs(self) -> list:
        """``[r=s, ...]``; pairs may also be separated by ``&``."""
        self.expect("[")
        out = []
        while True:
            r = self.ident("symbol")
            self.expect("=")
            s = self.ident("symbol")
            syms = []
            for t in (r, s):
                sym = self.doc.symbols.get(t.text)
                if sym is None:
                    raise self.error(f"undeclared symbol {t.text!r}", t)
                syms.append(sym)
            out.append(tuple(syms))
            if not (self.accept(",") or self.accept("&")):
                break
        self.expect("]")
        return out

    def primary(self) -> ModuleExpr:
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.at("project") and self.peek().text == "{":
            self.i += 1
            self.expect("{")
            names = [] if self.at("}") else self.name_list()
            self.expect("}")
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return Project(Vocabulary(frozenset(names)), e)
        tok = self.ident("module or system name")
        return self.resolve(tok)

    def resolve(self, tok: Token) -> ModuleExpr:
        name = tok.text
        if name in self.doc.modules:
            return Prim(name, self.doc.modules[name])
        if name in self.doc.systems:
            return self.doc.systems[name]
        if name in self.doc.logics:
            from .compiler import compile_logic_formula

            return self.guard(tok, compile_logic_formula, self.doc.logics[name])
        raise self.error(f"undefined module or system {name!r}", tok)

    # -- multi-language formulas -----------------------------------------------

    def logic_stmt(self):
        name = self.ident("formula name")
        self.expect("=")
        f = self.lformula()
        self._define(self.doc.logics, name, f)

    def lformula(self):
        if self.at("exists"):
            span = self.span()
            self.i += 1
            names = self.name_list()
            self.expect(".")
            return Exists(tuple(names), self.lformula(), span)
        left = self.lconj()
        while self.at("|"):
            span = self.span()
            self.i += 1
            left = Disj(left, self.lconj(), span)
        return left

    def lconj(self):
        left = self.lpost()
        while self.at("&"):
            span = self.span()
            self.i += 1
            if self.at("["):
                for r, s in self.pairs():
                    left = Equate(left, r, s, span)
            else:
                left = Conj(left, self.lpost(), span)
        return left

    def lpost(self):
        f = self.latom()
        while self.at("["):
            span = self.span()
            for r, s in self.pairs():
                f = Equate(f, r, s, span)
        return f

    def latom(self):
        span = self.span()
        if self.accept("("):
            f = self.lformula()
            self.expect(")")
            return f
        if self.accept("{"):
            return self.leaf(span)
        tok = self.ident("module name or leaf")
        return ModuleRef(tok.text, self.resolve(tok), span)

    def leaf(self, span: Span) -> Leaf:
        kind_tok = self.ident("logic tag")
        kind = kind_tok.text
        if kind not in (P, SM, WF):
            raise self.error(f"unknown logic tag {kind!r}", kind_tok)
        sections = {}
        while self.tok.kind == "IDENT" and self.tok.text in ("inputs", "outputs", "hidden"):
            sec = self.ident().text
            sections[sec] = self.symbol_set()
        self.expect(":")
        body = self.prop_formula() if kind == P else self.rules("}", final_period=False)
        self.expect("}")
        self._auto_leaf += 1
        name = f"_leaf{self._auto_leaf}"
        while name in self.doc.modules:
            self._auto_leaf += 1
            name = f"_leaf{self._auto_leaf}"
        sigma, eps, hidden = self.leaf_signature(kind, kind_tok, body, sections)
        module = self.guard(kind_tok, make_module, kind, body, sigma, eps, hidden, name)
        self.doc.modules[name] = module  # so rendered formulas parse back
        return Leaf(module, span)

    def leaf_signature(self, kind, tok, body, sections):
        hidden = sections.get("hidden", Vocabulary())
        if "inputs" in sections or "outputs" in sections:
            return sections.get("inputs", Vocabulary()), sections.get("outputs", Vocabulary()), hidden
        if kind == P:
            raise self.error("a propositional leaf needs explicit inputs {..} outputs {..}", tok)
        heads, mentioned = set(), set()
        for r in body:
            if isinstance(r.head, Choice):
                heads.update(a.symbol for a in r.head.atoms)
            elif r.head is not None:
                heads.add(r.head.symbol)
            mentioned.update(a.symbol for a in r.atoms())
        eps = Vocabulary(frozenset(heads) - hidden.symbols)
        sigma = Vocabulary(frozenset(mentioned - heads) - hidden.symbols)
        return sigma, eps, hidden


def parse_spec(text: str) -> SpecDocument:
    return Parser(text).document()


def parse_expression(text: str, doc: SpecDocument) -> ModuleExpr:
    p = Parser(text, doc)
    e = p.expr()
    if p.tok.kind != "EOF":
        raise p.error(f"unexpected {p.tok} after expression")
    return e


def parse_structure(text: str, vocab: Vocabulary, domain: Domain) -> Structure:
    """``{a, q(1)}`` or ``a, q(1)`` as a structure over ``vocab``."""
    doc = SpecDocument(domain=domain, symbols={s.name: s for s in vocab})
    text = text.strip()
    if not text.startswith("{"):
        text = "{" + text + "}"
    p = Parser(text, doc)
    atoms = p.atom_set()
    if p.tok.kind != "EOF":
        raise p.error(f"unexpected {p.tok} after structure")
    return Structure(vocab, domain, atoms)


def parse_literals(text: str, vocab: Vocabulary, domain: Domain) -> PartialAssignment:
    """``a, ~b(1)`` as a partial assignment."""
    doc = SpecDocument(domain=domain, symbols={s.name: s for s in vocab})
    p = Parser(text, doc)
    lits = []
    while p.tok.kind != "EOF":
        positive = not p.accept("~")
        lits.append(Literal(p.ground_atom(), positive))
        if not p.accept(","):
            break
    if p.tok.kind != "EOF":
        raise p.error(f"unexpected {p.tok} in literal list")
    return PartialAssignment(frozenset(lits))
