import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from modsys.errors import PreconditionError, SymbolLeakage, UnsupportedConstruct
from modsys.logics import (
    SM,
    WF,
    Choice,
    LogicProgram,
    P,
    Rule,
    Top,
    Var,
    ground,
    is_stable_model,
    module_of_axioms,
    pattern,
    prop_models,
    stable_models,
    well_founded_model,
)
from modsys.logics.propositional import Bottom
from modsys.structures import PROPOSITIONAL, Domain, Structure, Vocabulary, atom, enumerate_structures

V = Vocabulary.of
i, a, b, c, d = (pattern(x) for x in "iabcd")
P_M0 = LogicProgram([Rule(a, (i,), (b,)), Rule(b, (i,), (a,))], SM, V("i"), V("a", "b"))


def facts(*names, vocab=V("i")):
    return Structure(vocab, PROPOSITIONAL, {atom(n) for n in names})


def shown(structures):
    return sorted(str(s) for s in structures)


def test_ground_instantiates_per_substitution():
    rule = Rule(pattern("p", "X"), (pattern("q", "X"),))
    prog = LogicProgram([rule], SM, V("q/1"), V("p/1"))
    out = ground(prog, Domain.of(1, 2))
    assert sorted(str(r) for r in out.rules) == ["p(1) :- q(1).", "p(2) :- q(2)."]
    two = LogicProgram([Rule(pattern("r", "X", "Y"))], SM, V(), V("r/2"))
    assert len(ground(two, Domain.of(1, 2)).rules) == 4
    assert ground(out, Domain.of(1, 2)) == out


def test_stable_models_of_the_appendix_program():
    assert shown(stable_models(P_M0, facts("i"))) == ["{a,i}", "{b,i}"]
    assert shown(stable_models(P_M0, facts())) == ["{}"]


@pytest.mark.parametrize("given_facts, candidate, expected", [
    (("i",), ("i", "a"), True),
    (("i",), ("i", "a", "b"), False),
    ((), (), True),
])
def test_is_stable_model(given_facts, candidate, expected):
    cand = facts(*candidate, vocab=V("i", "a", "b"))
    assert is_stable_model(P_M0, facts(*given_facts), cand) is expected


def test_candidate_must_expand_facts():
    with pytest.raises(PreconditionError):
        is_stable_model(P_M0, facts("i"), facts(vocab=V("i", "a", "b")))


def test_empty_constraint_kills_every_model():
    prog = LogicProgram([Rule(None)], SM, V("i"), V("a"))
    assert stable_models(prog, facts("i")) == []


def test_well_founded_examples():
    pos = LogicProgram([Rule(a, (b,))], WF, V("b"), V("a"))
    wf = well_founded_model(pos, Structure(V("b"), PROPOSITIONAL, {atom("b")}))
    assert wf.true_atoms == {atom("a"), atom("b")}
    loop = LogicProgram([Rule(a, (), (a,))], WF, V(), V("a"))
    wf = well_founded_model(loop, Structure(V(), PROPOSITIONAL))
    assert wf.undefined_atoms == {atom("a")} and not wf.is_total
    empty = LogicProgram([], WF, V(), V("a"))
    assert well_founded_model(empty, Structure(V(), PROPOSITIONAL)).false_atoms == {atom("a")}


def test_choice_rules_are_rejected_under_wf():
    prog = LogicProgram([Rule(Choice(1, (a, b), 1))], WF, V(), V("a", "b"))
    with pytest.raises(UnsupportedConstruct):
        well_founded_model(prog, Structure(V(), PROPOSITIONAL))


def test_prop_models_examples():
    bp, cp, dd = (Var(atom(x)) for x in ("b'", "c'", "d"))
    models = prop_models((bp | cp).iff(~dd), V("b'", "c'", "d"), PROPOSITIONAL)
    assert shown(models) == ["{b',c'}", "{b'}", "{c'}", "{d}"]
    assert shown(prop_models(Top(), V("p"), PROPOSITIONAL)) == ["{p}", "{}"]
    p = Var(atom("p"))
    assert prop_models(p & ~p, V("p"), PROPOSITIONAL) == []


def test_module_of_axioms_examples():
    wf = module_of_axioms(WF, [Rule(a, (b,))], V("b"), V("a"))
    assert shown(wf) == ["{a,b}", "{}"]
    assert shown(module_of_axioms(SM, P_M0, V("i"), V("a", "b"))) == ["{a,i}", "{b,i}", "{}"]
    bp, cp, dd = (Var(atom(x)) for x in ("b'", "c'", "d"))
    m4 = module_of_axioms(P, (bp | cp).iff(~dd), V("d"), V("b'", "c'"))
    assert shown(m4) == ["{b',c'}", "{b'}", "{c'}", "{d}"]


def test_symbol_leakage():
    with pytest.raises(SymbolLeakage):
        module_of_axioms(SM, [Rule(a, (c,))], V("b"), V("a"))


def test_hidden_symbols_are_projected_away():
    h = pattern("h")
    rules = [Rule(h, (), (a,)), Rule(a, (), (h,))]
    assert shown(module_of_axioms(SM, rules, V(), V("a"), V("h"))) == ["{a}", "{}"]


def test_choice_with_cardinality_bounds():
    atoms = (pattern("x"), pattern("y"), pattern("z"))
    for lo, hi, count in ((1, 1, 3), (0, 3, 8), (2, 3, 4), (0, 0, 1)):
        ext = module_of_axioms(SM, [Rule(Choice(lo, atoms, hi))], V(), V("x", "y", "z"))
        assert len(ext) == count


def test_neg_not_allowed_to_leak_choice_aux():
    ext = module_of_axioms(SM, [Rule(Choice(1, (a, b), 1), (i,))], V("i"), V("a", "b"))
    assert all("#" not in str(s) for s in ext)


# -- brute-force oracle on random small programs -----------------------------------


def _gl_stable(rules, candidate):
    """Textbook check: least model of the reduct equals the candidate."""
    reduct = [(r.head, r.pos) for r in rules if r.head is not None and not set(r.neg) & candidate]
    m = set()
    changed = True
    while changed:
        changed = False
        for h, pos in reduct:
            if set(pos) <= m and h not in m:
                m.add(h)
                changed = True
    cons_ok = all(not (set(r.pos) <= candidate and not set(r.neg) & candidate) for r in rules if r.head is None)
    return m == candidate and cons_ok


def _random_program(seed):
    rng = random.Random(seed)
    names = ["p", "q", "r", "s"]
    pats = {n: pattern(n) for n in names}
    rules = []
    for _ in range(rng.randint(1, 6)):
        head = None if rng.random() < 0.15 else pats[rng.choice(names)]
        body = rng.sample(names, rng.randint(0, 2))
        pos = tuple(pats[n] for n in body if rng.random() < 0.5)
        neg = tuple(pats[n] for n in body if pats[n] not in pos)
        rules.append(Rule(head, pos, neg))
    return LogicProgram(rules, SM, V(), V(*names))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_stable_models_match_brute_force(seed):
    prog = _random_program(seed)
    g = ground(prog, PROPOSITIONAL)
    grounded = [type(r)(r.head, tuple(r.pos), tuple(r.neg)) for r in g.rules]
    expected = sorted(
        str(s) for s in enumerate_structures(prog.vocab, PROPOSITIONAL)
        if _gl_stable(grounded, set(s.true_atoms))
    )
    got = shown(stable_models(prog, Structure(V(), PROPOSITIONAL)))
    assert got == expected


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_well_founded_is_consistent_with_stable_models(seed):
    prog = _random_program(seed)
    wf_prog = LogicProgram(prog.rules, WF, prog.sigma, prog.epsilon)
    empty = Structure(V(), PROPOSITIONAL)
    wf = well_founded_model(wf_prog, empty)
    for m in stable_models(prog, empty):
        assert wf.true_atoms <= m.true_atoms
        assert not wf.false_atoms & m.true_atoms


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_negation_free_programs_have_one_model(seed):
    prog = _random_program(seed)
    rules = [Rule(r.head, r.pos) for r in prog.rules if r.head is not None]
    pos_prog = LogicProgram(rules, SM, V(), prog.epsilon)
    empty = Structure(V(), PROPOSITIONAL)
    (only,) = stable_models(pos_prog, empty)
    wf = well_founded_model(LogicProgram(rules, WF, V(), prog.epsilon), empty)
    assert only.true_atoms == wf.true_atoms and wf.is_total


def test_stable_models_are_classical_models():
    for seed in range(60):
        prog = _random_program(seed)
        for m in stable_models(prog, Structure(V(), PROPOSITIONAL)):
            t = m.true_atoms
            for r in ground(prog, PROPOSITIONAL).rules:
                body = set(r.pos) <= t and not set(r.neg) & t
                assert not body or (r.head is not None and r.head in t)


def test_prop_negation_complements_models():
    p, q = Var(atom("p")), Var(atom("q"))
    vocab = V("p", "q")
    phi = p.implies(q) | Bottom()
    pos = set(prop_models(phi, vocab, PROPOSITIONAL))
    neg = set(prop_models(~phi, vocab, PROPOSITIONAL))
    assert pos | neg == set(enumerate_structures(vocab, PROPOSITIONAL)) and not pos & neg


def test_all_pairs_of_bounds_are_validated():
    for lo, hi in itertools.product(range(-1, 4), repeat=2):
        ok = 0 <= lo <= hi <= 2
        if ok:
            Choice(lo, (a, b), hi)
        else:
            with pytest.raises(ValueError):
                Choice(lo, (a, b), hi)
