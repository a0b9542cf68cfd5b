import itertools

import pytest
from hypothesis import given, settings, strategies as st

from modsys.algebra import Complement, Feedback, Prim, Project, signature_of
from modsys.errors import VocabularyMismatch
from modsys.mt import ModelSet, expand, mt_models
from modsys.structures import PROPOSITIONAL, Structure, Vocabulary, atom, enumerate_structures

from sysgen import random_system

V = Vocabulary.of


def lines(ms):
    return [str(s) for s in ms]


def test_appendix_model_sets(appendix):
    dom = appendix.domain
    assert lines(mt_models(appendix.systems["M2"], dom)) == ["{a,a',i}", "{b,b',i}", "{}"]
    m0 = mt_models(Prim("M0", appendix.modules["M0"]), dom)
    assert lines(mt_models(appendix.systems["P"], dom)) == lines(m0) == ["{a,i}", "{b,i}", "{}"]


def test_complement_of_m0(appendix):
    comp = mt_models(Complement(Prim("M0", appendix.modules["M0"])), appendix.domain)
    assert len(comp) == 5
    assert set(lines(comp)) == {"{a,b,i}", "{a,b}", "{a}", "{b}", "{i}"}


def test_expand_m2(appendix):
    m2 = appendix.systems["M2"]
    sigma = signature_of(m2).sigma
    assert names(sigma) == ["i"]
    found = expand(m2, appendix.instance("on", sigma))
    assert [str(s) for s in found] == ["{a,a',i}", "{b,b',i}"]
    assert [str(s) for s in expand(m2, appendix.instance("off", sigma))] == ["{}"]


def test_expand_after_feedback_with_empty_input(example2):
    m = example2.systems["M"]
    found = expand(m, Structure(V(), PROPOSITIONAL))
    assert [str(s) for s in found] == lines(mt_models(m, PROPOSITIONAL))


def test_expand_rejects_wrong_vocabulary(appendix):
    with pytest.raises(VocabularyMismatch):
        expand(appendix.systems["M2"], Structure(V("a"), PROPOSITIONAL))


def names(vocab):
    return sorted(s.name for s in vocab)


def test_example2_models(example2):
    assert lines(mt_models(example2.systems["M"], PROPOSITIONAL)) == ["{a,b,c}", "{a,b}", "{a,c}", "{d}"]


def _colour_oracle(vertices, edges):
    count = 0
    for colours in itertools.product("RGB", repeat=len(vertices)):
        c = dict(zip(vertices, colours))
        count += all(c[u] != c[v] for u, v in edges)
    return count


@pytest.mark.parametrize("name, vertices, expected", [("k3", 3, 6), ("k4", 4, 0), ("c5", 5, 30)])
def test_colourings(coloring, name, vertices, expected):
    col = coloring.systems["Col"]
    inst = coloring.instance(name, signature_of(col).sigma)
    verts = sorted(a.args[0] for a in inst.true_atoms if a.name == "V")
    edges = [a.args for a in inst.true_atoms if a.name == "E"]
    assert len(verts) == vertices
    assert _colour_oracle(verts, edges) == expected
    found = expand(col, inst)
    assert len(found) == expected
    for s in found:
        colour = {}
        for a in s.true_atoms:
            if a.name in "RGB":
                assert a.args[0] not in colour
                colour[a.args[0]] = a.name
        assert sorted(colour) == verts
        assert all(colour[u] != colour[v] for u, v in edges)


def test_model_set_dedupes_and_sorts(appendix):
    sig = signature_of(appendix.systems["M2"])
    ms = ModelSet.from_atom_sets(sig, PROPOSITIONAL, [frozenset(), frozenset(), frozenset({atom("i"), atom("a"), atom("a'")})])
    assert lines(ms) == ["{a,a',i}", "{}"]
    assert frozenset() in ms.atom_sets()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_double_complement_is_identity(seed):
    e = random_system(seed, max_depth=3)
    assert mt_models(Complement(Complement(e)), PROPOSITIONAL).atom_sets() == mt_models(e, PROPOSITIONAL).atom_sets()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_complement_partitions_each_frame(seed):
    e = random_system(seed, max_depth=3)
    sig = signature_of(e)
    m = mt_models(e, PROPOSITIONAL).atom_sets()
    c = mt_models(Complement(e), PROPOSITIONAL).atom_sets()
    every = {s.true_atoms for s in enumerate_structures(sig.vocab, PROPOSITIONAL)}
    assert m | c == every and not m & c


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_feedback_models_equate_the_pair(seed):
    e = random_system(seed, max_depth=3)
    sig = signature_of(e)
    if not sig.sigma or not sig.epsilon:
        return
    r, s = sorted(sig.sigma)[0], sorted(sig.epsilon)[0]
    fb = mt_models(Feedback(e, r, s), PROPOSITIONAL).atom_sets()
    base = mt_models(e, PROPOSITIONAL).atom_sets()
    expected = {b for b in base if (atom(r.name) in b) == (atom(s.name) in b)}
    assert fb == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_projection_restricts_models(seed):
    e = random_system(seed, max_depth=3)
    sig = signature_of(e)
    keep = Vocabulary(frozenset(sorted(sig.vocab)[::2]))
    projected = mt_models(Project(keep, e), PROPOSITIONAL).atom_sets()
    base = mt_models(e, PROPOSITIONAL).atom_sets()
    assert projected == {frozenset(a for a in b if a.symbol in keep) for b in base}
