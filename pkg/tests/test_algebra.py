import pytest
from hypothesis import given, settings, strategies as st

from modsys.algebra import (
    Complement,
    Compose,
    Feedback,
    Prim,
    Project,
    Union,
    ViolationKind as K,
    check_wellformed,
    full_vocab,
    primitives,
    render,
    signature_of,
    subsystems,
    subsystems_with_paths,
)
from modsys.errors import IllFormedSystem
from modsys.frontend import parse_expression
from modsys.frontend.parser import SpecDocument
from modsys.modules import ExplicitModule
from modsys.structures import Symbol, Vocabulary

from sysgen import SYMBOLS, random_system

V = Vocabulary.of


def prim(name, sigma, eps):
    return Prim(name, ExplicitModule(name, V(*sigma), V(*eps), []))


def names(vocab):
    return sorted(s.name for s in vocab)


def test_example2_signatures(example2):
    mprime = example2.systems["Mprime"]
    sig = signature_of(mprime)
    assert names(sig.sigma) == ["b", "c"] and names(sig.epsilon) == ["a", "b'", "c'", "d"]
    sig = signature_of(example2.systems["Mloop"])
    assert names(sig.sigma) == [] and names(sig.epsilon) == ["a", "b", "b'", "c", "c'", "d"]
    sig = signature_of(example2.systems["M"])
    assert names(sig.sigma) == [] and names(sig.epsilon) == ["a", "b", "c", "d"]


def test_example2_is_well_formed(example2):
    assert check_wellformed(example2.systems["M"]).ok


def test_example2_subsystem_count(example2):
    # 4 primitives, a union, 2 compositions, 2 feedbacks and the projection.
    subs = subsystems(example2.systems["M"])
    assert len(subs) == 10
    kinds = [type(s).__name__ for s in subs]
    assert {k: kinds.count(k) for k in set(kinds)} == {
        "Prim": 4, "Union": 1, "Compose": 2, "Feedback": 2, "Project": 1,
    }


def test_subsystems_small():
    m1, m2 = prim("M1", [], ["a"]), prim("M2", [], ["b"])
    assert subsystems(m1) == [m1]
    assert subsystems(Compose(m1, m2)) == [m1, m2, Compose(m1, m2)]
    assert [p for p, _ in subsystems_with_paths(Compose(m1, m2))] == [(0,), (1,), ()]


def test_output_interference():
    e = Compose(prim("A", [], ["a"]), prim("B", [], ["a"]))
    report = check_wellformed(e)
    assert [v.kind for v in report.violations] == [K.OUTPUT_INTERFERENCE]
    with pytest.raises(IllFormedSystem):
        signature_of(e)


def test_cyclic_dependency():
    e = Compose(prim("A", ["b"], ["a"]), prim("B", [], ["b"]))
    assert [v.kind for v in check_wellformed(e).violations] == [K.CYCLIC_DEPENDENCY]


def test_union_dependency():
    e = Union(prim("A", ["b"], ["a"]), prim("B", [], ["b"]))
    assert [v.kind for v in check_wellformed(e).violations] == [K.UNION_DEPENDENCY]


def test_feedback_on_closed_module():
    e = Feedback(prim("A", [], ["a", "b"]), Symbol("b"), Symbol("a"))
    kinds = {v.kind for v in check_wellformed(e).violations}
    assert K.FEEDBACK_ON_CLOSED_MODULE in kinds


def test_feedback_violations():
    a = prim("A", ["i", "r/1"], ["a", "s"])
    kinds = lambda e: [v.kind for v in check_wellformed(e).violations]
    assert kinds(Feedback(a, Symbol("a"), Symbol("s"))) == [K.FEEDBACK_INPUT_NOT_IN_SIGMA]
    assert kinds(Feedback(a, Symbol("i"), Symbol("i"))) == [K.FEEDBACK_OUTPUT_NOT_IN_EPSILON]
    assert kinds(Feedback(a, Symbol("r", 1), Symbol("s"))) == [K.FEEDBACK_ARITY_MISMATCH]
    assert kinds(Feedback(a, Symbol("i"), Symbol("s"))) == []


def test_projection_outside_vocabulary():
    e = Project(V("z"), prim("A", [], ["a"]))
    (v,) = check_wellformed(e).violations
    assert v.kind == K.PROJECTION_OUTSIDE_VOCABULARY and str(v).startswith("root: ")


def test_arity_clash_and_unbound_primitive():
    e = Union(prim("A", [], ["p"]), prim("B", [], ["p/1"]))
    assert K.ARITY_CLASH in {v.kind for v in check_wellformed(e).violations}
    assert [v.kind for v in check_wellformed(Prim("X", None)).violations] == [K.UNBOUND_PRIMITIVE]


def test_violation_paths_point_at_the_node():
    bad = Compose(prim("A", [], ["a"]), prim("B", [], ["a"]))
    (v,) = check_wellformed(Complement(Union(prim("C", [], ["c"]), bad))).violations
    assert str(v).startswith("root.0.1: OutputInterference")


def test_signature_rules():
    a, b = prim("A", ["i"], ["x"]), prim("B", ["x", "j"], ["y"])
    sig = signature_of(Compose(a, b))
    assert names(sig.sigma) == ["i", "j"] and names(sig.epsilon) == ["x", "y"]
    assert signature_of(Complement(a)) == signature_of(a)
    fb = signature_of(Feedback(Compose(a, b), Symbol("j"), Symbol("y")))
    assert names(fb.sigma) == ["i"] and names(fb.epsilon) == ["j", "x", "y"]
    pr = signature_of(Project(V("i", "y"), Compose(a, b)))
    assert names(pr.sigma) == ["i"] and names(pr.epsilon) == ["y"]


def test_primitives_and_full_vocab(example2):
    m = example2.systems["M"]
    assert [p.name for p in primitives(m)] == ["M1", "M2", "M3", "M4"]
    assert names(full_vocab(m)) == ["a", "b", "b'", "c", "c'", "d"]


def test_render_example2(example2):
    assert render(example2.systems["M"]) == "project {a, b, c, d} (((M1 | M2) >> M3 >> M4)[c=c'][b=b'])"


def test_precedence_rendering():
    a, b, c = prim("A", [], ["a"]), prim("B", [], ["b"]), prim("C", [], ["c"])
    assert render(Union(a, Compose(b, c))) == "A | B >> C"
    assert render(Compose(Union(a, b), c)) == "(A | B) >> C"
    assert render(Compose(a, Compose(b, c))) == "A >> (B >> C)"
    assert render(Complement(Compose(a, b))) == "~(A >> B)"
    assert render(Feedback(Complement(a), Symbol("x"), Symbol("y"))) == "(~A)[x=y]"


def _doc_for(e):
    doc = SpecDocument(symbols={s.name: s for s in SYMBOLS})
    for p in primitives(e):
        doc.modules[p.name] = p.module
    return doc


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_render_parse_round_trip(seed):
    e = random_system(seed)
    back = parse_expression(render(e), _doc_for(e))
    assert back == e
    assert render(back) == render(e)
