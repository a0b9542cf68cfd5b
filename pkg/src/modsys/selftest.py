"""Golden checks for the bundled feedback example (``modsys selftest``)."""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .algebra import Prim, signature_of
from .logics import stable_models
from .mt import expand, mt_models
from .structures import Structure, Vocabulary, atom, enumerate_structures, format_atoms


def bundled(name: str) -> str:
    return files("modsys").joinpath("data", name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    expected: str
    actual: str


def _sets(*rows) -> str:
    return " ".join(sorted({format_atoms({atom(a) for a in r}) for r in rows}))


def _shown(structures) -> str:
    return " ".join(sorted(str(s) for s in structures))


# input row (i, a, b) -> the set listed for that row.  Rows with i false list
# only the (empty) output part; the model is the listed set plus the input.
M1_TABLE = {
    (): (),
    ("a",): (),
    ("b",): (),
    ("a", "b"): (),
    ("i",): ("i", "a'", "b'"),
    ("i", "a"): ("i", "a", "a'"),
    ("i", "b"): ("i", "b", "b'"),
    ("i", "a", "b"): ("i", "a", "b"),
}


def run_selftest() -> list:
    from .frontend import parse_spec

    doc = parse_spec(bundled("appendix.msl"))
    dom = doc.domain
    out = []

    def check(name, expected, actual):
        out.append(Check(name, expected == actual, expected, actual))

    m0 = doc.modules["M0"]
    program = m0.program
    i_only = Vocabulary.of("i")
    for label, facts, expected in (
        ("stable models of P_M0 with i true", {atom("i")}, _sets(["a"], ["b"])),
        ("stable models of P_M0 with i false", set(), _sets([])),
    ):
        found = stable_models(program, Structure(i_only, dom, facts))
        ab = [format_atoms(a for a in s.true_atoms if a.name != "i") for s in found]
        check(label, expected, " ".join(sorted(ab)))

    check("M0", _sets(["i", "a"], ["i", "b"], []), _shown(mt_models(Prim("M0", m0), dom)))

    m1 = Prim("M1", doc.modules["M1"])
    sigma1 = signature_of(m1).sigma
    for inst in enumerate_structures(sigma1, dom):
        key = tuple(a for a in ("i", "a", "b") if atom(a) in inst.true_atoms)
        expected = _sets(key + M1_TABLE[key])
        check(f"M1 row {format_atoms(inst.true_atoms)}", expected, _shown(expand(m1, inst)))
    check(
        "M1",
        _sets(*(k + v for k, v in M1_TABLE.items())),
        _shown(mt_models(m1, dom)),
    )

    m2 = doc.systems["M2"]
    check("M2", _sets([], ["i", "a", "a'"], ["i", "b", "b'"]), _shown(mt_models(m2, dom)))
    on = doc.instance("on", signature_of(m2).sigma)
    check("M2 solutions for i true", "2", str(len(expand(m2, on))))
    check("projection of M2 equals M0", _shown(mt_models(Prim("M0", m0), dom)), _shown(mt_models(doc.systems["P"], dom)))
    return out


__all__ = ["Check", "bundled", "run_selftest"]
