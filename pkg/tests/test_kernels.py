import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from modsys import _kernels_py as py
from modsys import kernels

C = kernels.available_backends().get("cython")
needs_c = pytest.mark.skipif(C is None, reason="compiled kernels not built")


def _rules(rng, n, k):
    bits = lambda: sum(1 << i for i in range(n) if rng.random() < 0.2)
    return ([rng.randrange(n) for _ in range(k)], [bits() for _ in range(k)], [bits() for _ in range(k)])


@needs_c
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_least_model_agrees(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 62)
    heads, pos, neg = _rules(rng, n, rng.randint(0, 20))
    blocked, base = rng.getrandbits(n), rng.getrandbits(n) & rng.getrandbits(n)
    assert C.least_model(heads, pos, neg, blocked, base) == py.least_model(heads, pos, neg, blocked, base)


@needs_c
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_inference_kernels_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    models = sorted({rng.getrandbits(n) for _ in range(rng.randint(0, 1 << n))})
    k = rng.randint(0, n)
    pairs = py.ent_pairs(models, n, k)
    assert sorted(C.ent_pairs(models, n, k)) == sorted(pairs)
    cols = list(zip(*pairs)) or [(), (), (), ()]
    pp, pn, cb, cp = (list(c) for c in cols)
    assert C.filter_inference_models(n, pp, pn, cb, cp) == py.filter_inference_models(n, pp, pn, cb, cp)
    order = list(range(len(pp)))
    rng.shuffle(order)
    start = rng.getrandbits(n)
    args = (pp, pn, cb, cp, start & rng.getrandbits(n), ~start & rng.getrandbits(n) & ((1 << n) - 1), order)
    assert tuple(C.propagate(*args)) == tuple(py.propagate(*args))


@needs_c
def test_gather_bits_agree():
    rng = random.Random(7)
    masks = [rng.getrandbits(40) for _ in range(50)]
    positions = rng.sample(range(40), 12)
    assert C.gather_bits(masks, positions) == py.gather_bits(masks, positions)


def test_dispatch_falls_back_for_wide_masks():
    n = kernels.C_MAX_ATOMS + 8
    assert kernels._pick(n) is py
    assert kernels.least_model(n, [n - 1], [1 << (n - 2)], [0], 0, 1 << (n - 2)) == (1 << (n - 1)) | (1 << (n - 2))


def test_pure_python_switch():
    env = dict(os.environ, MODSYS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from modsys import kernels; print(kernels.BACKEND, sorted(kernels.available_backends()))"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python ['python']"
