"""Compare the compiled and pure-Python kernels on representative inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel call on both backends (best of N) and checks that
they return the same result.
"""

from __future__ import annotations

import argparse
import random
import timeit

from modsys import kernels


def _rules(rng, n, k):
    bits = lambda p: sum(1 << i for i in range(n) if rng.random() < p)
    return [rng.randrange(n) for _ in range(k)], [bits(0.1) for _ in range(k)], [bits(0.05) for _ in range(k)]


def cases(rng):
    n = 60
    heads, pos, neg = _rules(rng, n, 3000)
    yield "least_model (60 atoms, 3000 rules)", "least_model", (heads, pos, neg, rng.getrandbits(n), 0)

    n = 12
    clauses = [[(v, rng.random() < 0.5) for v in rng.sample(range(n), 3)] for _ in range(25)]
    models = [b for b in range(1 << n) if all(any((b >> v & 1) == s for v, s in c) for c in clauses)]
    yield f"ent_pairs (12 atoms, {len(models)} models, premise <= 3)", "ent_pairs", (models, n, 3)

    pairs = kernels._kernels_py.ent_pairs(models, n, 2)
    pp, pn, cb, cp = (list(c) for c in zip(*pairs))
    yield f"filter_inference_models (12 atoms, {len(pp)} inferences)", "filter_inference_models", (n, pp, pn, cb, cp)

    order = list(range(len(pp)))
    rng.shuffle(order)
    yield f"propagate ({len(pp)} inferences)", "propagate", (pp, pn, cb, cp, 1, 2, order)

    masks = [rng.getrandbits(40) for _ in range(20000)]
    yield "gather_bits (20000 masks, 12 positions)", "gather_bits", (masks, rng.sample(range(40), 12))


def _canon(result):
    return sorted(result) if isinstance(result, list) else tuple(result) if isinstance(result, tuple) else result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'kernel':52s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, name, call_args in cases(random.Random(1)):
        times, results = {}, {}
        for backend, mod in backends.items():
            fn = getattr(mod, name)
            results[backend] = fn(*call_args)
            times[backend] = min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=args.repeat))
        if "cython" in times:
            same = _canon(results["cython"]) == _canon(results["python"])
            flag = "" if same else "  RESULTS DIFFER"
            print(f"{label:52s} {times['python'] * 1e3:9.2f}ms {times['cython'] * 1e3:9.2f}ms "
                  f"{times['python'] / times['cython']:7.1f}x{flag}")
        else:
            print(f"{label:52s} {times['python'] * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
