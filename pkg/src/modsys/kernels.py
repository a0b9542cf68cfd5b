"""Backend selection for the bitmask kernels.

The compiled extension is used when it imported and every mask fits in 62
bits; otherwise calls go to the pure-Python implementation.  Setting
``MODSYS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("MODSYS_PURE_PYTHON") == "1":
        raise ImportError("pure Python forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
C_MAX_ATOMS = 62


def available_backends() -> dict:
    backends = {"python": _kernels_py}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    return backends


def _pick(n_atoms: int):
    if _ckernels is not None and n_atoms <= C_MAX_ATOMS:
        return _ckernels
    return _kernels_py


def least_model(n_atoms, heads, pos, neg, blocked, base):
    return _pick(n_atoms).least_model(heads, pos, neg, blocked, base)


def filter_inference_models(n_atoms, prem_pos, prem_neg, concl_bit, concl_pos):
    return _pick(n_atoms).filter_inference_models(n_atoms, prem_pos, prem_neg, concl_bit, concl_pos)


def ent_pairs(n_atoms, models, max_size):
    return _pick(n_atoms).ent_pairs(models, n_atoms, max_size)


def propagate(n_atoms, prem_pos, prem_neg, concl_bit, concl_pos, start_pos, start_neg, order):
    return _pick(n_atoms).propagate(
        prem_pos, prem_neg, concl_bit, concl_pos, start_pos, start_neg, order
    )


def gather_bits(n_atoms, masks, positions):
    return _pick(n_atoms).gather_bits(masks, positions)
