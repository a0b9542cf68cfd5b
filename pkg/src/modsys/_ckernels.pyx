# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels, limited to 64 atoms.

Same contracts as ``_kernels_py``; the dispatcher in ``kernels`` only routes
here when every mask fits in an unsigned 64-bit word.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long)


cdef u64* _to_array(seq, Py_ssize_t n) except NULL:
    cdef u64* arr = <u64*> malloc((n if n > 0 else 1) * sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        arr[i] = <u64> seq[i]
    return arr


def least_model(heads, pos, neg, u64 blocked, u64 base):
    cdef Py_ssize_t n = len(heads), i, k = 0
    cdef u64* hb = _to_array(heads, n)
    cdef u64* pb = _to_array(pos, n)
    cdef u64 m = base, h, p
    cdef bint changed = True
    try:
        # compact the active rules in place
        for i in range(n):
            if not (<u64> neg[i] & blocked):
                hb[k] = (<u64> 1) << hb[i]
                pb[k] = pb[i]
                k += 1
        while changed:
            changed = False
            i = 0
            while i < k:
                p = pb[i]
                if (p & m) == p:
                    h = hb[i]
                    if not (m & h):
                        m |= h
                        changed = True
                    k -= 1
                    hb[i] = hb[k]
                    pb[i] = pb[k]
                else:
                    i += 1
        return m
    finally:
        free(hb)
        free(pb)


def filter_inference_models(int n, prem_pos, prem_neg, concl_bit, concl_pos):
    cdef Py_ssize_t r = len(prem_pos), k
    cdef u64* pp = _to_array(prem_pos, r)
    cdef u64* pn = _to_array(prem_neg, r)
    cdef u64* cb = _to_array(concl_bit, r)
    cdef u64* cp = _to_array(concl_pos, r)
    cdef u64 b, limit = (<u64> 1) << n
    cdef bint ok
    out = []
    try:
        b = 0
        while b < limit:
            ok = True
            for k in range(r):
                if (pp[k] & b) == pp[k] and not (pn[k] & b) and ((b >> cb[k]) & 1) != cp[k]:
                    ok = False
                    break
            if ok:
                out.append(b)
            b += 1
        return out
    finally:
        free(pp)
        free(pn)
        free(cb)
        free(cp)


def ent_pairs(models, int n, int max_size):
    cdef Py_ssize_t nm = len(models), j
    cdef u64* ms = _to_array(models, nm)
    cdef u64 full = ((<u64> 1) << n) - 1
    cdef u64 support, sub, p, q, and_m, or_m, ft, ff, m, bb
    cdef bint seen
    cdef int bit
    out = []
    try:
        support = 0
        while support <= full:
            if __builtin_popcountll(support) <= max_size:
                sub = support
                while True:
                    p = sub
                    q = support & ~sub
                    and_m = full
                    or_m = 0
                    seen = False
                    for j in range(nm):
                        m = ms[j]
                        if (m & p) == p and not (m & q):
                            and_m &= m
                            or_m |= m
                            seen = True
                    if seen:
                        ft = and_m
                        ff = full & ~or_m
                    else:
                        ft = full
                        ff = full
                    for bit in range(n):
                        bb = (<u64> 1) << bit
                        if (ft & bb) and not (p & bb):
                            out.append((p, q, bit, 1))
                        if (ff & bb) and not (q & bb):
                            out.append((p, q, bit, 0))
                    if sub == 0:
                        break
                    sub = (sub - 1) & support
            support += 1
        return out
    finally:
        free(ms)


def propagate(prem_pos, prem_neg, concl_bit, concl_pos, u64 start_pos, u64 start_neg, order):
    cdef Py_ssize_t r = len(prem_pos), no = len(order), i, k
    cdef u64* pp = _to_array(prem_pos, r)
    cdef u64* pn = _to_array(prem_neg, r)
    cdef u64* cb = _to_array(concl_bit, r)
    cdef u64* cp = _to_array(concl_pos, r)
    cdef u64* od = _to_array(order, no)
    cdef u64 p = start_pos, q = start_neg, b
    cdef bint changed = True
    try:
        while changed:
            changed = False
            for i in range(no):
                k = <Py_ssize_t> od[i]
                if (pp[k] & p) == pp[k] and (pn[k] & q) == pn[k]:
                    b = (<u64> 1) << cb[k]
                    if cp[k]:
                        if q & b:
                            return p | b, q, <int> cb[k]
                        if not (p & b):
                            p |= b
                            changed = True
                    else:
                        if p & b:
                            return p, q | b, <int> cb[k]
                        if not (q & b):
                            q |= b
                            changed = True
        return p, q, -1
    finally:
        free(pp)
        free(pn)
        free(cb)
        free(cp)
        free(od)


def gather_bits(masks, positions):
    cdef Py_ssize_t np_ = len(positions), j
    cdef u64* ps = _to_array(positions, np_)
    cdef u64 m, r
    out = []
    try:
        for mm in masks:
            m = <u64> mm
            r = 0
            for j in range(np_):
                if (m >> ps[j]) & 1:
                    r |= (<u64> 1) << j
            out.append(r)
        return out
    finally:
        free(ps)
