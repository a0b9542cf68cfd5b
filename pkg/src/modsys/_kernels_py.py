"""Pure-Python bitmask kernels.

Reference implementation and fallback for ``_ckernels``.  Structures are
integers whose bit ``i`` is the truth value of atom ``i``; these functions
work for any number of atoms.
"""


def least_model(heads, pos, neg, blocked, base):
    """Least model of the definite rules ``heads[k] <- pos[k]`` whose
    negative body ``neg[k]`` misses ``blocked``, closed over ``base``."""
    m = base
    active = [(1 << h, p) for h, p, n in zip(heads, pos, neg) if not n & blocked]
    changed = True
    while changed:
        changed = False
        waiting = []
        for hbit, p in active:
            if p & m == p:
                if not m & hbit:
                    m |= hbit
                    changed = True
            else:
                waiting.append((hbit, p))
        active = waiting
    return m


def filter_inference_models(n, prem_pos, prem_neg, concl_bit, concl_pos):
    rules = list(zip(prem_pos, prem_neg, concl_bit, concl_pos))
    out = []
    for b in range(1 << n):
        for pp, pn, cb, cp in rules:
            if pp & b == pp and not pn & b and (b >> cb & 1) != cp:
                break
        else:
            out.append(b)
    return out


def ent_pairs(models, n, max_size):
    full = (1 << n) - 1
    out = []
    for support in range(1 << n):
        if bin(support).count("1") > max_size:
            continue
        sub = support
        while True:
            p = sub
            q = support & ~sub
            and_m = full
            or_m = 0
            seen = False
            for m in models:
                if m & p == p and not m & q:
                    and_m &= m
                    or_m |= m
                    seen = True
            if seen:
                forced_true = and_m
                forced_false = full & ~or_m
            else:
                forced_true = forced_false = full
            for bit in range(n):
                b = 1 << bit
                if forced_true & b and not p & b:
                    out.append((p, q, bit, 1))
                if forced_false & b and not q & b:
                    out.append((p, q, bit, 0))
            if sub == 0:
                break
            sub = (sub - 1) & support
    return out


def propagate(prem_pos, prem_neg, concl_bit, concl_pos, start_pos, start_neg, order):
    """Fire ``(S, l)`` whenever S is contained in the current literals.

    Returns ``(pos, neg, conflict_bit)`` with ``conflict_bit = -1`` when the
    closure is consistent.
    """
    p = start_pos
    q = start_neg
    changed = True
    while changed:
        changed = False
        for k in order:
            pp = prem_pos[k]
            pn = prem_neg[k]
            if pp & p == pp and pn & q == pn:
                b = 1 << concl_bit[k]
                if concl_pos[k]:
                    if q & b:
                        return p | b, q, concl_bit[k]
                    if not p & b:
                        p |= b
                        changed = True
                else:
                    if p & b:
                        return p, q | b, concl_bit[k]
                    if not q & b:
                        q |= b
                        changed = True
    return p, q, -1


def gather_bits(masks, positions):
    out = []
    for m in masks:
        r = 0
        for j, i in enumerate(positions):
            if m >> i & 1:
                r |= 1 << j
        out.append(r)
    return out
