"""Pure-Python versions of the sweep kernels (same API as ``_kernels``)."""

from __future__ import annotations


def product_set_size(a, b) -> int:
    return len({x * y for x in a for y in b})


def minimal_pair_sweep(flat, offsets, ratio_ids):
    sets = [tuple(flat[offsets[i]:offsets[i + 1]]) for i in range(len(offsets) - 1)]
    checked = 0
    for i, a in enumerate(sets):
        ri = ratio_ids[i]
        la = len(a)
        for j in range(i, len(sets)):
            b = sets[j]
            rj = ratio_ids[j]
            checked += 1
            minimal = len({x * y for x in a for y in b}) == la + len(b) - 1
            compat = ri == -2 or rj == -2 or (ri >= 0 and ri == rj)
            if minimal != compat:
                return checked, i, j
    return checked, -1, -1


def labeling_sweep(n_sets, nbr_offsets, nbr_flat, strong, quot):
    """Lexicographic sweep over injective labelings.

    The last position is handled with integer bitsets: bit ``c`` of a row
    mask is the verdict for candidate set ``c``.
    """
    nv = len(nbr_offsets) - 1
    if nv == 0 or n_sets < nv:
        return 0, None
    nbrs = [list(nbr_flat[nbr_offsets[p]:nbr_offsets[p + 1]]) for p in range(nv)]
    full = (1 << n_sets) - 1
    srow = [sum(1 << c for c in range(n_sets) if strong[w * n_sets + c]) for w in range(n_sets)]
    qrow = [sum(1 << c for c in range(n_sets) if quot[w * n_sets + c]) for w in range(n_sets)]
    last = nv - 1
    idx = [0] * nv
    checked = 0

    def rec(p, s, q, used_mask):
        nonlocal checked
        if p == last:
            sm = full if s else 0
            qm = full if q else 0
            for w in nbrs[p]:
                sm &= srow[idx[w]]
                qm &= qrow[idx[w]]
            free = full & ~used_mask
            bad = (sm ^ qm) & free
            if bad:
                c = (bad & -bad).bit_length() - 1
                checked += bin(free & ((1 << (c + 1)) - 1)).count("1")
                idx[p] = c
                return True
            checked += bin(free).count("1")
            return False
        for c in range(n_sets):
            bit = 1 << c
            if used_mask & bit:
                continue
            idx[p] = c
            s2, q2 = s, q
            for w in nbrs[p]:
                cell = idx[w] * n_sets + c
                s2 = s2 and strong[cell]
                q2 = q2 and quot[cell]
            if rec(p + 1, s2, q2, used_mask | bit):
                return True
        return False

    if rec(0, True, True, 0):
        return checked, tuple(idx)
    return checked, None
