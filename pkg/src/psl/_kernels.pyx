# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels. Same API as ``_kernels_py``.

Elements must fit in 31 bits so pairwise products fit in int64; callers
check this before dispatching here.
"""

from libc.stdlib cimport malloc, free, qsort

ctypedef long long i64


cdef int _cmp_i64(const void* a, const void* b) noexcept nogil:
    cdef i64 x = (<const i64*>a)[0]
    cdef i64 y = (<const i64*>b)[0]
    return (x > y) - (x < y)


cdef Py_ssize_t _distinct_products(const i64* a, Py_ssize_t la,
                                   const i64* b, Py_ssize_t lb,
                                   i64* buf) noexcept nogil:
    cdef Py_ssize_t i, j, n = 0, count
    cdef i64 x, t
    for i in range(la):
        for j in range(lb):
            buf[n] = a[i] * b[j]
            n += 1
    if n <= 32:
        for i in range(1, n):
            t = buf[i]
            j = i - 1
            while j >= 0 and buf[j] > t:
                buf[j + 1] = buf[j]
                j -= 1
            buf[j + 1] = t
    else:
        qsort(buf, n, sizeof(i64), _cmp_i64)
    count = 1
    for i in range(1, n):
        if buf[i] != buf[i - 1]:
            count += 1
    return count


def product_set_size(const i64[:] a, const i64[:] b):
    """Number of distinct products ``x*y``."""
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    if la == 0 or lb == 0:
        return 0
    cdef i64* buf = <i64*>malloc(la * lb * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    try:
        return _distinct_products(&a[0], la, &b[0], lb, buf)
    finally:
        free(buf)


def minimal_pair_sweep(const i64[:] flat, const i64[:] offsets, const i64[:] ratio_ids):
    """Compare minimality against same-ratio compatibility over pairs ``i <= j``.

    Set ``i`` is ``flat[offsets[i]:offsets[i+1]]``. ``ratio_ids[i]`` is -1 for a
    non-progression, -2 for a singleton (matches anything), else a ratio id.
    Returns ``(checked, i, j)`` with ``i == j == -1`` when no pair disagrees.
    """
    cdef Py_ssize_t nsets = offsets.shape[0] - 1
    cdef Py_ssize_t i, j, la, lb, maxlen = 0
    cdef i64 ri, rj, checked = 0
    cdef bint minimal, compat
    for i in range(nsets):
        if offsets[i + 1] - offsets[i] > maxlen:
            maxlen = offsets[i + 1] - offsets[i]
    cdef i64* buf = <i64*>malloc((maxlen * maxlen + 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(nsets):
                la = offsets[i + 1] - offsets[i]
                ri = ratio_ids[i]
                for j in range(i, nsets):
                    lb = offsets[j + 1] - offsets[j]
                    rj = ratio_ids[j]
                    checked += 1
                    minimal = _distinct_products(&flat[offsets[i]], la, &flat[offsets[j]], lb, buf) == la + lb - 1
                    compat = ri == -2 or rj == -2 or (ri >= 0 and ri == rj)
                    if minimal != compat:
                        with gil:
                            return checked, i, j
    finally:
        free(buf)
    return checked, -1, -1


def labeling_sweep(Py_ssize_t n_sets, const i64[:] nbr_offsets, const i64[:] nbr_flat,
                   const unsigned char[:] strong, const unsigned char[:] quot):
    """Enumerate injective labelings in lexicographic order of index tuples.

    Vertex ``p`` (0-based position) is adjacent to the earlier positions
    ``nbr_flat[nbr_offsets[p]:nbr_offsets[p+1]]``. ``strong`` and ``quot`` are
    row-major ``n_sets x n_sets`` 0/1 tables of the per-edge verdicts.
    Returns ``(checked, first_mismatch_or_None)``.
    """
    cdef Py_ssize_t nv = nbr_offsets.shape[0] - 1
    if nv == 0 or n_sets < nv:
        return 0, None
    cdef i64* idx = <i64*>malloc(nv * sizeof(i64))
    cdef unsigned char* sflag = <unsigned char*>malloc((nv + 1) * sizeof(unsigned char))
    cdef unsigned char* qflag = <unsigned char*>malloc((nv + 1) * sizeof(unsigned char))
    cdef unsigned char* used = <unsigned char*>malloc(n_sets * sizeof(unsigned char))
    if idx == NULL or sflag == NULL or qflag == NULL or used == NULL:
        free(idx); free(sflag); free(qflag); free(used)
        raise MemoryError()
    cdef Py_ssize_t p, t, w, c
    cdef i64 checked = 0
    cdef bint found = 0
    cdef unsigned char s, q
    try:
        with nogil:
            for c in range(n_sets):
                used[c] = 0
            sflag[0] = 1
            qflag[0] = 1
            p = 0
            idx[0] = -1
            while p >= 0:
                # advance position p to its next unused candidate
                if idx[p] >= 0:
                    used[idx[p]] = 0
                c = idx[p] + 1
                while c < n_sets and used[c]:
                    c += 1
                if c >= n_sets:
                    idx[p] = -1
                    p -= 1
                    continue
                idx[p] = c
                s = sflag[p]
                q = qflag[p]
                for t in range(nbr_offsets[p], nbr_offsets[p + 1]):
                    w = idx[nbr_flat[t]]
                    s = s & strong[w * n_sets + c]
                    q = q & quot[w * n_sets + c]
                if p == nv - 1:
                    checked += 1
                    if s != q:
                        found = 1
                        break
                    continue
                used[c] = 1
                sflag[p + 1] = s
                qflag[p + 1] = q
                p += 1
                idx[p] = -1
        if found:
            return checked, tuple(idx[t] for t in range(nv))
        return checked, None
    finally:
        free(idx); free(sflag); free(qflag); free(used)
