# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernels.

Bit vectors cross the boundary as Python ints (bit ``c`` is column ``c``) and
are packed into little-endian ``uint64`` word rows internally.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "compiled"


cdef inline Py_ssize_t _nwords(Py_ssize_t nbits):
    return max(1, (nbits + 63) >> 6)


def pack(rows, Py_ssize_t nbits):
    """Pack a sequence of ints into a C-contiguous ``(len(rows), words)`` array."""
    cdef Py_ssize_t nw = _nwords(nbits)
    cdef Py_ssize_t nbytes = nw * 8
    buf = b"".join([int(r).to_bytes(nbytes, "little") for r in rows])
    arr = np.frombuffer(buf, dtype="<u8").copy() if rows else np.zeros(0, dtype=np.uint64)
    return arr.reshape(len(rows), nw)


def _unpack(cnp.ndarray arr):
    return [int.from_bytes(arr[i].tobytes(), "little") for i in range(arr.shape[0])]


def rref(rows, Py_ssize_t ncols):
    """Reduced row echelon form over GF(2), pivoting on the lowest free column.

    Returns ``(pivots, reduced)`` where ``reduced[i]`` has its pivot at
    ``pivots[i]`` and no other pivot columns set.
    """
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] packed = pack(rows, ncols)
    cdef uint64_t[:, ::1] m = packed
    cdef Py_ssize_t nrows = m.shape[0], nw = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, w, p
    cdef uint64_t bit, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        bit = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(r, nrows):
            if m[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(w, nw):
                tmp = m[p, j]
                m[p, j] = m[r, j]
                m[r, j] = tmp
        for i in range(nrows):
            if i != r and (m[i, w] & bit):
                for j in range(w, nw):
                    m[i, j] ^= m[r, j]
        pivots.append(c)
        r += 1
    return pivots, _unpack(packed[:r])


cdef bint _outer_nonzero(uint64_t[:, ::1] lt, int64_t[::1] li,
                         uint64_t[:, ::1] rt, int64_t[::1] ri,
                         Py_ssize_t lbits):
    cdef Py_ssize_t lw = lt.shape[1], rw = rt.shape[1]
    cdef Py_ssize_t t, a, b, j, row, row_j
    cdef uint64_t word
    acc_arr = np.zeros((max(lbits, 1), rw), dtype=np.uint64)
    cdef uint64_t[:, ::1] acc = acc_arr
    for t in range(li.shape[0]):
        a = li[t]
        b = ri[t]
        for j in range(lw):
            word = lt[a, j]
            while word:
                row = (j << 6) + __builtin_ctzll(word)
                word &= word - 1
                for row_j in range(rw):
                    acc[row, row_j] ^= rt[b, row_j]
    for a in range(acc.shape[0]):
        for j in range(rw):
            if acc[a, j]:
                return True
    return False


def outer_xor_nonzero(ltab, lidx, rtab, ridx, Py_ssize_t lbits):
    """Whether ``sum_t ltab[lidx[t]] (x) rtab[ridx[t]]`` is nonzero over GF(2).

    ``ltab``/``rtab`` are tables produced by :func:`pack`.
    """
    if len(lidx) == 0:
        return False
    li = np.ascontiguousarray(lidx, dtype=np.int64)
    ri = np.ascontiguousarray(ridx, dtype=np.int64)
    return bool(_outer_nonzero(ltab, li, rtab, ri, lbits))
