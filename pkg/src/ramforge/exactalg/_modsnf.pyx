# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled valuation-pivoting Smith reduction over Z/p^N (and F_p).

Same contract as ``_modsnf_py.modular_smith``; entries must lie in
[0, modulus) with modulus < 2**62.
"""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    static inline int64_t rf_mulmod(int64_t a, int64_t b, int64_t m) {
        return (int64_t)(((unsigned __int128)(uint64_t)a * (uint64_t)b) % (uint64_t)m);
    }
    """
    int64_t rf_mulmod(int64_t a, int64_t b, int64_t m) nogil

cdef int64_t _invmod(int64_t a, int64_t m):
    cdef int64_t t = 0, newt = 1, r = m, newr = a % m, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += m
    return t

cdef inline int64_t _submul(int64_t a, int64_t q, int64_t b, int64_t m) nogil:
    cdef int64_t r = a - rf_mulmod(q, b, m)
    if r < 0:
        r += m
    return r

cdef inline int64_t _addmul(int64_t a, int64_t q, int64_t b, int64_t m) nogil:
    cdef int64_t r = a + rf_mulmod(q, b, m)
    if r >= m:
        r -= m
    return r


def modular_smith(A_in, Py_ssize_t nrows, Py_ssize_t ncols, modulus, p_in, limit_in):
    cdef int64_t m = modulus
    cdef int64_t p = p_in
    cdef int64_t limit = limit_in
    cdef cnp.ndarray[int64_t, ndim=2] An = np.array(A_in, dtype=np.int64).reshape(nrows, ncols)
    cdef cnp.ndarray[int64_t, ndim=2] Un = np.eye(nrows, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] Vn = np.eye(ncols, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=2] Vin = np.eye(ncols, dtype=np.int64)
    cdef int64_t[:, ::1] A = An
    cdef int64_t[:, ::1] U = Un
    cdef int64_t[:, ::1] V = Vn
    cdef int64_t[:, ::1] Vi = Vin
    cdef Py_ssize_t t, i, j, k, bi, bj
    cdef int64_t x, v, best_v, pv, unit, uinv, q, tmp
    vals = []
    cdef Py_ssize_t tmax = nrows if nrows < ncols else ncols
    for t in range(tmax):
        best_v = -1
        bi = -1
        bj = -1
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = A[i, j]
                if x != 0:
                    v = 0
                    while x % p == 0:
                        x = x // p
                        v += 1
                    if best_v < 0 or v < best_v:
                        best_v = v
                        bi = i
                        bj = j
                        if v == 0:
                            break
            if best_v == 0:
                break
        if best_v < 0:
            break
        if best_v >= limit:
            return 1, vals, Un.tolist(), Vn.tolist(), Vin.tolist(), best_v
        if bi != t:
            for j in range(ncols):
                tmp = A[t, j]; A[t, j] = A[bi, j]; A[bi, j] = tmp
            for j in range(nrows):
                tmp = U[t, j]; U[t, j] = U[bi, j]; U[bi, j] = tmp
        if bj != t:
            for i in range(nrows):
                tmp = A[i, t]; A[i, t] = A[i, bj]; A[i, bj] = tmp
            for i in range(ncols):
                tmp = V[i, t]; V[i, t] = V[i, bj]; V[i, bj] = tmp
            for j in range(ncols):
                tmp = Vi[t, j]; Vi[t, j] = Vi[bj, j]; Vi[bj, j] = tmp
        pv = 1
        for k in range(best_v):
            pv *= p
        unit = A[t, t] // pv
        uinv = _invmod(unit, m)
        for j in range(t, ncols):
            A[t, j] = rf_mulmod(A[t, j], uinv, m)
        for j in range(nrows):
            U[t, j] = rf_mulmod(U[t, j], uinv, m)
        for i in range(t + 1, nrows):
            if A[i, t] != 0:
                q = A[i, t] // pv
                for j in range(t, ncols):
                    if A[t, j] != 0:
                        A[i, j] = _submul(A[i, j], q, A[t, j], m)
                for j in range(nrows):
                    if U[t, j] != 0:
                        U[i, j] = _submul(U[i, j], q, U[t, j], m)
        for j in range(t + 1, ncols):
            if A[t, j] != 0:
                q = A[t, j] // pv
                A[t, j] = 0
                for i in range(ncols):
                    if V[i, t] != 0:
                        V[i, j] = _submul(V[i, j], q, V[i, t], m)
                for k in range(ncols):
                    if Vi[j, k] != 0:
                        Vi[t, k] = _addmul(Vi[t, k], q, Vi[j, k], m)
        vals.append(best_v)
    return 0, vals, Un.tolist(), Vn.tolist(), Vin.tolist(), -1
