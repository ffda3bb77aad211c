"""Smith normal forms, kernels, Hermite bases and linear solving.

Over ZZ everything is exact.  Over Z/p^N the reduction pivots on minimal
valuation and refuses pivots too close to the precision (see
``GroundRing.pivot_limit``); entries that vanish mod p^N are treated as zero.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError, PrecisionExhausted
from . import backend as _backend
from .matrix import Matrix
from .rings import GroundRing


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V`` is diagonal with entries ``invariants`` (then zeros)."""

    ring: GroundRing
    invariants: tuple
    U: Matrix
    V: Matrix
    V_inv: Matrix
    valuations: tuple | None = None

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def diagonal(self, nrows, ncols) -> Matrix:
        return Matrix.diagonal(self.ring, self.invariants, nrows, ncols)


def _identity_rows(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _int_smith(M: Matrix) -> SmithForm:
    m, n = M.shape
    A = M.copy_rows()
    U = _identity_rows(m)
    V = _identity_rows(n)
    Vi = _identity_rows(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_sub(i, t, q):  # row_i -= q row_t
        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
        U[i] = [a - q * b for a, b in zip(U[i], U[t])]

    def col_sub(j, t, q):  # col_j -= q col_t
        for r in A:
            r[j] -= q * r[t]
        for r in V:
            r[j] -= q * r[t]
        Vi[t] = [a + q * b for a, b in zip(Vi[t], Vi[j])]

    invariants = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_sub(i, t, A[i][t] // piv)
            for j in range(t + 1, n):
                if A[t][j]:
                    col_sub(j, t, A[t][j] // piv)
            cand = None
            for i in range(t + 1, m):
                if A[i][t] and (cand is None or abs(A[i][t]) < cand[0]):
                    cand = (abs(A[i][t]), i, None)
            for j in range(t + 1, n):
                if A[t][j] and (cand is None or abs(A[t][j]) < cand[0]):
                    cand = (abs(A[t][j]), None, j)
            if cand is not None:
                if cand[1] is not None:
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and repeat
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        invariants.append(A[t][t])
    ring = M.ring
    return SmithForm(
        ring,
        tuple(invariants),
        Matrix._raw(ring, U, m),
        Matrix._raw(ring, V, n),
        Matrix._raw(ring, Vi, n),
    )


def _modular_smith(M: Matrix, backend=None) -> SmithForm:
    ring = M.ring
    m, n = M.shape
    limit = ring.pivot_limit
    status, vals, U, V, Vi, bad = _backend.modular_smith(
        M.rows, m, n, ring.modulus, ring.p, limit, backend=backend
    )
    if status != 0:
        raise PrecisionExhausted(
            f"pivot of valuation {bad} reaches the guard {limit} over {ring}"
        )
    p = ring.p
    invariants = tuple(p ** v % ring.modulus for v in vals)
    return SmithForm(
        ring,
        invariants,
        Matrix._raw(ring, [list(map(int, r)) for r in U], m),
        Matrix._raw(ring, [list(map(int, r)) for r in V], n),
        Matrix._raw(ring, [list(map(int, r)) for r in Vi], n),
        valuations=tuple(vals),
    )


def smith_normal_form(M: Matrix) -> SmithForm:
    """Smith normal form over ZZ with unimodular transforms."""
    if M.ring.kind != "ZZ":
        raise InputError("smith_normal_form expects an integer matrix")
    return _int_smith(M)


def dvr_smith_form(M: Matrix, backend=None) -> SmithForm:
    """Valuation-pivoting Smith form over Z/p^N or a truncated DVR.

    Invariant factors are uniformizer powers.  Among pivot candidates of equal
    valuation the lowest row, then lowest column, wins.
    """
    kind = M.ring.kind
    if kind == "Zp":
        return _modular_smith(M, backend)
    if kind == "DVR":
        from .dvr import dvr_matrix_smith

        return dvr_matrix_smith(M)
    raise InputError("dvr_smith_form expects a truncated ground ring")


def smith(M: Matrix, backend=None) -> SmithForm:
    """Dispatch on the ground ring."""
    kind = M.ring.kind
    if kind == "ZZ":
        return _int_smith(M)
    if kind in ("GF", "Zp"):
        return _modular_smith(M, backend)
    return dvr_smith_form(M)


# -- Hermite bases ------------------------------------------------------------


def hermite_rows(rows):
    """Row-style Hermite normal form of an integer lattice given by generator rows.

    Returns the nonzero rows; pivots positive, entries above each pivot reduced
    into ``[0, pivot)``.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    n = len(A[0])
    out = []
    col = 0
    while A and col < n:
        nz = [r for r in A if r[col]]
        zero = [r for r in A if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    rest.append(r)
                elif any(r):
                    zero.append(r)
            nz = [piv] + rest
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append((col, piv))
        A = zero
        col += 1
    # reduce entries above pivots
    for k in range(len(out)):
        ck, rk = out[k]
        for i in range(k):
            ci, ri = out[i]
            q = ri[ck] // rk[ck]
            if q:
                out[i] = (ci, [a - q * b for a, b in zip(ri, rk)])
    return [r for _, r in out]


def hermite_columns(M: Matrix) -> Matrix:
    """Column lattice basis in Hermite form (columns are the basis)."""
    rows = hermite_rows(M.T.rows)
    return Matrix.from_columns(M.ring, rows, M.nrows) if rows else Matrix.zeros(M.ring, M.nrows, 0)


# -- kernels and solving --------------------------------------------------------


def kernel_basis(M: Matrix) -> Matrix:
    """Columns generating the kernel of ``M`` over its ground ring.

    Over ZZ the columns form a Hermite-reduced lattice basis with positive
    pivots; over F_p a basis; over Z/p^N generators of the free kernel
    (directions killed over Z_p).
    """
    ring = M.ring
    if ring.kind == "DVR":
        raise InputError("expand DVR matrices over Z/p^N before taking kernels")
    sf = smith(M)
    n = M.ncols
    K = sf.V.submatrix(0, n, sf.rank, n)
    if ring.kind == "ZZ" and K.ncols:
        return hermite_columns(K)
    return K


def solve(M: Matrix, B: Matrix, sf: SmithForm | None = None) -> Matrix | None:
    """Some X with ``M @ X == B``, or None when no solution exists."""
    ring = M.ring
    sf = sf or smith(M)
    UB = sf.U @ B
    r = sf.rank
    rows = []
    if ring.kind == "ZZ":
        for i in range(r):
            d = sf.invariants[i]
            row = []
            for x in UB.rows[i]:
                if x % d:
                    return None
                row.append(x // d)
            rows.append(row)
        for i in range(r, M.nrows):
            if any(UB.rows[i]):
                return None
    else:
        p, mod = ring.p, ring.modulus
        limit = ring.pivot_limit
        for i in range(r):
            v = sf.valuations[i]
            pv = p ** v
            row = []
            for x in UB.rows[i]:
                if x % pv:
                    return None
                row.append(x // pv)
            rows.append(row)
        for i in range(r, M.nrows):
            for x in UB.rows[i]:
                if x:
                    vx = ring.valuation(x)
                    if vx >= limit:
                        raise PrecisionExhausted(
                            "residual of valuation near the guard; solvability undecidable"
                        )
                    return None
    nc = B.ncols
    rows += [[0] * nc for _ in range(M.ncols - r)]
    Y = Matrix._raw(ring, rows, nc)
    return sf.V @ Y


def rank(M: Matrix) -> int:
    return smith(M).rank
