"""Linear algebra over a truncated Eisenstein DVR A = R[pi]/(f(pi)), R = Z/p^N."""
from __future__ import annotations

from ..errors import InputError, PrecisionExhausted
from .matrix import Matrix, block_matrix
from .rings import GroundRing


def mult_matrix(ring: GroundRing, a) -> Matrix:
    """R-matrix of multiplication by ``a`` on the basis 1, pi, ..., pi^(e-1)."""
    base = ring.base()
    e = ring.e
    cols = []
    for j in range(e):
        basis = [0] * e
        basis[j] = 1
        cols.append(list(ring.mul(a, ring(basis))))
    return Matrix.from_columns(base, cols, e)


def expand(M: Matrix) -> Matrix:
    """Replace each DVR entry by its e-by-e multiplication block over R."""
    ring = M.ring
    if ring.kind != "DVR":
        raise InputError("expand() needs a DVR matrix")
    base = ring.base()
    if M.nrows == 0 or M.ncols == 0:
        return Matrix.zeros(base, M.nrows * ring.e, M.ncols * ring.e)
    return block_matrix(base, [[mult_matrix(ring, x) for x in row] for row in M.rows])


def divide(ring: GroundRing, b, a):
    """Some q with q*a == b, assuming v(b) >= v(a)."""
    from .smith import solve

    A = mult_matrix(ring, a)
    B = Matrix.from_columns(ring.base(), [list(b)], ring.e)
    X = solve(A, B)
    if X is None:
        raise InputError("DVR division is not exact")
    return ring(X.column(0))


def dvr_matrix_smith(M: Matrix):
    from .smith import SmithForm

    ring = M.ring
    limit = ring.pivot_limit
    m, n = M.shape
    A = M.copy_rows()
    one, zero = ring.one(), ring.zero()
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Vi = [[one if i == j else zero for j in range(n)] for i in range(n)]
    add, sub, mul = ring.add, ring.sub, ring.mul
    pi = ring.uniformizer()
    invariants, vals = [], []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = ring.valuation(A[i][j])
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, bi, bj = best
        if v >= limit:
            raise PrecisionExhausted(f"pivot of pi-valuation {v} reaches the guard {limit}")
        A[t], A[bi] = A[bi], A[t]
        U[t], U[bi] = U[bi], U[t]
        for r in A:
            r[t], r[bj] = r[bj], r[t]
        for r in V:
            r[t], r[bj] = r[bj], r[t]
        Vi[t], Vi[bj] = Vi[bj], Vi[t]
        piv_target = ring.one()
        for _ in range(v):
            piv_target = mul(piv_target, pi)
        unit = divide(ring, A[t][t], piv_target)
        uinv = ring.unit_inverse(unit)
        A[t] = [mul(uinv, x) for x in A[t]]
        U[t] = [mul(uinv, x) for x in U[t]]
        piv = A[t][t]
        for i in range(t + 1, m):
            if not ring.is_zero(A[i][t]):
                q = divide(ring, A[i][t], piv)
                A[i] = [sub(x, mul(q, y)) for x, y in zip(A[i], A[t])]
                U[i] = [sub(x, mul(q, y)) for x, y in zip(U[i], U[t])]
        for j in range(t + 1, n):
            if not ring.is_zero(A[t][j]):
                q = divide(ring, A[t][j], piv)
                for r in A:
                    r[j] = sub(r[j], mul(q, r[t]))
                for r in V:
                    r[j] = sub(r[j], mul(q, r[t]))
                Vi[t] = [add(x, mul(q, y)) for x, y in zip(Vi[t], Vi[j])]
        invariants.append(piv)
        vals.append(v)
    return SmithForm(
        ring,
        tuple(invariants),
        Matrix._raw(ring, U, m),
        Matrix._raw(ring, V, n),
        Matrix._raw(ring, Vi, n),
        valuations=tuple(vals),
    )
