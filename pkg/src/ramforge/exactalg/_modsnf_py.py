"""Pure-Python valuation-pivoting Smith reduction over Z/p^N (and F_p).

Mirrors ``_modsnf.pyx`` operation for operation; used when the compiled
extension is unavailable or the modulus does not fit in 62 bits.
"""

# status codes shared with the compiled kernel
OK = 0
PRECISION = 1


def modular_smith(A, nrows, ncols, modulus, p, limit):
    """Reduce ``A`` (list of lists, entries in [0, modulus)) in place.

    Returns ``(status, valuations, U, V, Vinv, bad_valuation)`` where
    ``U @ A0 @ V == diag(p**v for v in valuations)`` mod ``modulus``.
    """
    m = modulus
    U = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    Vi = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    vals = []
    for t in range(min(nrows, ncols)):
        best_v = -1
        bi = bj = -1
        for i in range(t, nrows):
            row = A[i]
            for j in range(t, ncols):
                x = row[j]
                if x:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    if best_v < 0 or v < best_v:
                        best_v, bi, bj = v, i, j
                        if v == 0:
                            break
            if best_v == 0:
                break
        if best_v < 0:
            break
        if best_v >= limit:
            return PRECISION, vals, U, V, Vi, best_v
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            U[t], U[bi] = U[bi], U[t]
        if bj != t:
            for row in A:
                row[t], row[bj] = row[bj], row[t]
            for row in V:
                row[t], row[bj] = row[bj], row[t]
            Vi[t], Vi[bj] = Vi[bj], Vi[t]
        pv = p ** best_v
        unit = A[t][t] // pv
        uinv = pow(unit, -1, m)
        At = A[t]
        for j in range(t, ncols):
            At[j] = At[j] * uinv % m
        Ut = U[t]
        for j in range(nrows):
            Ut[j] = Ut[j] * uinv % m
        for i in range(t + 1, nrows):
            Ai = A[i]
            if Ai[t]:
                q = Ai[t] // pv
                for j in range(t, ncols):
                    if At[j]:
                        Ai[j] = (Ai[j] - q * At[j]) % m
                Ui = U[i]
                for j in range(nrows):
                    if Ut[j]:
                        Ui[j] = (Ui[j] - q * Ut[j]) % m
        for j in range(t + 1, ncols):
            if At[j]:
                q = At[j] // pv
                At[j] = 0
                for row in V:
                    if row[t]:
                        row[j] = (row[j] - q * row[t]) % m
                Vt, Vj = Vi[t], Vi[j]
                for k in range(ncols):
                    if Vj[k]:
                        Vt[k] = (Vt[k] + q * Vj[k]) % m
        vals.append(best_v)
    return OK, vals, U, V, Vi, -1
