"""Free resolutions over based algebras, Tor, and lifting of module maps."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, NoLift, ResourceLimit
from ..exactalg.lattice import Lattice
from ..exactalg.matrix import Matrix
from ..exactalg.smith import kernel_basis, solve
from .algebra import BasedAlgebra, PresentedModule, expand_map, lambda_span, scalar_times
from .complexes import ChainComplex, ChainMap

MAX_GROUND_RANK = 4096


@dataclass
class Resolution:
    """P_depth -> ... -> P_0 -> M with P_k = Lambda^gens[k].

    ``images[k]`` lists, for each generator of P_k (k >= 1), its image in
    P_{k-1} in ground coordinates.  ``complex`` is the ground-level complex.
    ``complete`` is True when the resolution terminated (next kernel zero).
    """

    module: PresentedModule
    gens: list
    images: list
    complex: ChainComplex
    complete: bool = False
    depth: int = 0

    @property
    def algebra(self) -> BasedAlgebra:
        return self.module.algebra

    def lambda_ranks(self):
        return list(self.gens)


def _greedy_generators(alg: BasedAlgebra, candidates, ngens: int):
    """Pick Lambda-module generators among ``candidates`` greedily.

    A candidate is kept only if it is not already in the ground span of the
    Lambda-multiples of the ones chosen so far.
    """
    lat = Lattice(alg.ring, ngens * alg.n)
    chosen = []
    for v in candidates:
        v = [alg.ring(x) for x in v]
        if not any(v) or lat.contains(v):
            continue
        chosen.append(v)
        for w in lambda_span(alg, v, ngens):
            lat.add(w)
    return chosen


def free_resolution(M: PresentedModule, depth: int) -> Resolution:
    """Free resolution of M up to homological degree ``depth``."""
    alg = M.algebra
    if depth < 0:
        raise InputError("depth must be non-negative")
    n = alg.n
    R = alg.ring
    gens = [M.ngens]
    images = [None]
    diffs = {}
    complete = False
    rels = _greedy_generators(alg, M.relations, M.ngens)
    for k in range(1, depth + 1):
        if k == 1:
            new = rels
        else:
            K = kernel_basis(diffs[k - 1])
            new = _greedy_generators(alg, K.columns(), gens[k - 1])
        if not new:
            complete = True
            break
        if len(new) * n > MAX_GROUND_RANK:
            raise ResourceLimit(f"resolution rank {len(new) * n} exceeds {MAX_GROUND_RANK}")
        gens.append(len(new))
        images.append(new)
        diffs[k] = expand_map(alg, new, gens[k - 1])
    if not complete:
        # one more kernel test decides whether the resolution stops here
        if depth == 0:
            complete = not rels
        else:
            complete = kernel_basis(diffs[depth]).ncols == 0
    ranks = {k: g * n for k, g in enumerate(gens)}
    C = ChainComplex(R, ranks, diffs, name=f"res({M.name})")
    return Resolution(M, gens, images, C, complete, depth)


def tensor_resolutions(P: Resolution, Q: Resolution) -> ChainComplex:
    """Total complex of P tensor_Lambda Q for a commutative Lambda.

    Generator (i, j) of P_a (x) Q_b is e_i (x) e'_j; d = d_P (x) 1 + (-1)^a 1 (x) d_Q.
    """
    alg = P.algebra
    if alg is not Q.algebra:
        raise InputError("resolutions over different algebras")
    if not alg.commutative:
        raise InputError("tensor product over a non-commutative algebra is not supported")
    n, R = alg.n, alg.ring
    top = (len(P.gens) - 1) + (len(Q.gens) - 1)
    index = {}
    ranks = {}
    for k in range(top + 1):
        slots = []
        for a in range(len(P.gens)):
            b = k - a
            if 0 <= b < len(Q.gens):
                for i in range(P.gens[a]):
                    for j in range(Q.gens[b]):
                        slots.append((a, i, j))
        index[k] = {s: t for t, s in enumerate(slots)}
        ranks[k] = len(slots)
    diffs = {}
    for k in range(1, top + 1):
        tgt = index[k - 1]
        images = []
        for (a, i, j), _ in sorted(index[k].items(), key=lambda kv: kv[1]):
            b = k - a
            img = [R(0)] * (len(tgt) * n)
            if a >= 1:
                col = P.images[a][i]  # image of e_i in P_{a-1}
                for i2 in range(P.gens[a - 1]):
                    t = tgt[(a - 1, i2, j)]
                    img[t * n:(t + 1) * n] = [R.add(x, y) for x, y in zip(img[t * n:(t + 1) * n], col[i2 * n:(i2 + 1) * n])]
            if b >= 1:
                col = Q.images[b][j]
                sign = -1 if a % 2 else 1
                for j2 in range(Q.gens[b - 1]):
                    t = tgt[(a, i, j2)]
                    piece = col[j2 * n:(j2 + 1) * n]
                    if sign < 0:
                        piece = [R.neg(x) for x in piece]
                    img[t * n:(t + 1) * n] = [R.add(x, y) for x, y in zip(img[t * n:(t + 1) * n], piece)]
            images.append(img)
        if images and len(tgt):
            diffs[k] = expand_map(alg, images, len(tgt))
    return ChainComplex(R, {k: r * n for k, r in ranks.items()}, diffs, name="P(x)Q")


def tor(M: PresentedModule, N: PresentedModule, depth: int):
    """Tor^Lambda_k(M, N) for 0 <= k <= depth, as ground-ring groups.

    Computed as the homology of P (x)_Lambda Q for free resolutions of length
    depth + 1, which is correct in degrees below that length.
    """
    from .complexes import homology

    P = free_resolution(M, depth + 1)
    Q = free_resolution(N, depth + 1)
    T = tensor_resolutions(P, Q)
    return homology(T, range(0, depth + 1))


def lift_chain_map(f_images, PM: Resolution, PN: Resolution, depth: int | None = None) -> ChainMap:
    """Lift a module map M -> N to a chain map of resolutions.

    ``f_images[j]`` is the image of generator j of M in P^N_0 (ground coordinates).
    Raises NoLift if the given map does not respect relations.
    """
    alg = PM.algebra
    R = alg.ring
    depth = min(len(PM.gens), len(PN.gens)) - 1 if depth is None else depth
    X, Y = PM.complex, PN.complex
    maps = {0: expand_map(alg, [list(v) for v in f_images], PN.gens[0])}
    for k in range(1, depth + 1):
        if k >= len(PM.gens):
            break
        target_gens = PN.gens[k] if k < len(PN.gens) else 0
        imgs = []
        for v in PM.images[k]:
            w = maps[k - 1].apply(v)
            if target_gens == 0:
                if any(w):
                    raise NoLift(f"no lift in degree {k}: target resolution stops")
                imgs.append([])
                continue
            # solve d^N_k (u) = w for u in P^N_k
            B = Matrix.from_columns(R, [w], Y.rank(k - 1))
            sol = solve(Y.d(k), B)
            if sol is None:
                raise NoLift(f"no lift in degree {k}")
            imgs.append(sol.column(0))
        if target_gens == 0:
            maps[k] = Matrix.zeros(R, 0, X.rank(k))
        else:
            maps[k] = expand_map(alg, imgs, target_gens)
    # truncate complexes to the lifted range so the commutation check is meaningful
    top = max(maps)
    Xt = ChainComplex(R, {k: X.rank(k) for k in range(top + 1)}, {k: X.d(k) for k in range(1, top + 1) if k in X.diffs}, check=False)
    Yt = ChainComplex(R, {k: Y.rank(k) for k in range(top + 1)}, {k: Y.d(k) for k in range(1, top + 1) if k in Y.diffs}, check=False)
    for k in range(top + 1):
        if maps[k].shape != (Yt.rank(k), Xt.rank(k)):
            maps[k] = Matrix.zeros(R, Yt.rank(k), Xt.rank(k))
    return ChainMap(Xt, Yt, maps)


def lift_along(PS: Resolution, PT: Resolution, embed: Matrix, depth: int | None = None) -> ChainMap:
    """Lift the identity of generators along an algebra map S -> T.

    ``embed`` is the ground matrix (T.n x S.n) of the algebra map.  Both
    resolutions must share the ground ring and have the same number of
    generators in degree 0; generator j of P^S_0 goes to generator j of P^T_0.
    In degree k each S-generator is sent to a solution of d^T u = phi(d^S e),
    and the map is extended S-linearly through T-multiplication.
    """
    S, T = PS.algebra, PT.algebra
    R = T.ring
    if S.ring != R:
        raise InputError("resolutions over different ground rings")
    if PS.gens[0] != PT.gens[0]:
        raise InputError("modules have different numbers of generators")
    if embed.shape != (T.n, S.n):
        raise InputError("embedding matrix has the wrong shape")
    X, Y = PS.complex, PT.complex
    depth = len(PS.gens) - 1 if depth is None else min(depth, len(PS.gens) - 1)
    emb = [embed.column(s) for s in range(S.n)]

    def extend(us, tgt_gens):
        cols = []
        for u in us:
            for s in range(S.n):
                cols.append(scalar_times(T, emb[s], u, tgt_gens))
        return Matrix.from_columns(R, cols, tgt_gens * T.n) if cols else Matrix.zeros(R, tgt_gens * T.n, 0)

    unit_imgs = []
    for j in range(PS.gens[0]):
        u = [R(0)] * (PT.gens[0] * T.n)
        u[j * T.n:(j + 1) * T.n] = T.unit
        unit_imgs.append(u)
    maps = {0: extend(unit_imgs, PT.gens[0])}
    for k in range(1, depth + 1):
        tgt_gens = PT.gens[k] if k < len(PT.gens) else 0
        us = []
        for v in PS.images[k]:
            w = maps[k - 1].apply(v)
            if tgt_gens == 0:
                if any(w):
                    raise NoLift(f"no lift in degree {k}: target resolution stops")
                us.append([])
                continue
            sol = solve(Y.d(k), Matrix.from_columns(R, [w], Y.rank(k - 1)))
            if sol is None:
                raise NoLift(f"no lift in degree {k}")
            us.append(sol.column(0))
        maps[k] = extend(us, tgt_gens) if tgt_gens else Matrix.zeros(R, 0, X.rank(k))
    top = max(maps)
    Xt = ChainComplex(R, {k: X.rank(k) for k in range(top + 1)}, {k: X.d(k) for k in range(1, top + 1) if k in X.diffs}, check=False)
    Yt = ChainComplex(R, {k: Y.rank(k) for k in range(top + 1)}, {k: Y.d(k) for k in range(1, top + 1) if k in Y.diffs}, check=False)
    return ChainMap(Xt, Yt, maps)
