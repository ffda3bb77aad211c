"""Bounded chain complexes of finite free modules, chain maps and homology."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ComplexError, InputError, VerificationFailure
from ..exactalg.finab import FinAbGroup
from ..exactalg.matrix import Matrix, block_matrix, hstack
from ..exactalg.rings import GroundRing
from ..exactalg.smith import kernel_basis, smith, solve


class ChainComplex:
    """Free modules C_n = R^ranks[n] for lo <= n <= hi with d_n: C_n -> C_{n-1}.

    Degrees may be negative.  Missing differentials are zero.  The identity
    d_{n-1} d_n = 0 is checked on construction unless ``check=False``.
    """

    def __init__(self, ring: GroundRing, ranks: dict, diffs: dict | None = None, check: bool = True, name: str = ""):
        if ring.kind == "DVR":
            raise InputError("expand DVR complexes over Z/p^N first")
        self.ring = ring
        self.name = name
        ranks = {int(k): int(v) for k, v in ranks.items()}
        if not ranks:
            ranks = {0: 0}
        self.lo = min(ranks)
        self.hi = max(ranks)
        self.ranks = {n: ranks.get(n, 0) for n in range(self.lo, self.hi + 1)}
        self.diffs = {}
        for n, D in (diffs or {}).items():
            if D.ring != ring:
                raise InputError(f"differential d_{n} lives over {D.ring}, not {ring}")
            if D.shape != (self.rank(n - 1), self.rank(n)):
                raise ComplexError(
                    f"d_{n} has shape {D.shape}, expected {(self.rank(n - 1), self.rank(n))}"
                )
            self.diffs[n] = D
        if check:
            self.check()

    @classmethod
    def from_list(cls, ring, lo, ranks, diffs=None, **kw):
        """ranks[i] is the rank in degree lo + i; diffs maps degree -> matrix."""
        return cls(ring, {lo + i: r for i, r in enumerate(ranks)}, diffs or {}, **kw)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def rank(self, n) -> int:
        return self.ranks.get(n, 0)

    def d(self, n) -> Matrix:
        D = self.diffs.get(n)
        if D is None:
            D = Matrix.zeros(self.ring, self.rank(n - 1), self.rank(n))
        return D

    def check(self):
        for n in range(self.lo + 1, self.hi + 1):
            if n in self.diffs and (n - 1) in self.diffs:
                if not (self.d(n - 1) @ self.d(n)).is_zero():
                    raise ComplexError(f"d_{n - 1} d_{n} != 0")
        return True

    def is_zero(self):
        return all(r == 0 for r in self.ranks.values())

    def __repr__(self):
        rk = ", ".join(f"{n}:{r}" for n, r in self.ranks.items())
        return f"ChainComplex({self.name or self.ring}; {rk})"


@dataclass
class HomologyResult:
    """Homology groups by degree, plus cycle/boundary data for later checks."""

    ring: GroundRing
    groups: dict = field(default_factory=dict)

    def __getitem__(self, n) -> FinAbGroup:
        return self.groups.get(n, FinAbGroup.trivial())

    def is_acyclic(self) -> bool:
        return all(g.is_trivial for g in self.groups.values())

    def nonzero(self) -> dict:
        return {n: g for n, g in self.groups.items() if not g.is_trivial}

    def dims(self) -> dict:
        """Degree -> dimension, for F_p-vector spaces (GF ground or exponent p)."""
        out = {}
        for n, g in self.groups.items():
            if self.ring.kind == "GF":
                out[n] = g.free_rank
            else:
                out[n] = g.dim_over(self.ring.p)
        return out

    def to_json(self) -> dict:
        return {str(n): g.to_json() for n, g in sorted(self.groups.items())}


def homology_at(C: ChainComplex, n: int) -> FinAbGroup:
    """H_n(C) from the Smith form of d_n and the reduced image of d_{n+1}."""
    cn = C.rank(n)
    if cn == 0:
        return FinAbGroup.trivial()
    sf = smith(C.d(n))
    r = sf.rank
    X = (sf.V_inv @ C.d(n + 1)).submatrix(r, cn, 0, C.rank(n + 1))
    sx = smith(X)
    return FinAbGroup.from_smith(sx.invariants, cn - r)


def homology(C: ChainComplex, degrees=None) -> HomologyResult:
    degs = C.degrees() if degrees is None else degrees
    return HomologyResult(C.ring, {n: homology_at(C, n) for n in degs})


def cycles(C: ChainComplex, n: int) -> Matrix:
    """Columns generating the cycles Z_n."""
    return kernel_basis(C.d(n))


def boundaries(C: ChainComplex, n: int) -> Matrix:
    """Columns generating the boundaries B_n (the image of d_{n+1})."""
    return C.d(n + 1)


def is_cycle(C: ChainComplex, n: int, z) -> bool:
    return all(C.ring.is_zero(x) for x in C.d(n).apply(list(z)))


def is_boundary(C: ChainComplex, n: int, z) -> bool:
    """Whether the chain ``z`` in C_n lies in the image of d_{n+1}."""
    B = Matrix.from_columns(C.ring, [list(z)], C.rank(n))
    return solve(C.d(n + 1), B) is not None


class ChainMap:
    """Degree-preserving maps f_n: X_n -> Y_n commuting with differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: dict, check: bool = True, name: str = ""):
        if source.ring != target.ring:
            raise InputError("chain map between complexes over different rings")
        self.source = source
        self.target = target
        self.ring = source.ring
        self.name = name
        self.maps = {}
        for n, M in maps.items():
            if M.shape != (target.rank(n), source.rank(n)):
                raise InputError(f"f_{n} has shape {M.shape}, expected {(target.rank(n), source.rank(n))}")
            self.maps[n] = M
        if check:
            self.check()

    def f(self, n) -> Matrix:
        M = self.maps.get(n)
        if M is None:
            M = Matrix.zeros(self.ring, self.target.rank(n), self.source.rank(n))
        return M

    def degrees(self):
        return range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 1)

    def check(self):
        X, Y = self.source, self.target
        for n in self.degrees():
            left = Y.d(n) @ self.f(n)
            right = self.f(n - 1) @ X.d(n)
            if left != right:
                raise VerificationFailure(f"chain map fails to commute with d in degree {n}")
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        degs = set(self.maps) | set(other.maps)
        return ChainMap(other.source, self.target, {n: self.f(n) @ other.f(n) for n in degs}, check=False)


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, {n: Matrix.identity(C.ring, C.rank(n)) for n in C.degrees()}, check=False)


def mapping_fiber(phi: ChainMap) -> ChainComplex:
    """Fiber F of phi: X -> Y with F_n = X_n + Y_{n+1} and D(x, y) = (dx, phi(x) - dy).

    Its homology sits in a long exact sequence
    ... -> H_n(F) -> H_n(X) -> H_n(Y) -> H_{n-1}(F) -> ...
    where the connecting map sends a cycle y to (0, y).
    """
    X, Y, R = phi.source, phi.target, phi.ring
    lo = min(X.lo, Y.lo - 1)
    hi = max(X.hi, Y.hi - 1)
    ranks = {n: X.rank(n) + Y.rank(n + 1) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        a, b = X.rank(n), Y.rank(n + 1)
        c, d = X.rank(n - 1), Y.rank(n)
        if (a + b) == 0 or (c + d) == 0:
            continue
        top = hstack(R, [X.d(n), Matrix.zeros(R, c, b)])
        bottom = hstack(R, [phi.f(n), -Y.d(n + 1)])
        diffs[n] = Matrix._raw(R, top.rows + bottom.rows, a + b)
    return ChainComplex(R, ranks, diffs, name=f"fib({phi.name})" if phi.name else "fiber")


def fiber_projection(phi: ChainMap, F: ChainComplex | None = None) -> ChainMap:
    """The chain map F -> X, (x, y) -> x."""
    F = F or mapping_fiber(phi)
    X, Y, R = phi.source, phi.target, phi.ring
    maps = {}
    for n in F.degrees():
        a, b = X.rank(n), Y.rank(n + 1)
        maps[n] = hstack(R, [Matrix.identity(R, a), Matrix.zeros(R, a, b)]) if a + b else Matrix.zeros(R, a, 0)
    return ChainMap(F, X, maps, check=True)


def connecting_matrix(phi: ChainMap, F: ChainComplex, n: int) -> Matrix:
    """Y_n -> F_{n-1} = X_{n-1} + Y_n, y -> (0, y)."""
    X, Y, R = phi.source, phi.target, phi.ring
    a, b = X.rank(n - 1), Y.rank(n)
    return Matrix._raw(R, Matrix.zeros(R, a, b).rows + Matrix.identity(R, b).rows, b)


def shift(C: ChainComplex, k: int) -> ChainComplex:
    """C[k]: degree n of the result is degree n - k of C, differentials negated when k is odd."""
    sign = -1 if k % 2 else 1
    ranks = {n + k: r for n, r in C.ranks.items()}
    diffs = {n + k: (D if sign == 1 else -D) for n, D in C.diffs.items()}
    return ChainComplex(C.ring, ranks, diffs, check=False)


def direct_sum_complex(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    R = A.ring
    lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
    ranks = {n: A.rank(n) + B.rank(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        if ranks[n] and ranks[n - 1]:
            grid = [[A.d(n), Matrix.zeros(R, A.rank(n - 1), B.rank(n))],
                    [Matrix.zeros(R, B.rank(n - 1), A.rank(n)), B.d(n)]]
            diffs[n] = _block2(R, grid, ranks[n - 1], ranks[n])
    return ChainComplex(R, ranks, diffs, check=False)


def _block2(R, grid, nrows, ncols):
    rows = []
    for brow in grid:
        h = brow[0].nrows
        for i in range(h):
            rows.append([x for b in brow for x in b.rows[i]])
    return Matrix._raw(R, rows, ncols)


def tensor_with_field(C: ChainComplex, p: int) -> ChainComplex:
    """C reduced modulo p, as a complex over F_p."""
    k = GroundRing.prime_field(p)
    return ChainComplex(k, dict(C.ranks), {n: D.change_ring(k) for n, D in C.diffs.items()})


__all__ = [
    "ChainComplex",
    "ChainMap",
    "HomologyResult",
    "block_matrix",
    "boundaries",
    "connecting_matrix",
    "cycles",
    "direct_sum_complex",
    "fiber_projection",
    "homology",
    "homology_at",
    "identity_map",
    "is_boundary",
    "is_cycle",
    "mapping_fiber",
    "shift",
    "tensor_with_field",
]
