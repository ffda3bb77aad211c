"""Finite-rank based algebras over a ground ring and modules presented over them."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, VerificationFailure
from ..exactalg.matrix import Matrix, block_matrix
from ..exactalg.poly import bivar_reduce, pmod
from ..exactalg.rings import GroundRing


class BasedAlgebra:
    """Algebra free of rank n over ``ring`` with basis b_0 (= 1 by default), ..., b_{n-1}.

    ``table[i][j]`` is the coordinate vector of b_i * b_j.  Associativity and
    unitality are checked on construction; commutativity is recorded.
    """

    def __init__(self, ring: GroundRing, table, unit=None, name: str = "", check: bool = True):
        self.ring = ring
        self.n = len(table)
        self.table = [[[ring(c) for c in table[i][j]] for j in range(self.n)] for i in range(self.n)]
        self.unit = [ring(c) for c in unit] if unit is not None else [ring(1)] + [ring(0)] * (self.n - 1)
        self.name = name
        self._action_cache: dict = {}
        if check:
            self._check()
        self.commutative = all(
            self.table[i][j] == self.table[j][i] for i in range(self.n) for j in range(i)
        )

    # -- constructors ---------------------------------------------------------
    @classmethod
    def ground(cls, ring: GroundRing) -> "BasedAlgebra":
        return cls(ring, [[[1]]], name=str(ring))

    @classmethod
    def monogenic(cls, ring: GroundRing, f) -> "BasedAlgebra":
        """ring[x]/(f) with basis 1, x, ..., x^(d-1); f constant-first and monic."""
        d = len(f) - 1
        m = ring.modulus
        table = []
        for i in range(d):
            row = []
            for j in range(d):
                r = pmod([0] * (i + j) + [1], list(f), m)
                row.append(r + [0] * (d - len(r)))
            table.append(row)
        return cls(ring, table, name=f"{ring}[x]/({list(f)})", check=False)

    @classmethod
    def tensor_square(cls, ring: GroundRing, f) -> "BasedAlgebra":
        """ring[x, y]/(f(x), f(y)); basis x^i y^j at index i*d + j."""
        d = len(f) - 1
        m = ring.modulus
        table = []
        for a in range(d * d):
            i, j = divmod(a, d)
            row = []
            for b in range(d * d):
                k, l = divmod(b, d)
                row.append(bivar_reduce({(i + k, j + l): 1}, f, m).coeffs())
            table.append(row)
        return cls(ring, table, name=f"{ring}[x,y]/(f(x),f(y)), f={list(f)}", check=False)

    # -- arithmetic -------------------------------------------------------------
    def mul(self, x, y):
        ring = self.ring
        add, mul = ring.add, ring.mul
        out = [ring.zero()] * self.n
        for i, a in enumerate(x):
            if ring.is_zero(a):
                continue
            for j, b in enumerate(y):
                if ring.is_zero(b):
                    continue
                ab = mul(a, b)
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] = add(out[k], mul(ab, c))
        return out

    def basis_vector(self, i):
        v = [self.ring(0)] * self.n
        v[i] = self.ring(1)
        return v

    def action_matrix(self, x) -> Matrix:
        """Ground matrix of y -> x*y."""
        key = tuple(x)
        M = self._action_cache.get(key)
        if M is None:
            cols = [self.mul(x, self.basis_vector(j)) for j in range(self.n)]
            M = Matrix.from_columns(self.ring, cols, self.n)
            self._action_cache[key] = M
        return M

    def _check(self):
        n = self.n
        for i in range(n):
            bi = self.basis_vector(i)
            if self.mul(self.unit, bi) != bi or self.mul(bi, self.unit) != bi:
                raise VerificationFailure(f"unit fails on basis element {i}")
            for j in range(n):
                bij = self.mul(bi, self.basis_vector(j))
                for k in range(n):
                    bk = self.basis_vector(k)
                    if self.mul(bij, bk) != self.mul(bi, self.mul(self.basis_vector(j), bk)):
                        raise VerificationFailure(f"associativity fails at ({i},{j},{k})")

    def check(self):
        self._check()
        return True

    def __repr__(self):
        return f"BasedAlgebra({self.name or self.ring}, rank={self.n})"


# -- free modules -------------------------------------------------------------


def lambda_span(alg: BasedAlgebra, vec, ngens: int):
    """Ground generators b_i * vec of the cyclic submodule of alg^ngens."""
    n = alg.n
    out = []
    for i in range(n):
        bi = alg.basis_vector(i)
        w = []
        for g in range(ngens):
            w.extend(alg.mul(bi, vec[g * n:(g + 1) * n]))
        out.append(w)
    return out


def scalar_times(alg: BasedAlgebra, lam, vec, ngens: int):
    n = alg.n
    out = []
    for g in range(ngens):
        out.extend(alg.mul(lam, vec[g * n:(g + 1) * n]))
    return out


def expand_map(alg: BasedAlgebra, images, target_gens: int) -> Matrix:
    """Ground matrix of the Lambda-linear map alg^len(images) -> alg^target_gens.

    ``images[j]`` is the image of generator j in ground coordinates
    (generator-major: index = gen * n + basis).
    """
    n = alg.n
    cols = []
    for img in images:
        cols.extend(lambda_span(alg, img, target_gens))
    return Matrix.from_columns(alg.ring, cols, target_gens * n) if cols else Matrix.zeros(
        alg.ring, target_gens * n, 0
    )


@dataclass
class PresentedModule:
    """alg^ngens modulo the Lambda-submodule generated by ``relations``."""

    algebra: BasedAlgebra
    ngens: int
    relations: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        size = self.ngens * self.algebra.n
        rels = []
        for r in self.relations:
            if len(r) != size:
                raise InputError(f"relation of length {len(r)} does not lie in a free module of rank {size}")
            rels.append([self.algebra.ring(c) for c in r])
        self.relations = rels

    @property
    def ground_rank(self) -> int:
        return self.ngens * self.algebra.n

    def relation_matrix(self) -> Matrix:
        """Ground matrix whose columns span the relation submodule."""
        cols = []
        for r in self.relations:
            cols.extend(lambda_span(self.algebra, r, self.ngens))
        return Matrix.from_columns(self.algebra.ring, cols, self.ground_rank) if cols else Matrix.zeros(
            self.algebra.ring, self.ground_rank, 0
        )

    def ground_group(self):
        """The module as an abelian group (or Z_p / F_p module)."""
        from ..exactalg.finab import FinAbGroup
        from ..exactalg.smith import smith

        M = self.relation_matrix()
        return FinAbGroup.from_smith(smith(M).invariants, M.nrows)

    @classmethod
    def free(cls, alg, rank=1):
        return cls(alg, rank, [], name=f"free^{rank}")

    @classmethod
    def cyclic(cls, alg, relations, name=""):
        """alg / (relations), each relation a ground vector of length n."""
        return cls(alg, 1, list(relations), name=name)


def block_expand(alg: BasedAlgebra, lam_matrix) -> Matrix:
    """Ground matrix of a Lambda-matrix given entrywise (rows x cols of Lambda elements)."""
    grid = [[alg.action_matrix(x) for x in row] for row in lam_matrix]
    return block_matrix(alg.ring, grid)
