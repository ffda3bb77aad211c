"""Dense matrices over a single GroundRing."""
from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import InputError
from .rings import GroundRing


class Matrix:
    """Rectangular matrix; entries are canonical scalars of ``ring``.

    Treated as immutable: every operation returns a new matrix.
    """

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: GroundRing, rows: Iterable[Sequence], ncols: int | None = None):
        self.ring = ring
        data = [[ring(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise InputError("ragged matrix rows")
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def _raw(cls, ring, rows, ncols):
        # trusted constructor: rows already canonical
        m = object.__new__(cls)
        m.ring = ring
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls._raw(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        m = cls.zeros(ring, n, n)
        for i in range(n):
            m.rows[i][i] = ring.one()
        return m

    @classmethod
    def from_columns(cls, ring, cols, nrows):
        cols = [list(c) for c in cols]
        rows = [[ring(c[i]) for c in cols] for i in range(nrows)]
        return cls._raw(ring, rows, len(cols))

    @classmethod
    def diagonal(cls, ring, entries, nrows=None, ncols=None):
        entries = list(entries)
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        m = cls.zeros(ring, nrows, ncols)
        for i, x in enumerate(entries):
            m.rows[i][i] = ring(x)
        return m

    # -- access ---------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self):
        return [list(r) for r in self.rows]

    def copy_rows(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.shape, tuple(map(tuple, self.rows))))

    def __repr__(self):
        return f"Matrix({self.ring}, {self.rows})"

    def is_zero(self) -> bool:
        iz = self.ring.is_zero
        return all(iz(x) for r in self.rows for x in r)

    # -- arithmetic -----------------------------------------------------------
    def _check_same(self, other):
        if self.ring != other.ring:
            raise InputError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_same(other)
        if self.shape != other.shape:
            raise InputError("shape mismatch in addition")
        add = self.ring.add
        return Matrix._raw(
            self.ring,
            [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self):
        neg = self.ring.neg
        return Matrix._raw(self.ring, [[neg(a) for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        mul = self.ring.mul
        c = self.ring(c) if isinstance(c, int) else c
        return Matrix._raw(self.ring, [[mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        self._check_same(other)
        if self.ncols != other.nrows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        ring = self.ring
        if ring.kind == "DVR":
            add, mul, z = ring.add, ring.mul, ring.zero()
            cols = other.columns()
            rows = []
            for r in self.rows:
                out = []
                for c in cols:
                    acc = z
                    for a, b in zip(r, c):
                        if any(a) and any(b):
                            acc = add(acc, mul(a, b))
                    out.append(acc)
                rows.append(out)
            return Matrix._raw(ring, rows, other.ncols)
        m = ring.modulus
        orows = other.rows
        n = other.ncols
        rows = []
        for r in self.rows:
            acc = [0] * n
            for a, orow in zip(r, orows):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            if m is not None:
                acc = [x % m for x in acc]
            rows.append(acc)
        return Matrix._raw(ring, rows, n)

    def apply(self, vec: Sequence):
        """Matrix-vector product, returning a list."""
        col = Matrix._raw(self.ring, [[x] for x in vec], 1)
        return [r[0] for r in (self @ col).rows]

    @property
    def T(self):
        return Matrix._raw(
            self.ring, [[r[j] for r in self.rows] for j in range(self.ncols)], self.nrows
        )

    def submatrix(self, r0, r1, c0, c1):
        return Matrix._raw(self.ring, [r[c0:c1] for r in self.rows[r0:r1]], c1 - c0)

    def select_columns(self, idx):
        return Matrix._raw(self.ring, [[r[j] for j in idx] for r in self.rows], len(idx))

    def select_rows(self, idx):
        return Matrix._raw(self.ring, [list(self.rows[i]) for i in idx], self.ncols)

    def change_ring(self, ring: GroundRing):
        """Reduce (or lift canonically) every entry into another int ring."""
        return Matrix(ring, self.rows, self.ncols)


def hstack(ring, blocks, nrows=None):
    blocks = list(blocks)
    if not blocks:
        return Matrix.zeros(ring, nrows or 0, 0)
    nrows = blocks[0].nrows
    if any(b.nrows != nrows for b in blocks):
        raise InputError("hstack row mismatch")
    rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(nrows)]
    return Matrix._raw(ring, rows, sum(b.ncols for b in blocks))


def vstack(ring, blocks, ncols=None):
    blocks = list(blocks)
    if not blocks:
        return Matrix.zeros(ring, 0, ncols or 0)
    ncols = blocks[0].ncols
    if any(b.ncols != ncols for b in blocks):
        raise InputError("vstack column mismatch")
    rows = [list(r) for b in blocks for r in b.rows]
    return Matrix._raw(ring, rows, ncols)


def block_matrix(ring, grid):
    """Assemble a block matrix from a grid of Matrix blocks (None = zero)."""
    heights = []
    for row in grid:
        h = next((b.nrows for b in row if b is not None), None)
        if h is None:
            raise InputError("block row needs at least one sized block")
        heights.append(h)
    widths = []
    for j in range(len(grid[0])):
        w = next((row[j].ncols for row in grid if row[j] is not None), None)
        if w is None:
            raise InputError("block column needs at least one sized block")
        widths.append(w)
    out_rows = []
    for row, h in zip(grid, heights):
        parts = [b if b is not None else Matrix.zeros(ring, h, w) for b, w in zip(row, widths)]
        out_rows.extend(hstack(ring, parts).rows)
    return Matrix._raw(ring, out_rows, sum(widths))


def block_diag(ring, blocks):
    blocks = list(blocks)
    n = len(blocks)
    grid = [
        [
            blocks[i] if i == j else Matrix.zeros(ring, blocks[i].nrows, blocks[j].ncols)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return block_matrix(ring, grid) if n else Matrix.zeros(ring, 0, 0)
