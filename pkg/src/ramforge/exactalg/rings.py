"""Ground rings: Z, F_p, Z/p^N as a truncated Z_p, and truncated Eisenstein DVRs.

Scalars over the first three are plain Python ints kept in canonical residue
form.  Scalars over a truncated DVR are tuples ``(a_0, ..., a_{e-1})`` standing
for ``sum a_i pi^i`` with every ``a_i`` reduced mod p^N.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, PrecisionExhausted

DEFAULT_GUARD = 4


def vp(x: int, p: int) -> int | None:
    """p-adic valuation of an integer; None for zero."""
    if x == 0:
        return None
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GroundRing:
    kind: str  # "ZZ" | "GF" | "Zp" | "DVR"
    p: int | None = None
    N: int | None = None
    e: int = 1
    # reduction data for DVR scalars: pi^e = sum relation[i] pi^i
    relation: tuple = field(default=(), compare=True)
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.kind not in ("ZZ", "GF", "Zp", "DVR"):
            raise InputError(f"unknown ground ring kind {self.kind!r}")
        if self.kind != "ZZ":
            if self.p is None or not is_prime(self.p):
                raise InputError(f"ground ring needs a prime, got {self.p}")
        if self.kind in ("Zp", "DVR") and (self.N is None or self.N < 1):
            raise InputError("truncated rings need precision N >= 1")

    # -- constructors -------------------------------------------------------
    @classmethod
    def integers(cls) -> "GroundRing":
        return cls("ZZ")

    @classmethod
    def prime_field(cls, p: int) -> "GroundRing":
        return cls("GF", p=p)

    @classmethod
    def padic(cls, p: int, N: int, guard: int = DEFAULT_GUARD) -> "GroundRing":
        return cls("Zp", p=p, N=N, guard=guard)

    @classmethod
    def dvr(cls, datum, N: int | None = None, guard: int = DEFAULT_GUARD) -> "GroundRing":
        """Truncated DVR R[pi]/(f(pi)) for an EisensteinDatum."""
        N = datum.N if N is None else N
        m = datum.p ** N
        f = datum.poly_coeffs()  # constant-first, monic of degree e
        rel = tuple((-c) % m for c in f[:-1])
        return cls("DVR", p=datum.p, N=N, e=datum.e, relation=rel, guard=guard)

    # -- basic properties ---------------------------------------------------
    @property
    def modulus(self) -> int | None:
        if self.kind == "GF":
            return self.p
        if self.kind in ("Zp", "DVR"):
            return self.p ** self.N
        return None

    @property
    def is_truncated(self) -> bool:
        return self.kind in ("Zp", "DVR")

    @property
    def is_field(self) -> bool:
        return self.kind == "GF"

    @property
    def pivot_limit(self) -> int | None:
        """Pivots of valuation >= this bound raise PrecisionExhausted."""
        if self.kind == "Zp":
            return self.N - self.guard
        if self.kind == "DVR":
            return self.e * (self.N - self.guard)
        if self.kind == "GF":
            return 1
        return None

    def residue_ring(self) -> "GroundRing":
        return GroundRing.prime_field(self.p)

    def base(self) -> "GroundRing":
        """The coefficient ring Z/p^N underneath a truncated DVR."""
        if self.kind != "DVR":
            return self
        return GroundRing.padic(self.p, self.N, self.guard)

    def __str__(self):
        if self.kind == "ZZ":
            return "ZZ"
        if self.kind == "GF":
            return f"GF({self.p})"
        if self.kind == "Zp":
            return f"Z/{self.p}^{self.N}"
        return f"DVR(p={self.p}, e={self.e}, N={self.N})"

    # -- scalar arithmetic --------------------------------------------------
    def zero(self):
        return (0,) * self.e if self.kind == "DVR" else 0

    def one(self):
        if self.kind == "DVR":
            return (1,) + (0,) * (self.e - 1)
        return 1

    def __call__(self, x):
        """Coerce an int (or coefficient sequence for DVR) into canonical form."""
        m = self.modulus
        if self.kind == "DVR":
            if isinstance(x, int):
                return ((x % m),) + (0,) * (self.e - 1)
            coeffs = [c % m for c in x]
            return self._dvr_reduce(coeffs)
        if m is None:
            return int(x)
        return int(x) % m

    def add(self, a, b):
        m = self.modulus
        if self.kind == "DVR":
            return tuple((x + y) % m for x, y in zip(a, b))
        return a + b if m is None else (a + b) % m

    def sub(self, a, b):
        m = self.modulus
        if self.kind == "DVR":
            return tuple((x - y) % m for x, y in zip(a, b))
        return a - b if m is None else (a - b) % m

    def neg(self, a):
        m = self.modulus
        if self.kind == "DVR":
            return tuple((-x) % m for x in a)
        return -a if m is None else (-a) % m

    def mul(self, a, b):
        m = self.modulus
        if self.kind == "DVR":
            e = self.e
            raw = [0] * (2 * e - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        raw[i + j] += x * y
            return self._dvr_reduce(raw)
        return a * b if m is None else (a * b) % m

    def is_zero(self, a) -> bool:
        if self.kind == "DVR":
            return not any(a)
        return a == 0

    def _dvr_reduce(self, coeffs):
        m, e, rel = self.modulus, self.e, self.relation
        c = [x % m for x in coeffs]
        for k in range(len(c) - 1, e - 1, -1):
            top = c[k]
            if top:
                c[k] = 0
                for i, r in enumerate(rel):
                    c[k - e + i] = (c[k - e + i] + top * r) % m
        c = c[:e] + [0] * (e - len(c))
        return tuple(c)

    def valuation(self, a) -> int | None:
        """p-adic (or pi-adic for DVR) valuation; None when indeterminate."""
        if self.kind == "ZZ":
            raise InputError("valuation over ZZ needs an explicit prime; use vp()")
        if self.kind == "GF":
            return None if a == 0 else 0
        if self.kind == "Zp":
            return vp(a, self.p)
        best = None
        for i, c in enumerate(a):
            v = vp(c, self.p)
            if v is not None:
                w = self.e * v + i
                if best is None or w < best:
                    best = w
        return best

    def unit_inverse(self, a):
        """Inverse of a unit; raises InputError on non-units."""
        if self.kind == "ZZ":
            if a in (1, -1):
                return a
            raise InputError(f"{a} is not a unit in ZZ")
        p, m = self.p, self.modulus
        if self.kind in ("GF", "Zp"):
            if a % p == 0:
                raise InputError(f"{a} is not a unit mod {p}")
            return pow(a, -1, m)
        if a[0] % p == 0:
            raise InputError("DVR element is not a unit")
        # Newton iteration x <- x(2 - a x) converges pi-adically
        x = self(pow(a[0], -1, m))
        two = self(2)
        for _ in range(self.e * self.N.bit_length() + 4):
            ax = self.mul(a, x)
            if ax == self.one():
                return x
            x = self.mul(x, self.sub(two, ax))
        raise PrecisionExhausted("unit inverse did not converge")

    def uniformizer(self):
        if self.kind == "DVR":
            return self((0, 1))
        if self.kind == "Zp":
            return self.p % self.modulus
        raise InputError(f"{self} has no uniformizer")

    def residue(self, a) -> int:
        """Image in the residue field F_p."""
        if self.kind == "DVR":
            return a[0] % self.p
        if self.kind == "ZZ":
            raise InputError("ZZ has no single residue field")
        return a % self.p
