"""Finitely generated abelian groups in invariant-factor form."""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

from sympy import factorint

from ..errors import InputError
from .rings import vp


def _normalize(factors):
    """Invariant factors d_1 | d_2 | ... from an arbitrary list of cyclic orders."""
    by_prime: dict[int, list[int]] = {}
    for d in factors:
        d = abs(int(d))
        if d == 0:
            raise InputError("use free_rank for Z summands")
        if d == 1:
            continue
        for q, k in factorint(d).items():
            by_prime.setdefault(q, []).append(q ** k)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    out = [1] * length
    for q, powers in by_prime.items():
        powers.sort()
        # align largest powers with the last invariant factor
        for i, pk in enumerate(reversed(powers)):
            out[length - 1 - i] *= pk
    return tuple(out)


@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | ... | d_k and each d_i >= 2."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InputError("negative free rank")
        object.__setattr__(self, "torsion", _normalize(self.torsion))

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(0, ())

    @classmethod
    def from_smith(cls, invariants, nrows: int) -> "FinAbGroup":
        """Cokernel of a map into a rank-``nrows`` free module with these invariant factors.

        Over Z/p^N the invariants are p-powers and free summands count Z_p-ranks.
        """
        invariants = [abs(int(d)) for d in invariants]
        free = nrows - len(invariants)
        return cls(free, tuple(d for d in invariants if d != 1))

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.torsion) if self.torsion else 1

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def p_part(self, p: int) -> "FinAbGroup":
        """p-primary torsion subgroup (free part dropped)."""
        return FinAbGroup(0, tuple(p ** vp(d, p) for d in self.torsion if d % p == 0))

    def torsion_part(self) -> "FinAbGroup":
        return FinAbGroup(0, self.torsion)

    def dim_over(self, p: int) -> int:
        """Dimension as an F_p-vector space; requires exponent dividing p."""
        if self.free_rank or any(d != p for d in self.torsion):
            raise InputError(f"{self} is not an F_{p}-vector space")
        return len(self.torsion)

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __mul__(self, k: int) -> "FinAbGroup":
        return FinAbGroup(self.free_rank * k, self.torsion * k)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def direct_sum(groups) -> FinAbGroup:
    out = FinAbGroup.trivial()
    for g in groups:
        out = out + g
    return out
