"""Incremental echelon bases of submodules of R^n for R = Z, F_p, Z/p^N.

Used for membership tests ("is this vector already in the span?") while
building resolutions.
"""
from __future__ import annotations

from ..errors import InputError
from .rings import GroundRing, vp


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class Lattice:
    def __init__(self, ring: GroundRing, n: int):
        if ring.kind == "DVR":
            raise InputError("Lattice works over Z, F_p or Z/p^N")
        self.ring = ring
        self.n = n
        self.pivots: dict[int, list] = {}

    def _combine(self, c, r, w):
        """Return (new pivot row, reduced w with w[c] == 0)."""
        ring = self.ring
        if ring.kind == "ZZ":
            a, b = r[c], w[c]
            if b % a == 0:
                q = b // a
                return r, [x - q * y for x, y in zip(w, r)]
            g, s, t = _xgcd(a, b)
            new_r = [s * x + t * y for x, y in zip(r, w)]
            ag, bg = a // g, b // g
            w = [ag * y - bg * x for x, y in zip(r, w)]
            return new_r, w
        m, p = ring.modulus, ring.p
        if vp(w[c], p) < vp(r[c], p):
            r, w = w, r
        v = vp(r[c], p)
        pv = p ** v
        q = (w[c] // pv) * pow(r[c] // pv, -1, m) % m
        return r, [(x - q * y) % m for x, y in zip(w, r)]

    def add(self, v) -> None:
        w = [self.ring(x) for x in v]
        for c in range(self.n):
            if not w[c]:
                continue
            if c not in self.pivots:
                self.pivots[c] = w
                return
            self.pivots[c], w = self._combine(c, self.pivots[c], w)

    def contains(self, v) -> bool:
        ring = self.ring
        w = [ring(x) for x in v]
        m = ring.modulus
        for c in range(self.n):
            if not w[c]:
                continue
            r = self.pivots.get(c)
            if r is None:
                return False
            if ring.kind == "ZZ":
                if w[c] % r[c]:
                    return False
                q = w[c] // r[c]
                w = [x - q * y for x, y in zip(w, r)]
            else:
                p = ring.p
                vr = vp(r[c], p)
                if vp(w[c], p) < vr:
                    return False
                pv = p ** vr
                q = (w[c] // pv) * pow(r[c] // pv, -1, m) % m
                w = [(x - q * y) % m for x, y in zip(w, r)]
        return True

    def basis(self):
        return [self.pivots[c] for c in sorted(self.pivots)]

    def __len__(self):
        return len(self.pivots)
