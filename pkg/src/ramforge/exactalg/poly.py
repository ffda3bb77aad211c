"""Univariate polynomials (constant-term-first int lists) and reduced bivariate elements.

A ``BivarElem`` represents an element of R[pi1, pi2]/(f(pi1), f(pi2)) as an
e-by-e grid ``c[i][j]`` of the coefficient of pi1^i pi2^j.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError


def _red(x, m):
    return x if m is None else x % m


def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a, b, m=None):
    n = max(len(a), len(b))
    out = [_red((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0), m) for i in range(n)]
    return ptrim(out)


def pneg(a, m=None):
    return ptrim([_red(-x, m) for x in a])


def psub(a, b, m=None):
    return padd(a, pneg(b, m), m)


def pscale(a, c, m=None):
    return ptrim([_red(c * x, m) for x in a])


def pmul(a, b, m=None):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim([_red(x, m) for x in out])


def pderiv(a, m=None):
    return ptrim([_red(i * a[i], m) for i in range(1, len(a))])


def pdivmod_monic(a, f, m=None):
    """Quotient and remainder of ``a`` by a monic ``f``."""
    f = ptrim(f)
    if not f or f[-1] != 1:
        raise InputError("division requires a monic polynomial")
    r = list(ptrim(a))
    d = len(f) - 1
    if len(r) <= d:
        return [], r
    q = [0] * (len(r) - d)
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k]
        if c:
            q[k - d] = c
            for i in range(d + 1):
                r[k - d + i] = _red(r[k - d + i] - c * f[i], m)
    return ptrim(q), ptrim(r[:d])


def pmod(a, f, m=None):
    return pdivmod_monic(a, f, m)[1]


def peval(a, x, m=None):
    acc = 0
    for c in reversed(a):
        acc = _red(acc * x + c, m)
    return acc


def pcompose_shift(a, r, m=None):
    """a(x + r)."""
    out = []
    for c in reversed(a):
        out = padd(pmul(out, [r, 1], m), [c], m)
    return out


def ppow(a, k, m=None):
    out = [1]
    for _ in range(k):
        out = pmul(out, a, m)
    return out


@dataclass(frozen=True)
class BivarElem:
    """Element of R[pi1, pi2]/(f(pi1), f(pi2)); coefficients reduced mod ``modulus``."""

    grid: tuple  # tuple of tuples, grid[i][j] = coeff of pi1^i pi2^j
    f: tuple  # constant-first monic
    modulus: int | None = None

    @property
    def e(self) -> int:
        return len(self.f) - 1

    @classmethod
    def zero(cls, f, modulus=None):
        e = len(f) - 1
        return cls(tuple((0,) * e for _ in range(e)), tuple(f), modulus)

    @classmethod
    def monomial(cls, i, j, f, modulus=None, coeff=1):
        return bivar_reduce({(i, j): coeff}, f, modulus)

    def coeffs(self):
        """Flattened coordinate vector in the basis pi1^i pi2^j (index i*e + j)."""
        return [c for row in self.grid for c in row]

    @classmethod
    def from_coeffs(cls, vec, f, modulus=None):
        e = len(f) - 1
        m = modulus
        return cls(
            tuple(tuple(_red(vec[i * e + j], m) for j in range(e)) for i in range(e)),
            tuple(f),
            m,
        )

    def _raw(self):
        return {(i, j): c for i, row in enumerate(self.grid) for j, c in enumerate(row) if c}

    def __add__(self, other):
        raw = self._raw()
        for k, c in other._raw().items():
            raw[k] = raw.get(k, 0) + c
        return bivar_reduce(raw, self.f, self.modulus)

    def __neg__(self):
        return bivar_reduce({k: -c for k, c in self._raw().items()}, self.f, self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return bivar_reduce({k: c * other for k, c in self._raw().items()}, self.f, self.modulus)
        raw: dict = {}
        b = other._raw()
        for (i, j), c in self._raw().items():
            for (k, l), d in b.items():
                raw[(i + k, j + l)] = raw.get((i + k, j + l), 0) + c * d
        return bivar_reduce(raw, self.f, self.modulus)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.grid)

    def diagonal(self):
        """Image under pi1, pi2 -> pi, as a reduced univariate polynomial."""
        acc: dict = {}
        for (i, j), c in self._raw().items():
            acc[i + j] = acc.get(i + j, 0) + c
        n = max(acc, default=-1) + 1
        return pmod([acc.get(k, 0) for k in range(n)], list(self.f), self.modulus)


def _reduce_univariate_powers(f, top, m):
    """x^k mod f for k < top, as coefficient lists of length e."""
    e = len(f) - 1
    out = []
    for k in range(top):
        r = pmod([0] * k + [1], list(f), m)
        out.append(r + [0] * (e - len(r)))
    return out


def bivar_reduce(raw, f, modulus=None) -> BivarElem:
    """Reduce a raw bivariate polynomial modulo f(pi1) and f(pi2).

    ``raw`` maps exponent pairs (i, j) to coefficients, or is a nested list
    ``raw[i][j]``.
    """
    f = tuple(f)
    if not f or f[-1] != 1:
        raise InputError("bivar_reduce needs a monic f")
    if not isinstance(raw, dict):
        raw = {(i, j): c for i, row in enumerate(raw) for j, c in enumerate(row) if c}
    e = len(f) - 1
    m = modulus
    top = max((max(i, j) for i, j in raw), default=0) + 1
    powers = _reduce_univariate_powers(f, max(top, e), m)
    grid = [[0] * e for _ in range(e)]
    for (i, j), c in raw.items():
        if not c:
            continue
        pi, pj = powers[i], powers[j]
        for a, x in enumerate(pi):
            if x:
                for b, y in enumerate(pj):
                    if y:
                        grid[a][b] += c * x * y
    return BivarElem(tuple(tuple(_red(c, m) for c in row) for row in grid), f, m)
