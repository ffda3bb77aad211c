"""Eisenstein data f(x) = x^e - p x g(x) - u p and their extraction from global fields."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError, NoEisensteinForm, NotMaximal
from ..exactalg.poly import pcompose_shift, pderiv, ptrim
from ..exactalg.rings import GroundRing, is_prime, vp
from ..numberfield import (
    NumberRing,
    dedekind_maximal,
    default_precision,
    hensel_local_factors,
    local_differential_exponents,
)

UNRAMIFIED = "Unramified"
TOTALLY_RAMIFIED = "TotallyRamified"
MIXED = "Mixed"


@dataclass(frozen=True)
class EisensteinDatum:
    p: int
    N: int
    e: int
    g: tuple = ()
    u: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not a prime")
        if self.N < 1:
            raise InputError("precision must be positive")
        if self.e < 1:
            raise InputError("degree e must be at least 1")
        m = self.p ** self.N
        g = tuple(int(c) % m for c in self.g)
        while g and g[-1] == 0:
            g = g[:-1]
        if len(g) > max(self.e - 1, 0):
            raise InputError(f"g must have degree <= e - 2, got {len(g) - 1}")
        if self.u % self.p == 0:
            raise InputError("u must be a unit mod p")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "u", int(self.u) % m)

    @classmethod
    def parse(cls, text: str, N: int | None = None):
        """'p=2,e=2,g=0,u=1' (g given as ';'-separated coefficients, constant first)."""
        vals = {}
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            if "=" not in part:
                raise InputError(f"bad Eisenstein field {part!r}")
            k, v = part.split("=", 1)
            vals[k] = v
        try:
            p = int(vals["p"])
            e = int(vals["e"])
            g = tuple(int(c) for c in vals.get("g", "").split(";") if c != "")
            u = int(vals.get("u", "1"))
            n = int(vals["N"]) if "N" in vals else (N if N is not None else 16)
        except (KeyError, ValueError) as exc:
            raise InputError(f"cannot parse Eisenstein datum {text!r}: {exc}") from None
        if N is not None:
            n = N
        return cls(p, n, e, g, u)

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    def poly_coeffs(self):
        """Integer coefficients of f, constant first (g and u as stored, not reduced)."""
        p, e = self.p, self.e
        f = [0] * (e + 1)
        f[e] = 1
        f[0] -= self.u * p
        for i, c in enumerate(self.g):
            f[i + 1] -= p * c
        return f

    def fprime_coeffs(self):
        return pderiv(self.poly_coeffs())

    def ring(self, N: int | None = None) -> GroundRing:
        return GroundRing.dvr(self, N)

    def base(self) -> GroundRing:
        return GroundRing.padic(self.p, self.N)

    def differential_exponent(self) -> int:
        """pi-adic valuation d of f'(pi)."""
        if self.e == 1:
            return 0
        A = self.ring()
        v = A.valuation(A(self.fprime_coeffs()))
        if v is None or v >= A.pivot_limit:
            from ..errors import PrecisionExhausted

            raise PrecisionExhausted(f"v(f'(pi)) undetermined at precision {self.N}")
        return v

    def to_json(self):
        m = self.modulus
        sym = [c % m if c % m <= m // 2 else c % m - m for c in self.poly_coeffs()]
        return {"p": self.p, "N": self.N, "e": self.e, "g": list(self.g), "u": self.u, "f": sym}

    def label(self):
        return f"p={self.p},e={self.e},g={';'.join(map(str, self.g)) or '0'},u={self.u}"


def is_eisenstein(f, p) -> bool:
    f = ptrim(list(f))
    if not f or f[-1] != 1:
        return False
    if any(c % p for c in f[:-1]):
        return False
    return vp(f[0], p) == 1


def datum_from_poly(f, p: int, N: int) -> EisensteinDatum:
    """Read (g, u) off an Eisenstein polynomial (constant first)."""
    if not is_eisenstein(f, p):
        raise NoEisensteinForm(f"{f} is not Eisenstein at {p}")
    e = len(f) - 1
    m = p ** N
    u = (-f[0] // p) % m
    g = tuple((-f[i] // p) % m for i in range(1, e))
    return EisensteinDatum(p, N, e, g, u)


@dataclass
class LocalFactor:
    e: int
    f: int
    d: int
    classification: str
    datum: EisensteinDatum | None = None
    translation: int | None = None
    note: str = ""
    witnesses: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "e": self.e,
            "f": self.f,
            "d": self.d,
            "classification": self.classification,
            "witnesses": dict(sorted(self.witnesses.items())),
        }
        if self.datum is not None:
            out["eisenstein"] = self.datum.to_json()
            out["translation"] = self.translation
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class LocalExtensionReport:
    p: int
    N: int
    factors: list = field(default_factory=list)

    @property
    def classification(self) -> str:
        kinds = {q.classification for q in self.factors}
        return kinds.pop() if len(kinds) == 1 else MIXED if MIXED in kinds else "Split"

    def to_json(self):
        return {"p": self.p, "precision": self.N, "factors": [q.to_json() for q in self.factors]}


def classify_factor(e: int, f: int) -> str:
    if e == 1:
        return UNRAMIFIED
    if f == 1:
        return TOTALLY_RAMIFIED
    return MIXED


def localize(A: NumberRing, p: int, which: int | None = None, N: int | None = None) -> LocalExtensionReport:
    """Local invariants at every prime above p (or only factor ``which``).

    For totally ramified factors the local factor is translated by its root
    mod p; the result is Eisenstein and is returned as an EisensteinDatum.
    """
    if not dedekind_maximal(A, p):
        raise NotMaximal(f"{A} is not maximal at {p}")
    N = N or default_precision(A, p)
    fac, lifts = hensel_local_factors(A, p, N + 1)
    exps = local_differential_exponents(A, p, N + 1)
    report = LocalExtensionReport(p, N)
    idx = range(len(fac.factors)) if which is None else [which]
    for i in idx:
        if not 0 <= i < len(fac.factors):
            raise InputError(f"no factor {i} above {p}")
        q = fac.factors[i]
        e, f, d = exps[i]
        kind = classify_factor(e, f)
        lf = LocalFactor(e, f, d, kind)
        if f == 1:
            root = (-q.g[0]) % p
            r = root - p if root else 0
            F = lifts[i]
            if e == 1:
                lf.datum = EisensteinDatum(p, N, 1, (), 1)
                lf.translation = r
            else:
                shifted = pcompose_shift(F, r)
                if not is_eisenstein(shifted, p):
                    raise NoEisensteinForm(f"translated factor at {p} is not Eisenstein")
                lf.datum = datum_from_poly(shifted, p, N)
                lf.translation = r
        elif e > 1:
            lf.note = "no Eisenstein form over Z_p: residue extension is nontrivial"
        report.factors.append(lf)
    return report
