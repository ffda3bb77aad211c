"""Monogenic orders Z[theta] = Z[x]/(f): splitting of primes, Dedekind test,
Kaehler differentials, different and inverse different."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_zz_hensel_lift
from sympy.polys.galoistools import gf_factor, gf_gcd

from .errors import DegenerateInput, InputError, MismatchFailure, NotMaximal, PrecisionExhausted
from .exactalg.finab import FinAbGroup
from .exactalg.matrix import Matrix
from .exactalg.poly import pderiv, pmod, pmul, ppow, psub, ptrim
from .exactalg.rings import GroundRing, is_prime, vp
from .exactalg.smith import hermite_columns, smith

ZRING = GroundRing.integers()
_X = sympy.Symbol("x")


def _to_sympy(f):
    return sympy.Poly(list(reversed(f)), _X, domain="ZZ")


def _gf(f, p):
    """Constant-first -> sympy dense (high first) reduced mod p."""
    return [ZZ(c) for c in reversed(ptrim([c % p for c in f]))]


def _from_gf(g):
    return [int(c) for c in reversed(g)]


def parse_poly(text: str):
    """'1,0,1' -> [1, 0, 1] (constant term first)."""
    try:
        coeffs = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise InputError(f"cannot parse polynomial {text!r}: {exc}") from None
    if not coeffs:
        raise InputError("empty polynomial")
    return coeffs


def format_poly(f) -> str:
    return ",".join(str(c) for c in f)


def poly_str(f, var="x") -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else "+"
            s = f"{coef}{mono}"
        else:
            s = f"{c:+d}{mono}"
        terms.append(s)
    out = "".join(terms).lstrip("+")
    return out or "0"


# -- irreducibility ----------------------------------------------------------


def _irreducible_mod_p_certificate(f, primes=range(2, 50)):
    """A prime p with f irreducible mod p, if one exists among small primes."""
    d = len(f) - 1
    for p in primes:
        if not is_prime(p):
            continue
        _, facs = gf_factor(_gf(f, p), p, ZZ)
        if len(facs) == 1 and facs[0][1] == 1 and len(facs[0][0]) - 1 == d:
            return p
    return None


def is_irreducible(f) -> bool:
    if len(f) - 1 == 1:
        return True
    if _irreducible_mod_p_certificate(f) is not None:
        return True
    _, facs = sympy.factor_list(_to_sympy(f).as_expr(), _X)
    return len(facs) == 1 and facs[0][1] == 1


# -- the order ---------------------------------------------------------------


class NumberRing:
    """Z[theta] for a monic irreducible f (constant-term-first coefficients)."""

    def __init__(self, f, check: bool = True):
        f = [int(c) for c in f]
        f = ptrim(f)
        if len(f) < 2:
            raise InputError("defining polynomial must have degree >= 1")
        if f[-1] != 1:
            raise InputError("defining polynomial must be monic")
        if check and not is_irreducible(f):
            raise InputError(f"{poly_str(f)} is reducible over Q")
        self.f = tuple(f)
        self.d = len(f) - 1

    def __repr__(self):
        return f"NumberRing({poly_str(self.f)})"

    def __eq__(self, other):
        return isinstance(other, NumberRing) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    @cached_property
    def disc(self) -> int:
        if self.d == 1:
            return 1
        return int(sympy.discriminant(_to_sympy(self.f)))

    @cached_property
    def fprime(self):
        return pderiv(list(self.f))

    def reduce(self, a):
        out = pmod(list(a), list(self.f))
        return out + [0] * (self.d - len(out))

    def mul(self, a, b):
        return self.reduce(pmul(list(a), list(b)))

    def mult_matrix(self, z) -> Matrix:
        """Integer matrix of multiplication by z on the basis 1, theta, ..., theta^(d-1)."""
        cols = [self.mul(z, [0] * j + [1]) for j in range(self.d)]
        return Matrix.from_columns(ZRING, cols, self.d)

    @cached_property
    def theta_matrix(self) -> Matrix:
        return self.mult_matrix([0, 1])

    def trace(self, z) -> int:
        M = self.mult_matrix(z)
        return sum(M.rows[i][i] for i in range(self.d))

    @cached_property
    def trace_matrix(self) -> Matrix:
        d = self.d
        tr = [self.trace([0] * k + [1]) for k in range(2 * d - 1)]
        return Matrix(ZRING, [[tr[i + j] for j in range(d)] for i in range(d)])

    def norm(self, z) -> int:
        return int(sympy.Matrix(self.mult_matrix(z).rows).det())

    def ramified_primes(self):
        return sorted(sympy.factorint(abs(self.disc)))


# -- primes --------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeFactor:
    g: tuple  # monic lift, coefficients in [0, p), constant first
    e: int
    f: int

    def to_json(self):
        return {"factor": list(self.g), "e": self.e, "f": self.f}


@dataclass(frozen=True)
class PrimeFactorization:
    p: int
    factors: tuple

    @property
    def degree(self):
        return sum(q.e * q.f for q in self.factors)

    def is_unramified(self):
        return all(q.e == 1 for q in self.factors)

    def to_json(self):
        return {"p": self.p, "factors": [q.to_json() for q in self.factors]}


def _check_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise InputError(f"{p} is not a prime")


def factor_prime(A: NumberRing, p: int) -> PrimeFactorization:
    """Factor f mod p; factor i gives a prime with e_i = multiplicity, f_i = degree."""
    _check_prime(p)
    _, facs = gf_factor(_gf(A.f, p), p, ZZ)
    out = []
    for g, e in facs:
        g = _from_gf(g)
        out.append(PrimeFactor(tuple(g), int(e), len(g) - 1))
    out.sort(key=lambda q: (q.f, q.e, tuple(reversed(q.g))))
    return PrimeFactorization(p, tuple(out))


def dedekind_maximal(A: NumberRing, p: int) -> bool:
    """Dedekind criterion: Z[theta] is p-maximal iff gcd(F, g, h) = 1 mod p,
    where g = prod g_i, h = prod g_i^(e_i - 1) and F = (g h - f)/p."""
    _check_prime(p)
    fac = factor_prime(A, p)
    g = [1]
    h = [1]
    for q in fac.factors:
        g = pmul(g, list(q.g))
        h = pmul(h, ppow(list(q.g), q.e - 1))
    diff = psub(pmul(g, h), list(A.f))
    if any(c % p for c in diff):
        raise InputError("factorization does not reproduce f mod p")
    F = [c // p for c in diff]
    G = gf_gcd(_gf(F, p), _gf(g, p), p, ZZ)
    G = gf_gcd(G, _gf(h, p), p, ZZ)
    return len(G) == 1


def non_maximal_primes(A: NumberRing):
    return [p for p in A.ramified_primes() if not dedekind_maximal(A, p)]


# -- quotients, differentials, different -----------------------------------------


def quotient_by_element(A: NumberRing, z) -> FinAbGroup:
    """A/(z) as an abelian group."""
    if not any(A.reduce(z)):
        raise DegenerateInput("quotient by zero")
    M = A.mult_matrix(z)
    return FinAbGroup.from_smith(smith(M).invariants, A.d)


def kaehler_global(A: NumberRing) -> FinAbGroup:
    """Omega^1 of Z[theta] over Z, i.e. A/(f'(theta))."""
    fp = A.fprime
    if not any(A.reduce(fp)):
        raise DegenerateInput("f'(theta) vanishes")
    return quotient_by_element(A, fp)


@dataclass
class FractionalIdealRep:
    """(1 / denominator) * lattice, lattice columns in the power basis, Hermite form."""

    denominator: int
    lattice: Matrix
    generator: tuple = ()  # z with ideal = (1/z) A, when principal of that shape
    warnings: list = field(default_factory=list)

    def index_over_order(self) -> int:
        """[ideal : A] for an ideal containing A (index of A in it)."""
        det = abs(int(sympy.Matrix(self.lattice.rows).det()))
        n = self.lattice.nrows
        return self.denominator ** n // det

    def contains_order(self) -> bool:
        from .exactalg.smith import solve

        n = self.lattice.nrows
        B = Matrix.identity(ZRING, n).scale(self.denominator)
        return solve(self.lattice, B) is not None

    def to_json(self):
        return {
            "denominator": self.denominator,
            "lattice": self.lattice.tolist(),
            "generator": list(self.generator),
            "index_over_order": self.index_over_order(),
            "warnings": list(self.warnings),
        }


def _adjugate(M: Matrix):
    S = sympy.Matrix(M.rows)
    return S.adjugate(), int(S.det())


def inverse_different(A: NumberRing, check: bool = True) -> FractionalIdealRep:
    """D^-1 = (1/f'(theta)) A, cross-checked against the trace dual lattice."""
    warnings = [f"not maximal at {p}" for p in non_maximal_primes(A)]
    M = A.mult_matrix(A.fprime)
    adj, det = _adjugate(M)
    den = abs(det)
    sign = 1 if det > 0 else -1
    lat = Matrix(ZRING, [[sign * int(x) for x in adj.row(i)] for i in range(A.d)])
    lat = hermite_columns(lat)
    rep = FractionalIdealRep(den, lat, tuple(A.reduce(A.fprime)), warnings)
    if check and not warnings:
        tadj, tdet = _adjugate(A.trace_matrix)
        # trace dual in coordinates: T^{-1} Z^d = (1/det T) adj(T) Z^d
        scale = den // abs(tdet) if den % abs(tdet) == 0 else None
        if scale is None:
            raise InputError("trace and different determinants disagree")
        tsign = 1 if tdet > 0 else -1
        tl = Matrix(ZRING, [[tsign * scale * int(x) for x in tadj.row(i)] for i in range(A.d)])
        if hermite_columns(tl) != lat:
            raise MismatchFailure("(1/f') A differs from the trace dual lattice")
    return rep


def require_maximal(A: NumberRing):
    bad = non_maximal_primes(A)
    if bad:
        raise NotMaximal(f"{A} is not maximal at {bad}")


# -- local data ------------------------------------------------------------------


def default_precision(A: NumberRing, p: int) -> int:
    v = vp(A.disc, p) or 0
    return max(2 * v + 8, 16)


def hensel_local_factors(A: NumberRing, p: int, N: int):
    """Lift the coprime factors g_i^{e_i} of f mod p to factors of f mod p^N.

    Returns (factorization, list of integer polynomials, constant first).
    """
    fac = factor_prime(A, p)
    parts = [[c % p for c in ppow(list(q.g), q.e)] for q in fac.factors]
    if len(parts) == 1:
        return fac, [list(A.f)]
    f_hi = [ZZ(c) for c in reversed(A.f)]
    lst = [[ZZ(c) for c in reversed(ptrim(g))] for g in parts]
    lifted = dup_zz_hensel_lift(ZZ(p), f_hi, lst, N, ZZ)
    return fac, [[int(c) for c in reversed(g)] for g in lifted]


def local_differential_exponents(A: NumberRing, p: int, N: int | None = None):
    """For each prime above p: (e_i, f_i, d_i) with d_i = v_p(Res(F_i, f')) / f_i."""
    N = N or default_precision(A, p)
    fac, lifts = hensel_local_factors(A, p, N)
    out = []
    fp = A.fprime
    for q, F in zip(fac.factors, lifts):
        if q.e == 1:
            out.append((q.e, q.f, 0))
            continue
        res = int(sympy.resultant(_to_sympy(F).as_expr(), _to_sympy(fp).as_expr(), _X)) if fp else 0
        v = vp(res % p ** N, p)
        if v is None or v >= N - 4:
            raise PrecisionExhausted(f"resultant valuation at {p} undetermined at precision {N}")
        if v % q.f:
            raise InputError("resultant valuation not divisible by residue degree")
        out.append((q.e, q.f, v // q.f))
    return out


def local_omega_p(p: int, e: int, f: int, d: int) -> FinAbGroup:
    """(Z/p^(q+1))^(r f) + (Z/p^q)^((e - r) f) where d = q e + r."""
    q, r = divmod(d, e)
    tors = [p ** (q + 1)] * (r * f) + ([p ** q] * ((e - r) * f) if q else [])
    return FinAbGroup(0, tuple(t for t in tors if t > 1))


def local_kaehler(A: NumberRing, p: int, N: int | None = None) -> FinAbGroup:
    """The Omega^1 of the completion at p, assembled from local factors."""
    out = FinAbGroup.trivial()
    for e, f, d in local_differential_exponents(A, p, N):
        out = out + local_omega_p(p, e, f, d)
    return out


def local_quotient(A: NumberRing, z, p: int, N: int | None = None) -> FinAbGroup:
    """(A tensor Z_p)/(z) from a valuation-pivoting Smith form over Z/p^N."""
    from .exactalg.smith import dvr_smith_form

    N = N or default_precision(A, p)
    R = GroundRing.padic(p, N)
    M = A.mult_matrix(z).change_ring(R)
    sf = dvr_smith_form(M)
    if sf.rank < A.d:
        raise DegenerateInput("element is a zero divisor locally")
    return FinAbGroup(0, tuple(p ** v for v in sf.valuations if v))


__all__ = [
    "FractionalIdealRep",
    "NumberRing",
    "PrimeFactor",
    "PrimeFactorization",
    "dedekind_maximal",
    "default_precision",
    "factor_prime",
    "format_poly",
    "hensel_local_factors",
    "inverse_different",
    "is_irreducible",
    "kaehler_global",
    "local_differential_exponents",
    "local_kaehler",
    "local_omega_p",
    "local_quotient",
    "non_maximal_primes",
    "parse_poly",
    "poly_str",
    "quotient_by_element",
    "require_maximal",
]
