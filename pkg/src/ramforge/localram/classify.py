"""Ramification classification with derived witnesses, solidity of catalog
algebras, and the fiber sequence for a tower Z < B < C."""
from __future__ import annotations

import re
from fractions import Fraction
from dataclasses import dataclass, field

from ..errors import ExactnessFailure, InputError, NotMaximal
from ..exactalg.finab import FinAbGroup
from ..exactalg.matrix import Matrix, block_diag
from ..exactalg.poly import pmod, pmul
from ..exactalg.rings import GroundRing, is_prime
from ..exactalg.smith import smith
from ..homalg import (
    BasedAlgebra,
    ChainComplex,
    ChainMap,
    PresentedModule,
    free_resolution,
    homology,
    les_exactness,
    lift_along,
    mapping_fiber,
    sequence_exact_at,
    tor,
)
from ..numberfield import NumberRing, dedekind_maximal, factor_prime, local_omega_p
from .eisenstein import MIXED, TOTALLY_RAMIFIED, UNRAMIFIED, LocalExtensionReport, localize
from .verify import verify_mainlemma


def classify(A: NumberRing, p: int, N: int | None = None) -> LocalExtensionReport:
    """Classical (e, f) classification plus the derived witness that applies.

    Unramified factors get the vanishing of the local Omega^1; totally
    ramified ones (f = 1) run the chain-level weak equivalence on their
    Eisenstein datum; mixed factors carry classical data only.
    """
    rep = localize(A, p, N=N)
    for lf in rep.factors:
        lf.witnesses["omega1_local_trivial"] = local_omega_p(p, lf.e, lf.f, lf.d).is_trivial
        if lf.f == 1 and lf.datum is not None:
            lf.witnesses["mainlemma"] = verify_mainlemma(lf.datum, strict=False).ok
    return rep


def thm_equiv_rows(A: NumberRing, p: int, N: int | None = None):
    """One row per prime above p comparing classical and derived verdicts.

    Classically the factor is totally ramified when f = 1 (its local degree is
    e) and unramified when e = 1.  The derived side is the weak-equivalence
    witness and the vanishing of the local Omega^1.
    """
    rows = []
    for lf in classify(A, p, N).factors:
        ml = lf.witnesses.get("mainlemma", False)
        om = lf.witnesses["omega1_local_trivial"]
        rows.append({
            "e": lf.e,
            "f": lf.f,
            "classification": lf.classification,
            "mainlemma_witness": ml,
            "omega1_trivial": om,
            "agree": ml == (lf.f == 1) and om == (lf.e == 1),
        })
    return rows


# -- solidity -----------------------------------------------------------------


@dataclass
class SolidReport:
    algebra: str
    solid: bool
    multiplication_iso: bool
    tor: dict
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "algebra": self.algebra,
            "solid": self.solid,
            "multiplication_iso": self.multiplication_iso,
            "tor": {str(k): v for k, v in sorted(self.tor.items())},
            "notes": list(self.notes),
        }


_CATALOG = re.compile(r"^Z(?:\[1/(\d+)\]|/(\d+))?$")


def check_solid(spec: str, depth: int = 3) -> SolidReport:
    """Is Z -> A solid, for A in {Z, Z[1/n], Z/n}?

    Z[1/n] is handled as the colimit of Z --n--> Z --n--> ...; every stage is
    free, so higher Tor vanishes, and the stage-s multiplication
    n^-s Z (x) n^-s Z -> n^-2s Z sends generator to generator.  Tor and
    tensor products commute with filtered colimits, so checking the stages
    settles the colimit.
    """
    m = _CATALOG.match(spec.replace(" ", ""))
    if m is None:
        raise InputError(f"{spec!r} is not in the catalog Z, Z[1/n], Z/n")
    ZZ = GroundRing.integers()
    alg = BasedAlgebra.ground(ZZ)
    loc, quo = m.group(1), m.group(2)
    notes = []
    if quo is not None:
        n = int(quo)
        if n < 2:
            raise InputError("Z/n needs n >= 2")
        M = PresentedModule.cyclic(alg, [[n]], name=f"Z/{n}")
        T = tor(M, M, depth)
        # Z/n (x) Z/n -> Z/n is onto; compare orders for injectivity
        mult_iso = T[0].order == n
    else:
        if loc is not None and int(loc) < 1:
            raise InputError("Z[1/n] needs n >= 1")
        M = PresentedModule.free(alg)
        T = tor(M, M, depth)
        if loc is not None:
            n = int(loc)
            stage_iso = True
            for s in range(1, depth + 1):
                # n^-s Z (x) n^-s Z -> n^-2s Z in the bases n^-s (x) n^-s and n^-2s
                mu = Matrix(ZZ, [[n ** (2 * s) * Fraction(1, n ** s) * Fraction(1, n ** s)]])
                sf = smith(mu)
                stage_iso &= sf.rank == 1 and FinAbGroup.from_smith(sf.invariants, 1).is_trivial
            notes.append(f"multiplication is an isomorphism at stages 1..{depth} of Z --{n}--> Z")
        else:
            stage_iso = True
        mult_iso = stage_iso and T[0].free_rank == 1 and not T[0].torsion
    higher = {k: str(T[k]) for k in range(0, depth + 1)}
    vanish = all(T[k].is_trivial for k in range(1, depth + 1))
    return SolidReport(spec, mult_iso and vanish, mult_iso, higher, notes)


# -- the tower fiber sequence ---------------------------------------------------


def _residue_root(f, p):
    fac = factor_prime(NumberRing(f, check=False), p)
    for q in fac.factors:
        if len(q.g) == 2:
            return (-q.g[0]) % p
    raise InputError(f"no residue degree one prime above {p}")


def _elem_coords(f, poly):
    d = len(f) - 1
    r = pmod(list(poly), list(f))
    return r + [0] * (d - len(r))


def _residue_module(alg: BasedAlgebra, f, r: int, p: int) -> PresentedModule:
    """k = alg / (theta - r, p)."""
    rels = [_elem_coords(f, [-r, 1]), [p] + [0] * (alg.n - 1)]
    return PresentedModule.cyclic(alg, rels, name="k")


def _residue(block, r, p):
    return sum(c * pow(r, t, p) for t, c in enumerate(block)) % p


def _reduce_resolution(P, r, p, top):
    """P (x)_Lambda k over F_p, degrees 0..top."""
    k = GroundRing.prime_field(p)
    n = P.algebra.n
    ranks = {i: (P.gens[i] if i < len(P.gens) else 0) for i in range(top + 1)}
    diffs = {}
    for i in range(1, top + 1):
        if ranks[i] and ranks[i - 1]:
            cols = [[_residue(v[j * n:(j + 1) * n], r, p) for j in range(ranks[i - 1])] for v in P.images[i]]
            diffs[i] = Matrix.from_columns(k, cols, ranks[i - 1])
    return ChainComplex(k, ranks, diffs)


def _reduce_map(phi: ChainMap, S: BasedAlgebra, T: BasedAlgebra, X, Y, r, p):
    k = X.ring
    maps = {}
    for i in X.degrees():
        a, b = X.rank(i), Y.rank(i)
        if not a or not b or i not in phi.maps:
            maps[i] = Matrix.zeros(k, b, a)
            continue
        F = phi.f(i)
        cols = []
        for g in range(a):
            col = F.column(g * S.n)
            cols.append([_residue(col[j * T.n:(j + 1) * T.n], r, p) for j in range(b)])
        maps[i] = Matrix.from_columns(k, cols, b)
    return ChainMap(X, Y, maps)


@dataclass
class TripleReport:
    p: int
    depth: int
    homology: dict
    comparison_quasi_iso: bool
    les_exact: bool
    middle_exact: dict
    first_failure: object = None

    @property
    def exact(self) -> bool:
        return self.comparison_quasi_iso and self.les_exact and all(self.middle_exact.values())

    def to_json(self):
        return {
            "p": self.p,
            "depth": self.depth,
            "homology_dims": {k: {str(n): d for n, d in sorted(v.items())} for k, v in sorted(self.homology.items())},
            "comparison_quasi_iso": self.comparison_quasi_iso,
            "les_exact": self.les_exact,
            "middle_exact": {str(n): v for n, v in sorted(self.middle_exact.items())},
            "exact": self.exact,
        }


def triple_fiber_check(fB, fC, theta_image, p: int, depth: int = 4, raise_on_failure: bool = False) -> TripleReport:
    """Fiber sequence I^k_{B/Z} -> I^k_{C/Z} -> I^k_{C/B} for Z < B = Z[x]/fB < C = Z[y]/fC.

    ``theta_image`` is the image of x in C (coefficients in y, constant first).
    Each I^k is the fiber of k (x)_R k -> k (x)_S k, with the Tor complexes
    built from free resolutions over Z and the maps lifted along the algebra
    maps.  The sequence is certified by showing the comparison
    fib(g) -> fib(fib(hg) -> fib(h)) is a quasi-isomorphism, and the long
    exact sequence of the second map is checked slot by slot.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not a prime")
    if depth < 0:
        raise InputError("depth must be non-negative")
    B, C = NumberRing(fB), NumberRing(fC)
    for A in (B, C):
        if not dedekind_maximal(A, p):
            raise NotMaximal(f"{A} is not maximal at {p}")
    ZZ = GroundRing.integers()
    img = _elem_coords(C.f, theta_image)
    # theta_image must be a root of fB in C
    acc = [0] * C.d
    pw = _elem_coords(C.f, [1])
    for c in B.f:
        acc = [a + c * x for a, x in zip(acc, pw)]
        pw = _elem_coords(C.f, pmul(pw, img))
    if any(acc):
        raise InputError("theta_image is not a root of fB in C")
    rC = _residue_root(C.f, p)
    rB = _residue(img, rC, p)
    if _residue(B.f, rB, p):
        raise InputError("residue fields do not match along the embedding")
    alg0 = BasedAlgebra.ground(ZZ)
    algB = BasedAlgebra.monogenic(ZZ, B.f)
    algC = BasedAlgebra.monogenic(ZZ, C.f)
    top = depth + 4
    P0 = free_resolution(PresentedModule.cyclic(alg0, [[p]], name="k"), top)
    PB = free_resolution(_residue_module(algB, B.f, rB, p), top)
    PC = free_resolution(_residue_module(algC, C.f, rC, p), top)
    E0 = Matrix.from_columns(ZZ, [_elem_coords(B.f, [1])], B.d)
    pw, colsB = _elem_coords(C.f, [1]), []
    for _ in range(B.d):
        colsB.append(pw)
        pw = _elem_coords(C.f, pmul(pw, img))
    EB = Matrix.from_columns(ZZ, colsB, C.d)
    g_int = lift_along(P0, PB, E0, top)
    h_int = lift_along(PB, PC, EB, top)
    X = _reduce_resolution(P0, 0, p, top)
    Y = _reduce_resolution(PB, rB, p, top)
    Z = _reduce_resolution(PC, rC, p, top)
    g = _reduce_map(g_int, alg0, algB, X, Y, rB, p)
    h = _reduce_map(h_int, algB, algC, Y, Z, rC, p)
    k = X.ring
    hg = ChainMap(X, Z, {n: h.f(n) @ g.f(n) for n in X.degrees()})
    Fg, Fhg, Fh = mapping_fiber(g), mapping_fiber(hg), mapping_fiber(h)
    i_map = ChainMap(Fg, Fhg, {n: block_diag(k, [Matrix.identity(k, X.rank(n)), h.f(n + 1)]) for n in Fg.degrees()})
    q_map = ChainMap(Fhg, Fh, {n: block_diag(k, [g.f(n), Matrix.identity(k, Z.rank(n + 1))]) for n in Fhg.degrees()})
    Fq = mapping_fiber(q_map)
    cmaps = {}
    for n in Fg.degrees():
        x, y = X.rank(n), Y.rank(n + 1)
        z1, z2 = Z.rank(n + 1), Z.rank(n + 2)
        rows = Matrix.identity(k, x).rows if x else []
        top_block = [r + [0] * y for r in rows]
        hz = [[0] * x + list(r) for r in h.f(n + 1).rows] if z1 else []
        yid = [[0] * x + list(r) for r in Matrix.identity(k, y).rows] if y else []
        zero = [[0] * (x + y) for _ in range(z2)]
        cmaps[n] = Matrix(k, top_block + hz + yid + zero, x + y)
    cmp = ChainMap(Fg, Fq, cmaps)
    Hc = homology(mapping_fiber(cmp), range(-1, depth + 1))
    quasi = all(Hc[n].is_trivial for n in range(-1, depth + 1))
    les = les_exactness(q_map, lo=-1, hi=depth)
    middle = {n: sequence_exact_at(i_map, q_map, n) for n in range(-1, depth + 1)}
    dims = {}
    for label, F in (("I_B/Z", Fg), ("I_C/Z", Fhg), ("I_C/B", Fh)):
        H = homology(F, range(-1, depth + 1))
        dims[label] = {n: H[n].free_rank for n in range(-1, depth + 1)}
    rep = TripleReport(p, depth, dims, quasi, les.exact, middle, les.first_failure())
    if raise_on_failure and not rep.exact:
        bad = rep.first_failure
        slot = (bad.label, bad.degree) if bad is not None else ("comparison", None)
        raise ExactnessFailure(f"fiber sequence fails at {slot}", slot=slot)
    return rep


__all__ = [
    "MIXED",
    "SolidReport",
    "TOTALLY_RAMIFIED",
    "TripleReport",
    "UNRAMIFIED",
    "check_solid",
    "classify",
    "thm_equiv_rows",
    "triple_fiber_check",
]
