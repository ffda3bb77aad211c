"""The ring A (x)_R A = R[pi1, pi2]/(f(pi1), f(pi2)), the ideal I, and the witness (w1, w2)."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import DegenerateInput, PrecisionExhausted, WitnessFailure
from ..exactalg.matrix import Matrix
from ..exactalg.poly import BivarElem, bivar_reduce, pderiv, pmod, pmul, pscale, psub
from ..exactalg.smith import smith
from .eisenstein import EisensteinDatum


class TensorSquare:
    """Coordinates: pi1^i pi2^j at index i*e + j, over R = Z/p^N."""

    def __init__(self, E: EisensteinDatum):
        self.E = E
        self.e = E.e
        self.R = E.base()
        self.m = E.modulus
        self.f = tuple(c % self.m for c in E.poly_coeffs())
        e, m = self.e, self.m
        cols = []
        for i in range(e):
            for j in range(e):
                r = pmod([0] * (i + j) + [1], list(self.f), m)
                cols.append(r + [0] * (e - len(r)))
        self.mult = Matrix.from_columns(self.R, cols, e)
        sf = smith(self.mult)
        if sf.rank != e or any(v for v in sf.valuations):
            raise PrecisionExhausted("multiplication map A (x) A -> A is not split surjective")
        self._sf = sf
        n = e * e
        # R-basis of I: the last n - e columns of V
        self.I_basis = sf.V.submatrix(0, n, e, n)

    @property
    def rank_I(self) -> int:
        return self.I_basis.ncols

    def elem(self, raw) -> BivarElem:
        return bivar_reduce(raw, self.f, self.m)

    def pi1(self) -> BivarElem:
        return self.elem({(1, 0): 1})

    def pi2(self) -> BivarElem:
        return self.elem({(0, 1): 1})

    def dpi(self) -> BivarElem:
        return self.elem({(1, 0): 1, (0, 1): -1})

    def multiply(self, x: BivarElem):
        """Image under pi1, pi2 -> pi, coordinates in A."""
        return self.mult.apply(x.coeffs())

    def in_I(self, x: BivarElem) -> bool:
        return not any(self.multiply(x))

    def I_coords(self, x: BivarElem):
        """Coordinates of an element of I in the chosen R-basis."""
        w = self._sf.V_inv.apply(x.coeffs())
        e = self.e
        if any(w[:e]):
            raise WitnessFailure("element is not in I")
        return w[e:]

    def I_element(self, coords) -> BivarElem:
        return BivarElem.from_coeffs(self.I_basis.apply(list(coords)), self.f, self.m)

    def I_action(self, y: BivarElem) -> Matrix:
        """R-matrix of x -> y*x on I."""
        cols = []
        for j in range(self.rank_I):
            b = BivarElem.from_coeffs(self.I_basis.column(j), self.f, self.m)
            cols.append(self.I_coords(y * b))
        return Matrix.from_columns(self.R, cols, self.rank_I)


def build_tensor_square(E: EisensteinDatum) -> TensorSquare:
    return TensorSquare(E)


# -- differentials of bivariate elements ------------------------------------------


def class_in_omega(raw: dict, f, m):
    """-d/dpi2 P evaluated at pi1 = pi2 = pi, reduced in A; for P in I this is
    the coefficient of dpi of the class of P in I/I^2."""
    acc = {}
    for (i, j), c in raw.items():
        if j and c:
            acc[i + j - 1] = acc.get(i + j - 1, 0) - j * c
    n = max(acc, default=-1) + 1
    return pmod([acc.get(k, 0) for k in range(n)], list(f), m)


def class_map_matrix(T: TensorSquare) -> Matrix:
    """Matrix of I -> A, P -> -d2 P(pi, pi), on the R-basis of I."""
    e = T.e
    cols = []
    for j in range(T.rank_I):
        v = T.I_basis.column(j)
        raw = {(a // e, a % e): c for a, c in enumerate(v) if c}
        r = class_in_omega(raw, T.f, T.m)
        cols.append(r + [0] * (e - len(r)))
    return Matrix.from_columns(T.R, cols, e)


# -- the witness ------------------------------------------------------------------


def _raw_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            out[(i + k, j + l)] = out.get((i + k, j + l), 0) + c * d
    return {k: v for k, v in out.items() if v}


def _raw_add(*terms) -> dict:
    out: dict = {}
    for t in terms:
        for k, c in t.items():
            out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def _raw_scale(a: dict, c: int) -> dict:
    return {k: v * c for k, v in a.items() if v * c}


def _in_pi1(poly) -> dict:
    return {(i, 0): c for i, c in enumerate(poly) if c}


def _in_pi2(poly) -> dict:
    return {(0, j): c for j, c in enumerate(poly) if c}


@dataclass
class Witness:
    w1: BivarElem
    w2: BivarElem
    raw1: dict
    raw2: dict
    certificate: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.certificate.values())

    def to_json(self):
        return {
            "w1": [list(r) for r in self.w1.grid],
            "w2": [list(r) for r in self.w2.grid],
            "certificate": dict(sorted(self.certificate.items())),
            "diagnostics": dict(sorted(self.diagnostics.items())),
        }


def omega_raw(E: EisensteinDatum):
    """Unreduced integer bivariate polynomials for w1 and w2.

    w1 = pi1^(e-1) - pi2^(e-1)
    w2 = u^-1 g(pi1) (pi2^(e-1) - p g(pi2)) dpi + p (g(pi1) - g(pi2)) - pi2^(e-2) dpi
    """
    e, p, m = E.e, E.p, E.modulus
    if e < 2:
        raise DegenerateInput("the witness needs e >= 2")
    uinv = pow(E.u, -1, m)
    g = list(E.g)
    dpi = {(1, 0): 1, (0, 1): -1}
    w1 = _raw_add({(e - 1, 0): 1}, {(0, e - 1): -1})
    inner = _raw_add({(0, e - 1): 1}, _raw_scale(_in_pi2(g), -p))
    t1 = _raw_scale(_raw_mul(_raw_mul(_in_pi1(g), inner), dpi), uinv)
    t2 = _raw_scale(_raw_add(_in_pi1(g), _raw_scale(_in_pi2(g), -1)), p)
    t3 = _raw_scale(_raw_mul({(0, e - 2): 1}, dpi), -1)
    w2 = _raw_add(t1, t2, t3)
    return w1, w2


def omega_witness(E: EisensteinDatum, T: TensorSquare | None = None) -> Witness:
    """Build (w1, w2) and check (a) both lie in I, (b) pi1 w1 = pi2 w2,
    (c) f' = e x^(e-1) - p g - p x g' and pi * D(w1 - w2) = f'(pi) in A."""
    T = T or TensorSquare(E)
    e, p, m = E.e, E.p, E.modulus
    raw1, raw2 = omega_raw(E)
    w1, w2 = T.elem(raw1), T.elem(raw2)
    cert = {}
    diag = {}
    cert["a_in_I"] = T.in_I(w1) and T.in_I(w2)
    cert["b_cycle"] = (T.pi1() * w1 - T.pi2() * w2).is_zero()
    # (c) exact identity of integer polynomials
    g = list(E.g)
    f = E.poly_coeffs()
    rhs = psub(psub(pscale([0] * (e - 1) + [1], e), pscale(g, p)), pscale(pmul([0, 1], pderiv(g)), p))
    ident = psub(pderiv(f), rhs) == []
    # pi * D(w1 - w2) == f'(pi) in A = R[pi]/f
    D = class_in_omega(_raw_add(raw1, _raw_scale(raw2, -1)), f, m)
    lhs = pmod(pmul([0, 1], D), f, m)
    fp = pmod([c % m for c in pderiv(f)], f, m)
    cert["c_omega_relation"] = ident and lhs == fp
    diag["D(w1-w2)"] = D
    diag["f'(pi)"] = fp
    wit = Witness(w1, w2, raw1, raw2, cert, diag)
    if not wit.ok:
        bad = [k for k, v in cert.items() if not v]
        raise WitnessFailure(f"witness identities failed: {bad}")
    return wit


def raw_from_grid(x: BivarElem) -> dict:
    return {(i, j): c for i, row in enumerate(x.grid) for j, c in enumerate(row) if c}

