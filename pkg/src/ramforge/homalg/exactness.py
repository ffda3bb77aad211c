"""Exactness of long exact sequences, checked on generators of cycles and boundaries."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ExactnessFailure
from ..exactalg.matrix import Matrix, hstack
from ..exactalg.smith import kernel_basis, solve
from .complexes import (
    ChainComplex,
    ChainMap,
    connecting_matrix,
    fiber_projection,
    homology_at,
    mapping_fiber,
)


@dataclass
class Slot:
    """One position of a long exact sequence: H_n of ``complex`` between two maps."""

    label: str
    degree: int
    exact: bool
    group: str = ""


@dataclass
class LesReport:
    slots: list = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.slots)

    def first_failure(self):
        return next((s for s in self.slots if not s.exact), None)

    def to_json(self):
        return {
            "exact": self.exact,
            "slots": [
                {"label": s.label, "degree": s.degree, "exact": s.exact, "group": s.group}
                for s in self.slots
            ],
        }


def _in_span(M: Matrix, v) -> bool:
    if M.ncols == 0:
        return not any(v)
    B = Matrix.from_columns(M.ring, [list(v)], M.nrows)
    return solve(M, B) is not None


def exact_at(B: ChainComplex, n: int, g_in: Matrix, A: ChainComplex, m_in: int, h_out: Matrix, C: ChainComplex, m_out: int) -> bool:
    """Exactness of H_{m_in}(A) -g-> H_n(B) -h-> H_{m_out}(C) at the middle.

    ``g_in`` maps A_{m_in} -> B_n and ``h_out`` maps B_n -> C_{m_out}; both
    must send cycles to cycles and boundaries to boundaries.  We check that
    h g kills every cycle class and that each cycle of B whose image under h
    bounds lies in g(Z(A)) + B(B).
    """
    R = B.ring
    rb = B.rank(n)
    if rb == 0:
        return True
    ZA = kernel_basis(A.d(m_in)) if A.rank(m_in) else Matrix.zeros(R, 0, 0)
    bdB = B.d(n + 1)
    bdC = C.d(m_out + 1)
    # image lattice: g(Z_A) + B_B inside B_n
    parts = []
    if ZA.ncols:
        parts.append(g_in @ ZA)
    if bdB.ncols:
        parts.append(bdB)
    image = hstack(R, parts) if parts else Matrix.zeros(R, rb, 0)
    # composite must land in boundaries
    if ZA.ncols:
        comp = h_out @ (g_in @ ZA)
        for j in range(comp.ncols):
            if not _in_span(bdC, comp.column(j)):
                return False
    # kernel lattice: {z in Z_B : h z in B_C}
    ZB = kernel_basis(B.d(n))
    if ZB.ncols == 0:
        return True
    hz = h_out @ ZB
    if bdC.ncols:
        big = hstack(R, [hz, -bdC])
    else:
        big = hz
    if big.nrows == 0:
        K = Matrix.identity(R, ZB.ncols)
    else:
        K = kernel_basis(big).submatrix(0, ZB.ncols, 0, kernel_basis(big).ncols)
    pre = ZB @ K
    for j in range(pre.ncols):
        if not _in_span(image, pre.column(j)):
            return False
    return True


def les_exactness(phi: ChainMap, lo: int | None = None, hi: int | None = None, raise_on_failure: bool = False) -> LesReport:
    """Check the long exact sequence of the mapping fiber of ``phi`` slot by slot.

    ... -> H_n(F) -p-> H_n(X) -phi-> H_n(Y) -delta-> H_{n-1}(F) -> ...
    """
    X, Y = phi.source, phi.target
    F = mapping_fiber(phi)
    P = fiber_projection(phi, F)
    lo = min(X.lo, Y.lo, F.lo) if lo is None else lo
    hi = max(X.hi, Y.hi, F.hi) if hi is None else hi
    report = LesReport()
    for n in range(hi, lo - 1, -1):
        # at H_n(F): delta from H_{n+1}(Y), then projection to H_n(X)
        ok = exact_at(F, n, connecting_matrix(phi, F, n + 1), Y, n + 1, P.f(n), X, n)
        report.slots.append(Slot("H(fib)", n, ok, str(homology_at(F, n))))
        # at H_n(X): projection from H_n(F), then phi to H_n(Y)
        ok = exact_at(X, n, P.f(n), F, n, phi.f(n), Y, n)
        report.slots.append(Slot("H(source)", n, ok, str(homology_at(X, n))))
        # at H_n(Y): phi from H_n(X), then delta to H_{n-1}(F)
        ok = exact_at(Y, n, phi.f(n), X, n, connecting_matrix(phi, F, n), F, n - 1)
        report.slots.append(Slot("H(target)", n, ok, str(homology_at(Y, n))))
    if raise_on_failure:
        bad = report.first_failure()
        if bad is not None:
            raise ExactnessFailure(f"long exact sequence not exact at {bad.label} in degree {bad.degree}", slot=(bad.label, bad.degree))
    return report


def sequence_exact_at(i: ChainMap, q: ChainMap, n: int) -> bool:
    """Exactness of H_n(A) -i-> H_n(B) -q-> H_n(C) at H_n(B)."""
    return exact_at(i.target, n, i.f(n), i.source, n, q.f(n), q.target, n)
