import itertools
import math
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix as SyMatrix

from ramforge.errors import PrecisionExhausted
from ramforge.exactalg import (
    FinAbGroup,
    GroundRing,
    Matrix,
    available_backends,
    bivar_reduce,
    dvr_smith_form,
    kernel_basis,
    smith,
    smith_normal_form,
    vp,
)
from ramforge.exactalg.backend import modular_smith
from ramforge.exactalg.poly import pmul
from ramforge.localram import EisensteinDatum

ZZ = GroundRing.integers()


def minors_gcd(rows, k):
    """gcd of all k x k minors, computed with sympy determinants."""
    m, n = len(rows), len(rows[0])
    g = 0
    for rs in itertools.combinations(range(m), k):
        for cs in itertools.combinations(range(n), k):
            g = math.gcd(g, int(SyMatrix([[rows[i][j] for j in cs] for i in rs]).det()))
    return g


def oracle_invariants(rows):
    out, prev = [], 1
    for k in range(1, min(len(rows), len(rows[0])) + 1):
        g = minors_gcd(rows, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def check_smith(M, sf):
    m, n = M.shape
    assert sf.U @ M @ sf.V == sf.diagonal(m, n)
    for a, b in zip(sf.invariants, sf.invariants[1:]):
        assert b % a == 0


# -- spec examples ---------------------------------------------------------------


def test_snf_zero_matrix():
    sf = smith_normal_form(Matrix(ZZ, [[0]]))
    assert sf.rank == 0 and list(sf.invariants) == []


def test_snf_identity():
    assert list(smith_normal_form(Matrix.identity(ZZ, 2)).invariants) == [1, 1]


def test_snf_diag_2_3():
    M = Matrix(ZZ, [[2, 0], [0, 3]])
    sf = smith_normal_form(M)
    assert list(sf.invariants) == [1, 6] == oracle_invariants([[2, 0], [0, 3]])
    check_smith(M, sf)


def test_dvr_identity():
    R = GroundRing.padic(2, 12)
    assert list(dvr_smith_form(Matrix.identity(R, 2)).invariants) == [1, 1]


def test_dvr_uniformizer():
    R = GroundRing.padic(2, 12)
    sf = dvr_smith_form(Matrix(R, [[2]]))
    assert list(sf.invariants) == [2] and list(sf.valuations) == [1]


def test_dvr_two_eight():
    R = GroundRing.padic(2, 12)
    M = Matrix(R, [[2, 0], [0, 8]])
    sf = dvr_smith_form(M)
    assert list(sf.invariants) == [2, 8]
    check_smith(M, sf)


def test_dvr_guard_raises():
    # valuation 9 is at the guard for N = 12, G = 4
    R = GroundRing.padic(2, 12)
    with pytest.raises(PrecisionExhausted):
        dvr_smith_form(Matrix(R, [[2 ** 9]]))


def test_truncated_dvr_smith():
    E = EisensteinDatum(2, 16, 2)
    A = E.ring()
    pi = A([0, 1])
    M = Matrix(A, [[pi, 0], [0, A.mul(pi, pi)]])
    sf = dvr_smith_form(M)
    assert list(sf.valuations) == [1, 2]


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(ZZ, 3)).ncols == 0


def test_kernel_symmetric_row():
    K = kernel_basis(Matrix(ZZ, [[2, -2]]))
    assert K.tolist() == [[1], [1]]


def test_kernel_multiplication_map_zi():
    # Z[i] (x) Z[i] -> Z[i], basis i^a (x) i^b
    cols = []
    for a in range(2):
        for b in range(2):
            k = a + b
            cols.append([1 if k == 0 else -1 if k == 2 else 0, 1 if k == 1 else 0])
    M = Matrix.from_columns(ZZ, cols, 2)
    K = kernel_basis(M)
    assert K.ncols == 2
    assert (M @ K).is_zero()


def test_bivar_examples():
    f = [-2, 0, 1]
    assert bivar_reduce({(2, 0): 1}, f).coeffs() == bivar_reduce({(0, 0): 2}, f).coeffs()
    for f in ([-2, 0, 1], [1, 1, 1], [5, -3, 0, 1]):
        raw = {(i, 0): c for i, c in enumerate(f)}
        for j, c in enumerate(f):
            raw[(0, j)] = raw.get((0, j), 0) - c
        assert bivar_reduce(raw, f).is_zero()
    assert bivar_reduce({(3, 0): 1, (0, 3): -1}, [-2, 0, 0, 1]).is_zero()


def test_finab_normal_form():
    assert FinAbGroup(0, (6, 4)) == FinAbGroup(0, (2, 12))
    assert FinAbGroup(0, (1, 1, 3)) == FinAbGroup(0, (3,))
    assert FinAbGroup(0, (2, 12)).order == 24


# -- properties -----------------------------------------------------------------

small = st.integers(-9, 9)
mat3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(mat3)
def test_snf_minors_oracle(rows):
    M = Matrix(ZZ, rows)
    sf = smith_normal_form(M)
    check_smith(M, sf)
    assert abs(SyMatrix(sf.U.tolist()).det()) == 1
    assert abs(SyMatrix(sf.V.tolist()).det()) == 1
    assert [abs(d) for d in sf.invariants] == oracle_invariants(rows)


@settings(max_examples=60, deadline=None)
@given(mat3, st.sampled_from([2, 3, 5]))
def test_dvr_matches_integer_p_part(rows, p):
    N = 14
    R = GroundRing.padic(p, N)
    try:
        sf = dvr_smith_form(Matrix(R, [[a % p ** N for a in r] for r in rows]))
    except PrecisionExhausted:
        return
    ints = smith_normal_form(Matrix(ZZ, rows)).invariants
    expected = sorted(p ** vp(abs(d), p) for d in ints)
    assert sorted(sf.invariants) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=2))
def test_kernel_contains_small_solutions(rows):
    M = Matrix(ZZ, rows)
    K = kernel_basis(M)
    assert (M @ K).is_zero()
    # brute force small kernel vectors and check they lie in the span of K
    Kt = SyMatrix(K.tolist()) if K.ncols else None
    for v in itertools.product(range(-2, 3), repeat=3):
        if any(sum(a * b for a, b in zip(r, v)) for r in rows):
            continue
        if not any(v):
            continue
        assert Kt is not None
        aug = Kt.row_join(SyMatrix(v))
        assert aug.rank() == Kt.rank()
        # integrality: solve on the Hermite basis
        sol = Kt.gauss_jordan_solve(SyMatrix(v))[0]
        assert all(x.is_integer for x in sol.subs({s: 0 for s in sol.free_symbols}))


poly_f = st.sampled_from([[-2, 0, 1], [1, 1, 1], [-2, 0, 0, 1], [2, -1, 0, 1]])
coeff = st.integers(-5, 5)


@settings(max_examples=60, deadline=None)
@given(poly_f, st.data())
def test_bivar_multiplicative(f, data):
    e = len(f) - 1
    k = e + 2
    a = {(i, j): data.draw(coeff) for i in range(k) for j in range(k) if data.draw(st.booleans())}
    b = {(i, j): data.draw(coeff) for i in range(k) for j in range(k) if data.draw(st.booleans())}
    ab = {}
    for (i, j), x in a.items():
        for (s, t), y in b.items():
            ab[(i + s, j + t)] = ab.get((i + s, j + t), 0) + x * y
    assert (bivar_reduce(a, f) * bivar_reduce(b, f)).coeffs() == bivar_reduce(ab, f).coeffs()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (2, 3), (5, 3)]), st.lists(st.integers(-50, 50), min_size=1, max_size=3),
       st.lists(st.integers(-50, 50), min_size=1, max_size=3))
def test_dvr_valuation_additive(pe, x, y):
    p, e = pe
    A = EisensteinDatum(p, 16, e).ring()
    a, b = A(x), A(y)
    va, vb = A.valuation(a), A.valuation(b)
    if va is None or vb is None or va + vb >= A.pivot_limit:
        return
    assert A.valuation(A.mul(a, b)) == va + vb


def test_poly_mul_small():
    assert pmul([1, 1], [1, -1]) == [1, 0, -1]


# -- backends ---------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.sampled_from([2, 3, 5]), st.data())
def test_backends_agree(m, n, p, data):
    N = 10
    mod = p ** N
    rows = [[data.draw(st.integers(0, mod - 1)) * p ** data.draw(st.integers(0, 3)) % mod for _ in range(n)]
            for _ in range(m)]
    outs = []
    for b in available_backends():
        try:
            outs.append(modular_smith([list(r) for r in rows], m, n, mod, p, N - 4, backend=b))
        except PrecisionExhausted:
            outs.append("precision")
    assert all(o == outs[0] for o in outs)


def test_pure_python_flag_selects_fallback():
    env = dict(os.environ, RAMFORGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from ramforge.exactalg import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_generic_smith_dispatch_over_fp():
    F = GroundRing.prime_field(3)
    sf = smith(Matrix(F, [[1, 2], [2, 1]]))
    assert sf.rank == 1
