import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramforge.errors import ComplexError, NoLift
from ramforge.exactalg import FinAbGroup, GroundRing, Matrix
from ramforge.homalg import (
    BasedAlgebra,
    ChainComplex,
    ChainMap,
    PresentedModule,
    free_resolution,
    homology,
    identity_map,
    les_exactness,
    lift_chain_map,
    mapping_fiber,
    sequence_exact_at,
    tor,
)
from ramforge.localram import EisensteinDatum
from ramforge.localram.verify import koszul
from ramforge.exactalg.poly import ppow

ZZ = GroundRing.integers()
Zmod = BasedAlgebra.ground(ZZ)


def cyclic_Z(n):
    return PresentedModule.cyclic(Zmod, [[n]] if n else [], name=f"Z/{n}")


def G(*torsion, free=0):
    return FinAbGroup(free, tuple(torsion))


# -- homology -------------------------------------------------------------------


def test_homology_times_two():
    C = ChainComplex(ZZ, {0: 1, 1: 1}, {1: Matrix(ZZ, [[2]])})
    H = homology(C)
    assert H[0] == G(2) and H[1] == G()


def test_homology_truncated_pi_span():
    # span(pi) inside k[pi]/(pi^2) with x pi: the map is zero
    F2 = GroundRing.prime_field(2)
    C = ChainComplex(F2, {0: 1, 1: 1}, {1: Matrix(F2, [[0]])})
    assert homology(C).dims() == {0: 1, 1: 1}


def test_homology_cube_of_pi_koszul():
    # A / (pi^3) --pi--> A / (pi^3) modelled by the Koszul complex on (pi^3, pi)
    E = EisensteinDatum(2, 16, 2)
    K = koszul(E, ppow([0, 1], 3), [0, 1])
    H = homology(K)
    assert H[0] == G(2) and H[1] == G(2) and H[2] == G()


def test_complex_rejects_nonzero_square():
    with pytest.raises(ComplexError):
        ChainComplex(ZZ, {0: 1, 1: 1, 2: 1}, {1: Matrix(ZZ, [[1]]), 2: Matrix(ZZ, [[1]])})


# -- resolutions ------------------------------------------------------------------


def test_resolution_free_module():
    P = free_resolution(PresentedModule.free(Zmod), 4)
    assert P.complete and P.gens == [1]


def test_resolution_Z_mod_4():
    P = free_resolution(cyclic_Z(4), 4)
    assert P.gens == [1, 1] and P.complete
    assert P.complex.d(1).tolist() == [[4]]


def test_resolution_residue_field_over_dvr():
    E = EisensteinDatum(2, 16, 2)
    R = E.base()
    A = BasedAlgebra.monogenic(R, E.poly_coeffs())
    k = PresentedModule.cyclic(A, [[0, 1]], name="k")
    P = free_resolution(k, 3)
    assert P.gens == [1, 1] and P.complete
    H = homology(P.complex)
    assert H[0] == G(2) and H[1] == G()


@pytest.mark.parametrize("f", [[1, 0, 1], [1, 1, 1], [-2, 0, 1]])
@pytest.mark.parametrize("depth", [3, 4])
def test_resolution_correct(f, depth):
    L = BasedAlgebra.tensor_square(ZZ, f)
    from ramforge.exactalg import bivar_reduce

    M = PresentedModule.cyclic(L, [bivar_reduce({(1, 0): 1, (0, 1): -1}, f).coeffs()])
    P = free_resolution(M, depth)
    C = P.complex
    C.check()
    H = homology(C, range(0, depth))
    assert H[0] == M.ground_group()
    assert all(H[n].is_trivial for n in range(1, depth))


# -- Tor --------------------------------------------------------------------------


def test_tor_Z4_Z6():
    T = tor(cyclic_Z(4), cyclic_Z(6), 4)
    assert T[0] == G(2) and T[1] == G(2)
    assert all(T[n].is_trivial for n in range(2, 5))


def test_tor_free_argument():
    M = cyclic_Z(6)
    T = tor(PresentedModule.free(Zmod), M, 3)
    assert T[0] == G(6) and all(T[n].is_trivial for n in (1, 2, 3))


def test_tor_residue_over_truncated_Zp():
    R = GroundRing.padic(2, 16)
    L = BasedAlgebra.ground(R)
    k = PresentedModule.cyclic(L, [[2]])
    assert tor(k, k, 3).dims() == {0: 1, 1: 1, 2: 0, 3: 0}


moduli = st.integers(0, 12)


@settings(max_examples=25, deadline=None)
@given(moduli, moduli)
def test_tor_symmetry_over_Z(a, b):
    s, t = tor(cyclic_Z(a), cyclic_Z(b), 2), tor(cyclic_Z(b), cyclic_Z(a), 2)
    assert all(s[n] == t[n] for n in range(3))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([[1, 0, 1], [1, 1, 1]]), st.integers(1, 4), st.integers(1, 4), st.integers(0, 3), st.integers(0, 3))
def test_tor_symmetry_over_monogenic(f, a, b, c, d):
    L = BasedAlgebra.monogenic(ZZ, f)
    M = PresentedModule.cyclic(L, [[a, c]])
    N = PresentedModule.cyclic(L, [[b, d]])
    s, t = tor(M, N, 2), tor(N, M, 2)
    assert all(s[n] == t[n] for n in range(3))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2 ** 31))
def test_euler_characteristic_over_field(p, seed):
    rng = random.Random(seed)
    F = GroundRing.prime_field(p)
    ranks = [rng.randint(0, 4) for _ in range(4)]
    # random differentials, zeroed whenever they would break d d = 0
    diffs = {}
    prev = None
    for n in range(1, 4):
        r_lo, r_hi = ranks[n - 1], ranks[n]
        D = Matrix(F, [[rng.randrange(p) for _ in range(r_hi)] for _ in range(r_lo)], r_hi)
        if prev is not None and not (prev @ D).is_zero():
            D = Matrix.zeros(F, r_lo, r_hi)
        diffs[n] = D
        prev = D
    C = ChainComplex(F, dict(enumerate(ranks)), diffs)
    H = homology(C)
    chi_c = sum((-1) ** n * r for n, r in enumerate(ranks))
    chi_h = sum((-1) ** n * H[n].free_rank for n in range(4))
    assert chi_c == chi_h


# -- fibers and lifts --------------------------------------------------------------


def test_fiber_of_identity_acyclic():
    C = free_resolution(cyclic_Z(4), 2).complex
    assert homology(mapping_fiber(identity_map(C))).is_acyclic()


def test_fiber_of_zero_splits():
    C = ChainComplex(ZZ, {0: 1, 1: 1}, {1: Matrix(ZZ, [[3]])})
    zero = ChainMap(C, C, {0: Matrix(ZZ, [[0]]), 1: Matrix(ZZ, [[0]])})
    H = homology(mapping_fiber(zero))
    # H(C) + H(C)[-1]: Z/3 in degrees 0 and -1
    assert H[0] == G(3) and H[-1] == G(3) and H[1].is_trivial


def test_fiber_of_times_two():
    Z0 = ChainComplex(ZZ, {0: 1})
    phi = ChainMap(Z0, Z0, {0: Matrix(ZZ, [[2]])})
    H = homology(mapping_fiber(phi))
    assert H[0].is_trivial and H[-1] == G(2)


def test_lift_identity():
    P = free_resolution(cyclic_Z(4), 3)
    phi = lift_chain_map([[1]], P, P)
    assert all(phi.f(n) == Matrix.identity(ZZ, P.complex.rank(n)) for n in phi.degrees())


def test_lift_zero():
    P = free_resolution(cyclic_Z(4), 3)
    phi = lift_chain_map([[0]], P, P)
    assert all(phi.f(n).is_zero() for n in phi.degrees())


def test_lift_projection_Z4_to_Z2():
    P, Q = free_resolution(cyclic_Z(4), 2), free_resolution(cyclic_Z(2), 2)
    phi = lift_chain_map([[1]], P, Q)
    assert phi.f(1).tolist() == [[2]]
    phi.check()


def test_lift_rejects_non_map():
    P, Q = free_resolution(cyclic_Z(2), 2), free_resolution(cyclic_Z(4), 2)
    with pytest.raises(NoLift):
        lift_chain_map([[1]], P, Q)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12))
def test_lift_commutes(a, b):
    # Z/a -> Z/b, 1 -> b / gcd(a, b) is well defined
    from math import gcd

    P, Q = free_resolution(cyclic_Z(a), 3), free_resolution(cyclic_Z(b), 3)
    phi = lift_chain_map([[b // gcd(a, b)]], P, Q)
    phi.check()


def test_les_identity():
    C = free_resolution(cyclic_Z(6), 2).complex
    rep = les_exactness(identity_map(C), raise_on_failure=True)
    assert rep.exact


def test_les_from_zero_source():
    Y = ChainComplex(ZZ, {0: 1, 1: 1}, {1: Matrix(ZZ, [[5]])})
    X = ChainComplex(ZZ, {0: 0})
    phi = ChainMap(X, Y, {0: Matrix.zeros(ZZ, 1, 0), 1: Matrix.zeros(ZZ, 1, 0)}, check=False)
    assert les_exactness(phi).exact
    assert homology(mapping_fiber(phi))[-1] == G(5)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.integers(0, 9))
def test_les_exact_on_random_maps(a, b, c):
    X = ChainComplex(ZZ, {0: 1, 1: 1}, {1: Matrix(ZZ, [[a]])})
    Y = ChainComplex(ZZ, {0: 1, 1: 1}, {1: Matrix(ZZ, [[b]])})
    # phi_0 d = c b a = d phi_1
    phi = ChainMap(X, Y, {0: Matrix(ZZ, [[c * b]]), 1: Matrix(ZZ, [[c * a]])})
    assert les_exactness(phi).exact


def test_sequence_not_exact_when_maps_vanish():
    C = ChainComplex(ZZ, {0: 1})
    zero = ChainMap(C, C, {0: Matrix(ZZ, [[0]])})
    assert not sequence_exact_at(zero, zero, 0)
