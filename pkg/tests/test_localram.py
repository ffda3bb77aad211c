import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ramforge.errors import DegenerateInput, InputError, NotMaximal, VerificationFailure
from ramforge.localram import (
    MIXED,
    TOTALLY_RAMIFIED,
    UNRAMIFIED,
    EisensteinDatum,
    build_tensor_square,
    check_solid,
    classify,
    datum_from_poly,
    fiber_restatement,
    is_eisenstein,
    localize,
    omega_witness,
    thm_equiv_rows,
    triple_fiber_check,
    verify_L2,
    verify_mainlemma,
)
from ramforge.localram import verify as verify_mod
from ramforge.numberfield import NumberRing

x, y = sympy.symbols("x y")


def sym_poly(coeffs, var):
    return sum(c * var ** i for i, c in enumerate(coeffs))


def reduce_xy(expr, f):
    """Remainder of expr modulo (f(x), f(y)) over Q, as an expanded expression."""
    return sympy.reduced(sympy.expand(expr), [sym_poly(f, x), sym_poly(f, y)], x, y)[1]


def _datum(p, e, g, u):
    return EisensteinDatum(p, 16, e, tuple(g[: e - 1]), 1 + (u - 1) % (p - 1))


datum_st = st.builds(
    _datum,
    st.sampled_from([2, 3, 5]),
    st.sampled_from([2, 3, 4]),
    st.lists(st.integers(0, 25), min_size=3, max_size=3),
    st.integers(1, 4),
)


# -- Eisenstein data and localization ---------------------------------------------------


def test_datum_validation():
    with pytest.raises(InputError):
        EisensteinDatum(4, 16, 2)
    with pytest.raises(InputError):
        EisensteinDatum(3, 16, 2, (), 3)
    with pytest.raises(InputError):
        EisensteinDatum(2, 16, 2, (1, 1), 1)


def test_datum_encodes_eisenstein(datum):
    assert is_eisenstein(datum.poly_coeffs(), datum.p)
    assert datum_from_poly(datum.poly_coeffs(), datum.p, datum.N) == datum


def test_parse_roundtrip():
    E = EisensteinDatum.parse("p=5,e=4,g=3;7,u=2", N=12)
    assert (E.p, E.e, E.g, E.u, E.N) == (5, 4, (3, 7), 2, 12)
    assert EisensteinDatum.parse(E.label(), N=12) == E


def test_localize_gaussian_at_2():
    rep = localize(NumberRing([1, 0, 1]), 2)
    (q,) = rep.factors
    assert (q.e, q.f, q.classification) == (2, 1, TOTALLY_RAMIFIED)
    # minimal polynomial of 1 + i is x^2 - 2x + 2
    assert q.datum.to_json()["f"] == [2, -2, 1]


def test_localize_gaussian_at_3():
    (q,) = localize(NumberRing([1, 0, 1]), 3).factors
    assert (q.e, q.f, q.classification) == (1, 2, UNRAMIFIED)


def test_localize_mixed():
    rep = localize(NumberRing([1, 0, -1, 0, 1]), 3)
    (q,) = rep.factors
    assert (q.e, q.f, q.classification) == (2, 2, MIXED)
    assert q.datum is None and q.note


def test_localize_non_maximal():
    with pytest.raises(NotMaximal):
        localize(NumberRing([3, 0, 1]), 2)


def test_localize_data_are_eisenstein(field_poly):
    A = NumberRing(field_poly)
    for p in A.ramified_primes():
        for q in localize(A, p).factors:
            if q.datum is not None and q.e > 1:
                assert is_eisenstein(q.datum.poly_coeffs(), p)
                assert q.datum.differential_exponent() == q.d


def test_differential_exponents():
    assert EisensteinDatum(2, 16, 2).differential_exponent() == 3
    assert EisensteinDatum(3, 16, 3).differential_exponent() == 5
    assert EisensteinDatum(3, 16, 2, (), 2).differential_exponent() == 1


def test_tame_wild_on_data(datum):
    d = datum.differential_exponent()
    if datum.e % datum.p:
        assert d == datum.e - 1
    else:
        assert d >= datum.e


# -- the tensor square ----------------------------------------------------------------


@pytest.mark.parametrize("p, e, rank", [(2, 1, 0), (2, 2, 2), (2, 3, 6)])
def test_rank_of_I(p, e, rank):
    assert build_tensor_square(EisensteinDatum(p, 16, e)).rank_I == rank


def test_I_contains_dpi(datum):
    T = build_tensor_square(datum)
    assert T.rank_I == datum.e ** 2 - datum.e
    assert T.in_I(T.dpi())
    for j in range(T.rank_I):
        unit = [1 if i == j else 0 for i in range(T.rank_I)]
        assert T.in_I(T.I_element(unit))


# -- the witness ------------------------------------------------------------------------


def test_witness_x2_minus_2():
    E = EisensteinDatum(2, 16, 2)
    w = omega_witness(E)
    T = build_tensor_square(E)
    assert w.w1.coeffs() == T.dpi().coeffs()
    assert w.w2.coeffs() == (-T.dpi()).coeffs()
    assert w.ok


def test_witness_x3_minus_2():
    E = EisensteinDatum(2, 16, 3)
    w = omega_witness(E)
    assert sympy.expand(sympy.Add(*[c * x ** i * y ** j for (i, j), c in w.raw1.items()])) == x ** 2 - y ** 2
    assert sympy.expand(sympy.Add(*[c * x ** i * y ** j for (i, j), c in w.raw2.items()])) == sympy.expand(-y * (x - y))


def test_witness_rejects_e1():
    with pytest.raises(DegenerateInput):
        omega_witness(EisensteinDatum(2, 16, 1))


@settings(max_examples=30, deadline=None)
@given(datum_st)
def test_witness_certificate(E):
    assert omega_witness(E).ok


@settings(max_examples=20, deadline=None)
@given(datum_st)
def test_witness_cycle_sympy_oracle(E):
    # pi1 w1 - pi2 w2 reduces to zero modulo (f(x), f(y)) over Q once u^-1 is rational
    f = E.poly_coeffs()
    g = sym_poly(list(E.g), x), sym_poly(list(E.g), y)
    e, p, u = E.e, E.p, sympy.Rational(1, E.u)
    dpi = x - y
    w1 = x ** (e - 1) - y ** (e - 1)
    w2 = u * g[0] * (y ** (e - 1) - p * g[1]) * dpi + p * (g[0] - g[1]) - y ** (e - 2) * dpi
    assert reduce_xy(x * w1 - y * w2, f) == 0


# -- Lemma L2 and the weak equivalence -----------------------------------------------------


def test_L2_examples():
    r = verify_L2(EisensteinDatum(2, 16, 2))
    assert r.d == 3 and r.left == r.right == {0: 1, 1: 1, 2: 0}
    r = verify_L2(EisensteinDatum(3, 16, 3))
    assert r.d == 5 and r.ok
    r = verify_L2(EisensteinDatum(5, 16, 1))
    assert not any(r.left.values()) and not any(r.right.values())


def test_L2_corpus(datum):
    assert verify_L2(datum).ok


@pytest.mark.parametrize("p, e, u", [(2, 2, 1), (2, 3, 1), (3, 2, 2)])
def test_mainlemma_examples(p, e, u):
    rep = verify_mainlemma(EisensteinDatum(p, 16, e, (), u))
    assert rep.ok
    assert rep.iso_degrees == {0: True, 1: True, 2: True}
    assert rep.source == rep.target == {0: 1, 1: 1, 2: 0}


def test_mainlemma_corpus(datum):
    assert verify_mainlemma(datum).ok


def test_mainlemma_trivial_for_e1():
    assert verify_mainlemma(EisensteinDatum(3, 16, 1)).ok


@settings(max_examples=25, deadline=None)
@given(datum_st)
def test_mainlemma_property(E):
    assert verify_mainlemma(E).ok


def test_mainlemma_detects_corrupted_source(monkeypatch):
    real = verify_mod.source_complex

    def broken(T):
        C = real(T)
        # drop the degree-2 differential: homology in degree 1 grows
        C.diffs.pop(2)
        return C

    monkeypatch.setattr(verify_mod, "source_complex", broken)
    # phi no longer commutes with d, which the chain map refuses
    with pytest.raises(VerificationFailure):
        verify_mainlemma(EisensteinDatum(2, 16, 2), strict=False)


def test_fiber_restatement(datum):
    fib, om = fiber_restatement(datum)
    assert fib == om == {0: 1, 1: 1}


# -- classification -----------------------------------------------------------------------


def test_classify_gaussian():
    (q,) = classify(NumberRing([1, 0, 1]), 2).factors
    assert q.classification == TOTALLY_RAMIFIED and q.witnesses["mainlemma"]
    rep = classify(NumberRing([1, 0, 1]), 5)
    assert all(q.classification == UNRAMIFIED and q.witnesses["omega1_local_trivial"] for q in rep.factors)


def test_classify_integers():
    (q,) = classify(NumberRing([0, 1]), 7).factors
    assert q.classification == UNRAMIFIED


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_thm_equiv_agreement(field_poly, p):
    for row in thm_equiv_rows(NumberRing(field_poly), p):
        assert row["agree"], row


def test_mixed_reported():
    rows = thm_equiv_rows(NumberRing([1, 0, -1, 0, 1]), 3)
    assert [(r["e"], r["f"], r["classification"]) for r in rows] == [(2, 2, MIXED)]


# -- solid algebras and the triple ----------------------------------------------------------


@pytest.mark.parametrize("spec", ["Z", "Z[1/2]", "Z[1/3]", "Z[1/6]"])
def test_solid(spec):
    assert check_solid(spec).solid


@pytest.mark.parametrize("n", [2, 4])
def test_not_solid(n):
    rep = check_solid(f"Z/{n}")
    assert not rep.solid
    assert rep.tor[1] == f"Z/{n}"


def test_solid_rejects_unknown():
    with pytest.raises(InputError):
        check_solid("Q")


def test_triple_tower_sqrt2():
    rep = triple_fiber_check([-2, 0, 1], [-2, 0, 0, 0, 1], [0, 0, 1], 2, depth=4)
    assert rep.exact and rep.comparison_quasi_iso


@pytest.mark.parametrize("f", [[1, 0, 1], [-2, 0, 1]])
def test_triple_degenerate(f):
    rep = triple_fiber_check(f, f, [0, 1], 2, depth=3)
    assert rep.exact


def test_triple_rejects_bad_embedding():
    with pytest.raises(InputError):
        triple_fiber_check([-2, 0, 1], [-2, 0, 0, 0, 1], [0, 1], 2, depth=2)
