"""Acceptance criteria 1-11.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""
import functools
import io

from ramforge import cli
from ramforge.exactalg import FinAbGroup, GroundRing, Matrix, smith_normal_form
from ramforge.homalg import BasedAlgebra, PresentedModule, tor
from ramforge.localram import (
    MIXED,
    check_solid,
    localize,
    thm_equiv_rows,
    triple_fiber_check,
    verify_L2,
    verify_mainlemma,
)
from ramforge.numberfield import NumberRing, dedekind_maximal, kaehler_global, local_kaehler
from ramforge.thh import hochschild_direct, hochschild_groups, les_assembly_check, loop_homology, ram_groups, thh_groups

try:
    from conftest import FIELDS, corpus_data, random_data
except ImportError:  # run as a script from elsewhere
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).parent))
    from conftest import FIELDS, corpus_data, random_data

RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            try:
                fn(*a, **kw)
            except BaseException:
                RESULTS[number] = (False, title)
                raise
            RESULTS[number] = (True, title)

        return run

    return wrap


def summary_lines():
    return [f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}" for n, (ok, title) in sorted(RESULTS.items())]


def G(*torsion, free=0):
    return FinAbGroup(free, tuple(torsion))


def all_data():
    """Corpus Eisenstein data plus the local data of every totally ramified corpus prime."""
    data = list(corpus_data())
    for f in FIELDS.values():
        A = NumberRing(f)
        for p in A.ramified_primes():
            for q in localize(A, p, N=16).factors:
                if q.datum is not None and q.e > 1:
                    data.append(q.datum)
    return data


def snf_oracle_group(rows):
    M = Matrix(GroundRing.integers(), rows)
    return FinAbGroup.from_smith(smith_normal_form(M).invariants, len(rows))


@criterion(1, "MainLemma certified on the corpus and 50 random Eisenstein data at N = 16")
def test_criterion_1_mainlemma():
    data = all_data() + random_data(50)
    assert len(data) >= 50
    failures = [E.label() for E in data if not verify_mainlemma(E, strict=False).ok]
    assert not failures, failures


@criterion(2, "Lemma L2: both pipelines give (1, 1) in degrees (0, 1), zero elsewhere")
def test_criterion_2_L2():
    for E in all_data() + random_data(50):
        r = verify_L2(E)
        assert r.left == r.right == {0: 1, 1: 1, 2: 0}, E.label()


@criterion(3, "ThmEquiv agreement at every maximal (field, p <= 7); x^4 - x^2 + 1 Mixed at 3")
def test_criterion_3_thm_equiv():
    for f in FIELDS.values():
        A = NumberRing(f)
        for p in (2, 3, 5, 7):
            if not dedekind_maximal(A, p):
                continue
            for row in thm_equiv_rows(A, p):
                assert row["agree"], (f, p, row)
    rows = thm_equiv_rows(NumberRing([1, 0, -1, 0, 1]), 3)
    assert [(r["e"], r["f"], r["classification"]) for r in rows] == [(2, 2, MIXED)]


@criterion(4, "THH tables of Z[i] and Z match their SNF oracles and the loop-space table")
def test_criterion_4_thh_tables():
    T = thh_groups(NumberRing([1, 0, 1]), 6)
    # oracle: multiplication by 2 n i on Z[i] is [[0, -2n], [2n, 0]]
    for n in (1, 2, 3):
        assert T[2 * n - 1] == snf_oracle_group([[0, -2 * n], [2 * n, 0]])
    assert T[0] == G(free=2) and T[1] == G(2, 2) and T[3] == G(4, 4) and T[5] == G(6, 6)
    assert all(T[k].is_trivial for k in (2, 4, 6))
    TZ = thh_groups(NumberRing([0, 1]), 11)
    L = loop_homology("ΩS³⟨3⟩", FinAbGroup(1), 11)
    assert all(TZ[k] == L[k] for k in range(12))
    assert all(TZ[2 * n - 1] == snf_oracle_group([[n]]) for n in range(1, 7))


@criterion(5, "LES assembly: |THH_{2n-1}| = n^d |disc| for the corpus, n <= 4")
def test_criterion_5_les():
    for f in FIELDS.values():
        A = NumberRing(f)
        T = thh_groups(A, 7)
        for n in range(1, 5):
            assert T[2 * n - 1].order == n ** A.d * abs(A.disc)
        assert all(s.ok for s in les_assembly_check(A, 4))


@criterion(6, "HH: Tor over A (x) A equals the closed form through degree 5")
def test_criterion_6_hh():
    for f in ([1, 0, 1], [1, 1, 1], [-2, 0, 1]):
        A = NumberRing(f)
        D, C = hochschild_direct(A, 5), hochschild_groups(A, 5)
        assert all(D[k] == C[k] for k in range(6)), f


@criterion(7, "Ram even entries equal Omega^1 and |Omega^1| = |disc| on the corpus")
def test_criterion_7_ram():
    for f in FIELDS.values():
        A = NumberRing(f)
        om = kaehler_global(A)
        assert om.order == abs(A.disc)
        R = ram_groups(A, 7)
        assert all(R[k] == om for k in (0, 2, 4, 6))
        assert all(R[k].is_trivial for k in (1, 3, 5, 7))


@criterion(8, "p-primary part of Omega^1 equals the local A_p/(pi^d_p) group")
def test_criterion_8_completion():
    for f in FIELDS.values():
        A = NumberRing(f)
        om = kaehler_global(A)
        for p in A.ramified_primes():
            assert om.p_part(p) == local_kaehler(A, p), (f, p)


@criterion(9, "Z < Z[sqrt2] < Z[2^(1/4)] at p = 2 is exact through degree 4")
def test_criterion_9_triple():
    rep = triple_fiber_check([-2, 0, 1], [-2, 0, 0, 0, 1], [0, 0, 1], 2, depth=4)
    assert rep.exact and rep.depth == 4


def _tor_oracle_Z4_Z6():
    """ker and coker of x4 on Z/6, by enumeration."""
    image = {(4 * a) % 6 for a in range(6)}
    kernel = [a for a in range(6) if (4 * a) % 6 == 0]
    return 6 // len(image), len(kernel)


@criterion(10, "check_solid: Z[1/n] solid, Z/n not; Tor^Z(Z/4, Z/6) = Z/2 in degrees 0, 1")
def test_criterion_10_solid():
    assert all(check_solid(f"Z[1/{n}]").solid for n in (2, 3, 6))
    assert not any(check_solid(f"Z/{n}").solid for n in (2, 4))
    Z = BasedAlgebra.ground(GroundRing.integers())
    T = tor(PresentedModule.cyclic(Z, [[4]]), PresentedModule.cyclic(Z, [[6]]), 3)
    assert _tor_oracle_Z4_Z6() == (2, 2)
    assert T[0] == T[1] == G(2) and T[2].is_trivial and T[3].is_trivial


@criterion(11, "x^2 + 3 flagged and the report exits 0; N = 3 on a d = 5 datum exits 2")
def test_criterion_11_robustness():
    assert not dedekind_maximal(NumberRing([3, 0, 1]), 2)
    out, err = io.StringIO(), io.StringIO()
    code, doc = cli.run(["report", "--field", "3,0,1"], stdout=out, stderr=err)
    assert code == 0 and any(w["reason"] == "not_maximal" for w in doc["warnings"])
    # x^3 - 3 at 3: wild, d = 5
    assert localize(NumberRing([-3, 0, 0, 1]), 3).factors[0].d == 5
    code, doc = cli.run(["verify-mainlemma", "--eisenstein", "p=3,e=3,g=0,u=1", "--precision", "3"], stdout=out, stderr=err)
    assert code == 2
    code, doc = cli.run(["classify", "--field", "-3,0,0,1", "--prime", "3", "--precision", "3"], stdout=out, stderr=err)
    assert code == 2


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:  # recorded in RESULTS
                pass
    print("\n".join(summary_lines()))
