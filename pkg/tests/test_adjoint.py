import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qutritct.adjoint import (
    PREFIXES,
    Q_BASIS,
    Adj8,
    PrefixDiscriminant,
    adjoint_from_matrix,
    adjoint_generator,
    adjoint_of_word,
    adjoint_tables,
    discriminant,
    k_adjoint_residue,
    prefix_discriminator,
    q_basis_gram,
    symplectic_check,
)
from qutritct.core import Mat3, Word, build_clifford_tables, generator_matrix, word_to_matrix
from qutritct.errors import DomainError, NotADenominatorExponent, NotCliffordTError
from qutritct.rings import AlphaPoly, AlphaRational

HALF = AlphaRational(Fraction(1, 2))
SQRT3_HALF = AlphaRational(AlphaPoly([0, 3, 0, -4, 0, 0]))
ONE = AlphaRational(1)
T1 = AlphaRational(AlphaPoly([Fraction(-1, 4), 0, 2, 0, -2, 0]), 2)
T2 = AlphaRational(AlphaPoly([Fraction(1, 8), 0, Fraction(-3, 2), 0, 2, 0]), 2)
T3 = AlphaRational(AlphaPoly([Fraction(-1, 16), 0, Fraction(1, 2), 0, -1, 0]), 3)
T4 = AlphaRational(AlphaPoly([Fraction(1, 8), 0, -1, 0, 1, 0]), 3)

words = st.lists(st.sampled_from("HST"), max_size=40).map(lambda g: Word(list(g)))


def table(entries):
    z = AlphaRational(0)
    rows = [[z] * 8 for _ in range(8)]
    for (i, j), v in entries.items():
        rows[i][j] = v
    return Adj8(rows)


S_HAT = table({(0, 0): ONE, (1, 3): ONE, (2, 1): ONE, (3, 2): ONE, (4, 4): ONE, (5, 7): ONE, (6, 5): ONE, (7, 6): ONE})
H_HAT = table(
    {
        (0, 1): ONE,
        (1, 0): ONE,
        (2, 3): -HALF,
        (2, 7): -SQRT3_HALF,
        (3, 2): ONE,
        (4, 5): ONE,
        (5, 4): -ONE,
        (6, 3): SQRT3_HALF,
        (6, 7): -HALF,
        (7, 6): -ONE,
    }
)
_z = AlphaRational(0)
T_HAT = Adj8(
    [
        [ONE, _z, _z, _z, _z, _z, _z, _z],
        [_z, T1, T1, T2, _z, T3, T3, T4],
        [_z, T2, T1, T1, _z, T4, T3, T3],
        [_z, T1, T2, T1, _z, T3, T4, T3],
        [_z, _z, _z, _z, ONE, _z, _z, _z],
        [_z, -T3, -T3, -T4, _z, T1, T1, T2],
        [_z, -T4, -T3, -T3, _z, T2, T1, T1],
        [_z, -T3, -T4, -T3, _z, T1, T2, T1],
    ]
)

RHO0_S = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
]
RHO0_H = [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 2, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 2, 0],
]

# nonzero quadrants of rho_0 for the prefixes in LM, keyed by the L part
LM_PP = {
    0: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    1: [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    2: [[0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 1]],
    3: [[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0]],
}
LM_MM = {
    0: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    1: [[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 1], [0, 0, 2, 0]],
    2: [[0, 1, 0, 0], [0, 0, 2, 0], [2, 0, 0, 0], [0, 0, 0, 1]],
    3: [[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 2, 0], [2, 0, 0, 0]],
}


def as_tuple(rows):
    return tuple(tuple(r) for r in rows)


def rho0(a):
    """Entrywise rho_0 of an alpha-integral adjoint, as an 8x8 tuple."""
    q = {name: a.quadrant_residue(name, 0) for name in ("++", "+-", "-+", "--")}
    top = [q["++"][i] + q["+-"][i] for i in range(4)]
    bottom = [q["-+"][i] + q["--"][i] for i in range(4)]
    return tuple(top + bottom)


def test_generator_tables_match_displays():
    assert adjoint_generator("S") == S_HAT
    assert adjoint_generator("H") == H_HAT
    assert adjoint_generator("T") == T_HAT


@pytest.mark.parametrize("g", "HSTXZ")
def test_generator_tables_match_matrix_conversion(g):
    m = generator_matrix(g)
    assert adjoint_from_matrix(m) == adjoint_generator(g)
    assert adjoint_from_matrix(m, method="cyc36") == adjoint_generator(g)


def test_t_hat_entry():
    assert adjoint_generator("T").entry(1, 1) == T1
    assert adjoint_generator("T").quadrant_lde("++") == 2


def test_h_entries_are_half_and_sqrt3_half():
    assert float(SQRT3_HALF) == pytest.approx(3**0.5 / 2)


def test_phase_is_invisible():
    tb = build_clifford_tables()
    assert adjoint_from_matrix(tb.matrices[tb.omega]) == Adj8.identity()
    assert adjoint_from_matrix(Mat3.identity()) == Adj8.identity()


def test_q_basis_orthonormal():
    g = q_basis_gram()
    assert g == [[1 if i == j else 0 for j in range(8)] for i in range(8)]
    for q in Q_BASIS:
        n = q.numerator()
        assert abs(np.trace(np.array(n.to_complex()))) < 1e-12
        assert n.dagger() == (n if q.sign_type == "plus" else Mat3.scalar((-1, 0, 0, 0, 0, 0)) * n)


def test_hh_consistency():
    assert adjoint_generator("H") @ adjoint_generator("H") == adjoint_of_word("H H")


@settings(max_examples=60, deadline=None)
@given(words)
def test_special_orthogonal(w):
    a = adjoint_of_word(w)
    assert a.is_orthogonal()
    assert a.det() == 1


@settings(max_examples=60, deadline=None)
@given(words)
def test_from_matrix_matches_word(w):
    assert adjoint_from_matrix(word_to_matrix(w)) == adjoint_of_word(w)


def test_cyc36_path_agrees():
    rng = random.Random(5)
    for _ in range(10):
        w = Word([rng.choice("HST") for _ in range(rng.randint(0, 20))])
        u = word_to_matrix(w)
        assert adjoint_from_matrix(u, method="cyc36") == adjoint_from_matrix(u)


def test_non_unitary_rejected():
    m = Mat3.scalar((2, 0, 0, 0, 0, 0))
    with pytest.raises(DomainError):
        adjoint_from_matrix(m)


def test_float_matches_numeric_conjugation():
    w = Word("H T S H T")
    u = np.array(word_to_matrix(w).to_complex())
    a = adjoint_of_word(w).to_float()
    basis = []
    for q in Q_BASIS:
        basis.append(np.array(q.numerator().to_complex()) * (1j if q.sign_type == "minus" else 1) / 6**0.5)
    want = np.array([[np.trace(basis[i] @ u @ basis[j] @ u.conj().T).real for j in range(8)] for i in range(8)])
    assert np.allclose(a, want)


def test_residue_tables():
    assert rho0(adjoint_generator("S")) == as_tuple(RHO0_S)
    assert rho0(adjoint_generator("H")) == as_tuple(RHO0_H)


def test_lm_residue_tables():
    at = adjoint_tables()
    tb = build_clifford_tables()
    for (l, m) in PREFIXES:
        a = at.clifford[tb.lm[(l, m)]]
        assert a.quadrant_residue("++", 0) == as_tuple(LM_PP[l])
        mm = LM_MM[l] if m == 0 else [[(-x) % 3 for x in row] for row in LM_MM[l]]
        assert a.quadrant_residue("--", 0) == as_tuple(mm)


def test_t_residue():
    r = k_adjoint_residue(adjoint_generator("T"), 2)
    pp = r.quadrant("++")
    assert pp[0] == (0, 0, 0, 0)
    assert all(pp[i][j] == 2 for i in range(1, 4) for j in range(1, 4))


def test_residue_below_lde():
    with pytest.raises(NotADenominatorExponent):
        k_adjoint_residue(adjoint_generator("T"), 0)


def test_clifford_adjoint_properties():
    at = adjoint_tables()
    allowed = {AlphaRational(0), ONE, -ONE, HALF, -HALF, SQRT3_HALF, -SQRT3_HALF}
    for a in at.clifford:
        ents = a.entries
        assert all(e in allowed for row in ents for e in row)
        assert a.quadrant_lde("++") == 0 and a.lde() == 0
        assert all(not any(row) for row in a.quadrant_residue("+-", 0))
        assert all(not any(row) for row in a.quadrant_residue("-+", 0))
        pp = a.quadrant_residue("++", 0)
        assert sorted(sum(row) for row in pp) == [1, 1, 1, 1]
        assert all(sum(pp[i][j] for i in range(4)) == 1 for j in range(4))
    assert len(at.by_key) == 216


def test_residue_product_rule():
    at = adjoint_tables()
    rng = random.Random(1)
    for _ in range(20):
        w = Word([rng.choice("HST") for _ in range(rng.randint(1, 15))])
        u = adjoint_of_word(w)
        k = u.quadrant_lde("++")
        c = at.clifford[rng.randrange(648)]
        lhs = k_adjoint_residue(u @ c, k).rows
        r0 = rho0(c)
        ru = k_adjoint_residue(u, k).rows
        rhs = tuple(tuple(sum(ru[i][t] * r0[t][j] for t in range(8)) % 3 for j in range(8)) for i in range(8))
        assert lhs == rhs


def test_prefix_discriminator_examples():
    t = adjoint_generator("T")
    h = adjoint_generator("H")
    assert prefix_discriminator(t, 1) == (0, 0)
    assert prefix_discriminator(h @ t, 1) == (1, 0)
    assert prefix_discriminator(h @ h @ t, 1) == (0, 1)
    d = discriminant(h @ h @ t, 1)
    assert d == PrefixDiscriminant(0, (2, 2, 2))


def test_discriminants_distinct():
    at = adjoint_tables()
    assert len(at.disc) == 8
    assert sorted(at.disc.values()) == sorted(PREFIXES)


def test_discriminant_right_clifford_invariant():
    at = adjoint_tables()
    for p in PREFIXES:
        d = discriminant(at.syllable[p], 1)
        for c in range(0, 648, 5):
            assert discriminant(at.syllable[p] @ at.clifford[c], 1) == d


def test_discriminator_rejects_bad_pattern():
    with pytest.raises(NotCliffordTError):
        prefix_discriminator(Adj8.identity(), 1)


def test_symplectic_examples():
    assert symplectic_check(adjoint_generator("T"))
    assert symplectic_check(adjoint_of_word("S T Z"))
    assert not symplectic_check(adjoint_generator("H"))
