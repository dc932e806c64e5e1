import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qutritct.errors import NotADenominatorExponent, NotRealError, NotRepresentableError
from qutritct.rings import (
    ALPHA_36,
    AlphaPoly,
    AlphaRational,
    Cyc36Rational,
    CycInt9,
    Dyadic,
    GammaRational,
    gamma_reduce,
    lde,
    real_to_alpha,
    rho,
    rho_k,
)

ZETA = cmath.exp(2j * math.pi / 9)
ALPHA = math.sin(2 * math.pi / 9)

small = st.integers(-20, 20)
cyc = st.lists(small, min_size=6, max_size=6).map(CycInt9)
dyadic_frac = st.builds(lambda a, b: Fraction(a, 2**b), st.integers(-64, 64), st.integers(0, 5))
apoly = st.lists(dyadic_frac, min_size=6, max_size=6).map(AlphaPoly)
arat = st.builds(AlphaRational, apoly, st.integers(0, 8))

T1 = AlphaRational(AlphaPoly([Fraction(-1, 4), 0, 2, 0, -2, 0]), 2)
T3 = AlphaRational(AlphaPoly([Fraction(-1, 16), 0, Fraction(1, 2), 0, -1, 0]), 3)


def a_pow(k):
    p = AlphaPoly([1, 0, 0, 0, 0, 0])
    for _ in range(k):
        p = p * AlphaPoly([0, 1, 0, 0, 0, 0])
    return p


# -- CycInt9 ---------------------------------------------------------------


def test_zeta_times_zeta5():
    assert (CycInt9.zeta(1) * CycInt9.zeta(5)).coeffs == (-1, 0, 0, -1, 0, 0)


def test_conj_zeta():
    assert CycInt9.zeta(1).conj().coeffs == (0, 0, -1, 0, 0, -1)


@given(cyc)
def test_add_zero(x):
    assert x + CycInt9() == x


@given(cyc, cyc)
def test_cyc_mul_matches_complex(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-6 * (1 + abs(complex(a)) * abs(complex(b)))


@given(cyc, cyc)
def test_conj_is_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a


# -- GammaRational ---------------------------------------------------------


def test_gamma_cancellation():
    gamma = CycInt9([1, -1, 0, 0, 0, 0])
    r = gamma_reduce(gamma * CycInt9.zeta(1), 1)
    assert r.gexp == 0 and r.numerator == CycInt9.zeta(1)


def test_integral_three_unchanged():
    r = gamma_reduce(CycInt9(3), 0)
    assert r.gexp == 0 and r.numerator == CycInt9(3)


def test_inverse_sqrt_minus3():
    # the value used for H: (-1 + z - z^2 - z^3 + 2 z^4 - 2 z^5) / gamma^3
    x = GammaRational(CycInt9([-1, 1, -1, -1, 2, -2]), 3)
    assert x.gexp == 3
    assert abs(complex(x) - 1 / cmath.sqrt(-3)) < 1e-12
    assert x * x * (-3) == GammaRational(1)


def test_literal_sign_pattern_is_not_inverse_sqrt_minus3():
    # with the signs of the z^4 and z^5 terms swapped the value is wrong
    y = GammaRational(CycInt9([-1, 1, -1, -1, -2, 2]), 3)
    assert abs(complex(y) - 1 / cmath.sqrt(-3)) > 0.1
    assert y * y * (-3) != GammaRational(1)


@given(cyc, st.integers(0, 6), st.integers(0, 6))
def test_gamma_reduce_drops_gamma_factors(x, k, n):
    gamma = CycInt9([1, -1, 0, 0, 0, 0])
    g = x
    for _ in range(n):
        g = g * gamma
    assert gamma_reduce(g, k + n) == gamma_reduce(x, k)


@given(cyc, st.integers(0, 6))
def test_gamma_reduced_invariant(x, k):
    r = gamma_reduce(x, k)
    assert r.gexp == 0 or not r.numerator.gamma_divisible()
    assert abs(complex(r) - complex(x) / (1 - ZETA) ** k) < 1e-6 * (1 + abs(complex(r)))


# -- Dyadic, AlphaPoly, residues -------------------------------------------


def test_dyadic_reduced():
    d = Dyadic(6, 2)
    assert (d.num, d.dexp) == (3, 1)
    assert d.residue() == 0


def test_rho_examples():
    assert rho(AlphaPoly([3, 0, 0, 0, 0, 0])) == 0
    assert rho(AlphaPoly([Fraction(1, 2), 0, 0, 0, 0, 0])) == 2
    assert rho(AlphaPoly([0, 6, 0, -8, 0, 0])) == 0


def test_alpha_relations():
    three = AlphaPoly([0, 0, 36, 0, -96, 0]) + a_pow(6) * 64
    assert three == AlphaPoly([3, 0, 0, 0, 0, 0])
    sqrt3 = AlphaPoly([0, 6, 0, -8, 0, 0])
    assert sqrt3 * sqrt3 == AlphaPoly([3, 0, 0, 0, 0, 0])
    half = AlphaPoly([-1, 0, 18, 0, -48, 0]) + a_pow(6) * 32
    assert half == AlphaPoly([Fraction(1, 2), 0, 0, 0, 0, 0])


def test_alpha_sixth_power_reduction():
    want = AlphaPoly([Fraction(3, 64), 0, Fraction(-9, 16), 0, Fraction(3, 2), 0])
    assert a_pow(6) == want


@given(apoly, apoly)
def test_rho_is_homomorphism(a, b):
    assert rho(a * b) == rho(a) * rho(b) % 3
    assert rho(a + b) == (rho(a) + rho(b)) % 3


@given(apoly)
def test_alpha_poly_float(a):
    val = sum(float(c) * ALPHA**j for j, c in enumerate(a.coeffs))
    assert abs(float(a) - val) < 1e-9 * (1 + abs(val))


def test_rho_k_examples():
    assert rho_k(T1, 2) == 2
    assert rho_k(AlphaRational(1), 0) == 1
    assert rho_k(-T3, 3) == 1
    assert rho_k(T1, 5) == 0


def test_rho_k_below_lde():
    with pytest.raises(NotADenominatorExponent):
        rho_k(T1, 1)


def test_lde_examples():
    assert lde(T1) == 2
    assert lde(AlphaRational(5)) == 0
    assert lde(AlphaRational(1, 1)) == 1


@settings(max_examples=300)
@given(arat, arat, st.integers(0, 3), st.integers(0, 3))
def test_rho_k_algebra(a, b, da, db):
    ka, kb = a.aexp + da, b.aexp + db
    k = max(ka, kb)
    assert rho_k(a + b, k) == (rho_k(a, k) + rho_k(b, k)) % 3
    assert rho_k(a * b, ka + kb) == rho_k(a, ka) * rho_k(b, kb) % 3


@given(arat)
def test_alpha_rational_lde_invariant(q):
    if not q.is_zero():
        assert q.aexp == 0 or rho_k(q, q.aexp) != 0


@given(arat, arat)
def test_alpha_rational_float(a, b):
    assert math.isclose(float(a * b), float(a) * float(b), rel_tol=1e-7, abs_tol=1e-7)
    assert math.isclose(float(a + b), float(a) + float(b), rel_tol=1e-7, abs_tol=1e-7)


def test_rendering():
    assert str(T1) == "(−1/4+2α²−2α⁴)/α²"
    assert str(GammaRational(CycInt9([-1, 1, 0, 0, -2, 0]), 3)) == "(−1+ζ−2ζ⁴)/γ³"


# -- Cyc36 and conversion ------------------------------------------------


def test_real_to_alpha_sqrt3():
    eta = Cyc36Rational.eta
    x = eta(3) + eta(33)
    assert real_to_alpha(x) == AlphaRational(AlphaPoly([0, 6, 0, -8, 0, 0]))


def test_real_to_alpha_half_and_alpha():
    assert real_to_alpha(Cyc36Rational([Fraction(1, 2)] + [0] * 11)) == AlphaRational(Fraction(1, 2))
    assert real_to_alpha(ALPHA_36) == AlphaRational(AlphaPoly([0, 1, 0, 0, 0, 0]))


def test_real_to_alpha_rejects_non_real():
    with pytest.raises(NotRealError):
        real_to_alpha(Cyc36Rational.eta(9))


def test_real_to_alpha_rejects_fifths():
    with pytest.raises(NotRepresentableError):
        real_to_alpha(Cyc36Rational([Fraction(1, 5)] + [0] * 11))


def test_one_third_is_representable():
    q = real_to_alpha(Cyc36Rational([Fraction(1, 3)] + [0] * 11))
    assert q.aexp == 6
    assert math.isclose(float(q), 1 / 3)


@settings(max_examples=200)
@given(arat)
def test_real_to_alpha_roundtrip(q):
    assert real_to_alpha(Cyc36Rational.from_alpha_rational(q)) == q


@given(cyc)
def test_cyc36_embedding(x):
    y = Cyc36Rational.from_cycint9(x)
    assert abs(complex(y) - complex(x)) < 1e-6 * (1 + abs(complex(x)))
