from fractions import Fraction

import pytest

from polycount.cyclotomic import (
    OMEGA_7,
    OMEGA_15,
    OMEGA_21,
    OMEGA_23,
    CycInt,
    EisensteinInt,
    GaussianInt,
    QuadPow,
    quadratic_gauss_sum,
    sqrt_minus,
    zeta,
)
from polycount.errors import OrderMismatch


def test_root_sum_vanishes():
    z = zeta(3, 1) + zeta(3, 2) + 1
    assert z.as_integer() == 0


def test_zeta4_squared():
    assert (zeta(4) * zeta(4)).as_integer() == -1


def test_embed_minus_one():
    assert zeta(2, 1).embed(6) == CycInt.root(6, 3)


def test_as_integer():
    assert CycInt(5, (2, 0, 0, 0, 0)).as_integer() == 2
    full = sum((zeta(5, k) for k in range(1, 5)), CycInt.integer(5, 0))
    assert full.as_integer() == -1
    assert (CycInt.integer(5, 1) + zeta(5)).as_integer() is None


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        zeta(3) + zeta(4)


def test_reduction_idempotent():
    v = CycInt(12, tuple(range(12)))
    assert CycInt(12, v.reduced() + (0,) * (12 - len(v.reduced()))).reduced() == v.reduced()


def test_conjugate_is_index_negation():
    v = CycInt(7, (1, 2, 0, 0, 5, 0, 0))
    w = v.conjugate()
    assert w.coeffs == (1, 0, 0, 5, 0, 0, 2)


def test_sqrt_constructions():
    for d in (3, 7, 23):
        s = sqrt_minus(d, d)
        assert (s * s).as_integer() == -d
    s15 = sqrt_minus(15, 15)
    assert (s15 * s15).as_integer() == -15


def test_quadratic_gauss_sum_squares():
    # g_ell^2 = (-1|ell) * ell
    assert (quadratic_gauss_sum(5) * quadratic_gauss_sum(5)).as_integer() == 5
    assert (quadratic_gauss_sum(7) * quadratic_gauss_sum(7)).as_integer() == -7


def test_quadpow_norms():
    assert OMEGA_7.norm() == 1
    assert OMEGA_15.norm() == 1
    assert OMEGA_21.norm() == 16
    assert OMEGA_23.norm() == 32
    assert (OMEGA_7 * OMEGA_7.conjugate()) == QuadPow(7, 1, 0, 0)


def test_quadpow_trace_normalization():
    # omega_7 + conj = 2/sqrt(8) = 1/sqrt(2): (2,0,3) normalizes to (1,0,1)
    tr = OMEGA_7 + OMEGA_7.conjugate()
    assert QuadPow(7, 2, 0, 3) == tr == QuadPow(7, 1, 0, 1)
    assert tr.trace_sqrt2(1) / 2 + tr.conjugate().trace_sqrt2(1) / 2 == tr.trace_sqrt2(1)
    assert tr.trace_sqrt2(1) == Fraction(2)  # (1/sqrt2 + 1/sqrt2) * sqrt2


def test_quadpow_pow_and_grading():
    w = OMEGA_7**3
    # (1+sqrt(-7))^3 = -20 - 4 sqrt(-7); /sqrt(2)^9 -> (-5,-1,5) after normalization
    assert w == QuadPow(7, -5, -1, 5)
    assert (OMEGA_7**7).norm() == 1
    # trace * sqrt2^odd parity mismatch raises
    with pytest.raises(ValueError):
        (OMEGA_7**2).trace_sqrt2(1)


def test_quadpow_to_cyc_round_trip():
    w = QuadPow(7, -1, 1, 0)
    c = w.to_cyc(7)
    conj = QuadPow(7, -1, -1, 0).to_cyc(7)
    assert (c * conj).as_integer() == 8  # norm 1 + 7


def test_gaussian_int():
    i = GaussianInt.i_power(1)
    assert i * i == GaussianInt(-1)
    z = GaussianInt(1, 2)
    assert z.norm() == 5
    assert z.conjugate() == GaussianInt(1, -2)
    assert (z**2).twice_real() == -6
    assert z.to_cyc(4) == CycInt(4, (1, 2, 0, 0))
    assert z.to_cyc(12) * z.conjugate().to_cyc(12) == CycInt.integer(12, 5)


def test_eisenstein_int():
    z = EisensteinInt.zeta_power(1)
    assert z * z == EisensteinInt.zeta_power(2)
    assert z * z * z == EisensteinInt(1)
    w = EisensteinInt.from_sqrt3(2, 1)  # 2 + sqrt(-3)
    assert w.norm() == 7
    assert w.twice_real() == 4
    assert (w * w.conjugate()) == EisensteinInt(7)


def test_serialization():
    v = zeta(6, 2) * 3
    assert v.serialize() == [0, 0, 3, 0, 0, 0]
    assert QuadPow(7, 1, 1, 3).serialize() == {"u": 1, "v": 1, "D": 7, "k": 3}


def test_cycint_ring_axioms_random():
    import random

    rng = random.Random(97)
    for order in (5, 6, 12):
        vals = [
            CycInt(order, [rng.randrange(-9, 10) for _ in range(order)]) for _ in range(4)
        ]
        a, b, c, _ = vals
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * CycInt.integer(order, 1) == a
        assert (a - a).is_zero()
        assert a**3 == a * a * a
        assert a.conjugate().conjugate() == a
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_quadpow_negative_grading_constructor():
    # a negative k lifts into the numerator: value is preserved
    z = QuadPow(7, 1, 1, -2)  # (1 + sqrt(-7)) * 2
    assert z == QuadPow(7, 2, 2, 0)
    assert z.norm() == 32


def test_quadpow_trace_method():
    z = OMEGA_21**2  # (3 + sqrt(-7))^2 = 2 + 6 sqrt(-7)
    assert z.trace() == QuadPow(7, 4, 0, 0)
    assert z.trace().trace_sqrt2(0) == 8
