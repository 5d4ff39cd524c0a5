import pytest

from polycount.charsums import (
    MultChar,
    char_connect_check,
    dh_consistency_check,
    gauss_sum,
    gauss_sum_folded,
    gauss_sum_lifted,
    jacobi_brute,
    monomial_closed_char2,
    monomial_closed_semiprimitive,
    monomial_sum,
)
from polycount.cyclotomic import CycInt, sqrt_minus
from polycount.errors import EnumerationCapExceeded
from polycount.fields import build_field, build_tower
from polycount.intmath import divisors


def naive_monomial_sum(tower, t, i, n):
    """Independent oracle: literal per-element summation."""
    p = tower.p
    counts = [0] * p
    gt = tower.gamma[t]
    alpha = gt**i
    for e in range(tower.q**t - 1):
        x = gt**e
        counts[tower.abs_trace(alpha * x**n, t)] += 1
    return CycInt.from_counts(p, counts)


def test_multchar_value_conventions():
    # lambda(xy) = lambda(x) lambda(y); lambda(0) = 0 unless lambda is trivial
    tw = build_tower(5, 1, 2)
    chi = MultChar(level=2, order=4, k=1)
    g2 = tw.gamma[2]
    for e1 in (0, 3, 7):
        for e2 in (1, 5):
            lhs = chi.value_exponent(tw, g2**e1 * g2**e2)
            rhs = (chi.value_exponent(tw, g2**e1) + chi.value_exponent(tw, g2**e2)) % 4
            assert lhs == rhs
    assert chi.value_exponent(tw, tw.top.zero) is None
    trivial = MultChar(level=2, order=4, k=0)
    assert trivial.value_exponent(tw, tw.top.zero) == 0


def test_monomial_orthogonality():
    # n = 1: the full additive character sum minus the x = 0 term
    tw = build_tower(5, 1, 2)
    for i in (0, 3, 11):
        assert monomial_sum(tw, 2, i, 1).as_integer() == -1


def test_monomial_q4_t3_cubes():
    # computed by the naive oracle; the all-x values 16 / -8 match the
    # two-value semiprimitive pattern ((-1)^{N'-1}(N-1) sqrt(q^t), N'=3)
    tw = build_tower(2, 2, 3)
    for i in range(6):
        got = monomial_sum(tw, 3, i, 3)
        assert got == naive_monomial_sum(tw, 3, i, 3)
        val = got.as_integer()
        assert val == (15 if i % 3 == 0 else -9)
        assert val + 1 == monomial_closed_char2(2, 3, 3, i)


def test_monomial_semiprimitive_q9_quartics():
    # p=3, e=1, n=1 (r=2), s=4, t=1: the k_s = s/2 branch is active
    tw = build_tower(3, 2, 1)
    vals = [monomial_sum(tw, 1, i, 4).as_integer() for i in range(4)]
    closed = [monomial_closed_semiprimitive(3, 1, 1, 1, 4, i) for i in range(4)]
    assert vals == closed
    assert vals == [-4, -4, 8, -4]  # two-value pattern, shifted by k_4 = 2


def test_monomial_cap():
    tw = build_tower(2, 1, 8)
    with pytest.raises(EnumerationCapExceeded):
        monomial_sum(tw, 8, 0, 3, cap=100)


def test_gauss_trivial_character():
    tw = build_tower(5, 1, 2)
    assert gauss_sum(tw, 2, MultChar(2, 1, 0)).as_integer() == -1


def test_gauss_f8_order7():
    tw = build_tower(2, 3, 1)
    g = gauss_sum(tw, 1, MultChar(1, 7, 1))
    cand = {
        c: (CycInt.integer(7, -1) + sqrt_minus(7, 7) * c).embed(14) for c in (1, -1)
    }
    assert g == cand[1] or g == cand[-1]
    assert (g * g.conjugate()).as_integer() == 8


def test_gauss_f16_order15():
    tw = build_tower(2, 4, 1)
    g = gauss_sum(tw, 1, MultChar(1, 15, 1))
    cand = {
        c: (CycInt.integer(15, 1) + sqrt_minus(15, 15) * c).embed(30) for c in (1, -1)
    }
    assert g == cand[1] or g == cand[-1]
    assert (g * g.conjugate()).as_integer() == 16


def test_gauss_modulus_invariant():
    # |G|^2 = q^t for every nontrivial character computed
    for p, r, t in [(3, 1, 2), (5, 1, 1), (2, 2, 2), (7, 1, 1)]:
        tw = build_tower(p, r, t)
        n_max = tw.q**t - 1
        for n in divisors(n_max):
            if n == 1:
                continue
            for k in range(1, n):
                g = gauss_sum(tw, t, MultChar(t, n, k))
                want = tw.q**t if k % n else -1
                assert (g * g.conjugate()).as_integer() == tw.q**t


def test_gauss_folded_matches_unfolded():
    tw = build_tower(2, 2, 2)
    chi = MultChar(2, 5, 1)
    folded = gauss_sum_folded(tw, 2, chi)
    full = gauss_sum(tw, 2, chi)
    assert folded.embed(10) == full


def test_dh_identity_t_prime_one():
    tw = build_tower(2, 3, 1)
    chi = MultChar(1, 7, 1)
    assert gauss_sum_lifted(tw, chi, 1) == gauss_sum_folded(tw, 1, chi)


def test_dh_f8_to_f64():
    # G over F_64 equals -F_3(chi)^2 with the norm-compatible character
    tower = build_tower(2, 3, 2)
    chi = MultChar(1, 7, 1)
    f3 = gauss_sum_folded(tower, 1, chi)
    lifted = gauss_sum_lifted(tower, chi, 2)
    assert lifted == -(f3 * f3) + CycInt.integer(7, 0)
    direct = gauss_sum_folded(tower, 2, MultChar(2, 7, 1))
    assert lifted == direct


def test_dh_consistency_grid():
    # all character orders N | 2^{r'} - 1, r' <= 4, t' <= 3
    for r_small in (1, 2, 3, 4):
        for n in divisors(2**r_small - 1):
            if n == 1:
                continue
            for t_prime in (1, 2, 3):
                for k in range(1, n):
                    assert dh_consistency_check(r_small, t_prime, n, k), (
                        r_small,
                        n,
                        t_prime,
                        k,
                    )


def test_dh_modulus():
    tower = build_tower(2, 4, 3)
    chi = MultChar(1, 15, 2)
    g = gauss_sum_lifted(tower, chi, 3)
    assert (g * g.conjugate()).as_integer() == 2**12


def naive_jacobi(field, n, k, t):
    """Independent oracle: direct iteration over all t-tuples summing to 1."""
    import itertools

    q = field.order
    elems = [field.from_index(i) for i in range(q)]
    dlog = {}
    cur = field.one
    for e in range(q - 1):
        dlog[cur.index] = e
        cur = cur * field.generator
    coeffs = [0] * n
    const = 0
    for tup in itertools.product(range(q), repeat=t - 1):
        total = field.zero
        prod_ok = True
        logsum = 0
        for i in tup:
            total = total + elems[i]
            if i == 0:
                prod_ok = False
            else:
                logsum += dlog[i]
        last = field.one - total
        if not prod_ok or last.is_zero():
            if k % n == 0:
                const += 1
            continue
        coeffs[(logsum + dlog[last.index]) * k % n] += 1
    coeffs[0] += const
    return CycInt(n, coeffs)


def test_jacobi_t1():
    f5 = build_field(5, 1)
    assert jacobi_brute(f5, 2, 1, 1).as_integer() == 1


def test_jacobi_p5_quadratic():
    f5 = build_field(5, 1)
    val = jacobi_brute(f5, 2, 1, 2)
    assert val == naive_jacobi(f5, 2, 1, 2)
    assert val.as_integer() == -1


def test_jacobi_trivial_counts_solutions():
    f5 = build_field(5, 1)
    for t in (2, 3):
        val = jacobi_brute(f5, 4, 0, t)
        assert val.as_integer() == 5 ** (t - 1)
        assert val == naive_jacobi(f5, 4, 0, t)


def test_jacobi_extension_field():
    f9 = build_field(3, 2)
    for n, k, t in [(2, 1, 2), (4, 1, 2), (8, 3, 2), (2, 1, 3)]:
        assert jacobi_brute(f9, n, k, t) == naive_jacobi(f9, n, k, t)


def test_jacobi_hermitian_symmetry():
    # J_t(conj lambda) = conj(J_t(lambda))
    for p, n, t in [(7, 3, 2), (13, 4, 3), (5, 4, 2), (13, 3, 4)]:
        f = build_field(p, 1)
        for k in range(1, n):
            a = jacobi_brute(f, n, n - k, t)
            b = jacobi_brute(f, n, k, t).conjugate()
            assert a == b


def test_gauss_power_jacobi_relation():
    # G_1(lambda)^t = -q J_t(lambda) for lambda != lambda_0 of order dividing t
    for p in (5, 7, 13):
        for t in (2, 3, 4):
            for n in divisors(t):
                if n == 1 or (p - 1) % n != 0:
                    continue
                tw = build_tower(p, 1, 1)
                f = build_field(p, 1)
                for k in range(1, n):
                    g1 = gauss_sum(tw, 1, MultChar(1, n, k))
                    jt = jacobi_brute(f, n, k, t)
                    lhs = g1**t
                    rhs = (jt * (-p)).embed(p * n)
                    assert lhs == rhs, (p, t, n, k)


def test_char_connect_examples():
    # n = 1 reduces to the G(lambda_0) = -1 identity
    tw = build_tower(3, 1, 2)
    rep = char_connect_check(tw, 2, tw.gamma[2], 1)
    assert rep.equal

    tw = build_tower(5, 1, 2)
    assert char_connect_check(tw, 2, tw.gamma[2], 2).equal

    tw = build_tower(2, 2, 2)
    for i in range(3):
        alpha = tw.gamma[2] ** i
        assert char_connect_check(tw, 2, alpha, 3).equal


def test_prop1_closed_vs_direct_grid():
    # (p, e, n) with q^t small: every residue class i mod s
    for p, e, n in [(2, 1, 1), (3, 1, 1), (2, 2, 1), (5, 1, 1)]:
        r = 2 * e * n
        q = p**r
        for s in divisors(p**e + 1):
            for t in (1, 2, 3):
                if q**t > 2**16:
                    continue
                tw = build_tower(p, r, t)
                for i in range(s):
                    direct = monomial_sum(tw, t, i, s).as_integer()
                    assert direct == monomial_closed_semiprimitive(p, e, n, t, s, i)
