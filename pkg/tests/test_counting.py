import pytest

from polycount.counting import (
    CountSpec,
    applicable_tables,
    derive_params,
    m_t_general,
    m_t_jacobi,
    m_t_lifted,
    m_t_monomial,
    n_t,
    n_t_special,
    n_t_table,
    p_m,
    p_m_prime_closed,
)
from polycount.errors import NotApplicable, TableNotApplicable, ValidationError
from polycount.fields import build_field, build_tower
from polycount.intmath import divisors, necklace_count
from polycount.oracle import brute_n_t, brute_p_m


def naive_m_t(tower, spec, t):
    """Independent oracle for M_t: the literal double sum, element by element."""
    from polycount.cyclotomic import CycInt

    q, p, s = spec.q, spec.p, spec.s
    h = tower.dlog_g(spec.b) % s
    params = derive_params(spec, t, h=h)
    gt = tower.gamma[t]
    counts = [0] * p
    for w in range(q - 1):
        c = tower.g**w
        if spec.a.is_zero():
            outer = 0
        else:
            mt_inv = pow((spec.m // t) % p, -1, p)
            u = tower.embed(-(spec.a * mt_inv)) * c
            outer = tower.abs_trace(u, 1)
        for e in range(q**t - 1):
            x = gt**e
            inner = tower.abs_trace(c * gt**params.i0 * x ** (s // params.d), t)
            counts[(outer + inner) % p] += 1
    return CycInt.from_counts(p, counts).expect_integer("naive M_t")


def test_spec_validation():
    with pytest.raises(ValidationError):
        CountSpec.make(5, 1, 1, 2)  # m < 2
    with pytest.raises(ValidationError):
        CountSpec.make(5, 1, 3, 3)  # 3 does not divide 4
    with pytest.raises(ValidationError):
        CountSpec.make(5, 1, 3, 2, b=0)


def test_derive_params_examples():
    spec = CountSpec.make(13, 1, 12, 4, a=0, h=0)
    pr = derive_params(spec, 6)
    assert (pr.d, pr.l) == (2, 2)

    spec = CountSpec.make(13, 1, 3, 4, a=1, h=2)
    assert derive_params(spec, 3).i0 == 2  # i0 = h when m = t
    assert derive_params(spec, 1).i0 == (3 * 2) % 4  # i0 = 3h for m = 3 mod 4


def test_derive_params_l_consistency():
    # l = gcd(t, s/d) must equal gcd(t0, s/d); exercised across a sweep
    for p, r, m, s in [(5, 1, 6, 4), (3, 2, 6, 8), (13, 1, 4, 12), (2, 4, 6, 15)]:
        spec = CountSpec.make(p, r, m, s, a=0, h=0)
        for t in divisors(m):
            derive_params(spec, t)  # asserts internally


def test_n_t_special_cases():
    # d does not divide h -> 0
    spec = CountSpec.make(5, 1, 4, 2, a=0, h=1)
    assert n_t_special(spec, 2) == 0  # d = gcd(2, 2) = 2, h = 1
    # p | m/t with a != 0 -> 0
    spec = CountSpec.make(5, 1, 5, 2, a=1, h=0)
    assert n_t_special(spec, 1) == 0
    # p | m/t, a = 0, d | h -> (d/s)(q^t - 1)
    spec = CountSpec.make(5, 1, 5, 2, a=0, h=0)
    assert n_t_special(spec, 1) == 2  # (1/2)(5 - 1)
    assert brute_n_t(spec, 1) == 2
    # restpd -> None
    spec = CountSpec.make(5, 1, 3, 2, a=0, h=0)
    assert n_t_special(spec, 3) is None


def test_m_t_general_examples():
    # a = 0, l = 1 -> 1 - q; a != 0, s/d = 1 -> 1
    tw = build_tower(5, 1, 3)
    spec = CountSpec.make(5, 1, 3, 1, a=0)
    assert m_t_general(tw, spec, 3) == 1 - 5
    spec = CountSpec.make(5, 1, 6, 2, a=1, h=0)
    tw6 = build_tower(5, 1, 6)
    assert m_t_general(tw6, spec, 3) == 1  # d = gcd(2,2) = 2, s/d = 1

    # q=4, m=t=3, s=3, h=0, a=0: M_3 = 45, N_3 = 9, P_3 = 3
    spec = CountSpec.make(2, 2, 3, 3, a=0, b=1)
    tw43 = build_tower(2, 2, 3)
    assert m_t_general(tw43, spec, 3) == 45
    assert naive_m_t(tw43, spec, 3) == 45
    assert n_t(spec, 3) == 9
    assert p_m(spec) == 3


def test_m_t_routes_agree_with_naive():
    # the independent per-element double sum arbitrates all routes
    cases = [
        (5, 1, 3, 2, 1, 0, 3),
        (5, 1, 3, 2, 0, 1, 3),
        (2, 2, 3, 3, 0, 0, 3),
        (7, 1, 2, 3, 3, 1, 2),
        (13, 1, 2, 4, 5, 2, 2),
        (3, 2, 2, 4, 4, 3, 2),
    ]
    for p, r, m, s, ai, h, t in cases:
        base = build_field(p, r)
        spec = CountSpec.make(p, r, m, s, a=base.from_index(ai), h=h)
        tower = build_tower(p, r, m)
        want = naive_m_t(tower, spec, t)
        assert m_t_general(tower, spec, t) == want
        assert m_t_monomial(tower, spec, t) == want
        assert m_t_jacobi(spec, t, allow_brute=True) == want
        if p == 2 and ai == 0:
            assert m_t_lifted(spec, t) == want


def test_m_t_closed_paths_surface():
    from polycount.counting import m_t_closed

    # q=4, t=2, s=3, a != 0: the split monomial route equals the double sum
    spec = CountSpec.make(2, 2, 2, 3, a=2, h=1)
    tower = build_tower(2, 2, 2)
    want = m_t_general(tower, spec, 2)
    assert m_t_closed(spec, 2, "monomial", tower=tower) == want
    assert m_t_closed(spec, 2, "jacobi", allow_brute_jacobi=True) == want
    with pytest.raises(ValidationError):
        m_t_closed(spec, 2, "no-such-path")
    # without brute Jacobi the order-3 sum at r = 2 has no closed form
    with pytest.raises(TableNotApplicable):
        m_t_closed(spec, 2, "jacobi", allow_brute_jacobi=False)


def test_general_route_beyond_catalog():
    # the lifted route has no m cap: a degree-31 count over F_2
    from polycount.catalog import p2_general_pm

    assert p2_general_pm(1, 31, 1) == (2**30 - 1) // 31


def test_s2_nonzero_a_worked_example():
    # q=5, m=t=3, a=1, h=0: the closed formula gives
    # 1 + (-1)^h q^{(t+1)/2} rho((-1)^{(t-1)/2} (m/t) a^{-1}) = 1 + 25 rho(-1) = 26
    # (arbitrated by the brute oracle: N_3 = (124 + 26)/10 = 15)
    spec = CountSpec.make(5, 1, 3, 2, a=1, h=0)
    tw = build_tower(5, 1, 3)
    assert m_t_general(tw, spec, 3) == 26
    assert m_t_jacobi(spec, 3) == 26
    assert brute_n_t(spec, 3) == 15
    assert n_t_table(spec, 3, "s2") == 15


def test_table_s2_rows():
    # (1,1) a=0 at q=5, t=3: N_t = (q^{t-1} - 1)/2 = 12
    spec = CountSpec.make(5, 1, 3, 2, a=0, h=0)
    assert n_t_table(spec, 3, "s2") == 12 == brute_n_t(spec, 3)
    # (2,1) rows
    spec = CountSpec.make(5, 1, 6, 2, a=0, h=0)
    assert n_t_table(spec, 3, "s2") == 5**2 - 1 == brute_n_t(spec, 3)
    spec = CountSpec.make(5, 1, 6, 2, a=2, h=0)
    assert n_t_table(spec, 3, "s2") == 5**2 == brute_n_t(spec, 3)


def test_table_s4_row_example():
    # s4, a=0, (d,l) = (2,2), q=13, t=2, i0=0 -> 0
    spec = CountSpec.make(13, 1, 4, 4, a=0, h=0)
    assert derive_params(spec, 2).d == 2 and derive_params(spec, 2).l == 2
    assert n_t_table(spec, 2, "s4") == 0
    assert brute_n_t(spec, 2) == 0


def test_table_semiprimitive_example():
    # q=4 (p=2,e=1,n=1), s=3, t=3, a=0, h=0: N_3 = 9
    spec = CountSpec.make(2, 2, 3, 3, a=0, b=1)
    assert n_t_table(spec, 3, "semiprimitive") == 9


def test_table_semiprimitive_nonzero_a_note():
    # a != 0 and d = s -> N_t = q^{t-1}
    spec = CountSpec.make(3, 2, 4, 2, a=1, h=0)
    assert derive_params(spec, 2).d == 2
    assert n_t_table(spec, 2, "semiprimitive") == 9**1
    assert brute_n_t(spec, 2) == 9


def test_overlapping_tables_agree():
    # q = 9, s = 2 satisfies both the s = 2 and the semiprimitive hypotheses;
    # every row of both tables must give the same N_t
    base = build_field(3, 2)
    for m in (2, 3, 4, 5, 6):
        for ai in range(9):
            for h in (0, 1):
                spec = CountSpec.make(3, 2, m, 2, a=base.from_index(ai), h=h)
                for t in divisors(m):
                    v1 = n_t_table(spec, t, "s2")
                    v2 = n_t_table(spec, t, "semiprimitive")
                    assert v1 == v2, (m, ai, h, t)


def test_table_not_applicable():
    spec = CountSpec.make(5, 1, 4, 4, a=0, h=0)
    with pytest.raises(TableNotApplicable):
        n_t_table(spec, 4, "s3")
    spec2 = CountSpec.make(2, 3, 4, 7, a=0, h=0)
    assert applicable_tables(spec2) == []


def test_p_m_examples():
    assert p_m(CountSpec.make(2, 1, 12, 1, a=0)) == 165
    assert p_m(CountSpec.make(2, 2, 5, 3, a=0, b=1)) == 17
    assert p_m(CountSpec.make(2, 3, 3, 7, a=0, b=1)) == 3


def test_p_m_prime_closed_examples():
    assert p_m_prime_closed(CountSpec.make(5, 1, 3, 2, a=0)) == 4
    assert p_m_prime_closed(CountSpec.make(5, 1, 5, 2, a=0)) == 62
    assert p_m_prime_closed(CountSpec.make(7, 1, 5, 3, a=0)) == 160
    with pytest.raises(NotApplicable):
        p_m_prime_closed(CountSpec.make(5, 1, 4, 2, a=0))


def test_p_m_prime_closed_vs_brute():
    for p, s, m, ai, h in [
        (5, 2, 3, 2, 1),
        (5, 2, 5, 1, 0),
        (13, 2, 3, 7, 1),
        (5, 4, 3, 2, 3),
        (13, 4, 3, 3, 2),
        (7, 3, 5, 4, 1),
        (13, 3, 5, 6, 2),
        (7, 3, 7, 2, 0),
        (5, 4, 5, 3, 1),
    ]:
        if p**m > 2**22:
            continue
        base = build_field(p, 1)
        spec = CountSpec.make(p, 1, m, s, a=base.from_index(ai), h=h)
        assert p_m_prime_closed(spec) == brute_p_m(spec), (p, s, m, ai, h)


def test_p_m_prime_closed_all_cells_beyond_grid():
    # prime-m cells the equivalence grid cannot reach: m = 7 at s = 3 (both
    # residues of m mod 3 between m = 5 and 7) and m = 5 at s = 4, p = 13
    for p, s, m in [(7, 3, 7), (13, 4, 5), (13, 3, 5)]:
        base = build_field(p, 1)
        for ai in range(p):
            for h in range(s):
                spec = CountSpec.make(p, 1, m, s, a=base.from_index(ai), h=h)
                assert p_m_prime_closed(spec) == brute_p_m(spec), (p, s, m, ai, h)


def test_coset_partition():
    # sum over h of P_m(a, s, h) = P_m(a, 1, 0)
    for p, r, m, s, ai in [(5, 1, 4, 2, 2), (2, 2, 4, 3, 0), (13, 1, 3, 4, 1)]:
        base = build_field(p, r)
        a = base.from_index(ai)
        total = sum(p_m(CountSpec.make(p, r, m, s, a=a, h=h)) for h in range(s))
        assert total == p_m(CountSpec.make(p, r, m, 1, a=a))


def test_global_partition():
    # sum over a of P_m(a, 1, 0) = necklace count
    for p, r, m in [(2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 3)]:
        base = build_field(p, r)
        q = p**r
        total = sum(p_m(CountSpec.make(p, r, m, 1, a=base.from_index(ai))) for ai in range(q))
        assert total == necklace_count(q, m)


def test_coset_representative_invariance():
    # the coset as a set, not its representative or the generator label,
    # determines the count
    base = build_field(13, 1)
    g = base.generator
    spec0 = CountSpec.make(13, 1, 3, 4, a=1, h=2)
    want = p_m(spec0)
    for k in range(3):
        b2 = spec0.b * (g**4) ** k  # same coset of <g^4>
        assert p_m(CountSpec.make(13, 1, 3, 4, a=base.from_int(1), b=b2)) == want
    # labels relative to an alternative generator pick out the same cosets:
    # g' = g^7 also generates, and the coset g'^h <g'^4> equals g^{7h} <g^4>
    g2 = g**7
    assert base.element_order(g2) == 12
    for h in range(4):
        via_alt = p_m(CountSpec.make(13, 1, 3, 4, a=1, b=g2**h))
        via_canon = p_m(CountSpec.make(13, 1, 3, 4, a=1, h=(7 * h) % 4))
        assert via_alt == via_canon


def test_auto_falls_back_when_general_is_over_cap():
    # q = 32, s = 31: no table, no closed Jacobi order, and the double sum
    # at t = 4 would need q^5 = 2^25 summands; auto must still answer
    # through the cheaper monomial / Jacobi routes
    base = build_field(2, 5)
    spec = CountSpec.make(2, 5, 4, 31, a=base.from_index(3), h=5)
    assert p_m(spec, cap=1 << 24) == brute_p_m(spec)


def test_auto_matches_brute_random_sweep():
    import random

    rng = random.Random(20260809)
    cases = [(2, 1, 6), (2, 2, 4), (3, 1, 5), (5, 1, 4), (7, 1, 3), (3, 2, 3), (13, 1, 2)]
    for p, r, m in cases:
        base = build_field(p, r)
        q = p**r
        for s in divisors(q - 1):
            for _ in range(2):
                ai = rng.randrange(q)
                h = rng.randrange(s) if s > 1 else 0
                spec = CountSpec.make(p, r, m, s, a=base.from_index(ai), h=h)
                assert p_m(spec) == brute_p_m(spec), (p, r, m, s, ai, h)
