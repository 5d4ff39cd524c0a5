"""The counting pipeline: from a (p, r, m, s, coset, a) query to P_m.

P_m(a, s, h) counts monic irreducibles x^m - a x^{m-1} + ... + (-1)^m b
over F_q with the trace coefficient a fixed and the norm coefficient b
restricted to a coset of the index-s subgroup of F_q*.  Moebius inversion
reduces it to subfield element counts N_t, and each N_t comes from the
character sum M_t by one of several routes:

  * special cases that need no sums at all,
  * closed tables, one isolated expression per (d, l) row (s = 2 any odd
    q; s = 3, 4 at q = p; s | p^e + 1 semiprimitive),
  * Jacobi-sum routes using the order 2/3/4 closed forms or a brute
    Jacobi sum,
  * monomial-sum routes, enumerated directly or (p = 2, a = 0) through
    the Davenport-Hasse lift, and
  * the literal double character sum over F_q* x F_{q^t}*.

All routes return the same integer; disagreement is a test failure, never
something to smooth over.  Internally every route keys the coset by an
explicit representative b, so labels stay consistent under different
generator choices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .charsums import MultChar, gauss_sum_lifted, jacobi_brute, monomial_sum
from .cyclotomic import CycInt, EisensteinInt, GaussianInt
from .errors import (
    EnumerationCapExceeded,
    InvariantError,
    TableNotApplicable,
    ValidationError,
)
from .fields import (
    DEFAULT_ENUM_CAP,
    FieldElement,
    TowerCtx,
    build_field,
    build_tower,
)
from .intmath import divisors, factor_prime_power_order, mobius, multiplicative_order
from .jacobi import CubicParams, QuarticParams, cubic_params, quartic_params

TABLE_NAMES = ("s2", "s3", "s4", "semiprimitive")
CLOSED_PATHS = ("monomial", "jacobi")


@dataclass(frozen=True)
class CountSpec:
    """A counting query.  The coset is always held as an explicit b."""

    p: int
    r: int
    m: int
    s: int
    a: FieldElement
    b: FieldElement

    @classmethod
    def make(cls, p, r, m, s, a=0, b=None, h=None) -> "CountSpec":
        base = build_field(p, r)
        q = base.order
        if m < 2:
            raise ValidationError("m must be >= 2")
        if s < 1 or (q - 1) % s != 0:
            raise ValidationError(f"s must divide q - 1 = {q - 1}")
        if isinstance(a, int):
            a = base.from_int(a) if r == 1 else base.from_index(a)
        if b is not None and h is not None:
            raise ValidationError("give the coset as b or as h, not both")
        if b is None:
            h = 0 if h is None else h % max(s, 1)
            b = base.generator**h if q > 2 else base.one
        elif isinstance(b, int):
            b = base.from_int(b) if r == 1 else base.from_index(b)
        if b.is_zero():
            raise ValidationError("b must be nonzero")
        return cls(p=p, r=r, m=m, s=s, a=a, b=b)

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def base(self):
        return build_field(self.p, self.r)

    @property
    def h(self) -> int:
        """Coset label of b relative to the serialized base-field generator."""
        return self.dlog_b() % self.s

    def dlog_b(self) -> int:
        base = self.base
        if base.order == 2:
            return 0
        return base.dlog(
            self.b,
            base.generator,
            base.group_order,
            factored=factor_prime_power_order(self.p, self.r),
        )

    def dlog_a0(self, t: int) -> int:
        """Discrete log (canonical generator) of a0 = -(m/t) a^{-1}."""
        a0 = self.a0(t)
        base = self.base
        if base.order == 2:
            return 0
        return base.dlog(
            a0,
            base.generator,
            base.group_order,
            factored=factor_prime_power_order(self.p, self.r),
        )

    def a0(self, t: int) -> FieldElement:
        """a0 = -(m/t mod p) * a^{-1}; needs a != 0 and p not dividing m/t."""
        if self.a.is_zero():
            raise ValidationError("a0 is only defined for a != 0")
        mt = (self.m // t) % self.p
        if mt == 0:
            raise ValidationError("a0 needs p not dividing m/t")
        return -(self.a.inverse() * mt)

    def describe(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "m": self.m,
            "s": self.s,
            "a_index": self.a.index,
            "b_index": self.b.index,
            "h": self.h,
            "field": self.base.to_json(),
        }


@dataclass(frozen=True)
class TParams:
    """Per-divisor parameters for the congruence (m/t) i = h (mod s)."""

    t: int
    d: int
    l: int
    u: int
    t0: int
    i0: int | None  # None iff d does not divide h


def derive_params(spec: CountSpec, t: int, h: int | None = None) -> TParams:
    """d, l, u, t0 and the congruence solution i0 for a divisor t of m.

    h defaults to the canonical label of spec.b; a path using different
    generator labels passes its own h.
    """
    if spec.m % t != 0:
        raise ValidationError(f"{t} does not divide m = {spec.m}")
    s, m, q = spec.s, spec.m, spec.q
    d = math.gcd(m // t, s)
    sd = s // d
    l = math.gcd(t, sd)
    u = sd // l
    t0 = (q**t - 1) // (q - 1)
    assert l == math.gcd(t0, sd), "gcd(t, s/d) must agree with gcd(t0, s/d)"
    if h is None:
        h = spec.h
    if h % d != 0:
        i0 = None
    else:
        mdt = (m // t) // d
        i0 = (h // d) * pow(mdt, -1, sd) % sd if sd > 1 else 0
    return TParams(t=t, d=d, l=l, u=u, t0=t0, i0=i0)


def n_t_special(spec: CountSpec, t: int):
    """The N_t values that need no character sums; None when inapplicable.

    N_t = 0 when d does not divide h, or when p | m/t with a != 0;
    N_t = (d/s)(q^t - 1) when p | m/t with a = 0 and d | h.
    """
    params = derive_params(spec, t)
    if params.i0 is None:
        return 0
    if (spec.m // t) % spec.p == 0:
        if not spec.a.is_zero():
            return 0
        val = params.d * (spec.q**t - 1)
        assert val % spec.s == 0
        return val // spec.s
    return None


def _restpd(spec: CountSpec, t: int) -> bool:
    return (spec.m // t) % spec.p != 0 and spec.h % math.gcd(spec.m // t, spec.s) == 0


# -- M_t routes --


def m_t_general(tower: TowerCtx, spec: CountSpec, t: int, cap: int | None = None) -> int:
    """The literal double sum over c in F_q* and x in F_{q^t}*, histogrammed.

    Requires restpd; work is (q - 1) * (q^t - 1) summands, vectorized.
    """
    if not _restpd(spec, t):
        raise ValidationError("the double sum requires p not dividing m/t and d | h")
    q, p, s = spec.q, spec.p, spec.s
    cap = tower.enum_cap if cap is None else cap
    if q * q**t > cap:
        raise EnumerationCapExceeded(
            f"q^(t+1) = {q * q**t} exceeds cap {cap}; use a closed route"
        )
    h_t = tower.dlog_g(spec.b) % s
    params = derive_params(spec, t, h=h_t)
    sd = s // params.d
    traces_t = tower.orbit_abs_traces(t, cap)
    big_q = q**t - 1
    t0 = params.t0
    ks = np.arange(big_q, dtype=np.int64) * sd
    hist = np.zeros(p, dtype=np.int64)
    if spec.a.is_zero():
        shift = None
    else:
        traces_1 = tower.orbit_abs_traces(1, cap)
        mt_inv = pow((spec.m // t) % p, -1, p)
        outer = tower.embed(-(spec.a * mt_inv))  # -(t/m) a
        shift = tower.dlog_g(outer)
    for w in range(q - 1):
        exps = (params.i0 + t0 * w + ks) % big_q
        inner = np.bincount(traces_t[exps], minlength=p)
        rot = 0 if shift is None else int(traces_1[(shift + w) % (q - 1)])
        if rot == 0:
            hist += inner
        else:
            hist += np.roll(inner, rot)
    m_t = CycInt.from_counts(p, hist.tolist()).expect_integer("M_t general sum")
    return m_t


def _canonical_char_decompose(j: int, modn: int):
    """Write zeta_modn^j as a power of the canonical character of exact order."""
    g = math.gcd(j, modn)
    order = modn // g
    return order, (j // g) % order if order > 1 else 0


def _jacobi_value(spec: CountSpec, t: int, order: int, k: int, allow_brute: bool, cap: int):
    """J_t of the k-th power of the canonical order-`order` character of F_q.

    Uses the closed 2/3/4 forms when available (q = p for 3, 4), brute
    summation otherwise (if allowed), embedded into CycInt(12)."""
    q, p = spec.q, spec.p
    L = 12
    if order == 1:
        # J_t(lambda_0) counts solutions of x_1 + ... + x_t = 1
        return CycInt.integer(L, q ** (t - 1))
    from .jacobi import jacobi_closed

    if order == 2:
        return CycInt.integer(L, jacobi_closed(2, t, q))
    if order in (3, 4) and spec.r == 1:
        g = spec.base.generator_index
        if order == 4:
            val = jacobi_closed(4, t, p, _quartic(p, g))
            if k == 3:
                val = val.conjugate()
            return val.to_cyc(L)
        val = jacobi_closed(3, t, p, _cubic(p, g))
        if k == 2:
            val = val.conjugate()
        return val.to_cyc(L)
    if not allow_brute:
        raise TableNotApplicable(
            f"no closed Jacobi form for character order {order} at q = {q}"
        )
    return jacobi_brute(spec.base, order, k, t, cap)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


@lru_cache(maxsize=None)
def _quartic(p, g) -> QuarticParams:
    return quartic_params(p, g)


@lru_cache(maxsize=None)
def _cubic(p, g) -> CubicParams:
    return cubic_params(p, g)


def m_t_jacobi(
    spec: CountSpec,
    t: int,
    allow_brute: bool = False,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """M_t through Jacobi sums over F_q (no extension-field enumeration).

    a = 0:  M_t = (q-1) (-1 + (-1)^t q sum_{lambda in H_l*} J_t(lambda) conj(lambda)(g^{i0}))
    a != 0: M_t = 1 + (-1)^{t-1} q sum_{lambda in H_{s/d}*} J_t(conj lambda) lambda((-a0)^t g^{i0}))
    """
    if not _restpd(spec, t):
        raise ValidationError("Jacobi route requires p not dividing m/t and d | h")
    q = spec.q
    params = derive_params(spec, t)
    sign_t = -1 if t % 2 == 0 else 1  # (-1)^{t-1} = -(-1)^t
    if spec.a.is_zero():
        n = params.l
        L = _lcm(12, n) if n > 1 else 12
        acc = CycInt.integer(L, 0)
        for j in range(1, n):
            order, k = _canonical_char_decompose(j, n)
            jval = _jacobi_value(spec, t, order, k, allow_brute, cap).embed(L)
            lam_bar = CycInt.root(L, (-j * params.i0) % n * (L // n))
            acc = acc + jval * lam_bar
        inner = acc.expect_integer("a=0 Jacobi inner sum")
        return (q - 1) * (-1 + (-sign_t) * q * inner)
    n = spec.s // params.d
    if n == 1:
        return 1
    log_neg_a0 = _dlog_of(spec, -spec.a0(t))
    # lambda_j(g^e) = zeta_{s/d}^{j e}, and the argument is (-a0)^t g^{i0}
    arg_log = (t * log_neg_a0 + params.i0) % (q - 1)
    L = _lcm(12, n)
    acc = CycInt.integer(L, 0)
    for j in range(1, n):
        order, k = _canonical_char_decompose((-j) % n, n)
        jval = _jacobi_value(spec, t, order, k, allow_brute, cap).embed(L)
        lam = CycInt.root(L, (j * arg_log) % n * (L // n))
        acc = acc + jval * lam
    inner = acc.expect_integer("a!=0 Jacobi inner sum")
    return 1 + sign_t * q * inner


def _dlog_of(spec: CountSpec, x: FieldElement) -> int:
    base = spec.base
    if base.order == 2:
        return 0
    return base.dlog(
        x, base.generator, base.group_order, factored=factor_prime_power_order(spec.p, spec.r)
    )


def m_t_monomial(tower: TowerCtx, spec: CountSpec, t: int, cap: int | None = None) -> int:
    """M_t through monomial sums over F_{q^t} (and F_q when a != 0).

    a = 0:  M_t = (q-1) sum_x e_t(gamma_t^{i0} x^l).
    a != 0: M_t = (1/u) sum_{j<u} [sum_x e_t(a0 gamma_t^{t0 j + i0} x^{s/d})]
                                  [sum_c e_1(g^j c^u)].
    """
    if not _restpd(spec, t):
        raise ValidationError("monomial route requires p not dividing m/t and d | h")
    q, s = spec.q, spec.s
    h_t = tower.dlog_g(spec.b) % s
    params = derive_params(spec, t, h=h_t)
    if spec.a.is_zero():
        inner = monomial_sum(tower, t, params.i0, params.l, cap)
        return (q - 1) * inner.expect_integer("a=0 monomial sum")
    sd = s // params.d
    u = params.u
    a0_top = tower.embed(spec.a0(t))
    ind_a0 = tower.dlog_gamma(a0_top, t)
    total = CycInt.integer(spec.p, 0)
    for j in range(u):
        s1 = monomial_sum(tower, t, (ind_a0 + params.t0 * j + params.i0) % (q**t - 1), sd, cap)
        s2 = monomial_sum(tower, 1, j, u, cap)
        total = total + s1 * s2
    val = total.expect_integer("split monomial sum")
    if val % u != 0:
        raise InvariantError("split monomial sum must be divisible by u")
    return val // u


def m_t_lifted(spec: CountSpec, t: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """M_t for p = 2, a = 0 via Gauss sums lifted from small subfields.

    M_t = (q-1) sum_{lambda in H_l} G_t(conj lambda) lambda(g^{i0}) with each
    G_t computed by the Davenport-Hasse identity from the subfield that
    carries the character, so no extension-field enumeration happens.
    """
    if spec.p != 2 or not spec.a.is_zero():
        raise ValidationError("the lift route needs p = 2 and a = 0")
    if not _restpd(spec, t):
        raise ValidationError("the lift route requires p not dividing m/t and d | h")
    q, r = spec.q, spec.r
    params = derive_params(spec, t)
    l = params.l
    if l == 1:
        return 1 - q
    acc = CycInt.integer(l, -1)  # the trivial-character term G_t(lambda_0) = -1
    for j in range(1, l):
        order, k_red = _canonical_char_decompose((-j) % l, l)
        r_small = multiplicative_order(2, order)
        assert r % r_small == 0
        sub = build_tower(2, r_small, r // r_small)
        g_val = gauss_sum_lifted(
            sub, MultChar(level=1, order=order, k=k_red), (r * t) // r_small, cap
        )
        acc = acc + g_val.embed(l) * CycInt.root(l, j * params.i0)
    inner = acc.expect_integer("lifted Gauss sum combination")
    return (q - 1) * inner


# -- closed N_t tables --


def _sqrt_q_power(p: int, r: int, num: int) -> Fraction:
    """q^{num/2} as an exact Fraction; r*num must be even."""
    e = r * num
    if e % 2 != 0:
        raise InvariantError("odd power of sqrt(q) escaped a table row")
    e //= 2
    return Fraction(p**e) if e >= 0 else Fraction(1, p**-e)


def _rho_of_log(e: int) -> int:
    return -1 if e % 2 else 1


def n_t_table(spec: CountSpec, t: int, table: str) -> int:
    """N_t from one of the declarative closed tables.

    Defers to the special cases when restpd fails; raises
    TableNotApplicable outside the table's hypotheses.
    """
    if table not in TABLE_NAMES:
        raise ValidationError(f"unknown table {table!r}")
    special = n_t_special(spec, t)
    if special is not None:
        return special
    if table == "s2":
        return _table_s2(spec, t)
    if table == "s3":
        return _table_s34(spec, t, 3)
    if table == "s4":
        return _table_s34(spec, t, 4)
    return _table_semiprimitive(spec, t)


def _table_s2(spec: CountSpec, t: int) -> int:
    q, p, s = spec.q, spec.p, spec.s
    if s != 2 or q % 2 == 0:
        raise TableNotApplicable("the s = 2 table needs odd q and s = 2")
    params = derive_params(spec, t)
    d, l = params.d, params.l
    h = spec.h
    rho_m1 = -1 if ((q - 1) // 2) % 2 else 1
    if spec.a.is_zero():
        if (d, l) == (1, 1):
            val = Fraction(q ** (t - 1) - 1, 2)
        elif (d, l) == (1, 2):
            rho = rho_m1 ** ((t // 2) % 2)
            val = Fraction(
                q ** (t - 1) - 1 - (q - 1) * (-1) ** h * q ** ((t - 2) // 2) * rho, 2
            )
        else:  # (2, 1)
            val = Fraction(q ** (t - 1) - 1)
    else:
        if (d, l) == (1, 1):
            w = spec.a0(t) * -1  # (m/t) a^{-1} = -a0
            log_w = _dlog_of(spec, w)
            rho = _rho_of_log(log_w) * (rho_m1 ** (((t - 1) // 2) % 2))
            val = Fraction(q ** (t - 1) + (-1) ** h * q ** ((t - 1) // 2) * rho, 2)
        elif (d, l) == (1, 2):
            rho = rho_m1 ** ((t // 2) % 2)
            val = Fraction(q ** (t - 1) + (-1) ** h * q ** ((t - 2) // 2) * rho, 2)
        else:  # (2, 1)
            val = Fraction(q ** (t - 1))
    if val.denominator != 1 or val < 0:
        raise InvariantError("s=2 table produced a non-integer or negative N_t")
    return int(val)


def _table_s34(spec: CountSpec, t: int, s: int) -> int:
    q, p = spec.q, spec.p
    if spec.s != s or spec.r != 1 or (p - 1) % s != 0:
        raise TableNotApplicable(f"the s = {s} table needs q = p = 1 mod {s}")
    params = derive_params(spec, t)
    d, l, i0 = params.d, params.l, params.i0
    g = spec.base.generator_index
    sign_i0 = (-1) ** (i0 % 2)
    if s == 4:
        par = _quartic(p, g)
        pi = par.pi
        if spec.a.is_zero():
            if (d, l) == (1, 1):
                val = Fraction(p ** (t - 1) - 1, 4)
            elif (d, l) == (1, 2):
                val = Fraction(p ** (t - 1) - 1 - sign_i0 * p ** ((t - 2) // 2) * (p - 1), 4)
            elif (d, l) == (1, 4):
                re2 = (pi ** (t // 2) * GaussianInt.i_power(i0)).twice_real()
                val = Fraction(
                    p ** (t - 1) - 1 - sign_i0 * p ** ((t - 4) // 4) * (p - 1) * (p ** (t // 4) + re2),
                    4,
                )
            elif (d, l) == (2, 1):
                val = Fraction(p ** (t - 1) - 1, 2)
            elif (d, l) == (2, 2):
                val = Fraction(p ** (t - 1) - 1 - sign_i0 * p ** ((t - 2) // 2) * (p - 1), 2)
            else:  # (4, 1)
                val = Fraction(p ** (t - 1) - 1)
        else:
            log_a0 = spec.dlog_a0(t)
            rho_a0 = _rho_of_log(log_a0)
            if (d, l) == (1, 1):
                qt4 = _q_t4(spec, t, par, i0)
                val = Fraction(
                    p ** (t - 1) + sign_i0 * (p ** ((t - 1) // 2) * rho_a0 + qt4.twice_real()),
                    4,
                )
            elif (d, l) == (1, 2):
                re2 = (pi ** (t // 2) * GaussianInt.i_power(i0)).twice_real()
                val = Fraction(
                    p ** (t - 1)
                    + sign_i0 * p ** ((t - 2) // 4) * (p ** ((t - 2) // 4) - rho_a0 * re2),
                    4,
                )
            elif (d, l) == (1, 4):
                re2 = (pi ** (t // 2) * GaussianInt.i_power(i0)).twice_real()
                val = Fraction(
                    p ** (t - 1) + sign_i0 * p ** ((t - 4) // 4) * (p ** (t // 4) + re2), 4
                )
            elif (d, l) == (2, 1):
                val = Fraction(p ** (t - 1) + sign_i0 * p ** ((t - 1) // 2) * rho_a0, 2)
            elif (d, l) == (2, 2):
                val = Fraction(p ** (t - 1) + sign_i0 * p ** ((t - 2) // 2), 2)
            else:  # (4, 1)
                val = Fraction(p ** (t - 1))
    else:
        par = _cubic(p, g)
        pi = par.pi
        sign_t = (-1) ** (t % 2)  # (-1)^t
        if spec.a.is_zero():
            if (d, l) == (1, 1):
                val = Fraction(p ** (t - 1) - 1, 3)
            elif (d, l) == (1, 3):
                re2 = (pi ** (t // 3) * EisensteinInt.zeta_power(2 * i0)).twice_real()
                val = Fraction(
                    p ** (t - 1) - 1 - 2 * sign_t * p ** ((t - 3) // 3) * (p - 1) * Fraction(re2, 2),
                    3,
                )
            else:  # (3, 1)
                val = Fraction(p ** (t - 1) - 1)
        else:
            if (d, l) == (1, 1):
                qt3 = _q_t3(spec, t, par, i0)
                val = Fraction(p ** (t - 1) - sign_t * qt3.twice_real(), 3)
            elif (d, l) == (1, 3):
                re2 = (pi ** (t // 3) * EisensteinInt.zeta_power(2 * i0)).twice_real()
                val = Fraction(p ** (t - 1) + sign_t * p ** ((t - 3) // 3) * re2, 3)
            else:  # (3, 1)
                val = Fraction(p ** (t - 1))
    if val.denominator != 1 or val < 0:
        raise InvariantError(f"s={s} table produced a non-integer or negative N_t")
    return int(val)


def _q_t4(spec: CountSpec, t: int, par: QuarticParams, i0: int) -> GaussianInt:
    p = spec.p
    log_neg_a0 = _dlog_of(spec, -spec.a0(t))
    if t % 4 == 1:
        chi_bar = GaussianInt.i_power(-log_neg_a0)
        return GaussianInt(p ** ((t - 1) // 4)) * par.pi ** ((t - 1) // 2) * chi_bar * GaussianInt.i_power(i0)
    if t % 4 == 3:
        chi = GaussianInt.i_power(log_neg_a0)
        sign = -1 if par.f % 2 else 1
        return (
            GaussianInt(sign * p ** ((t - 3) // 4))
            * par.pi ** ((t + 1) // 2)
            * chi
            * GaussianInt.i_power(i0)
        )
    raise InvariantError("Q_{t,4} needs odd t")  # (1,1) rows always have odd t


def _q_t3(spec: CountSpec, t: int, par: CubicParams, i0: int) -> EisensteinInt:
    p = spec.p
    log_a0 = spec.dlog_a0(t)
    if t % 3 == 1:
        chi_bar = EisensteinInt.zeta_power((-log_a0) % 3)
        return (
            EisensteinInt(p ** ((t - 1) // 3))
            * par.pi ** ((t - 1) // 3)
            * chi_bar
            * EisensteinInt.zeta_power(2 * i0)
        )
    if t % 3 == 2:
        chi = EisensteinInt.zeta_power(log_a0 % 3)
        return (
            EisensteinInt(p ** ((t - 2) // 3))
            * par.pi ** ((t + 1) // 3)
            * chi
            * EisensteinInt.zeta_power(2 * i0)
        )
    raise InvariantError("Q_{t,3} needs t not divisible by 3")


def semiprimitive_setup(p: int, r: int, s: int):
    """Minimal e with s | p^e + 1 and 2e | r, plus n = r / 2e; None if none."""
    if r % 2 != 0:
        return None
    for e in divisors(r // 2):
        if (p**e + 1) % s == 0:
            return e, r // (2 * e)
    return None


def _k_value(p: int, e: int, nt: int, v: int) -> int:
    """The k_s shift of the semiprimitive monomial sum, for modulus v."""
    if p > 2 and nt % 2 == 1 and v % 2 == 0 and ((p**e + 1) // v) % 2 == 1:
        return v // 2
    return 0


def _table_semiprimitive(spec: CountSpec, t: int) -> int:
    q, p, r, s = spec.q, spec.p, spec.r, spec.s
    setup = semiprimitive_setup(p, r, s)
    if setup is None:
        raise TableNotApplicable("s does not divide p^e + 1 for any e with r = 2en")
    e, n = setup
    params = derive_params(spec, t)
    d, l, u, i0 = params.d, params.l, params.u, params.i0
    sd = s // d
    sign_nt = (-1) ** ((n * t) % 2)
    ds = Fraction(d, s)
    root = _sqrt_q_power(p, r, t - 2)
    if spec.a.is_zero():
        k_l = _k_value(p, e, n * t, l)
        if l > 1 and i0 % l != k_l % l:
            val = ds * (q ** (t - 1) - 1 + sign_nt * (q - 1) * root)
        else:
            val = ds * (q ** (t - 1) - 1 - sign_nt * (q - 1) * (l - 1) * root)
    else:
        k_sd = _k_value(p, e, n * t, sd)
        ind_a0 = params.t0 % sd * spec.dlog_a0(t) % sd if sd > 1 else 0
        kk = (k_sd - i0 - ind_a0) % sd if sd > 1 else 0
        if sd > 1 and kk % l != 0:
            val = ds * (q ** (t - 1) - sign_nt * root)
        else:
            sqrt_q = _sqrt_q_power(p, r, 1)
            sign_n = (-1) ** (n % 2)
            if u > 1:
                t0l = (params.t0 % (l * u)) // l
                j0 = kk // l * pow(t0l, -1, u) % u
            else:
                j0 = 0
            k_u = _k_value(p, e, n, u)  # Prop applied at t = 1
            if u > 1 and j0 % u != k_u % u:
                inner = (sign_n * sqrt_q - 1) * l + 1
            else:
                inner = (-sign_n * (u - 1) * sqrt_q - 1) * l + 1
            val = ds * (q ** (t - 1) - sign_nt * inner * root)
    if val.denominator != 1 or val < 0:
        raise InvariantError("semiprimitive table produced a non-integer or negative N_t")
    return int(val)


def applicable_tables(spec: CountSpec) -> list[str]:
    out = []
    if spec.s == 2 and spec.q % 2 == 1:
        out.append("s2")
    if spec.s in (3, 4) and spec.r == 1 and (spec.p - 1) % spec.s == 0:
        out.append(f"s{spec.s}")
    if spec.s >= 1 and semiprimitive_setup(spec.p, spec.r, spec.s) is not None:
        out.append("semiprimitive")
    return out


# -- N_t and P_m --


def _n_from_m(spec: CountSpec, t: int, m_t: int) -> int:
    num = derive_params(spec, t).d * (spec.q**t - 1 + m_t)
    den = spec.s * spec.q
    if num % den != 0:
        raise InvariantError("d (q^t - 1 + M_t) must be divisible by s q")
    n = num // den
    if n < 0:
        raise InvariantError("negative N_t")
    return n


def m_t_closed(
    spec: CountSpec,
    t: int,
    path: str,
    tower: TowerCtx | None = None,
    allow_brute_jacobi: bool = False,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """M_t by a closed route: 'jacobi' or 'monomial' (see module docstring)."""
    if path == "jacobi":
        return m_t_jacobi(spec, t, allow_brute=allow_brute_jacobi, cap=cap)
    if path == "monomial":
        if spec.p == 2 and spec.a.is_zero():
            return m_t_lifted(spec, t, cap)
        if tower is None:
            tower = build_tower(spec.p, spec.r, spec.m)
        return m_t_monomial(tower, spec, t, cap)
    raise ValidationError(f"unknown closed path {path!r}")


def n_t(
    spec: CountSpec,
    t: int,
    method: str = "auto",
    tower: TowerCtx | None = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """N_t = |S_t| by the requested route; 'auto' picks the cheapest exact one."""
    special = n_t_special(spec, t)
    if special is not None:
        return special
    if method == "general":
        if tower is None:
            tower = build_tower(spec.p, spec.r, spec.m)
        return _n_from_m(spec, t, m_t_general(tower, spec, t, cap))
    if method == "table":
        tables = applicable_tables(spec)
        if not tables:
            raise TableNotApplicable(f"no closed table applies to s={spec.s}, q={spec.q}")
        return n_t_table(spec, t, tables[0])
    if method == "closed":
        return _n_t_closed(spec, t, tower, cap)
    if method == "auto":
        params = derive_params(spec, t)
        if spec.a.is_zero() and params.l == 1:
            return _n_from_m(spec, t, 1 - spec.q)
        if not spec.a.is_zero() and spec.s // params.d == 1:
            return _n_from_m(spec, t, 1)
        tables = applicable_tables(spec)
        if tables:
            return n_t_table(spec, t, tables[0])
        try:
            return _n_t_closed(spec, t, tower, cap)
        except (TableNotApplicable, EnumerationCapExceeded):
            pass
        q = spec.q
        if q * q**t <= cap:
            if tower is None:
                tower = build_tower(spec.p, spec.r, spec.m)
            return _n_from_m(spec, t, m_t_general(tower, spec, t, cap))
        if q**t <= cap:
            if tower is None:
                tower = build_tower(spec.p, spec.r, spec.m)
            return _n_from_m(spec, t, m_t_monomial(tower, spec, t, cap))
        # cheapest exact route left: Jacobi sums enumerate q^{t-1} tuples
        return _n_from_m(spec, t, m_t_jacobi(spec, t, allow_brute=True, cap=cap))
    raise ValidationError(f"unknown method {method!r}")


def _n_t_closed(spec, t, tower, cap) -> int:
    if spec.p == 2 and spec.a.is_zero():
        return _n_from_m(spec, t, m_t_lifted(spec, t, cap))
    return _n_from_m(spec, t, m_t_jacobi(spec, t, allow_brute=False, cap=cap))


def p_m(
    spec: CountSpec,
    method: str = "auto",
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """P_m(a, s, h) via Moebius inversion over the N_t."""
    if method == "brute":
        from .oracle import brute_p_m

        return brute_p_m(spec, cap=cap)
    tower = None
    if method == "general":
        tower = build_tower(spec.p, spec.r, spec.m)
    total = 0
    for t in divisors(spec.m):
        mu = mobius(spec.m // t)
        if mu == 0:
            continue
        total += mu * n_t(spec, t, method=method, tower=tower, cap=cap)
    if total % spec.m != 0:
        raise InvariantError("Moebius sum must be divisible by m")
    out = total // spec.m
    if out < 0:
        raise InvariantError("negative polynomial count")
    return out


def p_m_prime_closed(spec: CountSpec, cap: int = DEFAULT_ENUM_CAP) -> int:
    """The displayed closed forms for prime m and s in {2, 3, 4}."""
    from .errors import NotApplicable
    from .intmath import is_prime

    m, s, q, p = spec.m, spec.s, spec.q, spec.p
    if not is_prime(m):
        raise NotApplicable("the prime-m closed forms need m prime")
    h = spec.h
    if s == 2:
        if q % 2 == 0 or m <= 2:
            raise NotApplicable("s = 2 closed form needs odd q and prime m > 2")
        rho_m1 = -1 if ((q - 1) // 2) % 2 else 1
        if spec.a.is_zero():
            val = Fraction(q ** (m - 1) - q, 2 * m) if m == p else Fraction(q ** (m - 1) - 1, 2 * m)
        else:
            log_a = _dlog_of(spec, spec.a)
            rho_arg = _rho_of_log(log_a) * rho_m1 ** ((((m - 1) // 2)) % 2)
            big_s = (-1) ** h * q ** ((m - 1) // 2) * rho_arg
            if m == p:
                val = Fraction(q ** (m - 1) + big_s, 2 * m)
            else:
                ma = spec.a * (m % p)
                rho_ma = _rho_of_log(_dlog_of(spec, ma)) if not ma.is_zero() else 0
                val = Fraction(q ** (m - 1) + big_s - (-1) ** h * rho_ma - 1, 2 * m)
    elif s == 4:
        if spec.r != 1 or (p - 1) % 4 != 0 or m <= 2:
            raise NotApplicable("s = 4 closed form needs q = p = 1 mod 4 and m > 2")
        par = _quartic(p, spec.base.generator_index)
        pi = par.pi
        if spec.a.is_zero():
            val = Fraction(p ** (p - 2) - 1, 4) if m == p else Fraction(p ** (m - 1) - 1, 4 * m)
        else:
            log_a = _dlog_of(spec, spec.a)
            rho_a = _rho_of_log(log_a)
            chi_a = GaussianInt.i_power(log_a)
            if m == p:
                inner = pi ** ((p - 1) // 2) * chi_a * GaussianInt.i_power(h)
                val = Fraction(
                    p ** (p - 1)
                    + (-1) ** h * (p ** ((p - 1) // 2) * rho_a + 2 * p ** ((p - 1) // 4) * Fraction(inner.twice_real(), 2)),
                    4 * p,
                )
            else:
                log_m = _dlog_of(spec, spec.base.from_int(m))
                rho_m = _rho_of_log(log_m)
                chi_m3a = GaussianInt.i_power(3 * log_m + log_a)
                if m % 4 == 1:
                    r_m = (
                        GaussianInt(p ** ((m - 1) // 4)) * pi ** ((m - 1) // 2) * chi_a * GaussianInt.i_power(h)
                        - chi_m3a * GaussianInt.i_power(h)
                    )
                else:
                    sign = -1 if par.f % 2 else 1
                    r_m = (
                        GaussianInt(sign * p ** ((m - 3) // 4))
                        * pi ** ((m + 1) // 2)
                        * chi_a.conjugate()
                        * GaussianInt.i_power(h)
                        - chi_m3a * GaussianInt.i_power(3 * h)
                    )
                val = Fraction(
                    p ** (m - 1) - 1 + (-1) ** h * (rho_a * (p ** ((m - 1) // 2) - rho_m) + r_m.twice_real()),
                    4 * m,
                )
    elif s == 3:
        if spec.r != 1 or (p - 1) % 3 != 0 or m <= 3:
            raise NotApplicable("s = 3 closed form needs q = p = 1 mod 3 and prime m > 3")
        par = _cubic(p, spec.base.generator_index)
        pi = par.pi
        if spec.a.is_zero():
            val = Fraction(p ** (p - 2) - 1, 3) if m == p else Fraction(p ** (m - 1) - 1, 3 * m)
        else:
            log_a = _dlog_of(spec, spec.a)
            chi_a = EisensteinInt.zeta_power(log_a)
            if m == p:
                inner = pi ** ((p - 1) // 3) * chi_a * EisensteinInt.zeta_power(2 * h)
                val = Fraction(p ** (p - 1) + 2 * p ** ((p - 1) // 3) * Fraction(inner.twice_real(), 2), 3 * p)
            else:
                log_m = _dlog_of(spec, spec.base.from_int(m))
                chi_m_bar = EisensteinInt.zeta_power(-log_m)
                if m % 3 == 1:
                    l_m = ((p * pi) ** ((m - 1) // 3) - chi_m_bar) * chi_a * EisensteinInt.zeta_power(2 * h)
                else:
                    l_m = (
                        EisensteinInt(p ** ((m - 2) // 3)) * pi ** ((m + 1) // 3) * chi_a * EisensteinInt.zeta_power(h)
                        - chi_m_bar
                    ) * chi_a * EisensteinInt.zeta_power(h)
                val = Fraction(p ** (m - 1) - 1 + l_m.twice_real(), 3 * m)
    else:
        raise NotApplicable(f"no prime-m closed form for s = {s}")
    if val.denominator != 1 or val < 0:
        raise InvariantError("prime-m closed form produced a non-integer or negative count")
    return int(val)
