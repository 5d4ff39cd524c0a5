"""Multiplicative characters and exact evaluation of their sums.

Three sum species: monomial exponential sums over F_{q^t}, Gauss sums,
and Jacobi sums.  Everything is evaluated by histogramming character
exponents and converting the counts to a CycInt once at the end, so
intermediate work is plain integer vector addition.

For p = 2 the Davenport-Hasse identity lifts a Gauss sum from the small
field carrying the character to any extension by sign-twisted exact
powering; norm compatibility of the two character pinnings is automatic
when both levels live in one tower.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycInt
from .errors import EnumerationCapExceeded, InvariantError, ValidationError
from .fields import FieldCtx, FieldElement, TowerCtx, build_tower


@dataclass(frozen=True)
class MultChar:
    """Character of F_{q^t}* pinned to the tower generators.

    The canonical order-n character sends gamma_t to zeta_n; this object
    is its k-th power.  Values are exponent indices into zeta_n, with
    lambda(0) = 0 for nontrivial characters and lambda_0(0) = 1.
    """

    level: int
    order: int
    k: int = 1

    def exponent_of_log(self, j: int) -> int:
        return (self.k * j) % self.order

    @property
    def is_trivial(self) -> bool:
        return self.k % self.order == 0

    def value_exponent(self, tower: TowerCtx, x: FieldElement):
        """Exponent e with lambda(x) = zeta_order^e, or None when lambda(x) = 0."""
        if x.is_zero():
            return 0 if self.is_trivial else None
        return self.exponent_of_log(tower.dlog_gamma(x, self.level))


def _check_cap(size: int, cap: int, what: str):
    if size > cap:
        raise EnumerationCapExceeded(
            f"{what} needs {size} elements, beyond cap {cap}; closed forms or "
            f"the Davenport-Hasse lift remain available where applicable"
        )


def monomial_sum(tower: TowerCtx, t: int, i: int, n: int, cap: int | None = None) -> CycInt:
    """sum over x in F_{q^t}* of e_t(gamma_t^i * x^n), exactly, in Z[zeta_p].

    n need not divide q^t - 1; the exponent walk i + k*n mod (q^t - 1)
    is histogrammed as-is.
    """
    if n <= 0:
        raise ValidationError("monomial exponent must be positive")
    cap = tower.enum_cap if cap is None else cap
    _check_cap(tower.q**t, cap, f"monomial sum over F_{{q^{t}}}")
    traces = tower.orbit_abs_traces(t, cap)
    big_q = tower.q**t - 1
    exps = (i + np.arange(big_q, dtype=np.int64) * n) % big_q
    counts = np.bincount(traces[exps], minlength=tower.p)
    return CycInt.from_counts(tower.p, counts.tolist())


def gauss_sum(tower: TowerCtx, t: int, chi: MultChar, cap: int | None = None) -> CycInt:
    """G_t(chi) = sum over F_{q^t}* of e_t(x) chi(x), in Z[zeta_{pN}]."""
    if chi.level != t:
        raise ValidationError("character level does not match the field")
    n = chi.order
    if (tower.q**t - 1) % n != 0:
        raise ValidationError("character order must divide the group order")
    cap = tower.enum_cap if cap is None else cap
    _check_cap(tower.q**t, cap, f"Gauss sum over F_{{q^{t}}}")
    p = tower.p
    traces = tower.orbit_abs_traces(t, cap)
    big_q = tower.q**t - 1
    mult = (chi.k * np.arange(big_q, dtype=np.int64)) % n
    key = traces.astype(np.int64) * n + mult
    counts = np.bincount(key, minlength=p * n)
    order = p * n
    coeffs = [0] * order
    for a in range(p):
        for b in range(n):
            c = int(counts[a * n + b])
            if c:
                coeffs[(a * n + b * p) % order] += c  # zeta_p^a zeta_N^b
    return CycInt(order, coeffs)


def gauss_sum_folded(tower: TowerCtx, t: int, chi: MultChar, cap: int | None = None) -> CycInt:
    """Same Gauss sum for p = 2, folded into Z[zeta_N] via zeta_2 = -1."""
    if tower.p != 2:
        raise ValidationError("sign folding needs characteristic 2")
    if chi.level != t:
        raise ValidationError("character level does not match the field")
    n = chi.order
    cap = tower.enum_cap if cap is None else cap
    _check_cap(tower.q**t, cap, f"Gauss sum over F_{{q^{t}}}")
    traces = tower.orbit_abs_traces(t, cap)
    big_q = tower.q**t - 1
    mult = (chi.k * np.arange(big_q, dtype=np.int64)) % n
    coeffs = np.bincount(mult[traces == 0], minlength=n) - np.bincount(
        mult[traces == 1], minlength=n
    )
    return CycInt(n, coeffs.tolist())


def gauss_sum_lifted(tower: TowerCtx, chi: MultChar, t_prime: int, cap: int | None = None) -> CycInt:
    """Gauss sum over the degree-t' extension of level chi.level, by lifting.

    Characteristic 2 only: equals -(-F(chi))^{t'} where F is the Gauss sum
    over the subfield at level chi.level, per the Davenport-Hasse identity.
    The result lives in Z[zeta_N] and matches the direct Gauss sum at level
    chi.level * t_prime with the norm-compatible character.
    """
    f = gauss_sum_folded(tower, chi.level, chi, cap)
    return -((-f) ** t_prime)


def jacobi_brute(field: FieldCtx, n: int, k: int, t: int, cap: int | None = None) -> CycInt:
    """J_t(lambda) = sum over x_1 + ... + x_t = 1 of lambda(x_1 ... x_t).

    lambda is the k-th power of the canonical order-n character of F_q*
    (sending field.generator to zeta_n).  Iterates the t - 1 free
    coordinates directly; exact in Z[zeta_n].
    """
    q = field.order
    if (q - 1) % n != 0:
        raise ValidationError("character order must divide q - 1")
    cap = (1 << 24) if cap is None else cap
    _check_cap(q ** max(t - 1, 0), cap, f"Jacobi sum with {t} variables")
    trivial = k % n == 0
    if t == 1:
        return CycInt.integer(n, 1)  # lambda(1)

    dlogs: list[int | None] = [None] * q
    cur = field.one
    g = field.generator
    for e in range(q - 1):
        dlogs[cur.index] = e
        cur = cur * g

    if field.r == 1:
        add = lambda a, b: (a + b) % q
        neg = [(-i) % q for i in range(q)]
    else:
        elems = [field.from_index(i) for i in range(q)]
        addtab = [[(elems[i] + elems[j]).index for j in range(q)] for i in range(q)]
        add = lambda a, b: addtab[a][b]
        neg = [(-elems[i]).index for i in range(q)]

    one_idx = field.one.index
    coeffs = [0] * n
    const = 0
    for tup in itertools.product(range(q), repeat=t - 1):
        s = 0
        logsum = 0
        zero_seen = False
        for i in tup:
            if i == 0:
                zero_seen = True
            else:
                logsum += dlogs[i]
            s = add(s, i)
        last = add(one_idx, neg[s])
        if zero_seen or last == 0:
            if trivial:
                const += 1  # lambda_0 takes value 1 even at 0
            continue
        coeffs[(logsum + dlogs[last]) * k % n] += 1
    coeffs[0] += const
    return CycInt(n, coeffs)


@dataclass
class ConnectReport:
    """Both sides of the monomial-to-Gauss-sum identity, compared exactly."""

    lhs: CycInt
    rhs: CycInt
    equal: bool


def char_connect_check(tower: TowerCtx, t: int, alpha: FieldElement, n: int) -> ConnectReport:
    """Check sum_x e_t(alpha x^n) = sum_{lambda in H_n} G_t(conj lambda) lambda(Norm_t alpha).

    n must divide q - 1; both sides are computed independently.
    """
    q = tower.q
    if (q - 1) % n != 0:
        raise ValidationError("n must divide q - 1")
    i = tower.dlog_gamma(alpha, t)
    lhs = monomial_sum(tower, t, i, n)
    p = tower.p
    order = p * n
    norm_log = tower.dlog_g(tower.norm_rel(alpha, t))
    rhs = CycInt(order)
    for j in range(n):
        # lambda_j sends g to zeta_n^j, so lambda_j . Norm_t is the level-t
        # character sending gamma_t to zeta_n^j
        chi_bar = MultChar(level=t, order=n, k=(-j) % n)
        g_val = gauss_sum(tower, t, chi_bar)
        lam_val = CycInt.root(order, (j * norm_log % n) * p)
        rhs = rhs + g_val.embed(order) * lam_val
    lhs_e = lhs.embed(order)
    return ConnectReport(lhs=lhs_e, rhs=rhs, equal=lhs_e == rhs)


def gauss_sum_conjugate_product(tower: TowerCtx, t: int, chi: MultChar) -> int:
    """|G|^2 extracted exactly; equals q^t for nontrivial chi."""
    g = gauss_sum(tower, t, chi)
    val = (g * g.conjugate()).as_integer()
    if val is None:
        raise InvariantError("|G|^2 must be a rational integer")
    return val


def monomial_closed_semiprimitive(p: int, e: int, n: int, t: int, s: int, i: int) -> int:
    """Closed value of sum_{x != 0} e_t(gamma_t^i x^s) when s | p^e + 1, r = 2en.

    Two values only, split by i mod s against the shift k_s (which is s/2
    exactly when p > 2, nt odd and (p^e + 1)/s odd, else 0).
    """
    if (p**e + 1) % s != 0:
        raise ValidationError("semiprimitive closed form needs s | p^e + 1")
    k_s = s // 2 if (p > 2 and (n * t) % 2 == 1 and s % 2 == 0 and ((p**e + 1) // s) % 2 == 1) else 0
    root = p ** (e * n * t)  # sqrt(q^t) for q = p^{2en}
    sign = -1 if (n * t) % 2 else 1
    if i % s == k_s % s:
        return -sign * (s - 1) * root - 1
    return sign * root - 1


def monomial_closed_char2(r: int, t: int, big_n: int, i: int) -> int:
    """Closed value of sum over ALL x in F_{2^{rt}} of e_t(gamma_t^i x^N).

    Needs -1 to be a power of 2 mod N (semiprimitive N); the sum is
    (-1)^{N'} sqrt(q^t) off the zero class and (-1)^{N'-1}(N-1) sqrt(q^t)
    on it, with N' = rt / ord_N(2).
    """
    from .intmath import multiplicative_order

    if big_n <= 1:
        raise ValidationError("N must exceed 1")
    ord2 = multiplicative_order(2, big_n)
    if not (ord2 % 2 == 0 and pow(2, ord2 // 2, big_n) == big_n - 1):
        raise ValidationError(f"-1 is not a power of 2 modulo {big_n}")
    if (r * t) % ord2 != 0:
        raise ValidationError("ord_N(2) must divide rt")
    n_prime = (r * t) // ord2
    root = 2 ** ((r * t) // 2)
    sign = -1 if n_prime % 2 else 1
    if i % big_n == 0:
        return -sign * (big_n - 1) * root
    return sign * root


def dh_consistency_check(r_small: int, t_prime: int, n: int, k: int) -> bool:
    """Davenport-Hasse lift vs the direct Gauss sum, in one shared tower."""
    tower = build_tower(2, r_small, t_prime)
    chi = MultChar(level=1, order=n, k=k)
    lifted = gauss_sum_lifted(tower, chi, t_prime)
    direct = gauss_sum_folded(tower, t_prime, MultChar(level=t_prime, order=n, k=k))
    return lifted == direct
