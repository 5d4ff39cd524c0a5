"""Exact arithmetic in F_p, F_{p^r}, and subfield towers inside F_{p^{rm}}.

Field construction is fully deterministic: the modulus of F_{p^r} is the
monic irreducible of degree r whose coefficient vector, read as a base-p
integer with the low-degree coefficient least significant, is smallest;
the generator is the first element (in the same integer enumeration
order) of full multiplicative order.  That pins down every discrete-log
label and every reported coset index across runs.

Elements are coordinate vectors over F_p.  A tower F_q^t <= F_{q^m} is
realized inside the single field F_{p^{rm}}; the subfield test is
x^{q^t} == x.  Bulk enumeration (orbits of a generator mapped through an
F_p-linear form) is vectorized with numpy in fixed-size blocks, since the
Frobenius, traces, and multiplication-by-a-constant are all linear maps.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import (
    EnumerationCapExceeded,
    InvalidDegree,
    InvalidPrime,
    InvariantError,
    SubfieldViolation,
    ZeroHasNoLog,
)
from .intmath import divisors, factor_prime_power_order, is_prime

DEFAULT_ENUM_CAP = 1 << 24

_ORBIT_BLOCK = 4096


# -- dense polynomial helpers over F_p (tuples, low degree first) --


def _ptrim(a):
    n = len(a)
    while n > 1 and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _pmod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k]
        if c:
            a[k] = 0
            for j in range(df):
                a[k - df + j] = (a[k - df + j] - c * f[j]) % p
    return a[:df] + [0] * (df - len(a)) if len(a) < df else a[:df]


def _pmulmod(a, b, f, p):
    return _pmod(_pmul(a, b, p), f, p)


def _ppowmod(a, e, f, p):
    result = [1] + [0] * (len(f) - 2)
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(_ptrim(a)), list(_ptrim(b))
    while b != [0]:
        # make b monic before reducing
        inv = pow(b[-1], p - 2, p)
        b = [c * inv % p for c in b]
        a, b = b, _ptrim([c % p for c in _polyrem(a, b, p)])
    return a


def _polyrem(a, f, p):
    a = list(a)
    df = len(f) - 1
    if df == 0:
        return [0]
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k]
        if c:
            a[k] = 0
            for j in range(df):
                a[k - df + j] = (a[k - df + j] - c * f[j]) % p
    return a[:df] if len(a) >= df else a + [0] * (df - len(a))


def poly_is_irreducible(coeffs, p: int) -> bool:
    """Rabin test for a monic polynomial over F_p.

    gcd(x^{p^k} - x, f) = 1 for k <= deg/2, and x^{p^deg} = x mod f.
    """
    f = list(coeffs)
    deg = len(f) - 1
    if deg < 1 or f[-1] != 1:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    xp = list(x)
    for k in range(1, deg // 2 + 1):
        xp = _ppowmod(xp, p, f, p)  # now x^{p^k} mod f
        diff = list(xp)
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(diff, f, p)
        if len(_ptrim(g)) != 1:
            return False
    for _ in range(deg // 2, deg):
        xp = _ppowmod(xp, p, f, p)
    return _ptrim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(xp)]) == [0]


class FieldElement:
    """An element of a FieldCtx: a reduced coordinate vector over F_p."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: "FieldCtx", coords):
        self.ctx = ctx
        self.coords = tuple(c % ctx.p for c in coords)

    def __add__(self, other):
        self._same(other)
        return FieldElement(self.ctx, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return FieldElement(self.ctx, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FieldElement(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.ctx, tuple(a * other for a in self.coords))
        self._same(other)
        ctx = self.ctx
        prod = _pmulmod(list(self.coords), list(other.coords), ctx._mod_list, ctx.p)
        return FieldElement(ctx, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        ctx = self.ctx
        if e < 0:
            if self.is_zero():
                raise ZeroDivisionError("inverse of zero")
            e %= ctx.group_order
        out = _ppowmod(list(self.coords), e, ctx._mod_list, ctx.p)
        return FieldElement(ctx, out)

    def inverse(self) -> "FieldElement":
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def index(self) -> int:
        """Base-p integer encoding, low-degree coordinate least significant."""
        v = 0
        for c in reversed(self.coords):
            v = v * self.ctx.p + c
        return v

    def _same(self, other):
        if self.ctx is not other.ctx:
            raise ValueError("elements from different fields")

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.ctx), self.coords))

    def __repr__(self):
        return f"<{self.index} in F_{self.ctx.order}>"


class FieldCtx:
    """F_{p^r} with canonical modulus and generator."""

    def __init__(self, p: int, r: int, enum_cap: int = DEFAULT_ENUM_CAP):
        if not is_prime(p):
            raise InvalidPrime(f"{p} is not prime")
        if r < 1:
            raise InvalidDegree(f"extension degree must be >= 1, got {r}")
        self.p = p
        self.r = r
        self.order = p**r
        self.group_order = self.order - 1
        self.enum_cap = enum_cap
        self.modulus = self._canonical_modulus()
        self._mod_list = list(self.modulus)
        self._gen = None
        self._gen_factored = None
        self._frob1 = None
        self._frob_pows: dict[int, np.ndarray] = {}
        self._dlog_baby: dict[tuple, dict] = {}

    # -- construction --

    def _canonical_modulus(self) -> tuple[int, ...]:
        p, r = self.p, self.r
        for code in range(p**r):
            coeffs = []
            c = code
            for _ in range(r):
                coeffs.append(c % p)
                c //= p
            coeffs.append(1)
            if poly_is_irreducible(coeffs, p):
                return tuple(coeffs)
        raise InvariantError("no irreducible polynomial found")  # pragma: no cover

    @property
    def generator(self) -> FieldElement:
        """First element, in index order, of multiplicative order p^r - 1."""
        if self._gen is None:
            fac = self.order_factorization()
            primes = [q for q, _ in fac]
            n = self.group_order
            for idx in range(1, self.order):
                x = self.from_index(idx)
                if all(not (x ** (n // q)) == self.one for q in primes):
                    self._gen = x
                    break
            else:  # pragma: no cover
                raise InvariantError("no generator found")
        return self._gen

    @property
    def generator_index(self) -> int:
        return self.generator.index

    def order_factorization(self) -> tuple[tuple[int, int], ...]:
        if self._gen_factored is None:
            self._gen_factored = factor_prime_power_order(self.p, self.r)
        return self._gen_factored

    # -- element constructors --

    def elem(self, coords) -> FieldElement:
        coords = tuple(coords)
        if len(coords) != self.r:
            raise ValueError(f"need {self.r} coordinates")
        return FieldElement(self, coords)

    def from_index(self, idx: int) -> FieldElement:
        if not 0 <= idx < self.order:
            raise ValueError(f"index {idx} out of range")
        coords = []
        for _ in range(self.r):
            coords.append(idx % self.p)
            idx //= self.p
        return FieldElement(self, coords)

    def from_int(self, n: int) -> FieldElement:
        """The prime-subfield element n * 1."""
        return FieldElement(self, (n % self.p,) + (0,) * (self.r - 1))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.r)

    @property
    def one(self) -> FieldElement:
        return self.from_int(1)

    def elements(self):
        for idx in range(self.order):
            yield self.from_index(idx)

    # -- linear maps as numpy matrices (row vector @ matrix convention) --

    def mul_matrix(self, x: FieldElement) -> np.ndarray:
        """Matrix M with row i = coordinates of x * X^i; then y @ M = y*x."""
        rows = []
        cur = list(x.coords)
        for _ in range(self.r):
            rows.append(list(cur))
            cur = _pmulmod(cur, [0, 1], self._mod_list, self.p)
        return np.array(rows, dtype=np.int64)

    def frob_matrix(self, e: int = 1) -> np.ndarray:
        """Matrix of y -> y^{p^e}."""
        e %= self.r  # Frobenius has order r
        if e in self._frob_pows:
            return self._frob_pows[e]
        if self._frob1 is None:
            rows = []
            for i in range(self.r):
                xi = [0] * i + [1]
                rows.append(_ppowmod(xi, self.p, self._mod_list, self.p))
            self._frob1 = np.array(rows, dtype=np.int64)
        m = np.eye(self.r, dtype=np.int64)
        for _ in range(e):
            m = (m @ self._frob1) % self.p
        self._frob_pows[e] = m
        return m

    def linear_orbit(
        self,
        gamma: FieldElement,
        out_map: np.ndarray,
        length: int,
        weights: np.ndarray | None = None,
        start: int = 0,
        block: int = _ORBIT_BLOCK,
    ) -> np.ndarray:
        """Values of (gamma^j @ out_map) mod p for j in [start, start+length).

        With `weights` the mod-p rows are additionally folded to integers
        (rows @ weights), giving one int64 per exponent.
        """
        p, r = self.p, self.r
        k = out_map.shape[1]
        out = np.empty((length, k) if weights is None else (length,), dtype=np.int64)
        if length == 0:
            return out
        nb = min(block, length)
        rows = np.zeros((nb, r), dtype=np.int64)
        cur = gamma**start if start else self.one
        for i in range(nb):
            rows[i] = cur.coords
            cur = cur * gamma
        step = self.mul_matrix(gamma**nb)
        pos = 0
        while pos < length:
            n = min(nb, length - pos)
            vals = (rows[:n] @ out_map) % p
            if weights is None:
                out[pos : pos + n] = vals
            else:
                out[pos : pos + n] = vals @ weights
            pos += n
            if pos < length:
                rows = (rows @ step) % p
        return out

    def power_weights(self) -> np.ndarray:
        """Column of base-p place values; digits @ this = element index."""
        return np.array([[self.p**i] for i in range(self.r)], dtype=np.int64).reshape(-1)

    # -- discrete logarithms (Pohlig-Hellman over BSGS) --

    def dlog(self, x: FieldElement, base: FieldElement, order: int, factored=None) -> int:
        """Exponent e in [0, order) with base^e = x; base must have that order."""
        if x.is_zero():
            raise ZeroHasNoLog("zero has no discrete logarithm")
        if factored is None:
            from .intmath import factorize

            factored = tuple(sorted(factorize(order).items()))
        residues = []
        moduli = []
        for q, e in factored:
            pe = q**e
            # digits of the log base q inside the subgroup of order q^e
            g_sub = base ** (order // pe)
            x_sub = x ** (order // pe)
            gq = g_sub ** (q ** (e - 1))  # order q
            log = 0
            for i in range(e):
                t = (x_sub * (g_sub**log).inverse()) ** (q ** (e - 1 - i))
                d = self._bsgs(t, gq, q)
                log += d * q**i
            residues.append(log)
            moduli.append(pe)
        # CRT
        result, mod = 0, 1
        for rres, rmod in zip(residues, moduli):
            inv = pow(mod % rmod, -1, rmod) if rmod > 1 else 0
            result = result + mod * ((rres - result) * inv % rmod)
            mod *= rmod
        if not (base**result == x):
            raise InvariantError("dlog postcondition failed")
        return result % order

    def _bsgs(self, x: FieldElement, g: FieldElement, n: int) -> int:
        """Log of x base g in the cyclic group of prime order n."""
        m = math.isqrt(n - 1) + 1
        key = (g.coords, n)
        baby = self._dlog_baby.get(key)
        if baby is None:
            baby = {}
            cur = self.one
            for j in range(m):
                baby.setdefault(cur.coords, j)
                cur = cur * g
            self._dlog_baby[key] = baby
        giant = (g**m).inverse()
        cur = x
        for i in range(m + 1):
            j = baby.get(cur.coords)
            if j is not None:
                return (i * m + j) % n
            cur = cur * giant
        raise InvariantError("BSGS found no logarithm")

    def element_order(self, x: FieldElement) -> int:
        if x.is_zero():
            raise ValueError("zero has no multiplicative order")
        order = self.group_order
        for q, e in self.order_factorization():
            for _ in range(e):
                if x ** (order // q) == self.one:
                    order //= q
                else:
                    break
        return order

    # -- serialization --

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "modulus": list(self.modulus),
            "generator_index": self.generator_index,
        }

    def __repr__(self):
        return f"FieldCtx(p={self.p}, r={self.r})"


@lru_cache(maxsize=None)
def build_field(p: int, r: int) -> FieldCtx:
    """Deterministic F_{p^r}; cached, instances are immutable and shareable."""
    return FieldCtx(p, r)


class _FpSolver:
    """Solves a @ B = y over F_p for a (r unknowns), B an r x n matrix."""

    def __init__(self, b_rows: list[list[int]], p: int, n: int):
        self.p = p
        self.r = len(b_rows)
        self.n = n
        # row-reduce the r x n matrix, tracking operations on an identity
        mat = [list(row) for row in b_rows]
        ops = [[1 if i == j else 0 for j in range(self.r)] for i in range(self.r)]
        pivots = []
        row = 0
        for col in range(n):
            sel = None
            for i in range(row, self.r):
                if mat[i][col] % p:
                    sel = i
                    break
            if sel is None:
                continue
            mat[row], mat[sel] = mat[sel], mat[row]
            ops[row], ops[sel] = ops[sel], ops[row]
            inv = pow(mat[row][col], p - 2, p)
            mat[row] = [c * inv % p for c in mat[row]]
            ops[row] = [c * inv % p for c in ops[row]]
            for i in range(self.r):
                if i != row and mat[i][col] % p:
                    f = mat[i][col]
                    mat[i] = [(c - f * d) % p for c, d in zip(mat[i], mat[row])]
                    ops[i] = [(c - f * d) % p for c, d in zip(ops[i], ops[row])]
            pivots.append(col)
            row += 1
            if row == self.r:
                break
        if row != self.r:
            raise InvariantError("embedding basis is not full rank")
        self.mat = mat
        self.ops = ops
        self.pivots = pivots

    def solve(self, y: list[int]) -> list[int]:
        # mat = ops @ B is in reduced form with mat[i][pivots[j]] = delta_ij,
        # so c @ B = y gives c = z @ ops with z[i] = y[pivots[i]]
        p = self.p
        z = [y[col] % p for col in self.pivots]
        return [sum(z[i] * self.ops[i][j] for i in range(self.r)) % p for j in range(self.r)]


class TowerCtx:
    """F_q = F_{p^r} with all its extensions F_{q^t}, t | m, inside F_{p^{rm}}.

    gamma[m] is the canonical generator of the top field, gamma[t] its
    norm down to F_{q^t}, and g = gamma[1] the induced generator of F_q.
    """

    def __init__(self, p: int, r: int, m: int, enum_cap: int = DEFAULT_ENUM_CAP):
        if m < 1:
            raise InvalidDegree("tower degree must be >= 1")
        self.p = p
        self.r = r
        self.m = m
        self.q = p**r
        self.enum_cap = enum_cap
        self.base = build_field(p, r)
        self.top = build_field(p, r * m)
        top_group = self.top.group_order
        self.gamma: dict[int, FieldElement] = {}
        gm = self.top.generator
        for t in divisors(m):
            self.gamma[t] = gm ** (top_group // (self.q**t - 1))
        self.g = self.gamma[1]
        self._trace_mats: dict[int, np.ndarray] = {}
        self._abs_trace_cols: dict[int, np.ndarray] = {}
        self._orbit_traces: dict[int, np.ndarray] = {}
        self._embed_rows: list[list[int]] | None = None
        self._solver: _FpSolver | None = None
        self._g_index_cache: int | None = None
        self._verify_tower()

    def _verify_tower(self):
        # gamma_t must have order q^t - 1, and g must be its norm, for all t | m
        for t in divisors(self.m):
            n = self.q**t - 1
            gt = self.gamma[t]
            assert gt**n == self.top.one
            for qq, _ in factor_prime_power_order(self.p, self.r * t):
                assert not gt ** (n // qq) == self.top.one, "gamma_t order too small"
            assert self.norm_rel(gt, t) == self.g

    # -- subfield structure --

    def frob_q_matrix(self, j: int = 1) -> np.ndarray:
        return self.top.frob_matrix((self.r * j) % (self.r * self.m))

    def subfield_contains(self, x: FieldElement, t: int) -> bool:
        if t % self.m == 0:
            return True
        v = np.array(x.coords, dtype=np.int64)
        out = (v @ self.frob_q_matrix(t)) % self.p
        return tuple(out.tolist()) == x.coords

    def trace_matrix(self, t: int) -> np.ndarray:
        """Matrix of the relative trace F_{q^m} -> F_{q^t} (sum over Frobenius)."""
        if t not in self._trace_mats:
            n = self.r * self.m
            acc = np.zeros((n, n), dtype=np.int64)
            f = np.eye(n, dtype=np.int64)
            step = self.frob_q_matrix(t)
            for _ in range(self.m // t):
                acc = (acc + f) % self.p
                f = (f @ step) % self.p
            self._trace_mats[t] = acc
        return self._trace_mats[t]

    def abs_trace_column(self, t: int) -> np.ndarray:
        """Linear form giving the absolute trace of F_{q^t}-subfield elements."""
        if t not in self._abs_trace_cols:
            n = self.r * self.m
            acc = np.zeros((n, n), dtype=np.int64)
            f = np.eye(n, dtype=np.int64)
            frob = self.top.frob_matrix(1)
            for _ in range(self.r * t):
                acc = (acc + f) % self.p
                f = (f @ frob) % self.p
            self._abs_trace_cols[t] = np.ascontiguousarray(acc[:, :1])
        return self._abs_trace_cols[t]

    def trace_rel(self, x: FieldElement, t: int) -> FieldElement:
        """Tr from F_{q^t} to F_q; x must lie in F_{q^t}."""
        self._require_subfield(x, t)
        acc = self.top.zero
        cur = x
        for _ in range(t):
            acc = acc + cur
            cur = cur**self.q
        if not self.subfield_contains(acc, 1):
            raise InvariantError("trace left the base field")
        return acc

    def norm_rel(self, x: FieldElement, t: int) -> FieldElement:
        """Norm from F_{q^t} to F_q; norm of zero is zero."""
        self._require_subfield(x, t)
        if x.is_zero():
            return self.top.zero
        y = x ** ((self.q**t - 1) // (self.q - 1))
        if not self.subfield_contains(y, 1):
            raise InvariantError("norm left the base field")
        return y

    def abs_trace(self, x: FieldElement, t: int) -> int:
        """Absolute trace of x as an element of F_{q^t}, a residue mod p."""
        self._require_subfield(x, t)
        v = np.array(x.coords, dtype=np.int64)
        out = (v @ self.abs_trace_column(t)) % self.p
        return int(out[0])

    def _require_subfield(self, x: FieldElement, t: int):
        if t not in self.gamma:
            raise InvalidDegree(f"{t} does not divide {self.m}")
        if not self.subfield_contains(x, t):
            raise SubfieldViolation(f"element not in F_{{q^{t}}}")

    # -- base field embedding --

    def _embedding(self):
        if self._embed_rows is not None:
            return
        n = self.r * self.m
        if self.r == 1:
            self._embed_rows = [[1 if i == 0 else 0 for i in range(n)]]
            self._solver = _FpSolver(self._embed_rows, self.p, n)
            return
        # find the first root (along powers of g) of the base modulus in the top
        # field; the root set is an orbit of Frobenius, the choice is canonical
        # given the canonical gamma.
        beta = None
        cur = self.top.one
        f = self.base.modulus
        for _ in range(self.q - 1):
            acc = self.top.zero
            for c in reversed(f):
                acc = acc * cur + self.top.from_int(c)
            if acc.is_zero():
                beta = cur
                break
            cur = cur * self.g
        if beta is None:  # pragma: no cover
            raise InvariantError("base modulus has no root in the top field")
        rows = []
        b = self.top.one
        for _ in range(self.r):
            rows.append(list(b.coords))
            b = b * beta
        self._embed_rows = rows
        self._solver = _FpSolver(rows, self.p, n)

    def embed(self, x: FieldElement) -> FieldElement:
        """Map a base-field element into the top field."""
        if x.ctx is self.top:
            return x
        if x.ctx is not self.base:
            raise ValueError("embed expects a base-field element")
        self._embedding()
        n = self.r * self.m
        out = [0] * n
        for a, row in zip(x.coords, self._embed_rows):
            if a:
                for i, c in enumerate(row):
                    out[i] = (out[i] + a * c) % self.p
        return FieldElement(self.top, out)

    def to_base(self, y: FieldElement) -> FieldElement:
        """Inverse of embed; raises SubfieldViolation off the F_q subset."""
        if y.ctx is self.base:
            return y
        self._embedding()
        coeffs = self._solver.solve(list(y.coords))
        cand = self.base.elem(coeffs)
        if not self.embed(cand) == y:
            raise SubfieldViolation("element is not in the embedded base field")
        return cand

    # -- discrete logs relative to the tower labels --

    def dlog_gamma(self, x: FieldElement, t: int) -> int:
        """Index of x in the cyclic group generated by gamma_t."""
        self._require_subfield(x, t)
        n = self.q**t - 1
        return self.top.dlog(
            x, self.gamma[t], n, factored=factor_prime_power_order(self.p, self.r * t)
        )

    def dlog_g(self, x: FieldElement) -> int:
        if x.ctx is self.base:
            x = self.embed(x)
        return self.dlog_gamma(x, 1)

    # -- bulk enumeration --

    def orbit_abs_traces(self, t: int, cap: int | None = None) -> np.ndarray:
        """abs_trace(gamma_t^e, t) for e in [0, q^t - 1), as one uint8 array."""
        if t not in self._orbit_traces:
            n = self.q**t
            cap = self.enum_cap if cap is None else cap
            if n > cap:
                raise EnumerationCapExceeded(
                    f"q^t = {n} exceeds enumeration cap {cap}; closed forms or the "
                    f"Davenport-Hasse lift remain available where applicable"
                )
            vals = self.top.linear_orbit(self.gamma[t], self.abs_trace_column(t), n - 1)
            self._orbit_traces[t] = vals.reshape(-1).astype(np.uint8)
        return self._orbit_traces[t]

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "top_modulus": list(self.top.modulus),
            "m": self.m,
            "gamma_index": self.top.generator_index,
            "g_index": self.g.index,
        }

    def __repr__(self):
        return f"TowerCtx(p={self.p}, r={self.r}, m={self.m})"


@lru_cache(maxsize=64)
def build_tower(p: int, r: int, m: int) -> TowerCtx:
    return TowerCtx(p, r, m)


def min_poly(tower: TowerCtx, x: FieldElement):
    """Minimal polynomial of x over F_q: (coefficients low->high, degree).

    Coefficients are base-field elements; the polynomial is monic and
    irreducible of degree t, the least t | m with x^{q^t} = x.
    """
    q = tower.q
    t = next(d for d in divisors(tower.m) if tower.subfield_contains(x, d))
    conjugates = []
    cur = x
    for _ in range(t):
        conjugates.append(cur)
        cur = cur**q
    assert cur == x
    # product of (X - conj) with top-field coefficients
    poly = [tower.top.one]
    for c in conjugates:
        nxt = [tower.top.zero] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + a
            nxt[i] = nxt[i] - a * c
        poly = nxt
    base_coeffs = tuple(tower.to_base(c) for c in poly)
    return base_coeffs, t


def field_poly_is_irreducible(coeffs, ctx: FieldCtx) -> bool:
    """Rabin test for a monic polynomial with FieldCtx coefficients."""
    deg = len(coeffs) - 1
    if deg < 1 or not coeffs[-1] == ctx.one:
        return False
    if deg == 1:
        return True
    q = ctx.order

    def mulmod(a, b):
        out = [ctx.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai.is_zero():
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        # reduce by monic coeffs
        for k in range(len(out) - 1, deg - 1, -1):
            c = out[k]
            if not c.is_zero():
                out[k] = ctx.zero
                for j in range(deg):
                    out[k - deg + j] = out[k - deg + j] - c * coeffs[j]
        return out[:deg] + [ctx.zero] * max(0, deg - len(out))

    def powq(a, e):
        result = [ctx.one] + [ctx.zero] * (deg - 1)
        base = list(a)
        while e:
            if e & 1:
                result = mulmod(result, base)
            base = mulmod(base, base)
            e >>= 1
        return result

    def gcd_nontrivial(a):
        # gcd(a, f) != 1 ?
        b = list(coeffs)
        a = [c for c in a]

        def trim(v):
            n = len(v)
            while n > 1 and v[n - 1].is_zero():
                n -= 1
            return v[:n]

        a, b = trim(a), trim(b)
        while not (len(b) == 1 and b[0].is_zero()):
            lead = b[-1]
            binv = lead.inverse()
            bm = [c * binv for c in b]
            # remainder of a by monic bm
            a = list(a)
            while len(a) >= len(bm) and not (len(a) == 1 and a[0].is_zero()):
                c = a[-1]
                if not c.is_zero():
                    shift = len(a) - len(bm)
                    for j in range(len(bm)):
                        a[shift + j] = a[shift + j] - c * bm[j]
                a.pop()
                a = trim(a) if a else [ctx.zero]
                if len(a) < len(bm):
                    break
            a, b = b, trim(a) if a else [ctx.zero]
        return len(a) > 1 or (len(a) == 1 and a[0].is_zero())

    x = [ctx.zero, ctx.one]
    xq = list(x)
    for k in range(1, deg // 2 + 1):
        xq = powq(xq, q)  # x^{q^k} mod f, iterated
        diff = list(xq) + [ctx.zero] * (2 - len(xq))
        diff[1] = diff[1] - ctx.one
        if gcd_nontrivial(diff):
            return False
    for _ in range(deg // 2, deg):
        xq = powq(xq, q)
    final = list(xq) + [ctx.zero] * (2 - len(xq))
    final[1] = final[1] - ctx.one
    return all(c.is_zero() for c in final)
