"""Exact arithmetic in rings of roots of unity and small quadratic rings.

`CycInt` holds an element of Z[zeta_L] as a length-L integer vector in
Z[x]/(x^L - 1); equality and integer extraction reduce modulo the L-th
cyclotomic polynomial.  Working modulo x^L - 1 keeps the hot path (adding
histograms of character values) to plain vector addition; the reduction
only happens at comparison time.

`QuadPow` holds numbers (u + v*sqrt(-D)) / sqrt(2)^k exactly, which is
where the index-2 Gauss-sum constants and their powers live.  `GaussianInt`
and `EisensteinInt` cover Z[i] and Z[zeta_3] for the quartic and cubic
Jacobi-sum parameters.

No floating point anywhere; magnitude checks compare squared moduli.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import OrderMismatch
from .intmath import cyclotomic_poly, legendre, poly_divmod_z


class CycInt:
    """Element of Z[zeta_L] stored as coefficients of 1, zeta, ..., zeta^{L-1}."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError("root-of-unity order must be >= 1")
        self.order = order
        if coeffs is None:
            self.coeffs = (0,) * order
        else:
            coeffs = tuple(int(c) for c in coeffs)
            if len(coeffs) != order:
                raise ValueError("coefficient vector must have length L")
            self.coeffs = coeffs

    @classmethod
    def integer(cls, order: int, n: int) -> "CycInt":
        return cls(order, (int(n),) + (0,) * (order - 1))

    @classmethod
    def root(cls, order: int, exponent: int, coeff: int = 1) -> "CycInt":
        """coeff * zeta_L^exponent."""
        v = [0] * order
        v[exponent % order] = int(coeff)
        return cls(order, v)

    @classmethod
    def from_counts(cls, order: int, counts) -> "CycInt":
        """Histogram of exponents -> sum of roots (counts indexed by exponent)."""
        v = [0] * order
        for e, c in enumerate(counts):
            v[e % order] += int(c)
        return cls(order, v)

    def _check(self, other: "CycInt") -> None:
        if self.order != other.order:
            raise OrderMismatch(
                f"cyclotomic orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.order, other)
        self._check(other)
        return CycInt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.order, tuple(a * other for a in self.coeffs))
        self._check(other)
        L = self.order
        out = [0] * L
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        out[k - L if k >= L else k] += a * b
        return CycInt(L, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative cyclotomic powers are not defined here")
        result = CycInt.integer(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CycInt":
        """Complex conjugation: zeta^k -> zeta^{-k}."""
        L = self.order
        v = [0] * L
        for k, c in enumerate(self.coeffs):
            v[(-k) % L] += c
        return CycInt(L, v)

    def reduced(self) -> tuple[int, ...]:
        """Canonical representative: remainder mod Phi_L, low degree first."""
        phi = list(cyclotomic_poly(self.order))
        _, rem = poly_divmod_z(list(self.coeffs), phi)
        return tuple(rem)

    def is_zero(self) -> bool:
        return self.reduced() == (0,)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.order, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        self._check(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.order, self.reduced()))

    def as_integer(self):
        """The rational integer this value equals, or None if it is not one."""
        rem = self.reduced()
        if len(rem) == 1:
            return rem[0]
        return None

    def expect_integer(self, what: str = "value") -> int:
        from .errors import InvariantError

        n = self.as_integer()
        if n is None:
            raise InvariantError(f"{what} did not reduce to a rational integer")
        return n

    def embed(self, new_order: int) -> "CycInt":
        """Reinterpret in Z[zeta_{L'}] for L | L' via zeta_L -> zeta_{L'}^{L'/L}."""
        if new_order % self.order != 0:
            raise OrderMismatch(f"{self.order} does not divide {new_order}")
        step = new_order // self.order
        v = [0] * new_order
        for k, c in enumerate(self.coeffs):
            v[(k * step) % new_order] += c
        return CycInt(new_order, v)

    def serialize(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        return f"CycInt({self.order}, {list(self.coeffs)})"


def zeta(order: int, exponent: int = 1) -> CycInt:
    return CycInt.root(order, exponent)


@lru_cache(maxsize=None)
def quadratic_gauss_sum(ell: int) -> CycInt:
    """sum_k (k|ell) zeta_ell^k: sqrt(ell) if ell = 1 mod 4, sqrt(-ell) if 3 mod 4."""
    v = [0] * ell
    for k in range(1, ell):
        v[k] = legendre(k, ell)
    return CycInt(ell, v)


def sqrt_minus(d: int, order: int) -> CycInt:
    """sqrt(-d) as an element of Z[zeta_order] for d in {3, 7, 15, 23}."""
    if d in (3, 7, 23):
        return quadratic_gauss_sum(d).embed(order)
    if d == 15:
        # sqrt(-15) = sqrt(-3) * sqrt(5)
        s3 = quadratic_gauss_sum(3).embed(15)
        s5 = quadratic_gauss_sum(5).embed(15)
        return (s3 * s5).embed(order)
    raise ValueError(f"no construction for sqrt(-{d})")


class GaussianInt:
    """a + b*i in Z[i]."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    def __add__(self, other):
        other = self._coerce(other)
        return GaussianInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        other = self._coerce(other)
        return GaussianInt(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return GaussianInt(-self.a, -self.b)

    def __mul__(self, other):
        other = self._coerce(other)
        return GaussianInt(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = GaussianInt(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @staticmethod
    def _coerce(x):
        return x if isinstance(x, GaussianInt) else GaussianInt(x)

    @staticmethod
    def i_power(k: int) -> "GaussianInt":
        return (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))[k % 4]

    def conjugate(self):
        return GaussianInt(self.a, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def twice_real(self) -> int:
        return 2 * self.a

    def to_cyc(self, order: int = 4) -> CycInt:
        assert order % 4 == 0
        return (CycInt.integer(4, self.a) + CycInt.root(4, 1, self.b)).embed(order)

    def __eq__(self, other):
        other = self._coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"GaussianInt({self.a}, {self.b})"


class EisensteinInt:
    """a + b*zeta_3 in Z[zeta_3]."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    @classmethod
    def from_sqrt3(cls, x: int, y: int) -> "EisensteinInt":
        """x + y*sqrt(-3), using sqrt(-3) = 1 + 2*zeta_3."""
        return cls(x + y, 2 * y)

    def __add__(self, other):
        other = self._coerce(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        other = self._coerce(other)
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other):
        # zeta^2 = -1 - zeta
        other = self._coerce(other)
        return EisensteinInt(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a - self.b * other.b,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = EisensteinInt(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @staticmethod
    def _coerce(x):
        return x if isinstance(x, EisensteinInt) else EisensteinInt(x)

    @staticmethod
    def zeta_power(k: int) -> "EisensteinInt":
        return (EisensteinInt(1, 0), EisensteinInt(0, 1), EisensteinInt(-1, -1))[k % 3]

    def conjugate(self):
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def twice_real(self) -> int:
        return 2 * self.a - self.b

    def to_cyc(self, order: int = 3) -> CycInt:
        assert order % 3 == 0
        return (CycInt.integer(3, self.a) + CycInt.root(3, 1, self.b)).embed(order)

    def __eq__(self, other):
        other = self._coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"EisensteinInt({self.a}, {self.b})"


class QuadPow:
    """(u + v*sqrt(-D)) / sqrt(2)^k, exactly.

    Normalized so that k is minimal: while k >= 2 and both u and v are
    even, a factor 2 = sqrt(2)^2 is cancelled.
    """

    __slots__ = ("d", "u", "v", "k")

    def __init__(self, d: int, u: int, v: int, k: int = 0):
        if k < 0:
            # push sqrt(2) powers into the numerator pairwise
            lift = (-k + 1) // 2
            u, v, k = u * (1 << lift), v * (1 << lift), k + 2 * lift
        self.d = d
        while k >= 2 and u % 2 == 0 and v % 2 == 0:
            u //= 2
            v //= 2
            k -= 2
        if u == 0 and v == 0:
            k = 0
        self.u, self.v, self.k = u, v, k

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadPow(self.d, self.u * other, self.v * other, self.k)
        if self.d != other.d:
            raise ValueError("mixed radicands")
        return QuadPow(
            self.d,
            self.u * other.u - self.d * self.v * other.v,
            self.u * other.v + self.v * other.u,
            self.k + other.k,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        if self.d != other.d:
            raise ValueError("mixed radicands")
        ka, kb = self.k, other.k
        if (ka - kb) % 2 != 0:
            raise ValueError("incompatible sqrt(2) gradings in addition")
        k = max(ka, kb)
        sa = 1 << ((k - ka) // 2)
        sb = 1 << ((k - kb) // 2)
        return QuadPow(self.d, self.u * sa + other.u * sb, self.v * sa + other.v * sb, k)

    def __neg__(self):
        return QuadPow(self.d, -self.u, -self.v, self.k)

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, n: int):
        result = QuadPow(self.d, 1, 0, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return QuadPow(self.d, self.u, -self.v, self.k)

    def trace(self) -> "QuadPow":
        """z + conj(z) = 2u / sqrt(2)^k, still sqrt(2)-graded."""
        return self + self.conjugate()

    def norm(self) -> Fraction:
        """z * conj(z) = (u^2 + D v^2) / 2^k."""
        return Fraction(self.u * self.u + self.d * self.v * self.v, 1 << self.k)

    def trace_sqrt2(self, extra: int = 0) -> Fraction:
        """(z + conj(z)) * sqrt(2)^extra, which must be rational.

        Equals 2u * sqrt(2)^(extra - k); the exponent parity is asserted.
        """
        if self.u == 0:
            return Fraction(0)
        e = extra - self.k
        if e % 2 != 0:
            raise ValueError("trace with odd residual sqrt(2) grading")
        if e >= 0:
            return Fraction(2 * self.u * (1 << (e // 2)))
        return Fraction(2 * self.u, 1 << (-e // 2))

    def twice_real_sqrt2(self, extra: int = 0) -> Fraction:
        return self.trace_sqrt2(extra)

    def to_cyc(self, order: int) -> CycInt:
        """Embed into Z[zeta_order]; only supported for k = 0."""
        if self.k != 0:
            raise ValueError("sqrt(2) denominators do not embed here")
        return CycInt.integer(order, self.u) + sqrt_minus(self.d, order) * self.v

    def as_tuple(self):
        return (self.d, self.u, self.v, self.k)

    def __eq__(self, other):
        if not isinstance(other, QuadPow):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def serialize(self) -> dict:
        return {"u": self.u, "v": self.v, "D": self.d, "k": self.k}

    def __repr__(self):
        return f"QuadPow(D={self.d}, u={self.u}, v={self.v}, k={self.k})"


# The four index-2 constants used by the p=2 closed forms.
OMEGA_7 = QuadPow(7, 1, 1, 3)      # (1 + sqrt(-7)) / sqrt(8)
OMEGA_15 = QuadPow(15, -1, -1, 4)  # -(1 + sqrt(-15)) / 4
OMEGA_21 = QuadPow(7, 3, 1, 0)     # 3 + sqrt(-7)
OMEGA_23 = QuadPow(23, 3, -1, 0)   # 3 - sqrt(-23)
