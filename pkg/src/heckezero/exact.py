"""Exact scalar arithmetic: rationals, quadratic surds, cyclotomic integers.

All values are immutable and all operations are pure functions, so everything
here is safe to use from parallel sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InternalInvariantError

Rational = Fraction


def frac_pos(x: Rational | int) -> Fraction:
    """Representative of x mod 1 in the half-open interval (0, 1].

    Integers map to 1, not 0.  This is deliberate and load-bearing for the
    cone recursions; a conventional fractional part is intentionally not
    exported.
    """
    x = Fraction(x)
    f = x - (x.numerator // x.denominator)
    return Fraction(1) if f == 0 else f


def floor_strict(x: Rational | int) -> int:
    """x - frac_pos(x).  Equals floor(x) off the integers, x - 1 on them."""
    x = Fraction(x)
    n = x.numerator // x.denominator
    return n - 1 if x == n else n


def residue_1q(m: int, q: int) -> int:
    """The representative of m mod q lying in [1, q]."""
    if q < 1:
        raise ValueError("q must be positive")
    r = m % q
    return q if r == 0 else r


def bernoulli_poly(k: int, x: Rational | int) -> Fraction:
    """B_1(x) = x - 1/2 or B_2(x) = x^2 - x + 1/6."""
    x = Fraction(x)
    if k == 1:
        return x - Fraction(1, 2)
    if k == 2:
        return x * x - x + Fraction(1, 6)
    raise ValueError("only k in {1, 2} supported")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    if n < 1:
        raise ValueError("need n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = s^2 * d with d squarefree; returns (d, s).  Needs n > 0."""
    d, s = 1, 1
    for p, e in factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return d, s


def is_squarefree(n: int) -> bool:
    return n > 0 and squarefree_part(n)[0] == n


@dataclass(frozen=True)
class QuadSurd:
    """The real number (a + b*sqrt(d)) / c, stored in canonical form.

    d is a fixed squarefree integer > 1 (kept even when b = 0 so that field
    elements stay in one ambient field); c > 0 and gcd(a, b, c) = 1.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.d <= 1 or not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} must be squarefree and > 1")
        if self.c == 0:
            raise ZeroDivisionError("zero denominator")
        a, b, c = self.a, self.b, self.c
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @staticmethod
    def from_rational(x: Rational | int, d: int) -> QuadSurd:
        x = Fraction(x)
        return QuadSurd(x.numerator, 0, x.denominator, d)

    @staticmethod
    def sqrt(d: int) -> QuadSurd:
        return QuadSurd(0, 1, 1, d)

    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def conj(self) -> QuadSurd:
        return QuadSurd(self.a, -self.b, self.c, self.d)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.d,
                        self.c * self.c)

    def _coerce(self, other) -> QuadSurd:
        if isinstance(other, QuadSurd):
            if other.d != self.d:
                raise ValueError(f"mixed fields sqrt({self.d}), sqrt({other.d})")
            return other
        return QuadSurd.from_rational(other, self.d)

    def __add__(self, other) -> QuadSurd:
        o = self._coerce(other)
        return QuadSurd(self.a * o.c + o.a * self.c,
                        self.b * o.c + o.b * self.c,
                        self.c * o.c, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadSurd:
        return QuadSurd(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> QuadSurd:
        o = self._coerce(other)
        return QuadSurd(self.a * o.a + self.b * o.b * self.d,
                        self.a * o.b + self.b * o.a,
                        self.c * o.c, self.d)

    __rmul__ = __mul__

    def inverse(self) -> QuadSurd:
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadSurd(self.a * self.c, -self.b * self.c, n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> QuadSurd:
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadSurd.from_rational(1, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        return surd_sign(self)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def floor(self) -> int:
        """Exact floor under the embedding sqrt(d) > 0."""
        # initial float-free guess from integer sqrt, then exact fix-up
        s = math.isqrt(self.b * self.b * self.d) * (1 if self.b >= 0 else -1)
        n = (self.a + s) // self.c
        while self - (n + 1) >= 0:
            n += 1
        while self - n < 0:
            n -= 1
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    def coords(self, omega: QuadSurd) -> tuple[Fraction, Fraction]:
        """Rational (u, v) with self = u + v*omega; omega must be irrational."""
        v = Fraction(self.b * omega.c, omega.b * self.c)
        u = Fraction(self.a, self.c) - v * Fraction(omega.a, omega.c)
        return u, v

    def __str__(self) -> str:
        return f"({self.a}{self.b:+}*sqrt({self.d}))/{self.c}"


def surd_sign(x: QuadSurd) -> int:
    """Exact sign of (a + b*sqrt(d))/c; no floating point in the decision."""
    a, b = x.a, x.b
    if b == 0:
        return 0 if a == 0 else (1 if a > 0 else -1)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 against b^2 d; the sign is that of the
    # dominant term
    lhs, rhs = a * a, b * b * x.d
    if lhs == rhs:
        return 0
    big_is_a = lhs > rhs
    return (1 if a > 0 else -1) if big_is_a else (1 if b > 0 else -1)


# ---------------------------------------------------------------------------
# cyclotomic integers


@lru_cache(maxsize=None)
def cyclotomic_polynomial(o: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the o-th cyclotomic polynomial."""
    if o == 1:
        return (-1, 1)
    # divide x^o - 1 by the product of Phi_e over proper divisors e of o
    num = [0] * (o + 1)
    num[0], num[o] = -1, 1
    for e in range(1, o):
        if o % e == 0:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(e)))
    return tuple(num)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = num[i + len(den) - 1] // den[-1]
        q[i] = coef
        for j, dj in enumerate(den):
            num[i + j] -= coef * dj
    if any(num):
        raise InternalInvariantError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out -= out // p
    return out


@dataclass(frozen=True)
class CycloElement:
    """Element of Q(zeta_o) as phi(o) rational coordinates in the power basis.

    Reduction modulo the o-th cyclotomic polynomial is canonical, so equal
    elements always have equal coefficient tuples.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        phi = euler_phi(self.order)
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) > phi:
            cs = _cyclo_reduce(self.order, cs)
        elif len(cs) < phi:
            cs = cs + (Fraction(0),) * (phi - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def zero(order: int = 1) -> CycloElement:
        return CycloElement(order, ())

    @staticmethod
    def from_rational(x: Rational | int, order: int = 1) -> CycloElement:
        return CycloElement(order, (Fraction(x),))

    @staticmethod
    def zeta_power(order: int, e: int) -> CycloElement:
        e %= order
        cs = [Fraction(0)] * (e + 1)
        cs[e] = Fraction(1)
        return CycloElement(order, tuple(cs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_order(self, order: int) -> CycloElement:
        """Embed into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"{self.order} does not divide {order}")
        k = order // self.order
        cs = [Fraction(0)] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            cs[i * k] = c
        return CycloElement(order, tuple(cs))

    def _pair(self, other) -> tuple[CycloElement, CycloElement]:
        if not isinstance(other, CycloElement):
            other = CycloElement.from_rational(other)
        if self.order == other.order:
            return self, other
        o = math.lcm(self.order, other.order)
        return self.to_order(o), other.to_order(o)

    def __add__(self, other) -> CycloElement:
        a, b = self._pair(other)
        return CycloElement(a.order,
                            tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycloElement:
        return CycloElement(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-(self._pair(other)[1]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> CycloElement:
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.order,
                                tuple(c * other for c in self.coeffs))
        a, b = self._pair(other)
        n = len(a.coeffs) + len(b.coeffs) - 1
        conv = [Fraction(0)] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return CycloElement(a.order, tuple(conv))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloElement):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = [f"{c}*z{self.order}^{i}" for i, c in enumerate(self.coeffs)
                 if c]
        return " + ".join(terms) or "0"


def _cyclo_reduce(order: int, coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    phi_poly = cyclotomic_polynomial(order)
    deg = len(phi_poly) - 1
    cs = list(coeffs)
    for i in range(len(cs) - 1, deg - 1, -1):
        coef = cs[i]
        if coef:
            for j in range(deg + 1):
                cs[i - deg + j] -= coef * phi_poly[j]
        cs.pop()
    while len(cs) < deg:
        cs.append(Fraction(0))
    return tuple(cs)


# ---------------------------------------------------------------------------
# shared serialization (used verbatim by the CLI JSON schema)


def rational_to_str(x: Rational | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 \
        else str(x.numerator)


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


def quadsurd_to_dict(x: QuadSurd) -> dict:
    return {"a": x.a, "b": x.b, "c": x.c, "d": x.d}


def quadsurd_from_dict(obj: dict) -> QuadSurd:
    return QuadSurd(obj["a"], obj["b"], obj["c"], obj["d"])


def cyclo_to_dict(x: CycloElement) -> dict:
    return {"order": x.order, "coeffs": [rational_to_str(c) for c in x.coeffs]}


def cyclo_from_dict(obj: dict) -> CycloElement:
    return CycloElement(obj["order"],
                        tuple(Fraction(c) for c in obj["coeffs"]))
