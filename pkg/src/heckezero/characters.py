"""Dirichlet characters mod q with exact cyclotomic values, generalized
Bernoulli numbers, Kronecker characters and mod-p realizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import NotFundamental, ParseError
from .exact import CycloElement, euler_phi, factorize, is_squarefree


@lru_cache(maxsize=None)
def _unit_group(q: int):
    """Canonical generating set of (Z/q)* and the discrete-log table.

    Generators: the smallest primitive root for each odd prime power factor,
    and the pair (-1, 5) at 2^k for k >= 3; each lifted by CRT to be 1 at the
    other factors.  Returns (gens, orders, table) with table mapping each
    unit residue to its exponent tuple.
    """
    gens: list[int] = []
    orders: list[int] = []
    for p, k in sorted(factorize(q).items()) if q > 1 else []:
        pk = p ** k
        rest = q // pk
        if p == 2:
            if k == 1:
                continue
            local = [(pk - 1, 2)] if k == 2 else [(pk - 1, 2), (5, 2 ** (k - 2))]
        else:
            local = [(_primitive_root(pk), euler_phi(pk))]
        for g, n in local:
            gens.append(_crt_lift(g, pk, rest, q))
            orders.append(n)
    table: dict[int, tuple[int, ...]] = {}
    for exps in product(*(range(n) for n in orders)):
        r = 1
        for g, n, e in zip(gens, orders, exps):
            r = r * pow(g, e, q) % q
        table[r % q] = exps
    if len(table) != euler_phi(q):
        raise RuntimeError(f"unit group of Z/{q} misgenerated")
    return tuple(gens), tuple(orders), table


def _primitive_root(pk: int) -> int:
    phi = euler_phi(pk)
    prime_divs = list(factorize(phi))
    for g in range(2, pk):
        if math.gcd(g, pk) != 1:
            continue
        if all(pow(g, phi // p, pk) != 1 for p in prime_divs):
            return g
    raise RuntimeError(f"no primitive root mod {pk}")


def _crt_lift(g: int, pk: int, rest: int, q: int) -> int:
    if rest == 1:
        return g % q
    inv = pow(pk, -1, rest)
    return (g + pk * ((1 - g) * inv % rest)) % q


@dataclass(frozen=True)
class DirichletCharacter:
    """Character of (Z/q)* given by one exponent per canonical generator.

    chi(g_i) = zeta_{n_i}^{e_i} where n_i is the order of generator g_i.
    """

    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        _, orders, _ = _unit_group(self.modulus)
        if len(self.exponents) != len(orders):
            raise ValueError("wrong number of exponents")
        object.__setattr__(self, "exponents",
                           tuple(e % n for e, n in zip(self.exponents, orders)))

    @property
    def order(self) -> int:
        _, orders, _ = _unit_group(self.modulus)
        o = 1
        for e, n in zip(self.exponents, orders):
            o = math.lcm(o, n // math.gcd(e, n))
        return o

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if self.modulus != other.modulus:
            raise ValueError("character product needs equal moduli")
        return DirichletCharacter(
            self.modulus,
            tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus,
                                  tuple(-e for e in self.exponents))

    def identifier(self) -> str:
        gens, _, _ = _unit_group(self.modulus)
        pairs = ",".join(f"{g}:{e}" for g, e in zip(gens, self.exponents))
        return f"q={self.modulus};gens={pairs}"

    @staticmethod
    def from_identifier(s: str) -> DirichletCharacter:
        try:
            qpart, gpart = s.split(";")
            q = int(qpart.removeprefix("q="))
            body = gpart.removeprefix("gens=")
            pairs = [tuple(map(int, t.split(":"))) for t in body.split(",")] \
                if body else []
        except (ValueError, AttributeError) as exc:
            raise ParseError(f"bad character identifier {s!r}") from exc
        gens, orders, _ = _unit_group(q)
        exps = [0] * len(gens)
        for g, e in pairs:
            if g not in gens:
                raise ParseError(f"{g} is not a canonical generator mod {q}")
            exps[gens.index(g)] = e
        return DirichletCharacter(q, tuple(exps))

    def __call__(self, a: int) -> CycloElement:
        return char_eval(self, a)


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) Dirichlet characters mod q."""
    _, orders, _ = _unit_group(q)
    return [DirichletCharacter(q, exps)
            for exps in product(*(range(n) for n in orders))]


def char_eval(chi: DirichletCharacter, a: int) -> CycloElement:
    """chi(a) as an exact cyclotomic number (0 off the units)."""
    q = chi.modulus
    o = chi.order
    a %= q
    if math.gcd(a, q) != 1:
        return CycloElement.zero(o)
    _, orders, table = _unit_group(q)
    phase = Fraction(0)
    for e, n, t in zip(chi.exponents, orders, table[a]):
        phase += Fraction(e * t, n)
    phase -= math.floor(phase)
    k = phase * o
    if k.denominator != 1:
        raise RuntimeError("character phase not compatible with its order")
    return CycloElement.zeta_power(o, int(k))


def char_invariants(chi: DirichletCharacter) -> tuple[str, int]:
    """(parity, conductor): parity from chi(-1), conductor the smallest
    f | q through which chi factors."""
    q = chi.modulus
    parity = "even" if char_eval(chi, q - 1) == 1 else "odd"
    for f in sorted(_divisors(q)):
        if all(char_eval(chi, a) == 1
               for a in range(1, q + 1)
               if math.gcd(a, q) == 1 and a % f == 1 % f):
            return parity, f
    raise RuntimeError("conductor search failed")  # pragma: no cover


def is_primitive(chi: DirichletCharacter) -> bool:
    return char_invariants(chi)[1] == chi.modulus


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, k in factorize(n).items():
        out = [d * p ** e for d in out for e in range(k + 1)]
    return out


def kronecker(D: int, b: int) -> int:
    """Kronecker symbol (D/b) for a fundamental discriminant D."""
    if not _is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    return _kronecker_raw(D, b)


def _is_fundamental(D: int) -> bool:
    if D == 1:
        return True
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def _kronecker_raw(a: int, n: int) -> int:
    if n == 0:
        return 1 if a in (1, -1) else 0
    out = 1
    if n < 0:
        n = -n
        if a < 0:
            out = -out
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            out = -out
    # now n odd positive: Jacobi symbol (a/n)
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0


def gen_bernoulli_b1(psi, modulus: int | None = None) -> CycloElement:
    """B_{1,psi} = (1/f) * sum_{a=1}^{f} a*psi(a), exact.

    psi may be a DirichletCharacter (modulus taken from it) or any value
    function a -> CycloElement together with an explicit modulus; the latter
    form serves products like chi * chi_D evaluated mod q*D.
    """
    if isinstance(psi, DirichletCharacter):
        f = psi.modulus
        values = lambda a: char_eval(psi, a)
    else:
        if modulus is None:
            raise ValueError("a value function needs an explicit modulus")
        f = modulus
        values = psi
    acc = CycloElement.zero()
    for a in range(1, f + 1):
        v = values(a)
        if not v.is_zero():
            acc = acc + v * a
    return acc * Fraction(1, f)


@dataclass(frozen=True)
class ModPRealization:
    """Reduction of Q(zeta_o) to Z/pZ along zeta_o -> zeta_image.

    Computationally equivalent to a degree-one prime of the character field
    over p: zeta_image has multiplicative order exactly o mod p.
    """

    p: int
    order: int
    zeta_image: int

    def apply(self, x: CycloElement) -> int:
        if self.order % x.order:
            raise ValueError(f"cannot reduce order-{x.order} element")
        t = pow(self.zeta_image, self.order // x.order, self.p)
        acc, tp = 0, 1
        for c in x.coeffs:
            num = c.numerator % self.p
            den = pow(c.denominator, -1, self.p)
            acc = (acc + num * den * tp) % self.p
            tp = tp * t % self.p
        return acc


def modp_realizations(chi: DirichletCharacter, p: int) -> list[ModPRealization]:
    """One realization per order-o element of (Z/p)*; empty if o does not
    divide p - 1."""
    o = chi.order
    if (p - 1) % o:
        return []
    out = []
    for t in range(1, p):
        if _mult_order(t, p) == o:
            out.append(ModPRealization(p, o, t))
    return out


def _mult_order(t: int, p: int) -> int:
    k, acc = 1, t % p
    while acc != 1:
        acc = acc * t % p
        k += 1
    return k
