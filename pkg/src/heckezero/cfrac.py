"""Plus and minus continued fractions of quadratic surds, the plus-to-minus
conversion, exact periodic evaluation, and the cone ratio sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (DegenerateWord, InternalInvariantError, NotPurelyPeriodic,
                     RationalInput, UnitMismatch)
from .exact import QuadSurd, squarefree_part
from .quadfield import FieldData


@dataclass(frozen=True)
class PlusCF:
    """Eventually periodic plus continued fraction a0 + 1/(a1 + ...)."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(a < 1 for a in self.period):
            raise ValueError("periodic plus digits must be >= 1")
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))

    @property
    def purely_periodic(self) -> bool:
        return not self.preperiod


def mu_factor(s: int) -> Fraction:
    """1 for odd s, 1/2 for even s."""
    return Fraction(1) if s % 2 else Fraction(1, 2)


@dataclass(frozen=True)
class MinusCF:
    """Eventually periodic minus continued fraction b0 - 1/(b1 - ...).

    When produced by plus_to_minus, carries the plus period s and the special
    positions S_j at which the digit exceeds 2.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    plus_period: int | None = None
    special_positions: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(b < 2 for b in self.period):
            raise ValueError("periodic minus digits must be >= 2")
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        object.__setattr__(self, "special_positions",
                           tuple(self.special_positions))

    @property
    def purely_periodic(self) -> bool:
        return not self.preperiod

    @property
    def m(self) -> int:
        return len(self.period)

    def mu(self) -> Fraction:
        if self.plus_period is None:
            raise ValueError("not produced by plus_to_minus")
        return mu_factor(self.plus_period)

    def rotated(self, k: int) -> MinusCF:
        """The word started at digit index k (cyclically)."""
        k %= self.m
        return MinusCF((), self.period[k:] + self.period[:k])


def plus_expand(x: QuadSurd) -> PlusCF:
    """Plus continued fraction digits with exact periodicity detection."""
    if x.is_rational():
        raise RationalInput(f"{x} is rational")
    seen: dict[QuadSurd, int] = {}
    digits: list[int] = []
    while x not in seen:
        seen[x] = len(digits)
        a = x.floor()
        digits.append(a)
        x = (x - a).inverse()
    j = seen[x]
    return PlusCF(tuple(digits[:j]), tuple(digits[j:]))


def minus_expand(x: QuadSurd) -> MinusCF:
    """Minus continued fraction digits b_k = ceil(x_k), x_{k+1} = 1/(b_k - x_k)."""
    if x.is_rational():
        raise RationalInput(f"{x} is rational")
    seen: dict[QuadSurd, int] = {}
    digits: list[int] = []
    while x not in seen:
        seen[x] = len(digits)
        b = x.ceil()
        digits.append(b)
        x = (b - x).inverse()
    j = seen[x]
    return MinusCF(tuple(digits[:j]), tuple(digits[j:]))


def plus_to_minus(p: PlusCF) -> MinusCF:
    """Convert a purely periodic plus word to the minus word of value + 1.

    With plus period s, the minus period is m = a_1 + a_3 + ... + a_{s-1}
    for even s and a_0 + ... + a_{s-1} for odd s; digits are a_{2j} + 2 at
    the positions S_j = S_{j-1} + a_{2j-1} and 2 elsewhere.  All a-indices
    wrap mod s.
    """
    if not p.purely_periodic:
        raise NotPurelyPeriodic("conversion needs a purely periodic plus word")
    a = p.period
    s = len(a)
    if s % 2:
        m = sum(a)
        # runtime check of the equivalent odd-s formula
        if sum(a[(2 * i - 1) % s] for i in range(1, s + 1)) != m:
            raise InternalInvariantError("odd-s period identities disagree")
        n_special = s
    else:
        m = sum(a[i] for i in range(1, s, 2))
        n_special = s // 2
    positions = []
    S = 0
    for j in range(n_special):
        if j > 0:
            S += a[(2 * j - 1) % s]
        positions.append(S)
    digits = [2] * m
    for j, S in enumerate(positions):
        digits[S] = a[(2 * j) % s] + 2
    out = MinusCF((), tuple(digits), plus_period=s,
                  special_positions=tuple(positions))
    # certify: the conversion must satisfy minus value = plus value + 1
    if evaluate_periodic(out) != evaluate_periodic(p) + 1:
        raise InternalInvariantError("plus_to_minus certification failed")
    return out


def _fold_moebius(word, plus: bool) -> tuple[int, int, int, int]:
    m00, m01, m10, m11 = 1, 0, 0, 1
    sign = 1 if plus else -1
    for a in word:
        m00, m01, m10, m11 = (m00 * a + m01, sign * m00,
                              m10 * a + m11, sign * m10)
    return m00, m01, m10, m11


def evaluate_periodic(word: PlusCF | MinusCF) -> QuadSurd:
    """The exact quadratic surd fixed by an eventually periodic word."""
    plus = isinstance(word, PlusCF)
    m00, m01, m10, m11 = _fold_moebius(word.period, plus)
    # fixed point of y = (m00 y + m01)/(m10 y + m11)
    A, B, C = m10, m11 - m00, -m01
    disc = B * B - 4 * A * C
    if disc <= 0:
        raise DegenerateWord("no real quadratic fixed point")
    d, s = squarefree_part(disc)
    if d == 1:
        raise DegenerateWord("period word has rational fixed points")
    y = QuadSurd(-B, s, 2 * A, d)  # larger root (A = m10 > 0)
    for a in reversed(word.preperiod):
        # x = a + 1/y (plus) or a - 1/y (minus)
        y = a + y.inverse() * (1 if plus else -1)
    return y


@dataclass(frozen=True)
class DeltaSequence:
    """Cone ratios delta_1..delta_m and the cumulative A_i = A_{i-1}/delta_i."""

    deltas: tuple[QuadSurd, ...]
    A: tuple[QuadSurd, ...]


def delta_sequence(F: FieldData, mcf: MinusCF) -> DeltaSequence:
    """delta_i from rotated-word evaluation, with the exact unit product check.

    Evaluating each rotation independently (rather than iterating the cyclic
    relation from delta_0) lets the relation delta_i = b_i - 1/delta_{i+1}
    serve as a genuine cross-check in the test suite.
    """
    if not mcf.purely_periodic:
        raise NotPurelyPeriodic("delta sequence needs a purely periodic word")
    m = mcf.m
    deltas = []
    for i in range(1, m + 1):
        di = evaluate_periodic(mcf.rotated(i))
        if di.d != F.d:
            raise UnitMismatch(
                f"word evaluates in Q(sqrt({di.d})), not Q(sqrt({F.d}))")
        deltas.append(di)
    A = [QuadSurd.from_rational(1, F.d)]
    for di in deltas:
        A.append(A[-1] / di)
    prod = A[0] / A[-1]
    if prod != F.tp_fund_unit:
        raise UnitMismatch(
            f"product of cone ratios is {prod}, not the unit {F.tp_fund_unit}")
    return DeltaSequence(tuple(deltas), tuple(A))
