"""TC-generating functions F(t) = sum_{r>=1} TC_{r+1} t^r as exact rational
functions, their pole form A/(1-t)^2 + B/(1-t) + p(t), and series checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NoPoleFormError, StabilizationError
from .spaces import IntegerPolynomialInT, render_t_polynomial

# -- dense polynomials over Q, lowest degree first ---------------------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)])


def _pscale(a, c):
    return _trim([x * c for x in a])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for k, y in enumerate(b):
            a[k + shift] -= c * y
        a = _trim(a)
    return _trim(q), a


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, rem = _pdivmod(a, b)
        a, b = b, rem
    if not a:
        return []
    return [Fraction(x) / a[-1] for x in a]


def _ppow(a, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = _pmul(out, a)
    return out


ONE_MINUS_T = [Fraction(1), Fraction(-1)]


def _to_integer_pair(num, den):
    """Scale num/den to coprime-content integer polynomials, den(0) > 0."""
    from math import gcd, lcm

    coeffs = [Fraction(x) for x in num + den]
    scale = 1
    for c in coeffs:
        scale = lcm(scale, c.denominator)
    inum = [int(x * scale) for x in num]
    iden = [int(x * scale) for x in den]
    g = 0
    for c in inum + iden:
        g = gcd(g, c)
    g = g or 1
    lead = next(c for c in iden if c)
    if lead < 0:
        g = -g
    return [c // g for c in inum], [c // g for c in iden]


@dataclass(frozen=True)
class PoleForm:
    """F(t) = A/(1-t)^2 + B/(1-t) + p(t) with p a polynomial."""

    A: Fraction
    B: Fraction
    p: tuple  # Fractions, lowest degree first

    def __str__(self):
        parts = []
        for coeff, den in ((self.A, "(1-t)^2"), (self.B, "(1-t)")):
            if coeff:
                parts.append((coeff, f"{abs(coeff)}/{den}"))
        text = ""
        for coeff, body in parts:
            if not text:
                text = body if coeff > 0 else f"-{body}"
            else:
                text += f" + {body}" if coeff > 0 else f" - {body}"
        tail = render_t_polynomial(self.p)
        if tail == "0":
            return text or "0"
        if not text:
            return tail
        return f"{text} - {tail[1:]}" if tail.startswith("-") else f"{text} + {tail}"


class RationalFunction:
    """Exact ratio numerator/denominator of integer polynomials in t.

    The pair is gcd-reduced and scaled to integer coefficients without common
    content, with the lowest nonzero denominator coefficient positive.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Sequence, denominator: Sequence = (1,)):
        num = _trim([Fraction(x) for x in numerator])
        den = _trim([Fraction(x) for x in denominator])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = [], [Fraction(1)]
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, _ = _pdivmod(num, g)
                den, _ = _pdivmod(den, g)
        inum, iden = _to_integer_pair(num, den)
        self.numerator = IntegerPolynomialInT(inum)
        self.denominator = IntegerPolynomialInT(iden)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        a, b = _frac_lists(self), _frac_lists(other)
        return RationalFunction(_padd(_pmul(a[0], b[1]), _pmul(b[0], a[1])), _pmul(a[1], b[1]))

    def __sub__(self, other):
        b = _frac_lists(other)
        return self + RationalFunction(_pscale(b[0], -1), b[1])

    def __call__(self, t):
        return Fraction(self.numerator(Fraction(t))) / self.denominator(Fraction(t))

    def _pole_order_at_one(self):
        """(e, c) with denominator == c (1-t)^e, or None."""
        den = [Fraction(x) for x in self.denominator.coefficients]
        e = 0
        while len(den) > 1:
            q, rem = _pdivmod(den, ONE_MINUS_T)
            if rem:
                return None
            den, e = q, e + 1
        return e, den[0]

    def pole_form(self) -> PoleForm:
        got = self._pole_order_at_one()
        if got is None:
            raise NoPoleFormError(f"{self}: denominator has roots other than t = 1")
        e, c = got
        if e > 2:
            raise NoPoleFormError(f"{self}: pole of order {e} at t = 1")
        # expand the numerator in u = 1 - t: N(1-u) = sum a_k u^k
        num = [Fraction(x) for x in self.numerator.coefficients]
        a = []
        cur = num
        while cur:
            q, rem = _pdivmod(cur, ONE_MINUS_T)
            a.append(rem[0] if rem else Fraction(0))
            cur = q
        a += [Fraction(0)] * 3
        A = a[0] / c if e == 2 else Fraction(0)
        B = (a[1] if e == 2 else a[0]) / c if e >= 1 else Fraction(0)
        p: list = []
        for k in range(e, len(a)):
            if a[k]:
                p = _padd(p, _pscale(_ppow(ONE_MINUS_T, k - e), a[k] / c))
        return PoleForm(A, B, tuple(p))

    def __repr__(self):
        return f"RationalFunction({list(self.numerator.coefficients)}, {list(self.denominator.coefficients)})"

    def __str__(self):
        num = str(self.numerator)
        den_coeffs = self.denominator.coefficients
        if den_coeffs == (1,):
            return num
        got = self._pole_order_at_one()
        if got is not None and got[1] == 1:
            e = got[0]
            den = "(1-t)" if e == 1 else f"(1-t)^{e}"
        else:
            den = f"({self.denominator})"
        if len([c for c in self.numerator.coefficients if c]) > 1:
            num = f"({num})"
        return f"{num}/{den}"


def _frac_lists(f: RationalFunction):
    return (
        [Fraction(x) for x in f.numerator.coefficients],
        [Fraction(x) for x in f.denominator.coefficients],
    )


# -- sequences ---------------------------------------------------------------


class SequenceKind(enum.Enum):
    FN_ODD = "fn-odd"
    FN_PLANAR = "fn-planar"
    HOPF = "hopf"
    FN_FIBER = "fn-fiber"
    CUSTOM = "custom"


@dataclass(frozen=True)
class TCSequence:
    """r -> TC_{r+1} for r >= 1, given as slope * r + intercept outside a
    finite table of exceptional values."""

    name: SequenceKind
    slope: Fraction
    intercept: Fraction
    exceptions: tuple = ()  # ((r, value), ...)
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for r, _ in self.exceptions:
            if not isinstance(r, int) or r < 1:
                raise ValueError(f"exceptional index must be an integer >= 1, got {r!r}")

    def __call__(self, r: int):
        if r < 1:
            raise ValueError("the generating function starts at r = 1")
        for rr, v in self.exceptions:
            if rr == r:
                return v
        value = self.slope * r + self.intercept
        return int(value) if Fraction(value).denominator == 1 else value

    def values(self, count: int) -> list:
        """TC_2, TC_3, ..., i.e. the rule at r = 1..count."""
        return [self(r) for r in range(1, count + 1)]

    @classmethod
    def fn_odd(cls, m: int, n: int) -> "TCSequence":
        return cls(SequenceKind.FN_ODD, Fraction(n), Fraction(n + m - 1), params={"m": m, "n": n})

    @classmethod
    def fn_planar(cls, m: int, n: int) -> "TCSequence":
        return cls(SequenceKind.FN_PLANAR, Fraction(n), Fraction(n + m - 2), params={"m": m, "n": n})

    @classmethod
    def hopf(cls) -> "TCSequence":
        return cls(SequenceKind.HOPF, Fraction(1), Fraction(0))

    @classmethod
    def fn_fiber(cls, n: int) -> "TCSequence":
        return cls(SequenceKind.FN_FIBER, Fraction(n), Fraction(n), params={"n": n})

    @classmethod
    def custom(cls, slope, intercept, exceptions=()) -> "TCSequence":
        return cls(
            SequenceKind.CUSTOM,
            Fraction(slope),
            Fraction(intercept),
            tuple((int(r), v) for r, v in dict(exceptions).items())
            if isinstance(exceptions, dict)
            else tuple(exceptions),
        )


def genfun_of(seq: TCSequence) -> RationalFunction:
    """sum_{r>=1} seq(r) t^r as an exact rational function."""
    a, c = Fraction(seq.slope), Fraction(seq.intercept)
    # sum a r t^r = a t/(1-t)^2 and sum c t^r = c t/(1-t), over r >= 1
    num = _padd([0, a], _pmul([0, c], ONE_MINUS_T))
    delta = []
    for r, v in seq.exceptions:
        bump = Fraction(v) - (a * r + c)
        if bump:
            delta = _padd(delta, [Fraction(0)] * r + [bump])
    num = _padd(num, _pmul(delta, _ppow(ONE_MINUS_T, 2)))
    return RationalFunction(num, _ppow(ONE_MINUS_T, 2))


def expand_series(f: RationalFunction, count: int) -> list:
    """First ``count`` Taylor coefficients at t = 0."""
    den = [Fraction(x) for x in f.denominator.coefficients]
    if den[0] == 0:
        raise ZeroDivisionError("rational function has a pole at t = 0")
    num = [Fraction(x) for x in f.numerator.coefficients]
    out = []
    for k in range(count):
        acc = num[k] if k < len(num) else Fraction(0)
        for s in range(1, min(k, len(den) - 1) + 1):
            acc -= den[s] * out[k - s]
        out.append(acc / den[0])
    return [int(x) if x.denominator == 1 else x for x in out]


def principal_residues(f: RationalFunction):
    """(A, B) of the pole form; integers when they are integral."""
    pf = f.pole_form()
    return tuple(int(x) if x.denominator == 1 else x for x in (pf.A, pf.B))


def recurrence_check(seq, horizon: int = 10):
    """Return A with TC_{r+1} = TC_r + A from some point on.

    ``seq`` is a ``TCSequence`` (evaluated at r = 1..horizon) or a plain list
    of consecutive values.  The tail counts as settled when its last two
    first differences agree.
    """
    if horizon < 3:
        raise ValueError("horizon must be >= 3")
    values = seq.values(horizon) if isinstance(seq, TCSequence) else list(seq)[:horizon]
    if len(values) < 3:
        raise ValueError("need at least three values")
    diffs = [b - a for a, b in zip(values, values[1:])]
    if diffs[-1] != diffs[-2]:
        raise StabilizationError(f"first differences did not settle: {diffs}", diffs)
    A = diffs[-1]
    return int(A) if Fraction(A).denominator == 1 else A
