"""Exact arithmetic in the cohomology of the r-fold fibre product of the
Fadell-Neuwirth bundle F(R^d, m+n) -> F(R^d, m).

The ring is generated by classes w^l_ij of degree d-1 subject to

    w^l_ij = w^l'_ij            for j <= m   (base classes, written w_ij)
    (w^l_ij)^2 = 0
    w^l_ip w^l_jp = w^l_ij (w^l_jp - w^l_ip)     for i < j < p

together with graded commutativity.  All generators share the degree d-1,
so swapping two adjacent factors multiplies by +1 (d odd) or -1 (d even).

Canonical monomials have at most one factor per *slot*, a slot being a pair
(block, j): the base block holds j = 2..m, and each fibre layer l = 1..r holds
j = m+1..m+n.  Inside a monomial the factors are ordered by block, then by
second index.  Internally a canonical monomial is encoded as a tuple with one
entry per slot, holding the first index i of the factor in that slot, or 0.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    InvalidGeneratorError,
    ParamsError,
    ParamsMismatchError,
    ResourceLimitError,
)

BASE = 0
DEFAULT_MAX_WORD_LEN = 64


@dataclass(frozen=True)
class Params:
    """The quadruple (d, m, n, r).

    ``r = 1`` denotes the single configuration space F(R^d, m+n), which is
    the target of the diagonal restriction.
    """

    d: int
    m: int
    n: int
    r: int

    def __post_init__(self):
        for name in ("d", "m", "n", "r"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ParamsError(f"{name} must be an integer, got {value!r}")
        if self.d < 2:
            raise ParamsError(f"d must be >= 2, got {self.d}")
        if self.m < 1 or self.n < 1 or self.r < 1:
            raise ParamsError(f"need m, n, r >= 1, got m={self.m} n={self.n} r={self.r}")

    @property
    def gen_degree(self) -> int:
        return self.d - 1

    @property
    def sign_swap(self) -> int:
        return 1 if self.d % 2 else -1

    @property
    def points(self) -> int:
        return self.m + self.n

    def with_r(self, r: int) -> "Params":
        return Params(self.d, self.m, self.n, r)

    def as_dict(self) -> dict:
        return {"d": self.d, "m": self.m, "n": self.n, "r": self.r}

    @property
    def _layout(self) -> "_Layout":
        return _layout(self.sign_swap, self.m, self.n, self.r)


class Generator(NamedTuple):
    """One class w^l_ij; ``layer == BASE`` (0) marks a base class w_ij."""

    layer: int
    i: int
    j: int

    @property
    def is_base(self) -> bool:
        return self.layer == BASE

    def sort_key(self):
        return (self.layer, self.j, self.i)

    def __str__(self):
        if self.layer == BASE:
            return f"w({self.i},{self.j})"
        return f"w[{self.layer}]({self.i},{self.j})"


Monomial = tuple  # canonical word: tuple[Generator, ...]


def make_generator(layer, i: int, j: int, params: Params) -> Generator:
    """Validate and normalise a generator request.

    ``layer`` is ``BASE``/``None``/``"base"`` or a fibre index 1..r.  Fibre
    requests with ``j <= m`` collapse to the base class.  When ``r == 1`` a
    base request with ``j > m`` is read as the unique fibre layer.
    """
    if layer is None or layer == "base":
        layer = BASE
    for name, v in (("layer", layer), ("i", i), ("j", j)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidGeneratorError(f"{name} must be an integer, got {v!r}", layer, i, j)
    if not 1 <= i < j <= params.points:
        raise InvalidGeneratorError(
            f"need 1 <= i < j <= m+n={params.points}, got i={i} j={j}", layer, i, j
        )
    if layer != BASE and not 1 <= layer <= params.r:
        raise InvalidGeneratorError(f"layer must be in 1..{params.r}, got {layer}", layer, i, j)
    if j <= params.m:
        return Generator(BASE, i, j)
    if layer == BASE:
        if params.r == 1:
            return Generator(1, i, j)
        raise InvalidGeneratorError(
            f"base class w({i},{j}) needs j <= m={params.m}; give a layer", layer, i, j
        )
    return Generator(layer, i, j)


class _Layout:
    """Slot bookkeeping and memoised straightening for one algebra.

    The multiplication table depends on d only through its parity, so one
    layout serves every d of the same parity.
    """

    def __init__(self, sign: int, m: int, n: int, r: int):
        self.sign = sign
        self.m, self.n, self.r = m, n, r
        info = [(BASE, j) for j in range(2, m + 1)]
        info += [(l, j) for l in range(1, r + 1) for j in range(m + 1, m + n + 1)]
        self.slot_info = tuple(info)
        self.size = len(info)
        self.unit = (0,) * self.size
        self._insert_memo: dict = {}

    def slot(self, layer: int, j: int) -> int:
        if j <= self.m:
            return j - 2
        return self.m - 1 + (layer - 1) * self.n + (j - self.m - 1)

    def insert(self, key: tuple, s: int, i: int) -> tuple:
        """Right-multiply the canonical monomial ``key`` by the generator with
        first index ``i`` living in slot ``s``; returns ((key, coeff), ...)."""
        memo_key = (key, s, i)
        hit = self._insert_memo.get(memo_key)
        if hit is not None:
            return hit
        sign = 1
        if self.sign < 0 and sum(1 for x in key[s + 1:] if x) % 2:
            sign = -1
        i0 = key[s]
        if i0 == 0:
            out = ((key[:s] + (i,) + key[s + 1:], sign),)
        elif i0 == i:
            out = ()
        else:
            # adjacent pair w_{i0 j} w_{i j}; reorder to w_{a j} w_{b j}, a < b
            a, b = (i0, i) if i0 < i else (i, i0)
            sign = sign if i0 < i else sign * self.sign
            layer, _ = self.slot_info[s]
            t = self.slot(layer, b)
            prefix = key[:s] + (0,) * (self.size - s)
            tail = key[s + 1:]
            acc: dict = defaultdict(int)
            for q, c in self.insert(prefix, t, a):
                head = q[:s]
                acc[head + (b,) + tail] += sign * c
                acc[head + (a,) + tail] -= sign * c
            out = tuple((k, c) for k, c in acc.items() if c)
        self._insert_memo[memo_key] = out
        return out

    def mul_keys(self, k1: tuple, k2: tuple) -> dict:
        acc = {k1: 1}
        for s, i in enumerate(k2):
            if not i:
                continue
            nxt: dict = defaultdict(int)
            for q, c in acc.items():
                for q2, c2 in self.insert(q, s, i):
                    nxt[q2] += c * c2
            acc = {k: v for k, v in nxt.items() if v}
            if not acc:
                break
        return acc

    def key_to_word(self, key: tuple) -> Monomial:
        return tuple(
            Generator(self.slot_info[s][0], i, self.slot_info[s][1])
            for s, i in enumerate(key)
            if i
        )


@lru_cache(maxsize=None)
def _layout(sign: int, m: int, n: int, r: int) -> _Layout:
    return _Layout(sign, m, n, r)


def _word_length(key: tuple) -> int:
    return sum(1 for x in key if x)


def _display_order(key: tuple):
    # shorter first; then lexicographic on the slot encoding, larger i first
    return (_word_length(key), tuple(-x for x in key))


class Polynomial:
    """Integer combination of canonical monomials in one algebra.

    Instances are immutable; arithmetic returns new polynomials.
    """

    __slots__ = ("params", "_terms")

    def __init__(self, params: Params, terms: Mapping | None = None):
        self.params = params
        self._terms: dict = {}
        if terms:
            acc: dict = defaultdict(int)
            for word, c in terms.items():
                for k, v in _normal_form_keys(word, c, params).items():
                    acc[k] += v
            self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def _from_keys(cls, params: Params, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.params = params
        p._terms = {k: v for k, v in terms.items() if v}
        return p

    @classmethod
    def zero(cls, params: Params) -> "Polynomial":
        return cls._from_keys(params, {})

    @classmethod
    def constant(cls, params: Params, c: int) -> "Polynomial":
        return cls._from_keys(params, {params._layout.unit: c})

    @classmethod
    def one(cls, params: Params) -> "Polynomial":
        return cls.constant(params, 1)

    @classmethod
    def generator(cls, params: Params, layer, i: int, j: int) -> "Polynomial":
        g = make_generator(layer, i, j, params)
        lay = params._layout
        s = lay.slot(g.layer, g.j)
        key = lay.unit[:s] + (g.i,) + lay.unit[s + 1:]
        return cls._from_keys(params, {key: 1})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Mapping canonical word -> coefficient, in display order."""
        lay = self.params._layout
        return {
            lay.key_to_word(k): self._terms[k]
            for k in sorted(self._terms, key=_display_order)
        }

    def coefficient(self, word: Sequence[Generator]) -> int:
        key = _canonical_key(word, self.params)
        return self._terms.get(key, 0)

    def degrees(self) -> set:
        g = self.params.gen_degree
        return {_word_length(k) * g for k in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self.params, other)._terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.params == other.params and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        return f"Polynomial({self.params.d},{self.params.m},{self.params.n},{self.params.r}: {self})"

    def __str__(self):
        from .expr import format_polynomial

        return format_polynomial(self)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.params != self.params:
                raise ParamsMismatchError(f"{self.params} vs {other.params}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Polynomial.constant(self.params, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, 0) + v
        return Polynomial._from_keys(self.params, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_keys(self.params, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return Polynomial._from_keys(self.params, {k: v * other for k, v in self._terms.items()})
        return multiply(self, self._coerce(other))

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = Polynomial.one(self.params)
        for _ in range(k):
            out = out * self
        return out


def _canonical_key(word: Sequence[Generator], params: Params) -> tuple:
    """Encode an already-canonical word; raises if it is not canonical."""
    lay = params._layout
    key = list(lay.unit)
    last = -1
    for g in word:
        g = make_generator(g.layer, g.i, g.j, params)
        s = lay.slot(g.layer, g.j)
        if s <= last:
            raise ValueError(f"word {tuple(map(str, word))} is not a canonical monomial")
        key[s] = g.i
        last = s
    return tuple(key)


def _normal_form_keys(word, coeff: int, params: Params, max_word_len=DEFAULT_MAX_WORD_LEN) -> dict:
    word = tuple(word)
    if len(word) > max_word_len:
        raise ResourceLimitError(f"word length {len(word)} exceeds cap {max_word_len}")
    lay = params._layout
    acc = {lay.unit: coeff} if coeff else {}
    for g in word:
        if not isinstance(g, Generator):
            raise InvalidGeneratorError(f"not a generator: {g!r}")
        g = make_generator(g.layer, g.i, g.j, params)
        s = lay.slot(g.layer, g.j)
        nxt: dict = defaultdict(int)
        for q, c in acc.items():
            for q2, c2 in lay.insert(q, s, g.i):
                nxt[q2] += c * c2
        acc = {k: v for k, v in nxt.items() if v}
        if not acc:
            break
    return acc


def normal_form(
    word: Iterable[Generator], coeff: int, params: Params, max_word_len: int = DEFAULT_MAX_WORD_LEN
) -> Polynomial:
    """Straighten ``coeff * word`` into the canonical additive basis.

    Generators are inserted one at a time into a growing canonical monomial.
    Passing a factor of equal degree costs the parity sign; landing on an
    occupied slot with the same first index gives zero, and with a different
    first index triggers the three-term relation, whose new factor w_{ab}
    sits in a strictly smaller slot and is inserted recursively.
    """
    return Polynomial._from_keys(params, _normal_form_keys(word, coeff, params, max_word_len))


def multiply(a: Polynomial, b: Polynomial, max_word_len: int = DEFAULT_MAX_WORD_LEN) -> Polynomial:
    if a.params != b.params:
        raise ParamsMismatchError(f"{a.params} vs {b.params}")
    lay = a.params._layout
    acc: dict = defaultdict(int)
    for k1, c1 in a._terms.items():
        n1 = _word_length(k1)
        for k2, c2 in b._terms.items():
            if n1 + _word_length(k2) > max_word_len:
                raise ResourceLimitError(
                    f"product word length {n1 + _word_length(k2)} exceeds cap {max_word_len}"
                )
            for q, c in lay.mul_keys(k1, k2).items():
                acc[q] += c1 * c2 * c
    return Polynomial._from_keys(a.params, acc)


def product(factors: Iterable[Polynomial], params: Params | None = None) -> Polynomial:
    """Left fold of ``multiply``; the empty product needs ``params``."""
    factors = list(factors)
    if not factors:
        if params is None:
            raise ValueError("empty product needs params")
        return Polynomial.one(params)
    out = factors[0]
    for f in factors[1:]:
        out = multiply(out, f)
    return out


def modifications(J: Sequence[int]):
    """Yield (I, repetitions) over the 2^(p-1) J-modifications of ``J``."""
    p = len(J)
    for mask in range(1 << (p - 1)):
        I = [J[0]]
        reps = 0
        for s in range(1, p):
            if mask >> (s - 1) & 1:
                I.append(I[-1])
                reps += 1
            else:
                I.append(J[s])
        yield tuple(I), reps


def expand_modifications(layer: int, J: Sequence[int], j: int, params: Params) -> Polynomial:
    """Closed-form expansion of w^l_{j1 j} ... w^l_{jp j}.

    Sums (-1)^r(I) w^l_{I J'} over the J-modifications I of J, where
    J' = (j2, ..., jp, j) and r(I) counts repeated entries.
    """
    J = tuple(J)
    if len(J) < 2:
        raise ValueError("need at least two indices")
    if any(a >= b for a, b in zip(J, J[1:])):
        raise ValueError(f"J must be strictly increasing, got {J}")
    if j <= J[-1]:
        raise ValueError(f"j={j} must exceed max(J)={J[-1]}")
    for js in J:
        make_generator(layer, js, j, params)
    Jp = J[1:] + (j,)
    acc = Polynomial.zero(params)
    for I, reps in modifications(J):
        word = [make_generator(layer, a, b, params) for a, b in zip(I, Jp)]
        acc = acc + normal_form(word, (-1) ** reps, params)
    return acc


def diagonal_restriction(x: Polynomial) -> Polynomial:
    """Image under the map induced by the diagonal: every w^l_ij -> w_ij in
    the cohomology of F(R^d, m+n) (the ``r = 1`` algebra)."""
    src = x.params
    dst = src.with_r(1)
    lay = src._layout
    dlay = dst._layout
    acc: dict = defaultdict(int)
    for key, c in x._terms.items():
        cur = {dlay.unit: c}
        for s, i in enumerate(key):
            if not i:
                continue
            _, j = lay.slot_info[s]
            t = dlay.slot(1, j)
            nxt: dict = defaultdict(int)
            for q, cq in cur.items():
                for q2, c2 in dlay.insert(q, t, i):
                    nxt[q2] += cq * c2
            cur = nxt
        for q, cq in cur.items():
            acc[q] += cq
    return Polynomial._from_keys(dst, acc)


def monomial_degree(word: Sequence[Generator], params: Params) -> int:
    return len(word) * params.gen_degree
