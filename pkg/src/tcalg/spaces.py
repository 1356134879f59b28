"""Additive basis and Poincare polynomials of the fibre-product algebras."""

from __future__ import annotations

from typing import Sequence

from .algebra import BASE, Generator, Params


class IntegerPolynomialInT:
    """Polynomial in one variable t with arbitrary-precision integer
    coefficients; ``coefficients[k]`` multiplies t^k."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[int] = ()):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for zero."""
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    def __eq__(self, other):
        if isinstance(other, IntegerPolynomialInT):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __add__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        return IntegerPolynomialInT([self[k] + other[k] for k in range(n)])

    def __mul__(self, other):
        if not self.coefficients or not other.coefficients:
            return IntegerPolynomialInT()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for a, x in enumerate(self.coefficients):
            if x:
                for b, y in enumerate(other.coefficients):
                    out[a + b] += x * y
        return IntegerPolynomialInT(out)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __repr__(self):
        return f"IntegerPolynomialInT({list(self.coefficients)})"

    def __str__(self):
        return render_t_polynomial(self.coefficients)

    def to_list(self) -> list:
        return list(self.coefficients)


def _t_power(k: int) -> str:
    if k == 0:
        return ""
    return "t" if k == 1 else f"t^{k}"


def render_t_polynomial(coefficients, var_power=_t_power) -> str:
    """Render ``1 + 5t^2 - 4t^6`` style text; coefficients may be Fractions."""
    parts = []
    for k, c in enumerate(coefficients):
        if c == 0:
            continue
        mag = abs(c)
        mono = var_power(k)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}{mono}" if getattr(mag, "denominator", 1) == 1 else f"({mag}){mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def _slots(params: Params):
    slots = [(BASE, j) for j in range(2, params.m + 1)]
    for l in range(1, params.r + 1):
        slots += [(l, j) for j in range(params.m + 1, params.m + params.n + 1)]
    return slots


def enumerate_basis(params: Params, degree: int | None = None) -> list:
    """All canonical basis monomials, optionally restricted to one degree.

    Each slot (block, j) is either empty or holds one factor w_ij with
    1 <= i < j.  Degrees that are not multiples of d-1 give an empty list.
    Output is sorted lexicographically by the (block, j, i) keys of the
    factors.
    """
    length = None
    if degree is not None:
        if degree < 0 or degree % params.gen_degree:
            return []
        length = degree // params.gen_degree
    slots = _slots(params)
    if length is not None and length > len(slots):
        return []
    out = []

    def walk(s, word):
        left = len(slots) - s
        if length is not None and (len(word) > length or len(word) + left < length):
            return
        if s == len(slots):
            out.append(tuple(word))
            return
        walk(s + 1, word)
        layer, j = slots[s]
        for i in range(1, j):
            word.append(Generator(layer, i, j))
            walk(s + 1, word)
            word.pop()

    walk(0, [])
    out.sort(key=lambda w: [g.sort_key() for g in w])
    return out


def poincare_polynomial(params: Params) -> IntegerPolynomialInT:
    """prod_{j=2}^{m} (1 + (j-1) t^(d-1)) * [prod_{j=m+1}^{m+n} (1 + (j-1) t^(d-1))]^r"""
    g = params.gen_degree

    def factor(j):
        c = [0] * (g + 1)
        c[0] = 1
        c[g] = j - 1
        return IntegerPolynomialInT(c)

    base = IntegerPolynomialInT([1])
    for j in range(2, params.m + 1):
        base = base * factor(j)
    fibre = IntegerPolynomialInT([1])
    for j in range(params.m + 1, params.m + params.n + 1):
        fibre = fibre * factor(j)
    out = base
    for _ in range(params.r):
        out = out * fibre
    return out


def _block_words(layer: int, js: Sequence[int]):
    """Every admissible word of one block: a subset of ``js`` listed in
    increasing order, each chosen j carrying some first index i < j."""
    if not js:
        yield ()
        return
    j, rest = js[0], js[1:]
    for tail in _block_words(layer, rest):
        yield tail
        for i in range(1, j):
            yield (Generator(layer, i, j),) + tail


def basis_counts(params: Params, full: bool = False) -> IntegerPolynomialInT:
    """Per-degree basis sizes obtained by listing words, not by the product
    formula.

    With ``full=True`` every basis monomial of the whole algebra is listed.
    Otherwise each block is listed separately and the block length
    distributions are convolved, which stays cheap for large fibres.
    """
    g = params.gen_degree
    if full:
        counts: dict = {}
        for word in enumerate_basis(params):
            k = len(word) * g
            counts[k] = counts.get(k, 0) + 1
        top = max(counts)
        return IntegerPolynomialInT([counts.get(k, 0) for k in range(top + 1)])
    blocks = [(BASE, list(range(2, params.m + 1)))]
    blocks += [(l, list(range(params.m + 1, params.m + params.n + 1))) for l in range(1, params.r + 1)]
    dist = [1]
    for layer, js in blocks:
        lengths: dict = {}
        for word in _block_words(layer, js):
            lengths[len(word)] = lengths.get(len(word), 0) + 1
        step = [lengths.get(k, 0) for k in range(max(lengths) + 1)]
        new = [0] * (len(dist) + len(step) - 1)
        for a, x in enumerate(dist):
            for b, y in enumerate(step):
                new[a + b] += x * y
        dist = new
    coeffs = [0] * (g * (len(dist) - 1) + 1)
    for k, c in enumerate(dist):
        coeffs[k * g] = c
    return IntegerPolynomialInT(coeffs)


def top_degree(params: Params) -> int:
    return (params.r * params.n + params.m - 1) * params.gen_degree
