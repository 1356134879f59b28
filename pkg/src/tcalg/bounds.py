"""Upper and lower bounds for the sequential parametrized topological
complexity TC_r of the Fadell-Neuwirth bundle.

Lower bounds come from nonzero cup products of classes in the kernel of the
diagonal restriction; every such bound is returned as a ``Certificate`` that
can be re-checked from scratch.  Upper bounds come from the dimension /
connectivity estimate TC_r < (hdim + 1) / (k + 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import (
    BASE,
    DEFAULT_MAX_WORD_LEN,
    Generator,
    Params,
    Polynomial,
    diagonal_restriction,
    multiply,
)
from .errors import CertificateError, ParamsError


class Regime(enum.Enum):
    ODD_D = "odd-d"
    D2 = "d2"
    EVEN_D_GE4 = "even-d-ge4"

    @classmethod
    def of(cls, d: int) -> "Regime":
        if d % 2:
            return cls.ODD_D
        return cls.D2 if d == 2 else cls.EVEN_D_GE4


@dataclass(frozen=True)
class Certificate:
    params: Params
    factors: tuple
    product: Polynomial
    witness: tuple
    coefficient: int

    @property
    def k(self) -> int:
        return len(self.factors)

    def verify(self) -> bool:
        """Re-derive everything from the factor list."""
        for f in self.factors:
            if f.params != self.params or diagonal_restriction(f):
                return False
        prod = Polynomial.one(self.params)
        for f in self.factors:
            prod = multiply(prod, f)
        if prod != self.product or self.coefficient == 0:
            return False
        return prod.coefficient(self.witness) == self.coefficient

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "factors": [str(f) for f in self.factors],
            "witness": "*".join(str(g) for g in self.witness) or "1",
            "coefficient": self.coefficient,
            "product_terms": len(self.product),
        }


@dataclass(frozen=True)
class BoundsReport:
    params: Params
    lower: int
    upper: int
    certificate: Certificate = field(repr=False)
    regime: Regime

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "regime": self.regime.value,
            "certificate": self.certificate.to_dict(),
        }


def _check_fn_params(params: Params):
    if params.m < 2:
        raise ParamsError(f"the Fadell-Neuwirth bounds need m >= 2, got m={params.m}")
    if params.r < 2:
        raise ParamsError(f"TC_r bounds need r >= 2, got r={params.r}")


def upper_bound_schwarz(hdim_total: int, k_conn: int) -> int:
    """Largest integer strictly below (hdim_total + 1) / (k_conn + 1)."""
    if hdim_total < 0 or k_conn < 0:
        raise ValueError(f"need hdim_total, k_conn >= 0, got {hdim_total}, {k_conn}")
    # q < (h+1)/(k+1)  <=>  q(k+1) <= h
    return hdim_total // (k_conn + 1)


def fn_upper_bound(params: Params) -> int:
    _check_fn_params(params)
    d, m, n, r = params.d, params.m, params.n, params.r
    if d >= 3:
        # top cohomology sits in degree (rn+m-1)(d-1); the fibre is (d-2)-connected
        return upper_bound_schwarz((r * n + m - 1) * (d - 1), d - 2)
    # planar case: split off F(C, 2); the reduced bundle has fibre of
    # homotopical dimension n over a base of dimension m-2, fibre connected
    return upper_bound_schwarz(r * n + (m - 2), 0)


def _diff(params, l1, l2, i, j) -> Polynomial:
    return Polynomial.generator(params, l1, i, j) - Polynomial.generator(params, l2, i, j)


def odd_recipe_factors(params: Params) -> list:
    """Factors of x1 * x2 * x3 for odd d: rn + m - 1 kernel classes.

    x1 = prod_{i=2}^{m} (w^1_{i,m+1} - w^2_{i,m+1})
    x2 = prod_{j>m} (w^2_{1j} - w^1_{1j})^2
    x3 = prod_{l=3}^{r} prod_{j>m} (w^l_{1j} - w^1_{1j})
    """
    _check_fn_params(params)
    m, n, r = params.m, params.n, params.r
    robots = range(m + 1, m + n + 1)
    out = [_diff(params, 1, 2, i, m + 1) for i in range(2, m + 1)]
    for j in robots:
        out += [_diff(params, 2, 1, 1, j)] * 2
    for l in range(3, r + 1):
        out += [_diff(params, l, 1, 1, j) for j in robots]
    return out


def even_recipe_factors(params: Params) -> list:
    """Factors of x1 * x2 * x3 valid for every d: rn + m - 2 kernel classes.

    x1 = prod_{i=2}^{m} (w^1_{i,m+1} - w^2_{i,m+1})
    x2 = prod_{j=m+2}^{m+n} (w^1_{j-1,j} - w^2_{j-1,j})     (empty when n = 1)
    x3 = prod_{l=2}^{r} prod_{j>m} (w^l_{1j} - w^1_{1j})
    """
    _check_fn_params(params)
    m, n, r = params.m, params.n, params.r
    out = [_diff(params, 1, 2, i, m + 1) for i in range(2, m + 1)]
    out += [_diff(params, 1, 2, j - 1, j) for j in range(m + 2, m + n + 1)]
    for l in range(2, r + 1):
        out += [_diff(params, l, 1, 1, j) for j in range(m + 1, m + n + 1)]
    return out


def kernel_certificate_factors(params: Params) -> list:
    if params.d % 2:
        return odd_recipe_factors(params)
    return even_recipe_factors(params)


def named_witness(params: Params) -> tuple:
    """The basis monomial singled out by the hand proof of the lower bound."""
    m, n, r = params.m, params.n, params.r
    robots = range(m + 1, m + n + 1)
    word = []
    if params.d % 2:
        word += [Generator(BASE, 1, 2)] + [Generator(BASE, 2, j) for j in range(3, m + 1)]
        word += [Generator(1, 1, j) for j in robots]
        word += [Generator(2, 2 if j == m + 1 else 1, j) for j in robots]
        start = 3
    else:
        word += [Generator(BASE, 2, j) for j in range(3, m + 1)]
        word += [Generator(1, 2 if j == m + 1 else j - 1, j) for j in robots]
        start = 2
    for l in range(start, r + 1):
        word += [Generator(l, 1, j) for j in robots]
    return tuple(word)


def certify_lower_bound(params: Params, max_word_len: int = DEFAULT_MAX_WORD_LEN) -> Certificate:
    """Multiply the kernel classes for ``params`` and extract a nonzero witness.

    Raises ``CertificateError`` if the product vanishes.
    """
    factors = kernel_certificate_factors(params)
    prod = Polynomial.one(params)
    for f in factors:
        prod = multiply(prod, f, max_word_len)
        if not prod:
            raise CertificateError(f"kernel product vanished for {params}", factors)
    witness = named_witness(params)
    coeff = prod.coefficient(witness)
    if coeff == 0:
        witness = min(prod.terms, key=lambda w: [g.sort_key() for g in w])
        coeff = prod.coefficient(witness)
    return Certificate(params, tuple(factors), prod, witness, coeff)


def fn_tc_bounds(params: Params) -> BoundsReport:
    _check_fn_params(params)
    cert = certify_lower_bound(params)
    return BoundsReport(params, cert.k, fn_upper_bound(params), cert, Regime.of(params.d))


# -- brute-force oracle ------------------------------------------------------


def difference_pool(params: Params, include_base: bool = False) -> list:
    """The classes w^l_ij - w^l'_ij (l < l', j > m) that the diagonal kills.

    With ``include_base`` the pool also receives the classes w_ij * (w^l_ij'
    - w^l'_ij') for base w_ij, which stay in the kernel because it is an ideal.
    """
    m, n, r = params.m, params.n, params.r
    pool = []
    for l1 in range(1, r + 1):
        for l2 in range(l1 + 1, r + 1):
            for j in range(m + 1, m + n + 1):
                for i in range(1, j):
                    pool.append(_diff(params, l1, l2, i, j))
    if include_base:
        extra = []
        for j in range(2, m + 1):
            for i in range(1, j):
                w = Polynomial.generator(params, BASE, i, j)
                extra += [w * p for p in pool]
        pool += [p for p in extra if p]
    return pool


@dataclass(frozen=True)
class OracleResult:
    k: int
    truncated: bool
    factors: tuple = ()


def cup_length_search(params: Params, pool=None, budget: int = 12) -> OracleResult:
    """Exhaustive search for the longest nonzero product from ``pool``.

    Factors are drawn with repetition as nondecreasing index sequences, in
    lexicographic order; a vanishing prefix prunes every extension.
    ``truncated`` is set when a nonzero product of exactly ``budget``
    factors was found, so longer ones were never examined.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if pool is None:
        pool = difference_pool(params)
    pool = list(pool)
    best: list = [0, ()]
    truncated = False

    def walk(start, prod, chosen):
        nonlocal truncated
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), tuple(chosen)
        if len(chosen) == budget:
            truncated = True
            return
        for idx in range(start, len(pool)):
            nxt = multiply(prod, pool[idx])
            if nxt:
                chosen.append(idx)
                walk(idx, nxt, chosen)
                chosen.pop()

    walk(0, Polynomial.one(params), [])
    return OracleResult(best[0], truncated, best[1])


def oracle_cup_length(params: Params, pool=None, budget: int = 12) -> int:
    return cup_length_search(params, pool, budget).k
