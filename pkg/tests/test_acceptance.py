"""Exit criteria.  Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per label."""

import io
import itertools
import json
import random
import time

import pytest

from oracles import all_generators, naive_normal_form, random_polynomial, random_word
from tcalg.algebra import (
    Generator,
    Params,
    Polynomial,
    diagonal_restriction,
    expand_modifications,
    make_generator,
    normal_form,
)
from tcalg.bounds import certify_lower_bound, fn_tc_bounds
from tcalg.cli import main
from tcalg.expr import evaluate
from tcalg.genfun import TCSequence, expand_series, genfun_of, principal_residues, recurrence_check
from tcalg.spaces import basis_counts, enumerate_basis, poincare_polynomial, top_degree

GRID = list(itertools.product((2, 3, 4), (1, 2, 3), (2, 3, 4)))  # m, n, r
SEED = 20240501


def bounds_json(d, m, n, r):
    out, err = io.StringIO(), io.StringIO()
    code = main(["bounds", "--d", str(d), "--m", str(m), "--n", str(n), "--r", str(r),
                 "--emit", "json"], out=out, err=err)
    assert code == 0, err.getvalue()
    return json.loads(out.getvalue())["result"]


def check_certificate(params, res):
    cert = certify_lower_bound(params)
    assert cert.verify()
    assert all(diagonal_restriction(f).is_zero() for f in cert.factors)
    assert cert.coefficient != 0
    assert cert.product.coefficient(cert.witness) == cert.coefficient
    assert res["certificate"]["coefficient"] == cert.coefficient
    assert res["certificate"]["k"] == cert.k == res["lower"]


@pytest.mark.criterion("AC1 odd-d exactness: lower = upper = rn+m-1")
def test_ac1_odd_d_exact():
    start = time.perf_counter()
    for d in (3, 5):
        for m, n, r in GRID:
            res = bounds_json(d, m, n, r)
            want = r * n + m - 1
            assert (res["lower"], res["upper"], res["exact"]) == (want, want, True), (d, m, n, r)
            assert res["regime"] == "odd-d"
            check_certificate(Params(d, m, n, r), res)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion("AC2 planar exactness: lower = upper = rn+m-2")
def test_ac2_planar_exact():
    start = time.perf_counter()
    for m, n, r in GRID:
        res = bounds_json(2, m, n, r)
        want = r * n + m - 2
        assert (res["lower"], res["upper"], res["exact"]) == (want, want, True), (m, n, r)
        assert res["regime"] == "d2"
        check_certificate(Params(2, m, n, r), res)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion("AC3 even-d bracket: [rn+m-2, rn+m-1], never exact")
def test_ac3_even_d_bracket():
    for d in (4, 6):
        for m, n, r in GRID:
            res = bounds_json(d, m, n, r)
            assert res["lower"] == r * n + m - 2
            assert res["upper"] == r * n + m - 1
            assert res["exact"] is False
            assert res["regime"] == "even-d-ge4"
            check_certificate(Params(d, m, n, r), res)


def _modification_shape(word, m):
    """(layer, J, j) if ``word`` is w^l_{j1 j} ... w^l_{jp j} with j1 < ... < jp, p >= 2."""
    if len(word) < 2:
        return None
    j = word[0].j
    layer = word[0].layer
    if any(g.j != j or g.layer != layer for g in word):
        return None
    J = tuple(g.i for g in word)
    if any(a >= b for a, b in zip(J, J[1:])):
        return None
    return (1 if j <= m else layer), J, j


@pytest.mark.criterion("AC4 algebra oracle equivalence (exhaustive, words of length <= 4)")
def test_ac4_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(SEED)
    shaped = 0
    for d in (3, 2):
        P = Params(d, 3, 2, 2)
        gens = all_generators(P)
        assert len(gens) == 17
        for length in range(5):
            for word in itertools.product(gens, repeat=length):
                engine = normal_form(word, 1, P)
                assert engine.terms == naive_normal_form(word, 1, d, P.m, rng), word
                shape = _modification_shape(word, P.m)
                if shape is not None:
                    shaped += 1
                    assert expand_modifications(*shape, P) == engine, word
        for p in range(3, P.points + 1):
            for i, j in itertools.combinations(range(1, p), 2):
                for l in range(1, P.r + 1):
                    gi, gj, gij = (make_generator(l, a, b, P) for a, b in ((i, p), (j, p), (i, j)))
                    lhs = normal_form([gi, gj], 1, P)
                    rhs = normal_form([gij, gj], 1, P) - normal_form([gij, gi], 1, P)
                    assert lhs == rhs, (d, i, j, p, l)
    assert shaped > 0
    assert time.perf_counter() - start < 60


@pytest.mark.criterion("AC5 basis enumeration matches Poincare polynomial")
def test_ac5_basis_poincare():
    start = time.perf_counter()
    cases = 0
    for d in (2, 3):
        for r in (1, 2, 3):
            for m in range(1, 6):
                for n in range(1, 7 - m):
                    P = Params(d, m, n, r)
                    poly = poincare_polynomial(P)
                    if poly(1) <= 20000:
                        for k in range(poly.degree + 2):
                            assert len(enumerate_basis(P, k)) == poly[k], (P, k)
                    assert basis_counts(P) == poly, P
                    assert poly.degree == top_degree(P) == (r * n + m - 1) * (d - 1)
                    cases += 1
    assert cases == 2 * 3 * 15
    assert time.perf_counter() - start < 30


@pytest.mark.criterion("AC6 parity identities for (w^2_1j - w^1_1j)^2")
def test_ac6_parity():
    for m, n, r in [(2, 1, 2), (3, 2, 2), (2, 3, 3)]:
        for j in range(m + 1, m + n + 1):
            text = f"(w[2](1,{j})-w[1](1,{j}))^2"
            for d in (3, 5, 7):
                P = Params(d, m, n, r)
                want = -2 * Polynomial.generator(P, 1, 1, j) * Polynomial.generator(P, 2, 1, j)
                assert evaluate(text, P) == want
                assert len(want) == 1
            for d in (2, 4, 6):
                assert evaluate(text, Params(d, m, n, r)).is_zero()


@pytest.mark.criterion("AC7 generating functions, residues, series vs bounds, recurrence")
def test_ac7_genfun():
    start = time.perf_counter()
    for m in range(2, 6):
        for n in range(1, 6):
            assert principal_residues(genfun_of(TCSequence.fn_odd(m, n))) == (n, m - 1)
            assert principal_residues(genfun_of(TCSequence.fn_planar(m, n))) == (n, m - 2)
            assert principal_residues(genfun_of(TCSequence.fn_fiber(n))) == (n, 0)
            assert recurrence_check(TCSequence.fn_odd(m, n), 10) == n
            assert recurrence_check(TCSequence.fn_planar(m, n), 10) == n
    hopf = genfun_of(TCSequence.hopf())
    assert str(hopf) == "t/(1-t)^2"
    assert principal_residues(hopf) == (1, -1)
    assert recurrence_check(TCSequence.hopf(), 10) == 1
    for m in (2, 3):
        for n in (1, 2):
            for d, seq in ((3, TCSequence.fn_odd(m, n)), (5, TCSequence.fn_odd(m, n)),
                           (2, TCSequence.fn_planar(m, n))):
                series = expand_series(genfun_of(seq), 9)
                emitted = []
                for r in range(1, 9):
                    rep = fn_tc_bounds(Params(d, m, n, r + 1))
                    assert rep.exact
                    emitted.append(rep.lower)
                assert series == [0] + emitted, (d, m, n)
                assert recurrence_check(emitted, 8) == n
    assert time.perf_counter() - start < 5


# -- AC8: randomized property suites ----------------------------------------

SMALL = [Params(d, m, n, r) for d in (2, 3) for m, n, r in [(1, 2, 1), (2, 1, 2), (2, 2, 2), (3, 1, 3), (2, 2, 3)]]
CASES = 1000


def _random_basis_pair(rng, P):
    """Two basis monomials with disjoint second indices in every block."""
    lay = P._layout
    a, b = [], []
    for layer, j in lay.slot_info:
        owner = rng.randrange(3)
        if owner < 2:
            (a if owner == 0 else b).append(Generator(layer, rng.randint(1, j - 1), j))
    return tuple(a), tuple(b)


@pytest.mark.criterion("AC8 property suites (>= 1000 seeded cases each)")
def test_ac8_idempotence():
    rng = random.Random(SEED)
    for _ in range(CASES):
        P = rng.choice(SMALL)
        p = random_polynomial(rng, P, max_terms=4, max_len=5)
        assert Polynomial(P, p.terms) == p
        for w, c in p.terms.items():
            assert normal_form(w, c, P).terms == {w: c}


@pytest.mark.criterion("AC8 property suites (>= 1000 seeded cases each)")
def test_ac8_associativity():
    rng = random.Random(SEED + 1)
    for _ in range(CASES):
        P = rng.choice(SMALL)
        gens = all_generators(P)
        a, b, c = (random_polynomial(rng, P, max_terms=3, max_len=3) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        w = random_word(rng, gens, 6)
        left = Polynomial.one(P)
        for g in w:
            left = left * Polynomial(P, {(g,): 1})
        right = Polynomial.one(P)
        for g in reversed(w):
            right = Polynomial(P, {(g,): 1}) * right
        assert left == right == normal_form(w, 1, P)


@pytest.mark.criterion("AC8 property suites (>= 1000 seeded cases each)")
def test_ac8_diagonal_homomorphism():
    rng = random.Random(SEED + 2)
    multi = [P for P in SMALL if P.r >= 2]
    for _ in range(CASES):
        P = rng.choice(multi)
        a = random_polynomial(rng, P, max_terms=3, max_len=3)
        b = random_polynomial(rng, P, max_terms=3, max_len=3)
        assert diagonal_restriction(a * b) == diagonal_restriction(a) * diagonal_restriction(b)


@pytest.mark.criterion("AC8 property suites (>= 1000 seeded cases each)")
def test_ac8_disjoint_products_unimodular():
    rng = random.Random(SEED + 3)
    for _ in range(CASES):
        P = rng.choice(SMALL)
        a, b = _random_basis_pair(rng, P)
        prod = Polynomial(P, {a: 1}) * Polynomial(P, {b: 1})
        assert len(prod) == 1
        (word, coeff), = prod.terms.items()
        assert coeff in (1, -1)
        assert sorted(word, key=Generator.sort_key) == sorted(a + b, key=Generator.sort_key)


@pytest.mark.criterion("AC8 property suites (>= 1000 seeded cases each)")
def test_ac8_modification_factor_property():
    rng = random.Random(SEED + 4)
    pool = [Params(d, m, n, r) for d in (2, 3) for m, n, r in [(1, 5, 1), (2, 4, 2), (3, 3, 2), (5, 1, 1)]]
    for _ in range(CASES):
        P = rng.choice(pool)
        j = rng.randint(3, P.points)
        p = rng.randint(2, j - 1)
        J = sorted(rng.sample(range(1, j), p))
        layer = rng.randint(1, P.r)
        factors = [make_generator(layer, js, j, P) for js in J]
        result = normal_form(factors, 1, P)
        assert result
        first = factors[0]
        holders = []
        for word in result.terms:
            assert any(g in factors for g in word)
            if first in word:
                holders.append(word)
        expected = [make_generator(layer, J[0], js, P) for js in J[1:]] + [first]
        assert holders == [tuple(sorted(expected, key=Generator.sort_key))]
