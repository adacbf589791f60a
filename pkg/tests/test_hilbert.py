"""Series, lengths, dimension, degree against a brute-force oracle.

The oracle enumerates standard monomials degree by degree: a monomial
survives in R/I iff no initial-ideal generator divides it.  Everything
the fast engine reports must agree with that count on small inputs.
"""

import itertools
import random

import pytest

from conftest import ideal, poly, ring
from multseq import (
    hilbert_series,
    krull_dimension,
    minimal_primes_monomial,
    quotient_degree,
    total_length,
)
from multseq.errors import PreconditionError
from multseq.hilbert import length_subquotient


def standard_count(r, gens, degree):
    """Number of degree-`degree` monomials outside the monomial ideal."""
    lead = [g.leading_monomial() for g in gens]
    count = 0
    for exps in itertools.product(range(degree + 1), repeat=r.arity):
        if sum(exps) != degree:
            continue
        if not any(all(a >= b for a, b in zip(exps, lt)) for lt in lead):
            count += 1
    return count


def random_monomial_ideal(r, rng, max_degree=4, max_gens=4):
    gens = []
    for _ in range(rng.randrange(1, max_gens + 1)):
        exps = tuple(rng.randrange(max_degree + 1) for _ in range(r.arity))
        if sum(exps) == 0:
            exps = (1,) + (0,) * (r.arity - 1)
        gens.append(r.monomial(exps))
    return ideal(r, *[str(g) for g in gens])


class TestSeries:
    def test_free_ring_expansion(self):
        r = ring("x", "y")
        series = hilbert_series(ideal(r))
        assert series.expansion(4) == [1, 2, 3, 4, 5]

    def test_principal_monomial(self):
        r = ring("x", "y")
        series = hilbert_series(ideal(r, "x^2"))
        # R/(x^2): two shifted copies of k[y]
        assert series.expansion(5) == [1, 2, 2, 2, 2, 2]

    def test_matches_brute_force_on_random_monomial_ideals(self):
        rng = random.Random(23)
        for arity in (1, 2, 3):
            r = ring(*("x", "y", "z")[:arity])
            for _ in range(15):
                a = random_monomial_ideal(r, rng)
                series = hilbert_series(a)
                got = series.expansion(6)
                want = [standard_count(r, a.gens, d) for d in range(7)]
                assert got == want, f"{a} -> {got} vs {want}"

    def test_general_ideal_uses_initial_ideal(self):
        r = ring("x", "y", "z")
        a = ideal(r, "x^2 - y*z", "x*y - z^2")
        series = hilbert_series(a)
        init = a.initial_ideal()
        want = [standard_count(r, init.gens, d) for d in range(7)]
        assert series.expansion(6) == want

    def test_rejects_inhomogeneous(self):
        r = ring("x", "y")
        with pytest.raises(Exception):
            hilbert_series(ideal(r, "x^2 - y"))


class TestLengthAndDimension:
    def test_total_length_box(self):
        r = ring("x", "y")
        assert total_length(ideal(r, "x^2", "y^3")) == 6
        assert total_length(ideal(r, "x", "y")) == 1

    def test_total_length_infinite_rejected(self):
        r = ring("x", "y")
        with pytest.raises(PreconditionError):
            total_length(ideal(r, "x"))

    def test_length_subquotient_nested(self):
        r = ring("x", "y")
        outer = ideal(r, "x", "y")
        inner = ideal(r, "x^2", "x*y", "y^2")
        # m/m^2 is the two-dimensional cotangent space
        assert length_subquotient(outer, inner) == 2

    def test_length_subquotient_of_infinite_pair(self):
        r = ring("x", "y")
        # (x)/(x^2, xy) has basis {x}: finite even though both quotients are not
        assert length_subquotient(ideal(r, "x"), ideal(r, "x^2", "x*y")) == 1

    def test_dimension_examples(self):
        r = ring("x", "y", "z")
        assert krull_dimension(ideal(r)) == 3
        assert krull_dimension(ideal(r, "x")) == 2
        assert krull_dimension(ideal(r, "x*y")) == 2
        assert krull_dimension(ideal(r, "x", "y", "z")) == 0
        assert krull_dimension(ideal(r, "x*y", "x*z")) == 2  # V(x) survives
        assert krull_dimension(ideal(r, "x*y", "y*z", "x*z")) == 1

    def test_dimension_of_general_ideal(self):
        r = ring("x", "y", "z")
        assert krull_dimension(ideal(r, "x^2 - y*z")) == 2
        assert krull_dimension(ideal(r, "x - y", "y - z")) == 1

    def test_degree_examples(self):
        r = ring("x", "y", "z")
        assert quotient_degree(ideal(r, "x^2 - y*z")) == 2
        assert quotient_degree(ideal(r, "x")) == 1
        assert quotient_degree(ideal(r, "x*y")) == 2

    def test_degree_zero_dimensional_is_length(self):
        r = ring("x", "y")
        a = ideal(r, "x^2", "y^2")
        assert quotient_degree(a) == total_length(a) == 4


class TestMinimalPrimes:
    def test_square_free_case(self):
        r = ring("x", "y", "z")
        primes = minimal_primes_monomial(ideal(r, "x*y", "x*z"))
        named = sorted(tuple(r.variables[i] for i in p) for p in primes)
        assert named == [("x",), ("y", "z")]

    def test_powers_are_flattened(self):
        r = ring("x", "y")
        primes = minimal_primes_monomial(ideal(r, "x^3*y^2"))
        named = sorted(tuple(r.variables[i] for i in p) for p in primes)
        assert named == [("x",), ("y",)]

    def test_irredundant(self):
        r = ring("x", "y", "z")
        primes = minimal_primes_monomial(ideal(r, "x*y", "y*z", "x*z"))
        named = {tuple(r.variables[i] for i in p) for p in primes}
        assert named == {("x", "y"), ("y", "z"), ("x", "z")}

    def test_cover_property_random(self):
        # every generator's support meets every minimal prime, and no
        # proper subset of a reported prime still covers
        rng = random.Random(31)
        r = ring("x", "y", "z")
        for _ in range(20):
            a = random_monomial_ideal(r, rng)
            supports = [
                {i for i, e in enumerate(g.leading_monomial()) if e}
                for g in a.gens
            ]
            for p in minimal_primes_monomial(a):
                chosen = set(p)
                assert all(s & chosen for s in supports)
                for drop in chosen:
                    smaller = chosen - {drop}
                    assert not all(s & smaller for s in supports)
