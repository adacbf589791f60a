"""Ideals of a polynomial ring.

Every operation routes through one of two interchangeable engines: a
combinatorial one on packed exponent vectors when every generator is a
single term, and the Gröbner engine otherwise.  Results agree; tests
pin the two routes against each other.  Ideals are immutable.
"""

from __future__ import annotations

import itertools

from . import monomials as mo
from .errors import NonHomogeneousInput
from .groebner import groebner_basis, normal_form
from .orders import MonomialOrder, elimination_order, grevlex
from .poly import Polynomial, PolyRing

_AUX = "t_aux_0"


class Ideal:
    __slots__ = ("ring", "gens", "_packed", "_homog")

    def __init__(self, ring: PolyRing, gens):
        self.ring = ring
        live = []
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError("ideal generators must be polynomials")
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g.is_zero():
                live.append(g)
        self.gens = tuple(live)
        self._packed = None
        self._homog = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_strings(cls, ring: PolyRing, texts) -> Ideal:
        return cls(ring, [ring.parse(t) for t in texts])

    @classmethod
    def from_packed(cls, ring: PolyRing, packed: tuple[int, ...]) -> Ideal:
        lay = mo.layout(ring.arity)
        gens = [ring.monomial(mo.unpack(lay, w)) for w in packed]
        ideal = cls(ring, gens)
        ideal._packed = tuple(packed)
        return ideal

    def key(self) -> tuple:
        return (self.ring.key, tuple(sorted(g.key() for g in self.gens)))

    def __repr__(self) -> str:
        inside = ", ".join(str(g) for g in self.gens) or "0"
        return f"<ideal ({inside})>"

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.gens

    def is_monomial(self) -> bool:
        return self.packed() is not None

    def packed(self) -> tuple[int, ...] | None:
        """Canonical packed minimal generators, when all gens are terms."""
        if self._packed is None:
            if all(g.is_term() for g in self.gens):
                lay = mo.layout(self.ring.arity)
                words = [mo.pack(lay, next(iter(g.terms))) for g in self.gens]
                self._packed = mo.minimalize(lay, words)
            else:
                self._packed = False
        return None if self._packed is False else self._packed

    def is_homogeneous(self) -> bool:
        if self._homog is None:
            self._homog = all(g.is_homogeneous() for g in self.gens)
        return self._homog

    def is_proper(self) -> bool:
        packed = self.packed()
        if packed is not None:
            return not mo.is_unit(packed)
        gb = self.groebner()
        return not any(g.is_constant() for g in gb)

    # -- membership and comparisons ---------------------------------------

    def groebner(self, order: MonomialOrder | None = None) -> tuple[Polynomial, ...]:
        return groebner_basis(self.ring, self.gens, order or self.ring.order)

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        order = order or self.ring.order
        return normal_form(f, self.groebner(order), order)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        packed = self.packed()
        if packed is not None and f.is_term():
            lay = mo.layout(self.ring.arity)
            return mo.member(lay, mo.pack(lay, next(iter(f.terms))), packed)
        return self.normal_form(f).is_zero()

    def subset_of(self, other: Ideal) -> bool:
        a, b = self.packed(), other.packed()
        if a is not None and b is not None:
            return mo.contains(mo.layout(self.ring.arity), b, a)
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: Ideal) -> bool:
        if self.ring != other.ring:
            return False
        a, b = self.packed(), other.packed()
        if a is not None and b is not None:
            return a == b
        ga = tuple(p.key() for p in self.groebner())
        gb = tuple(p.key() for p in other.groebner())
        return ga == gb

    # -- arithmetic -------------------------------------------------------

    def add(self, other: Ideal) -> Ideal:
        self._same_ring(other)
        a, b = self.packed(), other.packed()
        if a is not None and b is not None:
            lay = mo.layout(self.ring.arity)
            return Ideal.from_packed(self.ring, mo.add(lay, a, b))
        return Ideal(self.ring, self.gens + other.gens)

    def multiply(self, other: Ideal) -> Ideal:
        self._same_ring(other)
        a, b = self.packed(), other.packed()
        if a is not None and b is not None:
            lay = mo.layout(self.ring.arity)
            return Ideal.from_packed(self.ring, mo.multiply(lay, a, b))
        return Ideal(
            self.ring, [f * g for f in self.gens for g in other.gens]
        )

    def power(self, n: int) -> Ideal:
        if n < 0:
            raise ValueError("negative ideal power")
        if n == 0:
            return Ideal(self.ring, [self.ring.one()])
        packed = self.packed()
        if packed is not None:
            lay = mo.layout(self.ring.arity)
            return Ideal.from_packed(self.ring, mo.power(lay, packed, n))
        gens = [
            _product(combo)
            for combo in itertools.combinations_with_replacement(self.gens, n)
        ]
        return Ideal(self.ring, gens)

    def intersect(self, other: Ideal) -> Ideal:
        self._same_ring(other)
        a, b = self.packed(), other.packed()
        if a is not None and b is not None:
            lay = mo.layout(self.ring.arity)
            return Ideal.from_packed(self.ring, mo.intersect(lay, a, b))
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        return self._intersect_general(other)

    def _intersect_general(self, other: Ideal) -> Ideal:
        ring = self.ring
        ext = ring.extend_front((_AUX,), elimination_order(1))
        t = ext.variable(_AUX)
        one = ext.one()
        gens = [t * _lift(ext, f) for f in self.gens]
        gens += [(one - t) * _lift(ext, g) for g in other.gens]
        gb = groebner_basis(ext, gens, ext.order)
        found = []
        for g in gb:
            if all(e[0] == 0 for e in g.terms):
                found.append(_drop_first(ring, g))
        return Ideal(ring, found)

    def colon_poly(self, f: Polynomial) -> Ideal:
        """(self : f)."""
        if f.is_zero():
            raise ValueError("colon by zero")
        packed = self.packed()
        if packed is not None and f.is_term():
            lay = mo.layout(self.ring.arity)
            word = mo.pack(lay, next(iter(f.terms)))
            return Ideal.from_packed(self.ring, mo.colon_monomial(lay, packed, word))
        meet = self.intersect(Ideal(self.ring, [f]))
        return Ideal(self.ring, [_divide_exact(g, f) for g in meet.gens])

    def colon_ideal(self, other: Ideal) -> Ideal:
        if other.is_zero():
            raise ValueError("colon by the zero ideal")
        a, b = self.packed(), other.packed()
        if a is not None and b is not None:
            lay = mo.layout(self.ring.arity)
            return Ideal.from_packed(self.ring, mo.colon_ideal(lay, a, b))
        result: Ideal | None = None
        for g in other.gens:
            piece = self.colon_poly(g)
            result = piece if result is None else result.intersect(piece)
        return result

    def initial_ideal(self) -> Ideal:
        """Monomial ideal of grevlex leading terms (order fixed for
        dimension and series use, independent of the ring's own order)."""
        packed = self.packed()
        if packed is not None:
            return Ideal.from_packed(self.ring, packed)
        order = grevlex()
        gb = groebner_basis(self.ring, self.gens, order)
        lay = mo.layout(self.ring.arity)
        words = [mo.pack(lay, g.leading_monomial(order)) for g in gb if not g.is_zero()]
        return Ideal.from_packed(self.ring, mo.minimalize(lay, words))

    def _same_ring(self, other: Ideal) -> None:
        if self.ring != other.ring:
            raise ValueError("ideals from different rings")


def _product(polys) -> Polynomial:
    out = None
    for p in polys:
        out = p if out is None else out * p
    return out


def _lift(ext: PolyRing, f: Polynomial) -> Polynomial:
    return Polynomial(ext, {(0,) + e: c for e, c in f.terms.items()})


def _drop_first(ring: PolyRing, f: Polynomial) -> Polynomial:
    return Polynomial(ring, {e[1:]: c for e, c in f.terms.items()})


def _divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient g/f, failing loudly if the division is not exact."""
    ring = g.ring
    order = ring.order
    lt_f = f.leading_monomial(order)
    lc_f = f.leading_coefficient(order)
    p = ring.characteristic
    work = dict(g.terms)
    quotient: dict = {}
    from .poly import monomial_div, monomial_divides, monomial_mul

    while work:
        mu = None
        for exps in work:
            if mu is None or order.compare(exps, mu) > 0:
                mu = exps
        if not monomial_divides(lt_f, mu):
            raise ArithmeticError("division witness failed: quotient is not exact")
        shift = monomial_div(mu, lt_f)
        factor = work[mu] * ring.coeff_inv(lc_f)
        if p:
            factor %= p
        quotient[shift] = factor
        for e2, c2 in f.terms.items():
            key = monomial_mul(e2, shift)
            s = work.get(key, 0) - factor * c2
            if p:
                s %= p
            if s == 0:
                work.pop(key, None)
            else:
                work[key] = s
    return Polynomial(ring, quotient)


def require_homogeneous(ideal: Ideal, what: str) -> None:
    if not ideal.is_homogeneous():
        raise NonHomogeneousInput(f"{what} requires homogeneous generators")
