"""Buchberger's algorithm with the classical pair criteria.

Pairs are processed smallest-lcm first; the coprime criterion and the
chain criterion prune them.  Reduced bases are monic, mutually fully
reduced, and sorted, hence unique per (ideal, order): equality of
ideals can be tested by comparing them.  A process-wide cache keyed by
(ring, generators, order) backs all callers; population happens at
most once per key even under concurrent readers.
"""

from __future__ import annotations

import threading

from .errors import EngineLimit
from .orders import MonomialOrder
from .poly import (
    Polynomial,
    PolyRing,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

DEFAULT_BASIS_LIMIT = 4000


def normal_form(
    f: Polynomial, basis, order: MonomialOrder | None = None
) -> Polynomial:
    """Full remainder of f against a list of nonzero polynomials."""
    ring = f.ring
    order = order or ring.order
    pairs = []
    for g in basis:
        if not g.is_zero():
            pairs.append((g.leading_monomial(order), g.leading_coefficient(order), g))
    p = ring.characteristic
    work = dict(f.terms)
    remainder: dict = {}
    while work:
        mu = None
        for exps in work:
            if mu is None or order.compare(exps, mu) > 0:
                mu = exps
        c = work[mu]
        for lt, lc, g in pairs:
            if monomial_divides(lt, mu):
                shift = monomial_div(mu, lt)
                factor = c * ring.coeff_inv(lc)
                if p:
                    factor %= p
                for e2, c2 in g.terms.items():
                    key = monomial_mul(e2, shift)
                    s = work.get(key, 0) - factor * c2
                    if p:
                        s %= p
                    if s == 0:
                        work.pop(key, None)
                    else:
                        work[key] = s
                break
        else:
            remainder[mu] = c
            del work[mu]
    return Polynomial(ring, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ltf = f.leading_monomial(order)
    ltg = g.leading_monomial(order)
    common = monomial_lcm(ltf, ltg)
    a = f.mul_term(monomial_div(common, ltf), f.ring.coeff_inv(f.leading_coefficient(order)))
    b = g.mul_term(monomial_div(common, ltg), g.ring.coeff_inv(g.leading_coefficient(order)))
    return a - b


def buchberger(
    gens,
    order: MonomialOrder,
    limit: int = DEFAULT_BASIS_LIMIT,
) -> list[Polynomial]:
    basis: list[Polynomial] = []
    lts: list[tuple[int, ...]] = []
    single_term: list[bool] = []
    for f in gens:
        if f.is_zero():
            continue
        f = f.monic(order)
        basis.append(f)
        lts.append(f.leading_monomial(order))
        single_term.append(f.is_term())
    pending: set[tuple[int, int]] = set()
    for i in range(len(basis)):
        for j in range(i):
            # the s-polynomial of two monic terms is identically zero
            if not (single_term[i] and single_term[j]):
                pending.add((j, i))

    while pending:
        best = None
        best_lcm = None
        for pair in pending:
            lc = monomial_lcm(lts[pair[0]], lts[pair[1]])
            if best is None or _lcm_less(lc, best_lcm, order):
                best, best_lcm = pair, lc
        i, j = best
        pending.discard(best)

        if monomial_mul(lts[i], lts[j]) == best_lcm:
            continue  # coprime leads
        chained = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if monomial_divides(lts[k], best_lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    chained = True
                    break
        if chained:
            continue

        remainder = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if remainder.is_zero():
            continue
        remainder = remainder.monic(order)
        basis.append(remainder)
        lts.append(remainder.leading_monomial(order))
        single_term.append(remainder.is_term())
        if len(basis) > limit:
            raise EngineLimit(f"basis grew past {limit} elements")
        t = len(basis) - 1
        for k in range(t):
            if not (single_term[k] and single_term[t]):
                pending.add((k, t))
    return basis


def _lcm_less(a, b, order) -> bool:
    c = order.compare(a, b)
    if c != 0:
        return c < 0
    return False


def reduce_basis(basis, order: MonomialOrder) -> tuple[Polynomial, ...]:
    """Minimal, tail-reduced, monic, canonically sorted basis."""
    items = [(g.leading_monomial(order), g) for g in basis if not g.is_zero()]
    items.sort(key=lambda it: _OrderKey(order, it[0]))
    kept: list[tuple[tuple[int, ...], Polynomial]] = []
    for lt, g in items:
        if any(monomial_divides(lt2, lt) for lt2, _ in kept):
            continue
        kept.append((lt, g))
    reduced = []
    for idx, (lt, g) in enumerate(kept):
        others = [h for k, (_, h) in enumerate(kept) if k != idx]
        reduced.append(normal_form(g, others, order).monic(order))
    reduced.sort(key=lambda p: _OrderKey(order, p.leading_monomial(order)), reverse=True)
    return tuple(reduced)


class _OrderKey:
    __slots__ = ("order", "exps")

    def __init__(self, order, exps):
        self.order = order
        self.exps = exps

    def __lt__(self, other) -> bool:
        return self.order.compare(self.exps, other.exps) < 0


_CACHE: dict[tuple, tuple[Polynomial, ...]] = {}
_PENDING: dict[tuple, threading.Event] = {}
_LOCK = threading.Lock()


def groebner_basis(
    ring: PolyRing,
    gens,
    order: MonomialOrder | None = None,
    limit: int = DEFAULT_BASIS_LIMIT,
) -> tuple[Polynomial, ...]:
    """Reduced basis of the ideal; cached, populated at most once per key."""
    order = order or ring.order
    live = [g for g in gens if not g.is_zero()]
    key = (ring.key, tuple(sorted(g.key() for g in live)), order.key)
    while True:
        got = _CACHE.get(key)
        if got is not None:
            return got
        with _LOCK:
            got = _CACHE.get(key)
            if got is not None:
                return got
            event = _PENDING.get(key)
            if event is None:
                event = _PENDING[key] = threading.Event()
                owner = True
            else:
                owner = False
        if not owner:
            event.wait()
            continue
        try:
            value = reduce_basis(buchberger(live, order, limit), order)
        except BaseException:
            with _LOCK:
                _PENDING.pop(key, None)
            event.set()
            raise
        with _LOCK:
            _CACHE[key] = value
            _PENDING.pop(key, None)
        event.set()
        return value


def clear_cache() -> None:
    with _LOCK:
        _CACHE.clear()
        _PENDING.clear()
