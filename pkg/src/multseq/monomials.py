"""Combinatorics of monomial ideals on packed exponent vectors.

A monomial is packed into one int: 16-bit lanes, one per variable,
plus a top lane holding the total degree.  Divisibility is then a
single subtraction against a guard mask, and multiplying by a variable
is one addition.  All functions below take and return packed ints;
ideals are canonical sorted tuples of packed minimal generators.
Exponents must stay below 2^15 so lane borrows are detectable.
"""

from __future__ import annotations

import itertools

LANE_BITS = 16
LANE_MASK = (1 << LANE_BITS) - 1
_GUARD_BIT = 1 << (LANE_BITS - 1)
MAX_EXPONENT = _GUARD_BIT - 1


class Layout:
    """Packing geometry for a fixed number of variables."""

    __slots__ = ("arity", "deg_shift", "guard", "var_steps", "var_shifts")

    def __init__(self, arity: int):
        self.arity = arity
        self.deg_shift = LANE_BITS * arity
        guard = 0
        for lane in range(arity + 1):
            guard |= _GUARD_BIT << (LANE_BITS * lane)
        self.guard = guard
        self.var_shifts = tuple(LANE_BITS * v for v in range(arity))
        self.var_steps = tuple(
            (1 << s) + (1 << self.deg_shift) for s in self.var_shifts
        )


_LAYOUTS: dict[int, Layout] = {}


def layout(arity: int) -> Layout:
    lay = _LAYOUTS.get(arity)
    if lay is None:
        lay = _LAYOUTS[arity] = Layout(arity)
    return lay


def pack(lay: Layout, exponents: tuple[int, ...]) -> int:
    if len(exponents) != lay.arity:
        raise ValueError("arity mismatch")
    word = 0
    total = 0
    for e, shift in zip(exponents, lay.var_shifts):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of packable range")
        word |= e << shift
        total += e
    if total > MAX_EXPONENT:
        raise ValueError("total degree out of packable range")
    return word | (total << lay.deg_shift)


def unpack(lay: Layout, word: int) -> tuple[int, ...]:
    return tuple((word >> s) & LANE_MASK for s in lay.var_shifts)


def degree(lay: Layout, word: int) -> int:
    return word >> lay.deg_shift


def divides(guard: int, a: int, b: int) -> bool:
    """a | b as monomials."""
    return not (b - a) & guard


def minimalize(lay: Layout, words) -> tuple[int, ...]:
    """Minimal generating set, canonically sorted.

    Ascending packed order is ascending degree order, so any divisor of
    a candidate was already kept when the candidate is examined.
    """
    guard = lay.guard
    out: list[int] = []
    for w in sorted(set(words)):
        redundant = False
        for g in out:
            if g > w:
                break
            if not (w - g) & guard:
                redundant = True
                break
        if not redundant:
            out.append(w)
    return tuple(out)


def member(lay: Layout, word: int, gens: tuple[int, ...]) -> bool:
    guard = lay.guard
    for g in gens:
        if g > word:
            return False
        if not (word - g) & guard:
            return True
    return False


def contains(lay: Layout, big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    """Every generator of `small` lies in the ideal `big`."""
    return all(member(lay, w, big) for w in small)


def add(lay: Layout, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return minimalize(lay, a + b)


def multiply(lay: Layout, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    return minimalize(lay, (x + y for x in a for y in b))


_POWER_CACHE: dict[tuple, tuple[int, ...]] = {}


def power(lay: Layout, gens: tuple[int, ...], n: int) -> tuple[int, ...]:
    if n == 0:
        return (0,)  # unit ideal
    if n == 1:
        return gens
    key = (lay.arity, gens, n)
    got = _POWER_CACHE.get(key)
    if got is None:
        got = multiply(lay, power(lay, gens, n - 1), gens)
        _POWER_CACHE[key] = got
    return got


def lcm(lay: Layout, a: int, b: int) -> int:
    ea, eb = unpack(lay, a), unpack(lay, b)
    return pack(lay, tuple(max(x, y) for x, y in zip(ea, eb)))


def intersect(lay: Layout, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    return minimalize(lay, (lcm(lay, x, y) for x in a for y in b))


def colon_monomial(lay: Layout, gens: tuple[int, ...], word: int) -> tuple[int, ...]:
    """(gens) : word."""
    if not gens:
        return ()
    e = unpack(lay, word)
    quotients = []
    for g in gens:
        eg = unpack(lay, g)
        quotients.append(pack(lay, tuple(max(x - y, 0) for x, y in zip(eg, e))))
    return minimalize(lay, quotients)


def colon_ideal(lay: Layout, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a) : (b), intersecting over the generators of b."""
    if not b:
        raise ValueError("colon by the zero ideal")
    result: tuple[int, ...] | None = None
    for w in b:
        piece = colon_monomial(lay, a, w)
        result = piece if result is None else intersect(lay, result, piece)
    return result


def saturate_by_ideal(lay: Layout, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a) : (b)^infinity."""
    current = a
    while True:
        nxt = colon_ideal(lay, current, b)
        if nxt == current:
            return current
        current = nxt


def radical(lay: Layout, gens: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for g in gens:
        e = unpack(lay, g)
        out.append(pack(lay, tuple(1 if x else 0 for x in e)))
    return minimalize(lay, out)


def is_unit(gens: tuple[int, ...]) -> bool:
    return bool(gens) and gens[0] == 0


_MAX_POWER_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def irrelevant_power(lay: Layout, i: int) -> tuple[int, ...]:
    """Generators of the i-th power of the ideal of all variables."""
    key = (lay.arity, i)
    got = _MAX_POWER_CACHE.get(key)
    if got is None:
        words = []
        for combo in itertools.combinations_with_replacement(range(lay.arity), i):
            exps = [0] * lay.arity
            for v in combo:
                exps[v] += 1
            words.append(pack(lay, tuple(exps)))
        got = _MAX_POWER_CACHE[key] = tuple(sorted(words))
    return got


def supports(lay: Layout, gens: tuple[int, ...]) -> list[frozenset[int]]:
    out = []
    for g in gens:
        e = unpack(lay, g)
        out.append(frozenset(v for v, x in enumerate(e) if x))
    return out


def dimension(lay: Layout, gens: tuple[int, ...]) -> int:
    """Krull dimension of the quotient by a monomial ideal.

    Largest variable subset S such that no generator has support inside
    S; the quotient of a unit ideal has no dimension and raises.
    """
    if is_unit(gens):
        raise ValueError("unit ideal has empty quotient")
    supp = supports(lay, gens)
    n = lay.arity
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if all(not sp <= s for sp in supp):
                return size
    raise AssertionError("unreachable: empty subset is always independent")


def minimal_primes(lay: Layout, gens: tuple[int, ...]) -> list[frozenset[int]]:
    """Minimal primes of a monomial ideal, as variable-index sets."""
    if is_unit(gens):
        raise ValueError("unit ideal has no primes")
    supp = supports(lay, gens)
    if not supp:
        return [frozenset()]
    n = lay.arity
    covers = []
    for size in range(0, n + 1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if any(c <= s for c in covers):
                continue
            if all(sp & s for sp in supp):
                covers.append(s)
    return sorted(covers, key=lambda s: (len(s), sorted(s)))


def restrict(
    lay: Layout, gens: tuple[int, ...], keep: tuple[int, ...]
) -> tuple[int, ...]:
    """Image of a monomial ideal when variables outside `keep` become units.

    Result is packed in the layout of len(keep) variables; a generator
    supported entirely outside `keep` restricts to 1 (unit ideal).
    """
    sub = layout(len(keep))
    words = []
    for g in gens:
        e = unpack(lay, g)
        words.append(pack(sub, tuple(e[v] for v in keep)))
    return minimalize(sub, words)


# -- Hilbert numerators ---------------------------------------------------


_NUMERATOR_CACHE: dict[tuple, tuple[int, ...]] = {}


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _poly_shift_mul(a: list[int], shift: int) -> list[int]:
    return [0] * shift + list(a)


def _poly_mul_one_minus_t(a: list[int], d: int) -> list[int]:
    # multiply by (1 - t^d)
    out = list(a) + [0] * d
    for i, c in enumerate(a):
        out[i + d] -= c
    return out


def hilbert_numerator(lay: Layout, gens: tuple[int, ...]) -> tuple[int, ...]:
    """Numerator N(t) with series of the quotient = N(t) / (1-t)^arity.

    Pivot recursion: N(I) = N(I + (p)) + t^deg(p) * N(I : p) for any
    monomial pivot p, with the pure-power product as base case.
    """
    gens = minimalize(lay, gens)
    return _numerator(lay, gens)


def _numerator(lay: Layout, gens: tuple[int, ...]) -> tuple[int, ...]:
    if not gens:
        return (1,)
    if gens[0] == 0:
        return (0,)
    key = (lay.arity, gens)
    got = _NUMERATOR_CACHE.get(key)
    if got is not None:
        return got

    exps = [unpack(lay, g) for g in gens]
    per_var = [0] * lay.arity
    for e in exps:
        for v, x in enumerate(e):
            if x:
                per_var[v] += 1
    pivot_var = max(range(lay.arity), key=lambda v: per_var[v])

    if per_var[pivot_var] <= 1:
        # pairwise disjoint supports: a regular sequence of monomials
        out = [1]
        for g in gens:
            out = _poly_mul_one_minus_t(out, degree(lay, g))
        result = tuple(out)
        _NUMERATOR_CACHE[key] = result
        return result

    positives = sorted(e[pivot_var] for e in exps if e[pivot_var])
    pivot_exp = positives[len(positives) // 2]
    # a pure pivot-variable power of exponent <= pivot_exp would make the
    # plus branch a no-op; in a minimal set it is the unique such power
    # and every other generator in the variable sits strictly below it
    for g, e in zip(gens, exps):
        if e[pivot_var] and e[pivot_var] == degree(lay, g) and e[pivot_var] <= pivot_exp:
            pivot_exp = e[pivot_var] - 1
            break
    assert pivot_exp >= 1
    pivot = pack_single(lay, pivot_var, pivot_exp)

    plus = minimalize(lay, gens + (pivot,))
    shift = unpack(lay, pivot)
    quotients = []
    for e in exps:
        quotients.append(
            pack(lay, tuple(max(x - s, 0) for x, s in zip(e, shift)))
        )
    colon = minimalize(lay, quotients)

    result_list = _poly_add(
        list(_numerator(lay, plus)),
        _poly_shift_mul(_numerator(lay, colon), pivot_exp),
    )
    while result_list and result_list[-1] == 0:
        result_list.pop()
    result = tuple(result_list) if result_list else (0,)
    _NUMERATOR_CACHE[key] = result
    return result


def pack_single(lay: Layout, var: int, exp: int) -> int:
    exps = [0] * lay.arity
    exps[var] = exp
    return pack(lay, tuple(exps))


def numerator_difference_length(
    lay: Layout, inner: tuple[int, ...], outer: tuple[int, ...]
) -> int:
    """Length of (outer)/(inner) for nested monomial ideals, via series.

    inner must contain... the *smaller* ideal; outer the larger one:
    length of outer/inner = sum over degrees of the Hilbert-function gap
    between the two quotients, finite iff the gap series is a polynomial.
    """
    n_outer = hilbert_numerator(lay, outer)
    n_inner = hilbert_numerator(lay, inner)
    diff = _poly_add(list(n_inner), [-c for c in n_outer])
    return polynomial_value_after_division(diff, lay.arity)


def polynomial_value_after_division(coeffs: list[int], times: int) -> int:
    """Divide by (1-t) `times` times exactly, then evaluate at t=1.

    Raises ValueError if any division leaves a remainder (the quotient
    module has infinite length).
    """
    current = list(coeffs)
    for _ in range(times):
        # divide by (1 - t): running prefix sums, remainder = total sum
        total = 0
        out = []
        for c in current:
            total += c
            out.append(total)
        if total != 0:
            raise ValueError("series difference is not a polynomial (infinite length)")
        if out:
            out.pop()  # top slot only carried the (zero) remainder
        current = out
    return sum(current)


def quotient_total_length(lay: Layout, gens: tuple[int, ...]) -> int:
    """Length of the full quotient by an m-primary monomial ideal."""
    numer = hilbert_numerator(lay, gens)
    return polynomial_value_after_division(list(numer), lay.arity)


def quotient_degree_and_dimension(lay: Layout, gens: tuple[int, ...]) -> tuple[int, int]:
    """(multiplicity, dimension) of the quotient by a monomial ideal.

    The Hilbert series numerator is reduced against powers of (1-t);
    the leftover value at 1 is the degree, the leftover denominator
    exponent the dimension.
    """
    numer = list(hilbert_numerator(lay, gens))
    remaining = lay.arity
    while remaining > 0 and sum(numer) == 0:
        total = 0
        out = []
        for c in numer:
            total += c
            out.append(total)
        out.pop()
        numer = out
        remaining -= 1
    value = sum(numer)
    if value <= 0:
        raise ValueError("quotient is zero or numerator not positive at 1")
    return value, remaining


# -- bigraded column counts ----------------------------------------------


def column_counts(
    lay: Layout,
    power_gens: tuple[int, ...],
    cut_gens: tuple[int, ...],
    u_max: int,
) -> list[int]:
    """Counts of monomials by depth below a power ideal, one column.

    Walks the monomials z in (power_gens) but outside (cut_gens);
    each such z sits at depth D(z) = deg z - min degree of a dividing
    generator, and the returned list has, at index i <= u_max, the
    number of z with D(z) = i.  Children of z have strictly larger
    depth, so the walk prunes at depth u_max.
    """
    guard = lay.guard
    steps = lay.var_steps
    deg_shift = lay.deg_shift
    counts = [0] * (u_max + 1)

    def in_cut(z: int) -> bool:
        for g in cut_gens:
            if g > z:
                return False
            if not (z - g) & guard:
                return True
        return False

    stack = [g for g in power_gens if not in_cut(g)]
    seen = set(stack)
    while stack:
        z = stack.pop()
        mindeg = None
        for g in power_gens:
            if g > z:
                break
            if not (z - g) & guard:
                mindeg = g >> deg_shift
                break
        if mindeg is None:
            raise AssertionError("walk left the power ideal")
        depth = (z >> deg_shift) - mindeg
        if depth <= u_max:
            counts[depth] += 1
        if depth >= u_max:
            continue
        for step in steps:
            child = z + step
            if child not in seen and not in_cut(child):
                seen.add(child)
                stack.append(child)
    return counts
