"""Localization at variable-subset primes and the support decomposition.

For monomial input the localization at a prime generated by a subset of
the variables is again monomial data: the outside variables become
units, so generators simply forget their outside exponents.  That turns
each local leading coefficient into a small instance of the same table
pipeline, and the decomposition of the multiplicity sequence over the
support becomes a finite, fully checkable sum.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import monomials as mo
from .config import Params
from .errors import PreconditionError
from .hilbert import quotient_degree
from .ideals import Ideal
from .multiplicity import (
    CyclicModule,
    MultiplicitySequence,
    height_on_module,
    multiplicity_sequence,
    star_condition,
)
from .orders import grevlex
from .poly import PolyRing


@dataclass(frozen=True)
class MonomialPrime:
    """Prime generated by a subset of the variables."""

    variables: tuple[str, ...]

    @staticmethod
    def from_indices(ring: PolyRing, indices) -> MonomialPrime:
        return MonomialPrime(tuple(ring.variables[i] for i in sorted(indices)))

    def indices(self, ring: PolyRing) -> tuple[int, ...]:
        try:
            return tuple(ring.variables.index(v) for v in self.variables)
        except ValueError:
            raise ValueError(f"prime variables {self.variables} not in ring")

    def codimension(self, ring: PolyRing) -> int:
        return len(self.variables)

    def __str__(self) -> str:
        return "(" + ", ".join(self.variables) + ")" if self.variables else "(0)"


def _restricted_ring(ring: PolyRing, prime: MonomialPrime) -> PolyRing:
    # the localized picture lives in the prime's own variables
    names = tuple(v for v in ring.variables if v in prime.variables)
    return PolyRing(names, ring.characteristic, grevlex())


def localize_ideal(ideal: Ideal, prime: MonomialPrime) -> Ideal:
    """Image of a monomial ideal in the local ring at the prime.

    Exponents on variables outside the prime are dropped; the result is
    the ideal of the restricted polynomial ring in the prime's
    variables that presents the localization.
    """
    packed = ideal.packed()
    if packed is None:
        raise PreconditionError("localization needs monomial generators")
    ring = ideal.ring
    if not prime.variables:
        raise PreconditionError("cannot localize at the empty variable set")
    sub = _restricted_ring(ring, prime)
    if not packed:
        return Ideal(sub, [])
    lay = mo.layout(ring.arity)
    restricted = mo.restrict(lay, packed, prime.indices(ring))
    sub_lay = mo.layout(len(prime.variables))
    if mo.is_unit(restricted):
        return Ideal(sub, [sub.one()])
    return Ideal(sub, [sub.monomial(mo.unpack(sub_lay, w)) for w in restricted])


def localize_module(module: CyclicModule, prime: MonomialPrime) -> CyclicModule:
    local = localize_ideal(module.relations, prime)
    if not local.is_proper():
        raise PreconditionError("prime lies outside the support of the module")
    return CyclicModule(local.ring, local)


def residue_degree(ring: PolyRing, prime: MonomialPrime) -> int:
    """Degree of R modulo the prime; a polynomial ring has degree one."""
    prime.indices(ring)  # validates membership
    return 1


def _contains_in_variables(ideal: Ideal, variables: frozenset[str]) -> bool:
    """Whether every generator lies in the prime of the given variables."""
    ring = ideal.ring
    idx = {i for i, v in enumerate(ring.variables) if v in variables}
    for g in ideal.gens:
        for e in g.terms:
            if not any(e[i] for i in idx):
                return False
    return True


@dataclass(frozen=True)
class LambdaSet:
    """Primes of codimension-complement k meeting the dimension condition."""

    k: int
    primes: tuple[MonomialPrime, ...]
    complete: bool
    note: str = ""


def enumerate_lambda(
    ideal: Ideal,
    module: CyclicModule,
    k: int,
    user_primes: list[MonomialPrime] | None = None,
) -> LambdaSet:
    """Primes p over I plus relations with dim R/p = k and dim M_p = d - k.

    Monomial input enumerates every variable-subset prime, and that
    list is complete: a prime can contribute to the decomposition only
    if the ideal reaches full analytic spread there, and for monomial
    data those centers are monomial primes.  Otherwise a user-supplied
    list is filtered by the same predicates.
    """
    import itertools as it

    ring = ideal.ring
    n = ring.arity
    d = module.dim
    joined = ideal.add(module.relations)
    if not joined.is_proper():
        raise PreconditionError("support of the colength module is empty")
    if not 0 <= k <= d:
        return LambdaSet(k, (), True, "index outside 0..dim")
    jp = joined.packed()
    kp = module.relations.packed()
    if jp is not None and kp is not None:
        lay = mo.layout(n)
        supports = mo.supports(lay, jp)
        found = []
        size = n - k
        for subset in it.combinations(range(n), size):
            s = set(subset)
            if not all(sp & s for sp in supports):
                continue
            restricted = mo.restrict(lay, kp, subset)
            if mo.is_unit(restricted):
                continue
            local_dim = (
                mo.dimension(mo.layout(size), restricted) if size else 0
            )
            if local_dim == d - k:
                found.append(MonomialPrime.from_indices(ring, subset))
        return LambdaSet(k, tuple(found), True)
    if user_primes is None:
        return LambdaSet(
            k, (), False, "general input: supply candidate primes to enumerate"
        )
    found = []
    for prime in user_primes:
        if prime.codimension(ring) != n - k:
            continue
        if not _contains_in_variables(joined, frozenset(prime.variables)):
            continue
        if module.equidimensional:
            found.append(prime)  # dim M_p = d - k holds on unmixed modules
        # without unmixedness the local dimension is not certified; drop
    return LambdaSet(
        k,
        tuple(found),
        False,
        "filtered user-supplied primes only; the list may be incomplete",
    )


def local_c0(
    ideal: Ideal,
    module: CyclicModule,
    prime: MonomialPrime,
    params: Params | None = None,
) -> int:
    """Leading coefficient c_0 of the localized pair at the prime."""
    local_i = localize_ideal(ideal, prime)
    local_m = localize_module(module, prime)
    if not local_i.is_proper():
        return 0  # the ideal is a unit there; nothing is carried
    if local_i.is_zero():
        return 0
    seq, _ = multiplicity_sequence(local_i, local_m, params)
    return seq.entries[0]


@dataclass(frozen=True)
class Contribution:
    prime: tuple[str, ...]
    local_c0: int
    degree: int

    @property
    def product(self) -> int:
        return self.local_c0 * self.degree


@dataclass(frozen=True)
class KSummary:
    k: int
    contributions: tuple[Contribution, ...]
    rhs: int
    lhs: int
    complete: bool

    @property
    def matches(self) -> bool | None:
        if not self.complete:
            return None
        return self.rhs == self.lhs


@dataclass(frozen=True)
class FormulaReport:
    sequence: MultiplicitySequence
    height: int
    star: bool | None
    rows: tuple[KSummary, ...]
    complete: bool
    verdict: str  # verified | mismatch | lower-bound | hypotheses-not-met

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"


def verify_formula(
    ideal: Ideal,
    module: CyclicModule,
    params: Params | None = None,
    user_primes: list[MonomialPrime] | None = None,
) -> FormulaReport:
    """Compare the sequence against its support decomposition.

    Each entry c_k should equal the sum over the k-th support stratum
    of the local leading coefficient times the degree of the residue
    ring, provided the dimension condition holds, for which positive
    height suffices.  Complete monomial enumerations with the
    hypotheses in force must match exactly; anything else is reported
    as a lower-bound certificate rather than a verification.
    """
    params = params or Params()
    seq, _ = multiplicity_sequence(ideal, module, params)
    het = height_on_module(ideal, module)
    star = star_condition(ideal, module, params)
    rows = []
    all_complete = True
    for k in range(module.dim + 1):
        lam = enumerate_lambda(ideal, module, k, user_primes)
        contribs = tuple(
            Contribution(
                p.variables,
                local_c0(ideal, module, p, params),
                residue_degree(ideal.ring, p),
            )
            for p in lam.primes
        )
        rhs = sum(c.product for c in contribs)
        rows.append(KSummary(k, contribs, rhs, seq.entries[k], lam.complete))
        all_complete = all_complete and lam.complete
    hypotheses = star is True
    if hypotheses and all_complete:
        verdict = (
            "verified" if all(r.rhs == r.lhs for r in rows) else "mismatch"
        )
    elif not hypotheses:
        verdict = "hypotheses-not-met"
    else:
        verdict = "lower-bound"
    return FormulaReport(seq, het, star, tuple(rows), all_complete, verdict)


def support_primes(ideal: Ideal, module: CyclicModule) -> list[MonomialPrime]:
    """Minimal primes of the support of M/IM, for monomial input."""
    joined = ideal.add(module.relations)
    jp = joined.packed()
    if jp is None:
        raise PreconditionError("support enumeration needs monomial input")
    if not joined.is_proper():
        return []
    lay = mo.layout(ideal.ring.arity)
    return [
        MonomialPrime.from_indices(ideal.ring, p)
        for p in mo.minimal_primes(lay, jp)
    ]


def general_residue_degree(prime_ideal: Ideal) -> int:
    """Degree of the quotient by a homogeneous prime given by generators."""
    return quotient_degree(prime_ideal)
