"""Monomial orders on exponent tuples.

An order compares exponent tuples of equal arity and returns -1/0/+1.
Three kinds are supported: degree-reverse-lexicographic (the default
everywhere), lexicographic, and a two-block elimination order that
compares the first `block` coordinates grevlex-first (so eliminating
the leading block of variables is a matter of discarding basis elements
whose lead involves them).
"""

from __future__ import annotations

from dataclasses import dataclass

GREVLEX = "grevlex"
LEX = "lex"
BLOCK = "block"


def _cmp_grevlex(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    da, db = sum(a), sum(b)
    if da != db:
        return 1 if da > db else -1
    for i in range(len(a) - 1, -1, -1):
        if a[i] != b[i]:
            # smaller exponent in the latest differing slot wins
            return 1 if a[i] < b[i] else -1
    return 0


def _cmp_lex(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    for x, y in zip(a, b):
        if x != y:
            return 1 if x > y else -1
    return 0


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = GREVLEX
    block: int | None = None  # size of the eliminated leading block

    def __post_init__(self) -> None:
        if self.kind not in (GREVLEX, LEX, BLOCK):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == BLOCK:
            if not isinstance(self.block, int) or self.block < 1:
                raise ValueError("block order needs a positive block size")
        elif self.block is not None:
            raise ValueError(f"{self.kind} order takes no block size")

    def compare(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        """Return +1 if a is larger, -1 if b is larger, 0 if equal."""
        if len(a) != len(b):
            raise ValueError("exponent tuples of different arity")
        if self.kind == GREVLEX:
            return _cmp_grevlex(a, b)
        if self.kind == LEX:
            return _cmp_lex(a, b)
        k = self.block
        c = _cmp_grevlex(a[:k], b[:k])
        if c:
            return c
        return _cmp_grevlex(a[k:], b[k:])

    @property
    def key(self) -> tuple:
        return (self.kind, self.block)


def grevlex() -> MonomialOrder:
    return MonomialOrder(GREVLEX)


def lex() -> MonomialOrder:
    return MonomialOrder(LEX)


def elimination_order(block: int) -> MonomialOrder:
    """Order eliminating the first `block` variables."""
    return MonomialOrder(BLOCK, block)
