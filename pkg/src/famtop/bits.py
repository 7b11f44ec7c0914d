"""Subsets of an indexed carrier, encoded as Python ints (bit i = element i)."""

from __future__ import annotations

from typing import Iterable, Iterator

from . import guards


def members(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def full(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def union_closure(full_mask: int, generators: Iterable[int]) -> tuple[int, ...]:
    """All unions of members of ``generators`` (the empty union is 0)."""
    acc = {0}
    for g in sorted(set(generators)):
        if g in acc:
            continue
        acc |= {a | g for a in acc}
        guards.check("max_family", len(acc))
    return tuple(sorted(acc))


def intersection_closure(full_mask: int, generators: Iterable[int]) -> tuple[int, ...]:
    """All finite intersections (the empty intersection is ``full_mask``)."""
    acc = {full_mask}
    for g in sorted(set(generators)):
        acc |= {a & g for a in acc}
        guards.check("max_family", len(acc))
    return tuple(sorted(acc))
