"""Topologies generated from subbases, finite posets, and the Scott topology."""

from __future__ import annotations

import dataclasses
import functools
import itertools
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from . import bits, guards
from .errors import NotAPartialOrder
from .finite_space import SetFamilyTopology, _as_mask, check_axioms


def _carrier_masks(carrier: Sequence[Hashable], family: Iterable) -> tuple[tuple, set[int]]:
    carrier = tuple(carrier)
    if len(set(carrier)) != len(carrier):
        raise ValueError("duplicate carrier elements")
    index = {c: i for i, c in enumerate(carrier)}
    return carrier, {_as_mask(s, index, len(carrier)) for s in family}


def generate_topology(carrier: Sequence[Hashable], subbasis: Iterable, name: str = "") -> SetFamilyTopology:
    """Smallest topology on ``carrier`` containing ``subbasis``.

    Finite intersections first (the empty intersection is the carrier), then
    arbitrary unions (the empty union is the empty set).
    """
    carrier, sub = _carrier_masks(carrier, subbasis)
    full = bits.full(len(carrier))
    basis = bits.intersection_closure(full, sub)
    opens = bits.union_closure(full, basis)
    return SetFamilyTopology(carrier, opens, name)


def fixpoint_closure(carrier: Sequence[Hashable], subbasis: Iterable) -> tuple[int, ...]:
    """Naive oracle: add pairwise unions and intersections until nothing changes."""
    carrier, fam = _carrier_masks(carrier, subbasis)
    fam |= {0, bits.full(len(carrier))}
    while True:
        new = {a & b for a in fam for b in fam} | {a | b for a in fam for b in fam}
        if new <= fam:
            return tuple(sorted(fam))
        fam |= new


def topology_on(carrier: Sequence[Hashable], opens: Iterable, name: str = "") -> SetFamilyTopology:
    """Validate ``opens`` as a topology on ``carrier``."""
    carrier, masks = _carrier_masks(carrier, opens)
    check_axioms(len(carrier), list(masks))
    return SetFamilyTopology(carrier, tuple(masks), name)


def discrete_topology(carrier: Sequence[Hashable]) -> SetFamilyTopology:
    carrier = tuple(carrier)
    return SetFamilyTopology(carrier, tuple(range(1 << len(carrier))))


def indiscrete_topology(carrier: Sequence[Hashable]) -> SetFamilyTopology:
    carrier = tuple(carrier)
    return SetFamilyTopology(carrier, (0, bits.full(len(carrier))))


@dataclasses.dataclass(frozen=True)
class Poset:
    """Finite poset; ``ups[i]`` is the bitmask of elements j with i <= j."""

    elements: tuple
    ups: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "ups", tuple(self.ups))
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise ValueError("duplicate poset elements")
        if len(self.ups) != n:
            raise ValueError("relation table size differs from element count")
        for i, u in enumerate(self.ups):
            if not u >> i & 1:
                raise NotAPartialOrder(f"not reflexive at {self.elements[i]!r}")
            for j in bits.members(u):
                if j != i and self.ups[j] >> i & 1:
                    raise NotAPartialOrder(
                        f"not antisymmetric: {self.elements[i]!r}, {self.elements[j]!r}"
                    )
                if not bits.is_subset(self.ups[j], u):
                    raise NotAPartialOrder(
                        f"not transitive through {self.elements[j]!r}"
                    )

    @classmethod
    def from_leq(cls, elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]) -> "Poset":
        elements = tuple(elements)
        ups = [bits.mask_of(j for j, b in enumerate(elements) if leq(a, b)) for a in elements]
        return cls(elements, tuple(ups))

    @property
    def size(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.ups[i] >> j & 1)

    @cached_property
    def downs(self) -> tuple[int, ...]:
        n = len(self.elements)
        return tuple(bits.mask_of(i for i in range(n) if self.ups[i] >> j & 1) for j in range(n))

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits.members(mask):
            out |= self.ups[i]
        return out

    def is_up_set(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def supremum(self, mask: int) -> int | None:
        """Index of the least upper bound of ``mask``, or None."""
        upper = bits.full(len(self.elements))
        for i in bits.members(mask):
            upper &= self.ups[i]
        for j in bits.members(upper):
            if bits.is_subset(upper, self.ups[j]):
                return j
        return None


def inclusion_poset(family: Iterable[int]) -> Poset:
    """Distinct bitmasks ordered by inclusion, in sorted order."""
    elems = tuple(sorted(set(family)))
    ups = [bits.mask_of(j for j, b in enumerate(elems) if bits.is_subset(a, b)) for a in elems]
    return Poset(elems, tuple(ups))


@functools.lru_cache(maxsize=4096)
def scott_topology(P: Poset) -> SetFamilyTopology:
    """Scott-open sets of a finite poset.

    Every directed subset of a finite poset contains its own maximum, so the
    inaccessibility condition holds for every up-set; the Scott topology is
    therefore the family of up-sets, obtained as unions of principal filters.
    ``is_scott_open_literal`` checks the defining conditions directly.
    """
    opens = bits.union_closure(bits.full(P.size), P.ups)
    return SetFamilyTopology(P.elements, opens, "scott")


def _directed_subsets(P: Poset) -> list[int]:
    out = []
    n = P.size
    for D in range(1, 1 << n):
        ok = True
        elems = list(bits.members(D))
        for a, b in itertools.combinations(elems, 2):
            if not P.ups[a] & P.ups[b] & D:
                ok = False
                break
        if ok:
            out.append(D)
    return out


def scott_open_sets_literal(P: Poset) -> tuple[int, ...]:
    """All subsets satisfying (a) H = up(H) and (b) sup(D) in H => D meets H."""
    directed = [(D, P.supremum(D)) for D in _directed_subsets(P)]
    found = []
    for H in range(1 << P.size):
        if not is_scott_open_literal(P, H, directed):
            continue
        found.append(H)
    return tuple(found)


def is_scott_open_literal(P: Poset, H: int, directed: list | None = None) -> bool:
    for i in bits.members(H):
        for j in bits.members(P.ups[i]):
            if not H >> j & 1:
                return False
    if directed is None:
        directed = [(D, P.supremum(D)) for D in _directed_subsets(P)]
    for D, s in directed:
        if s is not None and H >> s & 1 and not D & H:
            return False
    return True


def is_scott_open_in_opens_literal(opens: Sequence[int], H: int) -> bool:
    """Scott openness on a lattice of open sets, read off the union condition.

    ``opens`` are the open sets (bitmasks over points) in carrier order and
    ``H`` is a bitmask over that order.  Checks upward closure under
    inclusion and that every subfamily whose union lies in H has a finite
    subfamily whose union lies in H.
    """
    opens = tuple(opens)
    where = {o: i for i, o in enumerate(opens)}
    k = len(opens)
    for i in bits.members(H):
        for j, V in enumerate(opens):
            if bits.is_subset(opens[i], V) and not H >> j & 1:
                return False
    guards.check("max_candidates", 1 << k)
    for fam in range(1 << k):
        acc = 0
        for i in bits.members(fam):
            acc |= opens[i]
        if not H >> where[acc] & 1:
            continue
        idx = list(bits.members(fam))
        if not any(
            H >> where[_union(opens, J)] & 1
            for r in range(len(idx) + 1)
            for J in itertools.combinations(idx, r)
        ):
            return False
    return True


def _union(opens: Sequence[int], idx: Iterable[int]) -> int:
    acc = 0
    for i in idx:
        acc |= opens[i]
    return acc


def _as_index_map(f, P: Poset, Q: Poset) -> tuple[int, ...]:
    if isinstance(f, Mapping):
        qi = {e: i for i, e in enumerate(Q.elements)}
        return tuple(qi[f[e]] for e in P.elements)
    table = tuple(f)
    if len(table) != P.size or any(not 0 <= t < Q.size for t in table):
        raise ValueError("element map is not total into Q")
    return table


def is_scott_continuous(f, P: Poset, Q: Poset) -> bool:
    """Preimage of every Scott-open of Q is Scott-open in P.

    ``f`` is a mapping P.elements -> Q.elements or a sequence of Q indices.
    """
    table = _as_index_map(f, P, Q)
    p_open = scott_topology(P).open_set
    for H in scott_topology(Q).opens:
        pre = bits.mask_of(i for i, t in enumerate(table) if H >> t & 1)
        if pre not in p_open:
            return False
    return True
