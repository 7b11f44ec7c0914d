"""Staged family-open construction on C(Y, Z).

Level 0 is the lattice of opens of Y itself: its carrier is ``Y.opens`` (in
canonical order) and every open U maps to its own index.  Level n >= 1 holds

* ``family``: members of F_n, each a bitmask over the level n-1 carrier ids;
* ``values``: for the k-th open U of Y, the carrier id of O^n(U);
* ``carrier``: the distinct O^n(U), each a bitmask over family indices, sorted;
* ``tau``: an optional topology on carrier ids 0..len(carrier)-1.

Each distinct nested set lives at its level under a single integer id (its
position in the sorted carrier), so set-of-set equality is id equality.

The level-1 subbasic sets follow the general rule
<H, U>_n = {f : O^n(f^-1(U)) in H}.  One worked example writes the level-1
subbasis as {f : f^-1(U) in H}; its stated results only agree with the O^1
form, which is what is implemented.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, NamedTuple, Sequence

from . import bits, guards
from .errors import LevelNotBuilt, NotOpen, TopologyNotSet
from .finite_space import (
    FiniteSpace,
    FunctionSpaceTopology,
    PointMap,
    SetFamilyTopology,
    enumerate_continuous_maps,
)
from .topology_algebra import generate_topology, topology_on


@dataclasses.dataclass(frozen=True)
class Level:
    index: int
    family: tuple[int, ...] | None
    values: tuple[int, ...]
    carrier: tuple[int, ...]
    tau: SetFamilyTopology | None = None
    labels: tuple[str, ...] = dataclasses.field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.carrier)


def _coerce_tau(tau, k: int) -> SetFamilyTopology | None:
    if tau is None:
        return None
    if isinstance(tau, SetFamilyTopology):
        if tau.size != k:
            raise ValueError(f"topology has {tau.size} carrier elements, level has {k}")
        return SetFamilyTopology(tuple(range(k)), tau.opens, tau.name)
    return topology_on(range(k), tau)


def _subset_mask(s, k: int) -> int:
    if isinstance(s, int):
        if s < 0 or s >> k:
            raise ValueError(f"member {s:#b} is not a subset of the previous carrier")
        return s
    m = 0
    for i in s:
        if not 0 <= i < k:
            raise ValueError(f"carrier id {i} out of range 0..{k - 1}")
        m |= 1 << i
    return m


@dataclasses.dataclass(frozen=True)
class LevelChain:
    base: FiniteSpace
    levels: tuple[Level, ...]

    @classmethod
    def start(cls, Y: FiniteSpace, tau0=None) -> "LevelChain":
        k = len(Y.opens)
        lvl = Level(0, None, tuple(range(k)), Y.opens, _coerce_tau(tau0, k))
        return cls(Y, (lvl,))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level(self, n: int) -> Level:
        if not 0 <= n < len(self.levels):
            raise LevelNotBuilt(f"level {n} not built (chain depth {self.depth})")
        return self.levels[n]

    def tau(self, n: int) -> SetFamilyTopology:
        t = self.level(n).tau
        if t is None:
            raise TopologyNotSet(f"no topology at level {n}")
        return t

    def extend(self, family: Iterable, tau=None, labels: Sequence[str] | None = None) -> "LevelChain":
        """Append level depth+1 built from ``family`` (subsets of the top carrier)."""
        prev = self.levels[-1]
        k = prev.size
        raw = [_subset_mask(s, k) for s in family]
        raw_labels = list(labels) if labels is not None else [f"m{i}" for i in range(len(raw))]
        if len(raw_labels) != len(raw):
            raise ValueError("one label per family member required")
        first_label: dict[int, str] = {}
        for m, lab in zip(raw, raw_labels):
            first_label.setdefault(m, lab)
        fam = tuple(sorted(first_label))
        guards.check("max_family", len(fam))
        # O^n(U) = {phi in F_n : O^{n-1}(U) in phi}, as a mask over family indices
        by_prev = [bits.mask_of(j for j, phi in enumerate(fam) if phi >> c & 1) for c in range(k)]
        raw_values = [by_prev[c] for c in prev.values]
        carrier = tuple(sorted(set(raw_values)))
        cid = {m: i for i, m in enumerate(carrier)}
        values = tuple(cid[m] for m in raw_values)
        lvl = Level(
            len(self.levels), fam, values, carrier,
            _coerce_tau(tau, len(carrier)), tuple(first_label[m] for m in fam),
        )
        return LevelChain(self.base, self.levels + (lvl,))

    def with_tau(self, n: int, tau) -> "LevelChain":
        lvl = self.level(n)
        new = dataclasses.replace(lvl, tau=_coerce_tau(tau, lvl.size))
        return LevelChain(self.base, self.levels[:n] + (new,) + self.levels[n + 1:])

    def truncate(self, n: int) -> "LevelChain":
        self.level(n)
        return LevelChain(self.base, self.levels[: n + 1])

    def value_of(self, n: int, U: int) -> int:
        """Carrier id of O^n(U) for the open set U (a point bitmask of Y)."""
        try:
            k = self.base.open_index[U]
        except KeyError:
            raise NotOpen(f"{U:#b} is not open in the base space") from None
        return self.level(n).values[k]


def o_level(chain: LevelChain, n: int, U: int) -> int:
    """O^n(U) as a bitmask over the members of F_n (U itself at level 0)."""
    return chain.level(n).carrier[chain.value_of(n, U)]


def carrier(chain: LevelChain, n: int) -> tuple[int, ...]:
    return chain.level(n).carrier


class Phi(NamedTuple):
    values: tuple[int, ...]
    injective: bool


def phi(chain: LevelChain, n: int) -> Phi:
    """U -> O^n(U), indexed by the canonical position of U among Y's opens."""
    vals = chain.level(n).values
    return Phi(vals, len(set(vals)) == len(vals))


def _maps(Y: FiniteSpace, Z: FiniteSpace, maps: Sequence[PointMap] | None) -> tuple[PointMap, ...]:
    return tuple(maps) if maps is not None else tuple(enumerate_continuous_maps(Y, Z))


def subbasic_set(chain: LevelChain, n: int, H: int, U: int, maps: Sequence[PointMap]) -> int:
    """<H, U>_n over ``maps``: bit i set iff O^n(maps[i]^-1(U)) lies in H."""
    tau = chain.tau(n)
    if not tau.is_open(H):
        raise NotOpen(f"{H:#b} is not a member of tau_{n}")
    out = 0
    for i, f in enumerate(maps):
        if H >> chain.value_of(n, f.preimage(U)) & 1:
            out |= 1 << i
    return out


def subbasis(chain: LevelChain, n: int, Z: FiniteSpace, maps: Sequence[PointMap] | None = None) -> set[int]:
    maps = _maps(chain.base, Z, maps)
    tau = chain.tau(n)
    vals = chain.level(n).values
    oi = chain.base.open_index
    # column[u][i]: carrier id of O^n(maps[i]^-1(U_u))
    columns = [[vals[oi[f.preimage(U)]] for f in maps] for U in Z.opens]
    out = set()
    for H in tau.opens:
        for col in columns:
            out.add(bits.mask_of(i for i, c in enumerate(col) if H >> c & 1))
    return out


def build_family_open_topology(chain: LevelChain, n: int, Z: FiniteSpace,
                               maps: Sequence[PointMap] | None = None) -> FunctionSpaceTopology:
    """t_{F_n}(tau_n): generated by <H, U>_n for H in tau_n and U open in Z."""
    maps = _maps(chain.base, Z, maps)
    top = generate_topology(range(len(maps)), subbasis(chain, n, Z, maps), f"t{n}")
    return FunctionSpaceTopology(chain.base, Z, maps, top)
