"""Finite topological spaces, continuous maps between them, and probe catalogs.

A space stores its points as a tuple of opaque labels and its topology as a
sorted tuple of int bitmasks (bit ``i`` is ``points[i]``).  All values are
immutable; every derived ordering is the sorted-bitmask order.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from . import bits, guards
from .errors import (
    MissingEmptySet,
    MissingFullSet,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    SizeGuardExceeded,
)


@dataclasses.dataclass(frozen=True, eq=True)
class FiniteSpace:
    points: tuple
    opens: tuple[int, ...]
    name: str = dataclasses.field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "opens", tuple(sorted(set(self.opens))))
        guards.check("max_points", len(self.points))
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"duplicate point labels in {self.points!r}")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.points, self.opens))

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<{type(self).__name__}{tag}: {len(self.points)} points, {len(self.opens)} opens>"

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def full(self) -> int:
        return bits.full(len(self.points))

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    @cached_property
    def open_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.opens)}

    @cached_property
    def point_index(self) -> dict[Hashable, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def min_nbhds(self) -> tuple[int, ...]:
        """Smallest open set containing each point."""
        out = []
        for i in range(len(self.points)):
            m = self.full
            for o in self.opens:
                if o >> i & 1:
                    m &= o
            out.append(m)
        return tuple(out)

    def is_open(self, mask: int) -> bool:
        return mask in self.open_set

    def subset(self, labels: Iterable[Hashable]) -> int:
        return bits.mask_of(self.point_index[p] for p in labels)

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.points[i] for i in bits.members(mask))


class SetFamilyTopology(FiniteSpace):
    """A topology on an abstract carrier (members of a level carrier, maps, ...)."""

    @property
    def carrier(self) -> tuple:
        return self.points


@dataclasses.dataclass(frozen=True)
class PointMap:
    source: FiniteSpace
    target: FiniteSpace
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.source.size:
            raise ValueError("map table length differs from source size")
        if any(not 0 <= t < self.target.size for t in self.table):
            raise ValueError("map table entry outside target")

    def preimage(self, mask: int) -> int:
        out = 0
        for i, t in enumerate(self.table):
            if mask >> t & 1:
                out |= 1 << i
        return out

    def __call__(self, label: Hashable) -> Hashable:
        return self.target.points[self.table[self.source.point_index[label]]]


@dataclasses.dataclass(frozen=True)
class FunctionSpaceTopology:
    """C(Y, Z) with a topology whose carrier ids index ``maps``."""

    Y: FiniteSpace
    Z: FiniteSpace
    maps: tuple[PointMap, ...] = dataclasses.field(compare=False)
    topology: SetFamilyTopology

    @property
    def opens(self) -> tuple[int, ...]:
        return self.topology.opens

    @cached_property
    def map_index(self) -> dict[tuple[int, ...], int]:
        return {f.table: i for i, f in enumerate(self.maps)}

    def labels(self) -> tuple[str, ...]:
        return tuple(map_label(f) for f in self.maps)

    def open_labels(self) -> list[tuple[str, ...]]:
        names = self.labels()
        return [tuple(names[i] for i in bits.members(o)) for o in self.opens]


@dataclasses.dataclass(frozen=True)
class ProbeCatalog:
    spaces: tuple[FiniteSpace, ...]
    description: str
    counts: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not self.spaces:
            raise ValueError("probe catalog must be non-empty")
        keys = {(s.points, s.opens) for s in self.spaces}
        if len(keys) != len(self.spaces):
            raise ValueError("probe catalog contains duplicate spaces")

    def __len__(self) -> int:
        return len(self.spaces)

    def __iter__(self):
        return iter(self.spaces)


def _as_mask(subset, index: dict, n: int) -> int:
    if isinstance(subset, int):
        if subset < 0 or subset >> n:
            raise ValueError(f"subset mask {subset:#b} outside carrier of size {n}")
        return subset
    try:
        return bits.mask_of(index[p] for p in subset)
    except KeyError as exc:
        raise ValueError(f"unknown point {exc.args[0]!r}") from None


def check_axioms(n: int, masks: Sequence[int]) -> None:
    """Raise the first topology-axiom violation of ``masks`` on ``n`` points."""
    ms = sorted(set(masks))
    present = set(ms)
    if 0 not in present:
        raise MissingEmptySet()
    if bits.full(n) not in present:
        raise MissingFullSet()
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if a & b not in present:
                raise NotClosedUnderIntersection(a, b)
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if a | b not in present:
                raise NotClosedUnderUnion(a, b)


def validate_topology(points: Iterable[Hashable], candidate: Iterable, name: str = "",
                      cls: type[FiniteSpace] = FiniteSpace) -> FiniteSpace:
    """Check the topology axioms and build the space.

    ``candidate`` members are bitmasks or collections of point labels.
    """
    points = tuple(points)
    index = {p: i for i, p in enumerate(points)}
    masks = {_as_mask(s, index, len(points)) for s in candidate}
    check_axioms(len(points), list(masks))
    return cls(points, tuple(masks), name)


def sierpinski() -> FiniteSpace:
    return FiniteSpace((0, 1), (0b00, 0b10, 0b11), "S")


def is_sierpinski(Z: FiniteSpace) -> bool:
    """Sierpinski up to labels, with the second point as the open one."""
    return Z.size == 2 and Z.opens == (0b00, 0b10, 0b11)


def point_space(label: Hashable = "*") -> FiniteSpace:
    return FiniteSpace((label,), (0, 1), "point")


def empty_space() -> FiniteSpace:
    return FiniteSpace((), (0,), "empty")


def discrete_space(points: Iterable[Hashable], name: str = "") -> FiniteSpace:
    points = tuple(points)
    return FiniteSpace(points, tuple(range(1 << len(points))), name)


def indiscrete_space(points: Iterable[Hashable], name: str = "") -> FiniteSpace:
    points = tuple(points)
    return FiniteSpace(points, (0, bits.full(len(points))), name)


def chain_space(k: int) -> FiniteSpace:
    """Points 0 < 1 < ... < k-1 with the up-sets as opens."""
    full = bits.full(k)
    opens = {0} | {full & ~bits.full(i) for i in range(k)}
    return FiniteSpace(tuple(range(k)), tuple(opens), f"chain{k}")


@functools.lru_cache(maxsize=4096)
def product_space(X: FiniteSpace, Y: FiniteSpace) -> FiniteSpace:
    """X x Y; point (x_i, y_j) has index i*|Y| + j."""
    n = X.size * Y.size
    guards.check("max_points", n)
    w = Y.size
    rects = set()
    for U in X.opens:
        for V in Y.opens:
            m = 0
            for i in bits.members(U):
                m |= V << (i * w)
            rects.add(m)
    opens = bits.union_closure(bits.full(n), rects)
    pts = tuple((x, y) for x in X.points for y in Y.points)
    name = f"{X.name}x{Y.name}" if X.name and Y.name else ""
    return FiniteSpace(pts, opens, name)


def is_continuous(f: PointMap) -> bool:
    """Preimage of every open of the target is open in the source."""
    return all(f.source.is_open(f.preimage(V)) for V in f.target.opens)


def table_is_continuous(source: FiniteSpace, target: FiniteSpace, table: Sequence[int]) -> bool:
    """Continuity via minimal neighbourhoods (exact for finite spaces)."""
    sm, tm = source.min_nbhds, target.min_nbhds
    for x, m in enumerate(sm):
        allowed = tm[table[x]]
        for y in bits.members(m):
            if not allowed >> table[y] & 1:
                return False
    return True


def continuous_tables(Y: FiniteSpace, Z: FiniteSpace) -> tuple[tuple[int, ...], ...]:
    """Tables of all continuous Y -> Z in lexicographic order."""
    guards.check("max_candidates", Z.size**Y.size)
    return _continuous_tables(Y, Z)


@functools.lru_cache(maxsize=8192)
def _continuous_tables(Y: FiniteSpace, Z: FiniteSpace) -> tuple[tuple[int, ...], ...]:
    n, m = Y.size, Z.size
    ym, zm = Y.min_nbhds, Z.min_nbhds
    # fwd[k]: earlier x whose minimal nbhd contains k; back[k]: earlier x inside m(k)
    fwd = [[x for x in range(k) if ym[x] >> k & 1] for k in range(n)]
    back = [[x for x in range(k) if ym[k] >> x & 1] for k in range(n)]
    out: list[tuple[int, ...]] = []
    table = [0] * n

    def rec(k: int) -> None:
        if k == n:
            out.append(tuple(table))
            return
        for v in range(m):
            if all(zm[table[x]] >> v & 1 for x in fwd[k]) and all(
                zm[v] >> table[x] & 1 for x in back[k]
            ):
                table[k] = v
                rec(k + 1)

    rec(0)
    return tuple(out)


def enumerate_continuous_maps(Y: FiniteSpace, Z: FiniteSpace) -> list[PointMap]:
    return [PointMap(Y, Z, t) for t in continuous_tables(Y, Z)]


def map_label(f: PointMap) -> str:
    if is_sierpinski(f.target):
        inside = f.source.labels_of(f.preimage(0b10))
        return "X{" + ",".join(str(p) for p in inside) + "}"
    return "f[" + ",".join(str(f.target.points[t]) for t in f.table) + "]"


@functools.lru_cache(maxsize=16)
def labeled_topologies(n: int) -> tuple[tuple[int, ...], ...]:
    """Every topology on the point indices 0..n-1, as sorted open tuples.

    Topologies on a finite set correspond to choices of minimal neighbourhoods
    m(x) with x in m(x) and y in m(x) => m(y) subset of m(x); the search
    enumerates exactly those choices.
    """
    full = bits.full(n)
    chosen = [0] * n
    found: list[tuple[int, ...]] = []

    def rec(k: int) -> None:
        if k == n:
            found.append(bits.union_closure(full, chosen))
            return
        others = full & ~(1 << k)
        sub = others
        while True:
            mk = sub | (1 << k)
            ok = True
            for x in range(k):
                if mk >> x & 1 and not bits.is_subset(chosen[x], mk):
                    ok = False
                    break
                if chosen[x] >> k & 1 and not bits.is_subset(mk, chosen[x]):
                    ok = False
                    break
            if ok:
                chosen[k] = mk
                rec(k + 1)
            if sub == 0:
                break
            sub = (sub - 1) & others

    rec(0)
    return tuple(sorted(found))


def _canonical_form(n: int, opens: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(sorted(bits.mask_of(perm[i] for i in bits.members(o)) for o in opens))
        if best is None or relabeled < best:
            best = relabeled
    return best


def enumerate_probe_catalog(max_points: int, up_to_homeomorphism: bool = False) -> ProbeCatalog:
    """All labeled topologies on 1..max_points points (labels 0..k-1)."""
    if max_points < 1:
        raise ValueError("max_points must be at least 1")
    limit = guards.get_guards().max_catalog_points
    if max_points > limit:
        raise SizeGuardExceeded("max_catalog_points", max_points, limit)
    spaces = []
    counts = []
    for k in range(1, max_points + 1):
        tops = labeled_topologies(k)
        if up_to_homeomorphism:
            reps = {}
            for t in tops:
                reps.setdefault(_canonical_form(k, t), t)
            tops = tuple(sorted(reps.values()))
        counts.append((k, len(tops)))
        spaces.extend(FiniteSpace(tuple(range(k)), t, f"P{k}.{j}") for j, t in enumerate(tops))
    kind = "homeomorphism classes of" if up_to_homeomorphism else "all labeled"
    return ProbeCatalog(tuple(spaces), f"{kind} topologies on <= {max_points} points", tuple(counts))


def is_T0(X: FiniteSpace) -> bool:
    for i in range(X.size):
        for j in range(i + 1, X.size):
            if not any((o >> i & 1) != (o >> j & 1) for o in X.opens):
                return False
    return True


def _finite_subcover_exists(cover: Sequence[int], target: int) -> bool:
    for r in range(len(cover) + 1):
        for sub in itertools.combinations(cover, r):
            acc = 0
            for s in sub:
                acc |= s
            if bits.is_subset(target, acc):
                return True
    return False


def _relatively_compact(X: FiniteSpace, V: int, U: int) -> bool:
    """Every open cover of the subspace U has a finite subfamily covering V."""
    sub_opens = sorted({o & U for o in X.opens})
    guards.check("max_candidates", 1 << len(sub_opens))
    for r in range(len(sub_opens) + 1):
        for cover in itertools.combinations(sub_opens, r):
            acc = 0
            for c in cover:
                acc |= c
            if acc == U and not _finite_subcover_exists(cover, V):
                return False
    return True


def is_corecompact(X: FiniteSpace) -> bool:
    """Literal corecompactness check (always true on finite spaces)."""
    for y in range(X.size):
        for U in X.opens:
            if not U >> y & 1:
                continue
            if not any(
                V >> y & 1 and bits.is_subset(V, U) and _relatively_compact(X, V, U)
                for V in X.opens
            ):
                return False
    return True
