"""Deciding A-splitting and A-joint continuity by exhaustion over a probe catalog.

A map X -> C(Y, Z) is carried either as a tuple of PointMaps (public API) or
as a tuple of indices into the canonical list of C(Y, Z) (internal loops).
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from typing import Any, Sequence

from . import bits, guards
from .errors import InternalAxiomFailure, NotContinuous
from .family_open import LevelChain, build_family_open_topology
from .finite_space import (
    FiniteSpace,
    FunctionSpaceTopology,
    PointMap,
    ProbeCatalog,
    SetFamilyTopology,
    continuous_tables,
    enumerate_continuous_maps,
    is_continuous,
    labeled_topologies,
    product_space,
    table_is_continuous,
)
from .topology_algebra import generate_topology, inclusion_poset, is_scott_continuous, scott_topology


@dataclasses.dataclass(frozen=True)
class Witness:
    """A continuity failure: ``mapping`` pulls ``open_set`` back to a non-open set
    containing ``point``, and no open neighbourhood of ``point`` stays inside it."""

    space: FiniteSpace
    mapping: Any
    point: Any
    open_set: int


@dataclasses.dataclass(frozen=True)
class SplittingReport:
    verdict: bool
    witness: Witness | None
    checked_count: int


@dataclasses.dataclass(frozen=True)
class FirstVariableMap:
    X: FiniteSpace
    values: tuple[tuple[int, ...], ...]  # values[x][u], u over opens of Z

    def column(self, u: int) -> tuple[int, ...]:
        return tuple(row[u] for row in self.values)


def _slices(table: Sequence[int], width: int, count: int) -> list[tuple[int, ...]]:
    return [tuple(table[i * width:(i + 1) * width]) for i in range(count)]


def f_hat(F: PointMap, X: FiniteSpace, Y: FiniteSpace) -> tuple[PointMap, ...]:
    """x -> F_x for a continuous F : X x Y -> Z."""
    if F.source != product_space(X, Y):
        raise ValueError("F is not defined on X x Y")
    if not is_continuous(F):
        raise NotContinuous("F : X x Y -> Z is not continuous")
    out = tuple(PointMap(Y, F.target, s) for s in _slices(F.table, Y.size, X.size))
    assert all(is_continuous(s) for s in out)
    return out


def g_tilde(G: Sequence[PointMap], X: FiniteSpace, Y: FiniteSpace) -> PointMap:
    """(x, y) -> G(x)(y); continuity is left to the caller."""
    if len(G) != X.size:
        raise ValueError("G must assign a map to every point of X")
    Z = G[0].target if G else None
    if Z is None:
        raise ValueError("cannot infer the codomain of an empty G")
    table = tuple(t for g in G for t in g.table)
    return PointMap(product_space(X, Y), Z, table)


def f_star(F: PointMap, X: FiniteSpace, Y: FiniteSpace) -> FirstVariableMap:
    """F*(x, U) = F_x^-1(U) as canonical open indices of Y."""
    slices = f_hat(F, X, Y)
    oi = Y.open_index
    return FirstVariableMap(X, tuple(tuple(oi[s.preimage(U)] for U in F.target.opens) for s in slices))


def f_bar(chain: LevelChain, n: int, F: PointMap, X: FiniteSpace) -> FirstVariableMap:
    """F_n(x, U) = O^n(F_x^-1(U)) as level-n carrier ids."""
    slices = f_hat(F, X, chain.base)
    return FirstVariableMap(
        X, tuple(tuple(chain.value_of(n, s.preimage(U)) for U in F.target.opens) for s in slices)
    )


def g_bar(chain: LevelChain, n: int, G: Sequence[PointMap], X: FiniteSpace) -> FirstVariableMap:
    """G_n(x, U) = O^n(G(x)^-1(U)); G need not be continuous."""
    if len(G) != X.size:
        raise ValueError("G must assign a map to every point of X")
    return FirstVariableMap(
        X, tuple(tuple(chain.value_of(n, g.preimage(U)) for U in g.target.opens) for g in G)
    )


def first_variable_continuous(M: FirstVariableMap, tau: FiniteSpace) -> bool:
    """Every column x -> M(x, U) is continuous X -> (carrier, tau)."""
    width = len(M.values[0]) if M.values else 0
    return all(is_continuous(PointMap(M.X, tau, M.column(u))) for u in range(width))


def _failure_point(X: FiniteSpace, pre: int) -> int:
    for i in bits.members(pre):
        if not bits.is_subset(X.min_nbhds[i], pre):
            return i
    raise AssertionError("preimage is not open yet every point has a neighbourhood inside")


def _first_bad_open(source: FiniteSpace, target: FiniteSpace, table: Sequence[int]) -> tuple[int, int]:
    for W in target.opens:
        pre = bits.mask_of(i for i, t in enumerate(table) if W >> t & 1)
        if not source.is_open(pre):
            return W, _failure_point(source, pre)
    raise AssertionError("map is continuous")


@functools.lru_cache(maxsize=8192)
def _curried(X: FiniteSpace, Y: FiniteSpace, Z: FiniteSpace) -> tuple[tuple, int]:
    """Distinct F-hat index tuples over continuous F : X x Y -> Z.

    Returns (entries, number of F).  Each entry is (hat, position of the first
    F producing it, that F's table), in order of first appearance.
    """
    index = {t: i for i, t in enumerate(continuous_tables(Y, Z))}
    seen: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    tables = continuous_tables(product_space(X, Y), Z)
    for pos, F in enumerate(tables):
        hat = tuple(index[s] for s in _slices(F, Y.size, X.size))
        if hat not in seen:
            seen[hat] = (pos, F)
    return tuple((h, p, F) for h, (p, F) in seen.items()), len(tables)


def is_A_splitting(t: FunctionSpaceTopology, catalog: ProbeCatalog) -> SplittingReport:
    """For each X and continuous F : X x Y -> Z, is F-hat : X -> C_t continuous?"""
    checked = 0
    for X in catalog:
        guards.check("max_candidates", t.Z.size ** (X.size * t.Y.size))
        entries, total = _curried(X, t.Y, t.Z)
        for hat, pos, F in entries:
            if not table_is_continuous(X, t.topology, hat):
                W, x = _first_bad_open(X, t.topology, hat)
                fmap = PointMap(product_space(X, t.Y), t.Z, F)
                return SplittingReport(False, Witness(X, fmap, X.points[x], W), checked + pos + 1)
        checked += total
    return SplittingReport(True, None, checked)


@functools.lru_cache(maxsize=1 << 16)
def _uncurried_ok(X: FiniteSpace, Y: FiniteSpace, Z: FiniteSpace, G: tuple[int, ...]) -> bool:
    C = continuous_tables(Y, Z)
    table = tuple(v for c in G for v in C[c])
    return table_is_continuous(product_space(X, Y), Z, table)


def is_A_jointly_continuous(t: FunctionSpaceTopology, catalog: ProbeCatalog) -> SplittingReport:
    """For each X and continuous G : X -> C_t, is G-tilde : X x Y -> Z continuous?"""
    checked = 0
    for X in catalog:
        for G in continuous_tables(X, t.topology):
            checked += 1
            if _uncurried_ok(X, t.Y, t.Z, G):
                continue
            P = product_space(X, t.Y)
            gmaps = tuple(t.maps[c] for c in G)
            table = tuple(v for g in gmaps for v in g.table)
            V, p = _first_bad_open(P, t.Z, table)
            return SplittingReport(False, Witness(X, gmaps, P.points[p], V), checked)
    return SplittingReport(True, None, checked)


@dataclasses.dataclass(frozen=True)
class CharacterizationReport:
    """Both sides of an equivalence, computed independently."""

    topology_side: SplittingReport
    condition_side: bool
    counterexample: tuple | None
    checked_count: int

    @property
    def agree(self) -> bool:
        return self.topology_side.verdict == self.condition_side


def check_splitting_characterization(chain: LevelChain, n: int, catalog: ProbeCatalog,
                                     Z: FiniteSpace) -> CharacterizationReport:
    """A-splitting of t_{F_n}(tau_n) versus first-variable continuity of every F_n."""
    t = build_family_open_topology(chain, n, Z)
    left = is_A_splitting(t, catalog)
    tau = chain.tau(n)
    checked = 0
    for X in catalog:
        for F in enumerate_continuous_maps(product_space(X, chain.base), Z):
            checked += 1
            if not first_variable_continuous(f_bar(chain, n, F, X), tau):
                return CharacterizationReport(left, False, (X, F), checked)
    return CharacterizationReport(left, True, None, checked)


def check_jointly_characterization(chain: LevelChain, n: int, catalog: ProbeCatalog,
                                   Z: FiniteSpace) -> CharacterizationReport:
    """A-joint continuity of t_{F_n}(tau_n) versus: G_n first-variable continuous
    implies G-tilde continuous, G over all set maps X -> C(Y, Z)."""
    t = build_family_open_topology(chain, n, Z)
    left = is_A_jointly_continuous(t, catalog)
    tau = chain.tau(n)
    maps = t.maps
    checked = 0
    for X in catalog:
        guards.check("max_candidates", len(maps) ** X.size)
        for G in itertools.product(maps, repeat=X.size):
            checked += 1
            if not first_variable_continuous(g_bar(chain, n, G, X), tau):
                continue
            if not is_continuous(g_tilde(G, X, chain.base)):
                return CharacterizationReport(left, False, (X, G), checked)
    return CharacterizationReport(left, True, None, checked)


@dataclasses.dataclass(frozen=True)
class PhiScottReport:
    phi_scott_continuous: bool
    verdicts: tuple[tuple[str, SplittingReport], ...]

    @property
    def holds(self) -> bool:
        return not self.phi_scott_continuous or all(r.verdict for _, r in self.verdicts)


def check_phi_scott_implies_splitting(chain: LevelChain, n: int, catalog: ProbeCatalog,
                                      codomains: Sequence[FiniteSpace]) -> PhiScottReport:
    """If Phi_n is Scott continuous, t_{F_n}(Scott) must be A-splitting for each Z."""
    lvl = chain.level(n)
    scott = scott_topology(inclusion_poset(lvl.carrier))
    if chain.tau(n).opens != scott.opens:
        raise ValueError(f"tau_{n} is not the Scott topology of its carrier")
    phi_sc = is_scott_continuous(lvl.values, inclusion_poset(chain.base.opens), inclusion_poset(lvl.carrier))
    verdicts = tuple(
        (Z.name or repr(Z), is_A_splitting(build_family_open_topology(chain, n, Z), catalog))
        for Z in codomains
    )
    return PhiScottReport(phi_sc, verdicts)


def all_function_space_topologies(Y: FiniteSpace, Z: FiniteSpace) -> list[FunctionSpaceTopology]:
    maps = tuple(enumerate_continuous_maps(Y, Z))
    guards.check("max_function_space", len(maps))
    carrier = tuple(range(len(maps)))
    return [
        FunctionSpaceTopology(Y, Z, maps, SetFamilyTopology(carrier, opens))
        for opens in labeled_topologies(len(maps))
    ]


def greatest_splitting_bruteforce(Y: FiniteSpace, Z: FiniteSpace, catalog: ProbeCatalog) -> FunctionSpaceTopology:
    """Join of every A-splitting topology on C(Y, Z), checked to be A-splitting."""
    candidates = all_function_space_topologies(Y, Z)
    splitting = [t for t in candidates if is_A_splitting(t, catalog).verdict]
    maps = candidates[0].maps
    join = generate_topology(range(len(maps)), {o for t in splitting for o in t.opens}, "greatest-splitting")
    result = FunctionSpaceTopology(Y, Z, maps, join)
    if not is_A_splitting(result, catalog).verdict:
        raise InternalAxiomFailure("join of splitting topologies is not splitting")
    if not all(set(t.opens) <= join.open_set for t in splitting):
        raise InternalAxiomFailure("join misses a splitting topology")
    return result
