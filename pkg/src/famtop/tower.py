"""The induced tower tau_n -> tau_{n+1} and the stabilization search."""

from __future__ import annotations

import dataclasses

from . import guards
from .errors import InternalAxiomFailure, TopologyAxiomError
from .family_open import LevelChain, build_family_open_topology
from .finite_space import FiniteSpace, FunctionSpaceTopology, SetFamilyTopology, check_axioms, sierpinski
from .topology_algebra import inclusion_poset, scott_topology

RULES = ("power-set", "scott-opens", "tau-itself")


def _comprehension(chain: LevelChain, n: int, H: int, indexing: str) -> int:
    lo, hi = chain.level(n), chain.level(n + 1)
    out = 0
    if indexing == "opens":
        # {O^n(U) : O^{n+1}(U) in H}, U over every open of Y
        for a, b in zip(lo.values, hi.values):
            if H >> b & 1:
                out |= 1 << a
    elif indexing == "carrier":
        # carrier_n elements c with step(c) in H, step(O^n(U)) = O^{n+1}(U)
        step = dict(zip(lo.values, hi.values))
        for c in range(lo.size):
            if H >> step[c] & 1:
                out |= 1 << c
    else:
        raise ValueError(f"unknown indexing {indexing!r}")
    return out


def induced_next_topology(chain: LevelChain, n: int, indexing: str = "opens") -> SetFamilyTopology:
    """tau_{n+1}: H is open iff its comprehension back at level n is in tau_n.

    ``indexing="carrier"`` runs the comprehension over carrier_n elements
    instead of the opens of Y, for comparison.
    """
    tau = chain.tau(n)
    k = chain.level(n + 1).size
    guards.check("max_family", 1 << k)
    opens = tuple(H for H in range(1 << k) if tau.is_open(_comprehension(chain, n, H, indexing)))
    try:
        check_axioms(k, opens)
    except TopologyAxiomError as exc:
        raise InternalAxiomFailure(f"induced family at level {n + 1} is not a topology: {exc}") from exc
    return SetFamilyTopology(tuple(range(k)), opens, f"tau{n + 1}")


def with_induced(chain: LevelChain, n: int) -> LevelChain:
    """The chain with tau_{n+1} replaced by the induced topology."""
    return chain.with_tau(n + 1, induced_next_topology(chain, n))


@dataclasses.dataclass(frozen=True)
class ContainmentReport:
    contained: bool
    witness: int | None = None


def tower_containment(chain: LevelChain, n: int, Z: FiniteSpace | None = None) -> ContainmentReport:
    """Is t_{F_{n+1}}(tau_{n+1}) a subset of t_{F_n}(tau_n)?

    A single built stage (n is the top level) is vacuously contained.
    """
    if n >= chain.depth:
        return ContainmentReport(True)
    Z = Z if Z is not None else sierpinski()
    lower = build_family_open_topology(chain, n, Z)
    upper = build_family_open_topology(chain, n + 1, Z, lower.maps)
    for W in upper.opens:
        if not lower.topology.is_open(W):
            return ContainmentReport(False, W)
    return ContainmentReport(True)


def next_family(chain: LevelChain, rule: str) -> tuple[int, ...]:
    top = chain.levels[-1]
    k = top.size
    if rule == "power-set":
        guards.check("max_family", 1 << k)
        return tuple(range(1 << k))
    if rule == "scott-opens":
        return scott_topology(inclusion_poset(top.carrier)).opens
    if rule == "tau-itself":
        return chain.tau(top.index).opens
    raise ValueError(f"unknown family rule {rule!r}; expected one of {RULES}")


def extend_by_rule(chain: LevelChain, rule: str) -> LevelChain:
    n = chain.depth
    return with_induced(chain.extend(next_family(chain, rule)), n)


@dataclasses.dataclass(frozen=True)
class StabilizationResult:
    depth: int | None
    stages: tuple[FunctionSpaceTopology, ...]
    chain: LevelChain


def stabilization_search(seed: LevelChain, rule: str, max_depth: int,
                         Z: FiniteSpace | None = None) -> StabilizationResult:
    """Smallest n <= max_depth (n >= 1) with t_n = t_{n+1} = t_{n+2}, else None.

    Seed levels after 0 without a topology get the induced one; further levels
    come from ``rule``.  ``stages[i]`` is t at level i + 1.
    """
    if rule not in RULES:
        raise ValueError(f"unknown family rule {rule!r}; expected one of {RULES}")
    Z = Z if Z is not None else sierpinski()
    chain = seed
    if chain.levels[0].tau is None and chain.depth == 0:
        raise ValueError("seed needs a topology on its top level")
    for n in range(1, chain.depth + 1):
        if chain.level(n).tau is None:
            chain = with_induced(chain, n - 1)
    chain.tau(chain.depth)
    if max_depth < 1:
        return StabilizationResult(None, (), chain)
    while chain.depth < max_depth + 2:
        chain = extend_by_rule(chain, rule)
    stages: list[FunctionSpaceTopology] = []
    maps = None
    for n in range(1, max_depth + 3):
        t = build_family_open_topology(chain, n, Z, maps)
        maps = t.maps
        stages.append(t)
    for n in range(1, max_depth + 1):
        a, b, c = stages[n - 1], stages[n], stages[n + 1]
        if a.opens == b.opens == c.opens:
            return StabilizationResult(n, tuple(stages), chain)
    return StabilizationResult(None, tuple(stages), chain)
