"""Topologies on C(Y, Z) beyond the family-open ones, and the maps h_n."""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from . import bits
from .errors import NotOpen, NotT0, WrongCodomain
from .family_open import LevelChain, build_family_open_topology
from .finite_space import (
    FiniteSpace,
    FunctionSpaceTopology,
    PointMap,
    SetFamilyTopology,
    enumerate_continuous_maps,
    is_sierpinski,
    is_T0,
    sierpinski,
)
from .topology_algebra import (
    discrete_topology,
    generate_topology,
    inclusion_poset,
    indiscrete_topology,
    scott_topology,
    topology_on,
)


def characteristic_map(Y: FiniteSpace, U: int) -> PointMap:
    """X_U : Y -> S, sending U to 1 and the rest to 0."""
    if not Y.is_open(U):
        raise NotOpen(f"{U:#b} is not open in {Y!r}")
    return PointMap(Y, sierpinski(), tuple(U >> i & 1 for i in range(Y.size)))


def function_space(Y: FiniteSpace, Z: FiniteSpace, opens: Iterable, name: str = "") -> FunctionSpaceTopology:
    """C(Y, Z) with a caller-supplied topology over map indices."""
    maps = tuple(enumerate_continuous_maps(Y, Z))
    return FunctionSpaceTopology(Y, Z, maps, topology_on(range(len(maps)), opens, name))


def discrete_function_space(Y: FiniteSpace, Z: FiniteSpace) -> FunctionSpaceTopology:
    maps = tuple(enumerate_continuous_maps(Y, Z))
    return FunctionSpaceTopology(Y, Z, maps, discrete_topology(range(len(maps))))


def indiscrete_function_space(Y: FiniteSpace, Z: FiniteSpace) -> FunctionSpaceTopology:
    maps = tuple(enumerate_continuous_maps(Y, Z))
    return FunctionSpaceTopology(Y, Z, maps, indiscrete_topology(range(len(maps))))


def scott_on_opens(Y: FiniteSpace) -> SetFamilyTopology:
    """Scott topology of (O(Y), inclusion), carrier ids = canonical open indices."""
    sc = scott_topology(inclusion_poset(Y.opens))
    return SetFamilyTopology(tuple(range(len(Y.opens))), sc.opens, "scott")


def isbell_topology(Y: FiniteSpace, Z: FiniteSpace) -> FunctionSpaceTopology:
    """Generated by (H, U) = {f : f^-1(U) in H}, H Scott-open in O(Y), U open in Z."""
    maps = tuple(enumerate_continuous_maps(Y, Z))
    scott = scott_on_opens(Y).opens
    oi = Y.open_index
    sub = set()
    for U in Z.opens:
        pre = [oi[f.preimage(U)] for f in maps]
        for H in scott:
            sub.add(bits.mask_of(i for i, k in enumerate(pre) if H >> k & 1))
    top = generate_topology(range(len(maps)), sub, "isbell")
    return FunctionSpaceTopology(Y, Z, maps, top)


def h_map(chain: LevelChain, n: int, maps: Sequence[PointMap] | None = None) -> tuple[int, ...]:
    """h_n(f) = O^n(f^-1({1})) as carrier ids, for f running over C(Y, S)."""
    if maps is None:
        maps = enumerate_continuous_maps(chain.base, sierpinski())
    for f in maps:
        if not is_sierpinski(f.target):
            raise WrongCodomain("h_n is defined on C(Y, S) only")
    return tuple(chain.value_of(n, f.preimage(0b10)) for f in maps)


@dataclasses.dataclass(frozen=True)
class HReport:
    continuous: bool
    open: bool
    onto: bool
    injective: bool

    @property
    def homeomorphism(self) -> bool:
        return self.continuous and self.open and self.onto and self.injective


def _image(h: Sequence[int], mask: int) -> int:
    return bits.mask_of(h[i] for i in bits.members(mask))


def check_h_properties(chain: LevelChain, n: int) -> HReport:
    """Exhaustive check of h_n : C_{t_{F_n}(tau_n)}(Y, S) -> (carrier_n, tau_n)."""
    S = sierpinski()
    fs = build_family_open_topology(chain, n, S)
    tau = chain.tau(n)
    h = h_map(chain, n, fs.maps)
    k = chain.level(n).size
    cont = all(
        fs.topology.is_open(bits.mask_of(i for i, c in enumerate(h) if H >> c & 1))
        for H in tau.opens
    )
    is_open_map = all(tau.is_open(_image(h, W)) for W in fs.opens)
    onto = set(h) == set(range(k))
    injective = len(set(h)) == len(h)
    return HReport(cont, is_open_map, onto, injective)


def _pushforward(chain: LevelChain, i: int) -> SetFamilyTopology:
    """Image of tau_i under the carrier map O^i(U) -> O^{i+1}(U)."""
    lo, hi = chain.level(i), chain.level(i + 1)
    step = {}
    for a, b in zip(lo.values, hi.values):
        step.setdefault(a, b)
    opens = {bits.mask_of(step[c] for c in bits.members(H)) for H in lo.tau.opens}
    return topology_on(range(hi.size), opens, f"tau{i + 1}")


def t0_chain_build(Y: FiniteSpace, tau0, depth: int,
                   taus: Sequence | None = None) -> LevelChain:
    """Chain with F_{i+1} = tau_i for i < depth.

    tau_i for i >= 1 is the pushforward of tau_{i-1} along O^{i-1}(U) -> O^i(U)
    unless ``taus[i-1]`` supplies it.  Every tau_i is checked to be T0;
    NotT0(i) names the first failing level.
    """
    chain = LevelChain.start(Y, tau0)
    if chain.levels[0].tau is None:
        raise ValueError("tau0 is required")
    if not is_T0(chain.tau(0)):
        raise NotT0(0)
    for i in range(depth):
        chain = chain.extend(chain.tau(i).opens)
        if taus is not None and i < len(taus) and taus[i] is not None:
            chain = chain.with_tau(i + 1, taus[i])
        else:
            chain = chain.with_tau(i + 1, _pushforward(chain, i))
        if not is_T0(chain.tau(i + 1)):
            raise NotT0(i + 1)
    return chain
