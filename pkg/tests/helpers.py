"""Generators for random spaces, posets and chains, and CLI helpers."""

from __future__ import annotations

import random
import subprocess
import sys
from pathlib import Path

from famtop import bits
from famtop.family_open import LevelChain
from famtop.finite_space import FiniteSpace, labeled_topologies
from famtop.topology_algebra import Poset, generate_topology

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "famtop", *args], capture_output=True, text=True, cwd=ROOT
    )


def machine_records(stdout: str) -> dict[str, str]:
    out = {}
    for line in stdout.splitlines():
        key, _, value = line.partition("=")
        out[key] = value
    return out


def all_spaces(max_points: int) -> list[FiniteSpace]:
    return [
        FiniteSpace(tuple("abcdef"[:k]), t, f"Y{k}.{j}")
        for k in range(1, max_points + 1)
        for j, t in enumerate(labeled_topologies(k))
    ]


def random_space(rng: random.Random, max_points: int = 3) -> FiniteSpace:
    k = rng.randint(1, max_points)
    return FiniteSpace(tuple("abcdef"[:k]), rng.choice(labeled_topologies(k)))


def random_topology_opens(rng: random.Random, k: int, max_gens: int = 3) -> tuple[int, ...]:
    gens = [rng.randrange(1 << k) for _ in range(rng.randint(0, max_gens))]
    return generate_topology(range(k), gens).opens


def random_family(rng: random.Random, k: int, max_size: int = 4) -> list[int]:
    return [rng.randrange(1 << k) for _ in range(rng.randint(0, max_size))]


def random_chain(rng: random.Random, levels: int = 1, max_points: int = 3) -> LevelChain:
    """Random families and random topologies on every level >= 1."""
    Y = random_space(rng, max_points)
    chain = LevelChain.start(Y)
    for _ in range(levels):
        k = chain.levels[-1].size
        chain = chain.extend(random_family(rng, k))
        chain = chain.with_tau(chain.depth, random_topology_opens(rng, chain.levels[-1].size))
    return chain


def naturally_labeled_posets(n: int):
    """Posets on 0..n-1 in which i <= j implies i <= j as integers.

    Every finite poset is isomorphic to one of these.
    """
    def rec(k: int, downs: list[int]):
        if k == n:
            ups = [bits.mask_of(j for j in range(n) if downs[j] >> i & 1) for i in range(n)]
            yield Poset(tuple(range(n)), tuple(ups))
            return
        for D in range(1 << k):
            if all(bits.is_subset(downs[i], D) for i in bits.members(D)):
                yield from rec(k + 1, downs + [D | 1 << k])

    yield from rec(0, [])
