"""Acceptance criteria.  Each test is one criterion; the summary prints PASS/FAIL per line.

The worked examples are run through the command-line interface on the files
in ``fixtures/``.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from famtop import bits
from famtop.cli import main
from famtop.family_open import LevelChain, build_family_open_topology, phi
from famtop.finite_space import (
    FiniteSpace,
    chain_space,
    check_axioms,
    enumerate_probe_catalog,
    is_corecompact,
    is_T0,
    point_space,
    sierpinski,
)
from famtop.function_space import check_h_properties, isbell_topology, scott_on_opens, t0_chain_build
from famtop.topology_algebra import (
    fixpoint_closure,
    generate_topology,
    inclusion_poset,
    scott_open_sets_literal,
    scott_topology,
)
from famtop.tower import induced_next_topology, tower_containment, with_induced
from famtop.verification import (
    all_function_space_topologies,
    check_jointly_characterization,
    check_splitting_characterization,
    greatest_splitting_bruteforce,
    is_A_jointly_continuous,
    is_A_splitting,
)

from tests.helpers import FIXTURES, all_spaces, naturally_labeled_posets, random_family, random_space

EX1 = str(FIXTURES / "three_point_chains.txt")
EX2 = str(FIXTURES / "two_point_power_set.txt")
S = sierpinski()
CHAIN3 = chain_space(3)


def items(s: str) -> list[str]:
    """Top-level comma-separated items of a braced report value."""
    assert s[0] == "{" and s[-1] == "}", s
    out, depth, cur = [], 0, ""
    for ch in s[1:-1]:
        depth += ch == "{"
        depth -= ch == "}"
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def family(s: str) -> set[frozenset[str]]:
    return {frozenset(items(o)) for o in items(s)}


def cli(tmp_path, *args: str) -> dict[str, str]:
    out = tmp_path / f"report{len(list(tmp_path.iterdir()))}.txt"
    code = main([*args, "--format", "machine", "--output", str(out)])
    assert code == 0, (args, code)
    return dict(line.split("=", 1) for line in out.read_text().splitlines())


def fs(*opens) -> set[frozenset[str]]:
    return {frozenset(o) for o in opens}


@pytest.mark.criterion("three-point worked example: four family-open topologies")
def test_three_point_example(tmp_path):
    start = time.perf_counter()
    C = ("X{}", "X{a}", "X{b}", "X{a,b}", "X{a,b,c}")
    runs = {
        ("F1", "1"): fs((), C),
        ("F1p", "1"): fs((), ("X{a}", "X{a,b}"), C),
        ("F1pp", "1"): fs((), ("X{b}", "X{a,b}"), C),
        ("F1p", "2"): fs((), ("X{a,b}",), C),
    }
    for (chain, level), expected in runs.items():
        rep = cli(tmp_path, "family-open", EX1, "--chain", chain, "--level", level)
        assert set(rep["t.maps"].split()) == set(C)
        assert family(rep["t.opens"]) == expected
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion("two-point worked example: Scott, Isbell and the power-set family")
def test_two_point_example(tmp_path):
    start = time.perf_counter()
    rep = cli(tmp_path, "scott", EX2)
    assert family(rep["scott.opens"]) == fs((), ("{a,b}",), ("{a}", "{a,b}"), ("{}", "{a}", "{a,b}"))
    rep = cli(tmp_path, "isbell", EX2)
    C = ("X{}", "X{a}", "X{a,b}")
    assert family(rep["isbell.opens"]) == fs((), ("X{a,b}",), ("X{a}", "X{a,b}"), C)
    rep = cli(tmp_path, "family-open", EX2, "--level", "1")
    # level-0 ids: 0 = empty, 1 = {a}, 2 = Y; O^1(U) = all subfamilies containing U
    for label, k in (("{}", 0), ("{a}", 1), ("{a,b}", 2)):
        expected = {frozenset(str(i) for i in s)
                    for r in range(4) for s in itertools.combinations(range(3), r) if k in s}
        assert family(rep[f"O[{label}]"]) == expected
    assert rep["carrier_size"] == "3"
    every_subset = {frozenset(str(i) for i in s) for r in range(4) for s in itertools.combinations(range(3), r)}
    assert family(rep["tau"]) == every_subset  # Scott on the carrier is discrete
    assert rep["t.open_count"] == "8"
    assert family(rep["t.opens"]) == {frozenset(s) for r in range(4) for s in itertools.combinations(C, r)}
    assert time.perf_counter() - start < 1.0


def random_two_level_chain(rng: random.Random) -> LevelChain:
    Y = random_space(rng, 3)
    chain = LevelChain.start(Y).extend(random_family(rng, len(Y.opens), 5))
    k1 = chain.level(1).size
    chain = chain.with_tau(1, generate_topology(range(k1), random_family(rng, k1, 3)))
    chain = chain.extend(random_family(rng, k1, 5))
    return with_induced(chain, 1)


TOWER_CASES = 200


@pytest.mark.criterion("induced tower: topology axioms and containment on 200 random chains")
def test_induced_tower_suite():
    rng = random.Random(31)
    start = time.perf_counter()
    for _ in range(TOWER_CASES):
        chain = random_two_level_chain(rng)
        tau2 = chain.tau(2)
        check_axioms(chain.level(2).size, tau2.opens)
        assert induced_next_topology(chain, 1, "carrier") == tau2
        for Z in (S, CHAIN3):
            assert tower_containment(chain, 1, Z).contained
    assert time.perf_counter() - start < 120


def t0_topologies_on_opens(Y: FiniteSpace, rng: random.Random, wanted: int) -> list:
    k = len(Y.opens)
    found = {tuple(range(1 << k)), scott_on_opens(Y).opens}
    for _ in range(200):
        if len(found) >= wanted:
            break
        t = generate_topology(range(k), random_family(rng, k, 5))
        if is_T0(t):
            found.add(t.opens)
    return sorted(found)


@pytest.mark.criterion("h maps continuous, open and onto; T0 towers give homeomorphisms")
def test_h_map_suite():
    rng = random.Random(32)
    start = time.perf_counter()
    for _ in range(TOWER_CASES):
        chain = random_two_level_chain(rng)
        for n in (1, 2):
            rep = check_h_properties(chain, n)
            assert rep.continuous and rep.open and rep.onto
            if phi(chain, n).injective:
                assert rep.homeomorphism
    cases = 0
    for Y in all_spaces(3):
        for tau0 in t0_topologies_on_opens(Y, rng, 3):
            chain = t0_chain_build(Y, tau0, 2)
            for n in (1, 2):
                assert phi(chain, n).injective
                assert check_h_properties(chain, n).homeomorphism
            cases += 1
    assert cases >= 50
    assert time.perf_counter() - start < 120


@pytest.mark.criterion("splitting and joint-continuity characterizations agree (100+ each)")
def test_characterization_equivalences():
    rng = random.Random(33)
    catalog = enumerate_probe_catalog(3)
    start = time.perf_counter()
    configs = 0
    for i in range(120):
        Z = S if i % 2 == 0 else CHAIN3
        chain = random_two_level_chain(rng)
        n = 1 if i % 3 else 2
        assert check_splitting_characterization(chain, n, catalog, Z).agree
        assert check_jointly_characterization(chain, n, catalog, Z).agree
        configs += 1
    assert configs >= 100
    assert time.perf_counter() - start < 600


def scott_family_chain(rng: random.Random, depth: int) -> LevelChain:
    chain = LevelChain.start(random_space(rng, 3))
    for _ in range(depth):
        sc = scott_topology(inclusion_poset(chain.levels[-1].carrier)).opens
        chain = chain.extend(rng.sample(sc, rng.randint(0, min(len(sc), 6))))
    return chain


@pytest.mark.criterion("monotone levels and finite-union law under Scott-open families (100+ chains)")
def test_scott_family_laws():
    rng = random.Random(34)
    for _ in range(120):
        chain = scott_family_chain(rng, 3)
        Y = chain.base
        for n in range(chain.depth):
            lo, hi = chain.level(n), chain.level(n + 1)
            sc = scott_topology(inclusion_poset(lo.carrier)).open_set
            assert all(m in sc for m in hi.family)  # hypothesis holds
            for a, b in itertools.product(range(len(Y.opens)), repeat=2):
                if bits.is_subset(lo.carrier[lo.values[a]], lo.carrier[lo.values[b]]):
                    assert bits.is_subset(hi.carrier[hi.values[a]], hi.carrier[hi.values[b]])
        for n in range(chain.depth + 1):
            lvl = chain.level(n)
            for a, b in itertools.product(range(len(Y.opens)), repeat=2):
                if bits.is_subset(Y.opens[a], Y.opens[b]):
                    assert bits.is_subset(lvl.carrier[lvl.values[a]], lvl.carrier[lvl.values[b]])
        lvl = chain.level(1)

        def o1(U: int) -> int:
            return lvl.carrier[chain.value_of(1, U)]

        for r in range(5):
            for A in itertools.combinations(Y.opens, r):
                union_all = 0
                for V in A:
                    union_all |= V
                rhs = 0
                for s in range(len(A) + 1):
                    for lam in itertools.combinations(A, s):
                        u = 0
                        for V in lam:
                            u |= V
                        rhs |= o1(u)
                assert o1(union_all) == rhs


@pytest.mark.criterion("Scott-open families with Scott topology give splitting topologies")
def test_scott_families_split():
    rng = random.Random(35)
    catalog = enumerate_probe_catalog(3)
    checked = 0
    for Y in all_spaces(3):
        sc = scott_topology(inclusion_poset(Y.opens)).opens
        if 1 << len(sc) <= 100:
            fams = [tuple(sc[i] for i in bits.members(m)) for m in range(1 << len(sc))]
        else:
            picks = set()
            while len(picks) < 100:
                picks.add(rng.randrange(1 << len(sc)))
            fams = [tuple(sc[i] for i in bits.members(m)) for m in sorted(picks)]
        for fam in fams:
            chain = LevelChain.start(Y).extend(fam)
            chain = chain.with_tau(1, scott_topology(inclusion_poset(chain.level(1).carrier)))
            for Z in (S, CHAIN3):
                assert is_A_splitting(build_family_open_topology(chain, 1, Z), catalog).verdict
                checked += 1
    assert checked > 1000


@pytest.mark.criterion("Isbell splitting and jointly continuous; closure and ordering laws")
def test_known_results_at_catalog_scale(tmp_path):
    start = time.perf_counter()
    catalog = enumerate_probe_catalog(3)
    for Y in all_spaces(3):
        assert is_corecompact(Y)
        for Z in (S, CHAIN3, point_space()):
            t = isbell_topology(Y, Z)
            assert is_A_splitting(t, catalog).verdict
            assert is_A_jointly_continuous(t, catalog).verdict
    rep = cli(tmp_path, "verify-jointly", EX2, "--isbell")
    assert rep["jointly.verdict"] == "true"

    Y2 = FiniteSpace(("a", "b"), (0, 1, 3))
    cands = all_function_space_topologies(Y2, S)
    assert len(cands) == 29
    size_matched = enumerate_probe_catalog(len(cands[0].maps))
    split = {t.opens: is_A_splitting(t, size_matched).verdict for t in cands}
    joint = {t.opens: is_A_jointly_continuous(t, size_matched).verdict for t in cands}
    for a, b in itertools.product(cands, repeat=2):
        if a.topology.open_set <= b.topology.open_set:
            assert split[a.opens] or not split[b.opens]
            assert joint[b.opens] or not joint[a.opens]
        if split[a.opens] and joint[b.opens]:
            assert a.topology.open_set <= b.topology.open_set
    assert time.perf_counter() - start < 600


@pytest.mark.criterion("greatest splitting topology on the two-point example equals Isbell")
def test_greatest_splitting(tmp_path):
    start = time.perf_counter()
    greatest = cli(tmp_path, "greatest-splitting", EX2)
    isbell = cli(tmp_path, "isbell", EX2)
    assert family(greatest["greatest.opens"]) == family(isbell["isbell.opens"])
    assert greatest["equals_isbell"] == "true"
    Y2 = FiniteSpace(("a", "b"), (0, 1, 3))
    assert len(all_function_space_topologies(Y2, S)) == 29
    g = greatest_splitting_bruteforce(Y2, S, enumerate_probe_catalog(3))
    assert g.opens == isbell_topology(Y2, S).opens
    assert time.perf_counter() - start < 60


def brute_force_topology_count(n: int) -> int:
    subsets = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]
    full = frozenset(range(n))
    count = 0
    for r in range(len(subsets) + 1):
        for fam in itertools.combinations(subsets, r):
            s = set(fam)
            if frozenset() in s and full in s and all(a | b in s and a & b in s for a in fam for b in fam):
                count += 1
    return count


@pytest.mark.criterion("oracle equivalences: Scott, generated topologies, catalog counts")
def test_oracle_equivalences():
    for n in range(7):
        for P in naturally_labeled_posets(n):
            assert scott_topology(P).opens == scott_open_sets_literal(P)
    rng = random.Random(36)
    for _ in range(300):
        k = rng.randint(0, 6)
        gens = random_family(rng, k, 6)
        assert generate_topology(range(k), gens).opens == fixpoint_closure(range(k), gens)
    counts = enumerate_probe_catalog(3).counts
    assert counts == ((1, 1), (2, 4), (3, 29))
    assert [brute_force_topology_count(n) for n in (1, 2, 3)] == [c for _, c in counts]
