import itertools

import pytest

from famtop.errors import NotContinuous
from famtop.family_open import LevelChain, build_family_open_topology
from famtop.finite_space import (
    FiniteSpace,
    FunctionSpaceTopology,
    PointMap,
    SetFamilyTopology,
    chain_space,
    enumerate_continuous_maps,
    enumerate_probe_catalog,
    labeled_topologies,
    point_space,
    product_space,
    sierpinski,
)
from famtop.function_space import discrete_function_space, indiscrete_function_space, isbell_topology
from famtop.verification import (
    Witness,
    all_function_space_topologies,
    check_jointly_characterization,
    check_phi_scott_implies_splitting,
    check_splitting_characterization,
    f_bar,
    f_hat,
    f_star,
    first_variable_continuous,
    g_bar,
    g_tilde,
    greatest_splitting_bruteforce,
    is_A_jointly_continuous,
    is_A_splitting,
)

from tests.helpers import random_chain

Y2 = FiniteSpace(("a", "b"), (0, 1, 3), "Y")
Y3 = FiniteSpace(("a", "b", "c"), (0, 1, 2, 3, 7), "Y")
S = sierpinski()
CAT2 = enumerate_probe_catalog(2)
CAT3 = enumerate_probe_catalog(3)


def preimage_is_open(points, opens, table, target_open):
    """Literal check with plain Python sets, sharing nothing with the library."""
    pre = frozenset(p for p, v in zip(points, table) if v in target_open)
    return pre in opens


def independently_discontinuous(witness: Witness, t: FunctionSpaceTopology, kind: str) -> bool:
    X = witness.space
    x_opens = {frozenset(X.points[i] for i in range(X.size) if o >> i & 1) for o in X.opens}
    if kind == "splitting":
        F = witness.mapping
        slices = [F.table[i * t.Y.size:(i + 1) * t.Y.size] for i in range(X.size)]
        hat = [next(j for j, g in enumerate(t.maps) if tuple(g.table) == tuple(s)) for s in slices]
        W = frozenset(j for j in range(len(t.maps)) if witness.open_set >> j & 1)
        in_pre = hat[X.points.index(witness.point)] in W
        return in_pre and not preimage_is_open(X.points, x_opens, hat, W)
    G = witness.mapping
    P = [(x, y) for x in X.points for y in t.Y.points]
    y_opens = [frozenset(t.Y.points[i] for i in range(t.Y.size) if o >> i & 1) for o in t.Y.opens]
    rects = [frozenset((x, y) for x in A for y in B) for A in x_opens for B in y_opens]
    p_opens = {frozenset().union(*c) for r in range(len(rects) + 1) for c in itertools.combinations(rects, r)}
    table = [G[X.points.index(x)].table[t.Y.points.index(y)] for x, y in P]
    V = frozenset(i for i in range(t.Z.size) if witness.open_set >> i & 1)
    return not preimage_is_open(P, p_opens, table, V)


def test_curry_round_trip():
    for X in CAT2:
        for F in enumerate_continuous_maps(product_space(X, Y2), S):
            assert g_tilde(f_hat(F, X, Y2), X, Y2) == F


def test_f_hat_rejects_discontinuous_maps():
    X = S
    bad = PointMap(product_space(X, Y2), S, (1, 0, 0, 0))
    with pytest.raises(NotContinuous):
        f_hat(bad, X, Y2)


def test_f_bar_is_phi_after_f_star():
    chain = LevelChain.start(Y3).extend([0b1010, 0b1100]).with_tau(1, [0, 0b1010, 0b1111])
    vals = chain.level(1).values
    for F in enumerate_continuous_maps(product_space(S, Y3), S):
        star = f_star(F, S, Y3)
        bar = f_bar(chain, 1, F, S)
        assert bar.values == tuple(tuple(vals[u] for u in row) for row in star.values)


def test_g_bar_matches_f_bar_on_continuous_maps():
    chain = LevelChain.start(Y2).extend([0b110, 0b100]).with_tau(1, [0, 0b1, 0b11, 0b111])
    for F in enumerate_continuous_maps(product_space(S, Y2), S):
        assert g_bar(chain, 1, f_hat(F, S, Y2), S) == f_bar(chain, 1, F, S)


def test_first_variable_continuity_against_indiscrete():
    chain = LevelChain.start(Y2).extend([0b110]).with_tau(1, [0, 0b11])
    for F in enumerate_continuous_maps(product_space(S, Y2), S):
        assert first_variable_continuous(f_bar(chain, 1, F, S), chain.tau(1))


@pytest.mark.parametrize("Z", [S, chain_space(3)])
def test_isbell_is_splitting_and_jointly_continuous(Z):
    t = isbell_topology(Y3, Z)
    assert is_A_splitting(t, CAT3).verdict
    assert is_A_jointly_continuous(t, CAT3).verdict


def test_indiscrete_and_discrete_examples():
    ind = indiscrete_function_space(Y2, S)
    assert is_A_splitting(ind, CAT3).verdict
    rep = is_A_jointly_continuous(ind, CAT2)
    assert not rep.verdict
    assert independently_discontinuous(rep.witness, ind, "jointly")
    dis = discrete_function_space(Y2, S)
    assert is_A_jointly_continuous(dis, CAT3).verdict
    rep = is_A_splitting(dis, CAT2)
    assert not rep.verdict
    assert independently_discontinuous(rep.witness, dis, "splitting")


def test_every_false_verdict_has_a_sound_witness():
    for t in all_function_space_topologies(Y2, S):
        for kind, fn in (("splitting", is_A_splitting), ("jointly", is_A_jointly_continuous)):
            rep = fn(t, CAT2)
            if not rep.verdict:
                assert rep.witness is not None
                assert independently_discontinuous(rep.witness, t, kind)


def test_catalog_monotonicity():
    small = enumerate_probe_catalog(1)
    for t in all_function_space_topologies(Y2, S):
        for fn in (is_A_splitting, is_A_jointly_continuous):
            verdicts = [fn(t, c).verdict for c in (small, CAT2, CAT3)]
            assert verdicts == sorted(verdicts, reverse=True)


def test_characterizations_on_example_chains():
    chains = [
        LevelChain.start(Y3).extend([0b11111]).with_tau(1, [0, 1]),
        LevelChain.start(Y3).extend([0b1010, 0b1100]).with_tau(1, [0, 0b1010, 0b1111]),
        LevelChain.start(Y3).extend([0b1010, 0b1100]).with_tau(1, [0, 0b1100, 0b1111]),
    ]
    for chain in chains:
        for Z in (S, chain_space(3)):
            assert check_splitting_characterization(chain, 1, CAT3, Z).agree
            assert check_jointly_characterization(chain, 1, CAT2, Z).agree


def test_characterizations_on_random_chains(rng):
    for _ in range(20):
        chain = random_chain(rng)
        assert check_splitting_characterization(chain, 1, CAT2, S).agree
        assert check_jointly_characterization(chain, 1, CAT2, S).agree


def test_phi_scott_implication():
    from famtop.topology_algebra import inclusion_poset, scott_topology

    chain = LevelChain.start(Y3).extend([0b11000, 0b10000])
    sc = scott_topology(inclusion_poset(chain.level(1).carrier))
    chain = chain.with_tau(1, sc)
    rep = check_phi_scott_implies_splitting(chain, 1, CAT3, [S, chain_space(3), point_space()])
    assert rep.phi_scott_continuous and rep.holds
    with pytest.raises(ValueError):
        check_phi_scott_implies_splitting(chain.with_tau(1, (0, 0b11)), 1, CAT3, [S])


def test_greatest_splitting_small_cases():
    Y = point_space()
    g = greatest_splitting_bruteforce(Y, S, CAT2)
    assert g.opens == isbell_topology(Y, S).opens
    g = greatest_splitting_bruteforce(Y, point_space(), CAT2)
    assert g.opens == (0, 1)


def test_closure_laws_and_ordering_law():
    cands = all_function_space_topologies(Y2, S)
    split = {t.opens: is_A_splitting(t, CAT3).verdict for t in cands}
    joint = {t.opens: is_A_jointly_continuous(t, CAT3).verdict for t in cands}
    for a, b in itertools.product(cands, repeat=2):
        if set(a.opens) <= set(b.opens):
            assert not split[b.opens] or split[a.opens]
            assert not joint[a.opens] or joint[b.opens]
        if split[a.opens] and joint[b.opens]:
            assert set(a.opens) <= set(b.opens)


def test_function_space_topology_count():
    assert len(all_function_space_topologies(Y2, S)) == len(labeled_topologies(3)) == 29
    t = all_function_space_topologies(Y2, S)[0]
    assert isinstance(t.topology, SetFamilyTopology)


def test_family_open_from_scott_families_is_splitting():
    from famtop.topology_algebra import inclusion_poset, scott_topology

    sc0 = scott_topology(inclusion_poset(Y2.opens)).opens
    for r in range(len(sc0) + 1):
        for fam in itertools.combinations(sc0, r):
            chain = LevelChain.start(Y2).extend(fam)
            chain = chain.with_tau(1, scott_topology(inclusion_poset(chain.level(1).carrier)))
            assert is_A_splitting(build_family_open_topology(chain, 1, S), CAT3).verdict
