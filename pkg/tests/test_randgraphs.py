"""Random model tests: determinism, distribution moments, pairing projection."""

import math

import pytest

from sizeramsey import (
    Graph,
    RandomSource,
    SamplingError,
    bipartite_gnp,
    gnp,
    project,
    random_pairing,
    random_regular,
    two_round_union,
)


def canonical_matching(pairing):
    return frozenset(frozenset(p) for p in pairing.pairs)


def test_substreams_are_reproducible_and_distinct():
    a = RandomSource(123)
    b = RandomSource(123)
    assert list(a.gen.integers(0, 1000, 5)) == list(b.gen.integers(0, 1000, 5))
    s0 = RandomSource(123).substream(0)
    s1 = RandomSource(123).substream(1)
    assert list(s0.gen.integers(0, 1000, 5)) != list(s1.gen.integers(0, 1000, 5))
    again = RandomSource(123).substream(0)
    assert list(again.gen.integers(0, 1000, 5)) == list(RandomSource(123).substream(0).gen.integers(0, 1000, 5))


def test_every_generator_is_seed_deterministic():
    assert gnp(40, 0.3, RandomSource(9)) == gnp(40, 0.3, RandomSource(9))
    assert (bipartite_gnp(15, 20, 0.4, RandomSource(9)).graph
            == bipartite_gnp(15, 20, 0.4, RandomSource(9)).graph)
    assert (random_pairing(10, 3, RandomSource(9)).pairs
            == random_pairing(10, 3, RandomSource(9)).pairs)
    assert random_regular(12, 3, RandomSource(9)) == random_regular(12, 3, RandomSource(9))


def test_gnp_extremes():
    assert gnp(6, 0.0, RandomSource(1)).m == 0
    assert gnp(6, 1.0, RandomSource(1)) == Graph.complete(6)
    with pytest.raises(ValueError):
        gnp(6, 1.5, RandomSource(1))


def test_gnp_edge_count_mean_within_3_sigma():
    trials = 2000
    n, p = 100, 0.3
    pairs = n * (n - 1) // 2
    rng = RandomSource(2024)
    total = sum(gnp(n, p, rng.substream(t)).m for t in range(trials))
    mean = total / trials
    sigma_mean = math.sqrt(pairs * p * (1 - p) / trials)
    assert abs(mean - pairs * p) <= 3 * sigma_mean


def test_bipartite_extremes_and_mean():
    full = bipartite_gnp(3, 4, 1.0, RandomSource(3))
    assert full.graph.m == 12
    assert all(u in full.left and v in full.right for u, v in full.graph.edges)
    assert bipartite_gnp(3, 4, 0.0, RandomSource(3)).graph.m == 0

    trials = 500
    rng = RandomSource(11)
    total = sum(bipartite_gnp(50, 50, 0.2, rng.substream(t)).graph.m
                for t in range(trials))
    sigma_mean = math.sqrt(2500 * 0.2 * 0.8 / trials)
    assert abs(total / trials - 500) <= 3 * sigma_mean


def test_pairing_single_possibility():
    p = random_pairing(2, 1, RandomSource(0))
    assert canonical_matching(p) == frozenset({frozenset({0, 1})})


def test_pairing_uniform_over_three_matchings():
    # 4 points have exactly 3 perfect matchings; frequencies should be uniform.
    expected = {
        frozenset({frozenset({0, 1}), frozenset({2, 3})}),
        frozenset({frozenset({0, 2}), frozenset({1, 3})}),
        frozenset({frozenset({0, 3}), frozenset({1, 2})}),
    }
    trials = 3000
    rng = RandomSource(14)
    counts = {m: 0 for m in expected}
    for t in range(trials):
        counts[canonical_matching(random_pairing(2, 2, rng.substream(t)))] += 1
    sigma = math.sqrt(trials * (1 / 3) * (2 / 3))
    for m in expected:
        assert abs(counts[m] - trials / 3) <= 3 * sigma


def test_pairing_parity_guard():
    with pytest.raises(ValueError):
        random_pairing(3, 3, RandomSource(0))


def test_pairing_rejects_non_matchings():
    from sizeramsey import Pairing

    with pytest.raises(ValueError):
        Pairing(2, 1, ((0, 0),))  # point 0 twice, point 1 never
    with pytest.raises(ValueError):
        Pairing(2, 2, ((0, 1),))  # points 2, 3 unmatched
    Pairing(2, 2, ((0, 2), (1, 3)))  # a valid matching constructs fine


def test_projection_loops_and_multiplicity():
    single = project(random_pairing(2, 1, RandomSource(0)))
    assert single.is_simple() and single.edges == ((0, 1),)

    loop = project(random_pairing(1, 2, RandomSource(0)))
    assert not loop.is_simple() and loop.loops == 1 and loop.edges == ((0, 0),)


def test_projection_degree_sequence_is_constant():
    rng = RandomSource(21)
    for t in range(50):
        mg = project(random_pairing(4, 3, rng.substream(t)))
        assert mg.degrees() == [3, 3, 3, 3]
        assert sum(mg.degrees()) == 4 * 3


def test_random_regular_outputs():
    matching = random_regular(4, 1, RandomSource(2))
    assert matching.m == 2 and all(matching.degree(v) == 1 for v in range(4))

    two_reg = random_regular(10, 2, RandomSource(2))
    assert all(two_reg.degree(v) == 2 for v in range(10))

    rng = RandomSource(31)
    for t in range(20):
        g = random_regular(20, 3, rng.substream(t))
        assert g.m == 30
        assert all(g.degree(v) == 3 for v in range(20))

    with pytest.raises(ValueError):
        random_regular(5, 3, RandomSource(0))
    with pytest.raises(SamplingError):
        # d = 31 on 100 buckets is essentially never simple; tiny cap trips fast
        random_regular(100, 31, RandomSource(0), max_attempts=3)


def test_two_round_union_identity_and_matchings():
    g = gnp(20, 0.3, RandomSource(5))
    empty = Graph(20, [])
    merged = two_round_union(g, empty)
    assert merged.graph == g
    assert all(flag == 1 for flag in merged.provenance.values())

    m1 = Graph(6, [(0, 1), (2, 3), (4, 5)])
    m2 = Graph(6, [(1, 2), (3, 4), (0, 5)])
    ring = two_round_union(m1, m2)
    assert all(ring.graph.degree(v) == 2 for v in range(6))
    assert {ring.provenance[e] for e in m1.edges} == {1}
    assert {ring.provenance[e] for e in m2.edges} == {2}

    both = two_round_union(m1, m1)
    assert all(flag == 3 for flag in both.provenance.values())

    with pytest.raises(ValueError):
        two_round_union(Graph(3, []), Graph(4, []))


def test_two_round_union_density_mixture():
    # union of G(n, d1/n) and G(n, d2/n) has density d1/n + d2/n - d1*d2/n^2
    n, d1, d2 = 100, 3.0, 5.0
    p_union = d1 / n + d2 / n - d1 * d2 / n ** 2
    pairs = n * (n - 1) // 2
    trials = 300
    rng = RandomSource(2718)
    total = 0
    for t in range(trials):
        g1 = gnp(n, d1 / n, rng.substream(2 * t))
        g2 = gnp(n, d2 / n, rng.substream(2 * t + 1))
        total += two_round_union(g1, g2).graph.m
    sigma_mean = math.sqrt(pairs * p_union * (1 - p_union) / trials)
    assert abs(total / trials - pairs * p_union) <= 3 * sigma_mean
