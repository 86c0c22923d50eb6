import random
from itertools import combinations

import pytest

from conftest import naive_chromatic, naive_find_induced, naive_is_k_colorable, random_graph
from fourcolor import (
    Graph,
    NotInClass,
    SizeGuardExceeded,
    certify_class,
    complement,
    complete,
    cycle,
    empty,
    verify_coloring,
)
from fourcolor.lab import (
    GeneratorConfig,
    c5_blowup,
    clique_number,
    construction,
    enumerate_class_members,
    exact_chromatic,
    generate,
    manifest_line,
    parse_manifest,
    petersen,
    wagon_bound_check,
)


def test_exact_chromatic_known_values():
    assert exact_chromatic(cycle(5))[0] == 3
    assert exact_chromatic(complement(cycle(7)))[0] == 4
    assert exact_chromatic(complete(4))[0] == 4
    assert exact_chromatic(empty(3))[0] == 1
    assert exact_chromatic(empty(0))[0] == 0


def test_exact_chromatic_petersen_cross_checked():
    g = petersen()
    chi, col = exact_chromatic(g)
    assert chi == 3
    assert verify_coloring(g, col) is None and col.k == 3
    # second, independent search: brute-force k-colorability
    assert not naive_is_k_colorable(g, 2)
    assert naive_is_k_colorable(g, 3)


def test_exact_chromatic_returns_optimal_coloring():
    rng = random.Random(17)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(1, 9), rng.random())
        chi, col = exact_chromatic(g)
        assert verify_coloring(g, col) is None
        assert col.k == chi == naive_chromatic(g)


def test_clique_number_examples():
    assert clique_number(complete(4)) == 4
    assert clique_number(cycle(5)) == 2
    assert clique_number(construction("W5")) == 3
    assert clique_number(empty(5)) == 1
    assert clique_number(empty(0)) == 0


def test_chromatic_at_least_clique():
    rng = random.Random(23)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(1, 11), rng.random())
        assert exact_chromatic(g)[0] >= clique_number(g)


def test_size_guards():
    with pytest.raises(SizeGuardExceeded):
        exact_chromatic(empty(25))
    with pytest.raises(SizeGuardExceeded):
        clique_number(empty(41))
    with pytest.raises(SizeGuardExceeded):
        wagon_bound_check(empty(15))
    assert exact_chromatic(empty(25), limit=30)[0] == 1


def test_wagon_bound_examples():
    res = wagon_bound_check(cycle(5))
    assert res.ok and (res.chi, res.omega, res.bound) == (3, 2, 3)  # tight
    res = wagon_bound_check(construction("W5"))
    assert res.ok and (res.chi, res.omega, res.bound) == (4, 3, 6)
    res = wagon_bound_check(complement(cycle(7)))
    assert res.ok and (res.chi, res.omega, res.bound) == (4, 3, 6)
    with pytest.raises(NotInClass):
        wagon_bound_check(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_constructions_are_certified_members():
    for name in ("W5", "C7-complement", "C5", "H1", "H2"):
        g = construction(name)
        assert certify_class(g, ("2P2", "K4")) is None
    blow = c5_blowup((2, 2, 2, 2, 2))
    assert blow.n == 10
    assert certify_class(blow, ("2P2", "K4")) is None
    with pytest.raises(ValueError):
        construction("mystery")


def test_generate_is_deterministic_and_certified():
    for cls in ("2p2k4-free", "2p2-free", "4p1c4-free", "unconstrained"):
        cfg = GeneratorConfig(n=9, seed=42, p=0.4, cls=cls)
        a, b = generate(cfg), generate(cfg)
        assert a == b
    cfg = GeneratorConfig(n=18, seed=7, p=0.45, cls="2p2k4-free", method="incremental")
    g = generate(cfg)
    assert g.n == 18
    assert certify_class(g, ("2P2", "K4")) is None


def test_generate_complement_route():
    cfg = GeneratorConfig(n=10, seed=3, cls="(4P1,C4)-free")
    g = generate(cfg)
    assert certify_class(g, ("4P1", "C4")) is None
    assert certify_class(complement(g), ("2P2", "K4")) is None


def test_generate_rejects_unknown_class():
    with pytest.raises(ValueError):
        generate(GeneratorConfig(n=5, seed=0, cls="planar"))


def test_enumerate_class_members_matches_naive_filter():
    for n in (3, 4, 5):
        expected = 0
        for mask in range(1 << (n * (n - 1) // 2)):
            pairs = list(combinations(range(n), 2))
            edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
            g = Graph.from_edges(n, edges)
            if naive_find_induced(g, "2P2") is None and naive_find_induced(g, "K4") is None:
                expected += 1
        got = sum(1 for _ in enumerate_class_members(n))
        assert got == expected


def test_enumerated_members_are_4_colorable():
    count = 0
    for g in enumerate_class_members(6):
        chi, _ = exact_chromatic(g)
        assert chi <= 4
        count += 1
    assert count > 0


def test_manifest_round_trip():
    cfg = GeneratorConfig(n=8, seed=5, p=0.5)
    g = generate(cfg)
    line = manifest_line(cfg, g)
    records = parse_manifest(line + "\n\n")
    assert records == [(5, 8, "2p2k4free", g)]
