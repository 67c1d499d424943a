import pytest
from hypothesis import given, settings

from bisplit_dbe.bisplit import (
    DISTANCE_PATTERN,
    BisplitPartition,
    RefinedPartition,
    check_distance_pattern,
    check_nofull,
    find_max_partition,
    has_proper_partition,
    refine,
    validate_partition,
)
from bisplit_dbe.graph import Graph, GraphError, is_connected

from conftest import complete, cycle, path
from test_graph import graphs

A, B, C, YA, YB, ZA, ZB = range(7)
EXC_PARTITION = BisplitPartition.of({A, B, C}, {YA, YB}, {ZA, ZB})

# y1, y2, y3 = 1, 2, 3 all adjacent to z = 4; x = 0 sees y1 and y2
REFINE_EXAMPLE = Graph.from_edges(5, [(1, 4), (2, 4), (3, 4), (0, 1), (0, 2)])
REFINE_PARTITION = BisplitPartition.of({0}, {1, 2, 3}, {4})


def brute_force_partitions(g):
    from itertools import product

    for labels in product("XYZ", repeat=g.n):
        p = BisplitPartition.of(*([v for v in range(g.n) if labels[v] == c] for c in "XYZ"))
        if validate_partition(g, p):
            yield p


def test_validate_exceptional(full_graph):
    assert validate_partition(full_graph, EXC_PARTITION)
    moved = BisplitPartition.of({A, B, C, YA}, {YB}, {ZA, ZB})
    assert not validate_partition(full_graph, moved)


def test_validate_path_with_empty_X():
    assert validate_partition(path(3), BisplitPartition.of(set(), {0, 2}, {1}))


def test_validate_requires_a_cover():
    with pytest.raises(GraphError):
        validate_partition(path(3), BisplitPartition.of({0}, {1}, set()))
    with pytest.raises(GraphError):
        validate_partition(path(3), BisplitPartition.of({0, 1}, {1}, {2}))


def test_max_partition_examples():
    assert find_max_partition(path(3)) == BisplitPartition.of(set(), {0, 2}, {1})
    k3 = find_max_partition(complete(3))
    assert len(k3.Y | k3.Z) == 2 and validate_partition(complete(3), k3)
    assert find_max_partition(cycle(5)) is None


def test_max_partition_bound():
    with pytest.raises(GraphError):
        find_max_partition(path(13))


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_max_partition_matches_brute_force(g):
    found = list(brute_force_partitions(g))
    best = find_max_partition(g)
    if not found:
        assert best is None and not has_proper_partition(g)
        return
    size = max(len(p.Y | p.Z) for p in found)
    assert validate_partition(g, best) and len(best.Y | best.Z) == size
    proper = [p for p in found if p.Y and p.Z]
    assert has_proper_partition(g) == bool(proper)
    key = lambda p: (not (p.Y and p.Z), sorted(p.Y), sorted(p.Z))
    assert best == min((p for p in found if len(p.Y | p.Z) == size), key=key)


def test_refine_example():
    r = refine(REFINE_EXAMPLE, REFINE_PARTITION)
    assert r.XY == {0} and not r.XZ and not r.Xp
    assert r.Y1 == {1, 2} and r.Y2 == {3} and not r.Z1 and r.Z2 == {4}


def test_refine_exceptional(full_graph):
    r = refine(full_graph, EXC_PARTITION)
    assert r.Xp == {A, B, C} and not r.XY and not r.XZ
    assert r.Y2 == r.Y and r.Z2 == r.Z


def test_refine_path():
    r = refine(path(3), BisplitPartition.of({0}, {1}, {2}))
    assert r.XY == {0} and r.Y1 == {1} and r.Z2 == {2}


def test_refine_rejects_invalid():
    with pytest.raises(GraphError):
        refine(path(3), BisplitPartition.of({0, 1}, {2}, set()))


def test_mirrored_swaps_sides():
    r = refine(REFINE_EXAMPLE, REFINE_PARTITION)
    m = r.mirrored()
    assert m.XZ == r.XY and m.Z1 == r.Y1 and m.Y == r.Z and m.mirrored() == r


def test_nofull():
    assert check_nofull(REFINE_EXAMPLE, refine(REFINE_EXAMPLE, REFINE_PARTITION))
    assert not check_nofull(path(3), refine(path(3), BisplitPartition.of({0}, {1}, {2})))


def test_distance_pattern_examples(full_graph):
    assert check_distance_pattern(full_graph, refine(full_graph, EXC_PARTITION)) == []
    assert check_distance_pattern(path(3), refine(path(3), BisplitPartition.of({0}, {1}, {2}))) == []


def test_distance_pattern_flags_corruption():
    r = refine(REFINE_EXAMPLE, REFINE_PARTITION)
    # move y1 from Y1 to Y2; x = 0 is adjacent to it, which the X_Y-Y2 row forbids
    bad = RefinedPartition(Xp=r.Xp, XY=r.XY, XZ=r.XZ, Y1=frozenset({2}), Y2=frozenset({1, 3}),
                           Z1=r.Z1, Z2=r.Z2, base=r.base)
    viol = check_distance_pattern(REFINE_EXAMPLE, bad)
    assert viol and viol[0].to_json()["pair"] == [0, 1] and viol[0].classes == ("XY", "Y2")


def test_distance_pattern_table_is_symmetric_in_sides():
    for (a, b), allowed in DISTANCE_PATTERN.items():
        swap = {"XY": "XZ", "XZ": "XY", "Y": "Z", "Z": "Y", "Y1": "Z1", "Z1": "Y1",
                "Y2": "Z2", "Z2": "Y2", "Xp": "Xp"}
        key = (swap[a], swap[b])
        other = DISTANCE_PATTERN.get(key, DISTANCE_PATTERN.get(key[::-1]))
        assert other == allowed


@settings(max_examples=120, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_max_partitions_obey_distance_pattern(g):
    if not is_connected(g) or g.n > 8:
        return
    p = find_max_partition(g)
    if p is None or not (p.Y and p.Z):
        return
    r = refine(g, p)
    assert check_nofull(g, r) and check_nofull(g, r.mirrored())
    assert check_distance_pattern(g, r) == []
