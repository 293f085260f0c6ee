from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from knighttopo.boardgraph import (
    BoardSpec,
    DirectedJump,
    KnightPair,
    Square,
    Topology,
    apply_jump,
    canonical_edge,
    edge_count,
    edge_endpoints,
    edges,
    knight_pairs,
    neighbors,
    reverse_jump,
)
from knighttopo.errors import InvalidJump

from .strategies import board_specs


def jump(a, b, x, y):
    return DirectedJump(Square(a, b), KnightPair(x, y))


def brute_force_edge_count(spec):
    """Directed jumps that land on the board, halved; computed without canonical_edge."""
    directed = 0
    for a in range(spec.m):
        for b in range(spec.n):
            for x in (-2, -1, 1, 2):
                for y in (-2, -1, 1, 2):
                    if abs(x) != abs(y) and spec.wrap(a + x, b + y) is not None:
                        directed += 1
    assert directed % 2 == 0
    return directed // 2


def test_knight_pairs():
    pairs = knight_pairs()
    assert len(pairs) == 8
    assert (2, 1) in pairs and (1, 2) in pairs
    assert all((-x, -y) in pairs for x, y in pairs)
    assert all({abs(x), abs(y)} == {1, 2} and (x + y) % 2 for x, y in pairs)


def test_apply_jump_examples():
    assert apply_jump(BoardSpec.cylinder(5, 2), jump(0, 0, 1, 2)) == (1, 0)
    assert apply_jump(BoardSpec.torus(1, 1), jump(0, 0, 2, 1)) == (0, 0)
    with pytest.raises(InvalidJump):
        apply_jump(BoardSpec.regular(8, 8), jump(0, 0, -1, 2))


def test_neighbors_examples():
    corner = neighbors(BoardSpec.regular(8, 8), Square(0, 0))
    assert sorted(j.pair for j in corner) == [(1, 2), (2, 1)]

    c21 = BoardSpec.cylinder(2, 1)
    out = neighbors(c21, Square(0, 0))
    assert sorted(j.pair for j in out) == [(1, -2), (1, 2)]
    assert {apply_jump(c21, j) for j in out} == {(1, 0)}

    loops = neighbors(BoardSpec.torus(1, 1), Square(0, 0))
    assert len(loops) == 8


def test_parallel_edges_and_loops():
    c21 = BoardSpec.cylinder(2, 1)
    assert canonical_edge(c21, jump(0, 0, 1, 2)) != canonical_edge(c21, jump(0, 0, 1, -2))

    t11 = BoardSpec.torus(1, 1)
    assert canonical_edge(t11, jump(0, 0, 2, 1)) == canonical_edge(t11, jump(0, 0, -2, -1))
    classes = {canonical_edge(t11, jump(0, 0, x, y)) for x, y in knight_pairs()}
    assert len(classes) == 4
    assert {frozenset({e.rep.pair, (-e.rep.pair[0], -e.rep.pair[1])}) for e in classes} == {
        frozenset({(2, 1), (-2, -1)}),
        frozenset({(2, -1), (-2, 1)}),
        frozenset({(1, 2), (-1, -2)}),
        frozenset({(1, -2), (-1, 2)}),
    }


@pytest.mark.parametrize(
    "spec, expected",
    [
        (BoardSpec.regular(8, 8), 168),
        (BoardSpec.cylinder(2, 1), 2),
        (BoardSpec.torus(1, 1), 4),
    ],
)
def test_edge_count_examples(spec, expected):
    assert edge_count(spec) == expected
    assert brute_force_edge_count(spec) == expected


def test_bad_board_rejected():
    with pytest.raises(ValueError):
        BoardSpec.regular(0, 3)


@given(board_specs())
def test_neighbors_are_valid(spec):
    for sq in spec.squares():
        for j in neighbors(spec, sq):
            assert spec.contains(apply_jump(spec, j))


@given(board_specs())
def test_edge_count_matches_brute_force(spec):
    assert edge_count(spec) == brute_force_edge_count(spec)
    assert len(list(spec.squares())) == spec.m * spec.n


@given(board_specs())
def test_canonical_edge_is_a_class_function(spec):
    seen = {}
    for sq in spec.squares():
        for j in neighbors(spec, sq):
            e = canonical_edge(spec, j)
            assert canonical_edge(spec, e.rep) == e
            assert canonical_edge(spec, reverse_jump(spec, j)) == e
            assert e.rep <= j and e.rep <= reverse_jump(spec, j)
            seen.setdefault(e, set()).add(j)
    # each class holds a jump and its reverse; a loop by (x,y) and (-x,-y) is one class of two jumps
    assert all(len(js) == 2 for js in seen.values())
    assert set(seen) == set(edges(spec))


@given(st.integers(5, 9), st.integers(5, 9))
def test_large_regular_boards_are_simple(m, n):
    spec = BoardSpec.regular(m, n)
    ends = Counter(frozenset(edge_endpoints(spec, e)) for e in edges(spec))
    assert max(ends.values()) == 1


def test_cylinder_2x1_is_a_multigraph():
    spec = BoardSpec.cylinder(2, 1)
    ends = Counter(frozenset(edge_endpoints(spec, e)) for e in edges(spec))
    assert ends[frozenset({(0, 0), (1, 0)})] == 2


@given(st.integers(1, 7), st.integers(1, 7))
def test_neighbor_sets_nest_across_topologies(m, n):
    boards = [BoardSpec(t, m, n) for t in (Topology.REGULAR, Topology.CYLINDER, Topology.TORUS)]
    for sq in boards[0].squares():
        sets = [{(j.pair, apply_jump(s, j)) for j in neighbors(s, sq)} for s in boards]
        assert sets[0] <= sets[1] <= sets[2]
