import pytest
from hypothesis import given
from hypothesis import strategies as st

from knighttopo.boardgraph import BoardSpec, Topology
from knighttopo.errors import NotASurface, TargetTopologyMismatch
from knighttopo.lift import (
    ANY,
    GENERATOR,
    IDENTITY,
    LONGITUDE,
    ClassTarget,
    Color,
    CylinderClass,
    Obstruction,
    TorusClass,
    classify,
    color,
    exact,
    lift_tour,
    matches_target,
    parity_congruence_holds,
    parity_obstruction,
)
from knighttopo.tour import Tour

from .strategies import tours

C21 = Tour.from_pairs(BoardSpec.cylinder(2, 1), (0, 0), [(1, 2), (-1, 2)])
T12 = Tour.from_pairs(BoardSpec.torus(1, 2), (0, 0), [(2, 1), (-2, 1)])


def test_lift_examples():
    empty = Tour(BoardSpec.cylinder(1, 1), (0, 0), ())
    assert lift_tour(empty.spec, empty).points == ((0, 0),)
    assert lift_tour(C21.spec, C21).points == ((0, 0), (1, 2), (0, 4))
    assert lift_tour(T12.spec, T12).points == ((0, 0), (2, 1), (0, 2))


def test_classify_examples():
    assert classify(BoardSpec.cylinder(1, 1), Tour(BoardSpec.cylinder(1, 1), (0, 0), ())) == CylinderClass(0)
    assert classify(BoardSpec.torus(1, 1), Tour(BoardSpec.torus(1, 1), (0, 0), ())) == TorusClass(0, 0)
    assert classify(C21.spec, C21) == CylinderClass(4)
    assert classify(C21.spec, C21.reversed()) == CylinderClass(-4)
    assert classify(T12.spec, T12) == TorusClass(0, 1)


def test_classify_needs_a_surface():
    spec = BoardSpec.regular(1, 1)
    with pytest.raises(NotASurface):
        classify(spec, Tour(spec, (0, 0), ()))


def test_matches_target_examples():
    cyl, tor = BoardSpec.cylinder(3, 3), BoardSpec.torus(3, 3)
    assert matches_target(cyl, CylinderClass(-1), GENERATOR)
    assert not matches_target(cyl, CylinderClass(4), GENERATOR)
    assert not matches_target(tor, TorusClass(0, 1), IDENTITY)
    assert matches_target(tor, TorusClass(0, -1), LONGITUDE)
    assert not matches_target(tor, TorusClass(1, 0), LONGITUDE)
    assert matches_target(cyl, CylinderClass(7), ANY)
    with pytest.raises(TargetTopologyMismatch):
        matches_target(tor, TorusClass(0, 1), GENERATOR)
    with pytest.raises(TargetTopologyMismatch):
        matches_target(cyl, CylinderClass(1), LONGITUDE)


@pytest.mark.parametrize(
    "text, target",
    [
        ("identity", IDENTITY),
        ("Generator", GENERATOR),
        ("any", ANY),
        ("exact:-4", exact(CylinderClass(-4))),
        ("exact:1,0", exact(TorusClass(1, 0))),
    ],
)
def test_target_parse(text, target):
    assert ClassTarget.parse(text) == target
    assert ClassTarget.parse(str(target)) == target


def test_parity_obstruction_examples():
    assert parity_obstruction(BoardSpec.cylinder(3, 3), IDENTITY) is Obstruction.BLOCKED
    assert parity_obstruction(BoardSpec.cylinder(4, 3), GENERATOR) is Obstruction.BLOCKED
    assert parity_obstruction(BoardSpec.torus(5, 4), LONGITUDE) is Obstruction.NOT_BLOCKED


@given(st.integers(1, 9), st.integers(1, 9))
def test_parity_obstruction_matches_congruence(m, n):
    # identity is blocked exactly when m*n is odd (0 != m*n mod 2); generator when n is odd and m even
    assert (parity_obstruction(BoardSpec.cylinder(m, n), IDENTITY) is Obstruction.BLOCKED) == (m * n % 2 == 1 and m * n > 1)
    assert (parity_obstruction(BoardSpec.cylinder(m, n), GENERATOR) is Obstruction.BLOCKED) == (n % 2 != m * n % 2)
    assert (parity_obstruction(BoardSpec.torus(m, n), LONGITUDE) is Obstruction.BLOCKED) == (n % 2 != m * n % 2)


def test_color_examples():
    assert color((0, 0)) is Color.RED
    assert color((1, 2)) is Color.BLUE


@given(tours(surface_only=True))
def test_lift_steps_alternate_colours(tour):
    pts = lift_tour(tour.spec, tour).points
    assert pts[0] == (0, 0)
    for p, q in zip(pts, pts[1:]):
        assert sorted((abs(p[0] - q[0]), abs(p[1] - q[1]))) == [1, 2]
        assert color(p) is not color(q)


@given(tours(surface_only=True))
def test_lift_closes_up(tour):
    spec = tour.spec
    path = lift_tour(spec, tour)
    dx, dy = path.displacement
    c = classify(spec, tour)
    if spec.topology is Topology.CYLINDER:
        assert all(0 <= a < spec.m for a, _ in path.points)
        assert (dx, dy) == (0, c.k * spec.n)
        assert abs(c.k) <= 2 * spec.m
    else:
        assert (dx, dy) == (c.p * spec.m, c.q * spec.n)
        assert abs(c.p) <= 2 * spec.n and abs(c.q) <= 2 * spec.m
    assert parity_congruence_holds(spec, c)


@given(tours(surface_only=True), st.integers(0, 100))
def test_classify_rotation_and_reversal(tour, r):
    spec = tour.spec
    c = classify(spec, tour)
    assert classify(spec, tour.rotated(r % max(len(tour.jumps), 1))) == c
    assert classify(spec, tour.reversed()) == -c
