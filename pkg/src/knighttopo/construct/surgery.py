"""Edge surgery on lifted tours.

Induction steps are stated on lift paths: delete a lift edge, insert a
path with the same endpoints, or append a translated piece, and then
project.  The helpers here perform that bookkeeping and re-validate the
result.

A closed tour's lift is either a closed cycle (class zero), where a hook
is a literal edge of one particular translate of that cycle, or one period
of a translation-invariant path, where every translate of an edge is
present.  ``match_hooks`` implements both readings.
"""
from __future__ import annotations

from typing import Optional, Sequence

from ..boardgraph import BoardSpec, DirectedJump, EdgeId, KnightPair, Topology, canonical_edge
from ..errors import HookViolation, InvalidTour, StepInvalid
from ..lift import lift_points
from ..tour import Tour

Point = tuple[int, int]
LiftEdge = tuple[Point, Point]


def add(p: Point, d: Point) -> Point:
    return (p[0] + d[0], p[1] + d[1])


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def lift_from_base(tour: Tour) -> list[Point]:
    """Lift points of a closed tour rotated to start at (0, 0)."""
    if tour.closed and tour.jumps:
        tour = tour.rotated_to((0, 0))
    return [tuple(p) for p in lift_points(tour.start, tour.pairs)]


def in_deck(spec: BoardSpec, d: Point) -> bool:
    """True when ``d`` translates the cover onto itself over ``spec``."""
    if spec.topology is Topology.CYLINDER:
        return d[0] == 0 and d[1] % spec.n == 0
    if spec.topology is Topology.TORUS:
        return d[0] % spec.m == 0 and d[1] % spec.n == 0
    return d == (0, 0)


def lift_edge_id(spec: BoardSpec, p: Point, q: Point) -> EdgeId:
    """The board edge a lift edge projects to."""
    sq = spec.wrap(*p)
    pair = sub(q, p)
    if sq is None or spec.wrap(*q) is None or sorted(map(abs, pair)) != [1, 2]:
        raise ValueError(f"{p}-{q} is not a lift edge over {spec}")
    return canonical_edge(spec, DirectedJump(sq, KnightPair(*pair)))


def match_hooks(spec: BoardSpec, pts: Sequence[Point], hooks: Sequence[LiftEdge]) -> Optional[list[tuple[int, Point, bool]]]:
    """Locate each hook edge in the lift ``pts`` of a closed tour.

    Returns one ``(step, offset, reversed)`` per hook: step ``i`` of the lift,
    translated by ``offset``, is the hook (traversed B to A when
    ``reversed``).  When the lift is a closed cycle all hooks must lie on the
    same translate of it, so a single common offset is required.  None when
    a hook is missing.
    """
    closed_cycle = pts[0] == pts[-1]
    found = []
    for a, b in hooks:
        hit = None
        for i in range(len(pts) - 1):
            p, q = pts[i], pts[i + 1]
            d = sub(a, p)
            if add(q, d) == tuple(b) and in_deck(spec, d):
                hit = (i, d, False)
                break
            d = sub(a, q)
            if add(p, d) == tuple(b) and in_deck(spec, d):
                hit = (i, d, True)
                break
        if hit is None:
            return None
        found.append(hit)
    if closed_cycle and len({d for _, d, _ in found}) > 1:
        return None
    if len({i for i, _, _ in found}) != len(found):
        return None
    return found


def project(spec: BoardSpec, pts: Sequence[Point], closed: bool) -> Tour:
    """The tour on ``spec`` traced by lift points ``pts``, rotated to (0, 0) when closed."""
    start = spec.wrap(*pts[0])
    if start is None:
        raise StepInvalid(f"lift point {pts[0]} is off {spec}")
    pairs = [sub(q, p) for p, q in zip(pts, pts[1:])]
    try:
        tour = Tour.from_pairs(spec, start, pairs, closed)
        tour.validate()
    except InvalidTour as exc:
        raise StepInvalid(f"spliced path is not a tour of {spec}: {exc}") from exc
    if closed and tour.jumps:
        tour = tour.rotated_to((0, 0))
    return tour


def replace_edges(
    tour: Tour,
    new_spec: BoardSpec,
    replacements: Sequence[tuple[LiftEdge, Sequence[Point]]],
) -> Tour:
    """Replace each hook edge ``(A, B)`` by a lift path from A to B, then project onto ``new_spec``.

    For a closed-cycle lift, the cycle is first translated so the hooks sit
    at their literal coordinates.  Otherwise each hook is matched at
    whichever translate occurs in the period, and its path is inserted at
    that same translate.
    """
    pts = lift_from_base(tour)
    hooks = [edge for edge, _ in replacements]
    found = match_hooks(tour.spec, pts, hooks)
    if found is None:
        raise HookViolation(f"{tour.spec} tour lacks hook edges {hooks}")
    if pts[0] == pts[-1] and found:
        t = found[0][1]
        pts = [add(p, t) for p in pts]
        found = [(i, (0, 0), r) for i, _, r in found]
    by_step = {i: (d, r, list(path)) for (i, d, r), (_, path) in zip(found, replacements)}
    out = [pts[0]]
    for i in range(len(pts) - 1):
        if i in by_step:
            d, rev, path = by_step[i]
            if rev:
                path = path[::-1]
            moved = [sub(p, d) for p in path]
            if moved[0] != pts[i] or moved[-1] != pts[i + 1]:
                raise StepInvalid("replacement path endpoints do not match the hook")
            out.extend(moved[1:])
        else:
            out.append(pts[i + 1])
    return project(new_spec, out, closed=True)


def concatenate(path: Sequence[Point], piece: Sequence[Point], new_spec: BoardSpec) -> Tour:
    """Append ``piece`` (which starts at ``path``'s endpoint) and close the result on ``new_spec``."""
    if tuple(piece[0]) != tuple(path[-1]):
        raise StepInvalid(f"piece starts at {piece[0]}, path ends at {path[-1]}")
    return project(new_spec, list(path) + list(piece[1:]), closed=True)
