"""Base-case derivation, induction steps and the constructor dispatcher."""
from __future__ import annotations

from typing import Optional

from ..boardgraph import BoardSpec, Topology
from ..errors import BaseCaseNotFound, BudgetExceeded, HookViolation, StepInvalid, Unsupported
from ..lift import (
    GENERATOR,
    IDENTITY,
    LONGITUDE,
    ClassTarget,
    CylinderClass,
    TargetKind,
    TorusClass,
    classify,
    matches_target,
    target_endpoints,
)
from ..search import (
    DEFAULT_BUDGET,
    Budget,
    Found,
    SearchProblem,
    find_open_tour,
    find_tour,
    search_tours,
)
from ..search import BudgetExceeded as OutOfBudget
from ..theorems import cyl_gen_predicate, cyl_null_predicate, schwenk_predicate, tori_null_predicate, torus_lon_predicate
from ..tour import Tour, transpose_tour
from .families import Family, hook_spec, rule
from .frames import Frame, derive_frame
from .store import DEFAULT_STORE, Fixture, FixtureCorrupt, FixtureStore
from .surgery import Point, add, concatenate, lift_from_base, replace_edges

# Frame geometry: board, endpoint pairs, and edges the next step's hooks need.
FRAMES = {
    Family.GEN_CYL_MX3: (BoardSpec.regular(4, 3), (((0, 2), (0, 1)),), (((3, 0), (2, 2)),)),
    Family.GEN_CYL_MX4: (
        BoardSpec.regular(3, 4),
        (((0, 1), (1, 3)), ((1, 1), (0, 3))),
        (((2, 0), (1, 2)), ((1, 0), (2, 2))),
    ),
}


# -- base cases ------------------------------------------------------------------


def derive_base_case(family: Family, size: tuple[int, int], budget: Budget = DEFAULT_BUDGET) -> Fixture:
    """Search for a tour satisfying the family's hook spec at ``size``.

    Hook edges become required edges; a band becomes a directed lift
    endpoint plus a per-point predicate on the running lift.
    """
    r = rule(family)
    if tuple(size) not in r.seeds():
        raise Unsupported(f"{size} is not a base size of {family} (bases {r.seeds()})")
    hs = r.hook_spec(*size)
    spec = hs.spec
    if hs.band is not None:
        endpoints = frozenset({hs.band.endpoint})
        lift_ok = hs.band.allows
    else:
        endpoints = target_endpoints(spec, hs.target)
        lift_ok = None
    accept = hs.holds if len(hs.edges) > 1 else None
    outcome = search_tours(
        spec,
        endpoints=endpoints,
        required=hs.required_edges,
        lift_ok=lift_ok,
        accept=accept,
        budget=budget,
    )
    if not isinstance(outcome, Found):
        raise BaseCaseNotFound(f"no base case for {family} at {spec}: {outcome}")
    if not hs.holds(outcome.tour):
        raise BaseCaseNotFound(f"search result for {family} at {spec} violates its hook spec")
    return Fixture.of(family, outcome.tour)


def derive_family_frame(family: Family) -> Frame:
    spec, ends, required = FRAMES[Family(family)]
    return derive_frame(spec, ends, required)


_seed_cache: dict[tuple[Family, tuple[int, int]], Fixture] = {}
_frame_cache: dict[Family, Frame] = {}


def seed_fixture(
    family: Family,
    size: tuple[int, int],
    budget: Budget = DEFAULT_BUDGET,
    store: Optional[FixtureStore] = DEFAULT_STORE,
) -> Fixture:
    """The stored fixture at ``size``, or a freshly derived one when the store lacks it."""
    key = (Family(family), tuple(size))
    if key in _seed_cache:
        return _seed_cache[key]
    fixture = store.load(family, size) if store is not None else None
    if fixture is None:
        fixture = derive_base_case(family, size, budget)
    elif not hook_spec(family, size).holds(fixture.tour):
        raise FixtureCorrupt(f"stored fixture {family} {size} violates its hook spec")
    _seed_cache[key] = fixture
    return fixture


def family_frame(family: Family, store: Optional[FixtureStore] = DEFAULT_STORE) -> Frame:
    family = Family(family)
    if family not in _frame_cache:
        frame = store.load_frame(family) if store is not None else None
        if frame is None:
            frame = derive_family_frame(family)
        spec, ends, required = FRAMES[family]
        frame.validate(ends, required)
        _frame_cache[family] = frame
    return _frame_cache[family]


# -- induction steps -------------------------------------------------------------


def _replacements(family: Family, m: int, n: int) -> list[tuple[tuple[Point, Point], list[Point]]]:
    """Hook edges of the size-(m, n) tour and the lift paths that replace them."""
    if family is Family.NULL_CYL_MX1:
        h = m // 2
        a, b = (m - 2, -h + 1), (m - 1, -h + 3)
        return [((a, b), [a, (m, -h), (m + 1, -h + 2), b])]
    if family is Family.NULL_CYL_MX2:
        p = m - 1 if m % 2 == 0 else m
        if (5 - p) % 2:
            raise StepInvalid(f"half-integer hook coordinates for m={m}")
        a1, b1 = (m - 1, (5 - p) // 2), (m - 2, (9 - p) // 2)
        a2, b2 = (m - 1, (p - 3) // 2), (m - 2, (p - 7) // 2)
        return [
            ((a1, b1), [a1, (m + 1, (3 - p) // 2), (m, (7 - p) // 2), b1]),
            ((a2, b2), [a2, (m + 1, (p - 1) // 2), (m, (p - 5) // 2), b2]),
        ]
    if family is Family.NULL_CYL_MX4:
        a, b = (m - 2, -1), (m - 1, -3)
        piece = [add(p, (m, 0)) for p in _null_mx4_piece()]
        return [((a, b), [a] + piece + [b])]
    if family is Family.NULL_CYL_4XN:
        return [
            (((0, -n + 1), (2, -n + 2)), [(0, -n + 1), (1, -n - 1), (3, -n), (2, -n + 2)]),
            (((1, -n + 1), (3, -n + 2)), [(1, -n + 1), (0, -n - 1), (2, -n), (3, -n + 2)]),
            (((0, n - 1), (2, n)), [(0, n - 1), (1, n + 1), (3, n + 2), (2, n)]),
            (((1, n - 1), (3, n)), [(1, n - 1), (0, n + 1), (2, n + 2), (3, n)]),
        ]
    if family is Family.GEN_CYL_MX1:
        if m % 2 == 0:
            raise StepInvalid(f"half-integer hook coordinates for m={m}")
        a, b = (m - 1, (3 - m) // 2), (m - 2, (-m - 1) // 2)
        return [((a, b), [a, (m + 1, (1 - m) // 2), (m, (-m - 3) // 2), b])]
    if family is Family.GEN_CYL_MX2:
        return [
            (((m - 1, 2), (m - 2, 0)), [(m - 1, 2), (m + 1, 1), (m, -1), (m - 2, 0)]),
            (((m - 1, 1), (m - 2, -1)), [(m - 1, 1), (m + 1, 2), (m, 0), (m - 2, -1)]),
        ]
    if family is Family.GEN_CYL_MX3:
        (path,) = family_frame(family).placed((m, 1))
        a, b = (m - 1, 1), (m - 2, 3)
        return [((a, b), [a] + path + [b])]
    if family is Family.GEN_CYL_MX4:
        low, high = family_frame(family).placed((m, 0))
        return [
            (((m - 2, 0), (m - 1, 2)), [(m - 2, 0)] + low + [(m - 1, 2)]),
            (((m - 1, 0), (m - 2, 2)), [(m - 1, 0)] + high + [(m - 2, 2)]),
        ]
    raise ValueError(f"{family} is not an edge-replacement family")


def _null_mx4_piece() -> list[Point]:
    """The 3x4 null cycle opened at its edge (0,0)-(1,-2), as a lift path from (0,0) to (1,-2)."""
    pts = lift_from_base(seed_fixture(Family.NULL_CYL_MX4, (3, 4)).tour)
    if pts[1] == (1, -2):
        return pts[1:][::-1]
    if pts[-2] == (1, -2):
        return pts[:-1]
    raise HookViolation("the 3x4 fixture lacks its splice edge (0,0)-(1,-2)")


_PIECE_BASE = {
    Family.GEN_CYL_3XN: (3, 4),
    Family.GEN_CYL_5XN: (5, 4),
    Family.LON_TORUS_4XN: (4, 4),
}


def _band_piece(family: Family, m: int, n: int) -> list[Point]:
    """The lift path appended after the old path's endpoint."""
    if family is Family.LON_TORUS_1XN:
        return [(0, n), (2, n + 1), (0, n + 2)]
    if family is Family.LON_TORUS_2XN:
        return [(0, -n), (1, -n + 2), (3, -n + 1), (2, -n - 1), (0, -n - 2)]
    size = _PIECE_BASE[family]
    base = seed_fixture(family, size)
    pts = hook_spec(family, size).band_path(base.tour)
    if pts is None:
        raise HookViolation(f"{family} piece at {size} lacks its band property")
    return [add(p, (0, -n)) for p in pts]


def extend(family: Family, fixture: Fixture) -> Fixture:
    """One induction step: the family's tour at the next size, built from ``fixture``."""
    family = Family(family)
    r = rule(family)
    if r.step is None:
        raise Unsupported(f"{family} has no induction step")
    m, n = fixture.size
    hs = r.hook_spec(m, n)
    if not hs.holds(fixture.tour):
        raise HookViolation(f"{family} fixture at {m}x{n} does not satisfy its hook spec")
    new_spec = BoardSpec(r.topology, *r.next_size(m, n))
    if hs.band is not None:
        tour = concatenate(hs.band_path(fixture.tour), _band_piece(family, m, n), new_spec)
    else:
        tour = replace_edges(fixture.tour, new_spec, _replacements(family, m, n))
    if not r.hook_spec(new_spec.m, new_spec.n).holds(tour):
        raise StepInvalid(f"{family} step {m}x{n} -> {new_spec.m}x{new_spec.n} broke the hook spec or class")
    return Fixture.of(family, tour)


def build(family: Family, size: tuple[int, int], budget: Budget = DEFAULT_BUDGET) -> Fixture:
    """The family's tour at ``size``: its seed, extended as many times as needed."""
    r = rule(family)
    base = r.base_for(*size)
    if base is None:
        raise Unsupported(f"{family} does not reach {size}")
    fixture = seed_fixture(family, base, budget)
    while fixture.size != tuple(size):
        fixture = extend(family, fixture)
    return fixture


# -- delegations -------------------------------------------------------------------


def _closed_regular(m: int, n: int, budget: Budget) -> Tour:
    # Warnsdorff search runs along columns; it copes far better with few, long columns
    if m > n:
        return transpose_tour(_closed_regular(n, m, budget))
    outcome = find_tour(SearchProblem(BoardSpec.regular(m, n)), budget)
    if isinstance(outcome, Found):
        return outcome.tour
    if isinstance(outcome, OutOfBudget):
        raise BudgetExceeded(f"no closed tour of R({m},{n}) within budget", outcome.nodes_used, outcome.ms_used)
    raise BaseCaseNotFound(f"R({m},{n}) has no closed tour")


def generator_by_open_tour(m: int, n: int, budget: Budget = DEFAULT_BUDGET) -> Tour:
    """Open tour on R(m,n) from (0,0) to (1,n-2), closed by the single wrap move (-1,2)."""
    outcome = find_open_tour(BoardSpec.regular(m, n), (0, 0), (1, n - 2), budget)
    if isinstance(outcome, OutOfBudget):
        raise BudgetExceeded(f"no open tour of R({m},{n}) within budget", outcome.nodes_used, outcome.ms_used)
    if not isinstance(outcome, Found):
        raise BaseCaseNotFound(f"R({m},{n}) has no open tour (0,0) ~ (1,{n - 2})")
    return Tour.from_pairs(BoardSpec.cylinder(m, n), (0, 0), outcome.tour.pairs + [(-1, 2)])


# -- dispatcher --------------------------------------------------------------------

_NULL_CYL_ORDER = (
    Family.NULL_CYL_MX1,
    Family.NULL_CYL_MX2,
    Family.NULL_CYL_MX3,
    Family.NULL_CYL_3XN,
    Family.NULL_CYL_MX4,
    Family.NULL_CYL_4XN,
)
_GEN_CYL_ORDER = (
    Family.GEN_CYL_MX1,
    Family.GEN_CYL_MX2,
    Family.GEN_CYL_MX3,
    Family.GEN_CYL_3XN,
    Family.GEN_CYL_MX4,
    Family.GEN_CYL_5XN,
    Family.GEN_CYL_DELEGATED,
)
_LON_ORDER = (Family.LON_TORUS_1XN, Family.LON_TORUS_2XN, Family.LON_TORUS_4XN)


def family_for(spec: BoardSpec, target: ClassTarget) -> Optional[Family]:
    """The family that builds ``target`` on ``spec`` (None when only a delegation or embedding applies)."""
    m, n = spec.m, spec.n
    if spec.topology is Topology.CYLINDER and target.kind is TargetKind.IDENTITY:
        order = _NULL_CYL_ORDER
    elif spec.topology is Topology.CYLINDER and target.kind is TargetKind.GENERATOR:
        order = _GEN_CYL_ORDER
    elif spec.topology is Topology.TORUS and target.kind is TargetKind.IDENTITY:
        order = (Family.NULL_TORUS_SMALL,)
    elif spec.topology is Topology.TORUS and target.kind is TargetKind.LONGITUDE:
        order = _LON_ORDER
    else:
        return None
    for family in order:
        if rule(family).covers(m, n):
            return family
    return None


def _null_cylinder(m: int, n: int, budget: Budget) -> Tour:
    if m * n == 1:
        return Tour(BoardSpec.cylinder(1, 1), (0, 0), (), True)
    family = family_for(BoardSpec.cylinder(m, n), IDENTITY)
    if family is not None and rule(family).base_for(m, n) is not None:
        return build(family, (m, n), budget).tour
    # m x 3 and 3 x n beyond the figures, and everything with m, n >= 5:
    # a closed tour of the rectangle uses no wrap move, so it is nullhomotopic.
    if not schwenk_predicate(m, n):
        raise Unsupported(f"no construction for a nullhomotopic tour on C({m},{n})")
    return _closed_regular(m, n, budget).on(BoardSpec.cylinder(m, n))


def _generator_cylinder(m: int, n: int, budget: Budget) -> Tour:
    family = family_for(BoardSpec.cylinder(m, n), GENERATOR)
    if family is Family.GEN_CYL_DELEGATED:
        return generator_by_open_tour(m, n, budget)
    if family is None:
        raise Unsupported(f"no family builds a generator on C({m},{n})")
    return build(family, (m, n), budget).tour


def _null_torus(m: int, n: int, budget: Budget) -> Tour:
    spec = BoardSpec.torus(m, n)
    if m * n == 1:
        return Tour(spec, (0, 0), (), True)
    if rule(Family.NULL_TORUS_SMALL).covers(m, n):
        return build(Family.NULL_TORUS_SMALL, (m, n), budget).tour
    if rule(Family.NULL_TORUS_SMALL).covers(n, m):
        return transpose_tour(build(Family.NULL_TORUS_SMALL, (n, m), budget).tour)
    # the torus contains both C(m,n) and, transposed, C(n,m)
    if cyl_null_predicate(m, n):
        return _null_cylinder(m, n, budget).on(spec)
    if cyl_null_predicate(n, m):
        return transpose_tour(_null_cylinder(n, m, budget).on(BoardSpec.torus(n, m)))
    raise Unsupported(f"no construction for a nullhomotopic tour on T({m},{n})")


def _longitude_torus(m: int, n: int, budget: Budget) -> Tour:
    spec = BoardSpec.torus(m, n)
    # a generator of C(m,n) is a longitude of T(m,n)
    if cyl_gen_predicate(m, n):
        return _generator_cylinder(m, n, budget).on(spec)
    family = family_for(spec, LONGITUDE)
    if family is None:
        raise Unsupported(f"no family builds a longitude on T({m},{n})")
    return build(family, (m, n), budget).tour


def _construct_kind(spec: BoardSpec, kind: TargetKind, budget: Budget) -> Tour:
    m, n = spec.m, spec.n
    if spec.topology is Topology.CYLINDER:
        if kind is TargetKind.IDENTITY and cyl_null_predicate(m, n):
            return _null_cylinder(m, n, budget)
        if kind is TargetKind.GENERATOR and cyl_gen_predicate(m, n):
            return _generator_cylinder(m, n, budget)
    elif spec.topology is Topology.TORUS:
        if kind is TargetKind.IDENTITY and tori_null_predicate(m, n):
            return _null_torus(m, n, budget)
        if kind is TargetKind.LONGITUDE and torus_lon_predicate(m, n):
            return _longitude_torus(m, n, budget)
    raise Unsupported(f"no {kind.value} tour exists on {spec} by the characterization theorems")


def construct(spec: BoardSpec, target: ClassTarget, budget: Budget = DEFAULT_BUDGET) -> Tour:
    """A tour of ``target``'s class on ``spec`` built by the families and delegations.

    ``Any`` picks the first constructible class among identity and the
    generator/longitude; ``Exact`` targets are accepted when they name one
    of those classes.  Regular boards delegate to closed-tour search.
    """
    kind = target.kind
    if spec.topology is Topology.REGULAR:
        if kind not in (TargetKind.ANY, TargetKind.IDENTITY):
            raise Unsupported(f"{target} is meaningless on {spec}")
        if not schwenk_predicate(spec.m, spec.n) and spec.size > 1:
            raise Unsupported(f"{spec} has no closed tour")
        if spec.size == 1:
            raise Unsupported("R(1,1) has no closed tour")
        tour = _closed_regular(spec.m, spec.n, budget)
    elif kind is TargetKind.ANY:
        wrap = TargetKind.GENERATOR if spec.topology is Topology.CYLINDER else TargetKind.LONGITUDE
        for option in (TargetKind.IDENTITY, wrap):
            try:
                tour = _construct_kind(spec, option, budget)
                break
            except Unsupported:
                continue
        else:
            raise Unsupported(f"no constructible class on {spec}")
    elif kind is TargetKind.EXACT:
        c = target.exact
        if isinstance(c, CylinderClass) and spec.topology is Topology.CYLINDER and abs(c.k) <= 1:
            tour = _construct_kind(spec, TargetKind.IDENTITY if c.k == 0 else TargetKind.GENERATOR, budget)
        elif isinstance(c, TorusClass) and spec.topology is Topology.TORUS and c.p == 0 and abs(c.q) <= 1:
            tour = _construct_kind(spec, TargetKind.IDENTITY if c.q == 0 else TargetKind.LONGITUDE, budget)
        else:
            raise Unsupported(f"no construction targets {target} on {spec}")
        if classify(spec, tour) != c:
            tour = tour.reversed()
    else:
        tour = _construct_kind(spec, kind, budget)
    try:
        tour.validate()
    except Exception as exc:  # pragma: no cover - a construction bug
        raise StepInvalid(f"constructed tour on {spec} is invalid: {exc}") from exc
    if spec.is_surface and not matches_target(spec, classify(spec, tour), target):
        raise StepInvalid(f"constructed tour on {spec} has class {classify(spec, tour)}, not {target}")
    return tour


# -- freezing ------------------------------------------------------------------------


def rebuild_fixtures(store: FixtureStore = DEFAULT_STORE, budget: Budget = DEFAULT_BUDGET) -> dict[str, str]:
    """Re-derive every seed and frame from scratch and write them to ``store``.

    Returns the new manifest as name -> sha256.
    """
    from ..serialize import TourDocument
    from .families import RULES
    from .store import fixture_name, frame_name

    _seed_cache.clear()
    _frame_cache.clear()
    entries: dict[str, tuple[bytes, dict]] = {}
    for family in FRAMES:
        frame = derive_family_frame(family)
        _frame_cache[family] = frame
        entries[frame_name(family)] = (frame.to_bytes(), {"family": family.value, "kind": "frame"})
    for r in RULES.values():
        for size in r.seeds():
            fixture = derive_base_case(r.family, size, budget)
            _seed_cache[(r.family, tuple(size))] = fixture
            meta = {"family": r.family.value, "kind": "tour", "m": size[0], "n": size[1]}
            entries[fixture_name(r.family, size)] = (TourDocument.of(fixture.tour).to_bytes(), meta)
    store.write(entries)
    _seed_cache.clear()
    _frame_cache.clear()
    return {name: meta["sha256"] for name, meta in store.manifest().items()}
