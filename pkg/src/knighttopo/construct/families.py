"""Tour families: which boards each induction covers and what it consumes.

Every family fixes a topology and a target class.  Edge families grow one
dimension by replacing named hook edges of the lift; band families append
a translated piece to a lift path that starts at (0, 0), which requires
the path to stay clear of the rows (or squares) the piece will occupy.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..boardgraph import BoardSpec, EdgeId, Topology
from ..errors import InvalidTour
from ..lift import GENERATOR, IDENTITY, LONGITUDE, ClassTarget, classify, lift_points, matches_target
from ..tour import Tour
from .surgery import LiftEdge, Point, lift_edge_id, lift_from_base, match_hooks


class Family(str, enum.Enum):
    NULL_CYL_MX1 = "NullCyl_Mx1"
    NULL_CYL_MX2 = "NullCyl_Mx2"
    NULL_CYL_MX3 = "NullCyl_Mx3"
    NULL_CYL_3XN = "NullCyl_3xN"
    NULL_CYL_MX4 = "NullCyl_Mx4"
    NULL_CYL_4XN = "NullCyl_4xN"
    NULL_TORUS_SMALL = "NullTorus_Small"
    GEN_CYL_MX1 = "GenCyl_Mx1"
    GEN_CYL_MX2 = "GenCyl_Mx2"
    GEN_CYL_MX3 = "GenCyl_Mx3"
    GEN_CYL_3XN = "GenCyl_3xN"
    GEN_CYL_MX4 = "GenCyl_Mx4"
    GEN_CYL_5XN = "GenCyl_5xN"
    GEN_CYL_DELEGATED = "GenCyl_Delegated"
    LON_TORUS_1XN = "LonTorus_1xN"
    LON_TORUS_2XN = "LonTorus_2xN"
    LON_TORUS_4XN = "LonTorus_4xN"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Band:
    """A lift path from (0, 0) to ``endpoint`` whose other points all satisfy ``allows``."""

    endpoint: Point
    allows: Callable[[int, int], bool] = field(compare=False)
    description: str

    def admits(self, pts) -> bool:
        return tuple(pts[-1]) == self.endpoint and all(self.allows(a, b) for a, b in pts[1:])


@dataclass(frozen=True)
class HookSpec:
    family: Family
    size: tuple[int, int]
    target: ClassTarget
    topology: Topology
    edges: tuple[LiftEdge, ...] = ()
    band: Optional[Band] = None

    @property
    def spec(self) -> BoardSpec:
        return BoardSpec(self.topology, *self.size)

    @property
    def required_edges(self) -> frozenset[EdgeId]:
        return frozenset(lift_edge_id(self.spec, a, b) for a, b in self.edges)

    def band_path(self, tour: Tour) -> Optional[list[Point]]:
        """The traversal of ``tour`` from (0, 0) whose lift satisfies the band, if any."""
        if self.band is None:
            return None
        base = tour.rotated_to((0, 0))
        for t in (base, base.reversed()):
            pts = [tuple(p) for p in lift_points((0, 0), t.pairs)]
            if self.band.admits(pts):
                return pts
        return None

    def holds(self, tour: Tour) -> bool:
        """Tour is a valid closed tour of the target class carrying every hook."""
        if tour.spec != self.spec or not tour.closed:
            return False
        try:
            tour.validate()
            if not matches_target(self.spec, classify(self.spec, tour), self.target):
                return False
        except InvalidTour:
            return False
        if self.edges and match_hooks(self.spec, lift_from_base(tour), self.edges) is None:
            return False
        if self.band is not None and self.band_path(tour) is None:
            return False
        return True


@dataclass(frozen=True)
class Rule:
    family: Family
    topology: Topology
    target: ClassTarget
    covers: Callable[[int, int], bool] = field(compare=False)
    bases: tuple[tuple[int, int], ...] = ()
    fixtures: tuple[tuple[int, int], ...] = ()
    step: Optional[tuple[int, int]] = None
    hooks: Callable[[int, int], tuple[LiftEdge, ...]] = field(default=lambda m, n: (), compare=False)
    band: Callable[[int, int], Optional[Band]] = field(default=lambda m, n: None, compare=False)

    def hook_spec(self, m: int, n: int) -> HookSpec:
        return HookSpec(self.family, (m, n), self.target, self.topology, self.hooks(m, n), self.band(m, n))

    def seeds(self) -> tuple[tuple[int, int], ...]:
        """Every size whose tour is a stored fixture rather than an induction product."""
        return tuple(sorted(set(self.bases) | set(self.fixtures)))

    def base_for(self, m: int, n: int) -> Optional[tuple[int, int]]:
        """The stored size from which (m, n) is reached by whole induction steps."""
        if (m, n) in self.fixtures or (m, n) in self.bases:
            return (m, n)
        if self.step is None:
            return None
        dm, dn = self.step
        for bm, bn in self.bases:
            if dm and n == bn and m > bm and (m - bm) % dm == 0:
                return (bm, bn)
            if dn and m == bm and n > bn and (n - bn) % dn == 0:
                return (bm, bn)
        return None

    def next_size(self, m: int, n: int) -> tuple[int, int]:
        if self.step is None:
            raise ValueError(f"{self.family} has no induction step")
        return (m + self.step[0], n + self.step[1])


def _even(v: int) -> bool:
    return v % 2 == 0


def _rows_from(mod: int, lo: int, endpoint: Point, what: str) -> Band:
    return Band(endpoint, lambda a, b: b % mod >= lo, f"{what}: rows mod {mod} stay >= {lo} off the base point")


# -- hook formulas -------------------------------------------------------------


def _null_mx1_hooks(m, n):
    h = m // 2
    return (((m - 2, -h + 1), (m - 1, -h + 3)),)


def _p(m: int) -> int:
    return m - 1 if m % 2 == 0 else m


def _null_mx2_hooks(m, n):
    p = _p(m)
    return (
        ((m - 1, (5 - p) // 2), (m - 2, (9 - p) // 2)),
        ((m - 1, (p - 3) // 2), (m - 2, (p - 7) // 2)),
    )


def _null_mx4_hooks(m, n):
    hook = ((m - 2, -1), (m - 1, -3))
    if m == 3:
        # the 3x4 tour doubles as the piece spliced in by every later step
        return (hook, ((0, 0), (1, -2)))
    return (hook,)


def _null_4xn_hooks(m, n):
    return (
        ((0, -n + 1), (2, -n + 2)),
        ((1, -n + 1), (3, -n + 2)),
        ((0, n - 1), (2, n)),
        ((1, n - 1), (3, n)),
    )


def _gen_mx1_hooks(m, n):
    return (((m - 1, (3 - m) // 2), (m - 2, (-m - 1) // 2)),)


def _gen_mx2_hooks(m, n):
    return (((m - 1, 2), (m - 2, 0)), ((m - 1, 1), (m - 2, -1)))


def _gen_mx3_hooks(m, n):
    return (((m - 1, 1), (m - 2, 3)),)


def _gen_mx4_hooks(m, n):
    return (((m - 1, 0), (m - 2, 2)), ((m - 2, 0), (m - 1, 2)))


# -- band conditions -------------------------------------------------------------


def _band_3xn(m, n):
    if n in (5, 6):
        return None
    return _rows_from(n + 4, 4, (0, -n), f"image in C(3,{n + 4})")


def _band_5xn(m, n):
    if n % 2:
        return None
    return _rows_from(n + 4, 4, (0, -n), f"image in C(5,{n + 4})")


def _band_lon_4xn(m, n):
    if n == 2:
        return None
    return _rows_from(n + 4, 4, (0, -n), f"image in T(4,{n + 4})")


def _band_lon_1xn(m, n):
    return Band((0, n), lambda a, b: b % (n + 2) != n + 1, f"image in T(1,{n + 2}) avoids row {n + 1}")


def _clear_of_2xn_piece(a: int, b: int, n: int) -> bool:
    """(a, b) avoids (0,1), (1,3), (1,4) in T(2,M) for every height M = n+2, n+4, ...

    The appended piece lands on exactly those squares of T(2,n+2).  Asking
    only for M = n+2 is not preserved by the step for every base tour, so
    the band asks for all later heights too; once M exceeds |b| + 4 the
    residue of b no longer changes, so finitely many heights suffice.
    """
    for mod in range(n + 2, abs(b) + 8 + n, 2):
        if (a % 2, b % mod) in {(0, 1), (1, 3), (1, 4 % mod)}:
            return False
    return True


def _band_lon_2xn(m, n):
    return Band(
        (0, -n),
        lambda a, b: _clear_of_2xn_piece(a, b, n),
        f"image in T(2,M) avoids (0,1), (1,3), (1,4) for every M >= {n + 2} of the same parity",
    )


_C, _T = Topology.CYLINDER, Topology.TORUS

RULES: dict[Family, Rule] = {
    r.family: r
    for r in (
        Rule(Family.NULL_CYL_MX1, _C, IDENTITY, lambda m, n: n == 1 and _even(m) and m >= 4,
             bases=((4, 1),), step=(2, 0), hooks=_null_mx1_hooks),
        Rule(Family.NULL_CYL_MX2, _C, IDENTITY, lambda m, n: n == 2 and m >= 3 and m != 4,
             bases=((3, 2), (6, 2)), step=(2, 0), hooks=_null_mx2_hooks),
        Rule(Family.NULL_CYL_MX3, _C, IDENTITY, lambda m, n: n == 3 and _even(m) and m >= 4,
             fixtures=((4, 3), (6, 3), (8, 3))),
        Rule(Family.NULL_CYL_3XN, _C, IDENTITY, lambda m, n: m == 3 and _even(n) and n >= 4,
             fixtures=((3, 4), (3, 6), (3, 8))),
        Rule(Family.NULL_CYL_MX4, _C, IDENTITY, lambda m, n: n == 4 and m >= 3 and m != 4,
             bases=((3, 4), (5, 4), (7, 4)), step=(3, 0), hooks=_null_mx4_hooks),
        Rule(Family.NULL_CYL_4XN, _C, IDENTITY, lambda m, n: m == 4 and n % 2 == 1 and n >= 5,
             bases=((4, 5),), step=(0, 2), hooks=_null_4xn_hooks),
        Rule(Family.NULL_TORUS_SMALL, _T, IDENTITY, lambda m, n: (m, n) in ((2, 2), (4, 2), (4, 4)),
             fixtures=((2, 2), (4, 2), (4, 4))),
        Rule(Family.GEN_CYL_MX1, _C, GENERATOR, lambda m, n: n == 1 and m % 2 == 1 and m >= 3,
             bases=((3, 1),), step=(2, 0), hooks=_gen_mx1_hooks),
        Rule(Family.GEN_CYL_MX2, _C, GENERATOR, lambda m, n: n == 2 and m >= 3 and m != 4,
             bases=((3, 2), (6, 2)), step=(2, 0), hooks=_gen_mx2_hooks),
        Rule(Family.GEN_CYL_MX3, _C, GENERATOR, lambda m, n: n == 3 and m % 2 == 1 and m >= 3,
             bases=((3, 3), (5, 3)), step=(4, 0), hooks=_gen_mx3_hooks),
        Rule(Family.GEN_CYL_3XN, _C, GENERATOR, lambda m, n: m == 3 and n >= 4,
             bases=((3, 4), (3, 7), (3, 9), (3, 10)), fixtures=((3, 5), (3, 6)), step=(0, 4), band=_band_3xn),
        Rule(Family.GEN_CYL_MX4, _C, GENERATOR, lambda m, n: n == 4 and m >= 5,
             bases=((5, 4), (6, 4), (7, 4)), step=(3, 0), hooks=_gen_mx4_hooks),
        Rule(Family.GEN_CYL_5XN, _C, GENERATOR, lambda m, n: m == 5 and n >= 4 and (_even(n) or n == 5),
             bases=((5, 4), (5, 6)), fixtures=((5, 5),), step=(0, 4), band=_band_5xn),
        Rule(Family.GEN_CYL_DELEGATED, _C, GENERATOR,
             lambda m, n: (m >= 6 and n >= 6 and _even(n))
             or (m % 2 == 1 and n % 2 == 1 and m >= 5 and n >= 5 and max(m, n) > 5)),
        Rule(Family.LON_TORUS_1XN, _T, LONGITUDE, lambda m, n: m == 1 and n >= 2,
             bases=((1, 2), (1, 3)), step=(0, 2), band=_band_lon_1xn),
        Rule(Family.LON_TORUS_2XN, _T, LONGITUDE, lambda m, n: m == 2 and _even(n) and n >= 2,
             bases=((2, 2),), step=(0, 2), band=_band_lon_2xn),
        Rule(Family.LON_TORUS_4XN, _T, LONGITUDE, lambda m, n: m == 4 and _even(n) and n >= 2,
             bases=((4, 4), (4, 6)), fixtures=((4, 2),), step=(0, 4), band=_band_lon_4xn),
    )
}


def rule(family: Family) -> Rule:
    return RULES[Family(family)]


def hook_spec(family: Family, size: tuple[int, int]) -> HookSpec:
    return rule(family).hook_spec(*size)
