"""Lifts of tours to the strip / plane covers, and homotopy classification.

A closed tour on the m x n cylinder lifts to a path in the width-m strip
starting at (0, 0) and ending at (0, k*n); ``k`` is its winding number.  On
the torus the lift lives in the plane and ends at (p*m, q*n).  The class is
read off that endpoint; no continuous geometry is needed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .boardgraph import BoardSpec, Topology
from .errors import InvalidTour, NotASurface, TargetTopologyMismatch
from .tour import Tour


class LiftPoint(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class LiftPath:
    points: tuple[LiftPoint, ...]

    @property
    def end(self) -> LiftPoint:
        return self.points[-1]

    @property
    def displacement(self) -> tuple[int, int]:
        return (self.points[-1][0] - self.points[0][0], self.points[-1][1] - self.points[0][1])

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class CylinderClass:
    k: int

    def __neg__(self) -> "CylinderClass":
        return CylinderClass(-self.k)

    def __str__(self) -> str:
        return f"k={self.k}"


@dataclass(frozen=True)
class TorusClass:
    p: int
    q: int

    def __neg__(self) -> "TorusClass":
        return TorusClass(-self.p, -self.q)

    def __str__(self) -> str:
        return f"p={self.p} q={self.q}"


HomotopyClass = Union[CylinderClass, TorusClass]


class TargetKind(enum.Enum):
    IDENTITY = "identity"
    GENERATOR = "generator"
    LONGITUDE = "longitude"
    EXACT = "exact"
    ANY = "any"


@dataclass(frozen=True)
class ClassTarget:
    kind: TargetKind
    exact: Optional[HomotopyClass] = None

    def __post_init__(self) -> None:
        if (self.kind is TargetKind.EXACT) != (self.exact is not None):
            raise ValueError("an exact class is required for, and only for, EXACT targets")

    @classmethod
    def parse(cls, text: str) -> "ClassTarget":
        """Parse ``identity|generator|longitude|any|exact:K|exact:P,Q``."""
        text = text.strip().lower()
        if text.startswith("exact:"):
            parts = [int(v) for v in text[len("exact:"):].split(",")]
            if len(parts) == 1:
                return cls(TargetKind.EXACT, CylinderClass(parts[0]))
            if len(parts) == 2:
                return cls(TargetKind.EXACT, TorusClass(*parts))
            raise ValueError(f"bad exact class {text!r}")
        return cls(TargetKind(text))

    def __str__(self) -> str:
        if self.kind is TargetKind.EXACT:
            c = self.exact
            return f"exact:{c.k}" if isinstance(c, CylinderClass) else f"exact:{c.p},{c.q}"
        return self.kind.value


IDENTITY = ClassTarget(TargetKind.IDENTITY)
GENERATOR = ClassTarget(TargetKind.GENERATOR)
LONGITUDE = ClassTarget(TargetKind.LONGITUDE)
ANY = ClassTarget(TargetKind.ANY)


def exact(cls_: HomotopyClass) -> ClassTarget:
    return ClassTarget(TargetKind.EXACT, cls_)


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"


class Obstruction(enum.Enum):
    BLOCKED = "blocked"
    NOT_BLOCKED = "not_blocked"


def color(pt: tuple[int, int]) -> Color:
    return Color.RED if (pt[0] + pt[1]) % 2 == 0 else Color.BLUE


def _require_surface(spec: BoardSpec) -> None:
    if not spec.is_surface:
        raise NotASurface(f"{spec} has no covering strip/plane")


def lift_points(start: tuple[int, int], pairs) -> list[LiftPoint]:
    a, b = start
    pts = [LiftPoint(a, b)]
    for x, y in pairs:
        a += x
        b += y
        pts.append(LiftPoint(a, b))
    return pts


def lift_tour(spec: BoardSpec, tour: Tour) -> LiftPath:
    """Lift ``tour`` from the base point.

    Closed tours are first rotated to begin at the base square (0, 0), so the
    lift starts at (0, 0) and strip lifts keep every column in [0, m).  Open
    tours are lifted from their own start square.
    """
    _require_surface(spec)
    if tour.spec != spec:
        raise InvalidTour(f"tour is on {tour.spec}, not {spec}")
    tour.validate()
    if tour.closed and tour.jumps:
        tour = tour.rotated_to((0, 0))
    return LiftPath(tuple(lift_points(tour.start, tour.pairs)))


def class_from_displacement(spec: BoardSpec, dx: int, dy: int) -> HomotopyClass:
    _require_surface(spec)
    if spec.topology is Topology.CYLINDER:
        if dx != 0 or dy % spec.n:
            raise InvalidTour(f"displacement ({dx},{dy}) does not close on {spec}")
        return CylinderClass(dy // spec.n)
    if dx % spec.m or dy % spec.n:
        raise InvalidTour(f"displacement ({dx},{dy}) does not close on {spec}")
    return TorusClass(dx // spec.m, dy // spec.n)


def classify(spec: BoardSpec, tour: Tour) -> HomotopyClass:
    _require_surface(spec)
    if not tour.closed:
        raise InvalidTour("only closed tours have a homotopy class")
    if tour.spec != spec:
        raise InvalidTour(f"tour is on {tour.spec}, not {spec}")
    tour.validate()
    dx = sum(p[0] for p in tour.pairs)
    dy = sum(p[1] for p in tour.pairs)
    return class_from_displacement(spec, dx, dy)


def _check_target_topology(spec: BoardSpec, target: ClassTarget) -> None:
    kind = target.kind
    if kind is TargetKind.GENERATOR and spec.topology is not Topology.CYLINDER:
        raise TargetTopologyMismatch("generator targets apply to cylinders only")
    if kind is TargetKind.LONGITUDE and spec.topology is not Topology.TORUS:
        raise TargetTopologyMismatch("longitude targets apply to tori only")
    if kind is TargetKind.EXACT:
        want = CylinderClass if spec.topology is Topology.CYLINDER else TorusClass
        if spec.topology is Topology.REGULAR or not isinstance(target.exact, want):
            raise TargetTopologyMismatch(f"{target} does not match {spec}")


def matches_target(spec: BoardSpec, cls_: HomotopyClass, target: ClassTarget) -> bool:
    _check_target_topology(spec, target)
    expected = CylinderClass if spec.topology is Topology.CYLINDER else TorusClass
    if not isinstance(cls_, expected):
        raise TargetTopologyMismatch(f"{cls_} is not a class on {spec}")
    kind = target.kind
    if kind is TargetKind.ANY:
        return True
    if kind is TargetKind.IDENTITY:
        return cls_ == -cls_
    if kind is TargetKind.GENERATOR:
        return abs(cls_.k) == 1
    if kind is TargetKind.LONGITUDE:
        return cls_.p == 0 and abs(cls_.q) == 1
    return cls_ == target.exact or cls_ == -target.exact


def target_endpoints(spec: BoardSpec, target: ClassTarget) -> Optional[frozenset[tuple[int, int]]]:
    """Lift endpoints a closed tour matching ``target`` may have; None means unconstrained.

    Regular boards do not wrap, so every closed tour returns to its start.
    """
    kind = target.kind
    if spec.topology is Topology.REGULAR:
        if kind not in (TargetKind.ANY, TargetKind.IDENTITY):
            raise TargetTopologyMismatch(f"{target} is meaningless on {spec}")
        return frozenset({(0, 0)})
    _check_target_topology(spec, target)
    m, n = spec.m, spec.n
    if kind is TargetKind.ANY:
        return None
    if kind is TargetKind.IDENTITY:
        return frozenset({(0, 0)})
    if kind in (TargetKind.GENERATOR, TargetKind.LONGITUDE):
        return frozenset({(0, n), (0, -n)})
    c = target.exact
    if isinstance(c, CylinderClass):
        return frozenset({(0, c.k * n), (0, -c.k * n)})
    return frozenset({(c.p * m, c.q * n), (-c.p * m, -c.q * n)})


def parity_congruence_holds(spec: BoardSpec, cls_: HomotopyClass, moves: Optional[int] = None) -> bool:
    """Two-colouring constraint: the lift endpoint's colour parity equals the number of moves."""
    if moves is None:
        moves = 0 if spec.size == 1 else spec.size
    if isinstance(cls_, CylinderClass):
        total = cls_.k * spec.n
    else:
        total = cls_.p * spec.m + cls_.q * spec.n
    return (total - moves) % 2 == 0


def parity_obstruction(spec: BoardSpec, target: ClassTarget) -> Obstruction:
    _require_surface(spec)
    if target.kind not in (TargetKind.IDENTITY, TargetKind.GENERATOR, TargetKind.LONGITUDE):
        raise TargetTopologyMismatch(f"parity obstruction is defined for identity/generator/longitude, not {target}")
    _check_target_topology(spec, target)
    if spec.size == 1:
        return Obstruction.NOT_BLOCKED
    if target.kind is TargetKind.IDENTITY:
        witness = CylinderClass(0) if spec.topology is Topology.CYLINDER else TorusClass(0, 0)
    elif target.kind is TargetKind.GENERATOR:
        witness = CylinderClass(1)
    else:
        witness = TorusClass(0, 1)
    return Obstruction.NOT_BLOCKED if parity_congruence_holds(spec, witness) else Obstruction.BLOCKED
