"""Knight-move multigraphs on regular, cylindrical and toroidal boards.

Squares are ``(a, b)`` with ``a`` the column (``0 <= a < m``) and ``b`` the
row (``0 <= b < n``), rows increasing upward.  A cylinder identifies the top
and bottom rows (``b`` wraps mod ``n``); a torus additionally wraps ``a`` mod
``m``.

An edge is the class ``{(from, pair), (to, -pair)}`` of two directed jumps.
Jumps that connect the same squares with non-opposite knight pairs are
different edges, and a jump landing on its own square is a loop.  Both
survive on small boards such as the 2x1 cylinder or the 1x1 torus.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

from .errors import InvalidJump


class Topology(str, enum.Enum):
    REGULAR = "regular"
    CYLINDER = "cylinder"
    TORUS = "torus"


class Square(NamedTuple):
    a: int
    b: int


class KnightPair(NamedTuple):
    x: int
    y: int

    def __neg__(self) -> "KnightPair":
        return KnightPair(-self.x, -self.y)


class DirectedJump(NamedTuple):
    frm: Square
    pair: KnightPair


class EdgeId(NamedTuple):
    """Canonical (lexicographically least) directed jump of an edge class."""

    rep: DirectedJump


KNIGHT_PAIRS: tuple[KnightPair, ...] = tuple(
    sorted(
        KnightPair(x, y)
        for x in (-2, -1, 1, 2)
        for y in (-2, -1, 1, 2)
        if abs(x) != abs(y)
    )
)


@dataclass(frozen=True)
class BoardSpec:
    topology: Topology
    m: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.topology, Topology):
            object.__setattr__(self, "topology", Topology(self.topology))
        if int(self.m) < 1 or int(self.n) < 1:
            raise ValueError(f"board dimensions must be positive, got {self.m}x{self.n}")

    @classmethod
    def regular(cls, m: int, n: int) -> "BoardSpec":
        return cls(Topology.REGULAR, m, n)

    @classmethod
    def cylinder(cls, m: int, n: int) -> "BoardSpec":
        return cls(Topology.CYLINDER, m, n)

    @classmethod
    def torus(cls, m: int, n: int) -> "BoardSpec":
        return cls(Topology.TORUS, m, n)

    @property
    def size(self) -> int:
        return self.m * self.n

    @property
    def is_surface(self) -> bool:
        return self.topology is not Topology.REGULAR

    def with_topology(self, topology: Topology) -> "BoardSpec":
        return BoardSpec(topology, self.m, self.n)

    def transposed(self) -> "BoardSpec":
        return BoardSpec(self.topology, self.n, self.m)

    def squares(self) -> Iterator[Square]:
        for a in range(self.m):
            for b in range(self.n):
                yield Square(a, b)

    def contains(self, sq: tuple[int, int]) -> bool:
        return 0 <= sq[0] < self.m and 0 <= sq[1] < self.n

    def wrap(self, a: int, b: int) -> Optional[Square]:
        """Reduce raw coordinates by the topology's identifications, or None if off-board."""
        if self.topology is Topology.TORUS:
            return Square(a % self.m, b % self.n)
        if self.topology is Topology.CYLINDER:
            b %= self.n
        if 0 <= a < self.m and 0 <= b < self.n:
            return Square(a, b)
        return None

    def __str__(self) -> str:
        return f"{self.topology.value} {self.m}x{self.n}"


def knight_pairs() -> list[KnightPair]:
    """The 8 knight displacements, sorted by (x, y)."""
    return list(KNIGHT_PAIRS)


def _landing(spec: BoardSpec, jump: DirectedJump) -> Optional[Square]:
    frm, pair = jump
    if not spec.contains(frm):
        return None
    return spec.wrap(frm[0] + pair[0], frm[1] + pair[1])


def is_valid_jump(spec: BoardSpec, jump: DirectedJump) -> bool:
    return _landing(spec, jump) is not None


def apply_jump(spec: BoardSpec, jump: DirectedJump) -> Square:
    to = _landing(spec, jump)
    if to is None:
        raise InvalidJump(f"{jump.pair} from {tuple(jump.frm)} leaves {spec}")
    return to


def reverse_jump(spec: BoardSpec, jump: DirectedJump) -> DirectedJump:
    return DirectedJump(apply_jump(spec, jump), -KnightPair(*jump.pair))


def is_wrap_jump(spec: BoardSpec, jump: DirectedJump) -> bool:
    """True when the jump crosses an identified border (a cylindrical/toroidal move)."""
    to = apply_jump(spec, jump)
    return to != (jump.frm[0] + jump.pair[0], jump.frm[1] + jump.pair[1])


def neighbors(spec: BoardSpec, sq: Square) -> list[DirectedJump]:
    sq = Square(*sq)
    out = []
    for pair in KNIGHT_PAIRS:
        jump = DirectedJump(sq, pair)
        if _landing(spec, jump) is not None:
            out.append(jump)
    return out


def canonical_edge(spec: BoardSpec, jump: DirectedJump) -> EdgeId:
    jump = DirectedJump(Square(*jump.frm), KnightPair(*jump.pair))
    rev = reverse_jump(spec, jump)
    return EdgeId(min(jump, rev))


@lru_cache(maxsize=256)
def edges(spec: BoardSpec) -> tuple[EdgeId, ...]:
    """All edges of the multigraph, sorted."""
    found = set()
    for sq in spec.squares():
        for jump in neighbors(spec, sq):
            found.add(canonical_edge(spec, jump))
    return tuple(sorted(found))


def edge_count(spec: BoardSpec) -> int:
    return len(edges(spec))


def edge_endpoints(spec: BoardSpec, edge: EdgeId) -> tuple[Square, Square]:
    return edge.rep.frm, apply_jump(spec, edge.rep)
