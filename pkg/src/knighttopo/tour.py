"""Closed and open knight's tours as sequences of directed jumps."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .boardgraph import (
    BoardSpec,
    DirectedJump,
    EdgeId,
    KnightPair,
    Square,
    apply_jump,
    canonical_edge,
    is_valid_jump,
    reverse_jump,
)
from .errors import InvalidTour


@dataclass(frozen=True)
class Tour:
    """A Hamiltonian cycle (``closed``) or path (``closed=False``) on ``spec``.

    A closed tour has ``m*n`` jumps, the last landing on ``start``; an open
    tour has ``m*n - 1``.  A 1x1 board has only the empty tour.
    """

    spec: BoardSpec
    start: Square
    jumps: tuple[DirectedJump, ...]
    closed: bool = True

    @classmethod
    def from_pairs(
        cls,
        spec: BoardSpec,
        start: tuple[int, int],
        pairs: Iterable[tuple[int, int]],
        closed: bool = True,
    ) -> "Tour":
        """Build a tour by walking knight pairs from ``start``; raises InvalidTour on a bad step."""
        cur = Square(*start)
        jumps = []
        for x, y in pairs:
            jump = DirectedJump(cur, KnightPair(x, y))
            if not is_valid_jump(spec, jump):
                raise InvalidTour(f"step {len(jumps)}: ({x},{y}) from {tuple(cur)} leaves {spec}")
            jumps.append(jump)
            cur = apply_jump(spec, jump)
        return cls(spec, Square(*start), tuple(jumps), closed)

    @classmethod
    def from_squares(cls, spec: BoardSpec, squares: Sequence[tuple[int, int]], pairs: Sequence[tuple[int, int]], closed: bool = True) -> "Tour":
        return cls.from_pairs(spec, squares[0], pairs, closed)

    @property
    def pairs(self) -> list[KnightPair]:
        return [j.pair for j in self.jumps]

    def squares(self) -> list[Square]:
        """Squares in visiting order, each once (the closing return is not repeated)."""
        if not self.jumps:
            return [self.start]
        out = [j.frm for j in self.jumps]
        if not self.closed:
            out.append(apply_jump(self.spec, self.jumps[-1]))
        return out

    def edge_ids(self) -> list[EdgeId]:
        return [canonical_edge(self.spec, j) for j in self.jumps]

    def validate(self) -> None:
        spec = self.spec
        size = spec.size
        expected = 0 if size == 1 else (size if self.closed else size - 1)
        if len(self.jumps) != expected:
            raise InvalidTour(f"expected {expected} jumps on {spec}, got {len(self.jumps)}")
        if not spec.contains(self.start):
            raise InvalidTour(f"start {tuple(self.start)} is off {spec}")
        cur = self.start
        seen = {cur}
        for i, jump in enumerate(self.jumps):
            if jump.frm != cur:
                raise InvalidTour(f"jump {i} starts at {tuple(jump.frm)}, expected {tuple(cur)}")
            if not is_valid_jump(spec, jump):
                raise InvalidTour(f"jump {i} ({tuple(jump.pair)} from {tuple(cur)}) is not a move of {spec}")
            cur = apply_jump(spec, jump)
            last = i == len(self.jumps) - 1
            if self.closed and last:
                if cur != self.start:
                    raise InvalidTour(f"closed tour ends at {tuple(cur)}, not at start {tuple(self.start)}")
            elif cur in seen:
                raise InvalidTour(f"square {tuple(cur)} visited twice")
            seen.add(cur)
        if len(seen) != size:
            raise InvalidTour(f"visited {len(seen)} of {size} squares")
        if self.closed and len(self.jumps) == 2:
            e0, e1 = self.edge_ids()
            if e0 == e1:
                raise InvalidTour("a 2-square tour must use two distinct parallel edges")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidTour:
            return False
        return True

    def rotated(self, r: int) -> "Tour":
        """The same closed tour started ``r`` jumps later."""
        if not self.closed:
            raise InvalidTour("only closed tours can be rotated")
        if not self.jumps:
            return self
        r %= len(self.jumps)
        jumps = self.jumps[r:] + self.jumps[:r]
        return Tour(self.spec, jumps[0].frm, jumps, True)

    def rotated_to(self, sq: tuple[int, int]) -> "Tour":
        for i, j in enumerate(self.jumps):
            if j.frm == tuple(sq):
                return self.rotated(i)
        if tuple(sq) == tuple(self.start):
            return self
        raise InvalidTour(f"square {tuple(sq)} not on tour")

    def reversed(self) -> "Tour":
        """The same tour traversed backwards from the same start (open tours: from the other end)."""
        rev = [reverse_jump(self.spec, j) for j in reversed(self.jumps)]
        if not rev:
            return self
        return Tour(self.spec, rev[0].frm, tuple(rev), self.closed)

    def on(self, spec: BoardSpec) -> "Tour":
        """Reinterpret the same jump sequence on another (compatible) board."""
        return Tour.from_pairs(spec, self.start, self.pairs, self.closed)


def transpose_tour(tour: Tour) -> Tour:
    """Swap the roles of columns and rows: (a, b) -> (b, a), (x, y) -> (y, x).

    Only regular and toroidal boards are closed under transposition.
    """
    if tour.spec.topology.value == "cylinder":
        raise ValueError("a transposed cylinder wraps columns; embed the tour in a torus first")
    spec = tour.spec.transposed()
    return Tour.from_pairs(spec, (tour.start[1], tour.start[0]), [(y, x) for x, y in tour.pairs], tour.closed)
