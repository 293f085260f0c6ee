"""Auxiliary open paths spliced in by some induction steps.

A frame is a set of vertex-disjoint knight paths on a small regular board
that together cover every square, with prescribed endpoints and some
prescribed edges.  Boards are tiny (12 squares), so a plain backtracking
search suffices.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from ..boardgraph import KNIGHT_PAIRS, BoardSpec, Square, Topology
from ..errors import BaseCaseNotFound

Point = tuple[int, int]


@dataclass(frozen=True)
class Frame:
    spec: BoardSpec
    paths: tuple[tuple[Square, ...], ...]

    def edges(self) -> set[frozenset]:
        return {frozenset((p, q)) for path in self.paths for p, q in zip(path, path[1:])}

    def placed(self, offset: Point) -> list[list[Point]]:
        """The paths translated by ``offset``."""
        return [[(a + offset[0], b + offset[1]) for a, b in path] for path in self.paths]

    def validate(self, ends: Sequence[tuple[Point, Point]], required: Sequence[tuple[Point, Point]] = ()) -> None:
        seen = [sq for path in self.paths for sq in path]
        if sorted(seen) != sorted(self.spec.squares()):
            raise ValueError("frame paths do not partition the board")
        for path, (s, t) in zip(self.paths, ends):
            if (path[0], path[-1]) != (tuple(s), tuple(t)):
                raise ValueError(f"frame path runs {path[0]}..{path[-1]}, expected {s}..{t}")
            for p, q in zip(path, path[1:]):
                if sorted((abs(p[0] - q[0]), abs(p[1] - q[1]))) != [1, 2]:
                    raise ValueError(f"{p}-{q} is not a knight move")
        have = self.edges()
        for p, q in required:
            if frozenset((tuple(p), tuple(q))) not in have:
                raise ValueError(f"frame lacks edge {p}-{q}")

    def to_bytes(self) -> bytes:
        obj = {
            "format_version": 1,
            "topology": self.spec.topology.value,
            "m": self.spec.m,
            "n": self.spec.n,
            "paths": [[[a, b] for a, b in path] for path in self.paths],
        }
        return (json.dumps(obj, separators=(",", ":")) + "\n").encode("ascii")

    @property
    def checksum(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()

    @classmethod
    def from_bytes(cls, data: bytes) -> "Frame":
        obj = json.loads(data)
        spec = BoardSpec(Topology(obj["topology"]), obj["m"], obj["n"])
        paths = tuple(tuple(Square(a, b) for a, b in path) for path in obj["paths"])
        return cls(spec, paths)


def path_cover(
    spec: BoardSpec,
    ends: Sequence[tuple[Point, Point]],
    required: Sequence[tuple[Point, Point]] = (),
) -> Optional[Frame]:
    """First (in knight-pair order) cover of ``spec`` by paths ``s_i ~> t_i`` using every ``required`` edge."""
    if spec.topology is not Topology.REGULAR:
        raise ValueError("frames live on regular boards")
    ends = [(Square(*s), Square(*t)) for s, t in ends]
    need = {frozenset((tuple(p), tuple(q))) for p, q in required}
    reserved = {sq for pair in ends for sq in pair}
    total = spec.size
    visited: set[Square] = set()
    paths: list[list[Square]] = []

    def step(k: int, cur: Square) -> bool:
        path = paths[k]
        target = ends[k][1]
        if cur == target:
            if k + 1 == len(ends):
                if len(visited) != total:
                    return False
                return need <= {frozenset(e) for p in paths for e in zip(p, p[1:])}
            nxt = ends[k + 1][0]
            if nxt in visited:
                return False
            visited.add(nxt)
            paths.append([nxt])
            if step(k + 1, nxt):
                return True
            paths.pop()
            visited.discard(nxt)
            return False
        for x, y in KNIGHT_PAIRS:
            sq = spec.wrap(cur[0] + x, cur[1] + y)
            if sq is None or sq in visited:
                continue
            if sq in reserved and sq != target:
                continue
            visited.add(sq)
            path.append(sq)
            if step(k, sq):
                return True
            path.pop()
            visited.discard(sq)
        return False

    if not ends:
        return None
    s0 = ends[0][0]
    visited.add(s0)
    paths.append([s0])
    if step(0, s0):
        return Frame(spec, tuple(tuple(p) for p in paths))
    return None


def derive_frame(spec: BoardSpec, ends, required=()) -> Frame:
    frame = path_cover(spec, ends, required)
    if frame is None:
        raise BaseCaseNotFound(f"no path cover of {spec} with ends {ends} and edges {required}")
    frame.validate(ends, required)
    return frame
