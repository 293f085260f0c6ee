"""Canonical JSON documents for tours.

A document lists the board, the start square and the knight pairs in order.
Keys are emitted in a fixed order with no whitespace variation and integers
only, so equal tours always produce identical bytes and a stable checksum.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

from .boardgraph import BoardSpec, Topology
from .errors import InvalidTour, KnightTopoError
from .lift import CylinderClass, HomotopyClass, TorusClass, classify
from .tour import Tour

FORMAT_VERSION = 1


class DocumentError(KnightTopoError):
    """A tour document is malformed or contradicts itself."""


@dataclass(frozen=True)
class TourDocument:
    tour: Tour
    declared: Optional[HomotopyClass] = None

    @classmethod
    def of(cls, tour: Tour) -> "TourDocument":
        """Document for ``tour``, declaring its class when it has one."""
        declared = classify(tour.spec, tour) if tour.closed and tour.spec.is_surface else None
        return cls(tour, declared)

    def to_obj(self) -> dict:
        t = self.tour
        obj = {
            "format_version": FORMAT_VERSION,
            "topology": t.spec.topology.value,
            "m": t.spec.m,
            "n": t.spec.n,
            "closed": t.closed,
            "start": [t.start[0], t.start[1]],
            "moves": [[x, y] for x, y in t.pairs],
        }
        c = self.declared
        if isinstance(c, CylinderClass):
            obj["class"] = {"k": c.k}
        elif isinstance(c, TorusClass):
            obj["class"] = {"p": c.p, "q": c.q}
        return obj

    def to_bytes(self) -> bytes:
        return (json.dumps(self.to_obj(), separators=(",", ":")) + "\n").encode("ascii")

    @property
    def checksum(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()

    @classmethod
    def from_obj(cls, obj: dict) -> "TourDocument":
        try:
            if obj["format_version"] != FORMAT_VERSION:
                raise DocumentError(f"unsupported format_version {obj['format_version']}")
            spec = BoardSpec(Topology(obj["topology"]), _int(obj["m"]), _int(obj["n"]))
            closed = obj["closed"]
            if not isinstance(closed, bool):
                raise DocumentError("closed must be a boolean")
            start = tuple(_int(v) for v in obj["start"])
            pairs = [tuple(_int(v) for v in mv) for mv in obj["moves"]]
            if len(start) != 2 or any(len(p) != 2 for p in pairs):
                raise DocumentError("start and moves must be integer pairs")
            tour = Tour.from_pairs(spec, start, pairs, closed)
            tour.validate()
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"malformed tour document: {exc}") from exc
        except InvalidTour as exc:
            raise DocumentError(f"document holds an invalid tour: {exc}") from exc
        declared = _parse_class(obj.get("class"))
        if declared is not None:
            if not (closed and spec.is_surface):
                raise DocumentError("only closed tours on a cylinder or torus carry a class")
            actual = classify(spec, tour)
            if actual != declared:
                raise DocumentError(f"declared class {declared} but the tour has {actual}")
        return cls(tour, declared)

    @classmethod
    def from_bytes(cls, data: bytes) -> "TourDocument":
        try:
            obj = json.loads(data)
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise DocumentError(f"not JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise DocumentError("a tour document is a JSON object")
        return cls.from_obj(obj)


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise DocumentError(f"expected an integer, got {v!r}")
    return v


def _parse_class(obj) -> Optional[HomotopyClass]:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise DocumentError("class must be an object")
    if set(obj) == {"k"}:
        return CylinderClass(_int(obj["k"]))
    if set(obj) == {"p", "q"}:
        return TorusClass(_int(obj["p"]), _int(obj["q"]))
    raise DocumentError(f"bad class {obj!r}")


def serialize(tour: Tour) -> bytes:
    """Canonical bytes of ``tour`` (its class is declared when defined)."""
    return TourDocument.of(tour).to_bytes()


def deserialize(data: bytes) -> Tour:
    return TourDocument.from_bytes(data).tour


def checksum(tour: Tour) -> str:
    return TourDocument.of(tour).checksum
