"""Frozen base-case tours and frames, with a checksum manifest.

Each fixture is one tour document named ``<family>_<m>x<n>.json``; frames
are ``<family>_frame.json``.  ``manifest.json`` records the sha256 of every
file, so a silently edited fixture is rejected on load.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..serialize import TourDocument
from ..tour import Tour
from .families import Family
from .frames import Frame

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"
MANIFEST = "manifest.json"


class FixtureCorrupt(Exception):
    pass


@dataclass(frozen=True)
class Fixture:
    family: Family
    size: tuple[int, int]
    tour: Tour
    checksum: str

    @classmethod
    def of(cls, family: Family, tour: Tour) -> "Fixture":
        return cls(Family(family), (tour.spec.m, tour.spec.n), tour, TourDocument.of(tour).checksum)


def fixture_name(family: Family, size: tuple[int, int]) -> str:
    return f"{Family(family).value}_{size[0]}x{size[1]}.json"


def frame_name(family: Family) -> str:
    return f"{Family(family).value}_frame.json"


class FixtureStore:
    def __init__(self, root: Path = FIXTURE_DIR):
        self.root = Path(root)

    def manifest(self) -> dict:
        path = self.root / MANIFEST
        if not path.exists():
            return {}
        return json.loads(path.read_text())

    def _read(self, name: str) -> Optional[bytes]:
        path = self.root / name
        if not path.exists():
            return None
        data = path.read_bytes()
        expected = self.manifest().get(name, {}).get("sha256")
        if expected is None:
            raise FixtureCorrupt(f"{name} is not listed in the manifest")
        if hashlib.sha256(data).hexdigest() != expected:
            raise FixtureCorrupt(f"{name} does not match its manifest checksum")
        return data

    def load(self, family: Family, size: tuple[int, int]) -> Optional[Fixture]:
        data = self._read(fixture_name(family, size))
        if data is None:
            return None
        return Fixture.of(family, TourDocument.from_bytes(data).tour)

    def load_frame(self, family: Family) -> Optional[Frame]:
        data = self._read(frame_name(family))
        return None if data is None else Frame.from_bytes(data)

    def write(self, entries: dict[str, tuple[bytes, dict]]) -> None:
        """Replace the store's contents with ``entries`` (name -> (bytes, metadata))."""
        self.root.mkdir(parents=True, exist_ok=True)
        for old in self.root.glob("*.json"):
            old.unlink()
        manifest = {}
        for name in sorted(entries):
            data, meta = entries[name]
            (self.root / name).write_bytes(data)
            manifest[name] = dict(meta, sha256=hashlib.sha256(data).hexdigest())
        (self.root / MANIFEST).write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


DEFAULT_STORE = FixtureStore()
