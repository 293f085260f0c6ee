"""Inductive tour families and the constructor dispatcher."""
from .build import (
    build,
    construct,
    derive_base_case,
    derive_family_frame,
    extend,
    family_for,
    family_frame,
    generator_by_open_tour,
    rebuild_fixtures,
    seed_fixture,
)
from .families import RULES, Band, Family, HookSpec, Rule, hook_spec, rule
from .frames import Frame, path_cover
from .store import DEFAULT_STORE, Fixture, FixtureCorrupt, FixtureStore

__all__ = [
    "Band",
    "DEFAULT_STORE",
    "Family",
    "Fixture",
    "FixtureCorrupt",
    "FixtureStore",
    "Frame",
    "HookSpec",
    "RULES",
    "Rule",
    "build",
    "construct",
    "derive_base_case",
    "derive_family_frame",
    "extend",
    "family_for",
    "family_frame",
    "generator_by_open_tour",
    "hook_spec",
    "path_cover",
    "rebuild_fixtures",
    "rule",
    "seed_fixture",
]
