"""Characterization predicates and sweeps that confront them with evidence.

Each predicate says whether a board supports a tour of some kind.  A sweep
discharges every cell: positive predictions by constructing or finding a
tour, negative ones by the parity obstruction or exhaustive search.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .boardgraph import BoardSpec, Topology
from .errors import KnightTopoError
from .lift import ANY, GENERATOR, IDENTITY, LONGITUDE, ClassTarget, Obstruction, parity_obstruction
from .search import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExceeded,
    Found,
    Mode,
    NoSolution,
    SearchProblem,
    find_tour,
    prove_nonexistence,
)


def schwenk_predicate(m: int, n: int) -> bool:
    """Closed tour on the regular m x n board."""
    s, big = min(m, n), max(m, n)
    if m % 2 == 1 and n % 2 == 1:
        return False
    if s in (1, 2, 4):
        return False
    return not (s == 3 and big in (4, 6, 8))


def watkins_predicate(m: int, n: int) -> bool:
    """Tour on the m x n cylinder (rows wrap)."""
    if m == 1 and n > 1:
        return False
    return not (m in (2, 4) and n % 2 == 0)


def cyl_null_predicate(m: int, n: int) -> bool:
    if m % 2 == 1 and n % 2 == 1 and m * n > 1:
        return False
    if m == 1 and n > 1:
        return False
    if m == 2:
        return False
    return not (m == 4 and n % 2 == 0)


def tori_null_predicate(m: int, n: int) -> bool:
    if (m, n) == (1, 1):
        return True
    if (m, n) in ((1, 2), (2, 1)):
        return False
    return m % 2 == 0 or n % 2 == 0


def cyl_gen_predicate(m: int, n: int) -> bool:
    if m in (1, 2, 4):
        return False
    return not (m % 2 == 0 and n % 2 == 1)


def torus_lon_predicate(m: int, n: int) -> bool:
    if (m, n) == (1, 1):
        return False
    return m % 2 == 1 or n % 2 == 0


class Source(str, enum.Enum):
    SCHWENK = "Schwenk"
    WATKINS = "Watkins"
    CYL_NULL = "CylNull"
    TORI_NULL = "ToriNull"
    CYL_GEN = "CylGen"
    TORUS_LON = "TorusLon"


_SOURCES = {
    Source.SCHWENK: (Topology.REGULAR, ANY, schwenk_predicate),
    Source.WATKINS: (Topology.CYLINDER, ANY, watkins_predicate),
    Source.CYL_NULL: (Topology.CYLINDER, IDENTITY, cyl_null_predicate),
    Source.TORI_NULL: (Topology.TORUS, IDENTITY, tori_null_predicate),
    Source.CYL_GEN: (Topology.CYLINDER, GENERATOR, cyl_gen_predicate),
    Source.TORUS_LON: (Topology.TORUS, LONGITUDE, torus_lon_predicate),
}


@dataclass(frozen=True)
class Claim:
    spec: BoardSpec
    target: ClassTarget
    predicted: bool
    source: Source

    @classmethod
    def of(cls, source: Source, m: int, n: int) -> "Claim":
        source = Source(source)
        topology, target, predicate = _SOURCES[source]
        return cls(BoardSpec(topology, m, n), target, predicate(m, n), source)


class Method(str, enum.Enum):
    SEARCH_ONLY = "search"
    CONSTRUCT_THEN_SEARCH = "construct"


@dataclass(frozen=True)
class FoundTour:
    checksum: str
    how: str = "search"


@dataclass(frozen=True)
class ExhaustedNone:
    nodes: int = 0


@dataclass(frozen=True)
class ParityBlocked:
    pass


@dataclass(frozen=True)
class Skipped:
    reason: str


Evidence = Union[FoundTour, ExhaustedNone, ParityBlocked, Skipped]


@dataclass(frozen=True)
class VerdictRow:
    claim: Claim
    evidence: Evidence
    agree: Optional[bool]
    ms: int = 0

    def describe(self) -> str:
        ev = self.evidence
        if isinstance(ev, FoundTour):
            return f"found ({ev.how}) {ev.checksum[:12]}"
        if isinstance(ev, ExhaustedNone):
            return f"exhausted ({ev.nodes} nodes)"
        if isinstance(ev, ParityBlocked):
            return "parity-blocked"
        return f"skipped: {ev.reason}"


# Negative cells above this many squares are not exhausted under SearchOnly.
EXHAUSTIVE_LIMIT = 26


def _skip_schwenk(claim: Claim) -> Optional[str]:
    if claim.source is Source.SCHWENK and claim.spec.size == 1:
        return "R(1,1) is outside the theorem's hypotheses"
    return None


def verify_cell(source: Source, m: int, n: int, method: Method = Method.CONSTRUCT_THEN_SEARCH,
                budget: Budget = DEFAULT_BUDGET) -> VerdictRow:
    """Discharge one (source, m, n) claim."""
    import time

    from .serialize import checksum

    t0 = time.monotonic()
    claim = Claim.of(source, m, n)
    spec, target = claim.spec, claim.target

    def row(evidence: Evidence) -> VerdictRow:
        agree = None if isinstance(evidence, Skipped) else claim.predicted == isinstance(evidence, FoundTour)
        return VerdictRow(claim, evidence, agree, int((time.monotonic() - t0) * 1000))

    reason = _skip_schwenk(claim)
    if reason:
        return row(Skipped(reason))

    if claim.predicted and Method(method) is Method.CONSTRUCT_THEN_SEARCH:
        from .construct import construct

        try:
            tour = construct(spec, target, budget)
            return row(FoundTour(checksum(tour), "construct"))
        except KnightTopoError:
            pass

    if not claim.predicted and spec.is_surface and target.kind.value in ("identity", "generator", "longitude"):
        if parity_obstruction(spec, target) is Obstruction.BLOCKED:
            return row(ParityBlocked())

    if not claim.predicted and Method(method) is Method.SEARCH_ONLY and spec.size > EXHAUSTIVE_LIMIT:
        return row(Skipped(f"{spec.size} squares exceed the exhaustive limit"))

    mode = Mode.FIND_ONE if claim.predicted else Mode.PROVE_NONE
    problem = SearchProblem(spec, target, mode=mode)
    outcome = find_tour(problem, budget) if claim.predicted else prove_nonexistence(problem, budget)
    if isinstance(outcome, Found):
        return row(FoundTour(checksum(outcome.tour), "search"))
    if isinstance(outcome, NoSolution):
        return row(ExhaustedNone(outcome.nodes))
    assert isinstance(outcome, BudgetExceeded)
    return row(Skipped(f"budget exceeded after {outcome.nodes_used} nodes"))


def _cells(m_range: Iterable[int], n_range: Iterable[int], extra: Iterable[tuple[int, int]] = ()) -> list[tuple[int, int]]:
    cells = [(m, n) for m in m_range for n in n_range]
    for cell in extra:
        if tuple(cell) not in cells:
            cells.append(tuple(cell))
    return cells


def _verify_star(args) -> VerdictRow:
    return verify_cell(*args)


def verify_range(
    source: Source,
    m_range: Iterable[int],
    n_range: Iterable[int],
    method: Method = Method.CONSTRUCT_THEN_SEARCH,
    budget: Budget = DEFAULT_BUDGET,
    *,
    extra: Iterable[tuple[int, int]] = (),
    jobs: int = 1,
) -> list[VerdictRow]:
    """One row per cell of ``m_range x n_range`` (plus ``extra``), in that order.

    With ``jobs > 1`` cells run in worker processes; rows still come back in
    cell order.
    """
    cells = _cells(m_range, n_range, extra)
    if not cells:
        raise ValueError("empty range")
    args = [(Source(source), m, n, Method(method), budget) for m, n in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_verify_star, args))
    return [_verify_star(a) for a in args]
