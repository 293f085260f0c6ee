"""Acceptance criteria 1 to 10.

Each test records one PASS/FAIL line; ``conftest.py`` prints the lines at the
end of the run.  Budgets are pinned below and checked against measured time.
"""
import itertools
import random
import time

import pytest

from knighttopo.boardgraph import BoardSpec, Topology, edge_count
from knighttopo.construct import RULES, Family, construct, derive_base_case, extend, family_for, hook_spec, rule
from knighttopo.lift import (
    ANY,
    GENERATOR,
    IDENTITY,
    LONGITUDE,
    CylinderClass,
    TorusClass,
    classify,
    lift_tour,
    matches_target,
    parity_congruence_holds,
)
from knighttopo.search import (
    Budget,
    BudgetExceeded,
    Found,
    Mode,
    NoSolution,
    SearchProblem,
    count_tours,
    find_open_tour,
    find_tour,
    iter_tours,
    prove_nonexistence,
)
from knighttopo.theorems import (
    ExhaustedNone,
    Method,
    ParityBlocked,
    Source,
    cyl_gen_predicate,
    cyl_null_predicate,
    schwenk_predicate,
    tori_null_predicate,
    torus_lon_predicate,
    verify_range,
    watkins_predicate,
)
from knighttopo.tour import Tour

CELL_S = 60
SWEEP_CYL_S = 15 * 60
SWEEP_TORUS_S = 10 * 60
R88_S = 10
EXTEND_S = 1.0
OPEN_TOURS_S = 5 * 60
MIN_HARVEST = 500

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, RESULTS[n]


def sweep(source, cells, extra, total_s):
    t0 = time.monotonic()
    rows = verify_range(source, cells, cells, Method.CONSTRUCT_THEN_SEARCH, Budget(max_wall_ms=CELL_S * 1000), extra=extra)
    total = time.monotonic() - t0
    bad = [r for r in rows if not r.agree]
    # negatives must be discharged by parity or exhaustion, never skipped
    undischarged = [r for r in rows if not r.claim.predicted and not isinstance(r.evidence, (ParityBlocked, ExhaustedNone))]
    slow = [r for r in rows if r.ms > CELL_S * 1000]
    ok = not bad and not undischarged and not slow and total <= total_s
    worst = max(rows, key=lambda r: r.ms)
    detail = (f"{source.value}: {len(rows)} cells, {len(rows) - len(bad)} agree, "
              f"{sum(isinstance(r.evidence, ParityBlocked) for r in rows)} parity, "
              f"{sum(isinstance(r.evidence, ExhaustedNone) for r in rows)} exhausted, "
              f"slowest {worst.claim.spec} {worst.ms} ms, total {total:.1f} s (limit {total_s} s)")
    if bad or undischarged:
        detail += f"; problems at {[str(r.claim.spec) for r in bad + undischarged]}"
    return rows, ok, detail


def test_criterion_1_null_cylinders():
    rows, ok, detail = sweep(Source.CYL_NULL, range(1, 7), [(8, 3), (3, 8), (7, 4), (4, 7)], SWEEP_CYL_S)
    assert len(rows) == 40
    record(1, ok, detail)


def test_criterion_2_generator_cylinders():
    # (5,5) already lies in the 6x6 block, so 39 distinct cells
    rows, ok, detail = sweep(Source.CYL_GEN, range(1, 7), [(5, 5), (7, 3), (3, 7), (5, 8)], SWEEP_CYL_S)
    assert len(rows) == 39
    record(2, ok, detail)


def test_criterion_3_null_tori():
    rows, ok, detail = sweep(Source.TORI_NULL, range(1, 6), [(2, 2), (4, 2), (4, 4)], SWEEP_TORUS_S)
    assert len(rows) == 25
    record(3, ok, detail)


def test_criterion_4_longitude_tori():
    rows, ok, detail = sweep(Source.TORUS_LON, range(1, 6), [(4, 6), (1, 7)], SWEEP_TORUS_S)
    assert len(rows) == 27
    record(4, ok, detail)


def test_criterion_5_classical_predicates():
    disagree = []
    for m in range(1, 7):
        for n in range(1, 7):
            for topology, predicate in ((Topology.REGULAR, schwenk_predicate), (Topology.CYLINDER, watkins_predicate)):
                spec = BoardSpec(topology, m, n)
                if topology is Topology.REGULAR and spec.size == 1:
                    continue  # outside the characterization's hypotheses
                out = prove_nonexistence(SearchProblem(spec, ANY, mode=Mode.PROVE_NONE))
                assert isinstance(out, (Found, NoSolution)), spec
                if isinstance(out, Found) != predicate(m, n):
                    disagree.append(str(spec))
    t0 = time.monotonic()
    r88 = find_tour(SearchProblem(BoardSpec.regular(8, 8)), Budget(max_wall_ms=R88_S * 1000))
    r88_s = time.monotonic() - t0
    ok = not disagree and isinstance(r88, Found) and r88_s <= R88_S
    record(5, ok, f"71 boards up to 6x6 checked by exhaustive search, disagreements {disagree or 'none'}; "
                  f"R(8,8) tour found in {r88_s:.3f} s (limit {R88_S} s)")


def _target_class_ok(tour: Tour, family: Family) -> bool:
    return matches_target(tour.spec, classify(tour.spec, tour), rule(family).target)


def test_criterion_6_constructor_chains():
    notes, failures, slowest = [], [], 0.0
    for family, r in RULES.items():
        if r.step is None:
            continue
        for base in r.bases:
            fixture = derive_base_case(family, base)
            for _ in range(8):
                fixture = extend(family, fixture)
                t0 = time.monotonic()
                fixture.tour.validate()
                good = _target_class_ok(fixture.tour, family) and hook_spec(family, fixture.size).holds(fixture.tour)
                took = time.monotonic() - t0
                slowest = max(slowest, took)
                if not good or took > EXTEND_S:
                    failures.append(f"{family.value} at {fixture.size}")
            notes.append(f"{family.value} {base[0]}x{base[1]}->{fixture.size[0]}x{fixture.size[1]}")
    # families without an induction step are checked where they apply
    static = 0
    for family, r in RULES.items():
        if r.step is not None:
            continue
        for size in r.fixtures:
            tour = derive_base_case(family, size).tour
            tour.validate()
            static += 1
            if not _target_class_ok(tour, family):
                failures.append(f"{family.value} at {size}")
    for m, n in [(5, 7), (7, 5), (7, 7), (9, 7), (7, 9), (8, 7), (6, 9)]:
        spec = BoardSpec.cylinder(m, n)
        if family_for(spec, GENERATOR) is Family.GEN_CYL_DELEGATED:
            tour = construct(spec, GENERATOR)
            tour.validate()
            static += 1
            if abs(classify(spec, tour).k) != 1:
                failures.append(f"GenCyl_Delegated at {(m, n)}")
    ok = not failures
    record(6, ok, f"{len(notes)} chains of 8 steps, slowest validation {slowest * 1000:.0f} ms (limit {EXTEND_S:.0f} s), "
                  f"{static} non-inductive sizes; failures {failures or 'none'}; reached {', '.join(notes)}")


def test_criterion_7_small_board_facts():
    c11, t11 = BoardSpec.cylinder(1, 1), BoardSpec.torus(1, 1)
    facts = {
        "C(1,1) identity": classify(c11, Tour(c11, (0, 0), ())) == CylinderClass(0),
        "T(1,1) identity": classify(t11, Tour(t11, (0, 0), ())) == TorusClass(0, 0),
    }
    c21 = BoardSpec.cylinder(2, 1)
    count = count_tours(SearchProblem(c21, ANY, mode=Mode.COUNT_ALL)).count
    only = find_tour(SearchProblem(c21))
    k = classify(c21, only.tour).k
    facts["C(2,1) has one tour"] = count == 1
    facts["C(2,1) class is +-4"] = abs(k) == 4
    facts["C(2,1) not null"] = isinstance(prove_nonexistence(SearchProblem(c21, IDENTITY, mode=Mode.PROVE_NONE)), NoSolution)
    t12 = BoardSpec.torus(1, 2)
    # the nullhomotopic reading of "T(1,2) has no tour"; the literal reading is tested separately
    facts["T(1,2) has no null tour"] = isinstance(prove_nonexistence(SearchProblem(t12, IDENTITY, mode=Mode.PROVE_NONE)), NoSolution)
    facts["edge counts 2, 4, 168"] = (edge_count(c21), edge_count(t11), edge_count(BoardSpec.regular(8, 8))) == (2, 4, 168)
    bad = [name for name, good in facts.items() if not good]
    record(7, not bad, f"{len(facts) - len(bad)}/{len(facts)} facts hold, failing {bad or 'none'}; literal 'T(1,2) has no tour' is "
                       "CONTRADICTED by the valid longitude tour (2,1),(-2,1), reported as an expected failure below")


@pytest.mark.xfail(strict=True, reason="T(1,2) carries a longitude tour; only the nullhomotopic class is absent")
def test_criterion_7_literal_t12_has_no_tour():
    t12 = BoardSpec.torus(1, 2)
    witness = Tour.from_pairs(t12, (0, 0), [(2, 1), (-2, 1)])
    witness.validate()
    assert isinstance(prove_nonexistence(SearchProblem(t12, ANY, mode=Mode.PROVE_NONE)), NoSolution)


def harvest() -> list[Tour]:
    """Tours from construction sweeps over predicted cells plus enumeration on small boards."""
    out = []
    for topology, target, predicate in (
        (Topology.CYLINDER, IDENTITY, cyl_null_predicate),
        (Topology.CYLINDER, GENERATOR, cyl_gen_predicate),
        (Topology.TORUS, IDENTITY, tori_null_predicate),
        (Topology.TORUS, LONGITUDE, torus_lon_predicate),
    ):
        for m in range(1, 11):
            for n in range(1, 11):
                if predicate(m, n):
                    out.append(construct(BoardSpec(topology, m, n), target))
    for spec in [BoardSpec.cylinder(3, 4), BoardSpec.cylinder(5, 3), BoardSpec.cylinder(6, 2), BoardSpec.cylinder(5, 5),
                 BoardSpec.torus(2, 2), BoardSpec.torus(3, 2), BoardSpec.torus(4, 3), BoardSpec.torus(2, 5)]:
        out.extend(iter_tours(SearchProblem(spec, ANY, mode=Mode.COUNT_ALL), 40))
    return out


def test_criterion_8_properties_on_harvested_tours():
    tours = harvest()
    rng = random.Random(8)
    broken = []
    for tour in tours:
        spec = tour.spec
        c = classify(spec, tour)
        ok = parity_congruence_holds(spec, c)
        # every move changes a + b by an odd amount; there are m*n moves except on 1x1, which has none
        moves = len(tour.jumps)
        assert moves == (0 if spec.size == 1 else spec.size)
        if spec.topology is Topology.CYLINDER:
            ok &= (c.k * spec.n - moves) % 2 == 0 and abs(c.k) <= 2 * spec.m
            path = lift_tour(spec, tour)
            ok &= path.displacement == (0, c.k * spec.n) and all(0 <= a < spec.m for a, _ in path.points)
        else:
            ok &= (c.p * spec.m + c.q * spec.n - moves) % 2 == 0
            ok &= abs(c.p) <= 2 * spec.n and abs(c.q) <= 2 * spec.m
        for r in rng.sample(range(max(len(tour.jumps), 1)), min(3, max(len(tour.jumps), 1))):
            ok &= classify(spec, tour.rotated(r)) == c
        ok &= classify(spec, tour.reversed()) == -c
        if not ok:
            broken.append(str(spec))
    enough = len(tours) >= MIN_HARVEST
    record(8, enough and not broken, f"{len(tours)} tours (need {MIN_HARVEST}), violations {broken or 'none'}")


def test_criterion_9_open_tours():
    t0 = time.monotonic()
    rng = random.Random(2024)
    r66 = BoardSpec.regular(6, 6)
    squares = list(r66.squares())
    pairs66 = []
    while len(pairs66) < 10:
        a, b = rng.sample(squares, 2)
        if (sum(a) + sum(b)) % 2:
            pairs66.append((a, b))
    r57 = BoardSpec.regular(5, 7)
    corner_coloured = [q for q in r57.squares() if sum(q) % 2 == 0]
    pairs57 = [tuple(rng.sample(corner_coloured, 2)) for _ in range(5)]
    found66 = sum(isinstance(find_open_tour(r66, a, b), Found) for a, b in pairs66)
    found57 = sum(isinstance(find_open_tour(r57, a, b), Found) for a, b in pairs57)
    r44 = BoardSpec.regular(4, 4)
    verdicts = [find_open_tour(r44, a, b) for a, b in itertools.combinations(list(r44.squares()), 2)]
    none44 = all(isinstance(v, NoSolution) for v in verdicts)
    total = time.monotonic() - t0
    ok = found66 == 10 and found57 == 5 and none44 and total <= OPEN_TOURS_S
    record(9, ok, f"R(6,6) {found66}/10, R(5,7) {found57}/5, R(4,4) none over all {len(verdicts)} pairs: {none44}; "
                  f"{total:.1f} s (limit {OPEN_TOURS_S} s)")


def test_criterion_10_pruning_is_sound():
    budget = Budget(max_wall_ms=120_000)
    checked, differ = 0, []
    for topology in Topology:
        for m in range(1, 13):
            for n in range(1, 13 // m + 1):
                spec = BoardSpec(topology, m, n)
                if spec.topology is Topology.CYLINDER:
                    targets = [ANY, IDENTITY, GENERATOR]
                elif spec.topology is Topology.TORUS:
                    targets = [ANY, IDENTITY, LONGITUDE]
                else:
                    targets = [ANY]
                for target in targets:
                    problem = SearchProblem(spec, target, mode=Mode.PROVE_NONE)
                    pruned = prove_nonexistence(problem, budget)
                    plain = prove_nonexistence(problem, budget, prune=False)
                    assert not isinstance(pruned, BudgetExceeded) and not isinstance(plain, BudgetExceeded), spec
                    checked += 1
                    if isinstance(pruned, Found) != isinstance(plain, Found):
                        differ.append(f"{spec} {target}")
    record(10, not differ, f"{checked} (board, target) verdicts over m*n <= 12, differences {differ or 'none'}")
