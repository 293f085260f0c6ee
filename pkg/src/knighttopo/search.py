"""Exhaustive Hamiltonian tour search on knight multigraphs.

The engine is a depth-first search over directed jumps starting at square
(0, 0) that tracks the running lift displacement.  The homotopy target is a
finite set of allowed lift endpoints, so class constraints become arithmetic.

Pruning rules (all admissible, i.e. none removes a completable branch):

* parity: the lift is a walk in a bipartite graph, so its endpoint colour
  parity equals the number of moves.  Targets with the wrong parity are
  discarded before the search starts.
* displacement bound: a knight move changes each lift coordinate by at most
  2 and their sum by at most 3, so with ``r`` moves left the endpoint must be
  within 2r coordinatewise and 3r in L1 of the current displacement.
* degree: every unvisited square still needs two distinct tour neighbours
  among unvisited squares and the path ends (one, for the tour's terminal).
  A square left with one option must be entered next; two such squares, or
  any square with none, kill the branch.  Applied only with 3+ squares,
  where a tour's two neighbours of a square are always distinct squares.
* connectivity: the unvisited squares must all be reachable from the
  current square through unvisited squares.
* required edges: a square whose tour edges are already fixed must have used
  every required edge incident to it.

Closed searches fix the start at (0, 0).  When reversing a tour keeps it
inside the target (always when counting; otherwise when the endpoint set is
symmetric under negation and no lift predicate or acceptance hook is given),
only the traversal whose first edge id is smaller than its closing edge id
is explored.  Each undirected tour is then met once, and the first move is
pruned as soon as no incident edge could close the cycle above it.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Union

from .boardgraph import (
    KNIGHT_PAIRS,
    BoardSpec,
    DirectedJump,
    EdgeId,
    Square,
    Topology,
    apply_jump,
    canonical_edge,
)
from .errors import InvalidProblem, TargetTopologyMismatch
from .lift import ANY, ClassTarget, classify, matches_target, target_endpoints
from .tour import Tour

Endpoints = Optional[frozenset]


class Mode(enum.Enum):
    FIND_ONE = "find_one"
    PROVE_NONE = "prove_none"
    COUNT_ALL = "count_all"


@dataclass(frozen=True)
class Budget:
    max_nodes: int = 50_000_000
    max_wall_ms: int = 600_000

    def __post_init__(self) -> None:
        if self.max_nodes <= 0 or self.max_wall_ms <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class SearchProblem:
    spec: BoardSpec
    target: ClassTarget = ANY
    required_edges: frozenset = frozenset()
    mode: Mode = Mode.FIND_ONE


@dataclass(frozen=True)
class Found:
    tour: Tour
    nodes: int = 0


@dataclass(frozen=True)
class NoSolution:
    nodes: int = 0


@dataclass(frozen=True)
class Exhausted:
    count: int
    nodes: int = 0


@dataclass(frozen=True)
class BudgetExceeded:
    nodes_used: int
    ms_used: int


SearchOutcome = Union[Found, NoSolution, Exhausted, BudgetExceeded]


class _Graph:
    """Integer-indexed adjacency of a board; square (a, b) has index a*n + b."""

    def __init__(self, spec: BoardSpec):
        self.spec = spec
        n = spec.n
        self.size = spec.size
        self.squares = list(spec.squares())
        self.edge_ids: list[EdgeId] = []
        eid_of: dict[EdgeId, int] = {}
        moves = []
        for sq in self.squares:
            row = []
            for pair in KNIGHT_PAIRS:
                to = spec.wrap(sq[0] + pair[0], sq[1] + pair[1])
                if to is None or to == sq:
                    continue
                edge = canonical_edge(spec, DirectedJump(sq, pair))
                if edge not in eid_of:
                    eid_of[edge] = len(self.edge_ids)
                    self.edge_ids.append(edge)
                row.append((to[0] * n + to[1], pair[0], pair[1], eid_of[edge]))
            moves.append(tuple(row))
        self.eid_of = eid_of
        self.moves = moves
        self.nlist = [tuple(sorted({v for v, _, _, _ in row})) for row in moves]
        self.nmask = [sum(1 << v for v in nl) for nl in self.nlist]

    def index(self, sq: tuple[int, int]) -> int:
        return sq[0] * self.spec.n + sq[1]


@lru_cache(maxsize=128)
def _graph(spec: BoardSpec) -> _Graph:
    return _Graph(spec)


class _Stop(Exception):
    pass


class _Engine:
    """One search run.  ``terminal`` is None for closed tours (the start closes the cycle)."""

    def __init__(
        self,
        spec: BoardSpec,
        *,
        start: tuple[int, int] = (0, 0),
        terminal: Optional[tuple[int, int]] = None,
        endpoints: Endpoints = None,
        required: Iterable[EdgeId] = (),
        lift_ok: Optional[Callable[[int, int], bool]] = None,
        accept: Optional[Callable[[Tour], bool]] = None,
        on_solution: Optional[Callable[[Tour], bool]] = None,
        prune: bool = True,
        warnsdorff: bool = True,
        count_normalized: bool = False,
        budget: Budget = DEFAULT_BUDGET,
    ):
        self.spec = spec
        self.g = _graph(spec)
        self.start = self.g.index(start)
        self.start_sq = Square(*start)
        self.closed = terminal is None
        self.terminal = self.start if self.closed else self.g.index(terminal)
        self.endpoints = endpoints
        self.required = frozenset(required)
        self.lift_ok = lift_ok
        self.accept = accept
        self.on_solution = on_solution
        self.prune = prune
        self.warnsdorff = warnsdorff
        self.count_normalized = count_normalized
        # Reversing a closed tour negates its lift endpoint, so with a
        # sign-symmetric target only one traversal direction need be explored.
        symmetric = endpoints is None or all((-x, -y) in endpoints for x, y in endpoints)
        self.normalize = terminal is None and (
            count_normalized or (symmetric and lift_ok is None and accept is None)
        )
        self._closers = -1
        self.budget = budget
        self.nodes = 0
        self.count = 0
        self.result: Optional[Tour] = None
        self._t0 = 0.0
        self._deadline = 0.0

    # -- bookkeeping -------------------------------------------------------

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _Stop
        if not self.nodes & 1023 and time.monotonic() > self._deadline:
            raise _Stop

    def _elapsed_ms(self) -> int:
        return int((time.monotonic() - self._t0) * 1000)

    def _emit(self, pairs: list[tuple[int, int]]) -> bool:
        """Record a complete tour; return True to stop the search."""
        tour = Tour.from_pairs(self.spec, self.start_sq, pairs, self.closed)
        if self.accept is not None and not self.accept(tour):
            return False
        self.count += 1
        if self.on_solution is not None:
            return bool(self.on_solution(tour))
        if self.result is None:
            self.result = tour
        return not self.count_normalized

    # -- search ------------------------------------------------------------

    def run(self) -> SearchOutcome:
        self._t0 = time.monotonic()
        self._deadline = self._t0 + self.budget.max_wall_ms / 1000.0
        try:
            stopped = self._search()
        except _Stop:
            return BudgetExceeded(self.nodes, self._elapsed_ms())
        if self.count_normalized:
            return Exhausted(self.count, self.nodes)
        if self.result is not None:
            return Found(self.result, self.nodes)
        if stopped:
            return NoSolution(self.nodes)
        return NoSolution(self.nodes)

    def _search(self) -> bool:
        g = self.g
        N = g.size
        if N == 1:
            if self.closed and (self.endpoints is None or (0, 0) in self.endpoints) and not self.required:
                self._emit([])
            elif not self.closed and self.terminal == self.start:
                self._emit([])
            return True
        if not self.closed and self.terminal == self.start:
            return True

        endpoints = self.endpoints
        if self.closed and endpoints is not None and self.prune:
            endpoints = frozenset(e for e in endpoints if (e[0] + e[1] - N) % 2 == 0)
            if not endpoints:
                return True
        self._endpoints = endpoints

        req_at: list[frozenset] = [frozenset()] * N
        if self.required:
            by_sq: dict[int, set] = {}
            for edge in self.required:
                eid = g.eid_of.get(edge)
                if eid is None:
                    raise InvalidProblem(f"required edge {edge} is not an edge of {self.spec}")
                u = g.index(edge.rep.frm)
                v = g.index(apply_jump(self.spec, edge.rep))
                by_sq.setdefault(u, set()).add(eid)
                by_sq.setdefault(v, set()).add(eid)
            if any(len(s) > 2 for s in by_sq.values()):
                return True
            for u, s in by_sq.items():
                req_at[u] = frozenset(s)
        self._req_at = req_at
        self._req_ids = frozenset(g.eid_of[e] for e in self.required)

        if not self.closed and self.prune and self.spec.topology is Topology.REGULAR:
            s, t = g.squares[self.start], g.squares[self.terminal]
            if (s[0] + s[1] + N - 1 - t[0] - t[1]) % 2:
                return True

        self._deg = self.prune and N >= 3
        self._free = [len(nl) for nl in g.nlist]
        if self._deg:
            for w in range(N):
                need = 1 if (w == self.terminal or (not self.closed and w == self.start)) else 2
                if self._free[w] < need:
                    return True

        self._full = (1 << N) - 1
        self._path_e: list[int] = []
        self._pairs: list[tuple[int, int]] = []
        return self._dfs(self.start, 0, 1 << self.start, 0, 0)

    def _dfs(self, cur: int, depth: int, vis: int, dx: int, dy: int) -> bool:
        """Returns True when the search should stop."""
        self._tick()
        g = self.g
        N = g.size
        closed = self.closed
        path_e = self._path_e
        pairs = self._pairs

        if depth == N - 1:
            if not closed:
                return self._emit(list(pairs)) if cur == self.terminal else False
            endpoints = self._endpoints
            for v, mx, my, e in g.moves[cur]:
                if v != self.start:
                    continue
                if N == 2 and e == path_e[0]:
                    continue
                fx, fy = dx + mx, dy + my
                if endpoints is not None and (fx, fy) not in endpoints:
                    continue
                if self.lift_ok is not None and not self.lift_ok(fx, fy):
                    continue
                if self.normalize and not path_e[0] < e:
                    continue
                if self._req_ids and not self._req_ids <= set(path_e) | {e}:
                    continue
                pairs.append((mx, my))
                stop = self._emit(list(pairs))
                pairs.pop()
                if stop:
                    return True
            return False

        prune = self.prune
        full = self._full
        unvisited = full & ~vis

        if prune:
            # connectivity of the unvisited squares through unvisited squares
            nmask = g.nmask
            reach = nmask[cur] & unvisited
            frontier = reach
            while frontier:
                nxt = 0
                while frontier:
                    low = frontier & -frontier
                    nxt |= nmask[low.bit_length() - 1]
                    frontier ^= low
                nxt &= unvisited & ~reach
                reach |= nxt
                frontier = nxt
            if reach != unvisited:
                return False
            if self._closers >= 0 and depth > 0 and not self._closers & (unvisited | (1 << cur)):
                return False

        forced = -1
        interior = self._deg and (depth > 0 or not closed)
        free = self._free
        nl_cur = g.nlist[cur]
        ok = True
        if interior:
            for w in nl_cur:
                free[w] -= 1
            terminal = self.terminal
            remaining = N - depth - 1
            for w in nl_cur:
                f = free[w]
                if vis >> w & 1:
                    if closed and w == terminal and f < 1:
                        ok = False
                        break
                    continue
                if w == terminal:
                    if f < 1 and remaining > 1:
                        ok = False
                        break
                    continue
                if f < 1:
                    ok = False
                    break
                if f == 1:
                    if forced >= 0:
                        ok = False
                        break
                    forced = w

        stop = False
        if ok:
            stop = self._children(cur, depth, vis, dx, dy, forced)
        if interior:
            for w in nl_cur:
                free[w] += 1
        return stop

    def _children(self, cur: int, depth: int, vis: int, dx: int, dy: int, forced: int) -> bool:
        g = self.g
        N = g.size
        prune = self.prune
        closed = self.closed
        terminal = self.terminal
        endpoints = self._endpoints if closed else None
        lift_ok = self.lift_ok
        req_at = self._req_at
        path_e = self._path_e
        pairs = self._pairs
        r = N - depth - 1  # moves left after the next one (closing move included)
        last_open_step = not closed and depth == N - 2

        rq_cur = req_at[cur]
        in_e = path_e[-1] if path_e else -1

        cand = []
        for i, (v, mx, my, e) in enumerate(g.moves[cur]):
            if vis >> v & 1:
                continue
            if forced >= 0 and v != forced:
                continue
            if not closed and (v == terminal) != last_open_step:
                continue
            ndx, ndy = dx + mx, dy + my
            if lift_ok is not None and not lift_ok(ndx, ndy):
                continue
            if prune:
                if endpoints is not None:
                    for ex, ey in endpoints:
                        ax, ay = abs(ex - ndx), abs(ey - ndy)
                        if ax <= 2 * r and ay <= 2 * r and ax + ay <= 3 * r:
                            break
                    else:
                        continue
                if rq_cur:
                    if depth == 0 and closed:
                        if len(rq_cur) == 2 and e not in rq_cur:
                            continue
                    elif not rq_cur <= {in_e, e}:
                        continue
                rq_v = req_at[v]
                if len(rq_v) == 2 and e not in rq_v:
                    continue
            cand.append((i, v, mx, my, e))

        if self.warnsdorff and len(cand) > 1:
            nmask = g.nmask
            after = ~vis
            cand.sort(key=lambda c: ((nmask[c[1]] & after & ~(1 << c[1])).bit_count(), c[0]))

        first = self.normalize and depth == 0
        stop = False
        for _, v, mx, my, e in cand:
            if first:
                # the closing edge must have a larger id than the first edge
                # parallel edges repeat a square, so OR the bits rather than adding them
                self._closers = 0
                for w, _, _, f in g.moves[cur]:
                    if f > e:
                        self._closers |= 1 << w
                if not self._closers:
                    continue
            path_e.append(e)
            pairs.append((mx, my))
            stop = self._dfs(v, depth + 1, vis | (1 << v), dx + mx, dy + my)
            path_e.pop()
            pairs.pop()
            if stop:
                break
        if first:
            self._closers = -1
        return stop


# -- public API ---------------------------------------------------------------


def _problem_endpoints(problem: SearchProblem) -> Endpoints:
    try:
        return target_endpoints(problem.spec, problem.target)
    except TargetTopologyMismatch as exc:
        raise InvalidProblem(str(exc)) from exc


def _check_required(problem: SearchProblem) -> None:
    valid = set(_graph(problem.spec).edge_ids)
    for edge in problem.required_edges:
        if edge not in valid:
            raise InvalidProblem(f"required edge {edge} is not an edge of {problem.spec}")


def search_tours(
    spec: BoardSpec,
    *,
    endpoints: Endpoints = None,
    required: Iterable[EdgeId] = (),
    lift_ok: Optional[Callable[[int, int], bool]] = None,
    accept: Optional[Callable[[Tour], bool]] = None,
    on_solution: Optional[Callable[[Tour], bool]] = None,
    count: bool = False,
    prune: bool = True,
    warnsdorff: bool = True,
    budget: Budget = DEFAULT_BUDGET,
) -> SearchOutcome:
    """Low-level closed-tour search used by the public entry points and the constructors.

    ``endpoints`` are allowed lift endpoints (directed; not sign-symmetrised).
    ``lift_ok(a, b)`` must hold for every lift point after the start.
    ``accept`` filters complete tours.  ``on_solution`` receives each accepted
    tour and returns True to stop.  With ``count`` every undirected tour is
    reported once and the result is ``Exhausted``.
    """
    engine = _Engine(
        spec,
        endpoints=endpoints,
        required=required,
        lift_ok=lift_ok,
        accept=accept,
        on_solution=on_solution,
        prune=prune,
        warnsdorff=warnsdorff,
        count_normalized=count,
        budget=budget,
    )
    return engine.run()


def _verified(problem: SearchProblem, outcome: SearchOutcome) -> SearchOutcome:
    if isinstance(outcome, Found):
        tour = outcome.tour
        tour.validate()
        if problem.spec.is_surface:
            assert matches_target(problem.spec, classify(problem.spec, tour), problem.target)
        assert set(problem.required_edges) <= set(tour.edge_ids())
    return outcome


def find_tour(problem: SearchProblem, budget: Budget = DEFAULT_BUDGET, *, prune: bool = True) -> SearchOutcome:
    """Find one closed tour of ``problem.target``'s class containing the required edges.

    Children are tried in Warnsdorff order (fewest unvisited onward squares,
    then knight-pair order), so results are deterministic.
    """
    if problem.mode is not Mode.FIND_ONE:
        raise InvalidProblem(f"find_tour needs mode FIND_ONE, got {problem.mode}")
    endpoints = _problem_endpoints(problem)
    _check_required(problem)
    outcome = search_tours(
        problem.spec, endpoints=endpoints, required=problem.required_edges, prune=prune, budget=budget
    )
    return _verified(problem, outcome)


def prove_nonexistence(problem: SearchProblem, budget: Budget = DEFAULT_BUDGET, *, prune: bool = True) -> SearchOutcome:
    """Exhaust the search tree: NoSolution is a proof, Found a counterexample.

    ``prune=False`` disables every pruning rule; it exists to cross-check
    that the rules are sound.
    """
    if problem.mode is not Mode.PROVE_NONE:
        raise InvalidProblem(f"prove_nonexistence needs mode PROVE_NONE, got {problem.mode}")
    endpoints = _problem_endpoints(problem)
    _check_required(problem)
    outcome = search_tours(
        problem.spec, endpoints=endpoints, required=problem.required_edges, prune=prune, budget=budget
    )
    return _verified(problem, outcome)


def count_tours(problem: SearchProblem, budget: Budget = DEFAULT_BUDGET, *, prune: bool = True) -> SearchOutcome:
    """Number of undirected tours matching the target (each cycle counted once)."""
    if problem.mode is not Mode.COUNT_ALL:
        raise InvalidProblem(f"count_tours needs mode COUNT_ALL, got {problem.mode}")
    endpoints = _problem_endpoints(problem)
    _check_required(problem)
    return search_tours(
        problem.spec,
        endpoints=endpoints,
        required=problem.required_edges,
        count=True,
        prune=prune,
        warnsdorff=False,
        budget=budget,
    )


def iter_tours(problem: SearchProblem, limit: int, budget: Budget = DEFAULT_BUDGET) -> list[Tour]:
    """Up to ``limit`` distinct undirected tours matching the target, in search order."""
    endpoints = _problem_endpoints(problem)
    _check_required(problem)
    out: list[Tour] = []

    def keep(tour: Tour) -> bool:
        out.append(tour)
        return len(out) >= limit

    search_tours(
        problem.spec,
        endpoints=endpoints,
        required=problem.required_edges,
        on_solution=keep,
        count=True,
        warnsdorff=False,
        budget=budget,
    )
    return out


def find_open_tour(
    spec: BoardSpec,
    frm: tuple[int, int],
    to: tuple[int, int],
    budget: Budget = DEFAULT_BUDGET,
    *,
    prune: bool = True,
) -> SearchOutcome:
    """Hamiltonian path on a regular board from ``frm`` to ``to`` (a Tour with ``closed=False``)."""
    if spec.topology is not Topology.REGULAR:
        raise InvalidProblem("open tours are searched on regular boards")
    if not (spec.contains(frm) and spec.contains(to)):
        raise InvalidProblem(f"endpoints {frm}, {to} not on {spec}")
    if tuple(frm) == tuple(to) and spec.size != 1:
        raise InvalidProblem("open tour endpoints must differ")
    engine = _Engine(spec, start=tuple(frm), terminal=tuple(to), prune=prune, budget=budget)
    outcome = engine.run()
    if isinstance(outcome, Found):
        outcome.tour.validate()
    return outcome
