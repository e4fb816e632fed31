"""Insertion walk that (k-1, 1)-orients edges one at a time.

Each vertex slot holds at most one edge.  Inserting an edge runs ``k-1``
walks; every walk places the edge (or whichever edge it displaced) into the
next vertex of that edge, cycling through the vertices in ascending order,
until an empty slot absorbs the displaced edge.

The walk alone never stops on an infeasible instance, so every insertion
first merges the edge into a :class:`ComponentTracker`.  For b = 1 an
orientation exists iff no component has positive excess, which makes that
check exact.  A per-call budget of ``4 k^2 s`` condition evaluations (``s``
the size of the merged component) backs it up; the budget firing on a
feasible instance means the walk itself is broken.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from .hypergraph import Edge, Hypergraph
from .tracker import ComponentTracker, InvariantViolation

log = logging.getLogger(__name__)

EMPTY = -1
# Multiplier c in the per-insertion budget c * k^2 * s.
BUDGET_FACTOR = 4


class Outcome(enum.Enum):
    ORIENTED = "oriented"
    INFEASIBLE = "infeasible"


@dataclass
class RunStats:
    while_evals: int = 0
    edges_inserted: int = 0
    success: bool = True
    budget_exhausted: bool = False


class OrientationTable:
    """Slot array ``slots[v]`` = id of the edge oriented toward ``v``, or EMPTY.

    ``edges`` maps the id of every edge placed so far to its vertex tuple;
    the walk needs it to find the successor vertex of a displaced edge.
    """

    def __init__(self, n: int):
        self.n = n
        self.slots = [EMPTY] * n
        self.edges: dict[int, tuple[int, ...]] = {}

    def __getitem__(self, v: int) -> int:
        return self.slots[v]

    def __len__(self) -> int:
        return self.n

    def occupied(self) -> int:
        return sum(1 for s in self.slots if s != EMPTY)

    def assignment(self) -> dict[int, list[int]]:
        """Edge id -> vertices the edge is oriented toward, ascending."""
        out: dict[int, list[int]] = {eid: [] for eid in self.edges}
        for v, eid in enumerate(self.slots):
            if eid != EMPTY:
                out.setdefault(eid, []).append(v)
        return out


def orient_edge(
    e: Edge,
    table: OrientationTable,
    tracker: ComponentTracker,
    stats: RunStats,
    verify: bool = False,
) -> Outcome:
    """Insert one edge, displacing earlier edges as needed.

    On INFEASIBLE the slot array is left exactly as it was before the call.
    The tracker keeps the merge, so it describes every edge offered so far.
    """
    verts = e.vertices
    k = len(verts)
    report = tracker.add_edge(verts)
    if report.excess_after > 0:
        stats.success = False
        return Outcome.INFEASIBLE

    eid = e.id
    slots = table.slots
    reg = table.edges
    reg[eid] = verts
    budget = BUDGET_FACTOR * k * k * report.size_after
    journal: list[tuple[int, int]] = []
    evals = 0
    first = verts[0]
    for _ in range(k - 1):
        tau = eid
        v = first
        while True:
            evals += 1
            if tau == EMPTY:
                break
            if evals > budget:
                for u, prev in reversed(journal):
                    slots[u] = prev
                del reg[eid]
                stats.while_evals += evals
                stats.success = False
                stats.budget_exhausted = True
                log.error("walk budget %d exhausted inserting edge %d %s", budget, eid, verts)
                return Outcome.INFEASIBLE
            tv = reg[tau]
            v = tv[(tv.index(v) + 1) % k]
            journal.append((v, slots[v]))
            tau, slots[v] = slots[v], tau

    stats.while_evals += evals
    stats.edges_inserted += 1
    if verify:
        _check_walk(table, eid, journal, k)
    return Outcome.ORIENTED


def _check_walk(table: OrientationTable, eid: int, journal, k: int) -> None:
    # Only journaled slots changed, so checking the edges that held or now
    # hold those slots covers slot conservation for the whole table.
    slots, reg = table.slots, table.edges
    touched = {eid}
    for v, prev in journal:
        if prev != EMPTY:
            touched.add(prev)
        held = slots[v]
        if held != EMPTY and v not in reg[held]:
            raise InvariantViolation(f"slot {v} holds edge {held} {reg[held]} not containing it")
    for t in touched:
        count = sum(1 for u in reg[t] if slots[u] == t)
        if count != k - 1:
            raise InvariantViolation(f"edge {t} occupies {count} slots, expected {k - 1}")


@dataclass
class OrientResult:
    outcome: Outcome
    stats: RunStats
    table: OrientationTable
    tracker: ComponentTracker
    failed_edge: int | None = None

    @property
    def success(self) -> bool:
        return self.outcome is Outcome.ORIENTED


def orient_all(
    h: Hypergraph,
    verify: bool = False,
    tracker: ComponentTracker | None = None,
) -> OrientResult:
    """Orient the edges of ``h`` in index order, stopping at the first failure."""
    table = OrientationTable(h.n)
    if tracker is None:
        tracker = ComponentTracker(h.n, h.k, verify=verify)
    stats = RunStats()
    result = OrientResult(Outcome.ORIENTED, stats, table, tracker)
    for i, verts in enumerate(h.edges):
        if orient_edge(Edge(i, verts), table, tracker, stats, verify) is Outcome.INFEASIBLE:
            result.outcome = Outcome.INFEASIBLE
            result.failed_edge = i
            break

    if verify:
        tracker.check()
        if stats.budget_exhausted:
            raise InvariantViolation(f"walk budget exhausted at edge {result.failed_edge}")
        if result.success != (not tracker.has_complex()):
            raise InvariantViolation(
                f"outcome {result.outcome.value} disagrees with complex-component check"
            )
        if result.success:
            ok, problems = verify_table(h, table)
            if not ok:
                raise InvariantViolation("; ".join(problems))
    return result


def verify_table(h: Hypergraph, table) -> tuple[bool, list[str]]:
    """Check that ``table`` is a complete (k-1, 1)-orientation of ``h``.

    ``table`` may be an :class:`OrientationTable` or a plain slot list.
    Returns ``(ok, violations)`` where each violation is a line of the form
    ``VIOLATION <kind> <vertex> <edge>``.
    """
    slots = getattr(table, "slots", table)
    problems = []
    if len(slots) != h.n:
        problems.append(f"VIOLATION size {len(slots)} -")
        return False, problems
    counts = [0] * h.m
    for v, eid in enumerate(slots):
        if eid == EMPTY:
            continue
        if not 0 <= eid < h.m:
            problems.append(f"VIOLATION unknown-edge {v} {eid}")
            continue
        if v not in h.edges[eid]:
            problems.append(f"VIOLATION membership {v} {eid}")
            continue
        counts[eid] += 1
    for eid, c in enumerate(counts):
        if c != h.k - 1:
            problems.append(f"VIOLATION count - {eid}")
    return not problems, problems
