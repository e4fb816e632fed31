"""Union-find over vertices with per-component size, edge count and excess.

The excess of a component is ``(k-1) * edges - vertices``.  A connected
component with excess -1 is a hypertree, 0 is unicyclic, and anything
positive is complex.  For (k-1, 1)-orientations complex components are
exactly the obstructions, which is what the orientation engine relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class InvariantViolation(AssertionError):
    """An internal consistency check failed while verification mode was on."""


@dataclass(frozen=True)
class MergeReport:
    root: int
    touched: int
    size_before: tuple[int, ...]
    size_after: int
    excess_after: int
    delta_chi: float


@dataclass(frozen=True)
class ComponentCounts:
    hypertrees: int
    unicyclic: int
    complex: int
    max_size: int


class ComponentTracker:
    """Disjoint sets with path compression and union by size.

    ``size`` and ``edge_count`` are only meaningful at roots; non-root
    entries of ``size`` are zeroed on union so that ``sum(size) == n`` and
    ``sum(s * s for s in size)`` is the running ``s2`` at all times.
    """

    RECHECK_EVERY = 1000

    def __init__(self, n: int, k: int, verify: bool = False):
        self.n = n
        self.k = k
        self.verify = verify
        self.parent = list(range(n))
        self.size = [1] * n
        self.edge_count = [0] * n
        self.s2 = n
        self.merges = 0

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def excess(self, v: int) -> int:
        r = self.find(v)
        return (self.k - 1) * self.edge_count[r] - self.size[r]

    def component_size(self, v: int) -> int:
        return self.size[self.find(v)]

    @property
    def susceptibility(self) -> float:
        return self.s2 / self.n

    def add_edge(self, vertices: Sequence[int]) -> MergeReport:
        """Union the vertices of one edge and account for it in its component."""
        find, size, edge_count = self.find, self.size, self.edge_count
        k1 = self.k - 1
        roots = list(dict.fromkeys(find(v) for v in vertices))
        sizes = tuple(size[r] for r in roots)
        if self.verify:
            excess_before = sum(k1 * edge_count[r] - size[r] for r in roots)

        big = max(roots, key=size.__getitem__)
        total = sum(sizes)
        edges = 1
        for r in roots:
            edges += edge_count[r]
            if r != big:
                self.parent[r] = big
                size[r] = 0
                edge_count[r] = 0
        size[big] = total
        edge_count[big] = edges

        gain = total * total - sum(s * s for s in sizes)
        self.s2 += gain
        self.merges += 1
        excess_after = k1 * edges - total

        if self.verify:
            if excess_after != excess_before + k1:
                raise InvariantViolation(
                    f"excess additivity: {excess_after} != {excess_before} + {k1}"
                )
            if excess_after < -1:
                raise InvariantViolation(f"connected component with excess {excess_after} < -1")
            if self.merges % self.RECHECK_EVERY == 0:
                self.check()
        return MergeReport(big, len(roots), sizes, total, excess_after, gain / self.n)

    def recompute_s2(self) -> int:
        return sum(s * s for s in self.size)

    def check(self) -> None:
        """Recompute the aggregate state from scratch and compare."""
        if sum(self.size) != self.n:
            raise InvariantViolation(f"component sizes sum to {sum(self.size)}, not n={self.n}")
        s2 = self.recompute_s2()
        if s2 != self.s2:
            raise InvariantViolation(f"incremental S2={self.s2} but recomputed {s2}")

    def roots(self):
        parent = self.parent
        return (v for v in range(self.n) if parent[v] == v)

    def classify(self) -> ComponentCounts:
        k1 = self.k - 1
        trees = uni = cplx = 0
        biggest = 0
        for r in self.roots():
            s = self.size[r]
            ex = k1 * self.edge_count[r] - s
            if ex < 0:
                trees += 1
            elif ex == 0:
                uni += 1
            else:
                cplx += 1
            biggest = max(biggest, s)
        return ComponentCounts(trees, uni, cplx, biggest)

    def has_complex(self) -> bool:
        k1 = self.k - 1
        return any(k1 * self.edge_count[r] > self.size[r] for r in self.roots())


def susceptibility(tracker: ComponentTracker) -> float:
    return tracker.susceptibility


def classify_components(tracker: ComponentTracker) -> ComponentCounts:
    return tracker.classify()
