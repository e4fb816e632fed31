"""k-uniform hypergraphs and the random models used to generate them.

Vertices are dense integers in ``[0, n)``.  Every edge is stored as an
ascending tuple of ``k`` distinct vertex ids, which doubles as its canonical
key: two edges are the same edge iff their tuples are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

EdgeTuple = tuple[int, ...]


class HypergraphFormatError(ValueError):
    """Raised for structurally invalid hypergraphs or malformed text input."""


def as_generator(seed) -> np.random.Generator:
    """Return a PCG64 generator for ``seed``; generators pass through untouched."""
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class Edge:
    id: int
    vertices: EdgeTuple

    def first(self) -> int:
        return self.vertices[0]

    def next(self, v: int) -> int:
        """Vertex after ``v`` in ascending order, wrapping to ``first()``."""
        vs = self.vertices
        return vs[(vs.index(v) + 1) % len(vs)]

    def __contains__(self, v: int) -> bool:
        return v in self.vertices


@dataclass
class Hypergraph:
    n: int
    k: int
    edges: list[EdgeTuple] = field(default_factory=list)

    def __post_init__(self):
        self.edges = [tuple(int(v) for v in e) for e in self.edges]
        self.validate()

    def validate(self) -> None:
        n, k = self.n, self.k
        if k < 2:
            raise HypergraphFormatError(f"arity k={k} must be at least 2")
        if n < k:
            raise HypergraphFormatError(f"n={n} is smaller than k={k}")
        seen = set()
        for i, e in enumerate(self.edges):
            if len(e) != k:
                raise HypergraphFormatError(f"edge {i} has {len(e)} vertices, expected {k}")
            if e[0] < 0 or e[-1] >= n:
                raise HypergraphFormatError(f"edge {i} has a vertex outside [0, {n})")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise HypergraphFormatError(f"edge {i} is not strictly ascending: {e}")
            if e in seen:
                raise HypergraphFormatError(f"edge {i} repeats {e}")
            seen.add(e)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, i: int) -> Edge:
        return Edge(i, self.edges[i])

    def iter_edges(self):
        for i, e in enumerate(self.edges):
            yield Edge(i, e)

    def subgraph(self, edge_ids: Iterable[int]) -> Hypergraph:
        return Hypergraph(self.n, self.k, [self.edges[i] for i in edge_ids])

    def to_text(self) -> str:
        lines = [f"{self.k} {self.n} {self.m}"]
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Hypergraph:
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows:
            raise HypergraphFormatError("empty input: expected header line 'k n m'")
        try:
            k, n, m = (int(tok) for tok in rows[0])
        except ValueError:
            raise HypergraphFormatError(f"bad header {' '.join(rows[0])!r}, expected 'k n m'") from None
        if len(rows) - 1 != m:
            raise HypergraphFormatError(f"header declares {m} edges but {len(rows) - 1} follow")
        edges = []
        for lineno, row in enumerate(rows[1:], start=2):
            if len(row) != k:
                raise HypergraphFormatError(f"line {lineno}: {len(row)} vertices, expected {k}")
            try:
                edges.append(tuple(int(tok) for tok in row))
            except ValueError:
                raise HypergraphFormatError(f"line {lineno}: non-integer vertex id") from None
        return cls(n, k, edges)


def read_hypergraph(path) -> Hypergraph:
    return Hypergraph.from_text(Path(path).read_text())


def write_hypergraph(h: Hypergraph, path) -> None:
    Path(path).write_text(h.to_text())


def _check_params(n: int, k: int) -> None:
    if k < 2:
        raise ValueError(f"arity k={k} must be at least 2")
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")


def _draw_ksets(rng: np.random.Generator, n: int, k: int, size: int) -> np.ndarray:
    """Up to ``size`` uniform k-subsets of [0, n) as sorted rows.

    Uses i.i.d. tuples with rejection of repeated vertices when that is
    cheap; otherwise partial argsort of random keys.  Rows with repeats are
    dropped, so fewer than ``size`` rows may come back.
    """
    distinct_p = math.prod((n - i) / n for i in range(k))
    if distinct_p >= 0.25:
        raw = rng.integers(0, n, size=(size, k))
        raw.sort(axis=1)
        ok = np.all(raw[:, 1:] != raw[:, :-1], axis=1)
        return raw[ok]
    keys = rng.random((size, n))
    raw = np.argpartition(keys, k - 1, axis=1)[:, :k]
    raw.sort(axis=1)
    return raw


def _sample_distinct_edges(rng: np.random.Generator, n: int, k: int, m: int) -> list[EdgeTuple]:
    # Sequential rejection: each accepted edge is uniform over the k-sets not
    # yet taken, so the result is a uniform m-subset in random order.
    edges: list[EdgeTuple] = []
    seen: set[EdgeTuple] = set()
    distinct_p = max(math.prod((n - i) / n for i in range(k)), 0.25)
    while len(edges) < m:
        need = m - len(edges)
        batch = _draw_ksets(rng, n, k, int((need + need // 8 + 8) / distinct_p))
        for row in batch.tolist():
            e = tuple(row)
            if e in seen:
                continue
            seen.add(e)
            edges.append(e)
            if len(edges) == m:
                break
    return edges


def gen_uniform(n: int, m: int, k: int, seed=None) -> Hypergraph:
    """Sample H(n, m; k): ``m`` distinct k-sets chosen uniformly at random."""
    _check_params(n, k)
    total = math.comb(n, k)
    if m < 0 or m > total:
        raise ValueError(f"m={m} outside [0, C({n},{k})={total}]")
    rng = as_generator(seed)
    return Hypergraph(n, k, _sample_distinct_edges(rng, n, k, m))


def gen_binomial(n: int, p: float, k: int, seed=None) -> Hypergraph:
    """Sample H(n, p; k): every k-set present independently with probability ``p``.

    The edge count is drawn from Binomial(C(n, k), p) first and that many
    distinct edges are then sampled, so sparse instances never touch the
    full candidate list.
    """
    _check_params(n, k)
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise ValueError(f"edge probability p={p} outside [0, 1]")
    total = math.comb(n, k)
    if total >= 2**63:
        raise ValueError(f"C({n},{k}) does not fit a 64-bit binomial draw")
    rng = as_generator(seed)
    count = int(rng.binomial(total, p))
    return Hypergraph(n, k, _sample_distinct_edges(rng, n, k, count))


def binomial_p_for_density(n: int, k: int, eps: float) -> float:
    """p = (1 - 0.8 eps) (k-2)! / n^(k-1), the binomial model paired with m = (1-eps) n/(k(k-1))."""
    return (1 - 0.8 * eps) * math.factorial(k - 2) / n ** (k - 1)


@dataclass
class ProcessState:
    """State of the sequential process: one k-tuple of i.i.d. vertices per round."""

    n: int
    k: int
    edges: list[EdgeTuple] = field(default_factory=list)
    rounds: int = 0
    no_adds: int = 0
    _seen: set = field(default_factory=set, repr=False)

    def __post_init__(self):
        _check_params(self.n, self.k)
        self._seen = set(self.edges)

    def offer(self, sample: Sequence[int]) -> EdgeTuple | None:
        """Apply one round with the given sampled vertices; returns the added edge."""
        self.rounds += 1
        e = tuple(sorted(int(v) for v in sample))
        if len(set(e)) != self.k or e in self._seen:
            self.no_adds += 1
            return None
        self._seen.add(e)
        self.edges.append(e)
        return e

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, self.k, list(self.edges))


def process_step(state: ProcessState, rng) -> ProcessState:
    state.offer(rng.integers(0, state.n, size=state.k).tolist())
    return state


def run_process(
    state: ProcessState,
    rounds: int,
    rng,
    on_add: Callable[[EdgeTuple], object] | None = None,
) -> ProcessState:
    """Advance ``state`` by ``rounds`` rounds, drawing all samples in one block.

    The block draw consumes the generator differently from repeated
    :func:`process_step` calls, so the two are not stream-compatible.
    """
    if rounds <= 0:
        return state
    samples = rng.integers(0, state.n, size=(rounds, state.k)).tolist()
    offer = state.offer
    for sample in samples:
        e = offer(sample)
        if e is not None and on_add is not None:
            on_add(e)
    return state
