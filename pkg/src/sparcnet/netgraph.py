"""Weighted undirected protein networks.

The :class:`Network` type is immutable after construction: all operations
here are read-only, so instances can be shared freely between threads.
Edge weights are interaction confidences in (0, 1]; an unweighted edge
list loads with a caller-chosen default weight.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from . import _kernels
from .errors import ParseError

log = logging.getLogger(__name__)

_COMBINE_POLICIES = ("max", "mean")


class ComplexStats(NamedTuple):
    """Raw subgraph quantities for one protein set against one network.

    ``component_sizes`` covers the subgraph induced by the present members
    (isolated present members appear as singletons) in non-increasing
    order.  ``intra_weight`` sums edges inside the member set,
    ``neighborhood_weight`` sums edges inside the closed neighborhood
    (members plus direct neighbors); undirected edges count once.
    """

    present_count: int
    component_sizes: tuple[int, ...]
    intra_weight: float
    neighborhood_weight: float

    @property
    def nonisolated_count(self) -> int:
        """Members with at least one edge to another present member."""
        return sum(s for s in self.component_sizes if s >= 2)

    @property
    def largest_linked_component(self) -> int:
        """Size of the largest component among non-isolated members."""
        return max((s for s in self.component_sizes if s >= 2), default=0)

    @property
    def is_connected(self) -> bool:
        """True when all present members form a single component."""
        return len(self.component_sizes) == 1


@dataclass(frozen=True)
class NetworkStats:
    protein_count: int
    interaction_count: int
    avg_node_degree: float


class Network:
    """Immutable weighted undirected graph over string protein identifiers.

    Invariants: no self-loops, no duplicate unordered pairs, every weight
    in (0, 1].  Isolated nodes are allowed.  Build instances through
    :meth:`from_edges`, :func:`load_network`, :func:`merge_networks` or
    :func:`random_network`.
    """

    __slots__ = ("_adj", "_nodes", "_edge_count", "_csr_cache")

    def __init__(self, adj: dict[str, dict[str, float]]):
        # internal: adj must already be symmetric and validated
        self._adj = adj
        self._nodes = frozenset(adj)
        self._edge_count = sum(len(nbrs) for nbrs in adj.values()) // 2
        self._csr_cache = None

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[str, str, float]],
        nodes: Iterable[str] = (),
        combine: str = "max",
    ) -> "Network":
        """Build a network from ``(u, v, weight)`` triples.

        Duplicate unordered pairs are collapsed with the ``combine`` policy
        ('max' keeps the strongest evidence, 'mean' averages all
        occurrences).  Raises ValueError on self-loops or weights outside
        (0, 1].  ``nodes`` adds isolated nodes.
        """
        if combine not in _COMBINE_POLICIES:
            raise ValueError(f"unknown combine policy {combine!r}")
        best: dict[tuple[str, str], float] = {}
        counts: dict[tuple[str, str], int] = {}
        for u, v, w in edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r} not allowed")
            if not (0.0 < w <= 1.0):
                raise ValueError(f"edge weight {w!r} outside (0, 1] for ({u!r}, {v!r})")
            key = (u, v) if u < v else (v, u)
            if key not in best:
                best[key] = w
                counts[key] = 1
            elif combine == "max":
                best[key] = max(best[key], w)
            else:
                best[key] += w
                counts[key] += 1
        adj: dict[str, dict[str, float]] = {}
        for n in nodes:
            adj.setdefault(n, {})
        for (u, v), w in best.items():
            if combine == "mean":
                w = w / counts[(u, v)]
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        return cls(adj)

    # -- basic accessors -------------------------------------------------

    @property
    def nodes(self) -> frozenset[str]:
        return self._nodes

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def has_node(self, u: str) -> bool:
        return u in self._adj

    def has_edge(self, u: str, v: str) -> bool:
        return u in self._adj and v in self._adj[u]

    def weight(self, u: str, v: str) -> float | None:
        """Weight of edge (u, v), or None when absent."""
        row = self._adj.get(u)
        return None if row is None else row.get(v)

    def degree(self, u: str) -> int:
        return len(self._adj[u])

    def neighbors(self, u: str) -> dict[str, float]:
        """Neighbor-to-weight mapping for ``u`` (treat as read-only)."""
        return self._adj[u]

    def edges(self) -> Iterator[tuple[str, str, float]]:
        """All edges as (u, v, w) with u < v, in sorted order."""
        for u in sorted(self._adj):
            row = self._adj[u]
            for v in sorted(row):
                if u < v:
                    yield u, v, row[v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self._adj == other._adj

    __hash__ = None  # equality is structural, so identity hashing would lie

    def __repr__(self) -> str:
        return f"Network(nodes={self.node_count}, edges={self.edge_count})"

    # -- kernel-backed subgraph queries ----------------------------------

    def subgraph_components(self, members: Iterable[str]) -> list[set[str]]:
        """Components of the subgraph induced by ``members`` (absent names
        ignored), ordered by decreasing size then smallest member."""
        parts = _kernels.component_partition(self, members)
        return sorted(parts, key=lambda c: (-len(c), min(c)))

    def complex_stats(self, members: Iterable[str]) -> ComplexStats:
        """Induced-subgraph and neighborhood statistics for ``members``."""
        sizes, intra, nbw = _kernels.complex_stats(self, members)
        return ComplexStats(sum(sizes), tuple(sizes), intra, nbw)

    def _csr(self):
        """CSR view (names, index, indptr, indices, weights); cached.

        Rows and row contents are in sorted-name order so compiled and
        pure kernels accumulate floats identically.
        """
        if self._csr_cache is None:
            names = sorted(self._adj)
            index = {u: i for i, u in enumerate(names)}
            indptr = np.zeros(len(names) + 1, dtype=np.int64)
            for i, u in enumerate(names):
                indptr[i + 1] = indptr[i] + len(self._adj[u])
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            weights = np.empty(int(indptr[-1]), dtype=np.float64)
            at = 0
            for u in names:
                row = self._adj[u]
                for v in sorted(row, key=index.__getitem__):
                    indices[at] = index[v]
                    weights[at] = row[v]
                    at += 1
            self._csr_cache = (names, index, indptr, indices, weights)
        return self._csr_cache

    def _member_indices(self, members: Iterable[str]) -> np.ndarray:
        index = self._csr()[1]
        idx = sorted(index[m] for m in set(members) if m in index)
        return np.asarray(idx, dtype=np.int32)


# -- construction from files ----------------------------------------------


def load_network(path, default_weight: float = 1.0) -> Network:
    """Load an edge list: ``proteinA<TAB>proteinB[<TAB>weight]`` per line.

    Space-separated columns are accepted as well; ``#`` lines are comments.
    Missing weights take ``default_weight``; duplicate unordered pairs keep
    the maximum weight; self-loops are dropped (logged with a count).
    Malformed lines raise :class:`ParseError` naming the line number.
    """
    if not (0.0 < default_weight <= 1.0):
        raise ValueError(f"default_weight {default_weight!r} outside (0, 1]")
    edges = []
    loop_nodes = []
    self_loops = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            parts = [p.strip() for p in parts if p.strip()]
            if len(parts) == 2:
                u, v = parts
                w = default_weight
            elif len(parts) == 3:
                u, v = parts[0], parts[1]
                try:
                    w = float(parts[2])
                except ValueError:
                    raise ParseError(f"non-numeric weight {parts[2]!r}", path, lineno) from None
                if math.isnan(w) or not (0.0 < w <= 1.0):
                    raise ParseError(f"weight {parts[2]} outside (0, 1]", path, lineno)
            else:
                raise ParseError(f"expected 2 or 3 columns, found {len(parts)}", path, lineno)
            if u == v:
                self_loops += 1
                loop_nodes.append(u)
                continue
            edges.append((u, v, w))
    if self_loops:
        log.warning("%s: dropped %d self-loop(s)", path, self_loops)
    return Network.from_edges(edges, nodes=loop_nodes, combine="max")


def save_network(g: Network, path, comment: str | None = None) -> None:
    """Write ``g`` in the tab-separated edge-list format (sorted, stable).

    ``comment`` adds one provenance line (e.g. a generation seed).  The
    edge-list format cannot express degree-0 nodes; they are recorded as
    informational ``# isolated`` comments, which loaders skip.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# proteinA\tproteinB\tweight\n")
        if comment:
            fh.write(f"# {comment}\n")
        for u, v, w in g.edges():
            fh.write(f"{u}\t{v}\t{w:.10g}\n")
        for u in sorted(n for n in g.nodes if g.degree(n) == 0):
            fh.write(f"# isolated\t{u}\n")


# -- graph operations ------------------------------------------------------


def merge_networks(p: Network, f: Network, conflict: str = "max") -> Network:
    """Union of two networks: nodes and edges are united; an edge present
    in both takes its weight per ``conflict`` ('max' or 'mean')."""
    return Network.from_edges(
        itertools.chain(p.edges(), f.edges()),
        nodes=p.nodes | f.nodes,
        combine=conflict,
    )


def random_network(nodes: Iterable[str], target_avg_degree: float, seed: int = 0) -> Network:
    """Uniform random network on exactly ``nodes`` with
    ``floor(|nodes| * target_avg_degree / 2)`` distinct edges, all weight 1.

    Deterministic for a fixed ``seed``.  Raises ValueError when the target
    edge count exceeds the complete-graph bound.
    """
    names = sorted(set(nodes))
    n = len(names)
    if target_avg_degree < 0:
        raise ValueError("target_avg_degree must be >= 0")
    m = math.floor(n * target_avg_degree / 2)
    max_m = n * (n - 1) // 2
    if m > max_m:
        raise ValueError(f"target edge count {m} exceeds complete-graph bound {max_m}")
    rng = random.Random(seed)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < m:
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        if i > j:
            i, j = j, i
        chosen.add((i, j))
    edges = [(names[i], names[j], 1.0) for i, j in sorted(chosen)]
    return Network.from_edges(edges, nodes=names)


def connected_components(g: Network, within: Iterable[str]) -> list[set[str]]:
    """Partition ``within`` into maximal mutually reachable sets, using only
    edges with both endpoints in ``within``.

    ``within`` must be a subset of the network's nodes.  Components are
    ordered by non-increasing size, ties by smallest member.
    """
    within = set(within)
    unknown = within - g.nodes
    if unknown:
        some = ", ".join(sorted(unknown)[:3])
        raise ValueError(f"{len(unknown)} node(s) not in network (e.g. {some})")
    return g.subgraph_components(within)


def neighborhood(g: Network, s: Iterable[str]) -> set[str]:
    """Closed neighborhood: present members of ``s`` plus their direct
    neighbors.  Members absent from the network are ignored."""
    present = {p for p in s if g.has_node(p)}
    out = set(present)
    for p in present:
        out.update(g.neighbors(p))
    return out


def stats(g: Network) -> NetworkStats:
    """Protein count, interaction count and average node degree (2E/V)."""
    n = g.node_count
    e = g.edge_count
    return NetworkStats(n, e, (2.0 * e / n) if n else 0.0)
