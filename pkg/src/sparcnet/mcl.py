"""Markov clustering baseline (flow simulation on the weighted adjacency).

Alternates expansion (matrix power, spreading flow) with inflation
(entrywise power plus column renormalization, thickening strong flow)
until the column-stochastic flow matrix stops changing.  Attractor rows
of the limit matrix spell out the clusters.  Dense numpy matrices are
used throughout; fine at the scales this pipeline targets.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .derivability import Complex, ComplexSet
from .errors import ConfigError
from .netgraph import Network

_STOCHASTIC_TOL = 1e-9


@dataclass(frozen=True)
class MclConfig:
    """Flow-iteration parameters.

    ``self_loop_weight`` scales each node's self-loop, whose base value is
    the node's maximum incident edge weight (1.0 for isolated nodes).
    """

    inflation: float = 2.5
    expansion: int = 2
    max_iterations: int = 200
    convergence_eps: float = 1e-6
    prune_threshold: float = 1e-5
    self_loop_weight: float = 1.0

    def __post_init__(self):
        if self.inflation <= 1.0:
            raise ConfigError(f"inflation must be > 1, got {self.inflation}")
        if self.expansion < 2:
            raise ConfigError(f"expansion must be >= 2, got {self.expansion}")
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be >= 1")
        if self.convergence_eps <= 0:
            raise ConfigError("convergence_eps must be > 0")
        if self.prune_threshold < 0:
            raise ConfigError("prune_threshold must be >= 0")
        if self.self_loop_weight <= 0:
            raise ConfigError("self_loop_weight must be > 0")


@dataclass(frozen=True)
class FlowMatrix:
    """Column-stochastic flow over a fixed node ordering."""

    nodes: tuple[str, ...]
    matrix: np.ndarray

    def validate(self) -> None:
        m = self.matrix
        if m.shape != (len(self.nodes), len(self.nodes)):
            raise ValueError("flow matrix shape does not match node list")
        if (m < 0).any():
            raise ValueError("flow matrix has negative entries")
        colsums = m.sum(axis=0)
        if np.abs(colsums - 1.0).max() > _STOCHASTIC_TOL:
            raise ValueError("flow matrix columns do not sum to 1")


def initial_flow(g: Network, config: MclConfig) -> FlowMatrix:
    """Weighted adjacency with self-loops, column-normalized."""
    nodes = tuple(sorted(g.nodes))
    n = len(nodes)
    index = {u: i for i, u in enumerate(nodes)}
    m = np.zeros((n, n), dtype=np.float64)
    for u, v, w in g.edges():
        i, j = index[u], index[v]
        m[i, j] = w
        m[j, i] = w
    for i in range(n):
        mx = m[i].max() if n else 0.0
        m[i, i] = config.self_loop_weight * (mx if mx > 0 else 1.0)
    m /= m.sum(axis=0, keepdims=True)
    return FlowMatrix(nodes, m)


def flow_step(m: FlowMatrix, config: MclConfig) -> FlowMatrix:
    """One expansion + inflation + prune + renormalize round."""
    out = np.linalg.matrix_power(m.matrix, config.expansion)
    np.power(out, config.inflation, out=out)
    if config.prune_threshold > 0:
        # never prune a column's largest entry, so no column can go dark
        colmax = out.max(axis=0, keepdims=True)
        out[(out < config.prune_threshold) & (out < colmax)] = 0.0
    out /= out.sum(axis=0, keepdims=True)
    return FlowMatrix(m.nodes, out)


def attractor_clusters(m: FlowMatrix) -> list[frozenset[str]]:
    """Interpret a converged flow: every attractor row (nonzero diagonal)
    claims the columns that flow into it.  Duplicates are collapsed;
    singletons are kept (callers decide whether to drop them)."""
    mat = m.matrix
    clusters = []
    seen = set()
    for i in range(len(m.nodes)):
        if mat[i, i] <= 0:
            continue
        members = frozenset(m.nodes[j] for j in np.nonzero(mat[i])[0])
        if members not in seen:
            seen.add(members)
            clusters.append(members)
    return clusters


def mcl_cluster(g: Network, config: MclConfig | None = None, id_prefix: str = "mcl") -> ComplexSet:
    """Cluster a network by Markov flow simulation.

    Iterates :func:`flow_step` from :func:`initial_flow` until the largest
    entry change drops below ``convergence_eps`` or ``max_iterations`` is
    hit (then a RuntimeWarning flags the best-effort result).  Nodes
    attracted to several attractors join each such cluster; singleton
    clusters are dropped.
    """
    if config is None:
        config = MclConfig()
    if g.node_count == 0:
        raise ValueError("cannot cluster an empty network")
    flow = initial_flow(g, config)
    converged = False
    for _ in range(config.max_iterations):
        nxt = flow_step(flow, config)
        if np.abs(nxt.matrix - flow.matrix).max() < config.convergence_eps:
            flow = nxt
            converged = True
            break
        flow = nxt
    if not converged:
        warnings.warn(
            f"flow did not converge within {config.max_iterations} iterations; "
            "interpreting the current matrix",
            RuntimeWarning,
            stacklevel=2,
        )
    clusters = [c for c in attractor_clusters(flow) if len(c) > 1]
    clusters.sort(key=lambda c: (-len(c), sorted(c)))
    width = max(4, len(str(len(clusters))))
    return ComplexSet(
        Complex(f"{id_prefix}{i:0{width}d}", members) for i, members in enumerate(clusters, 1)
    )
