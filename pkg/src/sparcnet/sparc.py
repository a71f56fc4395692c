"""Sparse-cluster rescue on an augmented physical+functional network.

Clusters predicted from the physical network are passed through when
their CE score already clears the acceptance threshold delta.  The rest
are re-scored against the union of the physical and functional networks
and, when still short, grown greedily: direct neighbors are ranked by
their total edge weight into the cluster and the first one whose
inclusion strictly raises the CE score is absorbed, re-ranking after
every addition, until no candidate helps (or the growth cap is hit).
Clusters that end at or above delta are rescued; the others are rejected
but retained for analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derivability import Complex, ComplexSet, scores_from_stats
from .errors import AuditError, ConfigError
from .netgraph import Network, merge_networks


@dataclass(frozen=True)
class SparcConfig:
    """``delta`` is the CE acceptance threshold; ``max_growth`` caps the
    proteins added per cluster (0 = unlimited); ``min_output_size``
    filters the predicted-complex output."""

    delta: float = 0.40
    max_growth: int = 20
    min_output_size: int = 4

    def __post_init__(self):
        if not (0.0 <= self.delta <= 1.0):
            raise ConfigError(f"delta must be in [0, 1], got {self.delta}")
        if self.max_growth < 0:
            raise ConfigError(f"max_growth must be >= 0, got {self.max_growth}")
        if self.min_output_size < 1:
            raise ConfigError(f"min_output_size must be >= 1, got {self.min_output_size}")


@dataclass(frozen=True)
class AddedProtein:
    """One growth step; ``in_physical`` is False for proteins that exist
    only in the functional network."""

    protein: str
    in_physical: bool


@dataclass(frozen=True)
class RescuedCluster:
    cluster_id: str
    members: frozenset[str]
    ce_before: float  # measured on the physical network
    ce_after: float  # measured on the augmented network
    added_proteins: tuple[AddedProtein, ...]


@dataclass(frozen=True)
class RejectedCluster:
    cluster_id: str
    best_ce: float


@dataclass(frozen=True)
class SparcResult:
    """Outcome partition: accepted as-is, rescued (possibly grown), or
    rejected; the three id groups partition the input clusters."""

    accepted_step1: ComplexSet
    rescued: tuple[RescuedCluster, ...]
    rejected: tuple[RejectedCluster, ...]
    config: SparcConfig
    clusters: ComplexSet  # the input, kept for assembling outputs

    def predicted(self, include_rejected: bool = False) -> ComplexSet:
        """Predicted-complex catalog: accepted plus rescued clusters (with
        their final members), at least ``min_output_size`` proteins each.
        Rejected clusters keep their original members when included."""
        rescued_by_id = {r.cluster_id: r for r in self.rescued}
        accepted_ids = {c.id for c in self.accepted_step1}
        rejected_ids = {r.cluster_id for r in self.rejected}
        out = []
        for cx in self.clusters:
            if cx.id in accepted_ids:
                members = cx.members
            elif cx.id in rescued_by_id:
                members = rescued_by_id[cx.id].members
            elif include_rejected and cx.id in rejected_ids:
                members = cx.members
            else:
                continue
            if len(members) >= self.config.min_output_size:
                out.append(Complex(cx.id, members))
        return ComplexSet(out)


def _ce(g: Network, members) -> float:
    return scores_from_stats(g.complex_stats(members))[2]


def _ranked_candidates(g: Network, members: frozenset[str]) -> list[tuple[str, float]]:
    """Direct neighbors of the cluster, by non-increasing total edge
    weight into it, ties by smaller protein id."""
    weight_in: dict[str, float] = {}
    for m in sorted(members):
        if not g.has_node(m):
            continue
        for v, w in g.neighbors(m).items():
            if v not in members:
                weight_in[v] = weight_in.get(v, 0.0) + w
    return sorted(weight_in.items(), key=lambda item: (-item[1], item[0]))


def _grow(g_a: Network, members: frozenset[str], config: SparcConfig):
    """Greedy CE-improving growth; returns (members, ce, added names)."""
    ce_cur = _ce(g_a, members)
    added: list[str] = []
    if ce_cur >= config.delta:
        return members, ce_cur, added
    while config.max_growth == 0 or len(added) < config.max_growth:
        adopted = None
        for p, _w in _ranked_candidates(g_a, members):
            ce_new = _ce(g_a, members | {p})
            if ce_new > ce_cur:
                adopted = p
                members = members | {p}
                ce_cur = ce_new
                added.append(p)
                break
        if adopted is None:
            break
    return members, ce_cur, added


def sparc(
    clusters: ComplexSet,
    g_p: Network,
    g_f: Network,
    config: SparcConfig | None = None,
) -> SparcResult:
    """Run the rescue pass over ``clusters`` predicted from ``g_p``.

    Deterministic: candidate order is fully specified, and results keep
    the input cluster order within each outcome group.
    """
    if config is None:
        config = SparcConfig()
    if len(clusters) == 0:
        raise ValueError("clusters must be non-empty")

    accepted = []
    reserved: list[tuple[Complex, float]] = []
    for cx in clusters:
        ce_p = _ce(g_p, cx.members)
        if ce_p >= config.delta:
            accepted.append(cx)
        else:
            reserved.append((cx, ce_p))

    g_a = merge_networks(g_p, g_f)

    rescued = []
    rejected = []
    for cx, ce_before in reserved:
        members, ce_a, added = _grow(g_a, cx.members, config)
        if ce_a >= config.delta:
            rescued.append(
                RescuedCluster(
                    cluster_id=cx.id,
                    members=members,
                    ce_before=ce_before,
                    ce_after=ce_a,
                    added_proteins=tuple(
                        AddedProtein(p, g_p.has_node(p)) for p in added
                    ),
                )
            )
        else:
            rejected.append(RejectedCluster(cx.id, ce_a))

    return SparcResult(
        accepted_step1=ComplexSet(accepted),
        rescued=tuple(rescued),
        rejected=tuple(rejected),
        config=config,
        clusters=clusters,
    )


def replay_growth(cluster: Complex, additions, g_a: Network) -> list[float]:
    """Audit a recorded growth trail: CE after each prefix of ``additions``.

    Raises :class:`AuditError` when an added protein is missing from the
    augmented network or when a step fails to strictly increase CE.
    """
    members = set(cluster.members)
    trail = [_ce(g_a, members)]
    for p in additions:
        name = p.protein if isinstance(p, AddedProtein) else p
        if not g_a.has_node(name):
            raise AuditError(f"added protein {name!r} absent from the augmented network")
        members.add(name)
        ce = _ce(g_a, members)
        if ce <= trail[-1]:
            raise AuditError(
                f"non-monotone growth at {name!r}: CE {ce:.6f} <= {trail[-1]:.6f}"
            )
        trail.append(ce)
    return trail
