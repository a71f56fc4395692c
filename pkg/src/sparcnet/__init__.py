"""sparcnet: complex derivability on protein interaction networks.

Scores how well known protein complexes are embedded in an interaction
network (component, edge and CE scores plus categorical derivability),
rescues sparse predicted clusters by selectively borrowing functional
interactions, clusters networks with a Markov-flow baseline, and
benchmarks predictions against curated catalogs.
"""

from ._version import __version__
from .benchmatch import (
    EvalReport,
    MatchConfig,
    PairMatch,
    correlate,
    evaluate,
    jaccard,
)
from .consensus import ConsensusConfig, consensus
from .derivability import (
    Complex,
    ComplexSet,
    DerivabilityRecord,
    DerivabilityReport,
    IndexCounts,
    ce_profile,
    ce_score,
    component_score,
    derivability_report,
    edge_density,
    edge_score,
    load_complexes,
    partition_sparse,
    save_complexes,
)
from .errors import (
    AuditError,
    ConfigError,
    ParseError,
    PipelineError,
    SparcnetError,
    UndefinedCorrelationError,
    UndefinedDensityError,
    UndefinedOverlapError,
)
from .mcl import FlowMatrix, MclConfig, attractor_clusters, flow_step, initial_flow, mcl_cluster
from .netgraph import (
    ComplexStats,
    Network,
    NetworkStats,
    connected_components,
    load_network,
    merge_networks,
    neighborhood,
    random_network,
    save_network,
    stats,
)
from .pipeline import PipelineConfig, load_run_config, run_pipeline
from .sparc import (
    AddedProtein,
    RejectedCluster,
    RescuedCluster,
    SparcConfig,
    SparcResult,
    replay_growth,
    sparc,
)

__all__ = [
    "__version__",
    "AddedProtein",
    "AuditError",
    "Complex",
    "ComplexSet",
    "ComplexStats",
    "ConfigError",
    "ConsensusConfig",
    "DerivabilityRecord",
    "DerivabilityReport",
    "EvalReport",
    "FlowMatrix",
    "IndexCounts",
    "MatchConfig",
    "MclConfig",
    "Network",
    "NetworkStats",
    "PairMatch",
    "ParseError",
    "PipelineConfig",
    "PipelineError",
    "RejectedCluster",
    "RescuedCluster",
    "SparcConfig",
    "SparcResult",
    "SparcnetError",
    "UndefinedCorrelationError",
    "UndefinedDensityError",
    "UndefinedOverlapError",
    "attractor_clusters",
    "ce_profile",
    "ce_score",
    "component_score",
    "connected_components",
    "consensus",
    "correlate",
    "derivability_report",
    "edge_density",
    "edge_score",
    "evaluate",
    "flow_step",
    "initial_flow",
    "jaccard",
    "load_complexes",
    "load_network",
    "load_run_config",
    "mcl_cluster",
    "merge_networks",
    "neighborhood",
    "partition_sparse",
    "random_network",
    "replay_growth",
    "run_pipeline",
    "save_complexes",
    "save_network",
    "sparc",
    "stats",
]
