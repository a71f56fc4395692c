"""Per-complex derivability scoring against a network.

Quantifies how well a known complex is embedded in a network through
three scores in [0, 1]:

* component score (CS): fraction of the non-isolated present members
  that sit in their largest mutually connected component;
* edge score (ES): weight of the edges inside the complex over the
  weight of all edges in the complex-plus-direct-neighbors subgraph;
* CE score: CS * ES, the headline derivability index.

Categorically, a complex is k-protein-derivable when at least k members
are present, and k-network-derivable when additionally all present
members form one connected subnetwork.  Complexes that are
k-protein-derivable but score CE below a threshold are "sparse".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import ParseError, UndefinedDensityError
from .netgraph import Network


@dataclass(frozen=True)
class Complex:
    """A named, non-empty set of protein identifiers."""

    id: str
    members: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members:
            raise ValueError(f"complex {self.id!r} has no members")

    @property
    def size(self) -> int:
        return len(self.members)


class ComplexSet:
    """An ordered catalog of complexes with pairwise distinct ids."""

    def __init__(self, complexes: Iterable[Complex]):
        self._list = tuple(complexes)
        by_id: dict[str, Complex] = {}
        for c in self._list:
            if c.id in by_id:
                raise ValueError(f"duplicate complex id {c.id!r}")
            by_id[c.id] = c
        self._by_id = by_id

    def __iter__(self) -> Iterator[Complex]:
        return iter(self._list)

    def __len__(self) -> int:
        return len(self._list)

    def __getitem__(self, i: int) -> Complex:
        return self._list[i]

    def __contains__(self, complex_id: str) -> bool:
        return complex_id in self._by_id

    def get(self, complex_id: str) -> Complex:
        return self._by_id[complex_id]

    def ids(self) -> list[str]:
        return [c.id for c in self._list]

    def __repr__(self) -> str:
        return f"ComplexSet({len(self._list)} complexes)"


class IndexCounts(NamedTuple):
    protein_derivable: int
    network_derivable: int
    ce_derivable: int


@dataclass(frozen=True)
class DerivabilityRecord:
    complex_id: str
    present_count: int
    nonisolated_count: int
    component_sizes: tuple[int, ...]
    cs: float
    es: float
    ce: float
    density: float
    k_protein: bool
    k_network: bool


@dataclass(frozen=True)
class DerivabilityReport:
    network_label: str
    k: int
    t_ce: float
    records: tuple[DerivabilityRecord, ...]
    index_counts: IndexCounts
    catalog: ComplexSet | None = None


def _members(b) -> frozenset[str]:
    return b.members if isinstance(b, Complex) else frozenset(b)


# -- scores ----------------------------------------------------------------


def component_score(g: Network, b) -> float:
    """Fraction of non-isolated present members inside the largest linked
    component; 0 when no member has an intra-complex edge."""
    st = g.complex_stats(_members(b))
    ni = st.nonisolated_count
    return st.largest_linked_component / ni if ni else 0.0


def edge_score(g: Network, b) -> float:
    """Intra-complex edge weight over closed-neighborhood edge weight;
    0 when the neighborhood subgraph has no edges at all."""
    st = g.complex_stats(_members(b))
    return st.intra_weight / st.neighborhood_weight if st.neighborhood_weight > 0 else 0.0


def ce_score(g: Network, b) -> float:
    """Component score times edge score."""
    cs, es, _ = scores_from_stats(g.complex_stats(_members(b)))
    return cs * es


def edge_density(g: Network, b) -> float:
    """Intra-complex weight over n*(n-1) for the n present members.

    Raises :class:`UndefinedDensityError` when fewer than 2 members are
    present.  Each undirected edge is counted once, so an unweighted
    clique tops out near 0.5 on this scale.
    """
    st = g.complex_stats(_members(b))
    n = st.present_count
    if n < 2:
        raise UndefinedDensityError(
            f"density undefined: only {n} member(s) present in the network"
        )
    return st.intra_weight / (n * (n - 1))


def scores_from_stats(st) -> tuple[float, float, float]:
    """(CS, ES, CE) from precomputed :class:`~sparcnet.netgraph.ComplexStats`."""
    ni = st.nonisolated_count
    cs = st.largest_linked_component / ni if ni else 0.0
    es = st.intra_weight / st.neighborhood_weight if st.neighborhood_weight > 0 else 0.0
    return cs, es, cs * es


# -- reports ---------------------------------------------------------------


def derivability_report(
    g: Network,
    catalog: ComplexSet,
    k: int = 4,
    t_ce: float = 0.4,
    label: str = "network",
) -> DerivabilityReport:
    """Score every complex in ``catalog`` against ``g``.

    ``k`` is the presence threshold for protein-derivability; ``t_ce``
    the CE threshold used for the CE-derivable count and for the
    sparse/dense partition.  Records stay in catalog order.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not (0.0 <= t_ce <= 1.0):
        raise ValueError(f"t_ce must be in [0, 1], got {t_ce}")
    records = []
    for cx in catalog:
        st = g.complex_stats(cx.members)
        cs, es, ce = scores_from_stats(st)
        n = st.present_count
        density = st.intra_weight / (n * (n - 1)) if n >= 2 else 0.0
        k_protein = n >= k
        records.append(
            DerivabilityRecord(
                complex_id=cx.id,
                present_count=n,
                nonisolated_count=st.nonisolated_count,
                component_sizes=st.component_sizes,
                cs=cs,
                es=es,
                ce=ce,
                density=density,
                k_protein=k_protein,
                k_network=k_protein and st.is_connected,
            )
        )
    counts = IndexCounts(
        protein_derivable=sum(1 for r in records if r.k_protein),
        network_derivable=sum(1 for r in records if r.k_network),
        ce_derivable=sum(1 for r in records if r.k_protein and r.ce >= t_ce),
    )
    return DerivabilityReport(label, k, t_ce, tuple(records), counts, catalog)


def ce_profile(
    g: Network, catalog: ComplexSet, k: int = 4, thresholds: Iterable[float] = ()
) -> list[tuple[float, int]]:
    """Count k-protein-derivable complexes with CE >= t for each threshold."""
    thresholds = list(thresholds)
    for t in thresholds:
        if not (0.0 <= t <= 1.0):
            raise ValueError(f"threshold {t} outside [0, 1]")
    scored = []
    for cx in catalog:
        st = g.complex_stats(cx.members)
        if st.present_count >= k:
            scored.append(scores_from_stats(st)[2])
    return [(t, sum(1 for ce in scored if ce >= t)) for t in thresholds]


def partition_sparse(report: DerivabilityReport) -> tuple[ComplexSet, ComplexSet]:
    """Split the k-protein-derivable complexes of a report into
    (sparse, dense) by the report's CE threshold.

    Complexes that are not k-protein-derivable appear in neither set.
    Requires the report to carry its source catalog.
    """
    if report.catalog is None:
        raise ValueError("report does not carry its source catalog")
    sparse, dense = [], []
    for rec in report.records:
        if not rec.k_protein:
            continue
        target = sparse if rec.ce < report.t_ce else dense
        target.append(report.catalog.get(rec.complex_id))
    return ComplexSet(sparse), ComplexSet(dense)


# -- catalog files -----------------------------------------------------------


def load_complexes(path) -> ComplexSet:
    """Load a complex catalog: ``complex_id<TAB>protein1 protein2 ...``
    per line (members space-separated); ``#`` lines are comments."""
    complexes = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" in line:
                cid, _, rest = line.partition("\t")
                cid = cid.strip()
                members = rest.split()
            else:
                fields = line.split()
                cid, members = fields[0], fields[1:]
            if not members:
                raise ParseError(f"complex {cid!r} has no members", path, lineno)
            if cid in seen:
                raise ParseError(f"duplicate complex id {cid!r}", path, lineno)
            seen.add(cid)
            complexes.append(Complex(cid, frozenset(members)))
    return ComplexSet(complexes)


def save_complexes(catalog: ComplexSet, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# complex_id\tmembers\n")
        for cx in catalog:
            fh.write(f"{cx.id}\t{' '.join(sorted(cx.members))}\n")
