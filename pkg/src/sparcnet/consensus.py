"""Three-way consensus over complex sets predicted from differently
scored networks.

Complexes are paired into triplets (one from each input set) greedily by
total pairwise Jaccard, each complex usable once.  A triplet qualifies
when at least two of its three pairs overlap at ``pair_overlap_min``;
the consensus complex keeps the proteins occurring in at least
``min_membership`` of the triplet's member sets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .derivability import Complex, ComplexSet
from .errors import ConfigError


@dataclass(frozen=True)
class ConsensusConfig:
    pair_overlap_min: float = 0.70
    min_membership: int = 2

    def __post_init__(self):
        if not (0.0 < self.pair_overlap_min <= 1.0):
            raise ConfigError(
                f"pair_overlap_min must be in (0, 1], got {self.pair_overlap_min}"
            )
        if self.min_membership < 2:
            raise ConfigError(f"min_membership must be >= 2, got {self.min_membership}")


def _jac(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def consensus(
    sets: Sequence[ComplexSet],
    config: ConsensusConfig | None = None,
    id_prefix: str = "consensus",
) -> ComplexSet:
    """Merge qualifying triplets drawn from exactly three complex sets.

    Deterministic and invariant under permutation of the input sets: the
    greedy order is (descending total pairwise Jaccard, sorted id triple,
    sorted member sets).  Identical consensus member sets are emitted once.
    """
    if config is None:
        config = ConsensusConfig()
    if len(sets) != 3:
        raise ValueError(f"consensus requires exactly three complex sets, got {len(sets)}")
    lists = [list(s) for s in sets]
    jmin = config.pair_overlap_min

    # qualifying pairs per set-pair; joining any two pair lists on the shared
    # set yields every triplet with >= 2 qualifying pairs
    qual: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for (sa, sb) in ((0, 1), (1, 2), (0, 2)):
        hits = []
        for i, ca in enumerate(lists[sa]):
            for j, cb in enumerate(lists[sb]):
                if _jac(ca.members, cb.members) >= jmin:
                    hits.append((i, j))
        qual[(sa, sb)] = hits

    triplets = set()
    by_second: dict[int, list[int]] = {}
    for j, k in qual[(1, 2)]:
        by_second.setdefault(j, []).append(k)
    for i, j in qual[(0, 1)]:
        for k in by_second.get(j, ()):  # pairs (0,1) + (1,2)
            triplets.add((i, j, k))
    by_first: dict[int, list[int]] = {}
    for i, k in qual[(0, 2)]:
        by_first.setdefault(i, []).append(k)
    for i, j in qual[(0, 1)]:
        for k in by_first.get(i, ()):  # pairs (0,1) + (0,2)
            triplets.add((i, j, k))
    by_third: dict[int, list[int]] = {}
    for i, k in qual[(0, 2)]:
        by_third.setdefault(k, []).append(i)
    for j, k in qual[(1, 2)]:
        for i in by_third.get(k, ()):  # pairs (1,2) + (0,2)
            triplets.add((i, j, k))

    def sort_key(t):
        i, j, k = t
        a, b, c = lists[0][i], lists[1][j], lists[2][k]
        total = _jac(a.members, b.members) + _jac(b.members, c.members) + _jac(a.members, c.members)
        ids = tuple(sorted((a.id, b.id, c.id)))
        contents = tuple(sorted(tuple(sorted(m)) for m in (a.members, b.members, c.members)))
        return (-total, ids, contents)

    used: list[set[int]] = [set(), set(), set()]
    merged: list[frozenset[str]] = []
    emitted: set[frozenset[str]] = set()
    for i, j, k in sorted(triplets, key=sort_key):
        if i in used[0] or j in used[1] or k in used[2]:
            continue
        used[0].add(i)
        used[1].add(j)
        used[2].add(k)
        votes = Counter()
        for cx in (lists[0][i], lists[1][j], lists[2][k]):
            votes.update(cx.members)
        members = frozenset(p for p, n in votes.items() if n >= config.min_membership)
        if members and members not in emitted:
            emitted.add(members)
            merged.append(members)

    width = max(4, len(str(len(merged))))
    return ComplexSet(
        Complex(f"{id_prefix}{n:0{width}d}", m) for n, m in enumerate(merged, 1)
    )
