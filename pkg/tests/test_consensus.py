import itertools

import pytest

from sparcnet import ConfigError, ConsensusConfig, consensus
from conftest import cset


def _p(n):
    return {f"p{i}" for i in range(1, n + 1)}


def test_three_identical_complexes_merge_to_same():
    a = cset(("a1", _p(8)))
    b = cset(("b1", _p(8)))
    c = cset(("c1", _p(8)))
    out = consensus([a, b, c])
    assert len(out) == 1
    assert out[0].members == _p(8)


def test_single_qualifying_pair_is_not_enough():
    a = cset(("a1", _p(8)))
    b = cset(("b1", _p(8)))
    c = cset(("c1", {"q1", "q2", "q3", "q4"}))
    assert len(consensus([a, b, c])) == 0


def test_hand_computed_triplet_rejected_then_accepted():
    a = cset(("a1", _p(8)))
    b = cset(("b1", _p(7) | {"q"}))
    # first variant: C shares only 6 proteins; only J(A,B) >= 0.70 -> rejected
    c_reject = cset(("c1", _p(6) | {"r", "s"}))
    assert len(consensus([a, b, c_reject])) == 0
    # second variant: C = p1..p7 + s lifts two pairs over the bar -> accepted
    c_accept = cset(("c1", _p(7) | {"s"}))
    out = consensus([a, b, c_accept])
    assert len(out) == 1
    # members present in at least two of the three inputs
    assert out[0].members == _p(7)


def test_min_membership_three_keeps_only_common_core():
    a = cset(("a1", _p(8)))
    b = cset(("b1", _p(7) | {"q"}))
    c = cset(("c1", _p(7) | {"s"}))
    out = consensus([a, b, c], ConsensusConfig(min_membership=3))
    assert len(out) == 1
    assert out[0].members == _p(7)


def test_permutation_invariance():
    a = cset(("a1", _p(8)), ("a2", {"x1", "x2", "x3", "x4"}))
    b = cset(("b1", _p(7) | {"q"}), ("b2", {"x1", "x2", "x3", "x5"}))
    c = cset(("c1", _p(7) | {"s"}), ("c2", {"x1", "x2", "x3", "x4", "x5"}))
    reference = {frozenset(t.members) for t in consensus([a, b, c])}
    for perm in itertools.permutations([a, b, c]):
        got = {frozenset(t.members) for t in consensus(list(perm))}
        assert got == reference


def test_each_complex_used_at_most_once():
    # two b-candidates overlap the same a/c pair; only one triplet forms
    a = cset(("a1", _p(8)))
    b = cset(("b1", _p(8)), ("b2", _p(7) | {"q"}))
    c = cset(("c1", _p(8)))
    out = consensus([a, b, c])
    assert len(out) == 1
    assert out[0].members == _p(8)


def test_greedy_prefers_higher_total_overlap():
    # a1 matches (b1, c1) perfectly; a2 only weakly matches b1
    a = cset(("a1", _p(8)), ("a2", _p(6) | {"z1", "z2"}))
    b = cset(("b1", _p(8)))
    c = cset(("c1", _p(8)))
    out = consensus([a, b, c])
    assert len(out) == 1
    assert out[0].members == _p(8)


def test_duplicate_consensus_members_deduplicated():
    a = cset(("a1", _p(8)), ("a2", _p(8) | {"extra"}))
    b = cset(("b1", _p(8)), ("b2", _p(8) | {"extra2"}))
    c = cset(("c1", _p(8)), ("c2", _p(8) | {"extra3"}))
    out = consensus([a, b, c])
    # both triplets reduce to the same core -> emitted once
    assert len(out) == 1
    assert out[0].members == _p(8)


def test_requires_exactly_three_sets():
    a = cset(("a1", _p(8)))
    with pytest.raises(ValueError, match="exactly three"):
        consensus([a, a])
    with pytest.raises(ValueError, match="exactly three"):
        consensus([a, a, a, a])


def test_config_validation():
    with pytest.raises(ConfigError):
        ConsensusConfig(pair_overlap_min=0.0)
    with pytest.raises(ConfigError):
        ConsensusConfig(min_membership=1)


def test_protein_membership_rule_exact():
    # q appears in two of three inputs -> kept at min_membership=2
    a = cset(("a1", _p(7) | {"q"}))
    b = cset(("b1", _p(7) | {"q"}))
    c = cset(("c1", _p(7) | {"s"}))
    out = consensus([a, b, c])
    assert len(out) == 1
    assert out[0].members == _p(7) | {"q"}
