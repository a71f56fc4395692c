"""Shared builders for the test suite."""

from __future__ import annotations

import itertools

import pytest

from sparcnet import Complex, ComplexSet, Network


def clique_edges(names, weight=1.0):
    return [(u, v, weight) for u, v in itertools.combinations(sorted(names), 2)]


def net(edges, nodes=()):
    return Network.from_edges(edges, nodes=nodes)


def cset(*id_member_pairs):
    return ComplexSet(Complex(cid, frozenset(members)) for cid, members in id_member_pairs)


def build_reference_networks():
    """Synthetic physical/functional pair with the reference overlap profile:
    4113/3960 proteins, 26518/18683 interactions, 2928 shared proteins and
    1296 shared interactions."""
    common = [f"c{i:04d}" for i in range(2928)]
    p_only = [f"p{i:04d}" for i in range(4113 - 2928)]
    f_only = [f"f{i:04d}" for i in range(3960 - 2928)]
    shared = [(common[i], common[i + 1], 1.0) for i in range(1296)]
    p_extra = list(
        itertools.islice(
            ((p, c, 1.0) for p in p_only for c in common), 26518 - 1296
        )
    )
    f_extra = list(
        itertools.islice(
            ((f, c, 1.0) for f in f_only for c in common), 18683 - 1296
        )
    )
    g_p = Network.from_edges(shared + p_extra, nodes=common + p_only)
    g_f = Network.from_edges(shared + f_extra, nodes=common + f_only)
    return g_p, g_f


@pytest.fixture(scope="session")
def reference_networks():
    return build_reference_networks()
