"""Acceptance suite: one test per release criterion.

Each test prints a single ``[criterion N] ... PASS`` line (visible with
``pytest -s``); pytest -v shows the same per-test verdicts.  Stated
runtime bounds are asserted with a wall clock.
"""

import hashlib
import math
import random
import time
from pathlib import Path

import numpy as np
import pytest

from sparcnet import (
    Complex,
    MatchConfig,
    MclConfig,
    Network,
    SparcConfig,
    ce_score,
    component_score,
    connected_components,
    derivability_report,
    edge_score,
    evaluate,
    flow_step,
    initial_flow,
    jaccard,
    load_run_config,
    mcl_cluster,
    merge_networks,
    partition_sparse,
    replay_growth,
    run_pipeline,
    sparc,
    stats,
)
from sparcnet.consensus import consensus
from conftest import build_reference_networks, clique_edges, cset
from oracles import (
    component_score_oracle,
    components_by_matrix_squaring,
    evaluate_oracle,
    random_graph,
)

TOY = Path(__file__).resolve().parent.parent / "data" / "toy"


class _criterion:
    def __init__(self, number, description, max_seconds=None):
        self.number = number
        self.description = description
        self.max_seconds = max_seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"[criterion {self.number:2d}] {self.description}: {verdict} ({elapsed:.2f}s)")
        if exc_type is None and self.max_seconds is not None:
            assert elapsed < self.max_seconds, (
                f"criterion {self.number} exceeded its {self.max_seconds}s budget: {elapsed:.2f}s"
            )
        return False


def test_criterion_01_network_merge_arithmetic():
    with _criterion(1, "network-merge arithmetic (4113+3960 -> 5145/43905)", 5.0):
        g_p, g_f = build_reference_networks()
        sp = stats(g_p)
        assert (sp.protein_count, sp.interaction_count) == (4113, 26518)
        assert sp.avg_node_degree == pytest.approx(12.89, abs=0.01)
        sf = stats(g_f)
        assert (sf.protein_count, sf.interaction_count) == (3960, 18683)
        merged = stats(merge_networks(g_p, g_f))
        assert merged.protein_count == 5145
        assert merged.interaction_count == 43905
        assert merged.avg_node_degree == pytest.approx(17.07, abs=0.01)


def _engineered_evaluation_fixture():
    """294 predictions / 29 matched / 155 derivable / 38 derived."""
    benchmarks = []
    predictions = []
    # 20 singles: prediction j replicates benchmark j exactly
    for j in range(20):
        members = {f"s{j}_{i}" for i in range(4)}
        benchmarks.append((f"b{j:03d}", members))
        predictions.append((f"c{j:03d}", set(members)))
    # 9 doubles: one prediction covering two overlapping benchmarks (J = 4/6)
    for j in range(9):
        pool = [f"d{j}_{i}" for i in range(6)]
        benchmarks.append((f"b{20 + 2 * j:03d}", set(pool[:4])))
        benchmarks.append((f"b{21 + 2 * j:03d}", set(pool[2:])))
        predictions.append((f"c{20 + j:03d}", set(pool)))
    # remaining benchmarks: derivable but never matched
    for j in range(38, 155):
        benchmarks.append((f"b{j:03d}", {f"u{j}_{i}" for i in range(4)}))
    # filler predictions in a namespace disjoint from every benchmark
    for j in range(29, 294):
        predictions.append((f"c{j:03d}", {f"f{j}_{i}" for i in range(3)}))
    nodes = sorted({p for _, members in benchmarks for p in members})
    g = Network.from_edges([], nodes=nodes)
    return cset(*benchmarks), cset(*predictions), g, benchmarks, predictions, nodes


def test_criterion_02_evaluation_arithmetic():
    with _criterion(2, "evaluation arithmetic (Pr 0.098, Rc 0.245)", 1.0):
        bench, preds, g, raw_b, raw_p, nodes = _engineered_evaluation_fixture()
        report = evaluate(bench, preds, g, MatchConfig(j_min=0.50, k=4))
        assert report.predicted_count == 294
        assert report.matched_count == 29
        assert report.derivable_count == 155
        assert report.derived_count == 38
        assert report.precision == pytest.approx(0.098, abs=0.001)
        assert report.recall == pytest.approx(0.245, abs=0.001)
        # double-checked against the exhaustive oracle
        matched, derivable, derived, _ = evaluate_oracle(raw_b, raw_p, nodes, 4, 0.50)
        assert (matched, derivable, derived) == (29, 155, 38)


def test_criterion_03_jaccard_threshold_algebra():
    with _criterion(3, "jaccard threshold algebra (exhaustive to size 30)", 1.0):
        for nb in range(1, 31):
            for nc in range(1, 31):
                for i in range(0, min(nb, nc) + 1):
                    b = frozenset(range(nb))
                    c = frozenset(range(nb - i, nb - i + nc))
                    assert len(b & c) == i
                    assert (jaccard(b, c) >= 0.50) == (i >= math.ceil((nb + nc) / 3))
        # equal sizes of 8 need an overlap of at least 6
        assert min(
            i for i in range(9) if i >= math.ceil((8 + 8) / 3)
        ) == 6


def _random_derivability_instance(rng):
    n = rng.randint(5, 28)
    nodes = [f"n{i:02d}" for i in range(n)]
    g = Network.from_edges(
        random_graph(rng, nodes, rng.uniform(0.05, 0.45)), nodes=nodes
    )
    complexes = []
    for ci in range(rng.randint(1, 7)):
        members = set(rng.sample(nodes, rng.randint(1, min(9, n))))
        if rng.random() < 0.25:
            members.add(f"absent{ci}")
        complexes.append((f"b{ci}", members))
    return g, cset(*complexes)


def test_criterion_04_derivability_set_laws():
    with _criterion(4, "derivability set laws (1000 randomized instances)", 60.0):
        rng = random.Random(0xD51)
        violations = 0
        for _ in range(1000):
            g, catalog = _random_derivability_instance(rng)
            k = rng.randint(1, 6)
            t_ce = rng.random()
            report = derivability_report(g, catalog, k=k, t_ce=t_ce)
            d_p = {r.complex_id for r in report.records if r.k_protein}
            d_n = {r.complex_id for r in report.records if r.k_network}
            d_ce = lambda t: {
                r.complex_id for r in report.records if r.k_protein and r.ce >= t
            }
            if not d_n <= d_p:
                violations += 1
            if d_ce(0.0) != d_p:
                violations += 1
            prev = None
            for t in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0):
                cur = d_ce(t)
                if prev is not None and not cur <= prev:
                    violations += 1
                prev = cur
            sparse, dense = partition_sparse(report)
            sids = {c.id for c in sparse}
            dids = {c.id for c in dense}
            if sids | dids != d_p or sids & dids:
                violations += 1
            for r in report.records:
                no_isolated = all(s >= 2 for s in r.component_sizes)
                if r.k_protein and no_isolated and r.ce >= 1.0 - 1e-9:
                    if not r.k_network:
                        violations += 1
        assert violations == 0


def test_criterion_05_score_monotonicity():
    # CS monotonicity is asserted on additions between already-linked
    # members: an intra edge that recruits isolated members enlarges the
    # CS denominator and provably can lower CS (see decisions ledger).
    with _criterion(5, "score monotonicity (1000+ edge-addition trials)", 60.0):
        rng = random.Random(0x5C0)
        intra_checked = external_checked = cs_checked = 0
        while intra_checked < 1000 or external_checked < 1000:
            n = rng.randint(4, 16)
            nodes = [f"n{i}" for i in range(n)]
            edges = random_graph(rng, nodes, rng.uniform(0.1, 0.5))
            g = Network.from_edges(edges, nodes=nodes)
            members = frozenset(rng.sample(nodes, rng.randint(2, min(9, n))))
            b = Complex("c", members)
            base_edges = list(g.edges())
            w = rng.uniform(0.1, 1.0)

            u, v = rng.sample(sorted(members), 2)
            if not g.has_edge(u, v):
                g2 = Network.from_edges(base_edges + [(u, v, w)], nodes=nodes)
                assert edge_score(g2, b) >= edge_score(g, b) - 1e-12
                intra_checked += 1
                linked = set().union(
                    *(c for c in g.subgraph_components(members) if len(c) >= 2)
                ) if any(len(c) >= 2 for c in g.subgraph_components(members)) else set()
                if u in linked and v in linked:
                    assert component_score(g2, b) >= component_score(g, b) - 1e-12
                    cs_checked += 1

            outside = sorted(set(nodes) - members)
            if outside:
                m = rng.choice(sorted(members))
                x = rng.choice(outside)
                if not g.has_edge(m, x):
                    g3 = Network.from_edges(base_edges + [(m, x, w)], nodes=nodes)
                    assert edge_score(g3, b) <= edge_score(g, b) + 1e-12
                    external_checked += 1
        assert cs_checked >= 300  # the linked-members regime is well covered


def test_criterion_06_oracle_equivalence():
    with _criterion(6, "oracle equivalence (components/CS/evaluate, 200+ instances)", 60.0):
        rng = random.Random(0x0AC)
        instances = 0
        for _ in range(210):
            n = rng.randint(2, 12)
            nodes = [f"n{i:02d}" for i in range(n)]
            edges = random_graph(rng, nodes, rng.uniform(0.0, 0.6))
            g = Network.from_edges(edges, nodes=nodes)
            pairs = [(u, v) for u, v, _ in edges]

            within = set(rng.sample(nodes, rng.randint(1, n)))
            assert g.subgraph_components(within) == components_by_matrix_squaring(
                nodes, pairs, within
            )
            assert connected_components(g, set(nodes)) == components_by_matrix_squaring(
                nodes, pairs, set(nodes)
            )

            members = rng.sample(nodes, rng.randint(1, n))
            got = component_score(g, Complex("c", frozenset(members)))
            want = component_score_oracle(pairs, nodes, members)
            assert got == pytest.approx(want)

            bench = [
                (f"b{i}", set(rng.sample(nodes, rng.randint(1, n))))
                for i in range(rng.randint(1, 4))
            ]
            preds = [
                (f"c{i}", set(rng.sample(nodes, rng.randint(1, n))))
                for i in range(rng.randint(1, 4))
            ]
            k = rng.randint(1, 4)
            j_min = rng.choice([0.3, 0.5, 0.75])
            rep = evaluate(
                cset(*bench), cset(*preds), g, MatchConfig(j_min=j_min, k=k)
            )
            matched, derivable, derived, opairs = evaluate_oracle(
                bench, preds, nodes, k, j_min
            )
            assert rep.matched_count == matched
            assert rep.derivable_count == derivable
            assert rep.derived_count == derived
            assert {(p.benchmark_id, p.prediction_id) for p in rep.pair_matches} == {
                (bi, ci) for bi, ci, _ in opairs
            }
            instances += 1
        assert instances >= 200


def _sparc_corpus():
    """50 clusters: 25 dense, 20 planted-sparse with functional bridges
    (rescuable within 3 additions), 5 planted-unrescuable."""
    gp_edges = []
    gf_edges = []
    gp_nodes = []
    clusters = []
    planted = []

    def split_cluster(tag, junk_leaves):
        a = [f"{tag}a{i}" for i in range(4)]
        b = [f"{tag}b{i}" for i in range(4)]
        gp_edges.extend(clique_edges(a) + clique_edges(b))
        leaves = [f"{tag}x{i}" for i in range(4)]
        gp_edges.extend(
            [(a[0], leaves[0], 1.0), (a[1], leaves[1], 1.0),
             (b[0], leaves[2], 1.0), (b[1], leaves[3], 1.0)]
        )
        if junk_leaves:
            for li, leaf in enumerate(leaves):
                gp_edges.extend((leaf, f"{tag}junk{li}_{j}", 1.0) for j in range(6))
        return a, b

    for t in range(20):
        tag = f"s{t:02d}"
        a, b = split_cluster(tag, junk_leaves=False)
        clusters.append((f"sparse{t:02d}", a + b))
        planted.append(f"sparse{t:02d}")
        if t % 2 == 0:  # bridge protein reachable in one addition
            x = f"{tag}bridge"
            gf_edges.extend(
                [(x, a[2], 1.0), (x, a[3], 1.0), (x, b[2], 1.0), (x, b[3], 1.0)]
            )
        else:  # direct functional links reconnect the halves
            gf_edges.extend([(a[2], b[2], 1.0), (a[3], b[3], 1.0)])

    for t in range(25):
        tag = f"d{t:02d}"
        members = [f"{tag}m{i}" for i in range(5)]
        gp_edges.extend(clique_edges(members))
        clusters.append((f"dense{t:02d}", members))

    for t in range(5):
        tag = f"r{t:02d}"
        a, b = split_cluster(tag, junk_leaves=True)
        clusters.append((f"stuck{t:02d}", a + b))

    g_p = Network.from_edges(gp_edges, nodes=gp_nodes)
    g_f = Network.from_edges(gf_edges)
    return cset(*clusters), g_p, g_f, planted


def test_criterion_07_sparc_contract():
    with _criterion(7, "sparse-rescue contract (50-cluster corpus)", 30.0):
        clusters, g_p, g_f, planted = _sparc_corpus()
        config = SparcConfig(delta=0.40)
        result = sparc(clusters, g_p, g_f, config)
        assert (
            len(result.accepted_step1) + len(result.rescued) + len(result.rejected)
            == len(clusters)
        )
        # planted sparse clusters really are sparse in the physical network
        for name in planted:
            assert ce_score(g_p, clusters.get(name)) < 0.40

        g_a = merge_networks(g_p, g_f)
        for r in result.rescued:
            assert r.ce_after >= config.delta
            assert ce_score(g_a, r.members) == pytest.approx(r.ce_after)
            trail = replay_growth(clusters.get(r.cluster_id), r.added_proteins, g_a)
            assert all(b > a for a, b in zip(trail, trail[1:]))
            assert trail[-1] == pytest.approx(r.ce_after)

        rescued_ids = {r.cluster_id for r in result.rescued}
        rate = len(rescued_ids & set(planted)) / len(planted)
        assert rate >= 0.90
        assert len(result.accepted_step1) == 25
        assert {r.cluster_id for r in result.rejected} == {
            f"stuck{t:02d}" for t in range(5)
        }


def test_criterion_08_mcl_fixture():
    with _criterion(8, "markov clustering fixture (two cliques + bridge)", 30.0):
        a = [f"a{i}" for i in range(4)]
        b = [f"b{i}" for i in range(4)]
        g = Network.from_edges(clique_edges(a) + clique_edges(b) + [("a3", "b0", 1.0)])
        config = MclConfig(inflation=2.5)
        # column-stochasticity at every iteration, to 1e-9
        flow = initial_flow(g, config)
        for _ in range(100):
            assert np.abs(flow.matrix.sum(axis=0) - 1.0).max() <= 1e-9
            nxt = flow_step(flow, config)
            done = np.abs(nxt.matrix - flow.matrix).max() < config.convergence_eps
            flow = nxt
            if done:
                break
        assert np.abs(flow.matrix.sum(axis=0) - 1.0).max() <= 1e-9
        clusters = mcl_cluster(g, config)
        assert {frozenset(c.members) for c in clusters} == {
            frozenset(a),
            frozenset(b),
        }
        single = mcl_cluster(Network.from_edges(clique_edges("ABCDE")), config)
        assert len(single) == 1
        assert single[0].members == set("ABCDE")


def test_criterion_09_consensus_rules():
    with _criterion(9, "consensus triplet rules (hand-computed fixtures)", 30.0):
        p = lambda n: {f"p{i}" for i in range(1, n + 1)}
        # identical triplet merges to itself
        out = consensus([cset(("a", p(8))), cset(("b", p(8))), cset(("c", p(8)))])
        assert len(out) == 1 and out[0].members == p(8)
        # a single qualifying pair is not enough
        out = consensus(
            [cset(("a", p(8))), cset(("b", p(8))), cset(("c", {"q1", "q2", "q3"}))]
        )
        assert len(out) == 0
        # hand-computed accept/reject pair
        a = cset(("a", p(8)))
        b = cset(("b", p(7) | {"q"}))
        rejected = consensus([a, b, cset(("c", p(6) | {"r", "s"}))])
        assert len(rejected) == 0
        accepted = consensus([a, b, cset(("c", p(7) | {"s"}))])
        assert len(accepted) == 1
        assert accepted[0].members == p(7)


def test_criterion_10_end_to_end_determinism(tmp_path):
    with _criterion(10, "end-to-end determinism (byte-identical reruns)", 60.0):
        out_dir = tmp_path / "bundle"
        config = load_run_config(TOY / "run.ini", {"run.output_dir": str(out_dir)})

        def digests():
            return {
                f.name: hashlib.sha256(f.read_bytes()).hexdigest()
                for f in sorted(out_dir.iterdir())
            }

        first_manifest = run_pipeline(config)
        first = digests()
        second_manifest = run_pipeline(config)
        second = digests()
        assert first == second
        assert first_manifest == second_manifest
        assert len(first) > 20  # the full report bundle, not a trivial dir
