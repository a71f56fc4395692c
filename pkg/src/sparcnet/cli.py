"""Command-line interface.

One subcommand per pipeline operation plus ``run`` for the full
declarative experiment and ``inspect`` for summarizing emitted reports.
Run ``sparcnet <subcommand> --help`` for the flags of each.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from ._version import __version__
from .benchmatch import MatchConfig, RECALL_DENOMINATORS, SCORE_FIELDS, correlate, evaluate
from .consensus import ConsensusConfig, consensus
from .derivability import (
    ce_profile,
    derivability_report,
    load_complexes,
    save_complexes,
)
from .errors import SparcnetError
from .mcl import MclConfig, mcl_cluster
from .netgraph import load_network, merge_networks, random_network, save_network, stats
from .pipeline import load_run_config, run_pipeline
from .reports import (
    inspect_report,
    read_derivability_report,
    read_eval_report,
    write_ce_profile,
    write_derivability_report,
    write_eval_report,
    write_network_stats,
    write_pair_matches,
    write_sparc_result,
)
from .sparc import SparcConfig, sparc


def _args_hash(ns: argparse.Namespace) -> str:
    payload = {k: str(v) for k, v in sorted(vars(ns).items()) if k != "func"}
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def _cmd_stats(args):
    g = load_network(args.network, args.default_weight)
    st = stats(g)
    print(f"proteins: {st.protein_count}")
    print(f"interactions: {st.interaction_count}")
    print(f"avg node degree: {st.avg_node_degree:.2f}")
    if args.out:
        write_network_stats([(args.label, st)], args.out, config_hash=_args_hash(args))
    return 0


def _cmd_merge(args):
    a = load_network(args.a, args.default_weight)
    b = load_network(args.b, args.default_weight)
    merged = merge_networks(a, b, conflict=args.policy)
    save_network(merged, args.out)
    st = stats(merged)
    print(
        f"merged: {st.protein_count} proteins, {st.interaction_count} interactions, "
        f"avg degree {st.avg_node_degree:.2f} -> {args.out}"
    )
    return 0


def _cmd_random_net(args):
    if args.nodes_from:
        nodes = load_network(args.nodes_from, 1.0).nodes
    else:
        width = len(str(max(args.num_nodes - 1, 1)))
        nodes = {f"p{i:0{width}d}" for i in range(args.num_nodes)}
    g = random_network(nodes, args.avg_degree, seed=args.seed)
    save_network(g, args.out, comment=f"seed: {args.seed}")
    st = stats(g)
    print(
        f"random network: {st.protein_count} proteins, {st.interaction_count} interactions "
        f"(seed {args.seed}) -> {args.out}"
    )
    return 0


def _cmd_derivability(args):
    g = load_network(args.network, args.default_weight)
    catalog = load_complexes(args.complexes)
    report = derivability_report(g, catalog, k=args.k, t_ce=args.t_ce, label=args.label)
    write_derivability_report(report, args.out, config_hash=_args_hash(args))
    ic = report.index_counts
    print(
        f"{len(report.records)} complexes: protein-derivable {ic.protein_derivable}, "
        f"network-derivable {ic.network_derivable}, ce-derivable {ic.ce_derivable} "
        f"-> {args.out}"
    )
    return 0


def _cmd_ce_profile(args):
    g = load_network(args.network, args.default_weight)
    catalog = load_complexes(args.complexes)
    thresholds = [float(t) for t in args.thresholds.split(",") if t.strip() != ""]
    rows = ce_profile(g, catalog, k=args.k, thresholds=thresholds)
    write_ce_profile(rows, args.out, label=args.label, k=args.k, config_hash=_args_hash(args))
    for t, c in rows:
        print(f"CE >= {t:4.2f}: {c}")
    return 0


def _cmd_mcl(args):
    g = load_network(args.network, args.default_weight)
    config = MclConfig(
        inflation=args.inflation,
        expansion=args.expansion,
        max_iterations=args.max_iterations,
        convergence_eps=args.convergence_eps,
        prune_threshold=args.prune_threshold,
        self_loop_weight=args.self_loop_weight,
    )
    clusters = mcl_cluster(g, config)
    save_complexes(clusters, args.out)
    print(f"{len(clusters)} clusters (inflation {args.inflation}) -> {args.out}")
    return 0


def _cmd_sparc(args):
    clusters = load_complexes(args.clusters)
    g_p = load_network(args.physical, args.default_weight)
    g_f = load_network(args.functional, args.default_weight)
    config = SparcConfig(
        delta=args.delta,
        max_growth=args.max_growth,
        min_output_size=args.min_output_size,
    )
    result = sparc(clusters, g_p, g_f, config)
    write_sparc_result(result, args.out_result, config_hash=_args_hash(args))
    predicted = result.predicted(include_rejected=args.include_rejected)
    save_complexes(predicted, args.out_predicted)
    print(
        f"accepted {len(result.accepted_step1)}, rescued {len(result.rescued)}, "
        f"rejected {len(result.rejected)}; predicted catalog ({len(predicted)}) "
        f"-> {args.out_predicted}"
    )
    return 0


def _cmd_evaluate(args):
    benchmarks = load_complexes(args.benchmarks)
    predictions = load_complexes(args.predictions)
    g = load_network(args.network, args.default_weight)
    config = MatchConfig(j_min=args.jmin, k=args.k)
    report = evaluate(
        benchmarks, predictions, g, config, recall_denominator=args.recall_denominator
    )
    write_eval_report(report, args.out_json, config_hash=_args_hash(args))
    write_pair_matches(report, args.out_pairs, config_hash=_args_hash(args))
    print(
        f"predicted {report.predicted_count}, matched {report.matched_count}; "
        f"derivable {report.derivable_count}, derived {report.derived_count}; "
        f"Pr {report.precision:.3f}, Rc {report.recall:.3f}"
    )
    return 0


def _cmd_correlate(args):
    report = read_derivability_report(args.derivability)
    ev, _ = read_eval_report(args.eval)
    r = correlate(report, ev, score=args.score)
    print(f"pearson({args.score}, best-jaccard) = {r:.4f}")
    return 0


def _cmd_consensus(args):
    if len(args.inputs) != 3:
        print("error: consensus requires exactly three --in catalogs", file=sys.stderr)
        return 2
    sets = [load_complexes(p) for p in args.inputs]
    config = ConsensusConfig(
        pair_overlap_min=args.pair_min, min_membership=args.min_membership
    )
    merged = consensus(sets, config)
    save_complexes(merged, args.out)
    print(f"{len(merged)} consensus complexes -> {args.out}")
    return 0


def _cmd_run(args):
    overrides = {}
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep:
            print(f"error: --set expects section.key=value, got {item!r}", file=sys.stderr)
            return 2
        overrides[key.strip()] = value.strip()
    if args.output_dir:
        overrides["run.output_dir"] = args.output_dir
    if args.seed is not None:
        overrides["run.seed"] = str(args.seed)
    config = load_run_config(args.config, overrides)
    manifest = run_pipeline(config)
    print(f"run complete: {len(manifest['files'])} files -> {config.output_dir}")
    return 0


def _cmd_inspect(args):
    print(inspect_report(args.path))
    return 0


def _add_network_arg(p, flag="--network"):
    p.add_argument(flag, required=True, help="edge-list file")
    p.add_argument(
        "--default-weight",
        type=float,
        default=1.0,
        help="weight for edges without a weight column (default 1.0)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparcnet",
        description="Complex derivability scoring, sparse-cluster rescue and evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="network summary statistics")
    _add_network_arg(p)
    p.add_argument("--label", default="network")
    p.add_argument("--out", help="optional stats TSV")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("merge", help="union of two networks")
    p.add_argument("a", help="first edge-list file")
    p.add_argument("b", help="second edge-list file")
    p.add_argument("--default-weight", type=float, default=1.0)
    p.add_argument("--policy", choices=("max", "mean"), default="max")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_merge)

    p = sub.add_parser("random-net", help="uniform random network at a target degree")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--nodes-from", help="take the node set from this edge-list file")
    src.add_argument("--num-nodes", type=int, help="generate this many synthetic nodes")
    p.add_argument("--avg-degree", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_random_net)

    p = sub.add_parser("derivability", help="score a complex catalog against a network")
    _add_network_arg(p)
    p.add_argument("--complexes", required=True, help="complex catalog file")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--t-ce", type=float, default=0.4)
    p.add_argument("--label", default="network")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_derivability)

    p = sub.add_parser("ce-profile", help="CE-derivable counts over a threshold grid")
    _add_network_arg(p)
    p.add_argument("--complexes", required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument(
        "--thresholds",
        default="0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0",
        help="comma-separated CE thresholds",
    )
    p.add_argument("--label", default="network")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ce_profile)

    p = sub.add_parser("mcl", help="Markov-flow clustering of a network")
    _add_network_arg(p)
    p.add_argument("--inflation", type=float, default=2.5)
    p.add_argument("--expansion", type=int, default=2)
    p.add_argument("--max-iterations", type=int, default=200)
    p.add_argument("--convergence-eps", type=float, default=1e-6)
    p.add_argument("--prune-threshold", type=float, default=1e-5)
    p.add_argument("--self-loop-weight", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_mcl)

    p = sub.add_parser("sparc", help="rescue sparse clusters with functional interactions")
    p.add_argument("--clusters", required=True, help="predicted-cluster catalog")
    p.add_argument("--physical", required=True, help="physical network edge list")
    p.add_argument("--functional", required=True, help="functional network edge list")
    p.add_argument("--default-weight", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.40, help="CE acceptance threshold")
    p.add_argument("--max-growth", type=int, default=20, help="0 means unlimited")
    p.add_argument("--min-output-size", type=int, default=4)
    p.add_argument(
        "--seedless",
        action="store_true",
        help="declare the run free of randomness (the algorithm is deterministic; "
        "this only marks the report headers)",
    )
    p.add_argument("--include-rejected", action="store_true")
    p.add_argument("--out-result", required=True, help="per-cluster outcome TSV")
    p.add_argument("--out-predicted", required=True, help="predicted-complex catalog")
    p.set_defaults(func=_cmd_sparc)

    p = sub.add_parser("evaluate", help="match predictions against benchmarks")
    p.add_argument("--benchmarks", required=True)
    p.add_argument("--predictions", required=True)
    _add_network_arg(p)
    p.add_argument("--jmin", type=float, default=0.50)
    p.add_argument("--k", type=int, default=4)
    p.add_argument(
        "--recall-denominator", choices=RECALL_DENOMINATORS, default="derivable"
    )
    p.add_argument("--out-json", required=True)
    p.add_argument("--out-pairs", required=True)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("correlate", help="derivability score vs. achieved accuracy")
    p.add_argument("--derivability", required=True, help="derivability report TSV")
    p.add_argument("--eval", required=True, help="evaluation report JSON")
    p.add_argument("--score", choices=SCORE_FIELDS, default="ce")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("consensus", help="three-way consensus of predicted catalogs")
    p.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        help="predicted catalog (give exactly three times)",
    )
    p.add_argument("--pair-min", type=float, default=0.70)
    p.add_argument("--min-membership", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_consensus)

    p = sub.add_parser("run", help="full pipeline from a declarative config")
    p.add_argument("--config", required=True, help="run-config INI file")
    p.add_argument("--output-dir", help="override [run] output_dir")
    p.add_argument("--seed", type=int, help="override [run] seed")
    p.add_argument(
        "--set",
        action="append",
        metavar="SECTION.KEY=VALUE",
        help="override any config key (repeatable)",
    )
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("inspect", help="summarize an emitted report")
    p.add_argument("path")
    p.set_defaults(func=_cmd_inspect)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SparcnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
