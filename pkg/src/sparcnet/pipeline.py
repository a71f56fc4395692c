"""End-to-end experiment runner.

A single declarative INI file describes the full run: networks,
benchmark catalogs, the cluster source, rescue/evaluation parameters and
the output directory.  ``run_pipeline`` executes the stages in order
(stats, derivability + CE profiles, clustering, rescue, evaluation,
optional three-way consensus), writing every report into the output
directory plus a MANIFEST.json recording file hashes and completion
status.  Identical config and seed produce byte-identical bundles.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from ._version import __version__
from .benchmatch import MatchConfig, correlate, evaluate
from .consensus import ConsensusConfig, consensus
from .derivability import (
    ComplexSet,
    ce_profile,
    derivability_report,
    load_complexes,
    save_complexes,
)
from .errors import (
    ConfigError,
    ParseError,
    PipelineError,
    SparcnetError,
    UndefinedCorrelationError,
)
from .mcl import MclConfig, mcl_cluster
from .netgraph import load_network, merge_networks, stats
from .reports import (
    write_ce_profile,
    write_derivability_report,
    write_eval_report,
    write_network_stats,
    write_pair_matches,
    write_sparc_result,
)
from .sparc import SparcConfig, sparc

log = logging.getLogger(__name__)

CLUSTER_SOURCES = ("builtin-mcl", "file")
PROFILE_THRESHOLDS = tuple(round(0.1 * i, 1) for i in range(11))


@dataclass
class PipelineConfig:
    physical_path: Path
    output_dir: Path
    benchmark_paths: tuple[Path, ...]
    functional_path: Path | None = None
    scored_paths: tuple[Path, ...] = ()
    cluster_source: str = "builtin-mcl"
    cluster_path: Path | None = None
    default_weight: float = 1.0
    mcl: MclConfig = field(default_factory=MclConfig)
    sparc: SparcConfig = field(default_factory=SparcConfig)
    match: MatchConfig = field(default_factory=MatchConfig)
    consensus: ConsensusConfig = field(default_factory=ConsensusConfig)
    recall_denominator: str = "derivable"
    seed: int = 0

    def __post_init__(self):
        if self.cluster_source not in CLUSTER_SOURCES:
            raise ConfigError(
                f"cluster source must be one of {CLUSTER_SOURCES}, got {self.cluster_source!r}"
            )
        if self.cluster_source == "file" and self.cluster_path is None:
            raise ConfigError("cluster source 'file' requires clusters.path")
        if not self.benchmark_paths:
            raise ConfigError("at least one benchmark catalog is required")
        if self.scored_paths and len(self.scored_paths) != 3:
            raise ConfigError(
                f"scored networks must number exactly 3 (for consensus), got {len(self.scored_paths)}"
            )


_CONFIG_SCHEMA = {
    "networks": ("physical", "functional", "scored", "default_weight"),
    "benchmarks": ("paths",),
    "clusters": ("source", "path"),
    "mcl": (
        "inflation",
        "expansion",
        "max_iterations",
        "convergence_eps",
        "prune_threshold",
        "self_loop_weight",
    ),
    "sparc": ("delta", "max_growth", "min_output_size"),
    "match": ("jmin", "k", "recall_denominator"),
    "consensus": ("pair_overlap_min", "min_membership"),
    "run": ("seed", "output_dir"),
}


def load_run_config(path, overrides: dict[str, str] | None = None) -> PipelineConfig:
    """Parse a run-config INI file; ``overrides`` maps dotted ``section.key``
    names to replacement values (CLI flags take precedence over the file).

    Relative paths in the file resolve against the config file's
    directory; relative override paths resolve against the working
    directory.
    """
    path = Path(path)
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except configparser.Error as exc:
        raise ParseError(f"bad config: {exc}", path) from None

    for section in cp.sections():
        if section not in _CONFIG_SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key in cp[section]:
            if key not in _CONFIG_SCHEMA[section]:
                raise ConfigError(f"unknown config key {key!r} in [{section}]")

    overridden: set[str] = set()
    for dotted, value in (overrides or {}).items():
        section, _, key = dotted.partition(".")
        if section not in _CONFIG_SCHEMA or key not in _CONFIG_SCHEMA[section]:
            raise ConfigError(f"unknown config override {dotted!r}")
        if not cp.has_section(section):
            cp.add_section(section)
        cp[section][key] = value
        overridden.add(dotted)

    base = path.resolve().parent

    def respath(section, key, value) -> Path:
        root = Path.cwd() if f"{section}.{key}" in overridden else base
        return (root / value).resolve() if not Path(value).is_absolute() else Path(value)

    def get(section, key, default=None):
        if cp.has_section(section) and key in cp[section]:
            return cp[section][key].strip()
        return default

    def getfloat(section, key, default):
        raw = get(section, key)
        if raw is None:
            return default
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"[{section}] {key} must be a number, got {raw!r}") from None

    def getint(section, key, default):
        raw = get(section, key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"[{section}] {key} must be an integer, got {raw!r}") from None

    physical = get("networks", "physical")
    if not physical:
        raise ConfigError("config must set [networks] physical")
    functional = get("networks", "functional")
    scored_raw = get("networks", "scored", "")
    scored = tuple(
        respath("networks", "scored", tok)
        for tok in re.split(r"[,\s]+", scored_raw)
        if tok
    )
    bench_raw = get("benchmarks", "paths", "")
    benchmarks = tuple(
        respath("benchmarks", "paths", tok)
        for tok in re.split(r"[,\s]+", bench_raw)
        if tok
    )
    output_dir = get("run", "output_dir")
    if not output_dir:
        raise ConfigError("config must set [run] output_dir")

    cluster_path = get("clusters", "path")
    try:
        return PipelineConfig(
            physical_path=respath("networks", "physical", physical),
            functional_path=(
                respath("networks", "functional", functional) if functional else None
            ),
            scored_paths=scored,
            benchmark_paths=benchmarks,
            cluster_source=get("clusters", "source", "builtin-mcl"),
            cluster_path=respath("clusters", "path", cluster_path) if cluster_path else None,
            default_weight=getfloat("networks", "default_weight", 1.0),
            mcl=MclConfig(
                inflation=getfloat("mcl", "inflation", 2.5),
                expansion=getint("mcl", "expansion", 2),
                max_iterations=getint("mcl", "max_iterations", 200),
                convergence_eps=getfloat("mcl", "convergence_eps", 1e-6),
                prune_threshold=getfloat("mcl", "prune_threshold", 1e-5),
                self_loop_weight=getfloat("mcl", "self_loop_weight", 1.0),
            ),
            sparc=SparcConfig(
                delta=getfloat("sparc", "delta", 0.40),
                max_growth=getint("sparc", "max_growth", 20),
                min_output_size=getint("sparc", "min_output_size", 4),
            ),
            match=MatchConfig(
                j_min=getfloat("match", "jmin", 0.50),
                k=getint("match", "k", 4),
            ),
            consensus=ConsensusConfig(
                pair_overlap_min=getfloat("consensus", "pair_overlap_min", 0.70),
                min_membership=getint("consensus", "min_membership", 2),
            ),
            recall_denominator=get("match", "recall_denominator", "derivable"),
            seed=getint("run", "seed", 0),
            output_dir=respath("run", "output_dir", output_dir),
        )
    except SparcnetError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def resolved_config_text(config: PipelineConfig) -> str:
    """Canonical INI rendering of a config (the config-hash input)."""
    lines = ["[networks]", f"physical = {config.physical_path}"]
    if config.functional_path:
        lines.append(f"functional = {config.functional_path}")
    if config.scored_paths:
        lines.append("scored = " + ", ".join(str(p) for p in config.scored_paths))
    lines.append(f"default_weight = {config.default_weight!r}")
    lines += ["", "[benchmarks]", "paths = " + ", ".join(str(p) for p in config.benchmark_paths)]
    lines += ["", "[clusters]", f"source = {config.cluster_source}"]
    if config.cluster_path:
        lines.append(f"path = {config.cluster_path}")
    m = config.mcl
    lines += [
        "",
        "[mcl]",
        f"inflation = {m.inflation!r}",
        f"expansion = {m.expansion}",
        f"max_iterations = {m.max_iterations}",
        f"convergence_eps = {m.convergence_eps!r}",
        f"prune_threshold = {m.prune_threshold!r}",
        f"self_loop_weight = {m.self_loop_weight!r}",
    ]
    s = config.sparc
    lines += [
        "",
        "[sparc]",
        f"delta = {s.delta!r}",
        f"max_growth = {s.max_growth}",
        f"min_output_size = {s.min_output_size}",
    ]
    lines += [
        "",
        "[match]",
        f"jmin = {config.match.j_min!r}",
        f"k = {config.match.k}",
        f"recall_denominator = {config.recall_denominator}",
    ]
    lines += [
        "",
        "[consensus]",
        f"pair_overlap_min = {config.consensus.pair_overlap_min!r}",
        f"min_membership = {config.consensus.min_membership}",
    ]
    lines += ["", "[run]", f"seed = {config.seed}", f"output_dir = {config.output_dir}", ""]
    return "\n".join(lines)


def _slug(path: Path) -> str:
    return re.sub(r"[^A-Za-z0-9_-]+", "_", Path(path).stem) or "catalog"


class _Run:
    """Tracks stage progress and emitted files for the manifest."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.out = config.output_dir
        self.hash = hashlib.sha256(resolved_config_text(config).encode()).hexdigest()[:16]
        self.stages: list[str] = []
        self.files: list[str] = []

    def emit(self, name: str, writer, *args, **kwargs):
        target = self.out / name
        writer(*args, target, **kwargs)
        self.files.append(name)
        return target

    def manifest(self, status: str, failed_stage: str | None) -> dict:
        files = {}
        for name in sorted(self.files):
            digest = hashlib.sha256((self.out / name).read_bytes()).hexdigest()
            files[name] = digest
        return {
            "sparcnet_manifest": 1,
            "version": __version__,
            "config_hash": self.hash,
            "seed": self.config.seed,
            "status": status,
            "failed_stage": failed_stage,
            "stages": list(self.stages),
            "files": files,
        }

    def write_manifest(self, status: str, failed_stage: str | None = None):
        doc = self.manifest(status, failed_stage)
        with open(self.out / "MANIFEST.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")


def run_pipeline(config: PipelineConfig) -> dict:
    """Execute the configured experiment; returns the manifest document.

    Any stage failure is re-raised as :class:`PipelineError` naming the
    stage, after writing a MANIFEST that records the partial outputs.
    """
    run = _Run(config)
    run.out.mkdir(parents=True, exist_ok=True)
    stage = "resolve-config"

    def enter(name: str) -> str:
        nonlocal stage
        stage = name
        log.info("stage %s", name)
        return name

    try:
        enter("resolve-config")
        text = resolved_config_text(config)
        (run.out / "resolved_config.ini").write_text(text, encoding="utf-8")
        run.files.append("resolved_config.ini")
        run.stages.append(stage)

        enter("load-physical")
        g_p = load_network(config.physical_path, config.default_weight)
        run.stages.append(stage)

        g_f = None
        if config.functional_path is not None:
            enter("load-functional")
            g_f = load_network(config.functional_path, config.default_weight)
            run.stages.append(stage)

        scored_nets = []
        for i, spath in enumerate(config.scored_paths, 1):
            enter(f"load-scored-{i}")
            scored_nets.append(load_network(spath, config.default_weight))
            run.stages.append(stage)

        enter("load-benchmarks")
        catalogs = [(_slug(p), load_complexes(p)) for p in config.benchmark_paths]
        if len({name for name, _ in catalogs}) != len(catalogs):
            raise ConfigError("benchmark catalog file names must be distinct")
        run.stages.append(stage)

        g_a = None
        enter("network-stats")
        rows = [("physical", stats(g_p))]
        if g_f is not None:
            g_a = merge_networks(g_p, g_f)
            rows.append(("functional", stats(g_f)))
            rows.append(("augmented", stats(g_a)))
        for i, s in enumerate(scored_nets, 1):
            rows.append((f"scored-{i}", stats(s)))
        run.emit("network_stats.tsv", write_network_stats, rows, config_hash=run.hash, seed=config.seed)
        run.stages.append(stage)

        nets = [("physical", g_p)] + ([("augmented", g_a)] if g_a is not None else [])
        deriv_reports = {}
        for name, catalog in catalogs:
            for netlabel, net in nets:
                enter(f"derivability-{name}-{netlabel}")
                report = derivability_report(
                    net, catalog, k=config.match.k, t_ce=config.sparc.delta, label=netlabel
                )
                deriv_reports[(name, netlabel)] = report
                run.emit(
                    f"derivability__{name}__{netlabel}.tsv",
                    write_derivability_report,
                    report,
                    config_hash=run.hash,
                    seed=config.seed,
                )
                run.stages.append(stage)

                enter(f"ce-profile-{name}-{netlabel}")
                rows = ce_profile(net, catalog, k=config.match.k, thresholds=PROFILE_THRESHOLDS)
                run.emit(
                    f"ce_profile__{name}__{netlabel}.tsv",
                    write_ce_profile,
                    rows,
                    label=netlabel,
                    k=config.match.k,
                    config_hash=run.hash,
                    seed=config.seed,
                )
                run.stages.append(stage)

        if config.cluster_source == "file":
            enter("load-clusters")
            clusters = load_complexes(config.cluster_path)
        else:
            enter("mcl-clustering")
            clusters = mcl_cluster(g_p, config.mcl)
        run.emit("clusters.tsv", save_complexes, clusters)
        run.stages.append(stage)

        def evaluate_and_emit(tag: str, predictions: ComplexSet, net, netlabel: str):
            for name, catalog in catalogs:
                enter(f"evaluate-{tag}-{name}")
                ev = evaluate(
                    catalog,
                    predictions,
                    net,
                    config.match,
                    recall_denominator=config.recall_denominator,
                )
                report = deriv_reports.get((name, netlabel))
                if report is None:
                    report = derivability_report(
                        net, catalog, k=config.match.k, t_ce=config.sparc.delta, label=netlabel
                    )
                correlations = {}
                for score in ("ce", "cs", "es", "density"):
                    try:
                        correlations[score] = correlate(report, ev, score=score)
                    except UndefinedCorrelationError:
                        correlations[score] = None
                run.emit(
                    f"eval__{tag}__{name}.json",
                    write_eval_report,
                    ev,
                    config_hash=run.hash,
                    seed=config.seed,
                    correlations=correlations,
                )
                run.emit(
                    f"pairs__{tag}__{name}.tsv",
                    write_pair_matches,
                    ev,
                    config_hash=run.hash,
                    seed=config.seed,
                )
                run.stages.append(stage)

        if g_f is not None:
            enter("sparc")
            result = sparc(clusters, g_p, g_f, config.sparc)
            predicted = result.predicted()
            run.emit("sparc_result.tsv", write_sparc_result, result, config_hash=run.hash, seed=config.seed)
            run.emit("predicted.tsv", save_complexes, predicted)
            run.stages.append(stage)
            evaluate_and_emit("main", predicted, g_a, "augmented")
        else:
            enter("predictions-passthrough")
            predicted = ComplexSet(
                c for c in clusters if c.size >= config.sparc.min_output_size
            )
            run.emit("predicted.tsv", save_complexes, predicted)
            run.stages.append(stage)
            evaluate_and_emit("main", predicted, g_p, "physical")

        if scored_nets:
            scored_predictions = []
            for i, g_s in enumerate(scored_nets, 1):
                enter(f"sparc-scored-{i}")
                g_as = merge_networks(g_p, g_s)
                res_s = sparc(clusters, g_p, g_s, config.sparc)
                pred_s = res_s.predicted()
                scored_predictions.append(pred_s)
                run.emit(
                    f"sparc_result__scored_{i}.tsv",
                    write_sparc_result,
                    res_s,
                    config_hash=run.hash,
                    seed=config.seed,
                )
                run.emit(f"predicted__scored_{i}.tsv", save_complexes, pred_s)
                run.stages.append(stage)
                evaluate_and_emit(f"scored_{i}", pred_s, g_as, f"scored-{i}")

            enter("consensus")
            cons = consensus(scored_predictions, config.consensus)
            run.emit("consensus.tsv", save_complexes, cons)
            run.stages.append(stage)
            cons_net = g_a if g_a is not None else g_p
            cons_label = "augmented" if g_a is not None else "physical"
            evaluate_and_emit("consensus", cons, cons_net, cons_label)

        enter("manifest")
        run.stages.append(stage)
        run.write_manifest("complete")
        return run.manifest("complete", None)
    except SparcnetError as exc:
        run.write_manifest("incomplete", failed_stage=stage)
        raise PipelineError(stage, exc) from exc
    except OSError as exc:
        run.write_manifest("incomplete", failed_stage=stage)
        raise PipelineError(stage, exc) from exc
