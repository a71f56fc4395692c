"""Report files: writers, loaders and the human-readable inspector.

Every emitted report starts with a header block recording the tool
version, a hash of the configuration that produced it and the seed (or
``-`` when no randomness was involved).  TSV reports carry the header as
``#`` comment lines including a compact JSON summary; JSON reports embed
the same fields at the top level.  All writers are byte-deterministic
for identical inputs.
"""

from __future__ import annotations

import json

from ._version import __version__
from .benchmatch import EvalReport, PairMatch
from .derivability import (
    DerivabilityRecord,
    DerivabilityReport,
    IndexCounts,
)
from .errors import ParseError
from .netgraph import NetworkStats
from .sparc import SparcResult

_FLOAT_FMT = "%.10g"


def _fmt(x: float) -> str:
    return _FLOAT_FMT % x


def _header(kind: str, config_hash: str, seed, summary: dict) -> str:
    seed_s = "-" if seed is None else str(seed)
    return (
        f"# sparcnet-report: {kind}\n"
        f"# version: {__version__}\n"
        f"# config-hash: {config_hash or '-'}\n"
        f"# seed: {seed_s}\n"
        f"# summary: {json.dumps(summary, sort_keys=True, separators=(', ', ': '))}\n"
    )


class _TsvReader:
    """Header-aware TSV reader that tracks byte offsets for error messages."""

    def __init__(self, path):
        self.path = path
        self.kind = None
        self.summary = {}
        self.rows: list[tuple[int, int, list[str]]] = []  # (line_no, offset, fields)
        offset = 0
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.rstrip("\n")
                stripped = line.strip()
                if stripped.startswith("#"):
                    body = stripped[1:].strip()
                    if body.startswith("sparcnet-report:"):
                        self.kind = body.split(":", 1)[1].strip()
                    elif body.startswith("summary:"):
                        payload = body.split(":", 1)[1].strip()
                        try:
                            self.summary = json.loads(payload)
                        except json.JSONDecodeError as exc:
                            raise ParseError(
                                f"bad summary JSON: {exc.msg}", path, lineno, offset
                            ) from None
                elif stripped:
                    self.rows.append((lineno, offset, line.split("\t")))
                offset += len(raw.encode("utf-8"))
        self.end_offset = offset
        if self.kind is None:
            raise ParseError("missing '# sparcnet-report:' header", path, offset=0)

    def expect(self, kind: str):
        if self.kind != kind:
            raise ParseError(f"expected a {kind} report, found {self.kind!r}", self.path)
        return self

    def data_rows(self, n_columns: int):
        """Rows after the column-header row, each with exactly n_columns."""
        if not self.rows:
            raise ParseError("no column header row", self.path, offset=self.end_offset)
        for lineno, offset, fields in self.rows[1:]:
            if len(fields) != n_columns:
                raise ParseError(
                    f"expected {n_columns} columns, found {len(fields)} (truncated file?)",
                    self.path,
                    lineno,
                    offset,
                )
            yield lineno, offset, fields


def _parse_float(value: str, path, lineno, offset) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"bad numeric field {value!r}", path, lineno, offset) from None


def _parse_int(value: str, path, lineno, offset) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"bad integer field {value!r}", path, lineno, offset) from None


# -- derivability ----------------------------------------------------------

_DERIV_COLS = (
    "complex_id",
    "present_count",
    "nonisolated_count",
    "component_sizes",
    "cs",
    "es",
    "ce",
    "density",
    "k_protein",
    "k_network",
)


def write_derivability_report(report: DerivabilityReport, path, config_hash="", seed=None):
    summary = {
        "network_label": report.network_label,
        "k": report.k,
        "t_ce": report.t_ce,
        "complexes": len(report.records),
        "index_counts": {
            "protein_derivable": report.index_counts.protein_derivable,
            "network_derivable": report.index_counts.network_derivable,
            "ce_derivable": report.index_counts.ce_derivable,
        },
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header("derivability", config_hash, seed, summary))
        fh.write("\t".join(_DERIV_COLS) + "\n")
        for r in report.records:
            sizes = ",".join(str(s) for s in r.component_sizes) or "-"
            fh.write(
                "\t".join(
                    (
                        r.complex_id,
                        str(r.present_count),
                        str(r.nonisolated_count),
                        sizes,
                        _fmt(r.cs),
                        _fmt(r.es),
                        _fmt(r.ce),
                        _fmt(r.density),
                        "1" if r.k_protein else "0",
                        "1" if r.k_network else "0",
                    )
                )
                + "\n"
            )


def read_derivability_report(path) -> DerivabilityReport:
    rd = _TsvReader(path).expect("derivability")
    records = []
    for lineno, offset, f in rd.data_rows(len(_DERIV_COLS)):
        sizes = () if f[3] == "-" else tuple(
            _parse_int(s, path, lineno, offset) for s in f[3].split(",")
        )
        records.append(
            DerivabilityRecord(
                complex_id=f[0],
                present_count=_parse_int(f[1], path, lineno, offset),
                nonisolated_count=_parse_int(f[2], path, lineno, offset),
                component_sizes=sizes,
                cs=_parse_float(f[4], path, lineno, offset),
                es=_parse_float(f[5], path, lineno, offset),
                ce=_parse_float(f[6], path, lineno, offset),
                density=_parse_float(f[7], path, lineno, offset),
                k_protein=f[8] == "1",
                k_network=f[9] == "1",
            )
        )
    s = rd.summary
    k = int(s.get("k", 1))
    t_ce = float(s.get("t_ce", 0.0))
    counts = IndexCounts(
        protein_derivable=sum(1 for r in records if r.k_protein),
        network_derivable=sum(1 for r in records if r.k_network),
        ce_derivable=sum(1 for r in records if r.k_protein and r.ce >= t_ce),
    )
    return DerivabilityReport(
        network_label=str(s.get("network_label", "?")),
        k=k,
        t_ce=t_ce,
        records=tuple(records),
        index_counts=counts,
        catalog=None,
    )


# -- CE profile --------------------------------------------------------------


def write_ce_profile(rows, path, label="network", k=4, config_hash="", seed=None):
    summary = {"network_label": label, "k": k, "points": len(rows)}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header("ce-profile", config_hash, seed, summary))
        fh.write("threshold\tcomplexes_at_or_above\n")
        for t, count in rows:
            fh.write(f"{_fmt(t)}\t{count}\n")


def read_ce_profile(path):
    rd = _TsvReader(path).expect("ce-profile")
    rows = [
        (_parse_float(f[0], path, ln, off), _parse_int(f[1], path, ln, off))
        for ln, off, f in rd.data_rows(2)
    ]
    return str(rd.summary.get("network_label", "?")), int(rd.summary.get("k", 1)), rows


# -- network stats -----------------------------------------------------------


def write_network_stats(rows: list[tuple[str, NetworkStats]], path, config_hash="", seed=None):
    summary = {"networks": len(rows)}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header("network-stats", config_hash, seed, summary))
        fh.write("network\tproteins\tinteractions\tavg_node_degree\n")
        for label, st in rows:
            fh.write(
                f"{label}\t{st.protein_count}\t{st.interaction_count}\t{_fmt(st.avg_node_degree)}\n"
            )


def read_network_stats(path) -> list[tuple[str, NetworkStats]]:
    rd = _TsvReader(path).expect("network-stats")
    return [
        (
            f[0],
            NetworkStats(
                _parse_int(f[1], path, ln, off),
                _parse_int(f[2], path, ln, off),
                _parse_float(f[3], path, ln, off),
            ),
        )
        for ln, off, f in rd.data_rows(4)
    ]


# -- SPARC result ------------------------------------------------------------


def write_sparc_result(result: SparcResult, path, config_hash="", seed=None):
    """One row per input cluster: status, CE before (physical network),
    CE after (augmented network) and the growth trail.  Added proteins
    absent from the physical network carry a ``*`` suffix."""
    summary = {
        "accepted": len(result.accepted_step1),
        "rescued": len(result.rescued),
        "rejected": len(result.rejected),
        "delta": result.config.delta,
        "max_growth": result.config.max_growth,
        "min_output_size": result.config.min_output_size,
    }
    accepted_ids = {c.id for c in result.accepted_step1}
    rescued = {r.cluster_id: r for r in result.rescued}
    rejected = {r.cluster_id: r for r in result.rejected}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header("sparc-result", config_hash, seed, summary))
        fh.write("cluster_id\tstatus\tce_before\tce_after\tadded_count\tadded_proteins\n")
        for cx in result.clusters:
            if cx.id in accepted_ids:
                fh.write(f"{cx.id}\taccepted\t-\t-\t0\t-\n")
            elif cx.id in rescued:
                r = rescued[cx.id]
                added = (
                    ",".join(
                        a.protein + ("" if a.in_physical else "*") for a in r.added_proteins
                    )
                    or "-"
                )
                fh.write(
                    f"{cx.id}\trescued\t{_fmt(r.ce_before)}\t{_fmt(r.ce_after)}"
                    f"\t{len(r.added_proteins)}\t{added}\n"
                )
            else:
                r = rejected[cx.id]
                fh.write(f"{cx.id}\trejected\t-\t{_fmt(r.best_ce)}\t0\t-\n")


def read_sparc_result(path) -> dict:
    """Summary counts plus per-cluster status rows (for inspection)."""
    rd = _TsvReader(path).expect("sparc-result")
    rows = [(f[0], f[1]) for _, _, f in rd.data_rows(6)]
    return {"summary": rd.summary, "clusters": rows}


# -- evaluation (JSON) -------------------------------------------------------


def write_eval_report(report: EvalReport, path, config_hash="", seed=None, correlations=None):
    doc = {
        "sparcnet_report": "evaluation",
        "version": __version__,
        "config_hash": config_hash or "-",
        "seed": "-" if seed is None else seed,
        "predicted_count": report.predicted_count,
        "matched_count": report.matched_count,
        "derivable_count": report.derivable_count,
        "derived_count": report.derived_count,
        "precision": report.precision,
        "recall": report.recall,
        "j_min": report.j_min,
        "k": report.k,
        "recall_denominator": report.recall_denominator,
        "correlations": correlations,
        "pair_matches": [[p.benchmark_id, p.prediction_id, p.jaccard] for p in report.pair_matches],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", path, offset=exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object", path, offset=0)
    return doc


def read_eval_report(path) -> tuple[EvalReport, dict | None]:
    doc = _load_json(path)
    if doc.get("sparcnet_report") != "evaluation":
        raise ParseError("not an evaluation report", path, offset=0)
    try:
        report = EvalReport(
            predicted_count=int(doc["predicted_count"]),
            matched_count=int(doc["matched_count"]),
            derivable_count=int(doc["derivable_count"]),
            derived_count=int(doc["derived_count"]),
            precision=float(doc["precision"]),
            recall=float(doc["recall"]),
            pair_matches=tuple(PairMatch(b, c, float(j)) for b, c, j in doc["pair_matches"]),
            j_min=float(doc["j_min"]),
            k=int(doc["k"]),
            recall_denominator=str(doc["recall_denominator"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed evaluation report: {exc!r}", path, offset=0) from None
    return report, doc.get("correlations")


def write_pair_matches(report: EvalReport, path, config_hash="", seed=None):
    summary = {"pairs": len(report.pair_matches), "j_min": report.j_min}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_header("pair-matches", config_hash, seed, summary))
        fh.write("benchmark_id\tprediction_id\tjaccard\n")
        for p in report.pair_matches:
            fh.write(f"{p.benchmark_id}\t{p.prediction_id}\t{_fmt(p.jaccard)}\n")


def read_pair_matches(path) -> list[PairMatch]:
    rd = _TsvReader(path).expect("pair-matches")
    return [
        PairMatch(f[0], f[1], _parse_float(f[2], path, ln, off))
        for ln, off, f in rd.data_rows(3)
    ]


# -- inspection ---------------------------------------------------------------


def _histogram(values, lo=0.0, hi=1.0, bins=10) -> list[str]:
    counts = [0] * bins
    width = (hi - lo) / bins
    for v in values:
        b = min(int((v - lo) / width), bins - 1)
        counts[b] += 1
    lines = []
    for i, c in enumerate(counts):
        left = lo + i * width
        right = left + width
        edge = "]" if i == bins - 1 else ")"
        lines.append(f"  [{left:.1f}, {right:.1f}{edge} {c:4d} {'#' * min(c, 60)}")
    return lines


def inspect_report(path) -> str:
    """Human-readable summary of any report emitted by this tool."""
    with open(path, "rb") as fh:
        head = fh.read(1)
    if head == b"{":
        doc = _load_json(path)
        if doc.get("sparcnet_report") == "evaluation":
            report, correlations = read_eval_report(path)
            lines = [
                f"evaluation report ({path})",
                f"  predicted: {report.predicted_count}   matched: {report.matched_count}",
                f"  derivable: {report.derivable_count}   derived: {report.derived_count}",
                f"  precision: {report.precision:.3f}   recall: {report.recall:.3f}"
                f"   (J_min={report.j_min}, k={report.k}, denominator={report.recall_denominator})",
            ]
            if correlations:
                pretty = ", ".join(
                    f"{name}={'-' if r is None else format(r, '.3f')}"
                    for name, r in sorted(correlations.items())
                )
                lines.append(f"  score/accuracy correlations: {pretty}")
            return "\n".join(lines)
        if "sparcnet_manifest" in doc:
            lines = [f"run manifest ({path})", f"  status: {doc.get('status', '?')}"]
            if doc.get("failed_stage"):
                lines.append(f"  failed stage: {doc['failed_stage']}")
            for name in doc.get("files", {}):
                lines.append(f"  file: {name}")
            return "\n".join(lines)
        raise ParseError("unrecognized JSON report", path, offset=0)

    rd = _TsvReader(path)
    if rd.kind == "derivability":
        report = read_derivability_report(path)
        ic = report.index_counts
        lines = [
            f"derivability report ({path})",
            f"  network: {report.network_label}   k={report.k}   t_ce={report.t_ce}",
            f"  complexes scored: {len(report.records)}",
            f"  protein-derivable: {ic.protein_derivable}"
            f"   network-derivable: {ic.network_derivable}"
            f"   ce-derivable: {ic.ce_derivable}",
            "  CE histogram over protein-derivable complexes:",
        ]
        lines += _histogram([r.ce for r in report.records if r.k_protein])
        return "\n".join(lines)
    if rd.kind == "ce-profile":
        label, k, rows = read_ce_profile(path)
        lines = [f"CE profile ({path})", f"  network: {label}   k={k}"]
        lines += [f"  CE >= {t:4.2f}: {c}" for t, c in rows]
        return "\n".join(lines)
    if rd.kind == "network-stats":
        rows = read_network_stats(path)
        lines = [f"network stats ({path})"]
        for label, st in rows:
            lines.append(
                f"  {label}: {st.protein_count} proteins, {st.interaction_count} interactions,"
                f" avg degree {st.avg_node_degree:.2f}"
            )
        return "\n".join(lines)
    if rd.kind == "sparc-result":
        info = read_sparc_result(path)
        s = info["summary"]
        return "\n".join(
            [
                f"rescue result ({path})",
                f"  delta={s.get('delta')}   max_growth={s.get('max_growth')}",
                f"  accepted: {s.get('accepted')}   rescued: {s.get('rescued')}"
                f"   rejected: {s.get('rejected')}",
            ]
        )
    if rd.kind == "pair-matches":
        pairs = read_pair_matches(path)
        return f"pair matches ({path})\n  qualifying pairs: {len(pairs)}"
    raise ParseError(f"unrecognized report kind {rd.kind!r}", path)
