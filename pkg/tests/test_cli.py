"""End-to-end exercise of every CLI subcommand (in-process)."""

from pathlib import Path

from sparcnet.cli import main
from sparcnet import load_complexes, load_network

TOY = Path(__file__).resolve().parent.parent / "data" / "toy"


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_stats(capsys, tmp_path):
    out = tmp_path / "stats.tsv"
    assert run_cli("stats", "--network", TOY / "physical.tsv", "--out", out) == 0
    captured = capsys.readouterr().out
    assert "proteins: 16" in captured
    assert "interactions: 18" in captured
    assert out.exists()


def test_merge(tmp_path, capsys):
    out = tmp_path / "merged.tsv"
    assert (
        run_cli("merge", TOY / "physical.tsv", TOY / "functional.tsv", "--out", out) == 0
    )
    merged = load_network(out)
    assert merged.has_edge("c2", "c3")  # functional bridge present
    assert "merged:" in capsys.readouterr().out


def test_random_net(tmp_path, capsys):
    out = tmp_path / "rand.tsv"
    assert (
        run_cli(
            "random-net", "--num-nodes", 30, "--avg-degree", 4, "--seed", 11, "--out", out
        )
        == 0
    )
    g = load_network(out)
    assert g.edge_count == 60  # floor(30*4/2)
    assert "seed 11" in capsys.readouterr().out


def test_derivability_and_inspect(tmp_path, capsys):
    out = tmp_path / "deriv.tsv"
    assert (
        run_cli(
            "derivability",
            "--network", TOY / "physical.tsv",
            "--complexes", TOY / "benchmark.tsv",
            "--k", 4, "--t-ce", 0.4,
            "--out", out,
        )
        == 0
    )
    assert "protein-derivable 4" in capsys.readouterr().out
    assert run_cli("inspect", out) == 0
    assert "CE histogram" in capsys.readouterr().out


def test_ce_profile(tmp_path, capsys):
    out = tmp_path / "prof.tsv"
    assert (
        run_cli(
            "ce-profile",
            "--network", TOY / "physical.tsv",
            "--complexes", TOY / "benchmark.tsv",
            "--thresholds", "0.0,0.5,1.0",
            "--out", out,
        )
        == 0
    )
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3 and lines[0].startswith("CE >= 0.00")


def test_mcl(tmp_path, capsys):
    out = tmp_path / "clusters.tsv"
    assert run_cli("mcl", "--network", TOY / "physical.tsv", "--out", out) == 0
    clusters = load_complexes(out)
    members = {frozenset(c.members) for c in clusters}
    assert frozenset({"a1", "a2", "a3", "a4"}) in members


def test_sparc_evaluate_correlate(tmp_path, capsys):
    result = tmp_path / "sparc.tsv"
    predicted = tmp_path / "predicted.tsv"
    assert (
        run_cli(
            "sparc",
            "--clusters", TOY / "clusters.tsv",
            "--physical", TOY / "physical.tsv",
            "--functional", TOY / "functional.tsv",
            "--delta", 0.40, "--max-growth", 20, "--seedless",
            "--out-result", result,
            "--out-predicted", predicted,
        )
        == 0
    )
    assert "rescued 1" in capsys.readouterr().out

    merged = tmp_path / "augmented.tsv"
    run_cli("merge", TOY / "physical.tsv", TOY / "functional.tsv", "--out", merged)
    capsys.readouterr()

    ej = tmp_path / "eval.json"
    ep = tmp_path / "pairs.tsv"
    assert (
        run_cli(
            "evaluate",
            "--benchmarks", TOY / "benchmark.tsv",
            "--predictions", predicted,
            "--network", merged,
            "--jmin", 0.5, "--k", 4,
            "--out-json", ej, "--out-pairs", ep,
        )
        == 0
    )
    assert "Pr 1.000" in capsys.readouterr().out

    deriv = tmp_path / "deriv.tsv"
    run_cli(
        "derivability",
        "--network", merged,
        "--complexes", TOY / "benchmark.tsv",
        "--out", deriv,
    )
    capsys.readouterr()
    assert run_cli("correlate", "--derivability", deriv, "--eval", ej) == 0
    assert "pearson(ce" in capsys.readouterr().out


def test_consensus_cli(tmp_path, capsys):
    preds = []
    for i in (1, 2, 3):
        p = tmp_path / f"pred{i}.tsv"
        run_cli(
            "sparc",
            "--clusters", TOY / "clusters.tsv",
            "--physical", TOY / "physical.tsv",
            "--functional", TOY / f"scored_{i}.tsv",
            "--out-result", tmp_path / f"r{i}.tsv",
            "--out-predicted", p,
        )
        preds.append(p)
    capsys.readouterr()
    out = tmp_path / "consensus.tsv"
    args = ["consensus"]
    for p in preds:
        args += ["--in", p]
    args += ["--pair-min", 0.70, "--out", out]
    assert run_cli(*args) == 0
    merged = load_complexes(out)
    assert len(merged) == 3


def test_consensus_cli_wrong_arity(tmp_path, capsys):
    rc = run_cli(
        "consensus", "--in", TOY / "clusters.tsv", "--in", TOY / "clusters.tsv",
        "--out", tmp_path / "x.tsv",
    )
    assert rc == 2
    assert "exactly three" in capsys.readouterr().err


def test_run_and_inspect_manifest(tmp_path, capsys):
    out_dir = tmp_path / "bundle"
    assert (
        run_cli("run", "--config", TOY / "run.ini", "--output-dir", out_dir) == 0
    )
    assert "run complete" in capsys.readouterr().out
    assert run_cli("inspect", out_dir / "MANIFEST.json") == 0
    assert "status: complete" in capsys.readouterr().out
    assert run_cli("inspect", out_dir / "eval__main__benchmark.json") == 0
    assert "precision" in capsys.readouterr().out


def test_run_missing_functional_exits_nonzero(tmp_path, capsys):
    rc = run_cli(
        "run",
        "--config", TOY / "run.ini",
        "--output-dir", tmp_path / "bundle",
        "--set", "networks.functional=missing-file.tsv",
    )
    assert rc == 1
    err = capsys.readouterr().err
    assert "load-functional" in err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("A B notanumber\n")
    rc = run_cli("stats", "--network", bad)
    assert rc == 1
    assert "line 1" in capsys.readouterr().err


def test_inspect_truncated_json_mentions_offset(tmp_path, capsys):
    out_dir = tmp_path / "bundle"
    run_cli("run", "--config", TOY / "run.ini", "--output-dir", out_dir)
    capsys.readouterr()
    target = out_dir / "eval__main__benchmark.json"
    target.write_text(target.read_text()[:40])
    rc = run_cli("inspect", target)
    assert rc == 1
    assert "byte offset" in capsys.readouterr().err
