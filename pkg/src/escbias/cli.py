"""Command-line interface: run an analysis, verify the oracle, calibrate.

A full run needs just the data directory, the year span and the window
size; everything else has reproducible defaults that are echoed into
``run.json`` so any output can be regenerated from that file alone.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .calibration import CalibrationConfig, run_calibration
from .dataset import load_dataset, save_dataset
from .detector import window_skips, write_window_report
from .errors import EscBiasError
from .kernel import implementation_name
from .network import (
    AggregationMode,
    AggregationSpec,
    emit_dot,
    network_from_edge_sets,
    window_edge_sets,
    write_edge_csv,
)
from .nullmodel import AnalysisConfig, DEFAULT_SAMPLE_SIZE, DEFAULT_SEED, run_oracle_grid
from .synthdata import DEFAULT_DATA_SEED, reference_dataset


def _fail(exc: EscBiasError) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Detect one-way and collusive voting biases in contest score tables."""


@main.command()
@click.option("--data", "data_dir", envvar="ESCBIAS_DATA", required=True,
              help="Directory with <year>.csv tables and regions.csv [env: ESCBIAS_DATA].")
@click.option("--start", required=True, type=int, help="First year of the span.")
@click.option("--end", required=True, type=int, help="End of the span (exclusive window bound).")
@click.option("--window", "window_size", required=True, type=int, help="Years per stepping window.")
@click.option("--mode", type=click.Choice([m.value for m in AggregationMode]),
              default=AggregationMode.COLLUSION_ONLY.value, show_default=True)
@click.option("--samples", "sample_size", type=int, default=DEFAULT_SAMPLE_SIZE, show_default=True,
              help="Monte Carlo draws per pair and window.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--adaptive", is_flag=True, help="Grow the sample until the threshold settles.")
@click.option("--bonferroni", is_flag=True, help="Divide alpha by the pair count per window.")
@click.option("--workers", type=int, default=None,
              help="Parallel pair tasks per window [default: available parallelism].")
@click.option("--out", "out_dir", required=True, help="Output directory (created if missing).")
def run(data_dir, start, end, window_size, mode, sample_size, seed, alpha,
        adaptive, bonferroni, workers, out_dir) -> None:
    """Aggregate bias networks over stepping windows and write DOT/CSV output."""
    if workers is None:
        workers = os.cpu_count() or 1
    try:
        dataset = load_dataset(data_dir)
        spec = AggregationSpec(start, end, window_size, AggregationMode(mode))
        config = AnalysisConfig(
            sample_size=sample_size,
            seed=seed,
            alpha=alpha,
            adaptive=adaptive,
            bonferroni=bonferroni,
            workers=workers,
        )
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        edge_sets = []
        for window, edges in window_edge_sets(dataset, spec, config):
            edge_sets.append((window, edges))
            write_window_report(edges, out / f"window-{window.start_year}-{window.end_year}.csv")
        network = network_from_edge_sets(dataset, spec, edge_sets)
        emit_dot(network, out / "network.dot")
        write_edge_csv(network, out / "edges.csv")
        _write_skips(dataset, spec, out / "skips.csv")
        _write_run_json(out / "run.json", data_dir=str(data_dir), start=start, end=end,
                        window=window_size, mode=mode, samples=sample_size, seed=seed,
                        alpha=alpha, adaptive=adaptive, bonferroni=bonferroni,
                        workers=workers, out=str(out_dir))
    except EscBiasError as exc:
        _fail(exc)
    click.echo(
        f"{len(spec.windows())} windows, {len(network.collusive_edges)} collusive "
        f"pairs, {len(network.one_way_edges)} one-way edges -> {out}"
    )


def _write_skips(dataset, spec, path) -> None:
    import csv

    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window_start", "window_end", "from", "to"])
        for window in spec.windows():
            for giver, receiver in window_skips(dataset, window):
                writer.writerow([window.start_year, window.end_year, giver, receiver])


def _write_run_json(path, **values) -> None:
    values["kernel"] = implementation_name()
    values["version"] = __version__
    Path(path).write_text(json.dumps(values, indent=2, sort_keys=True) + "\n", encoding="utf-8")


@main.command("verify-oracle")
@click.option("--samples", "sample_size", type=int, default=DEFAULT_SAMPLE_SIZE, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--tolerance", type=float, default=0.05, show_default=True)
def verify_oracle(sample_size, seed, alpha, tolerance) -> None:
    """Compare Monte Carlo thresholds against the exact convolution quantiles."""
    try:
        checks = run_oracle_grid(sample_size, seed, alpha, tolerance)
    except EscBiasError as exc:
        _fail(exc)
    width = max(len(c.label) for c in checks)
    failures = 0
    for c in checks:
        status = "pass" if c.ok else "FAIL"
        failures += not c.ok
        click.echo(
            f"{c.label:<{width}}  years={c.n_years}  candidates={c.candidate_count:>2}  "
            f"mc={c.monte_carlo:<8g} exact={float(c.exact):<8g} "
            f"diff={c.difference:.4f}  {status}"
        )
    click.echo(f"{len(checks) - failures}/{len(checks)} within +/-{tolerance}")
    if failures:
        sys.exit(1)


@main.command()
@click.option("--countries", type=int, default=32, show_default=True)
@click.option("--start", type=int, default=1975, show_default=True)
@click.option("--end", type=int, default=2000, show_default=True)
@click.option("--window", "window_size", type=int, default=5, show_default=True)
@click.option("--samples", "sample_size", type=int, default=DEFAULT_SAMPLE_SIZE, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--data-seed", type=int, default=99, show_default=True)
@click.option("--workers", type=int, default=None)
def calibrate(countries, start, end, window_size, sample_size, seed, alpha,
              data_seed, workers) -> None:
    """Measure chance edge rates on a dataset generated from the null model."""
    if workers is None:
        workers = os.cpu_count() or 1
    try:
        report = run_calibration(CalibrationConfig(
            countries=countries, start_year=start, end_year=end,
            window_size=window_size, sample_size=sample_size, seed=seed,
            alpha=alpha, data_seed=data_seed, workers=workers,
        ))
    except EscBiasError as exc:
        _fail(exc)
    click.echo(f"ordered pair-windows: {report.ordered_pair_windows}")
    click.echo(f"significant edges:    {report.significant_edges} "
               f"({report.significant_rate:.2%}, nominal {alpha:.2%})")
    click.echo(f"collusive pairs:      {report.collusive_pairs} "
               f"({report.collusive_rate:.3%} of {report.unordered_pair_windows}, "
               f"nominal {alpha * alpha:.3%})")


@main.command("make-data")
@click.option("--out", "out_dir", default="data", show_default=True)
@click.option("--seed", type=int, default=DEFAULT_DATA_SEED, show_default=True)
def make_data(out_dir, seed) -> None:
    """Regenerate the bundled synthetic reference dataset."""
    try:
        dataset = reference_dataset(seed)
        save_dataset(dataset, out_dir)
    except EscBiasError as exc:
        _fail(exc)
    click.echo(f"wrote {len(dataset.years)} year tables + regions.csv to {out_dir}")


if __name__ == "__main__":
    main()
