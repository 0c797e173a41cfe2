"""Batch pipeline: ingest or generate a corpus, run every analysis, emit files.

Given a config the pipeline produces a versioned JSON report plus one columnar
plot-data file per result family (consecutive-day correlation, per-day
and aggregate degree distributions, per-hub degree series, overlap-vs-k,
top-k frequency, per-day fits, robustness curves). Output is deterministic for
a fixed config: any wall-clock information goes to run_info.json, which is the
single file excluded from the byte-for-byte determinism contract.

Files are written atomically (temp then rename) and partial outputs are
removed if a run fails midway.
"""
from __future__ import annotations

import datetime as dt
import json
import math
import os
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import centrality, dynamics, powerlaw, robustness as robust
from .errors import (
    CommnetError,
    ConfigError,
    EmptyHistogramError,
    InsufficientSupportError,
)
from .generators import HubCorpusParams, generate_hub_corpus
from .ingest import IngestReport, LogFormatConfig, parse_edge_log
from .temporal import (
    DailySnapshot,
    TemporalEdgeStream,
    aggregate,
    build_snapshots,
    undirected_projection,
)

REPORT_SCHEMA_VERSION = 1
RUN_INFO_FILENAME = "run_info.json"  # excluded from the determinism contract


@dataclass(frozen=True)
class PipelineConfig:
    """Everything one run needs; exactly one of input_path / hub_params is set."""

    output_dir: Path
    input_path: Path | None = None
    log_format: LogFormatConfig = field(default_factory=LogFormatConfig)
    malformed_threshold: float = 0.01
    collapse_duplicates: bool = False
    hub_params: HubCorpusParams | None = None
    window_start: dt.date | None = None
    window_days: int | None = None
    tz_offset_seconds: int = 0
    direction: str = "out"
    k: int = 10
    k_values: tuple[int, ...] = (5, 10, 20)
    cv_threshold: float = 1.0
    fit_target: str = "ccdf"
    fit_xmin: int = 1
    robustness_steps: tuple[float, ...] = (0.0, 0.05, 0.1, 0.2, 0.3, 0.4)
    seed: int = 0

    def validate(self) -> None:
        if (self.input_path is None) == (self.hub_params is None):
            raise ConfigError("exactly one of input_path or hub_params must be set")
        if self.direction not in centrality.VALID_DIRECTIONS:
            raise ConfigError(f"direction must be one of {centrality.VALID_DIRECTIONS}")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if not self.k_values or list(self.k_values) != sorted(self.k_values):
            raise ConfigError("k_values must be non-empty and ascending")
        if self.k_values[0] < 1:
            raise ConfigError("k_values must be positive")
        if self.fit_target not in ("pdf", "ccdf"):
            raise ConfigError("fit_target must be 'pdf' or 'ccdf'")
        if self.fit_xmin < 1:
            raise ConfigError("fit_xmin must be >= 1")
        if self.window_days is not None and self.window_days < 1:
            raise ConfigError("window_days must be >= 1")
        if not self.robustness_steps:
            raise ConfigError("robustness_steps must be non-empty")


@dataclass
class Report:
    """Assembled analysis results, JSON-serializable via to_dict()."""

    config: dict
    window: dict
    corpus: dict
    labels: dict | None
    daily_fits: list[dict]
    aggregate_fit: dict | None
    correlation: dict | None
    overlap_vs_k: list[dict]
    consistency: dict | None
    top_frequency: list[dict]
    concentration: dict | None
    stability: list[dict]
    robustness: dict
    sections_empty: bool

    def to_dict(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "config": self.config,
            "window": self.window,
            "corpus": self.corpus,
            "labels": self.labels,
            "daily_fits": self.daily_fits,
            "aggregate_fit": self.aggregate_fit,
            "correlation": self.correlation,
            "overlap_vs_k": self.overlap_vs_k,
            "consistency": self.consistency,
            "top_frequency": self.top_frequency,
            "concentration": self.concentration,
            "stability": self.stability,
            "robustness": self.robustness,
            "sections_empty": self.sections_empty,
        }


def _config_echo(cfg: PipelineConfig) -> dict:
    return {
        "input_path": str(cfg.input_path) if cfg.input_path else None,
        "synthetic": cfg.hub_params is not None,
        "window_start": cfg.window_start.isoformat() if cfg.window_start else None,
        "window_days": cfg.window_days,
        "tz_offset_seconds": cfg.tz_offset_seconds,
        "direction": cfg.direction,
        "k": cfg.k,
        "k_values": list(cfg.k_values),
        "cv_threshold": cfg.cv_threshold,
        "fit_target": cfg.fit_target,
        "fit_xmin": cfg.fit_xmin,
        "robustness_steps": list(cfg.robustness_steps),
        "seed": cfg.seed,
    }


def _acquire_stream(
    cfg: PipelineConfig,
) -> tuple[TemporalEdgeStream, dict]:
    if cfg.hub_params is not None:
        stream = generate_hub_corpus(cfg.hub_params)
        source = {
            "kind": "synthetic-hub-corpus",
            "nodes": cfg.hub_params.nodes,
            "days": cfg.hub_params.days,
            "hubs": cfg.hub_params.hubs,
            "hub_rate": cfg.hub_params.hub_rate,
            "background_rate": cfg.hub_params.background_rate,
            "seed": cfg.hub_params.seed,
            "start_date": cfg.hub_params.start_date.isoformat(),
        }
        return stream, source
    assert cfg.input_path is not None
    with open(cfg.input_path, "rb") as fh:
        stream, ingest_report = parse_edge_log(
            fh,
            cfg.log_format,
            malformed_threshold=cfg.malformed_threshold,
            collapse_duplicates=cfg.collapse_duplicates,
        )
    source = {
        "kind": "log",
        "path": str(cfg.input_path),
        "ingest": _ingest_dict(ingest_report),
    }
    return stream, source


def _ingest_dict(report: IngestReport) -> dict:
    return {
        "rows_read": report.rows_read,
        "accepted": report.accepted,
        "self_loops_dropped": report.self_loops_dropped,
        "malformed": report.malformed,
        "malformed_lines": [list(row) for row in report.malformed_rows[:50]],
        "duplicates_collapsed": report.duplicates_collapsed,
    }


def _fit_dicts(degrees: Sequence[int], h_source, target: str, xmin: int) -> dict:
    """OLS and MLE fits for one day or the aggregate; None where unfittable."""
    out: dict = {"ols": None, "mle": None}
    try:
        hist = powerlaw.histogram(h_source)
        fit = powerlaw.fit_ols(hist, target=target, xmin=xmin)
        out["ols"] = {
            "gamma": fit.gamma,
            "r_squared": fit.r_squared,
            "xmin": fit.xmin,
            "target": target,
        }
    except (EmptyHistogramError, InsufficientSupportError):
        pass
    try:
        fit = powerlaw.fit_mle_sweep([d for d in degrees if d >= 1])
        out["mle"] = {
            "gamma": fit.gamma,
            "ks_statistic": fit.ks_statistic,
            "xmin": fit.xmin,
            "n_tail": fit.n_tail,
        }
    except (EmptyHistogramError, InsufficientSupportError):
        pass
    return out


def run(cfg: PipelineConfig) -> Report:
    """Run the full pipeline and write report plus plot data to cfg.output_dir."""
    cfg.validate()
    stream, source = _acquire_stream(cfg)

    snapshots = build_snapshots(
        stream,
        cfg.window_start,
        num_days=cfg.window_days,
        tz_offset_seconds=cfg.tz_offset_seconds,
    )
    non_empty = [s for s in snapshots if not s.is_empty]

    window = {
        "start": snapshots[0].date.isoformat() if snapshots else None,
        "days": len(snapshots),
        "non_empty_days": len(non_empty),
        "tz_offset_seconds": cfg.tz_offset_seconds,
    }
    corpus = {
        "nodes": len(stream.node_registry),
        "messages": len(stream),
        "source": source,
    }
    labels = (
        {str(k): v for k, v in sorted(stream.labels.items())}
        if stream.labels
        else None
    )

    if not non_empty:
        report = Report(
            config=_config_echo(cfg),
            window=window,
            corpus=corpus,
            labels=labels,
            daily_fits=[],
            aggregate_fit=None,
            correlation=None,
            overlap_vs_k=[],
            consistency=None,
            top_frequency=[],
            concentration=None,
            stability=[],
            robustness={},
            sections_empty=True,
        )
        _emit_all(report, [], None, cfg)
        return report

    day_maps = [centrality.degree(s, cfg.direction) for s in snapshots]

    daily_fits = []
    for snap, dmap in zip(snapshots, day_maps):
        if snap.is_empty:
            continue
        fits = _fit_dicts(
            list(dmap.values.values()), dmap, cfg.fit_target, cfg.fit_xmin
        )
        active = sum(1 for v in dmap.values.values() if v > 0)
        daily_fits.append(
            {
                "day": snap.day_index,
                "date": snap.date.isoformat(),
                "active_nodes": active,
                "messages": snap.message_count,
                **fits,
            }
        )

    agg = aggregate(snapshots)
    agg_map = centrality.degree(agg, cfg.direction)
    aggregate_fit = _fit_dicts(
        list(agg_map.values.values()), agg_map, cfg.fit_target, cfg.fit_xmin
    )

    series = dynamics.consecutive_day_correlation(snapshots, cfg.direction) \
        if len(snapshots) >= 2 else None
    correlation = None
    if series is not None:
        defined = series.defined_values
        correlation = {
            "policy": series.policy,
            "direction": cfg.direction,
            "pairs": [
                {
                    "day_a": p.day_a,
                    "day_b": p.day_b,
                    "r": p.r,
                    "excluded": p.excluded,
                }
                for p in series.pairs
            ],
            "median_r": statistics.median(defined) if defined else None,
        }

    overlap = dynamics.overlap_vs_k(snapshots, cfg.k_values, cfg.direction)
    overlap_rows = [{"k": k, "mean_overlap": v} for k, v in overlap.items()]

    consistency_result, freq_table = dynamics.daily_vs_aggregate_consistency(
        snapshots, agg, cfg.k, cfg.direction
    )
    consistency = {
        "k": consistency_result.k,
        "count": consistency_result.count,
        "percentage": consistency_result.percentage,
    }
    top_frequency = [{"node": node, "days": days} for node, days in freq_table.items()]

    top = centrality.top_k(agg_map, cfg.k)
    concentration = {
        "k": cfg.k,
        "direction": cfg.direction,
        "share": centrality.degree_share(agg_map, top),
        "top": [{"node": node, "degree": deg} for node, deg in top.entries],
    }

    stability = []
    hub_series: list[dynamics.DegreeSeries] = []
    for node, _ in top.entries:
        ns = dynamics.node_series(snapshots, node, cfg.direction)
        hub_series.append(ns)
        stability.append(
            {
                "node": node,
                "mean": ns.mean,
                "cv": ns.cv,
                "class": dynamics.classify_stability(ns, cfg.cv_threshold).value,
            }
        )

    projected = undirected_projection(agg)
    robustness_section: dict = {}
    for kind in ("random", "targeted"):
        strategy = robust.RemovalStrategy(kind, seed=cfg.seed)
        curve = robust.robustness_curve(projected, strategy, cfg.robustness_steps)
        robustness_section[kind] = {
            "seed": cfg.seed,
            "adaptive": strategy.adaptive,
            "points": [
                {
                    "fraction_removed": pt.fraction_removed,
                    "giant_component_fraction": pt.giant_component_fraction,
                    "average_path_length": pt.average_path_length,
                }
                for pt in curve.points
            ],
        }

    report = Report(
        config=_config_echo(cfg),
        window=window,
        corpus=corpus,
        labels=labels,
        daily_fits=daily_fits,
        aggregate_fit=aggregate_fit,
        correlation=correlation,
        overlap_vs_k=overlap_rows,
        consistency=consistency,
        top_frequency=top_frequency,
        concentration=concentration,
        stability=stability,
        robustness=robustness_section,
        sections_empty=False,
    )
    _emit_all(report, snapshots, agg_map, cfg, day_maps=day_maps, hub_series=hub_series)
    return report


# ---------------------------------------------------------------------------
# file emission
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    return str(value)


def format_columns(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Columnar plot text: one header line, space-delimited numeric columns."""
    lines = [" ".join(header)]
    for row in rows:
        lines.append(" ".join(_fmt(v) for v in row))
    lines.append("")
    return "\n".join(lines)


def _atomic_write(path: Path, content: str, created: list[Path]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)
    created.append(path)


def _distribution_rows(hist: powerlaw.DegreeHistogram) -> list[tuple]:
    rows = []
    for k, p, c in zip(hist.support, hist.pdf, hist.ccdf):
        if k <= 0:
            continue
        rows.append((k, p, c, math.log10(k), math.log10(p), math.log10(c)))
    return rows


_DIST_HEADER = ("k", "pdf", "ccdf", "log10_k", "log10_pdf", "log10_ccdf")


def emit_plot_data(
    report: Report,
    output_dir: Path,
    *,
    snapshots: Sequence[DailySnapshot] = (),
    aggregate_map: centrality.DegreeMap | None = None,
    day_maps: Sequence[centrality.DegreeMap] = (),
    hub_series: Sequence[dynamics.DegreeSeries] = (),
    created: list[Path] | None = None,
) -> list[Path]:
    """Write one columnar plot-data file per report section; empty sections
    produce header-only files."""
    created = created if created is not None else []

    corr_rows: list[tuple] = []
    if report.correlation:
        for p in report.correlation["pairs"]:
            corr_rows.append((p["day_a"], p["day_b"], p["r"]))
    _atomic_write(
        output_dir / "correlation_series.dat",
        format_columns(("day_a", "day_b", "r"), corr_rows),
        created,
    )

    agg_rows: list[tuple] = []
    if aggregate_map is not None:
        try:
            agg_rows = _distribution_rows(powerlaw.histogram(aggregate_map))
        except EmptyHistogramError:
            agg_rows = []
    _atomic_write(
        output_dir / "degree_distribution_aggregate.dat",
        format_columns(_DIST_HEADER, agg_rows),
        created,
    )

    for snap, dmap in zip(snapshots, day_maps):
        if snap.is_empty:
            continue
        try:
            rows = _distribution_rows(powerlaw.histogram(dmap))
        except EmptyHistogramError:
            rows = []
        _atomic_write(
            output_dir / "day_distributions" / f"day_{snap.day_index:04d}.dat",
            format_columns(_DIST_HEADER, rows),
            created,
        )

    for ns in hub_series:
        _atomic_write(
            output_dir / "hub_series" / f"node_{ns.node}.dat",
            format_columns(("day", "degree"), list(enumerate(ns.values))),
            created,
        )

    _atomic_write(
        output_dir / "overlap_vs_k.dat",
        format_columns(
            ("k", "mean_overlap"),
            [(row["k"], row["mean_overlap"]) for row in report.overlap_vs_k],
        ),
        created,
    )

    _atomic_write(
        output_dir / "top_frequency.dat",
        format_columns(
            ("node", "days_in_top_k"),
            [(row["node"], row["days"]) for row in report.top_frequency],
        ),
        created,
    )

    fit_rows = []
    for row in report.daily_fits:
        ols = row["ols"] or {}
        mle = row["mle"] or {}
        fit_rows.append(
            (
                row["day"],
                ols.get("gamma"),
                ols.get("r_squared"),
                mle.get("gamma"),
                mle.get("ks_statistic"),
                mle.get("xmin"),
                mle.get("n_tail"),
            )
        )
    _atomic_write(
        output_dir / "per_day_fits.dat",
        format_columns(
            ("day", "gamma_ols", "r_squared", "gamma_mle", "ks", "xmin", "n_tail"),
            fit_rows,
        ),
        created,
    )

    for kind, section in report.robustness.items():
        _atomic_write(
            output_dir / f"robustness_{kind}.dat",
            format_columns(
                (
                    "fraction_removed",
                    "giant_component_fraction",
                    "average_path_length",
                ),
                [
                    (
                        p["fraction_removed"],
                        p["giant_component_fraction"],
                        p["average_path_length"],
                    )
                    for p in section["points"]
                ],
            ),
            created,
        )
    return created


def _emit_all(
    report: Report,
    snapshots: Sequence[DailySnapshot],
    aggregate_map: centrality.DegreeMap | None,
    cfg: PipelineConfig,
    *,
    day_maps: Sequence[centrality.DegreeMap] = (),
    hub_series: Sequence[dynamics.DegreeSeries] = (),
) -> None:
    created: list[Path] = []
    try:
        _atomic_write(
            Path(cfg.output_dir) / "report.json",
            json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
            created,
        )
        emit_plot_data(
            report,
            Path(cfg.output_dir),
            snapshots=snapshots,
            aggregate_map=aggregate_map,
            day_maps=day_maps,
            hub_series=hub_series,
            created=created,
        )
        run_info = {
            "generated_at": dt.datetime.now(dt.timezone.utc).isoformat(),
            "note": "wall-clock metadata; excluded from determinism guarantees",
        }
        _atomic_write(
            Path(cfg.output_dir) / RUN_INFO_FILENAME,
            json.dumps(run_info, indent=2, sort_keys=True) + "\n",
            created,
        )
    except BaseException:
        for path in created:
            try:
                path.unlink()
            except OSError:
                pass
        raise
