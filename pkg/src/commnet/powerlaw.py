"""Degree-distribution estimation and power-law fitting.

Builds the empirical pdf and complementary cumulative distribution of a degree
map, applies geometric (log) binning for variance reduction, and fits the
heavy tail two ways: ordinary least squares on the log-log relationship
(mirroring straight-line inspection of log-log plots) and a discrete
maximum-likelihood estimator with a Kolmogorov-Smirnov distance, optionally
sweeping the lower cutoff to the KS-optimal choice.

Zero-degree nodes are excluded from distributions (log 0 is undefined) but
reported as a count.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .centrality import DegreeMap
from .errors import EmptyHistogramError, InsufficientSupportError


@dataclass(frozen=True)
class DegreeHistogram:
    """Empirical degree distribution: P(k) and the tail P(K >= k).

    ``support`` lists the degree values with positive mass, ascending.
    ``n`` is the number of samples behind the distribution (0 when built
    from an analytic pdf rather than counts).
    """

    support: tuple[int, ...]
    pdf: tuple[float, ...]
    ccdf: tuple[float, ...]
    n: int
    zeros_dropped: int = 0

    @classmethod
    def from_counts(
        cls, counts: Mapping[int, int], *, zeros_dropped: int = 0
    ) -> "DegreeHistogram":
        support = sorted(k for k, c in counts.items() if c > 0)
        if not support:
            raise EmptyHistogramError("no samples with positive count")
        n = sum(counts[k] for k in support)
        pdf = [counts[k] / n for k in support]
        return cls(tuple(support), tuple(pdf), _ccdf_from_pdf(pdf), n, zeros_dropped)

    @classmethod
    def from_pdf(
        cls, pdf: Mapping[int, float], *, n: int = 0
    ) -> "DegreeHistogram":
        """Build from an analytic pdf (normalized here); used for exact inputs."""
        support = sorted(k for k, mass in pdf.items() if mass > 0)
        if not support:
            raise EmptyHistogramError("pdf has no positive mass")
        total = sum(pdf[k] for k in support)
        probs = [pdf[k] / total for k in support]
        return cls(tuple(support), tuple(probs), _ccdf_from_pdf(probs), n)


def _ccdf_from_pdf(pdf: Sequence[float]) -> tuple[float, ...]:
    # accumulate from the tail so small tail masses are not swamped
    out = [0.0] * len(pdf)
    running = 0.0
    for i in range(len(pdf) - 1, -1, -1):
        running += pdf[i]
        out[i] = running
    return tuple(out)


@dataclass(frozen=True)
class PowerLawFit:
    """A fitted degree exponent with its method and diagnostics.

    ``r_squared`` is set for OLS fits, ``ks_statistic`` for MLE fits.
    ``n_tail`` counts samples at or above the cutoff (0 when unknown).
    A gamma at or below 1 from an OLS fit signals input whose tail is not a
    normalizable discrete power law; the MLE always lands above 1.
    """

    gamma: float
    xmin: int
    method: str  # "ols-pdf" | "ols-ccdf" | "mle"
    r_squared: float | None
    ks_statistic: float | None
    n_tail: int


@dataclass(frozen=True)
class LogBinnedHistogram:
    """Geometric binning of a histogram: mass per bin divided by bin width."""

    edges: tuple[float, ...]  # len(bins) + 1, each edge = previous * ratio
    centers: tuple[float, ...]  # geometric mean of the bin bounds
    densities: tuple[float, ...]


def histogram(d: DegreeMap, *, drop_zeros: bool = True) -> DegreeHistogram:
    """Empirical distribution of a degree map.

    Raises EmptyHistogramError when no node has a positive degree.
    """
    counts = Counter(d.values.values())
    zeros = counts.pop(0, 0)
    if not counts:
        raise EmptyHistogramError("all degrees are zero")
    if not drop_zeros and zeros:
        counts[0] = zeros
        zeros = 0
    return DegreeHistogram.from_counts(counts, zeros_dropped=zeros)


def log_bin(h: DegreeHistogram, ratio: float) -> LogBinnedHistogram:
    """Rebin onto geometric bins [k0, k0*ratio, ...), preserving total mass.

    Only the positive support is binned. The bin value is the pdf mass that
    fell into the bin divided by the bin width, positioned at the geometric
    mean of the bounds, so sum(density * width) equals the binned mass.
    """
    if ratio <= 1:
        raise ValueError("ratio must be > 1")
    positive = [(k, p) for k, p in zip(h.support, h.pdf) if k > 0]
    if not positive:
        raise EmptyHistogramError("no positive support to bin")
    k0 = float(positive[0][0])
    kmax = float(positive[-1][0])
    edges = [k0]
    while edges[-1] <= kmax:
        edges.append(edges[-1] * ratio)
    edge_arr = np.array(edges)
    masses = np.zeros(len(edges) - 1)
    for k, p in positive:
        # side="right" puts a value equal to an edge into the bin it opens
        masses[np.searchsorted(edge_arr, float(k), side="right") - 1] += p
    widths = edge_arr[1:] - edge_arr[:-1]
    centers = np.sqrt(edge_arr[1:] * edge_arr[:-1])
    return LogBinnedHistogram(
        tuple(edge_arr.tolist()),
        tuple(centers.tolist()),
        tuple((masses / widths).tolist()),
    )


def fit_ols(h: DegreeHistogram, target: str = "ccdf", xmin: int = 1) -> PowerLawFit:
    """Least-squares line through the log-log distribution tail.

    Parameters
    ----------
    h : DegreeHistogram
    target : "pdf" or "ccdf"
        Which curve to regress. The ccdf is the default: it is far less noisy
        in the tail. The pdf target mirrors direct log-log plot inspection.
    xmin : int
        Lower cutoff; only support points at or above it enter the fit.

    Returns
    -------
    PowerLawFit
        For a pdf fit gamma is the negated slope; for a ccdf fit the slope
        estimates 1 - gamma. ``r_squared`` measures log-log linearity.

    Raises
    ------
    InsufficientSupportError
        If fewer than 3 distinct support points lie at or above ``xmin``.
    """
    if target == "pdf":
        series = h.pdf
    elif target == "ccdf":
        series = h.ccdf
    else:
        raise ValueError("target must be 'pdf' or 'ccdf'")
    pts = [
        (k, y)
        for k, y in zip(h.support, series)
        if k >= xmin and k > 0 and y > 0
    ]
    if len(pts) < 3:
        raise InsufficientSupportError(
            f"need >= 3 support points at k >= {xmin}, have {len(pts)}"
        )
    x = np.log(np.array([k for k, _ in pts], dtype=float))
    y = np.log(np.array([v for _, v in pts], dtype=float))
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    sxy = float(((x - xm) * (y - ym)).sum())
    slope = sxy / sxx
    resid = y - (ym + slope * (x - xm))
    ss_res = float((resid**2).sum())
    ss_tot = float(((y - ym) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    gamma = -slope if target == "pdf" else 1.0 - slope
    tail_mass = sum(p for k, p in zip(h.support, h.pdf) if k >= xmin)
    n_tail = int(round(h.n * tail_mass)) if h.n else 0
    return PowerLawFit(
        gamma=float(gamma),
        xmin=xmin,
        method=f"ols-{target}",
        r_squared=r_squared,
        ks_statistic=None,
        n_tail=n_tail,
    )


def fit_ols_binned(binned: LogBinnedHistogram) -> PowerLawFit:
    """Least-squares line through a log-binned pdf.

    Binning first is the standard cure for single-sample noise in the raw pdf
    tail; the regression runs over bins with positive mass and gamma is the
    negated slope of log density against log bin center.
    """
    pts = [(c, d) for c, d in zip(binned.centers, binned.densities) if d > 0]
    if len(pts) < 3:
        raise InsufficientSupportError(
            f"need >= 3 occupied bins, have {len(pts)}"
        )
    x = np.log(np.array([c for c, _ in pts]))
    y = np.log(np.array([d for _, d in pts]))
    xm, ym = x.mean(), y.mean()
    slope = float(((x - xm) * (y - ym)).sum() / ((x - xm) ** 2).sum())
    resid = y - (ym + slope * (x - xm))
    ss_res = float((resid**2).sum())
    ss_tot = float(((y - ym) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return PowerLawFit(
        gamma=-slope,
        xmin=int(math.ceil(binned.edges[0])),
        method="ols-binned-pdf",
        r_squared=r_squared,
        ks_statistic=None,
        n_tail=0,
    )


def fit_mle(degrees: Iterable[int], xmin: int = 1) -> PowerLawFit:
    """Discrete-approximation maximum-likelihood exponent for the tail k >= xmin.

    Uses the continuity-corrected closed form

        gamma = 1 + n_tail / sum(ln(k_i / (xmin - 0.5)))

    and reports the Kolmogorov-Smirnov distance between the empirical tail and
    the fitted model, where the model tail is
    P(K >= k) = ((k - 0.5) / (xmin - 0.5)) ** (1 - gamma).

    Raises
    ------
    InsufficientSupportError
        If fewer than 10 samples are at or above ``xmin``.
    """
    if xmin < 1:
        raise ValueError("xmin must be >= 1")
    x = np.asarray(list(degrees), dtype=np.int64)
    tail = x[x >= xmin]
    if tail.size < 10:
        raise InsufficientSupportError(
            f"need >= 10 samples at k >= {xmin}, have {tail.size}"
        )
    shift = xmin - 0.5
    gamma = 1.0 + tail.size / float(np.log(tail / shift).sum())
    ks = _ks_statistic(tail, gamma, xmin)
    return PowerLawFit(
        gamma=float(gamma),
        xmin=xmin,
        method="mle",
        r_squared=None,
        ks_statistic=float(ks),
        n_tail=int(tail.size),
    )


def _ks_statistic(tail: np.ndarray, gamma: float, xmin: int) -> float:
    sorted_tail = np.sort(tail)
    distinct = np.unique(sorted_tail)
    n = sorted_tail.size
    # empirical P(K >= k) at each distinct observed k
    emp = (n - np.searchsorted(sorted_tail, distinct, side="left")) / n
    model = ((distinct - 0.5) / (xmin - 0.5)) ** (1.0 - gamma)
    return float(np.abs(emp - model).max())


def fit_mle_sweep(
    degrees: Iterable[int],
    xmin_candidates: Iterable[int] | None = None,
) -> PowerLawFit:
    """Fit at every candidate lower cutoff and keep the minimum-KS fit.

    Candidates default to the distinct positive values in the sample; cutoffs
    whose tail holds fewer than 10 samples are skipped. Ties in KS go to the
    smaller cutoff.
    """
    x = np.asarray(list(degrees), dtype=np.int64)
    if xmin_candidates is None:
        candidates = [int(v) for v in np.unique(x[x >= 1])]
    else:
        candidates = sorted({int(c) for c in xmin_candidates})
        if any(c < 1 for c in candidates):
            raise ValueError("xmin candidates must be >= 1")
    best: PowerLawFit | None = None
    for cand in candidates:
        if int((x >= cand).sum()) < 10:
            continue
        fit = fit_mle(x, xmin=cand)
        if best is None or fit.ks_statistic < best.ks_statistic:
            best = fit
    if best is None:
        raise InsufficientSupportError(
            "no candidate cutoff keeps at least 10 tail samples"
        )
    return best
