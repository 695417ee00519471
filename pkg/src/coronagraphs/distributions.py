"""Value/probability series and the log-space fits used on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DistributionSeries:
    """Sorted (value, probability) points, plain or cumulative.

    ``counts`` keeps the exact integer weights when the series came from
    counting, so downstream comparisons can be exact instead of float-eyed.
    """

    values: tuple[float, ...]
    probabilities: tuple[float, ...]
    cumulative: bool
    population: int
    counts: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.values) != len(self.probabilities):
            raise ValueError("values and probabilities must align")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("values must be strictly increasing")
        if self.counts is not None and len(self.counts) != len(self.values):
            raise ValueError("counts must align with values")
        if self.cumulative:
            if any(b > a + 1e-12 for a, b in zip(self.probabilities,
                                                 self.probabilities[1:])):
                raise ValueError("cumulative probabilities must be non-increasing")
            if self.probabilities and abs(self.probabilities[0] - 1.0) > 1e-12:
                raise ValueError("cumulative series must start at 1")
        else:
            if self.probabilities and abs(sum(self.probabilities) - 1.0) > 1e-12:
                raise ValueError("plain series must sum to 1")

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.values, self.probabilities))

    @classmethod
    def from_counts(cls, values, counts, population: int | None = None,
                    cumulative: bool = False) -> "DistributionSeries":
        pairs = sorted(zip(values, counts))
        vals = tuple(float(v) for v, _ in pairs)
        cnts = tuple(int(c) for _, c in pairs)
        pop = int(population) if population is not None else sum(cnts)
        probs = tuple(c / pop for c in cnts)
        return cls(values=vals, probabilities=probs, cumulative=cumulative,
                   population=pop, counts=cnts)


def cumulative_series(d: DistributionSeries) -> DistributionSeries:
    """Suffix-sum a plain series into P(value >= v)."""
    if d.cumulative:
        return d
    if d.counts is not None:
        suffix = np.cumsum(d.counts[::-1])[::-1]
        probs = tuple(int(c) / d.population for c in suffix)
        return DistributionSeries(values=d.values, probabilities=probs,
                                  cumulative=True, population=d.population,
                                  counts=tuple(int(c) for c in suffix))
    suffix = np.cumsum(d.probabilities[::-1])[::-1]
    # guard the head against rounding drift so the invariant p[0] == 1 holds
    probs = tuple(min(float(p), 1.0) for p in suffix)
    probs = (1.0,) + probs[1:]
    return DistributionSeries(values=d.values, probabilities=probs,
                              cumulative=True, population=d.population)


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares power-law exponent from a cumulative series.

    gamma is reported for the plain distribution: |slope of the cumulative
    log-log fit| + 1.
    """

    gamma: float
    intercept: float
    r_squared: float
    fit_range: tuple[float, float]


def _select(d: DistributionSeries, fit_range, positive_values: bool):
    vals = np.asarray(d.values)
    probs = np.asarray(d.probabilities)
    if fit_range is not None:
        lo, hi = fit_range
        keep = (vals >= lo) & (vals <= hi)
        if np.any(probs[keep] <= 0):
            raise ValueError("nonpositive probability in fit range")
        if positive_values and np.any(vals[keep] <= 0):
            raise ValueError("nonpositive value in log-log fit range")
    else:
        keep = probs > 0
        if positive_values:
            keep &= vals > 0
    vals, probs = vals[keep], probs[keep]
    if len(np.unique(vals)) < 3:
        raise ValueError("need at least 3 distinct values in the fit range")
    return vals, probs


def _least_squares(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2


def fit_power_law(d: DistributionSeries, fit_range=None) -> PowerLawFit:
    """log p vs log value regression on the cumulative series."""
    series = cumulative_series(d)
    vals, probs = _select(series, fit_range, positive_values=True)
    slope, intercept, r2 = _least_squares(np.log(vals), np.log(probs))
    return PowerLawFit(gamma=abs(slope) + 1.0, intercept=intercept, r_squared=r2,
                       fit_range=(float(vals.min()), float(vals.max())))


def fit_exponential(d: DistributionSeries, fit_range=None) -> tuple[float, float]:
    """log p vs value regression; returns (decay rate, r_squared)."""
    series = cumulative_series(d)
    vals, probs = _select(series, fit_range, positive_values=False)
    slope, _, r2 = _least_squares(vals.astype(float), np.log(probs))
    return -slope, r2


def series_to_csv(d: DistributionSeries) -> str:
    """CSV emission: header comment then value,probability rows."""
    lines = [f"# cumulative={str(d.cumulative).lower()} population={d.population}",
             "value,probability"]
    for v, p in d.points:
        lines.append(f"{_fmt(v)},{p!r}")
    return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))
