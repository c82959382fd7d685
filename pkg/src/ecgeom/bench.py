"""Timing harness with Student-t confidence intervals.

Trials run sequentially for timing isolation; one warm-up trial is
discarded before the measured ones so caches and allocators settle.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.stats import t as student_t

from .errors import TooFewSamples


@dataclass(frozen=True)
class ConfidenceInterval:
    """Two-sided interval for the mean at significance ``s`` (milliseconds)."""

    lower: float
    upper: float
    mean: float
    stddev: float
    count: int


def confidence_interval(samples, significance: float) -> ConfidenceInterval:
    """Student-t interval for the mean of ``samples``.

    lower = max(mean - (std/sqrt(N)) * x, 0) and the symmetric upper
    endpoint, with x the t quantile at 1 - s/2 and N-1 degrees of freedom.
    """
    values = np.asarray(samples, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise TooFewSamples("need at least two samples")
    if not 0.0 < significance < 1.0:
        raise ValueError("significance must lie in (0, 1)")
    n = values.size
    mean = float(values.mean())
    stddev = float(values.std(ddof=1))
    quantile = float(student_t.ppf(1.0 - significance / 2.0, n - 1))
    halfwidth = stddev / math.sqrt(n) * quantile
    return ConfidenceInterval(
        lower=max(mean - halfwidth, 0.0),
        upper=mean + halfwidth,
        mean=mean,
        stddev=stddev,
        count=n,
    )


def time_trials(task, trials: int, significance: float) -> ConfidenceInterval:
    """Run ``task`` once as a discarded warm-up, then ``trials`` timed runs.

    Returns the confidence interval of the per-run wall time in
    milliseconds.
    """
    if trials < 2:
        raise TooFewSamples("need at least two timed trials")
    task()
    samples = []
    for _ in range(trials):
        start = time.perf_counter()
        task()
        samples.append((time.perf_counter() - start) * 1000.0)
    return confidence_interval(samples, significance)
