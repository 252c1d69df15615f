"""Histograms of sampler output and Pearson chi-square goodness of fit."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import DEFAULT_CAP, check_cap, unrank
from .errors import DomainError
from .probability import (
    Pmf,
    full_pmf,
    peak_distribution,
    probability_ratio_trend,
    total_variation,
)
from .rng import RngState
from .samplers import Model, histogram_counts

DEFAULT_ALPHA = 0.001

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 100_000


def _gamma_series(a: float, x: float) -> float:
    # lower regularized P(a, x); converges fast for x < a + 1
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_continued_fraction(a: float, x: float) -> float:
    # upper regularized Q(a, x) by modified Lentz; for x >= a + 1
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma function Q(a, x)."""
    if a <= 0:
        raise ValueError(f"shape must be positive, got {a}")
    if x < 0:
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_continued_fraction(a, x)


def chi2_sf(chi2: float, df: int) -> float:
    """P(X >= chi2) for X chi-square distributed with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    return gamma_q(df / 2.0, chi2 / 2.0)


@dataclass(frozen=True)
class Histogram:
    n: int
    model: Model
    samples: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts) != self.samples:
            raise DomainError("histogram counts do not add up to the sample count")


@dataclass(frozen=True)
class GofReport:
    chi2: float
    df: int
    p_value: float
    alpha: float
    passed: bool
    worst_index: int
    worst_residual: float

    def lines(self, n: int | None = None) -> list[str]:
        """``key=value`` rendering, one field per line."""
        out = [
            f"chi2={self.chi2:.6f}",
            f"df={self.df}",
            f"p_value={self.p_value:.6e}",
            f"alpha={self.alpha:g}",
            f"pass={'true' if self.passed else 'false'}",
            f"worst_index={self.worst_index}",
        ]
        if n is not None:
            out.append(f"worst_vote={unrank(n, self.worst_index)}")
        out.append(f"worst_residual={self.worst_residual:.6f}")
        return out


def collect(
    model: Model | str,
    n: int,
    samples: int,
    seed: int,
    cap: int | None = DEFAULT_CAP,
) -> Histogram:
    """Draw ``samples`` votes from ``model`` and bin them by rank."""
    model = Model.parse(model)
    check_cap(n, cap)
    if samples < 1:
        raise DomainError(f"sample count must be >= 1, got {samples}")
    counts = histogram_counts(model, n, samples, RngState(seed))
    return Histogram(n, model, samples, tuple(counts.tolist()))


def chi_square(hist: Histogram, expected: Pmf, alpha: float = DEFAULT_ALPHA) -> GofReport:
    """Pearson chi-square test of ``hist`` against the exact masses ``expected``.

    The worst cell is the one with the largest standardized residual
    ``|O - E| / sqrt(E)``.
    """
    if hist.n != expected.n or len(hist.counts) != len(expected):
        raise DomainError(
            f"histogram has {len(hist.counts)} cells, pmf has {len(expected)}"
        )
    if any(p <= 0 for p in expected.masses):
        raise DomainError("expected pmf has a zero-mass cell")
    if len(expected) < 2:
        raise DomainError("goodness of fit needs at least two cells")
    observed = np.asarray(hist.counts, dtype=float)
    exp = hist.samples * np.asarray(expected.as_floats())
    if exp.min() < 5:
        warnings.warn(
            f"smallest expected cell count is {exp.min():.3g} (< 5); "
            "the chi-square approximation may be poor",
            stacklevel=2,
        )
    residual = (observed - exp) / np.sqrt(exp)
    chi2 = float(np.sum(residual**2))
    df = len(expected) - 1
    p_value = chi2_sf(chi2, df)
    worst = int(np.argmax(np.abs(residual)))
    return GofReport(
        chi2=chi2,
        df=df,
        p_value=p_value,
        alpha=alpha,
        passed=p_value >= alpha,
        worst_index=worst,
        worst_residual=float(residual[worst]),
    )


def _frac(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def cross_model_report(
    n: int,
    samples: int,
    seed: int,
    alpha: float = DEFAULT_ALPHA,
    cap: int | None = DEFAULT_CAP,
) -> str:
    """Side-by-side comparison of the two models as a sectioned text report.

    Sections are introduced by ``[name]`` lines; tables are whitespace
    separated with a header row; scalars are ``key=value``.
    """
    check_cap(n, cap)
    uniform = full_pmf(Model.UNIFORM, n, cap)
    conitzer = full_pmf(Model.CONITZER, n, cap)
    out = ["[run]", f"n={n}", f"samples={samples}", f"seed={seed}", f"alpha={alpha:g}"]

    out += ["", "[pmf]", "index vote uniform conitzer"]
    for i, (pu, pc) in enumerate(zip(uniform.masses, conitzer.masses)):
        out.append(f"{i} {unrank(n, i)} {_frac(pu)} {_frac(pc)}")

    out += ["", "[distance]", f"tv={_frac(total_variation(uniform, conitzer))}"]

    out += ["", "[peak]", "peak uniform conitzer"]
    pu, pc = peak_distribution(Model.UNIFORM, n), peak_distribution(Model.CONITZER, n)
    for p in range(1, n + 1):
        out.append(f"{p} {_frac(pu[p])} {_frac(pc[p])}")

    out += ["", "[ratio]", "n ratio"]
    for k, ratio in probability_ratio_trend(max(n, 2)).items():
        out.append(f"{k} {_frac(ratio)}")

    for model, pmf in ((Model.UNIFORM, uniform), (Model.CONITZER, conitzer)):
        out += ["", f"[gof {model.value}]"]
        if len(pmf) < 2:
            out.append("skipped=single cell")
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            report = chi_square(collect(model, n, samples, seed, cap), pmf, alpha)
        out += report.lines(n)
    return "\n".join(out) + "\n"
