import math
from fractions import Fraction as F

import numpy as np
import pytest
from scipy import integrate, special

from singlepeak.errors import DomainError, SizeError
from singlepeak.probability import full_pmf
from singlepeak.samplers import Model
from singlepeak.stats import (
    GofReport,
    Histogram,
    chi2_sf,
    chi_square,
    collect,
    cross_model_report,
    gamma_q,
)


def chi2_tail_by_quadrature(x, df):
    k = df / 2
    density = lambda t: t ** (k - 1) * math.exp(-t / 2) / (2**k * math.gamma(k))
    head, _ = integrate.quad(density, 0, x, epsabs=1e-13, epsrel=1e-13)
    return 1 - head


def test_p_value_df3_against_quadrature():
    oracle = chi2_tail_by_quadrature(7.815, 3)
    assert abs(oracle - 0.05) <= 0.001
    assert abs(chi2_sf(7.815, 3) - oracle) <= 1e-10


@pytest.mark.parametrize("df", [1, 2, 3, 4, 7, 10, 31, 127])
@pytest.mark.parametrize("q", [0.001, 0.3, 0.9, 1.0, 1.7, 3.0, 12.0])
def test_p_value_matches_reference(df, q):
    x = q * df
    assert abs(chi2_sf(x, df) - special.gammaincc(df / 2, x / 2)) <= 1e-10
    if df <= 10 and x <= 60:
        assert abs(chi2_sf(x, df) - chi2_tail_by_quadrature(x, df)) <= 1e-9


def test_extreme_tail():
    assert chi2_sf(4.9e6, 127) == 0.0
    assert math.isclose(chi2_sf(400, 127), special.gammaincc(63.5, 200), rel_tol=1e-9)


def test_gamma_q_edges():
    assert gamma_q(2.0, 0.0) == 1.0
    with pytest.raises(ValueError):
        gamma_q(0, 1)
    with pytest.raises(ValueError):
        gamma_q(1, -1)
    with pytest.raises(ValueError):
        chi2_sf(1.0, 0)


def test_p_value_monotone_in_chi2():
    for df in (1, 3, 127):
        values = [chi2_sf(x, df) for x in np.linspace(0, 4 * df + 50, 400)]
        assert all(a >= b for a, b in zip(values, values[1:]))


def test_collect_uniform_n3():
    hist = collect(Model.UNIFORM, 3, 4 * 10**5, seed=5)
    assert hist.samples == sum(hist.counts) == 4 * 10**5
    assert all(abs(c - 10**5) <= 1200 for c in hist.counts)


def test_collect_conitzer_n3():
    hist = collect(Model.CONITZER, 3, 6 * 10**5, seed=5)
    expected = [2 * 10**5, 10**5, 10**5, 2 * 10**5]
    for c, e in zip(hist.counts, expected):
        p = e / 6e5
        assert abs(c - e) <= 3 * math.sqrt(6e5 * p * (1 - p))


def test_collect_single_sample_and_determinism():
    hist = collect(Model.CONITZER, 4, 1, seed=9)
    assert sorted(hist.counts) == [0] * 7 + [1]
    assert collect(Model.UNIFORM, 6, 1000, seed=3) == collect(Model.UNIFORM, 6, 1000, seed=3)


def test_collect_validation():
    with pytest.raises(DomainError):
        collect(Model.UNIFORM, 3, 0, seed=1)
    with pytest.raises(SizeError):
        collect(Model.UNIFORM, 30, 10, seed=1)


def test_chi_square_exact_fit():
    pmf = full_pmf(Model.CONITZER, 3)
    hist = Histogram(3, Model.CONITZER, 600, (200, 100, 100, 200))
    report = chi_square(hist, pmf)
    assert report.chi2 == 0 and report.p_value == 1 and report.passed
    assert report.df == 3


def test_chi_square_errors_and_warning():
    with pytest.raises(DomainError):
        chi_square(Histogram(2, Model.UNIFORM, 2, (1, 1)), full_pmf(Model.UNIFORM, 3))
    with pytest.raises(DomainError):
        chi_square(Histogram(1, Model.UNIFORM, 2, (2,)), full_pmf(Model.UNIFORM, 1))
    with pytest.warns(UserWarning, match="expected cell count"):
        chi_square(Histogram(3, Model.UNIFORM, 8, (2, 2, 2, 2)), full_pmf(Model.UNIFORM, 3))


def test_histogram_invariant():
    with pytest.raises(DomainError):
        Histogram(3, Model.UNIFORM, 5, (1, 1, 1, 1))


def test_report_lines():
    report = GofReport(1.5, 3, 0.68, 0.001, True, 2, -1.25)
    assert report.lines(3) == [
        "chi2=1.500000", "df=3", "p_value=6.800000e-01", "alpha=0.001",
        "pass=true", "worst_index=2", "worst_vote=2>1>3", "worst_residual=-1.250000",
    ]


def test_uniform_passes_and_conitzer_fails_at_n8():
    uniform = full_pmf(Model.UNIFORM, 8)
    assert chi_square(collect(Model.UNIFORM, 8, 10**6, seed=17), uniform).passed
    assert not chi_square(collect(Model.CONITZER, 8, 10**6, seed=17), uniform).passed
    # and the other direction
    conitzer = full_pmf(Model.CONITZER, 8)
    assert not chi_square(collect(Model.UNIFORM, 8, 10**6, seed=17), conitzer).passed


def _section(report, name):
    lines = report.splitlines()
    start = lines.index(f"[{name}]") + 1
    end = next((i for i in range(start, len(lines)) if not lines[i]), len(lines))
    return lines[start:end]


def test_cross_model_report_n3():
    report = cross_model_report(3, 20000, seed=1)
    assert _section(report, "pmf") == [
        "index vote uniform conitzer",
        "0 3>2>1 1/4 1/3",
        "1 2>3>1 1/4 1/6",
        "2 2>1>3 1/4 1/6",
        "3 1>2>3 1/4 1/3",
    ]
    assert _section(report, "distance") == ["tv=1/6"]
    assert _section(report, "peak")[1:] == ["1 1/4 1/3", "2 1/2 1/3", "3 1/4 1/3"]
    assert _section(report, "ratio")[1:] == ["2 1/1", "3 3/4"]
    for model in ("uniform", "conitzer"):
        gof = dict(line.split("=", 1) for line in _section(report, f"gof {model}"))
        assert gof["df"] == "3"
    assert report == cross_model_report(3, 20000, seed=1)


def test_cross_model_report_n2_and_n1():
    report = cross_model_report(2, 1000, seed=1)
    assert _section(report, "distance") == ["tv=0/1"]
    pmf_rows = _section(report, "pmf")[1:]
    assert all(row.split()[2] == row.split()[3] == "1/2" for row in pmf_rows)
    assert "skipped=single cell" in cross_model_report(1, 10, seed=1)


@pytest.mark.slow
@pytest.mark.parametrize("model", list(Model))
@pytest.mark.parametrize("n", [3, 8])
def test_self_consistency_100_runs(model, n):
    pmf = full_pmf(model, n)
    passes = sum(chi_square(collect(model, n, 10**6, seed), pmf).passed for seed in range(100))
    print(f"{model.value} n={n}: {passes}/100 passed")
    assert passes >= 99


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 5, 8])
def test_discrimination_both_directions(n):
    for model, other in ((Model.UNIFORM, Model.CONITZER), (Model.CONITZER, Model.UNIFORM)):
        pmf = full_pmf(other, n)
        for seed in range(10):
            assert not chi_square(collect(model, n, 10**6, seed), pmf).passed
