"""Uniform and Conitzer sampling of single-peaked votes, with exact analysis."""

from .combinatorics import count, count_with_peak, enumerate_votes, rank, unrank
from .domain import Interval, Profile, Vote, is_single_peaked, last_ranked, peak_of
from .errors import DomainError, SinglePeakError, SizeError, SocFormatError
from .formats import read_soc, write_soc
from .probability import (
    Pmf,
    conitzer_pmf,
    conitzer_pmf_oracle,
    ic_pmf,
    peak_distribution,
    probability_ratio_trend,
    total_variation,
)
from .rng import RngState
from .samplers import Model, conitzer_sample, gen_single_peak, sample_profile, uniform_sample
from .stats import GofReport, Histogram, chi_square, collect, cross_model_report

__version__ = "0.1.0"
