"""Exact probability mass functions of the two generators.

All masses are :class:`fractions.Fraction` values; floats appear only when a
caller asks for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import DEFAULT_CAP, check_cap, count, count_with_peak, iter_votes, rank
from .domain import Vote, identity_vote, require_single_peaked
from .errors import DomainError
from .samplers import Model


@dataclass(frozen=True)
class Pmf:
    """Masses of every single-peaked vote over 1..n, indexed in unrank order."""

    n: int
    model: Model
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.masses) != count(self.n):
            raise DomainError(
                f"pmf for n={self.n} needs {count(self.n)} masses, got {len(self.masses)}"
            )
        if sum(self.masses) != 1:
            raise DomainError("masses do not sum to 1")

    def __getitem__(self, index: int) -> Fraction:
        return self.masses[index]

    def __len__(self) -> int:
        return len(self.masses)

    def mass(self, vote: Vote) -> Fraction:
        return self.masses[rank(vote)]

    def as_floats(self) -> list[float]:
        return [float(p) for p in self.masses]


def ic_pmf(n: int, vote: Vote) -> Fraction:
    """Mass of ``vote`` under the uniform model: ``1 / 2**(n-1)``."""
    _check_vote(n, vote)
    return Fraction(1, count(n))


def conitzer_pmf(n: int, vote: Vote) -> Fraction:
    """Closed-form mass under Conitzer's generator.

    With ``k`` the earlier of the ranking positions of candidates 1 and n, the
    peak draw contributes ``1/n`` and positions 2..k were each a fair coin.
    """
    _check_vote(n, vote)
    ranking = vote.ranking
    k = min(ranking.index(1), ranking.index(n)) + 1
    return Fraction(1, n * (1 << (k - 1)))


def pmf_value(model: Model | str, n: int, vote: Vote) -> Fraction:
    if Model.parse(model) is Model.UNIFORM:
        return ic_pmf(n, vote)
    return conitzer_pmf(n, vote)


def _check_vote(n: int, vote: Vote) -> None:
    if vote.n != n:
        raise DomainError(f"vote {vote} has {vote.n} candidates, expected {n}")
    require_single_peaked(vote)


def conitzer_pmf_oracle(n: int, cap: int | None = DEFAULT_CAP) -> Pmf:
    """Conitzer masses by walking the generator's full decision tree.

    Each of the n peaks starts a branch of mass 1/n. A branch splits in two
    halves while both sides still have candidates and continues unsplit
    otherwise. Independent of :func:`conitzer_pmf`.
    """
    check_cap(n, cap)
    masses: dict[tuple[int, ...], Fraction] = {}
    stack = [((p,), p, p, Fraction(1, n)) for p in range(1, n + 1)]
    while stack:
        ranking, lo, hi, mass = stack.pop()
        if lo == 1 and hi == n:
            masses[ranking] = masses.get(ranking, Fraction(0)) + mass
            continue
        options = []
        if lo > 1:
            options.append((ranking + (lo - 1,), lo - 1, hi))
        if hi < n:
            options.append((ranking + (hi + 1,), lo, hi + 1))
        share = mass / len(options)
        for child, clo, chi in options:
            stack.append((child, clo, chi, share))
    table = [Fraction(0)] * count(n)
    for ranking, mass in masses.items():
        table[rank(Vote(ranking))] = mass
    return Pmf(n, Model.CONITZER, tuple(table))


def full_pmf(model: Model | str, n: int, cap: int | None = DEFAULT_CAP) -> Pmf:
    """Closed-form PMF table of ``model`` over all single-peaked votes."""
    model = Model.parse(model)
    check_cap(n, cap)
    if model is Model.UNIFORM:
        mass = Fraction(1, count(n))
        return Pmf(n, model, (mass,) * count(n))
    return Pmf(n, model, tuple(conitzer_pmf(n, v) for v in iter_votes(n)))


def peak_distribution(model: Model | str, n: int) -> dict[int, Fraction]:
    """Probability that the top candidate is ``p``, for every p in 1..n."""
    model = Model.parse(model)
    if n < 1:
        raise DomainError(f"candidate count must be >= 1, got {n}")
    if model is Model.UNIFORM:
        total = count(n)
        return {p: Fraction(count_with_peak(n, p), total) for p in range(1, n + 1)}
    return {p: Fraction(1, n) for p in range(1, n + 1)}


def total_variation(p: Pmf, q: Pmf) -> Fraction:
    if p.n != q.n:
        raise DomainError(f"cannot compare pmfs over n={p.n} and n={q.n}")
    return sum((abs(a - b) for a, b in zip(p.masses, q.masses)), Fraction(0)) / 2


def probability_ratio_trend(n_max: int) -> dict[int, Fraction]:
    """Uniform over Conitzer mass of ``1 > 2 > ... > n`` for n = 2..n_max.

    Each entry equals ``n / 2**(n-1)``.
    """
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    trend = {}
    for n in range(2, n_max + 1):
        vote = identity_vote(n)
        trend[n] = ic_pmf(n, vote) / conitzer_pmf(n, vote)
    return trend
