"""Votes, profiles and single-peakedness on the axis 1 < 2 < ... < n."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError


@dataclass(frozen=True)
class Vote:
    """A strict ranking of the candidates 1..n, most preferred first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        ranking = tuple(self.ranking)
        object.__setattr__(self, "ranking", ranking)
        n = len(ranking)
        if n == 0:
            raise DomainError("a vote needs at least one candidate")
        seen = set()
        for c in ranking:
            if not isinstance(c, int) or isinstance(c, bool):
                raise DomainError(f"candidate ids must be integers, got {c!r}")
            if not 1 <= c <= n:
                raise DomainError(f"candidate {c} out of range 1..{n}")
            if c in seen:
                raise DomainError(f"candidate {c} appears more than once")
            seen.add(c)

    @property
    def n(self) -> int:
        return len(self.ranking)

    @classmethod
    def parse(cls, text: str) -> Vote:
        """Parse the ``"2>1>3"`` text form. Surrounding whitespace is ignored."""
        text = text.strip()
        if not text:
            raise DomainError("empty vote string")
        try:
            ranking = tuple(int(part) for part in text.split(">"))
        except ValueError:
            raise DomainError(f"malformed vote string {text!r}") from None
        return cls(ranking)

    def __str__(self) -> str:
        return ">".join(map(str, self.ranking))

    def __iter__(self) -> Iterator[int]:
        return iter(self.ranking)

    def __len__(self) -> int:
        return len(self.ranking)


def identity_vote(n: int) -> Vote:
    """The vote 1 > 2 > ... > n."""
    return Vote(tuple(range(1, n + 1)))


@dataclass(frozen=True)
class Interval:
    """Inclusive stretch ``a..b`` of the candidate axis."""

    a: int
    b: int

    def __post_init__(self):
        if not 1 <= self.a <= self.b:
            raise DomainError(f"invalid interval [{self.a}, {self.b}]")

    def __len__(self) -> int:
        return self.b - self.a + 1


def is_single_peaked(vote: Vote) -> bool:
    """True iff every prefix of the ranking is a contiguous block of the axis.

    The top-ranked candidate fixes both frontiers; each later candidate must
    extend the block by exactly one on the left or on the right.
    """
    ranking = vote.ranking
    lo = hi = ranking[0]
    for c in ranking[1:]:
        if c == lo - 1:
            lo = c
        elif c == hi + 1:
            hi = c
        else:
            return False
    return True


def require_single_peaked(vote: Vote) -> None:
    if not is_single_peaked(vote):
        raise DomainError(f"vote {vote} is not single-peaked on 1..{vote.n}")


def peak_of(vote: Vote) -> int:
    require_single_peaked(vote)
    return vote.ranking[0]


def last_ranked(vote: Vote) -> int:
    return vote.ranking[-1]


def reverse_axis(vote: Vote) -> Vote:
    """Relabel candidate i as n + 1 - i."""
    n = vote.n
    return Vote(tuple(n + 1 - c for c in vote.ranking))


class Profile:
    """A multiset of votes over the candidates 1..n.

    Entries are ``(multiplicity, vote)`` pairs. Repeated votes are merged on
    construction; equality ignores entry order.
    """

    __slots__ = ("_n", "_counts")

    def __init__(self, n: int, entries: Iterable[tuple[int, Vote]] = ()):
        if n < 1:
            raise DomainError(f"candidate count must be >= 1, got {n}")
        counts: Counter[Vote] = Counter()
        for mult, vote in entries:
            if mult < 1:
                raise DomainError(f"multiplicity must be positive, got {mult}")
            if vote.n != n:
                raise DomainError(f"vote {vote} has {vote.n} candidates, profile has {n}")
            counts[vote] += mult
        self._n = n
        self._counts = dict(counts)

    @classmethod
    def from_votes(cls, n: int, votes: Iterable[Vote]) -> Profile:
        return cls(n, ((1, v) for v in votes))

    @property
    def n(self) -> int:
        return self._n

    @property
    def entries(self) -> list[tuple[int, Vote]]:
        return [(mult, vote) for vote, mult in self._counts.items()]

    @property
    def num_voters(self) -> int:
        return sum(self._counts.values())

    @property
    def num_unique(self) -> int:
        return len(self._counts)

    def multiplicity(self, vote: Vote) -> int:
        return self._counts.get(vote, 0)

    def votes(self) -> Iterator[Vote]:
        """Every vote, repeated according to its multiplicity."""
        for vote, mult in self._counts.items():
            for _ in range(mult):
                yield vote

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self._n == other._n and self._counts == other._counts

    def __hash__(self):
        return hash((self._n, frozenset(self._counts.items())))

    def __repr__(self):
        return f"Profile(n={self._n}, voters={self.num_voters}, unique={self.num_unique})"
