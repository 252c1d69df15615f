"""Counting, enumeration and the rank/unrank bijection for single-peaked votes.

A single-peaked vote on 1..n is identified by an (n-1)-bit toggle code. Read
MSB first, bit ``i`` says which end of the remaining interval is removed and
placed at ranking position ``n - i + 1``: 0 removes the left end, 1 the right
end. The candidate left over is the peak. Index 0 is therefore ``n > ... > 1``
and index ``2**(n-1) - 1`` is ``1 > ... > n``.
"""

from __future__ import annotations

from math import comb
from typing import Iterator

from .domain import Vote, is_single_peaked
from .errors import DomainError, SizeError

DEFAULT_CAP = 1 << 20


def _check_n(n: int) -> None:
    if n < 1:
        raise DomainError(f"candidate count must be >= 1, got {n}")


def count(n: int) -> int:
    """Number of single-peaked votes over n candidates, ``2**(n-1)``."""
    _check_n(n)
    return 1 << (n - 1)


def count_with_peak(n: int, p: int) -> int:
    """Number of single-peaked votes whose top candidate is ``p``."""
    _check_n(n)
    if not 1 <= p <= n:
        raise DomainError(f"peak {p} out of range 1..{n}")
    return comb(n - 1, p - 1)


def check_cap(n: int, cap: int | None = DEFAULT_CAP) -> int:
    """Return ``count(n)``, raising :class:`SizeError` if it exceeds ``cap``."""
    total = count(n)
    if cap is not None and total > cap:
        raise SizeError(total, cap)
    return total


def unrank(n: int, index: int) -> Vote:
    total = count(n)
    if not 0 <= index < total:
        raise DomainError(f"index {index} out of range [0, {total})")
    ranking = [0] * n
    lo, hi = 1, n
    for pos in range(n - 1, 0, -1):
        if (index >> (pos - 1)) & 1:
            ranking[pos] = hi
            hi -= 1
        else:
            ranking[pos] = lo
            lo += 1
    ranking[0] = lo
    return Vote(tuple(ranking))


def rank(vote: Vote) -> int:
    if not is_single_peaked(vote):
        raise DomainError(f"vote {vote} is not single-peaked on 1..{vote.n}")
    ranking = vote.ranking
    n = len(ranking)
    lo, hi = 1, n
    index = 0
    for pos in range(n - 1, 0, -1):
        index <<= 1
        if ranking[pos] == lo:
            lo += 1
        else:
            index |= 1
            hi -= 1
    return index


def iter_votes(n: int) -> Iterator[Vote]:
    """Lazily yield every single-peaked vote in unrank order (no cap)."""
    for index in range(count(n)):
        yield unrank(n, index)


def enumerate_votes(n: int, cap: int | None = DEFAULT_CAP) -> list[Vote]:
    """All single-peaked votes over 1..n in unrank order."""
    check_cap(n, cap)
    return list(iter_votes(n))
