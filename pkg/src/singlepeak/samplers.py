"""Random single-peaked votes under the uniform and Conitzer models.

Scalar samplers draw one vote at a time from an :class:`RngState`. The bulk
functions (:func:`sample_indices`) produce the exact same votes, consuming the
exact same generator outputs, but work on numpy blocks of outputs so that
millions of votes take well under a second.
"""

from __future__ import annotations

import enum
import functools

import numpy as np

from .combinatorics import count, rank, unrank
from .domain import Interval, Profile, Vote
from .errors import DomainError
from .rng import RngState, peek_block

# votes per numpy block in the bulk samplers
CHUNK = 1 << 16
# largest n whose rank indices fit in int64
BULK_MAX_N = 63
# largest n served by the precomputed Conitzer lookup table
TABLE_MAX_N = 12


class Model(enum.Enum):
    UNIFORM = "uniform"
    CONITZER = "conitzer"

    @classmethod
    def parse(cls, name: str | Model) -> Model:
        if isinstance(name, Model):
            return name
        try:
            return cls(name.lower())
        except ValueError:
            raise DomainError(f"unknown model {name!r}") from None


def gen_single_peak(interval: Interval, rng) -> tuple[int, ...]:
    """Uniformly random single-peaked ranking of the candidates ``a..b``.

    Each toss fills the last unfilled ranking position: heads places the
    left end ``a`` and continues on ``[a+1, b]``, tails places ``b`` and
    continues on ``[a, b-1]``. The remaining candidate is the peak. Exactly
    ``b - a`` tosses are used, so every one of the ``2**(b-a)`` rankings has
    the same probability.

    ``rng`` only needs a ``coin()`` method returning 1 for heads.
    """
    a, b = interval.a, interval.b
    ranking = [0] * (b - a + 1)
    pos = b - a
    while a < b:
        if rng.coin():
            ranking[pos] = a
            a += 1
        else:
            ranking[pos] = b
            b -= 1
        pos -= 1
    ranking[0] = a
    return tuple(ranking)


def uniform_sample(n: int, rng) -> Vote:
    if n < 1:
        raise DomainError(f"candidate count must be >= 1, got {n}")
    return Vote(gen_single_peak(Interval(1, n), rng))


def conitzer_sample(n: int, rng) -> Vote:
    """Draw a peak uniformly, then grow the ranked block one neighbour at a time.

    While both sides still have candidates a coin chooses (heads = left);
    once one side is exhausted the rest is forced and uses no randomness.
    """
    if n < 1:
        raise DomainError(f"candidate count must be >= 1, got {n}")
    peak = rng.below(n) + 1
    ranking = [peak]
    lo = hi = peak
    while lo > 1 and hi < n:
        if rng.coin():
            lo -= 1
            ranking.append(lo)
        else:
            hi += 1
            ranking.append(hi)
    ranking.extend(range(lo - 1, 0, -1))
    ranking.extend(range(hi + 1, n + 1))
    return Vote(tuple(ranking))


def sample(model: Model | str, n: int, rng) -> Vote:
    model = Model.parse(model)
    if model is Model.UNIFORM:
        return uniform_sample(n, rng)
    return conitzer_sample(n, rng)


def _uniform_indices(n: int, m: int, rng: RngState) -> np.ndarray:
    out = np.empty(m, dtype=np.int64)
    k = n - 1
    weights = (np.int64(1) << np.arange(k - 1, -1, -1, dtype=np.int64)) if k else None
    done = 0
    while done < m:
        size = min(CHUNK, m - done)
        if k == 0:
            out[done:done + size] = 0
        else:
            heads = (rng.block(size * k) >> np.uint64(63)).astype(np.int64)
            bits = (1 - heads).reshape(size, k)
            out[done:done + size] = bits @ weights
        done += size
    return out


def _conitzer_scan(n: int, buf: np.ndarray):
    """Vote index and end offset for a vote starting at every buffer offset.

    Returns ``(index, end, valid)``; ``valid`` is False where the vote would
    need outputs beyond the buffer.
    """
    size = len(buf)
    reject = (1 << 64) % n
    pos = np.arange(size)
    if reject:
        accepted = buf < np.uint64((1 << 64) - reject)
        # offset of the first accepted peak draw at or after each position
        marks = np.where(accepted, pos, size)
        first = np.minimum.accumulate(marks[::-1])[::-1]
    else:
        first = pos
    valid = first < size
    q = np.minimum(first, size - 1)
    left = (buf[q] % np.uint64(n)).astype(np.int64)
    right = (n - 1) - left

    k = n - 2
    used = np.zeros(size, dtype=np.int64)
    packed = np.zeros(size, dtype=np.int64)
    last_tails = np.zeros(size, dtype=bool)
    if k > 0:
        tails = np.zeros(size + k + 1, dtype=np.int8)
        tails[:size] = (buf >> np.uint64(63)) == 0
        if reject and (first != pos).any():
            window = tails[q[:, None] + 1 + np.arange(k)]
        else:
            window = np.lib.stride_tricks.sliding_window_view(tails[1:], k)[:size]
        rights = np.cumsum(window, axis=1, dtype=np.int8)
        lefts = np.arange(1, k + 1, dtype=np.int8) - rights
        done = (lefts >= left[:, None]) | (rights >= right[:, None])
        used = np.argmax(done, axis=1) + 1
        used[(left == 0) | (right == 0)] = 0
        for t in range(k):
            packed |= window[:, t].astype(np.int64) << t
        packed &= (np.int64(1) << used) - 1
        last_tails = window[np.arange(size), np.maximum(used - 1, 0)].astype(bool)
    # after the last coin the side it did not exhaust takes every remaining slot
    forced_right = np.where(used == 0, left == 0, ~last_tails)
    tail = (np.int64(1) << np.int64(n - 1)) - (np.int64(1) << used)
    index = packed + np.where(forced_right, tail, 0)
    end = q + 1 + used
    valid &= end <= size
    return index, end, valid


class _ScriptedCoins:
    def __init__(self, bits):
        self._bits = iter(bits)
        self.used = 0

    def coin(self) -> int:
        self.used += 1
        return next(self._bits)


@functools.lru_cache(maxsize=None)
def _conitzer_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vote index and coin usage for every (peak, packed coin window) pair.

    Bit ``t`` of the window is 1 when coin ``t`` after the peak draw is tails.
    """
    k = n - 2
    index = np.empty((n, 1 << k), dtype=np.int64)
    used = np.empty((n, 1 << k), dtype=np.int64)
    for peak in range(1, n + 1):
        for w in range(1 << k):
            coins = _ScriptedCoins(1 - ((w >> t) & 1) for t in range(k))
            coins.below = lambda bound, p=peak: p - 1
            index[peak - 1, w] = rank(conitzer_sample(n, coins))
            used[peak - 1, w] = coins.used
    return index, used


def _conitzer_scan_table(n: int, buf: np.ndarray):
    """Table-driven :func:`_conitzer_scan` for small n with no rejected draws."""
    size = len(buf)
    k = n - 2
    tails = np.zeros(size + k + 1, dtype=np.int32)
    tails[:size] = (buf >> np.uint64(63)) == 0
    window = np.zeros(size, dtype=np.int32)
    for t in range(k):
        window |= tails[1 + t:1 + t + size] << t
    peak0 = (buf % np.uint64(n)).astype(np.intp)
    index_table, used_table = _conitzer_table(n)
    used = used_table[peak0, window]
    end = np.arange(1, size + 1) + used
    return index_table[peak0, window], end, end <= size


def _chain(end: np.ndarray, valid: np.ndarray, steps: int) -> np.ndarray:
    """Offsets of the first ``steps`` votes, following ``end`` from offset 0.

    Uses pointer doubling; stops early at the first vote that is not valid.
    """
    size = len(end)
    sink = size
    jump = np.append(np.where(valid, end, sink), sink)
    jump[jump > size] = sink
    pos = np.zeros(steps, dtype=np.int64)
    todo = np.arange(steps)
    while True:
        hit = (todo & 1).astype(bool)
        pos[hit] = jump[pos[hit]]
        todo >>= 1
        if not todo.any():
            break
        jump = jump[jump]
    ok = pos < size
    ok[ok] = valid[pos[ok]]
    count = steps if ok.all() else int(np.argmin(ok))
    return pos[:count]


def _conitzer_indices(n: int, m: int, rng: RngState) -> np.ndarray:
    out = np.empty(m, dtype=np.int64)
    if n == 1:
        out[:] = 0
        return out
    done = 0
    pad = n + 16
    while done < m:
        want = min(CHUNK, m - done)
        buf = peek_block(rng.state, want * (n - 1) + pad)
        reject = (1 << 64) % n
        if n <= TABLE_MAX_N and not (reject and (buf >= np.uint64((1 << 64) - reject)).any()):
            index, end, valid = _conitzer_scan_table(n, buf)
        else:
            index, end, valid = _conitzer_scan(n, buf)
        starts = _chain(end, valid, want)
        if not len(starts):
            # a run of rejected peak draws longer than the padding
            pad *= 2
            continue
        out[done:done + len(starts)] = index[starts]
        done += len(starts)
        rng.advance(int(end[starts[-1]]))
    return out


def sample_indices(model: Model | str, n: int, m: int, rng: RngState) -> np.ndarray:
    """Rank indices of ``m`` independent votes, advancing ``rng``.

    Equivalent to ``[rank(sample(model, n, rng)) for _ in range(m)]``, including
    the final generator state.
    """
    model = Model.parse(model)
    if n < 1:
        raise DomainError(f"candidate count must be >= 1, got {n}")
    if m < 0:
        raise DomainError(f"voter count must be >= 0, got {m}")
    if n > BULK_MAX_N:
        return np.array([rank(sample(model, n, rng)) for _ in range(m)], dtype=object)
    if model is Model.UNIFORM:
        return _uniform_indices(n, m, rng)
    return _conitzer_indices(n, m, rng)


def sample_profile(model: Model | str, n: int, m: int, rng: RngState) -> Profile:
    """``m`` i.i.d. votes from ``model`` merged into a profile."""
    indices = sample_indices(model, n, m, rng)
    if n <= BULK_MAX_N:
        values, counts = np.unique(indices, return_counts=True)
        pairs = zip(values.tolist(), counts.tolist())
    else:
        from collections import Counter

        pairs = sorted(Counter(indices.tolist()).items())
    return Profile(n, ((mult, unrank(n, idx)) for idx, mult in pairs))


def histogram_counts(model: Model | str, n: int, samples: int, rng: RngState) -> np.ndarray:
    """Per-index vote counts for ``samples`` draws, in unrank order."""
    if n > BULK_MAX_N:
        raise DomainError(f"histograms need n <= {BULK_MAX_N}")
    indices = sample_indices(model, n, samples, rng)
    return np.bincount(indices, minlength=count(n))
