"""PrefLib-style SOC files and plain CSV vote lists.

SOC layout::

    # NUMBER ALTERNATIVES: 3
    # NUMBER VOTERS: 3
    # NUMBER UNIQUE ORDERS: 2
    2: 1,2,3
    1: 2,1,3

Body lines are sorted by descending multiplicity, then ascending rank index;
votes that are not single-peaked come after the single-peaked ones with the
same multiplicity, in lexicographic order.
"""

from __future__ import annotations

import os
from typing import IO, Union

from .combinatorics import rank
from .domain import Profile, Vote, is_single_peaked
from .errors import DomainError, SocFormatError

Destination = Union[str, os.PathLike, IO[str]]

ALTERNATIVES = "NUMBER ALTERNATIVES"
VOTERS = "NUMBER VOTERS"
UNIQUE = "NUMBER UNIQUE ORDERS"
_HEADERS = (ALTERNATIVES, VOTERS, UNIQUE)


def _sort_key(entry: tuple[int, Vote]):
    mult, vote = entry
    if is_single_peaked(vote):
        return (-mult, 0, rank(vote), ())
    return (-mult, 1, 0, vote.ranking)


def sorted_entries(profile: Profile) -> list[tuple[int, Vote]]:
    return sorted(profile.entries, key=_sort_key)


def format_soc(profile: Profile) -> str:
    lines = [
        f"# {ALTERNATIVES}: {profile.n}",
        f"# {VOTERS}: {profile.num_voters}",
        f"# {UNIQUE}: {profile.num_unique}",
    ]
    for mult, vote in sorted_entries(profile):
        lines.append(f"{mult}: {','.join(map(str, vote.ranking))}")
    return "\n".join(lines) + "\n"


def format_csv(profile: Profile) -> str:
    """One vote string per line, repeated by multiplicity, in SOC order."""
    lines = []
    for mult, vote in sorted_entries(profile):
        lines.extend([str(vote)] * mult)
    return "".join(line + "\n" for line in lines)


def _write(text: str, destination: Destination) -> int:
    data = text.encode("utf-8")
    if hasattr(destination, "write"):
        destination.write(text)
        return len(data)
    path = os.fspath(destination)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc
    return len(data)


def write_soc(profile: Profile, destination: Destination) -> int:
    """Serialize ``profile``; returns the number of bytes written."""
    return _write(format_soc(profile), destination)


def write_csv(profile: Profile, destination: Destination) -> int:
    return _write(format_csv(profile), destination)


def _parse_int(text: str, what: str, lineno: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise SocFormatError(f"{what} is not an integer: {text.strip()!r}", lineno) from None


def parse_soc(text: str) -> Profile:
    headers: dict[str, int] = {}
    entries: list[tuple[int, Vote]] = []
    seen: set[Vote] = set()
    lines = text.splitlines()
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        body = lines[i][1:].strip()
        key, sep, value = body.partition(":")
        if sep and key.strip().upper() in _HEADERS:
            name = key.strip().upper()
            if name in headers:
                raise SocFormatError(f"duplicate header '# {name}'", i + 1)
            headers[name] = _parse_int(value, f"header '# {name}'", i + 1)
        i += 1
    for name in _HEADERS:
        if name not in headers:
            raise SocFormatError(f"missing header '# {name}'")
    n = headers[ALTERNATIVES]
    if n < 1:
        raise SocFormatError(f"'# {ALTERNATIVES}' must be >= 1, got {n}")
    for lineno, line in enumerate(lines[i:], start=i + 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            raise SocFormatError("comment line after the body started", lineno)
        mult_text, sep, order_text = line.partition(":")
        if not sep:
            raise SocFormatError(f"expected '<count>: <order>', got {line!r}", lineno)
        mult = _parse_int(mult_text, "multiplicity", lineno)
        if mult < 1:
            raise SocFormatError(f"multiplicity must be positive, got {mult}", lineno)
        ranking = tuple(_parse_int(c, "candidate", lineno) for c in order_text.split(","))
        if len(ranking) != n:
            raise DomainError(
                f"line {lineno}: order ranks {len(ranking)} candidates, header says {n}"
            )
        try:
            vote = Vote(ranking)
        except DomainError as exc:
            raise DomainError(f"line {lineno}: {exc}") from None
        if vote in seen:
            raise DomainError(f"line {lineno}: order {vote} listed twice")
        seen.add(vote)
        entries.append((mult, vote))
    profile = Profile(n, entries)
    if profile.num_voters != headers[VOTERS]:
        raise DomainError(
            f"'# {VOTERS}' says {headers[VOTERS]}, body has {profile.num_voters}"
        )
    if profile.num_unique != headers[UNIQUE]:
        raise DomainError(
            f"'# {UNIQUE}' says {headers[UNIQUE]}, body has {profile.num_unique}"
        )
    return profile


def read_soc(source: Destination) -> Profile:
    """Parse a SOC document from a path or an open text stream."""
    if hasattr(source, "read"):
        return parse_soc(source.read())
    path = os.fspath(source)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OSError(exc.errno, f"cannot read {path}: {exc.strerror}") from exc
    return parse_soc(text)

