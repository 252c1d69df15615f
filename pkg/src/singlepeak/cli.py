"""Command-line interface.

Exit codes follow sysexits: 64 usage, 65 bad data, 74 I/O. ``gof`` exits 2
when the test rejects.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .combinatorics import DEFAULT_CAP, check_cap, iter_votes, rank, unrank
from .domain import Vote
from .errors import DomainError, SinglePeakError
from .probability import full_pmf, pmf_value
from .rng import MASK64, RngState
from .samplers import Model, sample_profile
from .stats import DEFAULT_ALPHA, chi_square, collect, cross_model_report

EX_USAGE = 64
EX_DATAERR = 65
EX_IOERR = 74
EX_GOF_FAIL = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _model(text: str) -> Model:
    try:
        return Model.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="singlepeak", description="Single-peaked vote generation and analysis.")
    parser.add_argument(
        "--max-votes", type=int, default=DEFAULT_CAP,
        help=f"enumeration cap (default {DEFAULT_CAP})",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="sample a profile")
    p.add_argument("--model", type=_model, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--seed", type=_seed, help="required unless -m is 0")
    p.add_argument("--format", choices=("soc", "csv"), default="soc")
    p.add_argument("--out")

    p = sub.add_parser("enumerate", help="list every single-peaked vote in rank order")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--pmf", type=_model, dest="pmf_model")

    p = sub.add_parser("pmf", help="exact mass of one vote")
    p.add_argument("--model", type=_model, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--vote", required=True)

    p = sub.add_parser("rank", help="index of a vote")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--vote", required=True)

    p = sub.add_parser("unrank", help="vote at an index")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--index", type=int, required=True)

    p = sub.add_parser("gof", help="chi-square test of a sampler against a model")
    p.add_argument("--model", type=_model, required=True)
    p.add_argument("--against", type=_model, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)

    p = sub.add_parser("report", help="compare both models")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    return parser


def _parse_vote(text: str, n: int) -> Vote:
    vote = Vote.parse(text)
    if vote.n != n:
        raise DomainError(f"vote {vote} has {vote.n} candidates, expected {n}")
    return vote


def _frac(p) -> str:
    return f"{p.numerator}/{p.denominator}"


def _run(args, out) -> int:
    cap = args.max_votes
    if args.command == "sample":
        profile = sample_profile(args.model, args.n, args.m, RngState(args.seed or 0))
        writer = formats.write_soc if args.format == "soc" else formats.write_csv
        if args.out:
            writer(profile, args.out)
        else:
            writer(profile, out)
    elif args.command == "enumerate":
        check_cap(args.n, cap)
        if args.pmf_model is None:
            for vote in iter_votes(args.n):
                out.write(f"{vote}\n")
        else:
            pmf = full_pmf(args.pmf_model, args.n, cap)
            for vote, mass in zip(iter_votes(args.n), pmf.masses):
                out.write(f"{vote} {_frac(mass)}\n")
    elif args.command == "pmf":
        mass = pmf_value(args.model, args.n, _parse_vote(args.vote, args.n))
        out.write(f"{_frac(mass)} {float(mass)!r}\n")
    elif args.command == "rank":
        out.write(f"{rank(_parse_vote(args.vote, args.n))}\n")
    elif args.command == "unrank":
        out.write(f"{unrank(args.n, args.index)}\n")
    elif args.command == "gof":
        hist = collect(args.model, args.n, args.samples, args.seed, cap)
        report = chi_square(hist, full_pmf(args.against, args.n, cap), args.alpha)
        out.write(f"model={args.model.value}\nagainst={args.against.value}\n")
        out.write("".join(line + "\n" for line in report.lines(args.n)))
        return 0 if report.passed else EX_GOF_FAIL
    elif args.command == "report":
        out.write(cross_model_report(args.n, args.samples, args.seed, args.alpha, cap))
    return 0


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EX_USAGE
    except SystemExit as exc:
        # --help
        return exc.code or 0
    if args.command == "sample" and args.seed is None and args.m != 0:
        err.write("singlepeak sample: error: --seed is required when -m is not 0\n")
        return EX_USAGE
    try:
        return _run(args, out)
    except (SinglePeakError, DomainError) as exc:
        err.write(f"singlepeak: {exc}\n")
        return EX_DATAERR
    except OSError as exc:
        err.write(f"singlepeak: {exc}\n")
        return EX_IOERR


if __name__ == "__main__":
    sys.exit(main())
