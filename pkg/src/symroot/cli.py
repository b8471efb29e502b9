"""Command line front end: run, trace, and verify subcommands.

Exit codes: 0 converged (and the oracle, when consulted, agrees), 1 a verify
check found a counterexample, 2 the ratios did not settle (NoRealLimit,
MaxIterationsReached, DegenerateStart), 3 bad input or options, 4 converged
but on a root other than the oracle's largest real root, 5 a word engine hit
its length cap.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .counting import CountVector, count_word, iterate_counts, verify_commutation
from .errors import EngineOverflowError, NonIntegerCoefficientError, SymrootError
from .estimation import DEFAULT_MAX_ITERS, DEFAULT_TOL, ConvergenceReport, Status, estimate_root
from .polynomial import MonicPolynomial, from_coefficients, iteration_matrix, parse_polynomial
from .rewriting import (
    MINUS,
    PLUS,
    WORD_CAP_DEFAULT,
    RleWord,
    Word,
    build_rule,
    default_initial_word,
    iterate_words,
    letter,
    rewrite,
)

__all__ = ["RunConfig", "main", "cmd_run", "cmd_trace", "cmd_verify"]

_SIGNS = (PLUS, MINUS)


@dataclass
class RunConfig:
    """One invocation's worth of settings; the parser has already validated
    ranges (tol > 0, depth >= 0, exactly one polynomial source)."""

    polynomial: MonicPolynomial
    engine: str = "counts"
    max_iters: int = DEFAULT_MAX_ITERS
    tol: Fraction = DEFAULT_TOL
    out_format: str = "table"
    depth: int = 6
    samples: int = 1000
    seed: int = 1
    use_oracle: bool = True
    word_cap: int = WORD_CAP_DEFAULT


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; this CLI reserves 2 for non-convergence,
    # so option problems are remapped to 3
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be at least 0")
    return value


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _add_poly_args(sub: argparse.ArgumentParser) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly", metavar="TEXT", help='polynomial text, e.g. "x^2 - x - 1"')
    group.add_argument(
        "--coeffs",
        metavar="C0,C1,...,CM",
        help="ascending integer coefficients with the leading one equal to 1",
    )


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="symroot",
        description=(
            "Approximate the largest real root of an integer monic polynomial by "
            "iterating its letter-replacement rule and reading off count ratios."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="iterate and report convergence")
    _add_poly_args(run)
    run.add_argument("--engine", choices=("counts", "word", "rle"), default="counts")
    run.add_argument("--iters", type=_positive_int, default=DEFAULT_MAX_ITERS, metavar="N")
    run.add_argument("--tol", type=_positive_fraction, default=DEFAULT_TOL, metavar="DECIMAL")
    run.add_argument("--format", choices=("table", "json", "tsv"), default="table")
    run.add_argument("--no-oracle", action="store_true", help="skip the numeric cross-check")
    run.add_argument("--word-cap", type=_positive_int, default=WORD_CAP_DEFAULT, metavar="N")

    trace = sub.add_parser("trace", help="print the first words of the rewriting sequence")
    _add_poly_args(trace)
    trace.add_argument("--depth", type=_nonnegative_int, default=6, metavar="N")
    trace.add_argument("--engine", choices=("word", "rle"), default="word")
    trace.add_argument("--word-cap", type=_positive_int, default=WORD_CAP_DEFAULT, metavar="N")

    verify = sub.add_parser("verify", help="randomized cross-checks of the engines")
    _add_poly_args(verify)
    verify.add_argument("--samples", type=_positive_int, default=1000, metavar="N")
    verify.add_argument("--seed", type=int, default=1, metavar="N")
    verify.add_argument("--depth", type=_nonnegative_int, default=6, metavar="N")
    verify.add_argument("--word-cap", type=_positive_int, default=WORD_CAP_DEFAULT, metavar="N")

    return parser


def _polynomial_from_args(args) -> MonicPolynomial:
    if args.coeffs is not None:
        parts = [s.strip() for s in args.coeffs.split(",")]
        try:
            values = [int(s) for s in parts]
        except ValueError:
            raise NonIntegerCoefficientError(
                f"--coeffs entries must be integers, got {args.coeffs!r}"
            ) from None
        return from_coefficients(values)
    return parse_polynomial(args.poly)


def _config_from_args(args) -> RunConfig:
    config = RunConfig(polynomial=_polynomial_from_args(args))
    for name, attr in (
        ("engine", "engine"),
        ("max_iters", "iters"),
        ("tol", "tol"),
        ("out_format", "format"),
        ("depth", "depth"),
        ("samples", "samples"),
        ("seed", "seed"),
        ("word_cap", "word_cap"),
    ):
        if hasattr(args, attr):
            setattr(config, name, getattr(args, attr))
    if getattr(args, "no_oracle", False):
        config.use_oracle = False
    return config


def _float_text(value: Fraction) -> str:
    return f"{float(value):.17g}"


def _print_table(report: ConvergenceReport, engine: str) -> None:
    print(f"polynomial: {report.polynomial.render()}")
    print(f"engine: {engine}")
    print(f"{'iter':>6}  {'j':>3}  {'ratio':<24}  exact")
    for i, ests in enumerate(report.history):
        if not ests:
            print(f"{i:>6}  {'-':>3}  (no defined ratios)")
            continue
        for r in ests:
            print(f"{i:>6}  {r.j:>3}  {_float_text(r.value):<24}  {r.numerator}/{r.denominator}")
    print(f"status: {report.status.value}")
    print(f"iterations: {report.iterations_used}")
    if report.note:
        print(f"note: {report.note}")
    if report.final_estimate is not None:
        f = report.final_estimate
        print(f"final: {_float_text(f)} = {f.numerator}/{f.denominator}")
    if report.oracle_root is not None:
        print(f"oracle largest real root: {_float_text(report.oracle_root)}")
        if report.oracle_agreement is not None:
            answer = "yes" if report.oracle_agreement else "NO"
            print(
                f"oracle agreement: {answer} "
                f"(discrepancy {_float_text(report.oracle_discrepancy)})"
            )


def _print_tsv(report: ConvergenceReport) -> None:
    for i, ests in enumerate(report.history):
        for r in ests:
            print(f"{i}\t{r.j}\t{r.numerator}\t{r.denominator}\t{_float_text(r.value)}")


def cmd_run(config: RunConfig) -> int:
    try:
        report = estimate_root(
            config.polynomial,
            max_iters=config.max_iters,
            tol=config.tol,
            engine=config.engine,
            compare_oracle=config.use_oracle,
            word_cap=config.word_cap,
        )
    except EngineOverflowError as e:
        print(f"error: {e}", file=sys.stderr)
        return 5
    if config.out_format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    elif config.out_format == "tsv":
        _print_tsv(report)
    else:
        _print_table(report, config.engine)
    if report.status is Status.CONVERGED:
        return 4 if report.oracle_agreement is False else 0
    return 2


def _trace_line(w, m: int) -> str:
    counts = count_word(w, m)
    return f"{w.render()}  n=({', '.join(str(x) for x in counts.n)})"


def cmd_trace(config: RunConfig) -> int:
    p = config.polynomial
    rule = build_rule(p)
    w0 = default_initial_word()
    if config.engine == "rle":
        w0 = RleWord.compress(w0)
    try:
        words = iterate_words(rule, w0, config.depth, cap=config.word_cap)
    except EngineOverflowError as e:
        for w in e.partial:
            print(_trace_line(w, p.degree))
        print(f"error: overflow at depth {e.depth}: {e}", file=sys.stderr)
        return 5
    for w in words:
        print(_trace_line(w, p.degree))
    return 0


def cmd_verify(config: RunConfig) -> int:
    p = config.polynomial
    rule = build_rule(p)
    m = p.degree
    rng = random.Random(config.seed)
    print(f"polynomial: {p.render()}")
    print(f"samples: {config.samples}  seed: {config.seed}")
    for i in range(config.samples):
        length = rng.randint(0, 50)
        w = Word(tuple(letter(rng.randint(1, m), rng.choice(_SIGNS)) for _ in range(length)))
        if not verify_commutation(rule, w, cap=config.word_cap):
            print("FAIL: counting does not commute with rewriting")
            print(f"counterexample (sample {i}): {w.render()}")
            print(f"n(W) = {count_word(w, m).n}")
            print(f"n(rewrite(W)) = {count_word(rewrite(rule, w, cap=config.word_cap), m).n}")
            return 1
    print(f"commutation: {config.samples}/{config.samples} exact")

    words = iterate_words(rule, default_initial_word(), config.depth, cap=config.word_cap)
    rles = iterate_words(rule, RleWord.compress(default_initial_word()), config.depth, cap=config.word_cap)
    counts = iterate_counts(iteration_matrix(p), CountVector.unit(m), config.depth)
    for k in range(config.depth + 1):
        cw = count_word(words[k], m)
        cr = count_word(rles[k], m)
        if cw != counts[k] or cr != counts[k]:
            print(f"FAIL: engine mismatch at depth {k}")
            print(f"word engine:   {cw.n}")
            print(f"rle engine:    {cr.n}")
            print(f"counts engine: {counts[k].n}")
            return 1
    print(f"engines: word, rle, counts identical through depth {config.depth}")
    print("PASS")
    return 0


def _glue_coeff_values(argv: list[str]) -> list[str]:
    # argparse reads a bare "-1,-1,1" as an unknown flag, so fold values that
    # look like negative-led coefficient lists into --coeffs=... form
    glued = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok == "--coeffs" and nxt[:1] == "-" and nxt[1:2].isdigit():
            glued.append(f"--coeffs={nxt}")
            i += 2
            continue
        glued.append(tok)
        i += 1
    return glued


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_glue_coeff_values(list(argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 3
    try:
        config = _config_from_args(args)
        if args.command == "run":
            return cmd_run(config)
        if args.command == "trace":
            return cmd_trace(config)
        return cmd_verify(config)
    except EngineOverflowError as e:
        print(f"error: {e}", file=sys.stderr)
        return 5
    except SymrootError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
