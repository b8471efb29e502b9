"""Root estimates from count ratios, convergence calls, and diagnostics.

When the count-vector direction settles, it settles onto a geometric profile
(r^(m-1), ..., r, 1), so every consecutive-entry ratio estimates the same
number r, a root of the polynomial. Everything here compares exact rationals;
floats appear only in rendered output. An independent sign-scan plus
bisection oracle cross-checks which real root, if any, the ratios landed on,
because the dominant direction can belong to a root other than the largest
real one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .counting import CountVector, count_word, step_counts
from .errors import (
    DegreeTooSmallError,
    DimensionMismatchError,
    EngineOverflowError,
)
from .polynomial import MonicPolynomial, iteration_matrix
from .rewriting import (
    MINUS,
    PLUS,
    WORD_CAP_DEFAULT,
    RleWord,
    Word,
    build_rule,
    default_initial_word,
    letter,
    rewrite,
)

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITERS",
    "Status",
    "RatioEstimate",
    "ConvergenceReport",
    "ratio_estimates",
    "estimate_root",
    "oracle_largest_real_root",
    "eigenvector_profile_check",
]

DEFAULT_TOL = Fraction(1, 10**12)
DEFAULT_MAX_ITERS = 256

_ENGINES = ("counts", "word", "rle")
_WINDOW = 8        # trailing iterations examined when the cap is reached
_WINDOW_SLACK = 10  # changes above _WINDOW_SLACK * tol in that window mean "not settling"


class Status(str, Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS_REACHED = "MaxIterationsReached"
    DEGENERATE_START = "DegenerateStart"
    NO_REAL_LIMIT = "NoRealLimit"


@dataclass(frozen=True)
class RatioEstimate:
    """n_j / n_(j+1) at one iteration, kept unreduced; denominator never zero."""

    j: int
    numerator: int
    denominator: int
    iteration: int

    def __post_init__(self) -> None:
        if self.denominator == 0:
            raise ZeroDivisionError("estimates with zero denominator are never constructed")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True)
class ConvergenceReport:
    """Everything one estimate_root run decided and saw along the way."""

    polynomial: MonicPolynomial
    status: Status
    iterations_used: int
    history: tuple[tuple[RatioEstimate, ...], ...]
    final_estimate: Fraction | None
    oracle_root: Fraction | None
    oracle_agreement: bool | None
    oracle_discrepancy: Fraction | None
    note: str | None

    def to_json_dict(self) -> dict:
        """Stable JSON shape; integers that may exceed doubles go as strings."""
        final = None
        if self.final_estimate is not None:
            final = {
                "num": str(self.final_estimate.numerator),
                "den": str(self.final_estimate.denominator),
                "float": float(self.final_estimate),
            }
        oracle = None
        if self.oracle_root is not None and self.oracle_agreement is not None:
            oracle = {"float": float(self.oracle_root), "agrees": self.oracle_agreement}
        return {
            "polynomial": {
                "degree": self.polynomial.degree,
                "a": [str(v) for v in self.polynomial.a],
            },
            "status": self.status.value,
            "iterations": self.iterations_used,
            "final": final,
            "oracle": oracle,
            "history": [
                {
                    "iter": i,
                    "ratios": [
                        {"j": r.j, "num": str(r.numerator), "den": str(r.denominator)}
                        for r in ests
                    ],
                }
                for i, ests in enumerate(self.history)
            ],
        }


def ratio_estimates(v: CountVector, iteration: int = 0) -> list[RatioEstimate]:
    """One estimate per adjacent index pair with a nonzero denominator.

    Zero denominators are transient early on (e.g. an e_1 start), so those
    j are skipped rather than treated as errors.
    """
    if v.m < 2:
        raise DegreeTooSmallError(
            "ratios need degree >= 2; a degree 1 polynomial shows its root directly"
        )
    out = []
    for j in range(1, v.m):
        den = v.n[j]
        if den != 0:
            out.append(RatioEstimate(j=j, numerator=v.n[j - 1], denominator=den, iteration=iteration))
    return out


def _settled(prev, cur, m: int, tol: Fraction) -> bool:
    # converged means: both of the last two iterations carry all m-1 ratios,
    # the ratios agree pairwise within tol at each iteration, and no ratio
    # moved by more than tol between the two
    want = m - 1
    if prev is None or len(prev) != want or len(cur) != want:
        return False
    for ests in (prev, cur):
        for x in ests:
            for y in ests:
                if abs(x.value - y.value) > tol:
                    return False
    for x, y in zip(prev, cur):
        if abs(x.value - y.value) > tol:
            return False
    return True


def _direction(v: CountVector) -> tuple[int, ...]:
    # canonical projective form: divide by the gcd, make the first nonzero
    # entry positive; exact revisits of a direction make the future an exact
    # replay of the past
    g = 0
    for x in v.n:
        g = math.gcd(g, abs(x))
    lead = next(x for x in v.n if x != 0)
    s = 1 if lead > 0 else -1
    return tuple((x // g) * s for x in v.n)


def _window_rules_out_limit(history, m: int, tol: Fraction) -> bool:
    # examined only when max_iters was exhausted; decides NoRealLimit versus
    # the honest "ran out of budget" answer
    window = list(history[-_WINDOW:])
    want = m - 1
    complete = [len(ests) == want for ests in window]
    if not any(complete):
        return True  # ratios still undefined this deep in
    first = complete.index(True)
    if not all(complete[first:]):
        return True  # zero denominators keep coming back, not an early transient
    tail = window[first:]
    if len(tail) < 2:
        return False
    for j_pos in range(want):
        values = [ests[j_pos].value for ests in tail]
        if any(v > 0 for v in values) and any(v < 0 for v in values):
            return True  # the ratio itself keeps flipping sign
        diffs = [abs(b - a) for a, b in zip(values, values[1:])]
        # large steps that are not shrinking any more mean oscillation, while
        # large but net-contracting steps just mean the budget was too small
        if any(d > _WINDOW_SLACK * tol for d in diffs) and diffs[-1] > diffs[0]:
            return True
    return False


def _word_from_counts(v: CountVector) -> Word:
    out = []
    for j, x in enumerate(v.n, start=1):
        if x != 0:
            out.extend([letter(j, PLUS if x > 0 else MINUS)] * abs(x))
    return Word(tuple(out))


def estimate_root(
    p: MonicPolynomial,
    *,
    initial: CountVector | None = None,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol=DEFAULT_TOL,
    engine: str = "counts",
    compare_oracle: bool = True,
    oracle_precision=None,
    word_cap: int = WORD_CAP_DEFAULT,
) -> ConvergenceReport:
    """Iterate the count map and read the root off the settling ratios.

    The word and rle engines rewrite an actual word each step and count it;
    the counts engine applies the iteration matrix directly. All three see
    identical count vectors while the word engines stay under their cap.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not isinstance(max_iters, int) or isinstance(max_iters, bool) or max_iters < 1:
        raise ValueError(f"max_iters must be a positive integer, got {max_iters!r}")
    if engine not in _ENGINES:
        raise ValueError(f"engine must be one of {_ENGINES}, got {engine!r}")
    if initial is not None and initial.m != p.degree:
        raise DimensionMismatchError(
            f"initial vector has {initial.m} entries, polynomial degree is {p.degree}"
        )
    prec = Fraction(oracle_precision) if oracle_precision is not None else tol
    if prec <= 0:
        raise ValueError("oracle precision must be positive")

    if p.degree == 1:
        # no adjacent pair exists, but no iteration is needed either:
        # the root is a_1 exactly
        root = Fraction(p.a[0])
        oracle_root = agreement = discrepancy = None
        if compare_oracle:
            oracle_root = oracle_largest_real_root(p, prec)
            if oracle_root is not None:
                discrepancy = abs(root - oracle_root)
                agreement = discrepancy <= 2 * tol + 2 * prec
        return ConvergenceReport(
            polynomial=p,
            status=Status.CONVERGED,
            iterations_used=0,
            history=((),),
            final_estimate=root,
            oracle_root=oracle_root,
            oracle_agreement=agreement,
            oracle_discrepancy=discrepancy,
            note="degree 1: the root equals a_1 exactly; no ratio iteration needed",
        )

    matrix = rule = word = None
    if engine == "counts":
        matrix = iteration_matrix(p)
        v = initial if initial is not None else CountVector.unit(p.degree)
    else:
        rule = build_rule(p)
        word = _word_from_counts(initial) if initial is not None else default_initial_word()
        if engine == "rle":
            word = RleWord.compress(word)
        v = count_word(word, p.degree)

    history: list[tuple[RatioEstimate, ...]] = []
    directions: dict[tuple[int, ...], int] = {}
    est_prev: tuple[RatioEstimate, ...] | None = None
    status: Status
    iterations_used: int

    k = 0
    while True:
        ests = tuple(ratio_estimates(v, iteration=k))
        history.append(ests)

        if v.is_zero():
            status, iterations_used = Status.DEGENERATE_START, k
            break
        if k >= 1 and _settled(est_prev, ests, p.degree, tol):
            status, iterations_used = Status.CONVERGED, k
            break
        first_seen = directions.setdefault(_direction(v), k)
        if k - first_seen >= 2:
            # the direction sequence is exactly periodic, so the ratios can
            # never settle; calling it now saves waiting out max_iters
            status, iterations_used = Status.NO_REAL_LIMIT, k
            break
        if k == max_iters:
            iterations_used = max_iters
            if _window_rules_out_limit(history, p.degree, tol):
                status = Status.NO_REAL_LIMIT
            else:
                status = Status.MAX_ITERATIONS_REACHED
            break

        est_prev = ests
        k += 1
        if engine == "counts":
            v = step_counts(matrix, v)
        else:
            try:
                word = rewrite(rule, word, cap=word_cap)
            except EngineOverflowError as e:
                raise EngineOverflowError(
                    f"{engine} engine at iteration {k}: {e}", depth=k
                ) from None
            v = count_word(word, p.degree)

    final = None
    oracle_root = agreement = discrepancy = None
    if status is Status.CONVERGED:
        final = next(r.value for r in history[-1] if r.j == 1)
        if compare_oracle:
            oracle_root = oracle_largest_real_root(p, prec)
            if oracle_root is not None:
                discrepancy = abs(final - oracle_root)
                agreement = discrepancy <= 2 * tol + 2 * prec
    return ConvergenceReport(
        polynomial=p,
        status=status,
        iterations_used=iterations_used,
        history=tuple(history),
        final_estimate=final,
        oracle_root=oracle_root,
        oracle_agreement=agreement,
        oracle_discrepancy=discrepancy,
        note=None,
    )


_GRID_CELLS = 8192


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def oracle_largest_real_root(p: MonicPolynomial, precision) -> Fraction | None:
    """Largest real root by exact-rational sign scan plus bisection, or None.

    Scans [-B, B] for the coefficient bound B = 1 + max |c_k| (every root
    lies strictly inside), takes the rightmost sign change on the grid, and
    bisects it down to a half-width of `precision`. Roots of even
    multiplicity to the right of the last sign change do not flip the sign
    and are missed; that limitation is documented and accepted.
    """
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    if p.degree == 1:
        return Fraction(p.a[0])
    coeffs = p.coefficients()
    bound = 1 + max(abs(c) for c in coeffs[:-1])
    step = Fraction(2 * bound, _GRID_CELLS)

    exact: Fraction | None = None
    bracket: tuple[Fraction, Fraction] | None = None
    prev_x = Fraction(-bound)
    prev_sign = _sign(p.eval_at(prev_x))
    if prev_sign == 0:
        exact = prev_x
    for t in range(1, _GRID_CELLS + 1):
        x = Fraction(-bound) + step * t
        s = _sign(p.eval_at(x))
        if s == 0:
            exact = x
        elif prev_sign != 0 and s != prev_sign:
            bracket = (prev_x, x)
        prev_x, prev_sign = x, s

    if bracket is None:
        return exact
    if exact is not None and exact > bracket[1]:
        return exact
    lo, hi = bracket
    flo = p.eval_at(lo)
    while hi - lo > 2 * precision:
        mid = (lo + hi) / 2
        fm = p.eval_at(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def eigenvector_profile_check(p: MonicPolynomial, v: CountVector, tol) -> bool:
    """True iff v looks geometric: all consecutive ratios pairwise within tol.

    A vector proportional to (r^(m-1), ..., r, 1) passes with tol 0; a
    vector with any zero among entries 2..m cannot be of that shape and
    fails outright.
    """
    if p.degree < 2:
        raise DegreeTooSmallError("profile check needs degree >= 2")
    if v.m != p.degree:
        raise DimensionMismatchError(
            f"vector has {v.m} entries, polynomial degree is {p.degree}"
        )
    if v.is_zero():
        raise ValueError("profile check needs a nonzero vector")
    tol = Fraction(tol)
    ests = ratio_estimates(v)
    if len(ests) != p.degree - 1:
        return False
    return all(abs(x.value - y.value) <= tol for x in ests for y in ests)
