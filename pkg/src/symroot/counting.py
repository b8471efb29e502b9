"""Count vectors and the exact matrix picture of rewriting.

The count of a word is n_j = (number of j+ letters) - (number of j- letters).
One rewrite step acts on counts as the fixed integer matrix built by
polynomial.iteration_matrix, and verify_commutation checks that identity on
concrete words with exact integer equality. All arithmetic is arbitrary
precision; entries grow geometrically with iteration depth and that is fine.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import DimensionMismatchError, IndexOutOfRangeError, NonIntegerCoefficientError
from .polynomial import IterationMatrix, iteration_matrix
from .rewriting import WORD_CAP_DEFAULT, ReplacementRule, RleWord, rewrite

__all__ = [
    "CountVector",
    "count_word",
    "step_counts",
    "iterate_counts",
    "verify_commutation",
]


@dataclass(frozen=True)
class CountVector:
    """m exact signed letter counts."""

    n: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(self.n)
        if not values:
            raise DimensionMismatchError("count vector needs at least one entry")
        for i, v in enumerate(values, start=1):
            if isinstance(v, bool) or not isinstance(v, int):
                raise NonIntegerCoefficientError(f"n[{i}] = {v!r} is not an exact integer")
        object.__setattr__(self, "n", values)

    @property
    def m(self) -> int:
        return len(self.n)

    @classmethod
    def zero(cls, m: int) -> "CountVector":
        return cls((0,) * m)

    @classmethod
    def unit(cls, m: int, j: int = 1) -> "CountVector":
        """e_j, 1-based; the default e_1 is the count of the word "1+"."""
        if not 1 <= j <= m:
            raise DimensionMismatchError(f"unit index {j} outside 1..{m}")
        return cls(tuple(1 if k == j - 1 else 0 for k in range(m)))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.n)

    def __add__(self, other: "CountVector") -> "CountVector":
        if self.m != other.m:
            raise DimensionMismatchError(f"cannot add lengths {self.m} and {other.m}")
        return CountVector(tuple(x + y for x, y in zip(self.n, other.n)))

    def __neg__(self) -> "CountVector":
        return CountVector(tuple(-x for x in self.n))

    def scaled(self, c: int) -> "CountVector":
        return CountVector(tuple(c * x for x in self.n))


def count_word(w, m: int) -> CountVector:
    """Letter counts of a Word or RleWord; RLE input is never expanded."""
    if isinstance(w, RleWord):
        pairs = list(w.runs)
    else:
        pairs = list(Counter(w.letters).items())
    n = [0] * m
    for l, k in pairs:
        if l.index > m:
            raise IndexOutOfRangeError(f"letter {l} does not fit m = {m}")
        n[l.index - 1] += l.sign * k
    return CountVector(tuple(n))


def step_counts(M: IterationMatrix, v: CountVector) -> CountVector:
    """Exact matrix action of one rewrite step on a count vector.

    Row 1 is read in full; rows 2..m are read only at their two stored
    band entries (columns i-1 and i), the sparsity iteration matrices
    actually have. Cost is O(m) big-integer operations.
    """
    if M.m != v.m:
        raise DimensionMismatchError(f"matrix is {M.m}x{M.m}, vector has {v.m} entries")
    e = M.entries
    n = v.n
    first = sum(e[0][j] * n[j] for j in range(M.m))
    rest = (e[i][i - 1] * n[i - 1] + e[i][i] * n[i] for i in range(1, M.m))
    return CountVector((first, *rest))


def iterate_counts(M: IterationMatrix, v0: CountVector, max_i: int):
    """v_0 .. v_max_i under repeated step_counts, all exact."""
    if max_i < 0:
        raise ValueError("iteration count must be nonnegative")
    out = [v0]
    for _ in range(max_i):
        out.append(step_counts(M, out[-1]))
    return tuple(out)


def verify_commutation(rule: ReplacementRule, w, cap: int = WORD_CAP_DEFAULT) -> bool:
    """Check count(rewrite(w)) == matrix_step(count(w)), exactly.

    True for every word when the rule and matrix come from the same
    polynomial; the literal rewrite side is the independent oracle here.
    """
    m = rule.m
    lhs = count_word(rewrite(rule, w, cap=cap), m)
    rhs = step_counts(iteration_matrix(rule.polynomial), count_word(w, m))
    return lhs == rhs
