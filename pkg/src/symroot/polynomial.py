"""Exact integer monic polynomials and their iteration matrices.

Everything downstream works with the form p(x) = x^m - a_1 x^(m-1) - ... - a_m.
Users hand in ordinary polynomial text or an ascending coefficient list; the
sign flip into the a_i happens exactly once, here, so no other module ever
touches coefficient sign conventions.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    NonIntegerCoefficientError,
    NotMonicError,
    PolynomialSyntaxError,
    ZeroDegreeError,
)

__all__ = [
    "MonicPolynomial",
    "IterationMatrix",
    "parse_polynomial",
    "from_coefficients",
    "iteration_matrix",
    "companion_matrix",
]


def _exact_int(value, context: str) -> int:
    # bool is an int subclass; a True coefficient is almost surely a bug
    if isinstance(value, bool):
        raise NonIntegerCoefficientError(f"{context} = {value!r} is not an exact integer")
    try:
        return operator.index(value)
    except TypeError:
        raise NonIntegerCoefficientError(f"{context} = {value!r} is not an exact integer") from None


@dataclass(frozen=True)
class MonicPolynomial:
    """p(x) = x^m - a_1 x^(m-1) - ... - a_m with exact integer a_i.

    Note the built-in minus signs: a=(1, 1) is x^2 - x - 1, while
    x^2 + 3x + 1 has a=(-3, -1).
    """

    a: tuple[int, ...]

    def __post_init__(self) -> None:
        coerced = tuple(
            _exact_int(value, f"a[{i}]") for i, value in enumerate(self.a, start=1)
        )
        if not coerced:
            raise ZeroDegreeError("degree must be at least 1")
        object.__setattr__(self, "a", coerced)

    @property
    def degree(self) -> int:
        return len(self.a)

    def coefficients(self) -> tuple[int, ...]:
        """Ascending standard coefficients (c_0, ..., c_m) with c_m = 1."""
        m = self.degree
        return tuple(-self.a[m - 1 - k] for k in range(m)) + (1,)

    def eval_at(self, x):
        """Evaluate p at x exactly by Horner; int or Fraction in, same out."""
        value = 1
        for coeff in self.a:
            value = value * x - coeff
        return value

    def render(self) -> str:
        """Canonical text form, e.g. "x^3 - 2x - 5"; parses back to self."""
        m = self.degree
        parts = [_power_text(m)]
        for k in range(m - 1, -1, -1):
            c = -self.a[m - 1 - k]
            if c == 0:
                continue
            sign = " - " if c < 0 else " + "
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                term = ("" if mag == 1 else str(mag)) + _power_text(k)
            parts.append(sign + term)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()


def _power_text(k: int) -> str:
    return "x" if k == 1 else f"x^{k}"


@dataclass(frozen=True)
class IterationMatrix:
    """Square exact-integer matrix acting on count vectors.

    Only shape and integrality are enforced by the type. The
    identity-plus-companion layout is a guarantee of iteration_matrix(),
    not of the type, so tests can build deliberately broken matrices for
    harness sanity checks.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(
            tuple(_exact_int(v, f"entries[{i}][{j}]") for j, v in enumerate(row))
            for i, row in enumerate(self.entries)
        )
        if not rows:
            raise EmptyInputError("matrix has no rows")
        if any(len(row) != len(rows) for row in rows):
            raise DimensionMismatchError(
                f"matrix must be square; got {len(rows)} rows of lengths "
                f"{[len(row) for row in rows]}"
            )
        object.__setattr__(self, "entries", rows)

    @property
    def m(self) -> int:
        return len(self.entries)


def parse_polynomial(text: str) -> MonicPolynomial:
    """Parse text like "x^3 - 2x - 5" into a MonicPolynomial.

    Grammar: a sum of integer-coefficient monomials in the single variable x.
    Whitespace is ignored, `*` between coefficient and variable is optional,
    exponents are nonnegative decimal integers, and repeated powers are
    summed. One leading sign is allowed. The fully expanded coefficient of
    the highest power must be exactly 1.

    Raises PolynomialSyntaxError (with the byte offset of the offending
    character), NotMonicError, or ZeroDegreeError.
    """
    coeffs: dict[int, int] = {}
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def read_uint() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise PolynomialSyntaxError("expected an unsigned integer", start)
        return int(text[start:pos])

    def read_term(sign: int) -> None:
        nonlocal pos
        coef = 1
        power = 0
        have_coef = False
        if pos < n and text[pos].isdigit():
            coef = read_uint()
            have_coef = True
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                skip_ws()
                if pos >= n or text[pos] != "x":
                    raise PolynomialSyntaxError("expected x after *", pos)
        if pos < n and text[pos] == "x":
            pos += 1
            power = 1
            skip_ws()
            if pos < n and text[pos] == "^":
                pos += 1
                skip_ws()
                power = read_uint()
        elif not have_coef:
            raise PolynomialSyntaxError("expected a term", pos)
        coeffs[power] = coeffs.get(power, 0) + sign * coef

    skip_ws()
    if pos >= n:
        raise PolynomialSyntaxError("empty polynomial text", pos)
    sign = 1
    if text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos += 1
        skip_ws()
    read_term(sign)
    skip_ws()
    while pos < n:
        ch = text[pos]
        if ch not in "+-":
            raise PolynomialSyntaxError(f"expected + or - before {ch!r}", pos)
        pos += 1
        skip_ws()
        read_term(-1 if ch == "-" else 1)
        skip_ws()

    nonzero = {k: c for k, c in coeffs.items() if c != 0}
    if not nonzero:
        raise ZeroDegreeError("the zero polynomial has no degree")
    m = max(nonzero)
    if m == 0:
        raise ZeroDegreeError("constant polynomial; need degree >= 1")
    if nonzero[m] != 1:
        raise NotMonicError(f"coefficient of x^{m} is {nonzero[m]}, must be 1")
    return MonicPolynomial(tuple(-coeffs.get(m - i, 0) for i in range(1, m + 1)))


def from_coefficients(c) -> MonicPolynomial:
    """Build from ascending standard coefficients (c_0, ..., c_m), c_m = 1."""
    seq = tuple(c)
    if not seq:
        raise EmptyInputError("coefficient sequence is empty")
    seq = tuple(_exact_int(v, f"c[{k}]") for k, v in enumerate(seq))
    if len(seq) == 1:
        raise ZeroDegreeError("constant polynomial; need degree >= 1")
    if seq[-1] != 1:
        raise NotMonicError(f"leading coefficient is {seq[-1]}, must be 1")
    m = len(seq) - 1
    return MonicPolynomial(tuple(-seq[m - i] for i in range(1, m + 1)))


def companion_matrix(p: MonicPolynomial) -> tuple[tuple[int, ...], ...]:
    """Standard companion matrix: first row a_1..a_m, ones on the subdiagonal."""
    m = p.degree
    return tuple(
        tuple(p.a[j] if i == 0 else (1 if j == i - 1 else 0) for j in range(m))
        for i in range(m)
    )


def iteration_matrix(p: MonicPolynomial) -> IterationMatrix:
    """Identity plus the companion matrix of p.

    Row 1 is (1 + a_1, a_2, ..., a_m); every later row i has ones at
    columns i-1 and i and zeros elsewhere. One rewriting step acts on
    count vectors as this matrix.
    """
    comp = companion_matrix(p)
    m = p.degree
    return IterationMatrix(
        tuple(
            tuple(comp[i][j] + (1 if i == j else 0) for j in range(m))
            for i in range(m)
        )
    )
