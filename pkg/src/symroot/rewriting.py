"""Signed letters, words, run-length words, and the replacement rule.

Letters are written 1+, 1-, 2+, ... in text form. A rule built from a
polynomial maps each of the 2m signed letters to a short image word, and
rewriting a word replaces every letter by its image, in order. Adjacent
opposite-sign letters are never cancelled inside words; signs only interact
later, in the count map.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import EngineOverflowError, IndexOutOfRangeError
from .polynomial import MonicPolynomial

__all__ = [
    "PLUS",
    "MINUS",
    "WORD_CAP_DEFAULT",
    "Letter",
    "letter",
    "Word",
    "RleWord",
    "ReplacementRule",
    "signed_power",
    "build_rule",
    "apply_rule_letter",
    "rewrite",
    "iterate_words",
    "default_initial_word",
]

PLUS = 1
MINUS = -1

# literal words grow geometrically under rewriting; past this many letters
# the engines refuse and point at the counts engine instead
WORD_CAP_DEFAULT = 10_000_000

_SIGN_TEXT = {PLUS: "+", MINUS: "-"}


@dataclass(frozen=True)
class Letter:
    """One signed symbol with a 1-based index, rendered as e.g. "3+"."""

    index: int
    sign: int

    def __post_init__(self) -> None:
        if isinstance(self.index, bool) or not isinstance(self.index, int) or self.index < 1:
            raise IndexOutOfRangeError(
                f"letter index must be a positive integer, got {self.index!r}"
            )
        if self.sign not in (PLUS, MINUS):
            raise ValueError(f"sign must be PLUS or MINUS, got {self.sign!r}")

    def flipped(self) -> "Letter":
        return letter(self.index, -self.sign)

    def __str__(self) -> str:
        return f"{self.index}{_SIGN_TEXT[self.sign]}"


_letter_cache: dict[tuple[int, int], Letter] = {}


def letter(index: int, sign: int) -> Letter:
    """Shared Letter instances: long words hold many references, few objects."""
    key = (index, sign)
    got = _letter_cache.get(key)
    if got is None:
        got = _letter_cache.setdefault(key, Letter(index, sign))
    return got


@dataclass(frozen=True)
class Word:
    """Literal finite sequence of letters; the empty word is legal."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    @property
    def letter_count(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def flipped(self) -> "Word":
        return Word(tuple(l.flipped() for l in self.letters))

    def render(self) -> str:
        """Trace text form: space-separated letters, e.g. "1+ 1- 2+"."""
        return " ".join(str(l) for l in self.letters)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class RleWord:
    """Run-length compressed word: ordered (letter, multiplicity) runs.

    Multiplicities must be positive; the constructor merges adjacent runs
    that carry the same letter, so stored runs are always in normal form.
    """

    runs: tuple[tuple[Letter, int], ...] = ()

    def __post_init__(self) -> None:
        merged: list[list] = []
        for run in self.runs:
            l, k = run
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise ValueError(f"run multiplicity must be a positive integer, got {k!r}")
            if merged and merged[-1][0] == l:
                merged[-1][1] += k
            else:
                merged.append([l, k])
        object.__setattr__(self, "runs", tuple((l, k) for l, k in merged))

    @property
    def letter_count(self) -> int:
        return sum(k for _, k in self.runs)

    def expand(self) -> Word:
        out: list[Letter] = []
        for l, k in self.runs:
            out.extend([l] * k)
        return Word(tuple(out))

    @classmethod
    def compress(cls, w: Word) -> "RleWord":
        runs: list[list] = []
        for l in w:
            if runs and runs[-1][0] == l:
                runs[-1][1] += 1
            else:
                runs.append([l, 1])
        return cls(tuple((l, k) for l, k in runs))

    def __add__(self, other: "RleWord") -> "RleWord":
        return RleWord(self.runs + other.runs)

    def flipped(self) -> "RleWord":
        return RleWord(tuple((l.flipped(), k) for l, k in self.runs))

    def render(self) -> str:
        """Trace text form with powers, e.g. "1+^3 2+"."""
        return " ".join(f"{l}^{k}" if k > 1 else str(l) for l, k in self.runs)

    def __str__(self) -> str:
        return self.render()


def signed_power(index: int, sign: int, k: int) -> RleWord:
    """|k| copies of the letter, with the sign flipped when k < 0; empty at k = 0."""
    if k == 0:
        return RleWord()
    out_sign = sign if k > 0 else -sign
    return RleWord(((letter(index, out_sign), abs(k)),))


@dataclass(frozen=True)
class ReplacementRule:
    """Images of all 2m signed letters for one polynomial's rule."""

    polynomial: MonicPolynomial
    images: dict

    def __post_init__(self) -> None:
        # precomputed literal expansions keep the word engine off the
        # per-letter Python slow path
        expanded = {l: img.expand().letters for l, img in self.images.items()}
        lengths = {l: img.letter_count for l, img in self.images.items()}
        object.__setattr__(self, "_expanded", expanded)
        object.__setattr__(self, "_lengths", lengths)

    @property
    def m(self) -> int:
        return self.polynomial.degree

    def image(self, l: Letter) -> RleWord:
        got = self.images.get(l)
        if got is None:
            raise IndexOutOfRangeError(
                f"letter {l} is outside the rule's alphabet (m = {self.m})"
            )
        return got


def build_rule(p: MonicPolynomial) -> ReplacementRule:
    """The rule of p: letter i maps to a_i copies of letter 1 (sign-encoded),
    then the letter itself, then letter i+1 (dropped for i = m).

    The powered letter is always letter 1, whatever the row. Minus-letter
    images are the plus-letter images with every sign flipped.
    """
    m = p.degree
    images: dict[Letter, RleWord] = {}
    for i in range(1, m + 1):
        tail: list[tuple[Letter, int]] = [(letter(i, PLUS), 1)]
        if i < m:
            tail.append((letter(i + 1, PLUS), 1))
        plus_image = RleWord(signed_power(1, PLUS, p.a[i - 1]).runs + tuple(tail))
        images[letter(i, PLUS)] = plus_image
        images[letter(i, MINUS)] = plus_image.flipped()
    return ReplacementRule(p, images)


def apply_rule_letter(rule: ReplacementRule, l: Letter) -> RleWord:
    """The stored image of one letter, never mutated."""
    return rule.image(l)


def _predicted_length(rule: ReplacementRule, w) -> int:
    lengths = rule._lengths
    try:
        if isinstance(w, RleWord):
            return sum(k * lengths[l] for l, k in w.runs)
        counts = Counter(w.letters)
        return sum(k * lengths[l] for l, k in counts.items())
    except KeyError as e:
        raise IndexOutOfRangeError(
            f"letter {e.args[0]} is outside the rule's alphabet (m = {rule.m})"
        ) from None


def rewrite(rule: ReplacementRule, w, cap: int = WORD_CAP_DEFAULT):
    """One parallel replacement step; output representation matches the input.

    The output length is known from letter counts alone, so the cap is
    checked before anything is materialized.
    """
    predicted = _predicted_length(rule, w)
    if predicted > cap:
        raise EngineOverflowError(
            f"rewrite would produce {predicted} letters, over the cap of {cap}; "
            "use the counts engine for deep iteration"
        )
    if isinstance(w, RleWord):
        out: list[list] = []

        def put(l: Letter, k: int) -> None:
            if out and out[-1][0] == l:
                out[-1][1] += k
            else:
                out.append([l, k])

        for l, k in w.runs:
            img = rule.images[l].runs
            if len(img) == 1:
                b, n0 = img[0]
                put(b, n0 * k)
            else:
                for _ in range(k):
                    for b, n0 in img:
                        put(b, n0)
        return RleWord(tuple((l, k) for l, k in out))

    expanded = rule._expanded
    out_letters: list[Letter] = []
    for l in w.letters:
        out_letters.extend(expanded[l])
    return Word(tuple(out_letters))


def iterate_words(rule: ReplacementRule, w0, i: int, cap: int = WORD_CAP_DEFAULT):
    """W_0 .. W_i by repeated rewriting.

    On overflow the raised error carries the failing depth and the tuple of
    words that were completed before it.
    """
    if i < 0:
        raise ValueError("iteration count must be nonnegative")
    words = [w0]
    for k in range(1, i + 1):
        try:
            words.append(rewrite(rule, words[-1], cap=cap))
        except EngineOverflowError as e:
            raise EngineOverflowError(
                f"iterate {k}: {e}", depth=k, partial=tuple(words)
            ) from None
    return tuple(words)


def default_initial_word() -> Word:
    """The generic starting word: the single letter 1+ (count vector e_1)."""
    return Word((letter(1, PLUS),))
