"""Words of distinct integers: run statistics, pattern containment, binomials.

Words and permutations are plain tuples of ints.  Positions are 1-based in
every public signature, matching the usual one-line-notation conventions of
the surrounding modules.  The text format is comma-separated decimal entries,
e.g. "5,1,7,6,3,2,8,4".
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]


def parse_word(text: str) -> Word:
    """Parse "5,1,7,6,3,2,8,4" into a tuple of ints."""
    text = text.strip()
    if not text:
        return ()
    try:
        word = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed word {text!r}: {exc}") from None
    check_word(word)
    return word


def format_word(word: Sequence[int]) -> str:
    return ",".join(str(v) for v in word)


def check_word(word: Sequence[int]) -> Word:
    """Validate distinct positive entries; return as a tuple."""
    word = tuple(word)
    if any(v <= 0 for v in word):
        raise ValueError(f"word entries must be positive: {word}")
    if len(set(word)) != len(word):
        raise ValueError(f"word entries must be distinct: {word}")
    return word


def is_permutation(word: Sequence[int]) -> bool:
    """True when the entry set is exactly {1, ..., len(word)}."""
    return sorted(word) == list(range(1, len(word) + 1))


def check_permutation(word: Sequence[int]) -> Word:
    word = tuple(word)
    if not is_permutation(word):
        raise ValueError(f"not a permutation of 1..{len(word)}: {word}")
    return word


def reduction(word: Sequence[int]) -> Word:
    """Replace each entry by its rank among the word's entries (smallest -> 1)."""
    rank = {v: i + 1 for i, v in enumerate(sorted(word))}
    return tuple(rank[v] for v in word)


def index_of(word: Sequence[int], value: int) -> int:
    """1-based position of `value` in `word`."""
    try:
        return word.index(value) + 1  # type: ignore[union-attr]
    except (ValueError, AttributeError):
        pass
    for i, v in enumerate(word):
        if v == value:
            return i + 1
    raise ValueError(f"value {value} does not occur in {word}")


def descending_runs(word: Sequence[int]) -> list[Word]:
    """Maximal strictly decreasing factors, left to right."""
    if not word:
        return []
    runs: list[Word] = []
    start = 0
    for i in range(1, len(word)):
        if word[i] > word[i - 1]:
            runs.append(tuple(word[start:i]))
            start = i
    runs.append(tuple(word[start:]))
    return runs


def ascending_runs(word: Sequence[int]) -> list[Word]:
    """Maximal strictly increasing factors, left to right."""
    if not word:
        return []
    runs: list[Word] = []
    start = 0
    for i in range(1, len(word)):
        if word[i] < word[i - 1]:
            runs.append(tuple(word[start:i]))
            start = i
    runs.append(tuple(word[start:]))
    return runs


def reverse_runs(word: Sequence[int]) -> Word:
    """Reverse every descending run in place (the one-shot pop-stack pass)."""
    out: list[int] = []
    for run in descending_runs(word):
        out.extend(reversed(run))
    return tuple(out)


def descent_count(word: Sequence[int]) -> int:
    return sum(1 for a, b in zip(word, word[1:]) if a > b)


def bounded_ascent_count(word: Sequence[int], bound: int) -> int:
    """Number of ascent positions i <= bound (1-based)."""
    if not 1 <= bound <= len(word) - 1:
        raise ValueError(f"bound {bound} out of range for length {len(word)}")
    return sum(1 for i in range(bound) if word[i] < word[i + 1])


def has_double_descent(word: Sequence[int]) -> bool:
    """True when three consecutive entries strictly decrease."""
    return any(word[i] > word[i + 1] > word[i + 2] for i in range(len(word) - 2))


# --- pattern machinery -----------------------------------------------------

LARGE = "large"  # constrained entry must be >= n+1, n = len(host)/2
SMALL = "small"  # constrained entry must be <= n


@dataclass(frozen=True)
class PatternSpec:
    """A classical pattern with optional vincular adjacencies and size bounds.

    `adjacent[i]` forces the host positions matched to pattern positions
    i+1 and i+2 (1-based) to be consecutive.  `bounds` maps a 1-based pattern
    position to LARGE or SMALL; these thresholds read n as half the host
    length, so a bounded search requires an even-length host.
    """

    pattern: Word
    adjacent: tuple[bool, ...] = ()
    bounds: tuple[tuple[int, str], ...] = ()

    def __post_init__(self) -> None:
        if self.adjacent and len(self.adjacent) != len(self.pattern) - 1:
            raise ValueError("adjacency mask length must be pattern length - 1")
        for pos, kind in self.bounds:
            if not 1 <= pos <= len(self.pattern) or kind not in (LARGE, SMALL):
                raise ValueError(f"bad bound ({pos}, {kind})")


P312 = PatternSpec((3, 1, 2))
P312_STAR = PatternSpec((3, 1, 2), bounds=((3, LARGE),))
P312_STAR_BIG = PatternSpec((3, 1, 2), bounds=((3, LARGE), (2, LARGE)))
P312_STAR_SMALL = PatternSpec((3, 1, 2), bounds=((3, LARGE), (2, SMALL)))
P213_STAR = PatternSpec((2, 1, 3), bounds=((1, SMALL),))
# 231 variant with its final entry small; see tests for where this is exercised.
P231_STAR = PatternSpec((2, 3, 1), bounds=((3, SMALL),))
VINCULAR_312 = PatternSpec((3, 1, 2), adjacent=(True, False))
VINCULAR_312_STAR = PatternSpec((3, 1, 2), adjacent=(True, False), bounds=((3, LARGE),))


def contains_pattern(host: Sequence[int], spec: PatternSpec) -> bool:
    """Search for a subsequence order-isomorphic to the pattern.

    Backtracks over host positions left to right; hosts in this project never
    exceed ~16 entries, so no cleverness is required.
    """
    pat = spec.pattern
    k = len(pat)
    if k == 0:
        return True
    m = len(host)
    if k > m:
        return False
    if spec.bounds and m % 2 != 0:
        raise ValueError("size-bounded patterns need an even-length host")
    half = m // 2
    bound_at = dict(spec.bounds)
    adjacent = spec.adjacent or (False,) * (k - 1)

    def admissible(value: int, t: int, chosen: list[int]) -> bool:
        kind = bound_at.get(t + 1)
        if kind == LARGE and value <= half:
            return False
        if kind == SMALL and value > half:
            return False
        return all(
            (value > prev) == (pat[t] > pat[i]) for i, prev in enumerate(chosen)
        )

    def extend(t: int, prev_pos: int, chosen: list[int]) -> bool:
        if t == k:
            return True
        if t > 0 and adjacent[t - 1]:
            candidates: Iterable[int] = (prev_pos + 1,) if prev_pos + 1 < m else ()
        else:
            candidates = range(prev_pos + 1, m - (k - t) + 1)
        for p in candidates:
            if admissible(host[p], t, chosen):
                chosen.append(host[p])
                if extend(t + 1, p, chosen):
                    return True
                chosen.pop()
        return False

    return extend(0, -1, [])


# --- binomials -------------------------------------------------------------


def binomial(n: int, k: int, generalized: bool = False) -> int:
    """Binomial coefficient with exact integer arithmetic.

    Standard mode requires n >= 0 and returns 0 for k < 0 or k > n.  The
    generalized mode extends to negative upper index via the falling
    factorial, so e.g. binomial(-1, 0, generalized=True) == 1.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    if not generalized:
        raise ValueError(f"negative upper index {n} requires generalized=True")
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)
