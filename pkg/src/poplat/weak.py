"""Weak order on permutations and on signed permutations.

Covers turn one adjacent ascent into a descent; in the signed case the move
at position i < n is paired with its mirror at 2n-i, and the central move at
position n stands alone.  The one-shot pop map is run reversal.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import GuardError
from .lattice import FiniteLattice
from .signed import ascent_decomposition, enumerate_signed, validate_signed
from .words import Word, bounded_ascent_count, reverse_runs


def _swap(word: Word, i: int) -> Word:
    w = list(word)
    w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


def weak_a_covers(p: Word) -> list[Word]:
    """Upper covers: swap one adjacent ascent."""
    return [_swap(p, i) for i in range(len(p) - 1) if p[i] < p[i + 1]]


def weak_b_covers(x: Word) -> list[Word]:
    """Upper covers in the signed weak order (mirrored double swaps)."""
    n = len(x) // 2
    out = []
    for i in range(n):
        if x[i] < x[i + 1]:
            y = _swap(x, i)
            if i < n - 1:
                y = _swap(y, 2 * n - 2 - i)
            out.append(y)
    return out


@lru_cache(maxsize=None)
def weak_a_lattice(num_letters: int, validate: bool = True) -> FiniteLattice:
    """Weak order on the permutations of {1, ..., num_letters}."""
    if num_letters > 7:
        raise GuardError(f"weak order on S_{num_letters} exceeds guard")
    elements = sorted(itertools.permutations(range(1, num_letters + 1)))
    covers = [(p, q) for p in elements for q in weak_a_covers(p)]
    return FiniteLattice.build(elements, covers, validate=validate)


@lru_cache(maxsize=None)
def weak_b_lattice(n: int, validate: bool = True) -> FiniteLattice:
    """Weak order on the rank-n signed permutations."""
    elements = enumerate_signed(n)
    covers = [(x, y) for x in elements for y in weak_b_covers(x)]
    return FiniteLattice.build(elements, covers, validate=validate)


def pop_weak(x: Word) -> Word:
    """One-shot pop on the weak order: reverse every descending run."""
    return reverse_runs(x)


def image_run_condition(x: Word) -> bool:
    """Necessary condition for membership in the signed pop image.

    Each ascending run's first entry must be smaller than the next run's last
    entry; necessity is exhaustively checked in the tests, sufficiency is not
    claimed.
    """
    runs = ascent_decomposition(validate_signed(x)).runs
    return all(
        runs[k][0] < runs[k + 1][-1] for k in range(len(runs) - 1)
    )


def staircase_image_element(n: int, j: int) -> Word:
    """The explicit image element with first entry 1 indexed by 1 <= j <= n-1.

    Five pieces: a 1, then j consecutive high values, an identity stretch,
    the j low values mirroring the high ones, and the final 2n.
    """
    if not 1 <= j <= n - 1:
        raise ValueError(f"j must satisfy 1 <= j <= n-1, got {j}")
    x = [0] * (2 * n)
    x[0] = 1
    for i in range(2, j + 2):
        x[i - 1] = 2 * n - j + i - 2
    for i in range(j + 2, 2 * n - j):
        x[i - 1] = i
    for i in range(2 * n - j, 2 * n):
        x[i - 1] = j + i - 2 * n + 2
    x[2 * n - 1] = 2 * n
    return validate_signed(tuple(x))


def image_census_by_first_entry(n: int) -> dict[int, int]:
    """Split the pop-image elements having n-1 upward covers by first entry.

    Brute force over the full signed weak order; exhaustive mode is guarded
    at rank 4.
    """
    if n > 4:
        raise GuardError(f"census guard exceeded for rank {n}")
    lat = weak_b_lattice(n)
    counts = {i: 0 for i in range(1, 2 * n + 1)}
    for z in lat.pop_image("down"):
        if len(lat.upper_covers(z)) == n - 1:
            counts[z[0]] += 1
    return counts


def weak_b_upper_cover_count(x: Word) -> int:
    """Cover count read off the word itself: ascents at positions <= n."""
    n = len(x) // 2
    return bounded_ascent_count(x, n)
