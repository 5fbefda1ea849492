"""Dyck paths and the order-ideal lattices they realize.

Paths are strings over 'r' (rise) and 'f' (fall), e.g. "rrfrff".  The
type-A ideal lattice on semi-length m orders paths by pointwise height;
covers flip one valley.  The type-B lattice consists of the paths of
semi-length 2n symmetric about their midpoint; covers flip the central
valley alone or a mirror pair of off-center valleys.  The dual pop map
flips every valley at once.
"""
from __future__ import annotations

from functools import lru_cache

from .errors import GuardError
from .lattice import FiniteLattice, QPoly

J_A_GUARD = 10
J_B_GUARD = 5

RISE = "r"
FALL = "f"


def check_path(path: str) -> str:
    h = 0
    for step in path:
        if step == RISE:
            h += 1
        elif step == FALL:
            h -= 1
        else:
            raise ValueError(f"bad step {step!r} in {path!r}")
        if h < 0:
            raise ValueError(f"path dips below the axis: {path!r}")
    if h != 0:
        raise ValueError(f"path does not return to the axis: {path!r}")
    return path


def semi_length(path: str) -> int:
    return len(path) // 2


def heights(path: str) -> list[int]:
    """Profile h_0..h_{2m}; h_i is the height after i steps."""
    h = [0]
    for step in path:
        h.append(h[-1] + (1 if step == RISE else -1))
    return h


def is_symmetric(path: str) -> bool:
    """Mirror symmetry about the midpoint: step i complements step 2m+1-i."""
    m2 = len(path)
    return all(
        (path[i] == RISE) == (path[m2 - 1 - i] == FALL) for i in range(m2 // 2)
    )


def valleys(path: str) -> list[int]:
    """x-coordinates preceded by a fall and followed by a rise."""
    return [
        i + 1
        for i in range(len(path) - 1)
        if path[i] == FALL and path[i + 1] == RISE
    ]


def peaks(path: str) -> list[int]:
    """x-coordinates preceded by a rise and followed by a fall."""
    return [
        i + 1
        for i in range(len(path) - 1)
        if path[i] == RISE and path[i + 1] == FALL
    ]


def flippable_peaks(path: str) -> list[int]:
    """Peaks whose apex height is at least 2, hence flippable into valleys."""
    h = heights(path)
    return [x for x in peaks(path) if h[x] >= 2]


def peak_count(path: str) -> int:
    return len(peaks(path))


def half_peak_count(path: str) -> int:
    """Peaks with x-coordinate at most the midpoint (the symmetric statistic)."""
    mid = semi_length(path)
    return sum(1 for x in peaks(path) if x <= mid)


def flip_valleys_up(path: str) -> str:
    """Turn every valley into a peak simultaneously (the dual pop map)."""
    steps = list(path)
    for x in valleys(path):
        steps[x - 1], steps[x] = RISE, FALL
    return "".join(steps)


def _flip_valley(path: str, x: int) -> str:
    steps = list(path)
    steps[x - 1], steps[x] = RISE, FALL
    return "".join(steps)


@lru_cache(maxsize=None)
def all_paths(m: int) -> tuple[str, ...]:
    """Every path of semi-length m, lexicographically sorted ('f' < 'r')."""
    if m < 0:
        raise ValueError("negative semi-length")

    def extend(prefix: list[str], h: int, left: int) -> None:
        if left == 0:
            out.append("".join(prefix))
            return
        if h > 0:
            prefix.append(FALL)
            extend(prefix, h - 1, left - 1)
            prefix.pop()
        if h < left:
            prefix.append(RISE)
            extend(prefix, h + 1, left - 1)
            prefix.pop()

    out: list[str] = []
    extend([], 0, 2 * m)
    return tuple(out)


@lru_cache(maxsize=None)
def symmetric_paths(n: int) -> tuple[str, ...]:
    """Paths of semi-length 2n symmetric about the midpoint."""
    if n < 0:
        raise ValueError("negative rank")

    def extend(prefix: list[str], h: int, left: int) -> None:
        if left == 0:
            first = "".join(prefix)
            second = "".join(
                RISE if s == FALL else FALL for s in reversed(prefix)
            )
            out.append(first + second)
            return
        if h > 0:
            prefix.append(FALL)
            extend(prefix, h - 1, left - 1)
            prefix.pop()
        prefix.append(RISE)
        extend(prefix, h + 1, left - 1)
        prefix.pop()

    out: list[str] = []
    extend([], 0, 2 * n)
    return tuple(sorted(out))


def _height_leq(a: str, b: str) -> bool:
    ha, hb = heights(a), heights(b)
    return all(x <= y for x, y in zip(ha, hb))


@lru_cache(maxsize=None)
def j_a_lattice(m: int, validate: bool = True) -> FiniteLattice:
    """Ideal lattice on all paths of semi-length m; covers flip one valley."""
    if m > J_A_GUARD:
        raise GuardError(f"semi-length {m} exceeds guard {J_A_GUARD}")
    elements = all_paths(m)
    covers = [
        (path, _flip_valley(path, x)) for path in elements for x in valleys(path)
    ]
    return FiniteLattice.build(elements, covers, validate=validate)


def _flip_orbit(path: str, x: int) -> str:
    """Flip the valley at x and, when off-center, its mirror valley."""
    m2 = len(path)
    out = _flip_valley(path, x)
    if x != m2 // 2:
        out = _flip_valley(out, m2 - x)
    return out


@lru_cache(maxsize=None)
def j_b_lattice(n: int, validate: bool = True) -> FiniteLattice:
    """Ideal lattice on symmetric paths of semi-length 2n.

    Covers flip the central valley alone or a mirror pair of valleys, so the
    result stays symmetric; meets and joins agree with the ambient type-A
    lattice, which the tests check.
    """
    if n > J_B_GUARD:
        raise GuardError(f"rank {n} exceeds guard {J_B_GUARD}")
    elements = symmetric_paths(n)
    covers = []
    for path in elements:
        mid = 2 * n
        for x in valleys(path):
            if x <= mid:
                covers.append((path, _flip_orbit(path, x)))
    return FiniteLattice.build(elements, covers, validate=validate)


# --- image characterization and direct statistics -----------------------------


def _has_ffrr(path: str) -> bool:
    return "ffrr" in path


def _interior_positive(path: str) -> bool:
    h = heights(path)
    return all(v > 0 for v in h[1:-1])


def image_predicate_a(path: str) -> bool:
    """Membership test for the upward pop image: no 'ffrr' factor and no
    interior return to the axis."""
    check_path(path)
    return not _has_ffrr(path) and _interior_positive(path)


def image_predicate_b(path: str) -> bool:
    """Type-B variant of the same test, on a symmetric path."""
    check_path(path)
    if not is_symmetric(path):
        raise ValueError(f"not symmetric: {path!r}")
    return not _has_ffrr(path) and _interior_positive(path)


def lower_cover_count_a(path: str) -> int:
    """Lower covers without building the lattice: flippable peaks."""
    return len(flippable_peaks(path))


def lower_cover_count_b(path: str) -> int:
    """Flippable peak orbits with x-coordinate at most the midpoint."""
    mid = semi_length(path)
    return sum(1 for x in flippable_peaks(path) if x <= mid)


def pop_up_polynomial_a(m: int) -> QPoly:
    """q-census of the upward pop image over semi-length m, O(#paths)."""
    image = {flip_valleys_up(p) for p in all_paths(m)}
    coeffs: dict[int, int] = {}
    for z in image:
        d = lower_cover_count_a(z)
        coeffs[d] = coeffs.get(d, 0) + 1
    return QPoly(coeffs)


def pop_up_polynomial_b(n: int) -> QPoly:
    image = {flip_valleys_up(p) for p in symmetric_paths(n)}
    coeffs: dict[int, int] = {}
    for z in image:
        d = lower_cover_count_b(z)
        coeffs[d] = coeffs.get(d, 0) + 1
    return QPoly(coeffs)


def elevate(path: str) -> str:
    """Wrap in a rise and a fall; inverse of `strip_elevation`."""
    return RISE + path + FALL


def strip_elevation(path: str) -> str:
    """Remove the first rise and last fall of an axis-avoiding path."""
    if not path or path[0] != RISE or path[-1] != FALL:
        raise ValueError(f"cannot strip {path!r}")
    return path[1:-1]
