"""Tamari lattices of both flavors: carriers, projections, pop, preimages.

The type-A carrier is the set of 312-avoiding permutations, the type-B
carrier the set of signed permutations avoiding 312-with-large-middle-value
(the "2"-valued entry at least n+1).  Both sit inside their weak orders as
sublattices; covers are obtained by transitive reduction of the restricted
order, with the order itself read off inversion-set containment.

Projections to the carrier are computed two independent ways that the tests
force to agree:

* rewriting: repeatedly swap the high pair of an adjacent-descent pattern
  occurrence (together with its mirror in type B) until none applies;
* class minimum: connected components of the congruence adjacency inside the
  ambient weak order, each an interval whose minimum is the projection.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import GuardError
from .lattice import FiniteLattice
from .signed import (
    complement_reverse,
    enumerate_signed,
    half_decomposition,
    validate_signed,
)
from .weak import weak_a_lattice, weak_b_lattice
from .words import (
    P312,
    P312_STAR,
    Word,
    check_permutation,
    contains_pattern,
    has_double_descent,
    index_of,
    reduction,
    reverse_runs,
)

TAM_A_GUARD = 8  # carrier inside S_{n+1}
TAM_B_GUARD = 6


# --- carriers ---------------------------------------------------------------


@lru_cache(maxsize=None)
def tam_a_elements(n: int) -> tuple[Word, ...]:
    """312-avoiding permutations of {1, ..., n+1}, lexicographically sorted."""
    if n + 1 > TAM_A_GUARD:
        raise GuardError(f"type-A carrier guard exceeded at n={n}")
    return tuple(
        p
        for p in itertools.permutations(range(1, n + 2))
        if not contains_pattern(p, P312)
    )


@lru_cache(maxsize=None)
def tam_b_elements(n: int) -> tuple[Word, ...]:
    """Signed permutations of rank n avoiding the starred 312 pattern."""
    if n > TAM_B_GUARD:
        raise GuardError(f"type-B carrier guard exceeded at n={n}")
    return tuple(
        x for x in enumerate_signed(n) if not contains_pattern(x, P312_STAR)
    )


def _inversion_mask(p: Word) -> int:
    """Bitmask over value pairs (a, b), a < b, set when b precedes a."""
    pos = {v: i for i, v in enumerate(p)}
    m = len(p)
    out = 0
    bit = 0
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            if pos[b] < pos[a]:
                out |= 1 << bit
            bit += 1
    return out


def _restricted_lattice(elements: tuple[Word, ...], validate: bool) -> FiniteLattice:
    """Sublattice of the weak order on a carrier, by transitive reduction."""
    masks = [_inversion_mask(p) for p in elements]
    order = sorted(range(len(elements)), key=lambda i: (bin(masks[i]).count("1"), elements[i]))
    n = len(elements)
    down = [0] * n
    for a_pos, i in enumerate(order):
        mask = 1 << a_pos
        mi = masks[i]
        for b_pos in range(a_pos):
            if masks[order[b_pos]] & ~mi == 0:
                mask |= 1 << b_pos
        down[a_pos] = mask
    covers = []
    for a_pos in range(n):
        strict = down[a_pos] ^ (1 << a_pos)
        shadow = 0
        rest = strict
        while rest:
            low = rest & -rest
            shadow |= down[low.bit_length() - 1] ^ low
            rest ^= low
        cover_mask = strict & ~shadow
        hi = elements[order[a_pos]]
        while cover_mask:
            low = cover_mask & -cover_mask
            covers.append((elements[order[low.bit_length() - 1]], hi))
            cover_mask ^= low
    return FiniteLattice.build(elements, covers, validate=validate)


@lru_cache(maxsize=None)
def tam_a_lattice(n: int, validate: bool = True) -> FiniteLattice:
    return _restricted_lattice(tam_a_elements(n), validate)


@lru_cache(maxsize=None)
def tam_b_lattice(n: int, validate: bool = True) -> FiniteLattice:
    return _restricted_lattice(tam_b_elements(n), validate)


# --- congruence adjacency and projections ------------------------------------


def tam_a_adjacent(p: Word) -> list[Word]:
    """One-step congruence moves: swap adjacent (c, a) with witness a<b<c after."""
    out = []
    for i in range(len(p) - 1):
        c, a = p[i], p[i + 1]
        if c > a and any(a < b < c for b in p[i + 2 :]):
            q = list(p)
            q[i], q[i + 1] = a, c
            out.append(tuple(q))
    return out


def _signed_double_swap(x: Word, i: int) -> Word:
    """Swap positions (i, i+1), 0-based, together with the mirrored pair."""
    y = list(x)
    y[i], y[i + 1] = y[i + 1], y[i]
    mi = len(x) - 2 - i
    if mi != i:
        y[mi], y[mi + 1] = y[mi + 1], y[mi]
    return tuple(y)


def _tam_b_movable(x: Word, i: int) -> bool:
    """Is the adjacent descent at 0-based (i, i+1) removable by a congruence move?

    The witness b with a < b < c must sit at or after a's position when large
    (at least n+1) and at or before it when small; large witnesses after the
    pair are the adjacent-descent starred-312 occurrences, small ones before
    are their mirror images.
    """
    n = len(x) // 2
    c, a = x[i], x[i + 1]
    if c <= a:
        return False
    pos = {v: t for t, v in enumerate(x)}
    for b in range(a + 1, c):
        if b >= n + 1 and pos[b] >= i + 1:
            return True
        if b <= n and pos[b] <= i + 1:
            return True
    return False


def tam_b_adjacent(x: Word) -> list[Word]:
    """One-step congruence moves in the signed weak order (with mirror swaps)."""
    return [
        _signed_double_swap(x, i)
        for i in range(len(x) - 1)
        if _tam_b_movable(x, i)
    ]


def project_tam_a(p: Word) -> Word:
    """Minimum of p's congruence class, by leftmost-move rewriting.

    Each move removes one inversion, so the loop terminates; the endpoint is
    312-avoiding and is checked against the class-minimum computation in the
    tests.
    """
    p = list(check_permutation(p))
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            c, a = p[i], p[i + 1]
            if c > a and any(a < b < c for b in p[i + 2 :]):
                p[i], p[i + 1] = a, c
                changed = True
                break
    return tuple(p)


def project_tam_b(x: Word) -> Word:
    """Minimum of x's congruence class in the signed weak order."""
    x = validate_signed(x)
    changed = True
    while changed:
        changed = False
        for i in range(len(x) - 1):
            if _tam_b_movable(x, i):
                x = _signed_double_swap(x, i)
                changed = True
                break
    return x


def project_tam_a_by_classes(n: int) -> dict[Word, Word]:
    """Class-minimum oracle over the full weak order on S_{n+1}."""
    return weak_a_lattice(n + 1).congruence_classes(tam_a_adjacent)


def project_tam_b_by_classes(n: int) -> dict[Word, Word]:
    return weak_b_lattice(n).congruence_classes(tam_b_adjacent)


# --- pop --------------------------------------------------------------------


def pop_tam_a(p: Word) -> Word:
    """Pop on the type-A carrier: project the run reversal."""
    p = check_permutation(p)
    if contains_pattern(p, P312):
        raise ValueError(f"{p} is not 312-avoiding")
    return project_tam_a(reverse_runs(p))


def pop_tam_b(x: Word) -> Word:
    x = validate_signed(x)
    if contains_pattern(x, P312_STAR):
        raise ValueError(f"{x} is not in the type-B carrier")
    return project_tam_b(reverse_runs(x))


# --- image characterizations ---------------------------------------------------


def hong_image_predicate(p: Word) -> bool:
    """Type-A image test: 312-avoiding, ends with the maximum, no double descent."""
    if not p:
        return True
    return (
        p[-1] == len(p)
        and not has_double_descent(p)
        and not contains_pattern(p, P312)
    )


def tam_b_image_predicate(x: Word) -> bool:
    """Type-B image test on x's own large-entry blocks.

    x is in the image iff its largest value sits in the right half and every
    block of entries >= n+1, reduced, passes the type-A image test.  The
    tests match this against brute-force image membership.
    """
    x = validate_signed(x)
    n = len(x) // 2
    if n == 0:
        return True
    if index_of(x, 2 * n) < n + 1:
        return False
    return all(
        hong_image_predicate(reduction(block.values))
        for block in half_decomposition(x).blocks
    )


def tam_b_image_predicate_as_printed(x: Word) -> bool:
    """Literal mixed-statement variant: block condition evaluated on pop(x).

    Kept for documentation; it wrongly accepts some non-image elements
    (smallest case: 2143 at rank 2), which the tests pin down.
    """
    x = validate_signed(x)
    n = len(x) // 2
    if n == 0:
        return True
    if index_of(x, 2 * n) < n + 1:
        return False
    popped = pop_tam_b(x)
    return all(
        hong_image_predicate(reduction(block.values))
        for block in half_decomposition(popped).blocks
    )


# --- preimage constructions ------------------------------------------------------


def _relabel(pattern: Word, values: list[int]) -> Word:
    """Arrange `values` in the relative order given by `pattern`."""
    ordered = sorted(values)
    return tuple(ordered[r - 1] for r in pattern)


def preimage_ending_in_one(x: Word) -> Word:
    """A pop preimage of a type-A image element whose last entry is 1.

    Recursive split at the position of 1: both sides are again image elements
    after reduction, and the assembled word (left+1) . (right+k) . 1 pops back
    to x.  The postcondition is asserted.
    """
    x = check_permutation(x)
    if not hong_image_predicate(x):
        raise ValueError(f"{x} fails the type-A image test")
    y = _preimage_end_one(x)
    assert pop_tam_a(y) == x, (x, y)
    return y


def _preimage_end_one(x: Word) -> Word:
    m = len(x)
    if m <= 1:
        return x
    k = index_of(x, 1)
    left = _relabel(_preimage_end_one(reduction(x[: k - 1])), [v + 1 for v in range(1, k)]) if k > 1 else ()
    right = _relabel(_preimage_end_one(reduction(x[k:])), list(range(k + 1, m + 1))) if k < m else ()
    return left + right + (1,)


def preimage_tam_b(x: Word) -> Word:
    """A pop preimage of a type-B image element, assembled blockwise.

    Each large-entry block of x is replaced by the end-in-one type-A preimage
    of its pattern, on the same values.  When x starts with a large entry the
    first two replacement blocks are glued into a single block first: popping
    splits that glued block back apart, which is how the image element comes
    to start with a large value (smallest witness: rank 2, image element 3142,
    whose only preimage 3412 has one block where 3142 has two).  The blocks
    are then interleaved with the reversed complements of the blocks taken in
    opposite order, and the postcondition pop(y) == x is asserted.
    """
    x = validate_signed(x)
    if not tam_b_image_predicate(x):
        raise ValueError(f"{x} fails the type-B image test")
    n = len(x) // 2
    blocks = half_decomposition(x).blocks
    new_blocks = [
        _relabel(_preimage_end_one(reduction(b.values)), list(b.values))
        for b in blocks
    ]
    if n and x[0] >= n + 1:
        # a first-entry-large image element always has at least two blocks:
        # with a single block the largest value would sit in the left half
        new_blocks[:2] = [new_blocks[0] + new_blocks[1]]
    parts: list[Word] = []
    count = len(new_blocks)
    for k in range(count):
        parts.append(new_blocks[k])
        parts.append(complement_reverse(new_blocks[count - 1 - k], 2 * n))
    y = validate_signed(tuple(itertools.chain.from_iterable(parts)))
    assert pop_tam_b(y) == x, (x, y)
    return y


# --- congruence chain construction ---------------------------------------------


def adjacency_chain(x: Word, y: Word, z: Word) -> list[Word]:
    """Lift a single type-A congruence move to a chain of type-B moves.

    Given adjacent x -> y in the type-A congruence (swap of one adjacent
    descent with a later witness) and z whose large-entry pattern is x, walk
    the high value rightward past the small entries separating it from its
    partner, then swap the pair; every step is a legal type-B move and the
    endpoint's large-entry pattern is y.
    """
    x = check_permutation(x)
    y = check_permutation(y)
    z = validate_signed(z)
    n = len(z) // 2
    diff = [i for i in range(len(x)) if x[i] != y[i]]
    if len(diff) != 2 or diff[1] != diff[0] + 1:
        raise ValueError("x and y must differ by one adjacent swap")
    i = diff[0]
    c, a = x[i], x[i + 1]
    if not (a < c and y[i] == a and y[i + 1] == c):
        raise ValueError("x -> y must swap a descent (c, a) to (a, c)")
    if not any(a < b < c for b in x[i + 2 :]):
        raise ValueError("no witness between the swapped values occurs later")
    if reduction(half_decomposition(z).half) != x:
        raise ValueError("z's large-entry pattern must equal x")

    big_c, big_a = c + n, a + n
    chain = [z]
    cur = z
    while True:
        pos = cur.index(big_c)
        if cur[pos + 1] == big_a:
            break
        if cur[pos + 1] > n:
            raise ValueError("unexpected large entry between the pair")
        if not _tam_b_movable(cur, pos):
            raise ValueError(f"illegal intermediate move at {cur}")
        cur = _signed_double_swap(cur, pos)
        chain.append(cur)
    pos = cur.index(big_c)
    if not _tam_b_movable(cur, pos):
        raise ValueError(f"final swap not legal at {cur}")
    cur = _signed_double_swap(cur, pos)
    chain.append(cur)
    assert reduction(half_decomposition(cur).half) == y, (cur, y)
    return chain
