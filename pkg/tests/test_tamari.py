import math

import pytest

from poplat.signed import half_decomposition
from poplat.tamari import (
    adjacency_chain,
    hong_image_predicate,
    pop_tam_a,
    pop_tam_b,
    preimage_ending_in_one,
    preimage_tam_b,
    project_tam_a,
    project_tam_a_by_classes,
    project_tam_b,
    project_tam_b_by_classes,
    tam_a_elements,
    tam_a_lattice,
    tam_b_adjacent,
    tam_b_elements,
    tam_b_image_predicate,
    tam_b_image_predicate_as_printed,
    tam_b_lattice,
)
from poplat.words import (
    descent_count,
    index_of,
    reduction,
    reverse_runs,
)


def catalan(k):
    return math.comb(2 * k, k) // (k + 1)


def test_carrier_sizes():
    for n in (1, 2, 3, 4, 5, 6):
        assert len(tam_a_elements(n)) == catalan(n + 1)
    for n in (1, 2, 3, 4, 5):
        assert len(tam_b_elements(n)) == math.comb(2 * n, n)


def test_tam_b_carrier_n2():
    assert tam_b_elements(2) == (
        (1, 2, 3, 4),
        (1, 3, 2, 4),
        (2, 1, 4, 3),
        (3, 1, 4, 2),
        (3, 4, 1, 2),
        (4, 3, 2, 1),
    )


def test_project_tam_a_examples():
    assert project_tam_a((3, 1, 4, 2)) == (1, 3, 4, 2)
    assert project_tam_a((1, 3, 2, 4)) == (1, 3, 2, 4)
    assert project_tam_a((3, 1, 2)) == (1, 3, 2)


def test_project_tam_a_matches_class_minimum():
    for n in (1, 2, 3, 4):
        oracle = project_tam_a_by_classes(n)
        for p, target in oracle.items():
            assert project_tam_a(p) == target


def test_project_tam_b_examples():
    # The chain printed alongside the worked example in the source text takes
    # one extra step, swapping the central (5,4) with no witness strictly
    # between 4 and 5; the congruence defined in the text cannot make that
    # move (both words avoid the starred pattern, so they are minima of two
    # different classes).  The class minimum is therefore 31254786.
    assert project_tam_b((3, 7, 1, 5, 4, 8, 2, 6)) == (3, 1, 2, 5, 4, 7, 8, 6)
    # the large-entry pattern identity the example actually demonstrates:
    assert reduction(
        half_decomposition(project_tam_b((3, 7, 1, 5, 4, 8, 2, 6))).half
    ) == project_tam_a(reduction(half_decomposition((3, 7, 1, 5, 4, 8, 2, 6)).half))
    assert project_tam_b((1, 3, 2, 4)) == (1, 3, 2, 4)
    assert project_tam_b((2, 4, 1, 3)) == (2, 1, 4, 3)


def test_project_tam_b_matches_class_minimum():
    for n in (1, 2, 3, 4):
        oracle = project_tam_b_by_classes(n)
        for x, target in oracle.items():
            assert project_tam_b(x) == target


def test_projection_outputs_avoid_patterns():
    for n in (1, 2, 3, 4):
        for x, target in project_tam_b_by_classes(n).items():
            assert target in set(tam_b_elements(n))


def test_pop_examples():
    assert pop_tam_a((4, 5, 3, 2, 7, 8, 6, 1)) == (2, 4, 3, 5, 1, 7, 6, 8)
    y = (7, 1, 10, 11, 9, 8, 5, 4, 2, 3, 12, 6)
    assert pop_tam_b(y) == (1, 7, 2, 4, 3, 5, 8, 10, 9, 11, 6, 12)
    ident = tuple(range(1, 5))
    assert pop_tam_b(ident) == ident
    with pytest.raises(ValueError):
        pop_tam_a((3, 1, 2))  # not 312-avoiding
    with pytest.raises(ValueError):
        pop_tam_b((2, 4, 1, 3))  # not in the carrier


def test_pop_agrees_with_lattice_pop():
    for n in (1, 2, 3, 4, 5, 6):
        lat = tam_a_lattice(n)
        for p in lat.elements:
            assert lat.pop_down(p) == pop_tam_a(p)
    for n in (1, 2, 3, 4):
        lat = tam_b_lattice(n)
        for x in lat.elements:
            assert lat.pop_down(x) == pop_tam_b(x)


def test_largest_value_sits_right_of_center_on_image():
    for n in (1, 2, 3, 4, 5):
        for x in tam_b_elements(n):
            assert index_of(pop_tam_b(x), 2 * n) >= n + 1


def test_block_pattern_commutes_with_projection():
    from poplat.signed import enumerate_signed

    for n in (1, 2, 3, 4):
        for x in enumerate_signed(n):
            lhs = reduction(half_decomposition(project_tam_b(x)).half)
            rhs = project_tam_a(reduction(half_decomposition(x).half))
            assert lhs == rhs, x


def test_entries_after_previous_of_last_are_larger():
    # for a carrier element y with last entry v >= 2, everything after the
    # position of v-1 in the run reversal exceeds v-1
    for n in (2, 3, 4, 5, 6):
        for y in tam_a_elements(n):
            v = y[-1]
            if v == 1:
                continue  # v-1 undefined as a positive comparison anchor
            x = reverse_runs(y)
            p = index_of(x, v - 1)
            assert all(x[j] > v - 1 for j in range(p, len(x)))


def test_large_to_small_boundary_is_left_max():
    for n in (1, 2, 3, 4):
        for y in tam_b_elements(n):
            for x in (reverse_runs(y), pop_tam_b(y)):
                for i in range(len(x) - 1):
                    if x[i] >= n + 1 and x[i + 1] <= n:
                        assert all(x[j] < x[i] for j in range(i)), (y, x)


def test_cover_count_descent_bridge():
    from poplat.words import bounded_ascent_count

    for n in (1, 2, 3, 4):
        lat = tam_b_lattice(n)
        for z in lat.elements:
            expected = n - (descent_count(z) + 1) // 2
            assert len(lat.upper_covers(z)) == expected
            # the left-half ascent formula holds in the sublattice as well
            assert len(lat.upper_covers(z)) == bounded_ascent_count(z, n)


def test_hong_predicate_examples():
    assert hong_image_predicate((2, 4, 3, 5, 1, 7, 6, 8))
    assert not hong_image_predicate((2, 1))
    assert hong_image_predicate(tuple(range(1, 7)))


def test_hong_predicate_matches_image():
    for n in (1, 2, 3, 4, 5, 6, 7):
        carrier = tam_a_elements(n)
        image = {pop_tam_a(p) for p in carrier}
        for p in carrier:
            assert hong_image_predicate(p) == (p in image), (n, p)


def test_tam_b_predicate_matches_image():
    for n in (1, 2, 3, 4, 5):
        carrier = tam_b_elements(n)
        image = {pop_tam_b(x) for x in carrier}
        for x in carrier:
            assert tam_b_image_predicate(x) == (x in image), (n, x)


def test_tam_b_predicate_n2_members():
    image_members = [(1, 2, 3, 4), (1, 3, 2, 4), (3, 1, 4, 2)]
    for x in image_members:
        assert tam_b_image_predicate(x)
    assert not tam_b_image_predicate((3, 4, 1, 2))
    assert not tam_b_image_predicate((4, 3, 2, 1))
    # 2143 satisfies the as-printed mixed reading but is not an image
    # element: no carrier element pops to it (its fiber upward is empty).
    assert not tam_b_image_predicate((2, 1, 4, 3))
    image = {pop_tam_b(x) for x in tam_b_elements(2)}
    assert (2, 1, 4, 3) not in image
    assert tam_b_image_predicate((2, 1, 4, 3)) == ((2, 1, 4, 3) in image)


def test_tam_b_predicate_as_printed_differs():
    # the literal statement evaluates the block condition on pop(x) and
    # wrongly admits 2143 at rank 2
    assert tam_b_image_predicate_as_printed((2, 1, 4, 3))
    mismatches = {
        x
        for x in tam_b_elements(2)
        if tam_b_image_predicate_as_printed(x) != tam_b_image_predicate(x)
    }
    assert mismatches == {(2, 1, 4, 3)}


def test_preimage_ending_in_one_examples():
    assert preimage_ending_in_one((2, 4, 3, 5, 1, 7, 6, 8)) == (4, 5, 3, 2, 7, 8, 6, 1)
    assert preimage_ending_in_one((1, 2)) == (2, 1)
    assert preimage_ending_in_one((1,)) == (1,)
    with pytest.raises(ValueError):
        preimage_ending_in_one((2, 1))


def test_preimage_ending_in_one_exhaustive():
    for n in (1, 2, 3, 4, 5, 6):
        for x in {pop_tam_a(p) for p in tam_a_elements(n)}:
            y = preimage_ending_in_one(x)
            assert y[-1] == 1
            assert pop_tam_a(y) == x


def test_preimage_tam_b_examples():
    x = (1, 7, 2, 4, 3, 5, 8, 10, 9, 11, 6, 12)
    assert preimage_tam_b(x) == (7, 1, 10, 11, 9, 8, 5, 4, 2, 3, 12, 6)
    y = preimage_tam_b((1, 2, 3, 4))
    assert pop_tam_b(y) == (1, 2, 3, 4)
    y2 = preimage_tam_b((1, 3, 2, 4))
    assert pop_tam_b(y2) == (1, 3, 2, 4)
    fiber = {z for z in tam_b_elements(2) if pop_tam_b(z) == (1, 3, 2, 4)}
    assert y2 in fiber
    with pytest.raises(ValueError):
        preimage_tam_b((2, 1, 4, 3))


def test_preimage_tam_b_exhaustive():
    for n in (1, 2, 3, 4):
        for x in {pop_tam_b(z) for z in tam_b_elements(n)}:
            y = preimage_tam_b(x)
            assert pop_tam_b(y) == x


def test_adjacency_chain_worked_example():
    chain = adjacency_chain(
        (3, 1, 4, 2), (1, 3, 4, 2), (3, 7, 1, 4, 5, 8, 2, 6)
    )
    assert chain == [
        (3, 7, 1, 4, 5, 8, 2, 6),
        (3, 1, 7, 4, 5, 2, 8, 6),
        (3, 1, 4, 7, 2, 5, 8, 6),
        (3, 1, 4, 2, 7, 5, 8, 6),
        (3, 1, 2, 4, 5, 7, 8, 6),
    ]
    assert reduction(half_decomposition(chain[-1]).half) == (1, 3, 4, 2)


def test_adjacency_chain_single_step():
    # high pair already adjacent: the chain is one move long
    chain = adjacency_chain((3, 1, 2), (1, 3, 2), (6, 4, 5, 2, 3, 1))
    assert chain == [(6, 4, 5, 2, 3, 1), (4, 6, 5, 2, 1, 3)]


def test_adjacency_chain_sweep_rank3():
    from itertools import permutations

    from poplat.signed import enumerate_signed
    from poplat.tamari import tam_a_adjacent

    by_pattern = {}
    for z in enumerate_signed(3):
        by_pattern.setdefault(reduction(half_decomposition(z).half), []).append(z)
    for x in permutations((1, 2, 3)):
        for y in set(tam_a_adjacent(x)):
            for z in by_pattern[x]:
                chain = adjacency_chain(x, y, z)
                assert chain[0] == z
                for cur, nxt in zip(chain, chain[1:]):
                    assert nxt in tam_b_adjacent(cur), (cur, nxt)
                assert reduction(half_decomposition(chain[-1]).half) == y


def test_adjacency_chain_precondition_errors():
    with pytest.raises(ValueError):
        adjacency_chain((1, 3, 2), (3, 1, 2), (6, 4, 5, 2, 3, 1))  # wrong direction
    with pytest.raises(ValueError):
        adjacency_chain((2, 1, 3), (1, 2, 3), (5, 4, 6, 1, 3, 2))  # no witness
    with pytest.raises(ValueError):
        adjacency_chain((3, 1, 2), (1, 3, 2), (1, 2, 3, 4, 5, 6))  # pattern mismatch
