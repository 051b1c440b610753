from collections import Counter
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeklr.rootdata import (
    DominantWeight,
    PositiveRoot,
    adjacency,
    all_permutations,
    cartan_entry,
    enumerate_I_alpha,
    hook_length_count,
    inverse_permutation,
    left_multiply,
    partitions,
    permutation_from_word,
    permutation_length,
    reduced_word,
    residue_data,
    residue_window,
    standard_tableaux,
)


@pytest.mark.parametrize("e,i,j,expected", [(0, 3, 3, 2), (0, 0, 1, -1), (2, 0, 1, -2), (5, 0, 3, 0), (3, 2, 0, -1), (0, 1, 0, -1)])
def test_cartan_entries(e, i, j, expected):
    assert cartan_entry(e, i, j) == expected


def test_cartan_matrix_is_symmetric():
    for e in (0, 2, 3, 4, 5):
        for i, j in product(range(-3, 4), repeat=2):
            assert cartan_entry(e, i, j) == cartan_entry(e, j, i)


def test_adjacency_cases():
    assert adjacency(0, 0, 1) == "right"
    assert adjacency(0, 1, 0) == "left"
    assert adjacency(0, 0, 2) == "none"
    assert adjacency(2, 0, 1) == "double"
    assert adjacency(3, 2, 0) == "right"


def test_enumerate_examples():
    assert enumerate_I_alpha(0, PositiveRoot.from_sequence(0, (0, 1))) == [(0, 1), (1, 0)]
    assert enumerate_I_alpha(2, PositiveRoot.from_sequence(2, (0, 2))) == [(0, 0)]
    orbit = enumerate_I_alpha(0, PositiveRoot.from_sequence(0, (-1, 0, 1)))
    assert orbit == sorted(set(permutations((-1, 0, 1))))
    assert enumerate_I_alpha(0, PositiveRoot(())) == [()]


@pytest.mark.parametrize("e,d", [(2, 3), (3, 3), (4, 2)])
def test_orbits_partition_sequences(e, d):
    everything = set(product(range(e), repeat=d))
    contents = {PositiveRoot.from_sequence(e, s) for s in everything}
    seen = []
    for alpha in contents:
        seen.extend(enumerate_I_alpha(e, alpha))
    assert len(seen) == len(set(seen)) == len(everything) == len(residue_window(e, (0,), d)) ** d


def test_weights_and_roots():
    w = DominantWeight(0, (1, 0, 0))
    assert w.charges == (0, 0, 1) and w.level == 3 and w.pairing(0) == 2
    assert str(w) == "2L0+L1"
    alpha = PositiveRoot.from_sequence(0, (-1, 0, 1, 0))
    assert alpha.height == 4 and str(alpha) == "a-1+2a0+a1"


def test_residue_data_examples():
    alpha, pairs = residue_data((2, 1), 0)
    assert str(alpha) == "a-1+a0+a1"
    assert [seq for _, seq in pairs] == [(0, 1, -1), (0, -1, 1)]
    alpha, pairs = residue_data((3,), 0)
    assert [seq for _, seq in pairs] == [(0, 1, 2)]
    assert len(residue_data((2, 2), 0)[1]) == 2


def test_reduced_word_examples():
    assert reduced_word((1, 2, 3)) == ()
    assert reduced_word((2, 1, 3)) == (1,)
    longest = (3, 2, 1)
    words = brute_force_reduced_words(longest)
    assert reduced_word(longest) == min(words) == (1, 2, 1)


def brute_force_reduced_words(w):
    d = len(w)
    length = permutation_length(w)
    return [word for word in product(range(1, d), repeat=length) if permutation_from_word(word, d) == tuple(w)]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_reduced_words_are_reduced_and_lex_minimal(d):
    for w in all_permutations(d):
        word = reduced_word(w)
        assert len(word) == permutation_length(w)
        assert permutation_from_word(word, d) == w
        if d <= 3:
            assert word == min(brute_force_reduced_words(w))


def test_permutation_helpers():
    w = (2, 3, 1)
    assert left_multiply(1, w) == (1, 3, 2)
    assert inverse_permutation(w) == (3, 1, 2)
    assert len(all_permutations(4)) == 24 and all_permutations(3)[0] == (1, 2, 3)


@pytest.mark.parametrize("d", range(1, 7))
def test_tableaux_and_swaps(d):
    total = 0
    for shape in partitions(d):
        tableaux = standard_tableaux(shape)
        assert len(tableaux) == hook_length_count(shape)
        total += len(tableaux) ** 2
        for t in tableaux:
            assert t.is_standard()
            for r in range(1, d):
                (a1, b1), (a2, b2) = t.position(r), t.position(r + 1)
                adjacent = a1 == a2 or b1 == b2
                assert t.swap(r).is_standard() == (not adjacent)
    # sum of squares of the numbers of standard tableaux is d!
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    assert total == fact


def test_last_letter_order():
    rows = [t.rows for t in standard_tableaux((2, 1))]
    assert rows == [((1, 2), (3,)), ((1, 3), (2,))]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7))
def test_partition_weights_have_height_d(d):
    for shape in partitions(d):
        alpha, pairs = residue_data(shape, 0)
        assert alpha.height == d
        assert all(Counter(seq) == Counter(alpha.multiset()) for _, seq in pairs)
