import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeklr.exactfield import make_field
from heckeklr.linalg import Matrix
from heckeklr.symbolic import (
    SeriesError,
    TruncatedSeries,
    apply_permutation,
    divide_by_linear,
    divided_difference,
    evaluate_on_nilpotents,
    invert_series,
)

FIELDS = ["Q,q=1", "GF(2),q=1", "GF(7),q=2", "Qzeta(3)"]


def y(F, r, d=3, order=6):
    return TruncatedSeries.variable(F, d, order, r)


def random_series(F, rng, d=3, degree=3, order=7, terms=5):
    coeffs = {}
    for _ in range(terms):
        exp = [0] * d
        for _ in range(rng.randint(0, degree)):
            exp[rng.randrange(d)] += 1
        coeffs[tuple(exp)] = F.random_element(rng)
    return TruncatedSeries(F, d, order, coeffs)


def swap(r, d):
    w = list(range(1, d + 1))
    w[r - 1], w[r] = w[r], w[r - 1]
    return tuple(w)


def test_divided_difference_examples(rational):
    F = rational
    y1, y2 = y(F, 1), y(F, 2)
    assert divided_difference(1, y1) == -1
    assert divided_difference(1, y1 * y2).is_zero()
    assert divided_difference(1, y1 * y1) == -(y1 + y2)


def test_apply_permutation_examples(rational):
    F = rational
    y1, y3 = y(F, 1), y(F, 3)
    f = y1 * y3 + y1
    assert apply_permutation((1, 2, 3), f) == f
    assert apply_permutation((2, 1, 3), y1) == y(F, 2)
    # s_1 s_2 as a composition of single swaps
    s1s2 = (2, 3, 1)
    assert apply_permutation(s1s2, f) == apply_permutation(swap(1, 3), apply_permutation(swap(2, 3), f))
    with pytest.raises(SeriesError):
        apply_permutation((1, 2), f)


def test_invert_examples():
    F = make_field("Q,q=1")
    one_plus = 1 + TruncatedSeries.variable(F, 1, 1, 1)
    assert invert_series(one_plus) == 1 - TruncatedSeries.variable(F, 1, 1, 1)
    assert invert_series(TruncatedSeries.constant(F, 2, 3, 4)) == TruncatedSeries.constant(F, 2, 3, F(1) / 4)
    G = make_field("Q,q=-1")
    q = G.q
    f = 1 - q + y(G, 2, 2, 2) * q - y(G, 1, 2, 2)
    assert f * invert_series(f) == 1
    with pytest.raises(SeriesError):
        invert_series(y(F, 1))


def test_divide_by_linear_examples(rational):
    F = rational
    y1, y2 = y(F, 1), y(F, 2)
    assert divide_by_linear(y2 - y1, 1, 2) == 1
    assert divide_by_linear(y2 * y2 - y1 * y1, 1, 2) == y1 + y2
    assert divide_by_linear(y1 * 0, 1, 2).is_zero()
    with pytest.raises(SeriesError):
        divide_by_linear(y1, 1, 2)


def test_evaluate_examples(rational):
    F = rational
    N = Matrix.from_rows(F, [[0, 1], [0, 0]])
    f = invert_series(1 + TruncatedSeries.variable(F, 1, 3, 1))
    assert evaluate_on_nilpotents(f, [N]) == Matrix.identity(F, 2) - N
    A = Matrix.from_rows(F, [[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    B = A * A
    g = TruncatedSeries.variable(F, 2, 4, 1) * TruncatedSeries.variable(F, 2, 4, 2)
    assert evaluate_on_nilpotents(g, [A, B]) == A * B


def test_rendering_marks_truncation(rational):
    text = str(1 + y(rational, 1, 2, 2) * 3)
    assert text.endswith("+ O(deg 3)") and "3*y1" in text


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6), st.integers(1, 2))
def test_product_rule(spec, seed, r):
    F = make_field(spec)
    rng = random.Random(seed)
    f, g = random_series(F, rng), random_series(F, rng)
    fs, gs = apply_permutation(swap(r, 3), f), apply_permutation(swap(r, 3), g)
    lhs = divided_difference(r, f * g)
    assert lhs == divided_difference(r, f) * g + fs * divided_difference(r, g)
    assert lhs == divided_difference(r, f) * gs + f * divided_difference(r, g)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6), st.integers(1, 2))
def test_divided_difference_kills_invariants(spec, seed, r):
    F = make_field(spec)
    f = random_series(F, random.Random(seed))
    fs = apply_permutation(swap(r, 3), f)
    assert divided_difference(r, f + fs).is_zero()
    assert divided_difference(r, f * fs).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6))
def test_permutation_action_is_a_group_action(spec, seed):
    F = make_field(spec)
    rng = random.Random(seed)
    f = random_series(F, rng)
    v = tuple(rng.sample([1, 2, 3], 3))
    w = tuple(rng.sample([1, 2, 3], 3))
    vw = tuple(v[w[k] - 1] for k in range(3))
    assert apply_permutation(vw, f) == apply_permutation(v, apply_permutation(w, f))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6))
def test_divide_by_linear_inverts_multiplication(spec, seed):
    F = make_field(spec)
    rng = random.Random(seed)
    h = random_series(F, rng, order=6)
    r, s = rng.sample([1, 2, 3], 2)
    linear = TruncatedSeries.variable(F, 3, 6, s) - TruncatedSeries.variable(F, 3, 6, r)
    quotient = divide_by_linear(h * linear, r, s)
    assert quotient.truncated_equal(h, 5)
    assert divided_difference(1, h).truncated_equal(divide_by_linear(apply_permutation(swap(1, 3), h) - h, 2, 1), 5)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6))
def test_inverse_multiplies_to_one(spec, seed):
    F = make_field(spec)
    rng = random.Random(seed)
    f = random_series(F, rng) + 1
    if f.constant_term() == 0:
        f = f + 1
    assert f * invert_series(f) == 1


def commuting_nilpotents(F, rng, n=4, count=3):
    shift = Matrix.from_sparse(F, n, n, {(i, i + 1): 1 for i in range(n - 1)})
    powers = [shift]
    for _ in range(n - 2):
        powers.append(powers[-1] * shift)
    mats = []
    for _ in range(count):
        M = Matrix.zeros(F, n, n)
        for P in powers:
            M = M + P.scale(F.random_element(rng))
        mats.append(M)
    return mats


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(0, 10**6))
def test_evaluation_is_a_ring_homomorphism(spec, seed):
    F = make_field(spec)
    rng = random.Random(seed)
    mats = commuting_nilpotents(F, rng)
    f, g = random_series(F, rng, order=9), random_series(F, rng, order=9)
    ev = lambda s: evaluate_on_nilpotents(s, mats)  # noqa: E731
    assert ev(f * g) == ev(f) * ev(g)
    assert ev(f + g) == ev(f) + ev(g)
