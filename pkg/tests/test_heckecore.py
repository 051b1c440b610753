from itertools import combinations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeklr.heckecore import build_hecke, normal_form, regular_matrices, verify_defining_relations
from heckeklr.linalg import Matrix

from conftest import GRID_FIELDS, LEVEL_ONE, LEVEL_TWO, algebra, field


@pytest.mark.parametrize("spec", GRID_FIELDS)
@pytest.mark.parametrize("charges", LEVEL_ONE + LEVEL_TWO)
def test_dimension_formula(spec, charges):
    for d in range(0, 4):
        H = algebra(spec, charges, d)
        assert H.dimension == len(charges) ** d * factorial(d) == H.expected_dimension


def test_dimension_examples():
    assert build_hecke(field("Q,q=1"), [0], 3).dimension == 6
    assert build_hecke(field("Q,q=1"), [0, 0], 1).dimension == 2
    assert build_hecke(field("Q,q=-1"), [0], 2).dimension == 2


def test_degenerate_normal_forms():
    H = build_hecke(field("Q,q=1"), [0, 1], 2)
    assert normal_form(H, "s1*x2") == normal_form(H, "x1*s1 + 1")
    assert normal_form(H, "s1*s1") == H.one()
    level_one = build_hecke(field("Q,q=1"), [0], 3)
    assert normal_form(level_one, "x1") == level_one.element()
    assert normal_form(level_one, "s2*x1*s1") == level_one.element()


def test_two_lambda_zero_is_dual_numbers():
    H = build_hecke(field("Q,q=1"), [0, 0], 1)
    x = normal_form(H, "x1")
    assert x != H.element() and x * x == H.element()


@pytest.mark.parametrize("spec", ["Q,q=2", "Q,q=-1", "GF(7),q=2"])
def test_nondegenerate_normal_forms(spec):
    H = build_hecke(field(spec), [0, 1], 2)
    q = H.q
    assert normal_form(H, ["T1", "X1", "T1"]) == normal_form(H, "X2") * q
    T = normal_form(H, "T1")
    assert T * T == T * (q - 1) + H.one() * q
    assert normal_form(H, "X1*Xinv1") == H.one()


def test_empty_and_two_dimensional_regular_matrices():
    H0 = build_hecke(field("Q,q=1"), [0], 0)
    assert H0.dimension == 1 and regular_matrices(H0) == {}
    H = build_hecke(field("Q,q=1"), [0], 2)
    s = regular_matrices(H)["s1"]
    assert s * s == Matrix.identity(H.field, 2) and s != Matrix.identity(H.field, 2)


@pytest.mark.parametrize("spec", GRID_FIELDS)
@pytest.mark.parametrize("charges,d", [((0,), 3), ((0,), 4), ((0, 1), 3), ((0, 0), 3)])
def test_defining_relations(spec, charges, d):
    checks = verify_defining_relations(algebra(spec, charges, d))
    assert checks and all(checks.values()), checks


@pytest.mark.parametrize("spec", GRID_FIELDS)
def test_symmetric_polynomials_are_central(spec):
    H = algebra(spec, (0, 1), 3)
    mats = regular_matrices(H)
    X = [mats[n] for n in H.polynomial_names]
    N = H.dimension
    for k in range(1, H.d + 1):
        elementary = Matrix.zeros(H.field, N, N)
        for subset in combinations(X, k):
            term = Matrix.identity(H.field, N)
            for M in subset:
                term = term * M
            elementary = elementary + term
        for M in mats.values():
            assert elementary * M == M * elementary


def _random_word(H, draw):
    names = H.generator_names
    return [names[i] for i in draw(st.lists(st.integers(0, len(names) - 1), max_size=4))]


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_multiplication_is_associative(data):
    spec = data.draw(st.sampled_from(["Q,q=1", "GF(3),q=1", "Q,q=2", "Q,q=-1"]))
    H = algebra(spec, (0, 1), 3)
    a, b, c = (normal_form(H, _random_word(H, data.draw)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    # the regular representation is multiplicative
    mats = regular_matrices(H)
    word = _random_word(H, data.draw)
    M = Matrix.identity(H.field, H.dimension)
    for name in word:
        M = M * mats[name]
    image = M * Matrix.from_columns(H.field, [H.one().vector()])
    assert image.column(0) == normal_form(H, word).vector()
