import random

import pytest
from flint import fmpq_poly
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeklr.exactfield import (
    CyclotomicField,
    FieldError,
    PrimeField,
    RationalField,
    cyclotomic_polynomial,
    make_field,
    parse_field_spec,
    quantum_characteristic,
)

SPECS = ["Q,q=1", "Q,q=2", "Q,q=-1", "GF(5),q=4", "GF(7),q=2", "GF(3),q=1", "Qzeta(3)", "Qzeta(4)"]


def test_parse_round_trip():
    for text in ["Q,q=2", "GF(5),q=4", "Qzeta(3),q=zeta"]:
        assert str(parse_field_spec(text)) == text
    assert str(parse_field_spec("Qzeta(3)")) == "Qzeta(3),q=zeta"
    assert str(parse_field_spec("Q")) == "Q,q=1"


def test_make_field_examples():
    F = make_field("Q,q=1")
    assert isinstance(F, RationalField) and F.degenerate
    G = make_field("GF(5),q=4")
    assert isinstance(G, PrimeField) and G.q * G.q == G.one
    Z = make_field("Qzeta(3)")
    assert isinstance(Z, CyclotomicField)
    zeta = Z.q
    assert zeta * zeta + zeta + 1 == Z.zero


@pytest.mark.parametrize(
    "spec,expected",
    [("Q,q=2", 0), ("Q,q=-1", 2), ("GF(7),q=2", 3), ("GF(3),q=1", 3), ("GF(5),q=4", 2), ("Qzeta(3)", 3), ("Q,q=1", 0)],
)
def test_quantum_characteristic(spec, expected):
    assert quantum_characteristic(make_field(spec)) == expected


@pytest.mark.parametrize("bad", ["GF(4),q=1", "GF(1)", "Q,q=0", "GF(5),q=5", "Qzeta(0)", "R,q=1", "GF(x)"])
def test_rejects_bad_specs(bad):
    with pytest.raises(FieldError):
        make_field(bad)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_prime_field_degenerate_e_is_p(p):
    assert make_field(f"GF({p}),q=1").e == p


def test_cyclotomic_polynomials():
    x = fmpq_poly([0, 1])
    assert cyclotomic_polynomial(1) == x - 1
    assert cyclotomic_polynomial(3) == x * x + x + 1
    assert cyclotomic_polynomial(4) == x * x + 1
    assert cyclotomic_polynomial(6) == x * x - x + 1
    # x^12 - 1 is the product over divisors
    product = fmpq_poly([1])
    for k in (1, 2, 3, 4, 6, 12):
        product *= cyclotomic_polynomial(k)
    assert product == x**12 - 1


def test_cyclotomic_parse_and_format():
    Z = make_field("Qzeta(3)")
    a = Z.parse_element("2*zeta^2 - 1/3 + zeta")
    assert Z.format(Z.parse_element(Z.format(a))) == Z.format(a)
    assert Z.to_rational(Z(5)) == 5
    assert Z.to_rational(Z.zeta) is None


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_field_axioms(spec, seed):
    F = make_field(spec)
    rng = random.Random(seed)
    a, b, c = (F.random_element(rng) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a and a * F.one == a
    assert a - a == F.zero
    if not F.is_zero(a):
        assert a * (F.one / a) == F.one


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS))
def test_e_stable_under_reparsing(spec):
    F = make_field(spec)
    again = make_field(str(F.spec))
    assert again.e == F.e and again == F


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.integers(-6, 6))
def test_q_power_is_a_homomorphism(spec, k):
    F = make_field(spec)
    assert F.q_power(k) * F.q_power(-k) == F.one
    assert F.q_power(k + 1) == F.q_power(k) * F.q
