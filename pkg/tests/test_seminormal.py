from collections import Counter
from math import factorial

import pytest

from heckeklr.klriso import verify_klr_relations
from heckeklr.linalg import Matrix
from heckeklr.rootdata import hook_length_count, partitions
from heckeklr.seminormal import (
    SpechtError,
    axial_distance,
    classical_oracle,
    seminormal_action,
    specht_module,
    verify_specht,
)

from conftest import field


def test_two_one_module(rational):
    S = specht_module((2, 1), rational)
    assert S.dimension == 2 and S.residues == [(0, 1, -1), (0, -1, 1)]
    psi1, psi2 = S.action.psi
    assert psi1.is_zero()
    assert psi2 == Matrix.from_rows(rational, [[0, 1], [1, 0]])
    assert all(y.is_zero() for y in S.action.y)


@pytest.mark.parametrize("shape", [(3,), (1, 1, 1), (4,)])
def test_one_dimensional_modules(shape, rational):
    S = specht_module(shape, rational)
    assert S.dimension == 1
    if len(shape) == 1:
        assert all(p.is_zero() for p in S.action.psi)
        assert all(M.is_identity() for M in seminormal_action(S))


def test_two_one_seminormal_values(rational):
    s1, s2 = seminormal_action(specht_module((2, 1), rational))
    half = rational(1) / rational(2)
    assert s1 == Matrix.from_rows(rational, [[1, 0], [0, -1]])
    assert s2[0, 0] == -half and s2[1, 1] == half
    assert s2[0, 1] == 3 * half and s2[1, 0] == half
    assert s2[0, 1] * s2[1, 0] == rational(3) / rational(4)


def test_oracle_examples(rational):
    s1, s2 = classical_oracle((2, 1), rational)
    half = rational(1) / rational(2)
    assert (s2[0, 0], s2[1, 1]) == (-half, half)
    assert s2[0, 1] * s2[1, 0] == 1 - rational(1) / rational(4)
    assert classical_oracle((2,), rational)[0] == Matrix.from_rows(rational, [[1]])
    assert classical_oracle((1, 1), rational)[0] == Matrix.from_rows(rational, [[-1]])


def test_axial_distance(rational):
    S = specht_module((2, 1), rational)
    assert [axial_distance(t, 2) for t in S.tableaux] == [-2, 2]


@pytest.mark.parametrize("d", range(1, 6))
def test_degenerate_specht_modules(d):
    F = field("Q,q=1")
    total = 0
    for shape in partitions(d):
        result = verify_specht(shape, F)
        assert result["ok"], (shape, result["checks"])
        total += result["dimension"] ** 2
    assert total == factorial(d)


@pytest.mark.parametrize("spec", ["Q,q=2", "Q,q=3"])
@pytest.mark.parametrize("d", range(1, 5))
def test_hoefsmit_modules(spec, d):
    F = field(spec)
    for shape in partitions(d):
        result = verify_specht(shape, F)
        assert result["ok"], (shape, result["checks"])
        for M in result["matrices"]:
            n = M.nrows
            assert M * M == M.scale(F.q - 1) + Matrix.identity(F, n).scale(F.q)


@pytest.mark.parametrize("qchoice", ["paper", "alt"])
def test_both_choices_give_a_representation(qchoice):
    result = verify_specht((3, 2), field("Q,q=1"), qchoice)
    assert result["checks"]["hecke relations"] and result["checks"]["klr relations"]


@pytest.mark.parametrize("d", range(1, 6))
def test_character_determines_shape(d):
    F = field("Q,q=1")
    seen = {}
    for shape in partitions(d):
        S = specht_module(shape, F)
        key = tuple(sorted(Counter(S.residues).items()))
        assert key not in seen
        seen[key] = shape
        assert len(S.residues) == hook_length_count(shape)


def test_relations_on_module():
    F = field("Q,q=1")
    S = specht_module((3, 1, 1), F)
    assert verify_klr_relations(S.action).ok


def test_positive_e_is_rejected():
    with pytest.raises(SpechtError):
        specht_module((2,), field("Q,q=-1"))
    with pytest.raises(SpechtError):
        classical_oracle((2,), field("GF(3),q=1"))
