from collections import defaultdict

import pytest

from heckeklr.blockspectral import (
    FormalCharacter,
    SpectralError,
    block_decomposition,
    character,
    eigenprojection,
    minimal_polynomial,
    weight_covariance,
    weight_idempotents,
)
from heckeklr.heckecore import build_hecke
from heckeklr.linalg import Matrix
from heckeklr.rootdata import PositiveRoot, hook_length_count, partitions, residue_data
from heckeklr.seminormal import specht_module

from conftest import GRID_FIELDS, LEVEL_ONE, LEVEL_TWO, algebra, blocks, decomposition


def test_group_algebra_of_s2_weight_idempotents(rational):
    H = build_hecke(rational, [0], 2)
    E = weight_idempotents(H)
    s = H.matrix_of("s1")
    one = Matrix.identity(rational, 2)
    half = rational(1) / rational(2)
    assert set(E) == {(0, 1), (0, -1)}
    assert E[0, 1] == (one + s).scale(half)
    assert E[0, -1] == (one - s).scale(half)


def test_dual_numbers_have_one_weight(rational):
    H = build_hecke(rational, [0, 0], 1)
    E = weight_idempotents(H)
    assert list(E) == [(0,)] and E[0,].is_identity()
    (block,) = block_decomposition(H).values()
    assert block.dimension == 2


@pytest.mark.parametrize("spec", GRID_FIELDS)
@pytest.mark.parametrize("charges", LEVEL_ONE + LEVEL_TWO)
def test_weight_idempotents_are_complete_and_orthogonal(spec, charges):
    H = algebra(spec, charges, 3)
    E = weight_idempotents(H)
    N = H.dimension
    total = Matrix.zeros(H.field, N, N)
    for i, A in E.items():
        total = total + A
        for j, B in E.items():
            assert A * B == (A if i == j else Matrix.zeros(H.field, N, N))
    assert total.is_identity()


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_level_one_blocks_match_tableau_counts(d):
    """In characteristic zero a block's dimension is the sum of (f^lambda)^2 over its partitions."""
    expected = defaultdict(int)
    for shape in partitions(d):
        alpha, _ = residue_data(shape, 0)
        expected[alpha] += hook_length_count(shape) ** 2
    found = {alpha: b.dimension for alpha, b in decomposition("Q,q=1", (0,), d).items()}
    assert found == dict(expected)


def test_s3_block_dimensions():
    assert sorted(b.dimension for b in blocks("Q,q=1", (0,), 3)) == [1, 1, 4]


def test_s2_in_characteristic_two_is_one_block():
    D = decomposition("GF(2),q=1", (0,), 2)
    # residues 1 and -1 coincide mod 2, so both sequences read (0, 1)
    assert [str(a) for a in D] == ["a0+a1"] and D[PositiveRoot.from_sequence(2, (0, 1))].dimension == 2
    assert list(D[PositiveRoot.from_sequence(2, (0, 1))].idempotents) == [(0, 1)]


@pytest.mark.parametrize("spec", GRID_FIELDS)
@pytest.mark.parametrize("charges", LEVEL_ONE + LEVEL_TWO)
def test_block_checks(spec, charges):
    for d in range(0, 4):
        D = decomposition(spec, charges, d)
        assert D.ok, D.checks
        assert sum(b.dimension for b in D.values()) == len(charges) ** d * max(1, _factorial(d))


def _factorial(d):
    out = 1
    for k in range(2, d + 1):
        out *= k
    return out


@pytest.mark.parametrize("spec", GRID_FIELDS)
def test_block_realization(spec):
    for block in blocks(spec, (0, 1), 3):
        n = block.dimension
        total = Matrix.zeros(block.field, n, n)
        for E in block.idempotents.values():
            total = total + E
        assert total.is_identity()
        # the adapted basis spans e_alpha H, and e_alpha lies in it
        assert block.adapted_basis.rank() == n
        assert block.unit.nrows == n and not block.unit.is_zero()
        assert weight_covariance(block)


def test_eigenprojection_examples(rational):
    one = Matrix.identity(rational, 3)
    assert eigenprojection(one, 1).is_identity()
    N = Matrix.from_rows(rational, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert eigenprojection(N, 0).is_identity()
    A = Matrix.from_rows(rational, [[0, 1], [1, 0]])
    half = rational(1) / rational(2)
    I2 = Matrix.identity(rational, 2)
    assert eigenprojection(A, 1) == (I2 + A).scale(half)
    assert eigenprojection(A, -1) == (I2 - A).scale(half)


def test_eigenprojection_properties(rational):
    A = Matrix.from_rows(rational, [[2, 1, 0, 0], [0, 2, 0, 0], [0, 0, 5, 0], [0, 0, 1, 5]])
    P, R = eigenprojection(A, 2), eigenprojection(A, 5)
    I4 = Matrix.identity(rational, 4)
    assert P * P == P and P * A == A * P and P + R == I4
    assert ((A - I4.scale(rational(2))) ** 2 * P).is_zero()
    assert minimal_polynomial(A) == [rational(c) for c in (100, -140, 69, -14, 1)]


def test_eigenvalue_outside_window_is_reported(rational):
    H = build_hecke(rational, [0], 2)

    # an honest algebra never raises; a corrupted spectral search does
    from heckeklr import blockspectral

    original = blockspectral.residue_window
    blockspectral.residue_window = lambda e, charges, d: [0]
    try:
        with pytest.raises(SpectralError):
            blockspectral.spectral_data(H)
    finally:
        blockspectral.residue_window = original


def test_characters(rational):
    block = next(b for b in blocks("Q,q=1", (0,), 2) if list(b.idempotents) == [(0, 1)])
    assert character(block) == FormalCharacter({(0, 1): 1})
    S = specht_module((2, 1), rational)
    assert character(S) == FormalCharacter({(0, -1, 1): 1, (0, 1, -1): 1})

    class Zero:
        idempotents = {}

    empty = character(Zero())
    assert empty.dims == {} and empty.total == 0


@pytest.mark.parametrize("spec", GRID_FIELDS)
def test_character_total_is_dimension(spec):
    for block in blocks(spec, (0, 0), 3):
        assert character(block).total == block.dimension
