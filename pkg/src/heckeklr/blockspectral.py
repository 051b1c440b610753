"""Weight idempotents, blocks and formal characters.

The weight idempotent ``e(i)`` is the product over ``r`` of the generalized
eigenprojections of ``x_r`` (resp. ``X_r``) for the eigenvalue attached to
``i_r``.  Each projection is a polynomial in a single generator obtained by the
Chinese remainder theorem from that generator's minimal polynomial, which in
turn is read off a Krylov sequence started at the identity element.  This is
legitimate because the left regular representation is faithful.

Blocks are the images of the central idempotents ``e_alpha``, the sums of all
``e(i)`` of a given content ``alpha``.  A :class:`Block` carries a basis of
``e_alpha H`` chosen inside ``{e_alpha b}``; on demand it re-expresses the
generators in a basis adapted to the weight spaces ``e(i) H_alpha``, in which
every ``e(i)`` is a diagonal 0/1 matrix.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from .heckecore import AlgebraElement, HeckeAlgebra
from .linalg import Matrix
from .rootdata import PositiveRoot, residue_window, swap_places

__all__ = [
    "SpectralError",
    "Block",
    "FormalCharacter",
    "SpectralData",
    "minimal_polynomial",
    "krylov_minimal_polynomial",
    "eigenprojection",
    "spectral_data",
    "weight_elements",
    "weight_idempotents",
    "block_decomposition",
    "character",
    "weight_covariance",
    "BlockDecomposition",
]


class SpectralError(ArithmeticError):
    """Raised when an eigenvalue falls outside the expected set or a consistency check fails."""


# ---------------------------------------------------------------------------
# univariate polynomials as coefficient lists (constant term first)


def _trim(p: list, field) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence, field) -> list:
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out, field)


def _poly_sub(a: Sequence, b: Sequence, field) -> list:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else field.zero) - (b[k] if k < len(b) else field.zero) for k in range(n)]
    return _trim(out, field)


def _poly_divmod(a: Sequence, b: Sequence, field) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b), field)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = field.one / b[-1]
    quotient = [field.zero] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a, field)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * lead_inv
        quotient[shift] = c
        for k, y in enumerate(b):
            a[shift + k] = a[shift + k] - c * y
        a.pop()
    return _trim(quotient, field), _trim(a, field)


def _poly_xgcd(a: Sequence, b: Sequence, field) -> tuple[list, list, list]:
    """``(g, s, t)`` with ``s a + t b = g``."""
    r0, r1 = _trim(list(a), field), _trim(list(b), field)
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        quot, rem = _poly_divmod(r0, r1, field)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, field), field)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(quot, t1, field), field)
    return r0, s0, t0


def _linear_power(root, m: int, field) -> list:
    out = [field.one]
    for _ in range(m):
        out = _poly_mul(out, [-root, field.one], field)
    return out


def _root_multiplicity(poly: Sequence, root, field) -> tuple[int, list]:
    """Multiplicity of ``root`` in ``poly`` and the cofactor."""
    m = 0
    poly = list(poly)
    while len(poly) > 1:
        quot, rem = _poly_divmod(poly, [-root, field.one], field)
        if rem:
            break
        poly = quot
        m += 1
    return m, poly


def _projection_polynomial(minpoly: Sequence, root, field) -> list:
    """``P`` with ``P = 1 mod (t - root)^m`` and ``P = 0`` modulo the cofactor."""
    m, cofactor = _root_multiplicity(minpoly, root, field)
    if m == 0:
        raise SpectralError(f"{field.format(root)} is not an eigenvalue")
    local = _linear_power(root, m, field)
    g, s, _ = _poly_xgcd(cofactor, local, field)
    if len(g) != 1:
        raise SpectralError("cofactor not coprime to the local factor")
    inverse = [c / g[0] for c in s]
    _, proj = _poly_divmod(_poly_mul(cofactor, inverse, field), minpoly, field)
    return proj


def _evaluate_polynomial(poly: Sequence, A: Matrix, V: Matrix | None = None) -> Matrix:
    """``poly(A) @ V`` (``V`` defaults to the identity) by Horner's rule."""
    field = A.field
    V = Matrix.identity(field, A.nrows) if V is None else V
    if not poly:
        return Matrix.zeros(field, A.nrows, V.ncols)
    acc = V.scale(poly[-1])
    for c in reversed(poly[:-1]):
        acc = A * acc + V.scale(c)
    return acc


# ---------------------------------------------------------------------------
# minimal polynomials


def krylov_minimal_polynomial(apply, start: Matrix, field, limit: int | None = None) -> list:
    """Minimal polynomial of an operator relative to the column vector ``start``.

    ``apply`` maps a column vector to its image.  The Krylov vectors
    ``v, Av, A^2 v, ...`` are generated until the first linear dependence,
    detected by exact rank computations.
    """
    vectors = [start]
    limit = limit or start.nrows + 1
    while len(vectors) <= limit:
        stacked = Matrix.hstack(field, vectors)
        if stacked.rank() < len(vectors):
            kernel = stacked.nullspace()
            coeffs = kernel.column(0)
            lead = coeffs[-1]
            return [c / lead for c in coeffs]
        vectors.append(apply(vectors[-1]))
    raise SpectralError("Krylov sequence did not terminate")


def minimal_polynomial(A: Matrix) -> list:
    """Minimal polynomial of a square matrix, from the powers of ``A`` flattened to vectors."""
    field = A.field
    n = A.nrows
    if n == 0:
        return [field.one]

    def flat(M: Matrix) -> Matrix:
        return Matrix.from_columns(field, [[x for row in M.tolist() for x in row]])

    powers = [Matrix.identity(field, n)]
    while True:
        stacked = Matrix.hstack(field, [flat(P) for P in powers])
        if stacked.rank() < len(powers):
            coeffs = stacked.nullspace().column(0)
            return [c / coeffs[-1] for c in coeffs]
        powers.append(powers[-1] * A)


def eigenprojection(A: Matrix, eigenvalue) -> Matrix:
    """Projection onto the generalized eigenspace of ``A`` for ``eigenvalue``, as a polynomial in ``A``."""
    field = A.field
    poly = _projection_polynomial(minimal_polynomial(A), field(eigenvalue), field)
    return _evaluate_polynomial(poly, A)


# ---------------------------------------------------------------------------
# spectral data of a Hecke algebra


@dataclass
class SpectralData:
    """Minimal polynomials of the polynomial generators and their projection polynomials."""

    minimal_polynomials: list[list]
    # projections[r][residue] is a coefficient list, for r = 0..d-1
    projections: list[dict[int, list]]


def spectral_data(H: HeckeAlgebra) -> SpectralData:
    """Factor each ``x_r`` (resp. ``X_r``) over the expected eigenvalues."""
    cache = H.__dict__.get("_spectral_data")
    if cache is not None:
        return cache
    field = H.field
    window = residue_window(H.e, H.weight.charges, H.d)
    one = Matrix.from_columns(field, [H.one().vector()])
    minpolys, projections = [], []
    for name in H.polynomial_names:
        L = H.matrix_of(name)
        minpoly = krylov_minimal_polynomial(lambda v, L=L: L * v, one, field)
        remaining = list(minpoly)
        found: dict[int, list] = {}
        for res in window:
            root = H.eigenvalue(res)
            m, cofactor = _root_multiplicity(remaining, root, field)
            if m:
                remaining = cofactor
                found[res] = _projection_polynomial(minpoly, root, field)
        if len(remaining) > 1:
            raise SpectralError(f"{name} has eigenvalues outside the expected set")
        minpolys.append(minpoly)
        projections.append(found)
    data = SpectralData(minpolys, projections)
    H.__dict__["_spectral_data"] = data
    return data


def _power_table(A: Matrix, V: Matrix, degree: int) -> list[Matrix]:
    table = [V]
    for _ in range(degree):
        table.append(A * table[-1])
    return table


def weight_elements(H: HeckeAlgebra) -> dict[tuple[int, ...], Matrix]:
    """Coordinates of every nonzero ``e(i)`` as a column vector, found by a pruned tree search."""
    cache = H.__dict__.get("_weight_elements")
    if cache is not None:
        return cache
    field = H.field
    data = spectral_data(H)
    current: dict[tuple[int, ...], Matrix] = {(): Matrix.from_columns(field, [H.one().vector()])}
    for r, name in enumerate(H.polynomial_names):
        L = H.matrix_of(name)
        prefixes = list(current)
        V = Matrix.hstack(field, [current[p] for p in prefixes])
        degree = max((len(p) for p in data.projections[r].values()), default=1) - 1
        powers = _power_table(L, V, max(degree, 0))
        nxt: dict[tuple[int, ...], Matrix] = {}
        for res, poly in data.projections[r].items():
            image = Matrix.zeros(field, V.nrows, V.ncols)
            for k, c in enumerate(poly):
                if c != 0:
                    image = image + powers[k].scale(c)
            for j, prefix in enumerate(prefixes):
                col = image.take(cols=[j])
                if not col.is_zero():
                    nxt[prefix + (res,)] = col
        current = dict(sorted(nxt.items()))
    H.__dict__["_weight_elements"] = current
    return current


def weight_idempotents(H: HeckeAlgebra) -> dict[tuple[int, ...], Matrix]:
    """Matrices of left multiplication by every nonzero ``e(i)`` on the whole algebra."""
    field = H.field
    data = spectral_data(H)
    nonzero = weight_elements(H)
    projections = [
        {res: _evaluate_polynomial(poly, H.matrix_of(name)) for res, poly in data.projections[r].items()}
        for r, name in enumerate(H.polynomial_names)
    ]
    out: dict[tuple[int, ...], Matrix] = {}
    prefix_cache: dict[tuple[int, ...], Matrix] = {(): Matrix.identity(field, H.dimension)}
    for seq in nonzero:
        for k in range(1, len(seq) + 1):
            if seq[:k] not in prefix_cache:
                prefix_cache[seq[:k]] = prefix_cache[seq[: k - 1]] * projections[k - 1][seq[k - 1]]
        out[seq] = prefix_cache[seq]
    return out


# ---------------------------------------------------------------------------
# blocks


@dataclass
class FormalCharacter:
    """Weight-space dimensions of a module, keyed by residue sequence."""

    dims: dict[tuple[int, ...], int]

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalCharacter) and self.dims == other.dims

    def items(self):
        return self.dims.items()


def _sparse(vec: Matrix) -> dict[int, object]:
    return {i: v for i, v in enumerate(vec.column(0)) if v != 0}


def _dense(H: HeckeAlgebra, vec: Mapping[int, object]) -> Matrix:
    entries = {(i, 0): v for i, v in vec.items()}
    return Matrix.from_sparse(H.field, H.dimension, 1, entries)


class Block:
    """The block ``H_alpha = e_alpha H`` together with its weight-space structure.

    The left multiplication matrix of ``e_alpha`` is built column by column as
    ``e_alpha x^mu w = x^mu (e_alpha w)``, using that ``e_alpha`` is a polynomial
    in the commuting ``x_r``.  Its pivot columns give the block basis.
    """

    def __init__(self, algebra: HeckeAlgebra, alpha: PositiveRoot, sequences: list[tuple[int, ...]], element: Matrix):
        self.algebra = algebra
        self.alpha = alpha
        self.sequences = sequences  # nonzero e(i) with content alpha, lex order
        self._element = element

    @property
    def field(self):
        return self.algebra.field

    @property
    def e(self) -> int:
        return self.algebra.e

    @property
    def d(self) -> int:
        return self.algebra.d

    @property
    def degenerate(self) -> bool:
        return self.algebra.degenerate

    @cached_property
    def e_alpha(self) -> AlgebraElement:
        return self.algebra.element(_sparse(self._element))

    @cached_property
    def left_matrix(self) -> Matrix:
        """Left multiplication by ``e_alpha`` on the whole algebra."""
        H = self.algebra
        field = H.field
        start = _sparse(self._element)
        right_images = []
        for w in H.permutations:
            right_images.append(_dense(H, H.right_permutation(w, start)))
        base = Matrix.hstack(field, right_images)
        blocks: dict[tuple[int, ...], Matrix] = {}
        exponents = []
        for mu, _ in H.basis[:: len(H.permutations)]:
            exponents.append(mu)
        for mu in exponents:
            if mu in blocks:
                continue
            # build x^mu e_alpha w from a neighbour with one fewer factor
            r = next((k for k in range(H.d - 1, -1, -1) if mu[k] > 0), None)
            if r is None:
                blocks[mu] = base
                continue
            lower = list(mu)
            lower[r] -= 1
            blocks[mu] = H.matrix_of(H.polynomial_names[r]) * blocks[tuple(lower)]
        return Matrix.hstack(field, [blocks[mu] for mu in exponents])

    @cached_property
    def _pivots(self) -> list[int]:
        return self.left_matrix.pivot_columns()

    @property
    def dimension(self) -> int:
        return len(self._pivots)

    @cached_property
    def basis_matrix(self) -> Matrix:
        """Columns are the block basis ``e_alpha b`` for the pivot monomials ``b``."""
        return self.left_matrix.take(cols=self._pivots)

    # -- realization in a weight-adapted basis ------------------------------------
    @cached_property
    def _realization(self):
        H = self.algebra
        field = H.field
        B = self.basis_matrix
        n = B.ncols
        rows = B.T.pivot_columns()
        to_coords = B.take(rows=rows).inverse()

        def coords(V: Matrix) -> Matrix:
            return to_coords * V.take(rows=rows)

        raw = {name: coords(H.matrix_of(name) * B) for name in H.generator_names}
        unit = coords(self._element)
        data = spectral_data(H)
        projections = [
            {res: _evaluate_polynomial(poly, raw[name]) for res, poly in data.projections[r].items()}
            for r, name in enumerate(H.polynomial_names)
        ]
        idempotents: dict[tuple[int, ...], Matrix] = {}
        for seq in self.sequences:
            E = Matrix.identity(field, n)
            for r, res in enumerate(seq):
                E = E * projections[r][res]
            if not E.is_zero():
                idempotents[seq] = E
        columns: list[Matrix] = []
        slices: dict[tuple[int, ...], tuple[int, int]] = {}
        start = 0
        for seq, E in idempotents.items():
            cols = E.pivot_columns()
            columns.append(E.take(cols=cols))
            slices[seq] = (start, start + len(cols))
            start += len(cols)
        if start != n:
            raise SpectralError(f"weight spaces of block {self.alpha} do not fill it ({start} of {n})")
        U = Matrix.hstack(field, columns) if columns else Matrix.identity(field, n)
        U_inv = U.inverse()
        matrices = {name: U_inv * M * U for name, M in raw.items()}
        adapted = {}
        for seq, (a, b) in slices.items():
            adapted[seq] = Matrix.from_sparse(field, n, n, {(k, k): 1 for k in range(a, b)})
            if U_inv * idempotents[seq] * U != adapted[seq]:
                raise SpectralError("weight idempotents are not simultaneously diagonal")
        return matrices, adapted, slices, U_inv * unit, B * U

    @property
    def matrices(self) -> dict[str, Matrix]:
        """Generator matrices on the block in the weight-adapted basis."""
        return self._realization[0]

    @property
    def idempotents(self) -> dict[tuple[int, ...], Matrix]:
        """Nonzero ``e(i)`` as diagonal 0/1 matrices in the adapted basis."""
        return self._realization[1]

    @property
    def slices(self) -> dict[tuple[int, ...], tuple[int, int]]:
        return self._realization[2]

    @property
    def unit(self) -> Matrix:
        """Coordinates of ``e_alpha`` (the identity of the block)."""
        return self._realization[3]

    @property
    def adapted_basis(self) -> Matrix:
        """The adapted basis expressed in the monomial coordinates of the whole algebra."""
        return self._realization[4]

    def generator(self, name: str) -> Matrix:
        return self.matrices[name]

    def __repr__(self) -> str:
        return f"Block({self.alpha}, dim={self.dimension})"


@dataclass
class BlockDecomposition:
    """All blocks of an algebra together with the checks made while building them."""

    algebra: HeckeAlgebra
    blocks: dict[PositiveRoot, Block]
    checks: dict[str, bool]

    def __getitem__(self, alpha: PositiveRoot) -> Block:
        return self.blocks[alpha]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def items(self):
        return self.blocks.items()

    def values(self):
        return self.blocks.values()

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def block_decomposition(H: HeckeAlgebra) -> BlockDecomposition:
    """Group the weight idempotents into blocks and check the central idempotents."""
    field = H.field
    elements = weight_elements(H)
    groups: dict[PositiveRoot, list[tuple[int, ...]]] = defaultdict(list)
    for seq in elements:
        groups[PositiveRoot.from_sequence(H.e, seq)].append(seq)
    checks: dict[str, bool] = {}
    unit = H.one().coords
    total = Matrix.zeros(field, H.dimension, 1)
    for vec in elements.values():
        total = total + vec
    checks["weight idempotents sum to 1"] = _sparse(total) == unit
    blocks: dict[PositiveRoot, Block] = {}
    for alpha in sorted(groups):
        vec = Matrix.zeros(field, H.dimension, 1)
        for seq in groups[alpha]:
            vec = vec + elements[seq]
        blocks[alpha] = Block(H, alpha, groups[alpha], vec)
    central = True
    for block in blocks.values():
        sparse = _sparse(block._element)
        for r in range(1, H.d):
            if H.apply("s", r, sparse) != H.right_coxeter(r, sparse):
                central = False
    checks["block idempotents are central"] = central
    orthogonal = True
    for a, A in blocks.items():
        for b, B in blocks.items():
            product = A.left_matrix * B._element
            expected = B._element if a == b else Matrix.zeros(field, H.dimension, 1)
            orthogonal &= product == expected
    checks["block idempotents are orthogonal idempotents"] = orthogonal
    checks["block dimensions sum to the algebra dimension"] = sum(b.dimension for b in blocks.values()) == H.dimension
    return BlockDecomposition(H, blocks, checks)


def character(module) -> FormalCharacter:
    """Weight-space dimensions of anything carrying ``idempotents`` (a block or a module)."""
    dims = {}
    for seq, E in sorted(module.idempotents.items()):
        k = E.rank()
        if k:
            dims[seq] = k
    return FormalCharacter(dims)


def weight_covariance(block: Block) -> bool:
    """``s_r`` maps the ``i`` weight space into the ``i`` and ``s_r . i`` weight spaces."""
    names = block.algebra.coxeter_names
    for r, name in enumerate(names, start=1):
        S = block.matrices[name]
        for seq, E in block.idempotents.items():
            target = block.idempotents.get(seq)
            other = block.idempotents.get(swap_places(seq, r))
            proj = target if other is None or other is target else target + other
            if proj * S * E != S * E:
                return False
    return True
