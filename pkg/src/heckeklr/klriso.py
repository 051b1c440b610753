"""Khovanov-Lauda generators inside a block, and everything verified through them.

Given a :class:`~heckeklr.blockspectral.Block` realized in a weight-adapted
basis, this module builds

* the intertwining elements ``phi_r`` (resp. ``Phi_r``),
* the nilpotent ``y_r`` and the generators ``psi_r``, using power series
  ``p_r(i)``/``q_r(i)`` (resp. ``P_r(i)``/``Q_r(i)``) evaluated on the weight
  spaces,

and then checks the defining relations of the cyclotomic KLR algebra, the
inverse map back to the Hecke generators, the grading, Poincare polynomials and
cross-field comparisons.

The relation checker is shared between the degenerate and non-degenerate cases
and also runs on any module carrying a KLR action (see :mod:`heckeklr.seminormal`).
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from itertools import product

from .blockspectral import Block, character
from .linalg import Matrix
from .rootdata import (
    DominantWeight,
    adjacency,
    all_permutations,
    cartan_entry,
    enumerate_I_alpha,
    left_multiply,
    reduced_word,
    swap_places,
)
from .symbolic import (
    SeriesError,
    TruncatedSeries,
    apply_permutation,
    divide_by_linear,
    evaluate_on_nilpotents,
    invert_series,
)

__all__ = [
    "KLRAction",
    "KLRGens",
    "RelationInstance",
    "RelationReport",
    "QCHOICES",
    "nilpotency_index",
    "intertwiners",
    "verify_intertwiner_identities",
    "series_p",
    "series_q",
    "klr_generators",
    "relation_instances",
    "verify_klr_relations",
    "hecke_from_klr",
    "word_span_rank",
    "word_degree",
    "check_grading",
    "HomogeneousBasis",
    "homogeneous_basis",
    "poincare_polynomial",
    "check_nilpotency_conjecture",
    "compare_blocks",
    "format_laurent",
    "IdentityReport",
    "structure_constants",
]

QCHOICES = ("paper", "alt")

Seq = tuple[int, ...]


# ---------------------------------------------------------------------------
# small matrix helpers on a weight-adapted basis


def nilpotency_index(M: Matrix) -> int | None:
    """Least ``k >= 1`` with ``M^k = 0`` (``None`` if ``M`` is not nilpotent)."""
    n = M.nrows
    if n == 0 or M.is_zero():
        return 1
    power = M
    for k in range(2, n + 1):
        power = power * M
        if power.is_zero():
            return k
    return None


def _restrict(M: Matrix, span: tuple[int, int]) -> Matrix:
    a, b = span
    return M.take(rows=range(a, b), cols=range(a, b))


def _embed(small: Matrix, span: tuple[int, int], n: int) -> Matrix:
    a, _ = span
    entries = {(a + i, a + j): v for (i, j), v in small.nonzero_entries()}
    return Matrix.from_sparse(small.field, n, n, entries)


def _columns(M: Matrix, span: tuple[int, int]) -> Matrix:
    return M.take(cols=range(*span))


def _assemble(field, n: int, pieces: dict[Seq, Matrix], slices: dict[Seq, tuple[int, int]]) -> Matrix:
    """Glue column blocks (one per weight space) into an ``n x n`` matrix."""
    entries = {}
    for seq, (a, _) in slices.items():
        for (i, j), v in pieces[seq].nonzero_entries():
            entries[i, a + j] = v
    return Matrix.from_sparse(field, n, n, entries)


# ---------------------------------------------------------------------------
# actions and generators


@dataclass
class KLRAction:
    """Matrices of ``e(i)``, ``y_r`` and ``psi_r`` on some module.

    ``sequences`` is the full set ``I^alpha``; ``idempotents`` holds only the
    nonzero ``e(i)``.
    """

    field: object
    e: int
    d: int
    weight: DominantWeight
    sequences: list[Seq]
    idempotents: dict[Seq, Matrix]
    y: list[Matrix]
    psi: list[Matrix]

    @property
    def dimension(self) -> int:
        if self.idempotents:
            return next(iter(self.idempotents.values())).nrows
        return self.y[0].nrows if self.y else 0

    def letter(self, kind: str, index) -> Matrix | None:
        if kind == "y":
            return self.y[index - 1]
        if kind == "psi":
            return self.psi[index - 1]
        return self.idempotents.get(index)


@dataclass
class KLRGens(KLRAction):
    """KLR generators of a block together with the data used to build them."""

    block: Block | None = None
    slices: dict[Seq, tuple[int, int]] = dataclass_field(default_factory=dict)
    degenerate: bool = True
    qchoice: str = "paper"
    # (r, i) -> (p_r(i), q_r(i)) as truncated series, and their evaluations on V_i
    series: dict[tuple[int, Seq], tuple[TruncatedSeries, TruncatedSeries]] = dataclass_field(default_factory=dict)
    evaluated: dict[tuple[int, Seq], tuple[Matrix, Matrix]] = dataclass_field(default_factory=dict)
    # nilpotency index of y_r on each weight space, and on the whole block
    local_indices: dict[Seq, list[int]] = dataclass_field(default_factory=dict)
    indices: list[int] = dataclass_field(default_factory=list)

    @property
    def order(self) -> int:
        """Truncation order that makes series evaluation on the whole block exact."""
        return sum(k - 1 for k in self.indices)

    def degree(self, r: int, seq: Seq) -> int:
        """Degree of ``psi_r e(i)``."""
        return -cartan_entry(self.e, seq[r - 1], seq[r])


# ---------------------------------------------------------------------------
# intertwiners


def _polynomial_generators(block: Block) -> tuple[list[Matrix], list[Matrix], list[Matrix]]:
    H = block.algebra
    mats = block.matrices
    xs = [mats[n] for n in H.polynomial_names]
    ss = [mats[n] for n in H.coxeter_names]
    xinv = [mats[f"Xinv{r}"] for r in range(1, H.d + 1)] if not H.degenerate else []
    return xs, ss, xinv


def _local_inverse(block: Block, M: Matrix, seq: Seq) -> Matrix:
    span = block.slices[seq]
    return _embed(_restrict(M, span).inverse(), span, M.nrows)


def intertwiners(block: Block) -> list[Matrix]:
    """``phi_r`` (degenerate) or ``Phi_r`` (non-degenerate) for ``r = 1..d-1``."""
    H = block.algebra
    field = block.field
    n = block.dimension
    xs, ss, xinv = _polynomial_generators(block)
    q = H.q
    out = []
    for r in range(1, H.d):
        phi = ss[r - 1]
        for seq, E in block.idempotents.items():
            if seq[r - 1] == seq[r]:
                phi = phi + E
                continue
            if H.degenerate:
                phi = phi + _local_inverse(block, xs[r - 1] - xs[r], seq)
            else:
                ratio = xs[r - 1] * xinv[r]
                inv = _local_inverse(block, Matrix.identity(field, n) - ratio, seq)
                phi = phi + inv.scale(field.one - q)
        out.append(phi)
    return out


@dataclass
class IdentityReport:
    """Pass/fail entries ``(identity, label, passed)``."""

    entries: list[tuple[str, str, bool]]

    @property
    def ok(self) -> bool:
        return all(p for _, _, p in self.entries)

    @property
    def failures(self) -> list[tuple[str, str]]:
        return [(name, label) for name, label, p in self.entries if not p]

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for name, _, passed in self.entries:
            slot = out.setdefault(name, {"checked": 0, "failed": 0})
            slot["checked"] += 1
            slot["failed"] += 0 if passed else 1
        return out


def verify_intertwiner_identities(block: Block) -> IdentityReport:
    """Check the intertwiner identities as matrix equations, weight space by weight space."""
    H = block.algebra
    field = block.field
    n = block.dimension
    d = H.d
    q = H.q
    phis = intertwiners(block)
    xs, _, xinv = _polynomial_generators(block)
    idem = block.idempotents
    zero = Matrix.zeros(field, n, n)
    entries: list[tuple[str, str, bool]] = []

    def E(seq: Seq) -> Matrix:
        return idem.get(seq, zero)

    def label(r: int, seq: Seq | None = None, s: int | None = None) -> str:
        parts = [f"r={r}"]
        if s is not None:
            parts.append(f"s={s}")
        if seq is not None:
            parts.append(f"i={seq}")
        return ",".join(parts)

    def inv(M: Matrix, seq: Seq) -> Matrix:
        return _local_inverse(block, M, seq)

    for r in range(1, d):
        phi = phis[r - 1]
        xr, xr1 = xs[r - 1], xs[r]
        for s in range(1, d + 1):
            if s not in (r, r + 1):
                entries.append(("distant-x", label(r, s=s), phi * xs[s - 1] == xs[s - 1] * phi))
        for s in range(r + 2, d):
            entries.append(("distant-phi", label(r, s=s), phi * phis[s - 1] == phis[s - 1] * phi))
        for seq in block.sequences:
            Ei = E(seq)
            entries.append(("weight-shift", label(r, seq), phi * Ei == E(swap_places(seq, r)) * phi))
            if seq not in idem:
                continue
            equal = seq[r - 1] == seq[r]
            if H.degenerate:
                correction = (Ei - (xr - xr1) * Ei) if equal else zero
            else:
                correction = (xr1.scale(q) - xr) * Ei if equal else zero
            entries.append(("phi-x", label(r, seq), phi * xr1 * Ei == xr * phi * Ei + correction))
            entries.append(("x-phi", label(r, seq), xr1 * phi * Ei == phi * xr * Ei + correction))
            if equal:
                factor = 2 if H.degenerate else field.one + q
                expected = (phi * Ei).scale(factor)
            elif H.degenerate:
                a = inv(xr - xr1, seq)
                expected = Ei - a * a
            else:
                numerator = (xr1 - xr.scale(q)) * (xr - xr1.scale(q))
                denominator = (xr1 - xr) * (xr - xr1)
                expected = numerator * inv(denominator, seq)
            entries.append(("square", label(r, seq), phi * phi * Ei == expected))
        if r + 1 < d:
            nxt = phis[r]
            for seq in block.sequences:
                if seq not in idem:
                    continue
                Ei = idem[seq]
                lhs = phi * nxt * phi * Ei
                rhs = nxt * phi * nxt * Ei
                a_, b_, c_ = seq[r - 1], seq[r], seq[r + 1]
                if a_ == b_ == c_:
                    corr = (phi - nxt) * Ei
                    if not H.degenerate:
                        corr = corr.scale(q)
                    rhs = rhs + corr
                elif a_ == c_ != b_:
                    x0, x1, x2 = xs[r - 1], xs[r], xs[r + 1]
                    if H.degenerate:
                        a = inv(x0 - x1, seq)
                        b = inv(x1 - x2, seq)
                        rhs = rhs + (a - b) * (a * b - a - b)
                    else:
                        one_minus_q = field.one - q
                        top = (x0 * x2 - x1 * x1) * (x0 * x1 - (x1 * x2).scale(q))
                        bottom = (x0 - x1) * (x0 - x1) * (x1 - x2) * (x1 - x2)
                        rhs = rhs + (top * inv(bottom, seq)).scale(one_minus_q * one_minus_q)
                entries.append(("braid", label(r, seq), lhs == rhs))
    return IdentityReport(entries)


# ---------------------------------------------------------------------------
# the power series p_r(i), q_r(i) and P_r(i), Q_r(i)


def _y(field, d: int, order: int, r: int) -> TruncatedSeries:
    return TruncatedSeries.variable(field, d, order, r)


def _bar_y(field, q, d: int, order: int, r: int, residue: int) -> TruncatedSeries:
    """``q^{i_r} (1 - y_r)``: the image of ``X_r`` on the ``i`` weight space."""
    return (1 - _y(field, d, order, r)) * field.q_power(residue)


def series_p(field, e: int, seq: Seq, r: int, order: int) -> TruncatedSeries:
    """``p_r(i)`` (when ``q = 1``) or ``P_r(i)`` (otherwise) in ``d = len(seq)`` variables."""
    d = len(seq)
    a, b = seq[r - 1], seq[r]
    one = TruncatedSeries.constant(field, d, order, 1)
    if a == b:
        return one
    yr, yr1 = _y(field, d, order, r), _y(field, d, order, r + 1)
    if field.degenerate:
        return invert_series(yr - yr1 + field(a - b))
    ratio = _bar_y(field, field.q, d, order, r, a) * invert_series(_bar_y(field, field.q, d, order, r + 1, b))
    return invert_series(one - ratio) * (field.one - field.q)


def _standard_q(field, e: int, seq: Seq, r: int, order: int) -> TruncatedSeries:
    d = len(seq)
    a, b = seq[r - 1], seq[r]
    yr, yr1 = _y(field, d, order, r), _y(field, d, order, r + 1)
    case = adjacency(e, a, b)
    if field.degenerate:
        if case == "same":
            return 1 + yr1 - yr
        p = series_p(field, e, seq, r, order)
        if case == "none":
            return 1 - p
        if case == "right":
            return divide_by_linear(1 - p * p, r, r + 1)
        if case == "left":
            return TruncatedSeries.constant(field, d, order, 1)
        return divide_by_linear(1 - p, r, r + 1)
    q = field.q
    if case == "same":
        return yr1 * q - yr + (field.one - q)
    Yr = _bar_y(field, q, d, order, r, a)
    Yr1 = _bar_y(field, q, d, order, r + 1, b)
    if case == "none":
        return (Yr - Yr1 * q) * invert_series(Yr - Yr1)
    if case == "right":
        gap = Yr - Yr1
        return (Yr - Yr1 * q) * invert_series(gap * gap)
    if case == "left":
        return TruncatedSeries.constant(field, d, order, field.q_power(a))
    return invert_series(Yr - Yr1) * field.q_power(a)


def series_q(field, e: int, seq: Seq, r: int, order: int, choice: str = "paper") -> TruncatedSeries:
    """The fixed choice ``q_r(i)`` (resp. ``Q_r(i)``).

    ``"paper"`` is the standard explicit choice.  ``"alt"`` is its mirror
    image ``^{s_r} q_r(s_r . i)`` whenever ``i_r != i_{r+1}``; it satisfies the
    same three defining properties, since the product of the two mirrored
    factors is unchanged and the choice is still uniform in ``r``.
    """
    if choice not in QCHOICES:
        raise ValueError(f"unknown q choice {choice!r}")
    if choice == "alt" and seq[r - 1] != seq[r]:
        d = len(seq)
        w = list(range(1, d + 1))
        w[r - 1], w[r] = w[r], w[r - 1]
        return apply_permutation(tuple(w), _standard_q(field, e, swap_places(seq, r), r, order))
    return _standard_q(field, e, seq, r, order)


# ---------------------------------------------------------------------------
# the generators


def klr_generators(block: Block, qchoice: str = "paper") -> KLRGens:
    """Build ``e(i)``, ``y_r`` and ``psi_r`` inside ``block`` as exact matrices."""
    H = block.algebra
    field = block.field
    d = H.d
    n = block.dimension
    e = H.e
    idem = block.idempotents
    slices = block.slices
    xs, ss, xinv = _polynomial_generators(block)
    zero = Matrix.zeros(field, n, n)

    ys = []
    for r in range(1, d + 1):
        acc = zero
        for seq, E in idem.items():
            if H.degenerate:
                acc = acc + (xs[r - 1] - Matrix.identity(field, n).scale(field(seq[r - 1]))) * E
            else:
                acc = acc + (E - (xs[r - 1] * E).scale(field.q_power(-seq[r - 1])))
        ys.append(acc)

    local_y = {seq: [_restrict(y, span) for y in ys] for seq, span in slices.items()}
    local_indices = {}
    for seq, mats in local_y.items():
        found = [nilpotency_index(m) for m in mats]
        if any(k is None for k in found):
            raise SeriesError(f"y is not nilpotent on the weight space {seq}")
        local_indices[seq] = found
    indices = []
    for y in ys:
        k = nilpotency_index(y)
        if k is None:
            raise SeriesError("y is not nilpotent on the block")
        indices.append(k)

    series: dict = {}
    evaluated: dict = {}
    psis = []
    for r in range(1, d):
        pieces = {}
        for seq, span in slices.items():
            k = local_indices[seq]
            # one extra degree: dividing by a linear form costs one degree of precision
            order = (k[r - 1] - 1) + (k[r] - 1) + 1
            p = series_p(field, e, seq, r, order)
            qs = series_q(field, e, seq, r, order, qchoice)
            if qs.constant_term() == 0:
                raise SeriesError(f"q_{r}({seq}) has zero constant term")
            series[r, seq] = (p, qs)
            P = evaluate_on_nilpotents(p, local_y[seq])
            Qm = evaluate_on_nilpotents(qs, local_y[seq])
            G = evaluate_on_nilpotents(invert_series(qs), local_y[seq])
            evaluated[r, seq] = (P, Qm)
            column = _columns(ss[r - 1], span) * G + _stack_rows(P * G, span, n)
            pieces[seq] = column
        psis.append(_assemble(field, n, pieces, slices))

    return KLRGens(
        field=field,
        e=e,
        d=d,
        weight=H.weight,
        sequences=enumerate_I_alpha(e, block.alpha),
        idempotents=dict(idem),
        y=ys,
        psi=psis,
        block=block,
        slices=dict(slices),
        degenerate=H.degenerate,
        qchoice=qchoice,
        series=series,
        evaluated=evaluated,
        local_indices=local_indices,
        indices=indices,
    )


def _stack_rows(small: Matrix, span: tuple[int, int], n: int) -> Matrix:
    """Place a ``k x k`` block into rows ``span`` of an ``n x k`` matrix."""
    a, _ = span
    entries = {(a + i, j): v for (i, j), v in small.nonzero_entries()}
    return Matrix.from_sparse(small.field, n, small.ncols, entries)


def hecke_from_klr(G: KLRGens) -> dict[str, Matrix]:
    """Rebuild the Hecke generators from ``y``, ``psi`` and the same series."""
    field = G.field
    n = G.dimension
    H = G.block.algebra
    out: dict[str, Matrix] = {}
    for r, name in enumerate(H.polynomial_names, start=1):
        pieces = {}
        for seq, span in G.slices.items():
            col = _columns(G.y[r - 1], span)
            if G.degenerate:
                col = col + _stack_rows(Matrix.identity(field, span[1] - span[0]).scale(field(seq[r - 1])), span, n)
            else:
                col = (_stack_rows(Matrix.identity(field, span[1] - span[0]), span, n) - col).scale(field.q_power(seq[r - 1]))
            pieces[seq] = col
        out[name] = _assemble(field, n, pieces, G.slices)
    for r, name in enumerate(H.coxeter_names, start=1):
        pieces = {}
        for seq, span in G.slices.items():
            P, Qm = G.evaluated[r, seq]
            pieces[seq] = _columns(G.psi[r - 1], span) * Qm - _stack_rows(P, span, n)
        out[name] = _assemble(field, n, pieces, G.slices)
    return out


def word_span_rank(action: KLRAction, start: Matrix | None = None) -> int:
    """Dimension of the span of all KLR words applied to ``start`` (default: the block unit)."""
    if start is None:
        start = action.block.unit if isinstance(action, KLRGens) else Matrix.identity(action.field, action.dimension)
    gens = list(action.idempotents.values()) + list(action.y) + list(action.psi)
    field = action.field
    current = start.take(cols=start.pivot_columns())
    frontier = current
    while frontier.ncols:
        images = [g * frontier for g in gens]
        stacked = Matrix.hstack(field, [current] + images)
        pivots = stacked.pivot_columns()
        new = [p for p in pivots if p >= current.ncols]
        if not new:
            break
        frontier = stacked.take(cols=new)
        current = stacked.take(cols=pivots)
    return current.ncols


# ---------------------------------------------------------------------------
# relations


Letter = tuple[str, object]
Word = tuple[Letter, ...]
Term = tuple[int, Word]


@dataclass(frozen=True)
class RelationInstance:
    """``sum lhs = sum rhs`` where each side is a list of (integer coefficient, word).

    Words are read as products, so the rightmost letter acts first; every
    instance ends with an idempotent ``e(i)``.
    """

    family: str
    label: str
    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]


def _e(seq: Seq) -> Letter:
    return ("e", tuple(seq))


def _yl(r: int) -> Letter:
    return ("y", r)


def _psi(r: int) -> Letter:
    return ("psi", r)


def relation_instances(e: int, d: int, sequences: Sequence[Seq], weight: DominantWeight) -> Iterable[RelationInstance]:
    """Every instance of the cyclotomic KLR relations for ``i`` in ``sequences``."""
    for i in sequences:
        tag = f"i={tuple(i)}"
        ei = _e(i)
        if d >= 1:
            k = weight.pairing(i[0])
            yield RelationInstance("cyclotomic", tag, ((1, (_yl(1),) * k + (ei,)),), ())
        for j in sequences:
            rhs = ((1, (ei,)),) if tuple(j) == tuple(i) else ()
            yield RelationInstance("idempotents", f"j={tuple(j)},{tag}", ((1, (_e(j), ei)),), rhs)
        for r in range(1, d + 1):
            yield RelationInstance("y-weight", f"r={r},{tag}", ((1, (_yl(r), ei)),), ((1, (ei, _yl(r), ei)),))
        for r in range(1, d):
            yield RelationInstance("psi-weight", f"r={r},{tag}", ((1, (_psi(r), ei)),), ((1, (_e(swap_places(i, r)), _psi(r), ei)),))
        for r in range(1, d + 1):
            for s in range(r + 1, d + 1):
                yield RelationInstance("y-commute", f"r={r},s={s},{tag}", ((1, (_yl(r), _yl(s), ei)),), ((1, (_yl(s), _yl(r), ei)),))
        for r in range(1, d):
            for s in range(1, d + 1):
                if s not in (r, r + 1):
                    yield RelationInstance(
                        "psi-y-distant", f"r={r},s={s},{tag}", ((1, (_psi(r), _yl(s), ei)),), ((1, (_yl(s), _psi(r), ei)),)
                    )
            for s in range(r + 2, d):
                yield RelationInstance(
                    "psi-distant", f"r={r},s={s},{tag}", ((1, (_psi(r), _psi(s), ei)),), ((1, (_psi(s), _psi(r), ei)),)
                )
        for r in range(1, d):
            rt = f"r={r},{tag}"
            equal = i[r - 1] == i[r]
            extra = ((1, (ei,)),) if equal else ()
            yield RelationInstance("psi-y", rt, ((1, (_psi(r), _yl(r + 1), ei)),), ((1, (_yl(r), _psi(r), ei)),) + extra)
            yield RelationInstance("y-psi", rt, ((1, (_yl(r + 1), _psi(r), ei)),), ((1, (_psi(r), _yl(r), ei)),) + extra)
            case = adjacency(e, i[r - 1], i[r])
            y0, y1 = _yl(r), _yl(r + 1)
            rhs4: tuple[Term, ...] = {
                "same": (),
                "none": ((1, (ei,)),),
                "right": ((1, (y1, ei)), (-1, (y0, ei))),
                "left": ((1, (y0, ei)), (-1, (y1, ei))),
                "double": ((-1, (y1, y1, ei)), (1, (y0, y1, ei)), (1, (y1, y0, ei)), (-1, (y0, y0, ei))),
            }[case]
            yield RelationInstance("quadratic", rt, ((1, (_psi(r), _psi(r), ei)),), rhs4)
        for r in range(1, d - 1):
            rt = f"r={r},{tag}"
            lhs = ((1, (_psi(r), _psi(r + 1), _psi(r), ei)),)
            rhs: tuple[Term, ...] = ((1, (_psi(r + 1), _psi(r), _psi(r + 1), ei)),)
            if i[r + 1] == i[r - 1]:
                case = adjacency(e, i[r - 1], i[r])
                if case == "right":
                    rhs += ((1, (ei,)),)
                elif case == "left":
                    rhs += ((-1, (ei,)),)
                elif case == "double":
                    rhs += ((-2, (_yl(r + 1), ei)), (1, (_yl(r), ei)), (1, (_yl(r + 2), ei)))
            yield RelationInstance("braid", rt, lhs, rhs)


def _evaluate_side(action: KLRAction, terms: Sequence[Term], start: Matrix, trailing: Seq) -> Matrix:
    field = action.field
    total = Matrix.zeros(field, start.nrows, start.ncols)
    for coeff, word in terms:
        V = start
        for kind, index in reversed(word[:-1]):
            M = action.letter(kind, index)
            if M is None:
                V = None
                break
            V = M * V
        if V is not None:
            total = total + V.scale(field(coeff))
    return total


def _support_columns(action: KLRAction, seq: Seq) -> Matrix | None:
    E = action.idempotents.get(tuple(seq))
    if E is None:
        return None
    return E.take(cols=E.pivot_columns())


@dataclass
class RelationReport:
    """Per-family counts of checked instances and the labels of failures."""

    checked: Counter
    failures: dict[str, list[str]]
    globals_ok: dict[str, bool]

    @property
    def ok(self) -> bool:
        return not any(self.failures.values()) and all(self.globals_ok.values())

    def as_dict(self) -> dict:
        families = sorted(set(self.checked) | set(self.failures))
        return {
            "families": {f: {"checked": self.checked[f], "failed": len(self.failures.get(f, []))} for f in families},
            "failures": {f: v for f, v in sorted(self.failures.items()) if v},
            "global": dict(sorted(self.globals_ok.items())),
            "ok": self.ok,
        }


def verify_klr_relations(action: KLRAction, weight: DominantWeight | None = None) -> RelationReport:
    """Check every relation instance exactly on the matrices of ``action``."""
    weight = weight or action.weight
    checked: Counter = Counter()
    failures: dict[str, list[str]] = {}
    support = {seq: _support_columns(action, seq) for seq in action.sequences}
    for inst in relation_instances(action.e, action.d, action.sequences, weight):
        checked[inst.family] += 1
        trailing = inst.lhs[0][1][-1][1]
        start = support.get(tuple(trailing))
        if start is None:
            continue  # e(i) = 0, both sides vanish
        lhs = _evaluate_side(action, inst.lhs, start, trailing)
        rhs = _evaluate_side(action, inst.rhs, start, trailing)
        if lhs != rhs:
            failures.setdefault(inst.family, []).append(inst.label)
    n = action.dimension
    total = Matrix.zeros(action.field, n, n)
    for E in action.idempotents.values():
        total = total + E
    globals_ok = {"idempotents sum to 1": total.is_identity()}
    if isinstance(action, KLRGens) and action.block is not None:
        globals_ok["idempotents sum to 1"] = globals_ok["idempotents sum to 1"] and total * action.block.unit == action.block.unit
    globals_ok["y nilpotent"] = all(nilpotency_index(y) is not None for y in action.y)
    return RelationReport(checked, failures, globals_ok)


# ---------------------------------------------------------------------------
# grading


def word_degree(e: int, word: Word) -> int | None:
    """Degree of a word ending in ``e(i)``; ``None`` when the word is zero for idempotent reasons."""
    if not word or word[-1][0] != "e":
        raise ValueError("word must end with an idempotent")
    cur = list(word[-1][1])
    degree = 0
    for kind, index in reversed(word[:-1]):
        if kind == "e":
            if tuple(index) != tuple(cur):
                return None
        elif kind == "y":
            degree += 2
        else:
            r = index
            degree -= cartan_entry(e, cur[r - 1], cur[r])
            cur[r - 1], cur[r] = cur[r], cur[r - 1]
    return degree


def check_grading(G: KLRAction) -> dict:
    """Symbolic check that each relation instance is homogeneous."""
    checked = 0
    bad = []
    for inst in relation_instances(G.e, G.d, G.sequences, G.weight):
        checked += 1
        degrees = {word_degree(G.e, w) for c, w in inst.lhs + inst.rhs if c}
        degrees.discard(None)
        if len(degrees) > 1:
            bad.append(f"{inst.family}:{inst.label}")
    return {"checked": checked, "inhomogeneous": bad, "ok": not bad}


# ---------------------------------------------------------------------------
# homogeneous bases and Poincare polynomials


@dataclass
class HomogeneousBasis:
    """A basis chosen from the spanning words ``psi_w y^n e(i)``.

    ``labels`` lists every candidate ``(i, w, n)`` in enumeration order and
    ``selected`` the indices of the chosen ones, sorted by (degree, index).
    """

    labels: list[tuple[Seq, tuple[int, ...], tuple[int, ...]]]
    degrees: list[int]
    selected: list[int]
    vectors: Matrix  # columns: the selected elements in block coordinates

    @property
    def poincare(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees[k] for k in self.selected).items()))


def _psi_word_degree(e: int, seq: Seq, word: Sequence[int]) -> int:
    cur = list(seq)
    deg = 0
    for r in reversed(word):
        deg -= cartan_entry(e, cur[r - 1], cur[r])
        cur[r - 1], cur[r] = cur[r], cur[r - 1]
    return deg


def homogeneous_basis(G: KLRGens) -> HomogeneousBasis:
    """Greedy exact-rank selection from the spanning set in (degree, enumeration) order."""
    field = G.field
    d = G.d
    unit = G.block.unit
    perms = all_permutations(d)
    labels, degrees, vectors = [], [], []
    for seq in sorted(G.idempotents):
        E = G.idempotents[seq]
        base = E * unit
        bounds = G.local_indices[seq]
        for w in perms:
            word = reduced_word(w)
            for expo in product(*(range(k) for k in bounds)):
                labels.append((seq, w, expo))
                degrees.append(_psi_word_degree(G.e, seq, word) + 2 * sum(expo))
        # vectors: y^n e(i), then psi_w applied, memoized along w = s_a w'
        ymono: dict[tuple[int, ...], Matrix] = {}
        for expo in product(*(range(k) for k in bounds)):
            v = base
            for r, a in enumerate(expo):
                for _ in range(a):
                    v = G.y[r] * v
            ymono[expo] = v
        table: dict[tuple[int, ...], dict] = {}
        for w in perms:
            word = reduced_word(w)
            if not word:
                table[w] = ymono
            else:
                rest = left_multiply(word[0], w)
                psi = G.psi[word[0] - 1]
                table[w] = {expo: psi * v for expo, v in table[rest].items()}
            for expo in product(*(range(k) for k in bounds)):
                vectors.append(table[w][expo])
    order = sorted(range(len(labels)), key=lambda k: (degrees[k], k))
    stacked = Matrix.hstack(field, [vectors[k] for k in order], nrows=G.dimension)
    pivots = stacked.pivot_columns()
    selected = [order[p] for p in pivots]
    if len(selected) != G.dimension:
        raise ArithmeticError(f"spanning words give rank {len(selected)}, block has dimension {G.dimension}")
    chosen = Matrix.hstack(field, [vectors[k] for k in selected], nrows=G.dimension)
    return HomogeneousBasis(labels, degrees, selected, chosen)


def poincare_polynomial(G: KLRGens) -> dict[int, int]:
    """Graded dimension of the block as a map degree -> count."""
    if G.d == 0:
        return {0: G.dimension}
    return homogeneous_basis(G).poincare


def format_laurent(coeffs: dict[int, int], var: str = "t") -> str:
    """Render a degree -> coefficient map, e.g. ``1 + t^2``."""
    parts = []
    for deg, c in sorted(coeffs.items()):
        if not c:
            continue
        mono = "" if deg == 0 else (var if deg == 1 else f"{var}^{deg}")
        if not mono:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) if parts else "0"



# ---------------------------------------------------------------------------
# nilpotency probe


def check_nilpotency_conjecture(G: KLRGens, level: int | None = None) -> dict:
    """Does ``y_r^level`` vanish for every ``r``?  Also reports the observed indices."""
    if G.e != 0:
        raise ValueError("the nilpotency probe is only meaningful for e = 0")
    level = level if level is not None else G.weight.level
    rows = []
    for r, y in enumerate(G.y, start=1):
        rows.append({"r": r, "vanishes": (y**level).is_zero() if G.dimension else True, "index": nilpotency_index(y)})
    return {"level": level, "rows": rows, "ok": all(row["vanishes"] for row in rows)}


# ---------------------------------------------------------------------------
# comparing blocks across fields


def _as_prime_field_value(field, value):
    """Map an element to a common comparable form: a ``Fraction`` or ``(p, residue)``."""
    rational = field.to_rational(value)
    if rational is None:
        return None
    if field.characteristic:
        return ("mod", field.characteristic, int(rational))
    return Fraction(rational)


def _reduce(value, p: int):
    if isinstance(value, tuple):
        return value[2] % p
    if value.denominator % p == 0:
        return None
    return (value.numerator * pow(value.denominator, -1, p)) % p


def _values_agree(a, b) -> bool | None:
    if a is None or b is None:
        return None
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    p = a[1] if isinstance(a, tuple) else b[1]
    ra, rb = _reduce(a, p), _reduce(b, p)
    if ra is None or rb is None:
        return None
    return ra == rb


def structure_constants(G: KLRGens, basis: HomogeneousBasis) -> list[list[list]]:
    """``c[j][k]`` = coordinates of ``b_j b_k`` in the basis ``b``."""
    B = basis.vectors
    Binv = B.inverse()
    mats = []
    for k in basis.selected:
        seq, w, expo = basis.labels[k]
        M = G.idempotents[seq]
        for r, a in enumerate(expo):
            for _ in range(a):
                M = G.y[r] * M
        for r in reversed(reduced_word(w)):
            M = G.psi[r - 1] * M
        mats.append(M)
    out = []
    for M in mats:
        coords = Binv * M * B
        out.append(coords.tolist())
    return out



def compare_blocks(A: Block, B: Block, qchoice: str = "paper") -> dict:
    """Compare two blocks with the same ``(e, Lambda, alpha)`` built over different data."""
    if A.e != B.e or A.algebra.weight.charges != B.algebra.weight.charges or A.alpha != B.alpha or A.d != B.d:
        raise ValueError("compare_blocks needs blocks with the same e, Lambda and alpha")
    report: dict = {
        "alpha": str(A.alpha),
        "dimension": [A.dimension, B.dimension],
        "dimensions_equal": A.dimension == B.dimension,
    }
    report["characters_equal"] = character(A) == character(B)
    if not report["dimensions_equal"]:
        report["structure_constants"] = "inconclusive"
        return report
    GA, GB = klr_generators(A, qchoice), klr_generators(B, qchoice)
    basis_a, basis_b = homogeneous_basis(GA), homogeneous_basis(GB)
    report["poincare_equal"] = basis_a.poincare == basis_b.poincare
    if basis_a.labels != basis_b.labels or basis_a.selected != basis_b.selected:
        report["structure_constants"] = "inconclusive"
        return report
    ca, cb = structure_constants(GA, basis_a), structure_constants(GB, basis_b)
    verdict = "equal"
    for ma, mb in zip(ca, cb):
        for ra, rb in zip(ma, mb):
            for va, vb in zip(ra, rb):
                agree = _values_agree(_as_prime_field_value(A.field, va), _as_prime_field_value(B.field, vb))
                if agree is None:
                    verdict = "inconclusive" if verdict == "equal" else verdict
                elif not agree:
                    verdict = "different"
    report["structure_constants"] = verdict
    return report
