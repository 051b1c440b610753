"""Specht modules of level one from the KLR action, and semi-normal forms.

For ``Lambda = Lambda_0`` and ``e = 0`` the module ``S(lambda)`` has basis
``v_T`` indexed by standard tableaux, with

* ``e(i) v_T = v_T`` if ``i`` is the residue sequence of ``T``, else ``0``;
* ``y_r v_T = 0``;
* ``psi_r v_T = v_{s_r T}`` if ``s_r T`` is standard, else ``0``.

Pushing this action through the inverse map gives matrices for ``s_r``
(resp. ``T_r``), which are compared with Young's semi-normal form (resp.
Hoefsmit's matrices) up to a diagonal change of basis.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .blockspectral import FormalCharacter, character
from .klriso import KLRAction, series_p, series_q, verify_klr_relations, word_span_rank
from .linalg import Matrix
from .rootdata import DominantWeight, Tableau, enumerate_I_alpha, hook_length_count, residue_data

__all__ = [
    "SpechtModule",
    "SpechtError",
    "specht_module",
    "seminormal_action",
    "classical_oracle",
    "verify_specht",
    "axial_distance",
]


class SpechtError(ValueError):
    """Raised when a Specht module is requested outside level one, ``e = 0``."""


@dataclass
class SpechtModule:
    shape: tuple[int, ...]
    field: object
    tableaux: list[Tableau]
    residues: list[tuple[int, ...]]
    action: KLRAction

    @property
    def dimension(self) -> int:
        return len(self.tableaux)

    @property
    def idempotents(self):
        return self.action.idempotents


def axial_distance(t: Tableau, r: int) -> int:
    """Content of ``r + 1`` minus content of ``r``."""
    return t.content(r + 1) - t.content(r)


def specht_module(shape, field) -> SpechtModule:
    """``S(shape)`` over ``field`` with the KLR action on standard tableaux."""
    if field.e != 0:
        raise SpechtError(f"Specht modules here need e = 0, the field gives e = {field.e}")
    shape = tuple(shape)
    alpha, pairs = residue_data(shape, 0)
    tableaux = [t for t, _ in pairs]
    residues = [seq for _, seq in pairs]
    n = len(tableaux)
    d = sum(shape)
    position = {t: k for k, t in enumerate(tableaux)}
    weights: dict[tuple[int, ...], dict] = {}
    for k, seq in enumerate(residues):
        weights.setdefault(seq, {})[k, k] = 1
    idempotents = {seq: Matrix.from_sparse(field, n, n, entries) for seq, entries in sorted(weights.items())}
    psi = []
    for r in range(1, d):
        entries = {}
        for k, t in enumerate(tableaux):
            swapped = t.swap(r)
            if swapped.is_standard():
                entries[position[swapped], k] = 1
        psi.append(Matrix.from_sparse(field, n, n, entries))
    action = KLRAction(
        field=field,
        e=0,
        d=d,
        weight=DominantWeight(0, (0,)),
        sequences=enumerate_I_alpha(0, alpha),
        idempotents=idempotents,
        y=[Matrix.zeros(field, n, n) for _ in range(d)],
        psi=psi,
    )
    return SpechtModule(shape, field, tableaux, residues, action)


def seminormal_action(S: SpechtModule, qchoice: str = "paper") -> list[Matrix]:
    """Matrices of ``s_r`` (or ``T_r``) obtained from ``psi_r q_r(i) - p_r(i)`` at ``y = 0``."""
    field = S.field
    n = S.dimension
    out = []
    for r, psi in enumerate(S.action.psi, start=1):
        scale, shift = {}, {}
        for k, seq in enumerate(S.residues):
            # order 2 keeps the constant term exact after a linear division
            scale[k] = series_q(field, 0, seq, r, 2, qchoice).constant_term()
            shift[k] = series_p(field, 0, seq, r, 2).constant_term()
        D_scale = Matrix.from_sparse(field, n, n, {(k, k): v for k, v in scale.items()})
        D_shift = Matrix.from_sparse(field, n, n, {(k, k): v for k, v in shift.items()})
        out.append(psi * D_scale - D_shift)
    return out


def classical_oracle(shape, field) -> list[Matrix]:
    """Young's semi-normal form (``q = 1``) or Hoefsmit's matrices (``q != 1``)."""
    if field.e != 0:
        raise SpechtError("the classical semi-normal form needs e = 0")
    shape = tuple(shape)
    _, pairs = residue_data(shape, 0)
    tableaux = [t for t, _ in pairs]
    position = {t: k for k, t in enumerate(tableaux)}
    n = len(tableaux)
    d = sum(shape)
    q = field.q
    one = field.one
    out = []
    for r in range(1, d):
        entries = {}
        for k, t in enumerate(tableaux):
            rho = axial_distance(t, r)
            if field.degenerate:
                entries[k, k] = one / field(rho)
            else:
                qr = field.q_power(rho)
                entries[k, k] = (q - one) * qr / (qr - one)
            other = t.swap(r)
            if not other.is_standard():
                continue
            j = position[other]
            if k < j:
                entries[j, k] = one
            else:
                if field.degenerate:
                    product = one - one / field(rho * rho)
                else:
                    qr = field.q_power(rho)
                    product = q * (qr * q - one) * (qr / q - one) / ((qr - one) * (qr - one))
                entries[j, k] = product
        out.append(Matrix.from_sparse(field, n, n, entries))
    return out


def _scale_invariants(M: Matrix) -> tuple[list, dict]:
    n = M.nrows
    diagonal = [M[k, k] for k in range(n)]
    products = {(a, b): M[a, b] * M[b, a] for a in range(n) for b in range(a + 1, n)}
    return diagonal, products


def _hecke_relations(mats: list[Matrix], field) -> dict[str, bool]:
    n = mats[0].nrows if mats else 0
    ident = Matrix.identity(field, n)
    q = field.q
    quadratic = all(M * M == (M.scale(q - field.one) + ident.scale(q)) for M in mats)
    braid = all(mats[r] * mats[r + 1] * mats[r] == mats[r + 1] * mats[r] * mats[r + 1] for r in range(len(mats) - 1))
    commute = all(mats[r] * mats[s] == mats[s] * mats[r] for r in range(len(mats)) for s in range(r + 2, len(mats)))
    return {"quadratic": quadratic, "braid": braid, "commuting": commute}


def _full_matrix_algebra(action: KLRAction) -> bool:
    """Do words in the generators span all ``n x n`` matrices?"""
    n = action.dimension
    field = action.field
    # left multiplication on End(S) = S^n, flattened column by column
    gens = list(action.idempotents.values()) + list(action.y) + list(action.psi)
    lifted = [Matrix.block_diagonal(field, [g] * n) for g in gens]
    lifted_action = KLRAction(field, action.e, action.d, action.weight, action.sequences, {}, lifted, [])
    start = Matrix.from_sparse(field, n * n, 1, {(k * n + k, 0): 1 for k in range(n)})
    return word_span_rank(lifted_action, start) == n * n


def verify_specht(shape, field, qchoice: str = "paper") -> dict:
    """Dimension, relations, Hecke relations, oracle comparison, surjectivity and character."""
    shape = tuple(shape)
    S = specht_module(shape, field)
    mats = seminormal_action(S, qchoice)
    oracle = classical_oracle(shape, field)
    agree = True
    for M, O in zip(mats, oracle):
        agree &= _scale_invariants(M) == _scale_invariants(O)
    relations = verify_klr_relations(S.action)
    expected_character = FormalCharacter(dict(sorted(Counter(S.residues).items())))
    hecke = _hecke_relations(mats, field)
    checks = {
        "dimension": S.dimension == hook_length_count(shape),
        "klr relations": relations.ok,
        "hecke relations": all(hecke.values()),
        "oracle": agree,
        "full matrix algebra": _full_matrix_algebra(S.action),
        "character": character(S) == expected_character,
    }
    return {
        "shape": list(shape),
        "dimension": S.dimension,
        "checks": checks,
        "ok": all(checks.values()),
        "module": S,
        "matrices": mats,
        "oracle": oracle,
    }
