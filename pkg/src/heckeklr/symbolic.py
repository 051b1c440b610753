"""Truncated multivariate power series in ``y_1..y_d`` over an exact field.

A :class:`TruncatedSeries` stores the coefficients of all monomials of total
degree at most its order ``T``.  Besides ring arithmetic it supports the place
permutation action of the symmetric group, divided differences, inversion of
series with nonzero constant term, exact division by ``y_s - y_r`` and
evaluation at commuting nilpotent matrices.

A note on precision: dividing by a linear form lowers the number of trustworthy
degrees by one, because the degree-``T`` part of the quotient depends on the
discarded degree-``T+1`` part of the numerator.  Callers that need a quotient
exact through degree ``T`` work at order ``T + 1`` or more (see
:func:`heckeklr.klriso.klr_generators`).
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from math import comb

from .linalg import Matrix

__all__ = [
    "TruncatedSeries",
    "SeriesError",
    "apply_permutation",
    "divided_difference",
    "invert_series",
    "divide_by_linear",
    "evaluate_on_nilpotents",
]


class SeriesError(ArithmeticError):
    """Raised for incompatible series or impossible exact operations."""


Exponent = tuple[int, ...]


class TruncatedSeries:
    """An element of ``F[[y_1..y_d]]`` modulo monomials of degree above ``order``."""

    __slots__ = ("field", "nvars", "order", "coeffs")

    def __init__(self, field, nvars: int, order: int, coeffs: Mapping[Exponent, object] | None = None):
        self.field = field
        self.nvars = nvars
        self.order = order
        clean: dict[Exponent, object] = {}
        if coeffs:
            for exp, c in coeffs.items():
                if len(exp) != nvars:
                    raise SeriesError(f"exponent {exp} has wrong length for {nvars} variables")
                if sum(exp) <= order:
                    c = field(c)
                    if c != 0:
                        clean[tuple(exp)] = c
        self.coeffs = clean

    # -- constructors -----------------------------------------------------------
    @classmethod
    def constant(cls, field, nvars: int, order: int, value=1) -> TruncatedSeries:
        return cls(field, nvars, order, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field, nvars: int, order: int, r: int) -> TruncatedSeries:
        """The variable ``y_r`` (1-based)."""
        if not 1 <= r <= nvars:
            raise SeriesError(f"variable index {r} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[r - 1] = 1
        return cls(field, nvars, order, {tuple(exp): 1})

    def _like(self, coeffs: Mapping[Exponent, object]) -> TruncatedSeries:
        return TruncatedSeries(self.field, self.nvars, self.order, coeffs)

    def with_order(self, order: int) -> TruncatedSeries:
        """The same coefficients viewed at another truncation order."""
        return TruncatedSeries(self.field, self.nvars, order, self.coeffs)

    # -- inspection -------------------------------------------------------------
    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, self.field.zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Largest total degree present (``-1`` for the zero series)."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def coefficient(self, exp: Sequence[int]):
        return self.coeffs.get(tuple(exp), self.field.zero)

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            if other.nvars != self.nvars or other.order != self.order:
                raise SeriesError("series arithmetic needs equal variable count and order")
            return other
        return TruncatedSeries.constant(self.field, self.nvars, self.order, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            out[exp] = out[exp] + c if exp in out else c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self.field(other)
            return self._like({e: c * v for e, v in self.coeffs.items()})
        other = self._coerce(other)
        order = self.order
        out: dict[Exponent, object] = {}
        right = [(e, sum(e), c) for e, c in other.coeffs.items()]
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, d2, c2 in right:
                if d1 + d2 > order:
                    continue
                exp = tuple(a + b for a, b in zip(e1, e2))
                term = c1 * c2
                out[exp] = out[exp] + term if exp in out else term
        return self._like(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            return invert_series(self) ** (-k)
        result = TruncatedSeries.constant(self.field, self.nvars, self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * invert_series(other)
        return self * (self.field.one / self.field(other))

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.nvars == other.nvars and self.order == other.order and self.coeffs == other.coeffs
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return False

    __hash__ = None

    def truncated_equal(self, other: TruncatedSeries, degree: int) -> bool:
        """Compare coefficients of total degree at most ``degree`` only."""
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys if sum(k) <= degree)

    # -- rendering --------------------------------------------------------------
    def __str__(self) -> str:
        def mono(exp):
            parts = []
            for r, a in enumerate(exp, start=1):
                if a == 1:
                    parts.append(f"y{r}")
                elif a > 1:
                    parts.append(f"y{r}^{a}")
            return "*".join(parts)

        terms = []
        for exp in sorted(self.coeffs, key=lambda e: (sum(e), tuple(-a for a in e))):
            c = self.field.format(self.coeffs[exp])
            m = mono(exp)
            if not m:
                terms.append(c)
            elif c == "1":
                terms.append(m)
            elif c == "-1":
                terms.append("-" + m)
            else:
                terms.append(f"({c})*{m}" if any(ch in c[1:] for ch in "+-") else f"{c}*{m}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(deg {self.order + 1})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# operations


def apply_permutation(w: Sequence[int], f: TruncatedSeries) -> TruncatedSeries:
    """``^w f``: substitute ``y_r -> y_{w(r)}``, with ``w`` in one-line notation on ``1..d``."""
    if len(w) != f.nvars or sorted(w) != list(range(1, f.nvars + 1)):
        raise SeriesError(f"{w} is not a permutation of 1..{f.nvars}")
    out = {}
    for exp, c in f.coeffs.items():
        new = [0] * f.nvars
        for r, a in enumerate(exp):
            new[w[r] - 1] = a
        out[tuple(new)] = c
    return f._like(out)


def _swap(r: int, nvars: int) -> tuple[int, ...]:
    w = list(range(1, nvars + 1))
    w[r - 1], w[r] = w[r], w[r - 1]
    return tuple(w)


def divided_difference(r: int, f: TruncatedSeries) -> TruncatedSeries:
    """``(^{s_r} f - f) / (y_r - y_{r+1})``, computed monomial by monomial."""
    if not 1 <= r < f.nvars:
        raise SeriesError(f"divided difference index {r} out of range")
    i, j = r - 1, r
    out: dict[Exponent, object] = {}
    for exp, c in f.coeffs.items():
        a, b = exp[i], exp[j]
        if a == b:
            continue
        low, gap = min(a, b), abs(a - b)
        sign = -c if a > b else c
        for k in range(gap):
            new = list(exp)
            new[i] = low + k
            new[j] = low + gap - 1 - k
            key = tuple(new)
            out[key] = out[key] + sign if key in out else sign
    return f._like(out)


def invert_series(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    c0 = f.constant_term()
    if c0 == 0:
        raise SeriesError("cannot invert a series with zero constant term")
    inv0 = f.field.one / c0
    tail = f * inv0 - 1  # no constant term
    result = TruncatedSeries.constant(f.field, f.nvars, f.order, 1)
    for _ in range(f.order):
        result = 1 - tail * result
    return result * inv0


def divide_by_linear(f: TruncatedSeries, r: int, s: int) -> TruncatedSeries:
    """Exact quotient ``h`` with ``h * (y_s - y_r) = f``.

    Uses the triangular substitution ``u = y_s - y_r``, ``v = y_r``.  The result
    is exact through degree ``order - 1``; see the module docstring.
    """
    if r == s or not (1 <= r <= f.nvars and 1 <= s <= f.nvars):
        raise SeriesError(f"bad linear form indices ({r}, {s})")
    ri, si = r - 1, s - 1
    field = f.field
    # rewrite in (u, v): slot si holds the u-exponent, slot ri the v-exponent
    in_uv: dict[Exponent, object] = {}
    for exp, c in f.coeffs.items():
        a, b = exp[ri], exp[si]
        for k in range(b + 1):
            new = list(exp)
            new[si] = k
            new[ri] = a + b - k
            key = tuple(new)
            term = c * comb(b, k)
            in_uv[key] = in_uv[key] + term if key in in_uv else term
    in_uv = {k: v for k, v in in_uv.items() if v != 0}
    if any(exp[si] == 0 for exp in in_uv):
        raise SeriesError(f"series is not divisible by y{s} - y{r}")
    # divide by u and substitute back u = y_s - y_r, v = y_r
    out: dict[Exponent, object] = {}
    for exp, c in in_uv.items():
        k = exp[si] - 1
        m = exp[ri]
        for j in range(k + 1):
            new = list(exp)
            new[si] = j
            new[ri] = m + k - j
            key = tuple(new)
            term = c * comb(k, j)
            if (k - j) % 2:
                term = -term
            out[key] = out[key] + term if key in out else term
    return TruncatedSeries(field, f.nvars, f.order, out)


def evaluate_on_nilpotents(f: TruncatedSeries, mats: Sequence[Matrix]) -> Matrix:
    """Substitute commuting nilpotent matrices for the variables.

    The caller guarantees that ``f.order`` is at least the sum over ``r`` of
    (nilpotency index of ``mats[r]`` minus one), which makes the result exact.
    """
    if len(mats) != f.nvars:
        raise SeriesError(f"need {f.nvars} matrices, got {len(mats)}")
    if not mats:
        n = 1
        field = f.field
        return Matrix.identity(field, n).scale(f.constant_term())
    field = f.field
    n = mats[0].nrows
    powers: list[dict[int, Matrix]] = [{0: Matrix.identity(field, n), 1: m} for m in mats]

    def power(r: int, a: int) -> Matrix:
        table = powers[r]
        if a not in table:
            table[a] = power(r, a - 1) * mats[r]
        return table[a]

    result = Matrix.zeros(field, n, n)
    for exp, c in sorted(f.coeffs.items()):
        term = None
        for r, a in enumerate(exp):
            if a == 0:
                continue
            p = power(r, a)
            if p.is_zero():
                term = None
                break
            term = p if term is None else term * p
        else:
            if term is None:
                term = powers[0][0]
            result = result + term.scale(c)
    return result
