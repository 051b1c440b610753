"""Cyclotomic Hecke algebras with an explicit monomial basis.

For ``q = 1`` the degenerate algebra is generated by ``x_1..x_d`` and
``s_1..s_{d-1}`` subject to

    x_r x_s = x_s x_r,   s_r x_{r+1} = x_r s_r + 1,   Coxeter relations,

and the cyclotomic relation ``prod_i (x_1 - i)^{m_i} = 0`` where ``m_i`` is the
multiplicity of the charge ``i``.  For ``q != 1`` the generators are
``X_1^{+-1}..X_d^{+-1}`` and ``T_1..T_{d-1}`` with

    T_r X_r T_r = q X_{r+1},   (T_r - q)(T_r + 1) = 0,   braid relations,

and ``prod_i (X_1 - q^i)^{m_i} = 0``.  In both cases the monomials
``x^mu w`` (resp. ``X^mu T_w``) with ``0 <= mu_r < l`` form a basis, so the
dimension is ``l^d d!``.

Left multiplication by a Coxeter generator is computed by the commutation rule

    s_r f = (s_r f) s_r + (f^{s_r} - f) / (x_r - x_{r+1})                 (q = 1)
    T_r f = (s_r f) T_r + (q - 1) X_{r+1} (f - f^{s_r}) / (X_{r+1} - X_r)  (q != 1)

which keeps every exponent below ``l``.  Left multiplication by ``x_r`` shifts
an exponent; when it would reach ``l`` the product is rewritten through
``x_r = s_{r-1} x_{r-1} s_{r-1} + s_{r-1}`` (resp.
``X_r = q^{-1} T_{r-1} X_{r-1} T_{r-1}``) down to ``x_1``, where the cyclotomic
relation applies.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from functools import cached_property
from itertools import product
from math import factorial

from .exactfield import Field
from .linalg import Matrix
from .rootdata import (
    DominantWeight,
    all_permutations,
    left_multiply,
    permutation_length,
    reduced_word,
    right_multiply,
)

__all__ = [
    "HeckeAlgebra",
    "AlgebraElement",
    "build_hecke",
    "normal_form",
    "regular_matrices",
    "verify_defining_relations",
]

Sparse = dict[int, object]
Monomial = tuple[tuple[int, ...], tuple[int, ...]]


def _add_into(target: Sparse, source: Mapping[int, object], coeff=None) -> None:
    for k, v in source.items():
        term = v if coeff is None else coeff * v
        if k in target:
            total = target[k] + term
            if total == 0:
                del target[k]
            else:
                target[k] = total
        elif term != 0:
            target[k] = term


def _divided_difference_exponent(mu: tuple[int, ...], r: int) -> list[tuple[int, tuple[int, ...]]]:
    """``(f^{s_r} - f)/(x_r - x_{r+1})`` for ``f = x^mu`` as ``(sign, exponent)`` terms."""
    i, j = r - 1, r
    a, b = mu[i], mu[j]
    if a == b:
        return []
    low, gap = min(a, b), abs(a - b)
    sign = -1 if a > b else 1
    out = []
    for k in range(gap):
        new = list(mu)
        new[i] = low + k
        new[j] = low + gap - 1 - k
        out.append((sign, tuple(new)))
    return out


class HeckeAlgebra:
    """The cyclotomic quotient in degree ``d`` for the dominant weight ``weight``."""

    def __init__(self, field: Field, weight: DominantWeight, d: int):
        if d < 0:
            raise ValueError("d must be non-negative")
        if weight.e != field.e:
            weight = DominantWeight(field.e, weight.charges)
        self.field = field
        self.weight = weight
        self.d = d
        self.level = weight.level
        self.e = field.e
        self.q = field.q
        self.degenerate = field.degenerate
        exponents = sorted(product(range(self.level), repeat=d), key=lambda m: (sum(m), m))
        self.permutations = all_permutations(d)
        self.basis: list[Monomial] = [(mu, w) for mu in exponents for w in self.permutations]
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.cyclotomic_coefficients = self._cyclotomic_coefficients()
        self._memo: dict[tuple[str, int, int], Sparse] = {}

    # -- basic data -------------------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def expected_dimension(self) -> int:
        return self.level**self.d * factorial(self.d)

    def eigenvalue(self, residue: int):
        """The eigenvalue attached to a residue: ``i`` when ``q = 1``, else ``q^i``."""
        if self.degenerate:
            return self.field(residue)
        return self.field.q_power(residue)

    def _cyclotomic_coefficients(self) -> list:
        """Coefficients (constant term first) of the monic cyclotomic polynomial in ``x_1``."""
        coeffs = [self.field.one]
        for c in self.weight.charges:
            root = self.eigenvalue(c)
            shifted = [self.field.zero] + coeffs
            for k in range(len(coeffs)):
                shifted[k] = shifted[k] - root * coeffs[k]
            coeffs = shifted
        return coeffs

    @property
    def polynomial_names(self) -> list[str]:
        letter = "x" if self.degenerate else "X"
        return [f"{letter}{r}" for r in range(1, self.d + 1)]

    @property
    def coxeter_names(self) -> list[str]:
        letter = "s" if self.degenerate else "T"
        return [f"{letter}{r}" for r in range(1, self.d)]

    @property
    def generator_names(self) -> list[str]:
        names = list(self.polynomial_names)
        if not self.degenerate:
            names += [f"Xinv{r}" for r in range(1, self.d + 1)]
        return names + self.coxeter_names

    # -- sparse left multiplication on basis monomials ---------------------------
    def _unit(self, mu, w) -> Sparse:
        return {self.index[(tuple(mu), tuple(w))]: self.field.one}

    def apply(self, kind: str, r: int, vec: Mapping[int, object]) -> Sparse:
        """Left multiply a sparse coordinate vector by a generator.

        ``kind`` is ``"x"`` (polynomial generator), ``"xinv"`` (its inverse,
        non-degenerate only), ``"s"`` (Coxeter generator), or ``"sinv"``.
        """
        out: Sparse = {}
        for idx, c in vec.items():
            _add_into(out, self._column(kind, r, idx), c)
        return out

    def _column(self, kind: str, r: int, idx: int) -> Sparse:
        key = (kind, r, idx)
        hit = self._memo.get(key)
        if hit is None:
            if kind == "s":
                hit = self._mul_coxeter(r, idx)
            elif kind == "x":
                hit = self._mul_polynomial(r, idx)
            elif kind == "xinv":
                hit = self._mul_polynomial_inverse(r, idx)
            elif kind == "sinv":
                hit = self._mul_coxeter_inverse(r, idx)
            else:
                raise ValueError(f"unknown generator kind {kind!r}")
            self._memo[key] = hit
        return hit

    def _mul_coxeter(self, r: int, idx: int) -> Sparse:
        mu, w = self.basis[idx]
        swapped = list(mu)
        swapped[r - 1], swapped[r] = swapped[r], swapped[r - 1]
        swapped = tuple(swapped)
        out: Sparse = {}
        F = self.field
        if self.degenerate:
            _add_into(out, self._unit(swapped, left_multiply(r, w)))
            for sign, nu in _divided_difference_exponent(mu, r):
                _add_into(out, self._unit(nu, w), F(sign))
            return out
        q = self.q
        # (s_r X^mu) T_r T_w
        sw = left_multiply(r, w)
        if permutation_length(sw) > permutation_length(w):
            _add_into(out, self._unit(swapped, sw))
        else:
            _add_into(out, self._unit(swapped, w), q - 1)
            _add_into(out, self._unit(swapped, sw), q)
        # (q - 1) X_{r+1} * divided difference
        for sign, nu in _divided_difference_exponent(mu, r):
            raised = list(nu)
            raised[r] += 1
            _add_into(out, self._unit(tuple(raised), w), F(sign) * (q - 1))
        return out

    def _mul_coxeter_inverse(self, r: int, idx: int) -> Sparse:
        if self.degenerate:
            return dict(self._column("s", r, idx))
        # T^{-1} = q^{-1} T + q^{-1} - 1
        qinv = self.field.one / self.q
        out: Sparse = {}
        _add_into(out, self._column("s", r, idx), qinv)
        _add_into(out, {idx: qinv - 1})
        return out

    def _mul_polynomial(self, r: int, idx: int) -> Sparse:
        mu, w = self.basis[idx]
        if mu[r - 1] + 1 < self.level:
            raised = list(mu)
            raised[r - 1] += 1
            return self._unit(tuple(raised), w)
        if r == 1:
            out: Sparse = {}
            for k, f_k in enumerate(self.cyclotomic_coefficients[:-1]):
                lowered = (k,) + tuple(mu[1:])
                _add_into(out, self._unit(lowered, w), -f_k)
            return out
        s = r - 1
        first = self._column("s", s, idx)
        middle = self.apply("x", s, first)
        out = self.apply("s", s, middle)
        if self.degenerate:
            _add_into(out, first)
            return out
        qinv = self.field.one / self.q
        return {k: v * qinv for k, v in out.items()}

    def _mul_polynomial_inverse(self, r: int, idx: int) -> Sparse:
        if self.degenerate:
            raise ValueError("x_r is not invertible in the degenerate algebra")
        if r == 1:
            # X_1^{-1} = -(1/f_0) * sum_{k>=1} f_k X_1^{k-1}
            coeffs = self.cyclotomic_coefficients
            scale = -self.field.one / coeffs[0]
            out: Sparse = {}
            power: Sparse = {idx: self.field.one}
            for k in range(1, len(coeffs)):
                _add_into(out, power, coeffs[k] * scale)
                if k + 1 < len(coeffs):
                    power = self.apply("x", 1, power)
            return out
        # X_r^{-1} = q T^{-1} X_{r-1}^{-1} T^{-1}
        s = r - 1
        v = self._column("sinv", s, idx)
        v = self.apply("xinv", s, v)
        v = self.apply("sinv", s, v)
        return {k: c * self.q for k, c in v.items()}

    # -- right multiplication by Coxeter generators -----------------------------
    def right_coxeter(self, r: int, vec: Mapping[int, object]) -> Sparse:
        """Right multiply a sparse vector by ``s_r`` (resp. ``T_r``)."""
        out: Sparse = {}
        for idx, c in vec.items():
            mu, w = self.basis[idx]
            ws = right_multiply(w, r)
            if self.degenerate or w[r - 1] < w[r]:
                _add_into(out, self._unit(mu, ws), c)
            else:
                _add_into(out, {idx: c * (self.q - 1)})
                _add_into(out, self._unit(mu, ws), c * self.q)
        return out

    def right_permutation(self, w: Sequence[int], vec: Mapping[int, object]) -> Sparse:
        """Right multiply by ``w`` (resp. ``T_w``) along the lex-min reduced word."""
        for r in reduced_word(tuple(w)):
            vec = self.right_coxeter(r, vec)
        return dict(vec)

    # -- words and elements -------------------------------------------------------
    def apply_monomial(self, b: Monomial, vec: Mapping[int, object]) -> Sparse:
        """Left multiply by the basis monomial ``x^mu w`` (resp. ``X^mu T_w``)."""
        mu, w = b
        out = dict(vec)
        for r in reversed(reduced_word(w)):
            out = self.apply("s", r, out)
        for r, a in enumerate(mu, start=1):
            for _ in range(a):
                out = self.apply("x", r, out)
        return out

    def element(self, coords: Mapping[int, object] | None = None) -> AlgebraElement:
        return AlgebraElement(self, coords or {})

    def one(self) -> AlgebraElement:
        return self.element({self.index[((0,) * self.d, tuple(range(1, self.d + 1)))]: self.field.one})

    def gen(self, name: str) -> AlgebraElement:
        """The generator called ``name`` (``x1``, ``s1``, ``X1``, ``Xinv1``, ``T1``)."""
        kind, r = self._parse_generator(name)
        return self.element(self.apply(kind, r, self.one().coords))

    def _parse_generator(self, name: str) -> tuple[str, int]:
        match = re.fullmatch(r"(x|X|Xinv|xinv|s|T)(\d+)", name)
        if match is None:
            raise ValueError(f"unknown generator {name!r}")
        letter, r = match.group(1), int(match.group(2))
        kind = {"x": "x", "X": "x", "Xinv": "xinv", "xinv": "xinv", "s": "s", "T": "s"}[letter]
        upper = self.d if kind in ("x", "xinv") else self.d - 1
        if not 1 <= r <= upper:
            raise ValueError(f"generator {name!r} out of range for d = {self.d}")
        return kind, r

    def monomial_name(self, b: Monomial) -> str:
        mu, w = b
        x = "x" if self.degenerate else "X"
        s = "s" if self.degenerate else "T"
        parts = []
        for r, a in enumerate(mu, start=1):
            if a == 1:
                parts.append(f"{x}{r}")
            elif a > 1:
                parts.append(f"{x}{r}^{a}")
        parts += [f"{s}{r}" for r in reduced_word(w)]
        return "*".join(parts) if parts else "1"

    # -- matrices ---------------------------------------------------------------
    def sparse_generator(self, name: str) -> list[Sparse]:
        kind, r = self._parse_generator(name)
        return [self._column(kind, r, idx) for idx in range(self.dimension)]

    def matrix_of(self, name: str) -> Matrix:
        """Matrix of left multiplication by a generator in the monomial basis."""
        cache = self.__dict__.setdefault("_matrix_cache", {})
        if name not in cache:
            entries = {}
            for j, col in enumerate(self.sparse_generator(name)):
                for i, v in col.items():
                    entries[i, j] = v
            cache[name] = Matrix.from_sparse(self.field, self.dimension, self.dimension, entries)
        return cache[name]

    @cached_property
    def regular_matrices(self) -> dict[str, Matrix]:
        return {name: self.matrix_of(name) for name in self.generator_names}

    def __repr__(self) -> str:
        return f"HeckeAlgebra({self.field}, {self.weight}, d={self.d})"


class AlgebraElement:
    """An element of a :class:`HeckeAlgebra` in monomial coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: HeckeAlgebra, coords: Mapping[int, object]):
        self.algebra = algebra
        self.coords = {k: v for k, v in coords.items() if v != 0}

    def _lift(self, other) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            return other
        one = self.algebra.one()
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, {k: v * c for k, v in one.coords.items()})

    def __add__(self, other):
        out = dict(self.coords)
        _add_into(out, self._lift(other).coords)
        return AlgebraElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            c = self.algebra.field(other)
            return AlgebraElement(self.algebra, {k: v * c for k, v in self.coords.items()})
        H = self.algebra
        out: Sparse = {}
        for idx, c in self.coords.items():
            _add_into(out, H.apply_monomial(H.basis[idx], other.coords), c)
        return AlgebraElement(H, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra is other.algebra and self.coords == other.coords
        return self == self._lift(other)

    __hash__ = None

    def vector(self) -> list:
        F = self.algebra.field
        return [self.coords.get(k, F.zero) for k in range(self.algebra.dimension)]

    def __repr__(self) -> str:
        H = self.algebra
        if not self.coords:
            return "0"
        terms = []
        for idx in sorted(self.coords):
            c = H.field.format(self.coords[idx])
            name = H.monomial_name(H.basis[idx])
            if name == "1":
                terms.append(c)
            elif c == "1":
                terms.append(name)
            elif c == "-1":
                terms.append("-" + name)
            else:
                terms.append(f"({c})*{name}" if any(ch in c[1:] for ch in "+-") else f"{c}*{name}")
        return " + ".join(terms).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# module-level operations


def build_hecke(field: Field, weight: DominantWeight | Sequence[int], d: int) -> HeckeAlgebra:
    """Construct the cyclotomic Hecke algebra of degree ``d``."""
    if not isinstance(weight, DominantWeight):
        weight = DominantWeight(field.e, tuple(weight))
    return HeckeAlgebra(field, weight, d)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>Xinv\d+|xinv\d+|[xXsT]\d+|q)|(?P<op>[-+*^()]))")


class _ExpressionParser:
    """Recursive-descent parser for sums of products of generators and scalars."""

    def __init__(self, algebra: HeckeAlgebra, text: str):
        self.algebra = algebra
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, str]]:
        tokens, pos = [], 0
        text = text.strip()
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None or match.end() == pos:
                raise ValueError(f"unexpected input at {text[pos:]!r}")
            kind = match.lastgroup
            tokens.append((kind, match.group(kind)))
            pos = match.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or 'token'}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> AlgebraElement:
        result = self.expression()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input {self.tokens[self.pos][1]!r}")
        return result

    def expression(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[1] == "*":
            self.take("*")
            value = value * self.factor()
        return value

    def factor(self):
        if self.peek()[1] == "-":
            self.take("-")
            return -self.factor()
        base, name = self.atom()
        if self.peek()[1] == "^":
            self.take("^")
            negative = self.peek()[1] == "-"
            if negative:
                self.take("-")
            exponent = int(self.take()[1])
            if negative:
                if name is None or not re.fullmatch(r"[xX]\d+", name):
                    raise ValueError("negative powers are only defined for X_r")
                base = self.algebra.gen("Xinv" + name[1:])
            return base**exponent
        return base

    def atom(self):
        kind, value = self.take()
        H = self.algebra
        if kind == "num":
            return H.one() * H.field.parse_element(value), None
        if kind == "name":
            if value == "q":
                return H.one() * H.q, None
            return H.gen(value), value
        if value == "(":
            inner = self.expression()
            self.take(")")
            return inner, None
        raise ValueError(f"unexpected token {value!r}")


def normal_form(algebra: HeckeAlgebra, expr: str | Iterable[str]) -> AlgebraElement:
    """Normal form of an expression such as ``"s1*x2 - x1*s1"`` or a word ``["T1", "X1", "T1"]``."""
    if isinstance(expr, str):
        return _ExpressionParser(algebra, expr).parse()
    result = algebra.one()
    for name in expr:
        result = result * algebra.gen(name)
    return result


def regular_matrices(algebra: HeckeAlgebra) -> dict[str, Matrix]:
    """Exact matrices of left multiplication by every generator."""
    return algebra.regular_matrices


def verify_defining_relations(algebra: HeckeAlgebra) -> dict[str, bool]:
    """Check the defining relations as identities between regular matrices."""
    H = algebra
    F = H.field
    mats = H.regular_matrices
    d = H.d
    N = H.dimension
    one = Matrix.identity(F, N)
    X = [mats[n] for n in H.polynomial_names]
    S = [mats[n] for n in H.coxeter_names]
    checks: dict[str, bool] = {}

    def record(name: str, ok: bool):
        checks[name] = checks.get(name, True) and ok

    for r in range(d):
        for s in range(r + 1, d):
            record("polynomial generators commute", X[r] * X[s] == X[s] * X[r])
    cyc = one
    for c in H.weight.charges:
        cyc = cyc * (X[0] - one.scale(H.eigenvalue(c))) if d else cyc
    if d:
        record("cyclotomic relation", cyc.is_zero())
    q = H.q
    for r in range(d - 1):
        if H.degenerate:
            record("quadratic relation", S[r] * S[r] == one)
            record("s_r x_{r+1} = x_r s_r + 1", S[r] * X[r + 1] == X[r] * S[r] + one)
        else:
            record("quadratic relation", S[r] * S[r] == S[r].scale(q - 1) + one.scale(q))
            record("T_r X_r T_r = q X_{r+1}", S[r] * X[r] * S[r] == X[r + 1].scale(q))
            record(
                "X_r T_r = T_r X_{r+1} + (1-q) X_{r+1}",
                X[r] * S[r] == S[r] * X[r + 1] + X[r + 1].scale(1 - q),
            )
            record(
                "X_{r+1} T_r = T_r X_r + (q-1) X_{r+1}",
                X[r + 1] * S[r] == S[r] * X[r] + X[r + 1].scale(q - 1),
            )
        for s in range(d):
            if s not in (r, r + 1):
                record("Coxeter generators commute with distant polynomial generators", S[r] * X[s] == X[s] * S[r])
        for s in range(r + 2, d - 1):
            record("distant Coxeter generators commute", S[r] * S[s] == S[s] * S[r])
        if r + 1 < d - 1:
            record("braid relation", S[r] * S[r + 1] * S[r] == S[r + 1] * S[r] * S[r + 1])
    if not H.degenerate:
        for r in range(1, d + 1):
            record("X_r X_r^{-1} = 1", X[r - 1] * mats[f"Xinv{r}"] == one)
    # the basis words applied to the identity reproduce the unit vectors
    unit = H.one().coords
    record(
        "monomial words act faithfully on the identity",
        all(H.apply_monomial(b, unit) == {k: F.one} for k, b in enumerate(H.basis)),
    )
    return checks
