"""Exact coefficient fields with a distinguished Hecke parameter ``q``.

Three kinds of field are supported:

* the rationals, with elements stored as :class:`flint.fmpq`;
* prime fields ``GF(p)``, with elements stored as :class:`flint.nmod`;
* cyclotomic extensions ``Q(zeta_n)``, stored as rational polynomials reduced
  modulo the ``n``-th cyclotomic polynomial.

Every field knows its quantum characteristic ``e``: the least positive integer
with ``1 + q + ... + q^(e-1) = 0``, or ``0`` when there is none.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from flint import fmpq, fmpq_poly, fmpz, nmod

__all__ = [
    "FieldSpec",
    "Field",
    "RationalField",
    "PrimeField",
    "CyclotomicField",
    "CyclotomicElement",
    "FieldError",
    "make_field",
    "parse_field_spec",
    "quantum_characteristic",
    "cyclotomic_polynomial",
]


class FieldError(ValueError):
    """Raised for malformed or inconsistent field specifications."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def cyclotomic_polynomial(n: int) -> fmpq_poly:
    """The ``n``-th cyclotomic polynomial, by dividing ``x^n - 1`` by ``Phi_k`` for ``k | n``."""
    if n < 1:
        raise FieldError(f"cyclotomic order must be positive, got {n}")
    return _cyclotomic_cache(n)


_CYCLOTOMIC: dict[int, fmpq_poly] = {}


def _cyclotomic_cache(n: int) -> fmpq_poly:
    if n not in _CYCLOTOMIC:
        poly = fmpq_poly([-1] + [0] * (n - 1) + [1])
        for k in range(1, n):
            if n % k == 0:
                quotient, remainder = divmod(poly, _cyclotomic_cache(k))
                assert remainder == 0
                poly = quotient
        _CYCLOTOMIC[n] = poly
    return _CYCLOTOMIC[n]


# ---------------------------------------------------------------------------
# field specs


@dataclass(frozen=True)
class FieldSpec:
    """A serializable description of a field and its parameter ``q``.

    ``kind`` is ``"Q"``, ``"GF"`` or ``"Qzeta"``; ``modulus`` is the prime for
    ``GF`` and the cyclotomic order for ``Qzeta``.  ``q`` is kept as text and
    interpreted by the field (``"zeta"`` denotes the class of the variable).
    """

    kind: str
    modulus: int | None = None
    q: str = "1"

    def __str__(self) -> str:
        if self.kind == "Q":
            head = "Q"
        elif self.kind == "GF":
            head = f"GF({self.modulus})"
        else:
            head = f"Qzeta({self.modulus})"
        return f"{head},q={self.q}"


_SPEC_RE = re.compile(
    r"^\s*(?:(?P<q>Q|QQ)|GF\((?P<p>[^)]*)\)|Qzeta\((?P<n>[^)]*)\))\s*(?:,\s*q\s*=\s*(?P<qval>[^,]+?))?\s*$"
)


def parse_field_spec(text: str) -> FieldSpec:
    """Parse strings such as ``"Q,q=2"``, ``"GF(5),q=4"`` or ``"Qzeta(3)"``."""
    match = _SPEC_RE.match(text)
    if match is None:
        raise FieldError(f"cannot parse field spec {text!r}")
    qval = match.group("qval")
    if match.group("q"):
        return FieldSpec("Q", None, qval or "1")
    if match.group("p") is not None:
        try:
            p = int(match.group("p"))
        except ValueError as exc:
            raise FieldError(f"bad prime in {text!r}") from exc
        return FieldSpec("GF", p, qval or "1")
    try:
        n = int(match.group("n"))
    except ValueError as exc:
        raise FieldError(f"bad cyclotomic order in {text!r}") from exc
    return FieldSpec("Qzeta", n, qval or "zeta")


def make_field(spec: FieldSpec | str) -> Field:
    """Construct the field handle described by ``spec``."""
    if isinstance(spec, str):
        spec = parse_field_spec(spec)
    if spec.kind == "Q":
        field: Field = RationalField(spec.q)
    elif spec.kind == "GF":
        field = PrimeField(spec.modulus, spec.q)
    elif spec.kind == "Qzeta":
        field = CyclotomicField(spec.modulus, spec.q)
    else:
        raise FieldError(f"unknown field kind {spec.kind!r}")
    return field


def quantum_characteristic(field: Field) -> int:
    """Least ``e > 0`` with ``1 + q + ... + q^(e-1) = 0`` in ``field``, else 0."""
    return field.e


# ---------------------------------------------------------------------------
# fields


class Field:
    """Common interface of the exact fields.

    Subclasses provide element conversion, the characteristic and a bound on
    the search for the quantum characteristic.
    """

    kind: str = ""
    characteristic: int = 0

    def __init__(self, q_text: str):
        self.q_text = str(q_text).strip()
        self.q = self.parse_element(self.q_text)
        if self.is_zero(self.q):
            raise FieldError("the Hecke parameter q must be nonzero")

    # -- elements -----------------------------------------------------------
    def __call__(self, value):
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    def is_zero(self, a) -> bool:
        return a == 0

    def random_element(self, rng: random.Random, size: int = 5):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def to_rational(self, a) -> Fraction | int | None:
        """Return ``a`` as an element of the prime subfield, or ``None``."""
        raise NotImplementedError

    # -- parameter data -----------------------------------------------------
    def _search_bound(self) -> int:
        raise NotImplementedError

    @cached_property
    def e(self) -> int:
        partial = self.zero
        power = self.one
        for k in range(1, self._search_bound() + 1):
            partial = partial + power
            if self.is_zero(partial):
                return k
            power = power * self.q
        return 0

    @property
    def degenerate(self) -> bool:
        """True when ``q = 1``, i.e. the degenerate Hecke algebra is meant."""
        return self.q == self.one

    def q_power(self, k: int):
        """``q^k`` for any integer ``k``."""
        if k >= 0:
            return self.q**k
        return self.one / (self.q ** (-k))

    # -- matrices -----------------------------------------------------------
    def matrix(self, rows):
        from .linalg import Matrix

        return Matrix.from_rows(self, rows)

    def zeros(self, nrows: int, ncols: int):
        from .linalg import Matrix

        return Matrix.zeros(self, nrows, ncols)

    def identity(self, n: int):
        from .linalg import Matrix

        return Matrix.identity(self, n)

    @property
    def spec(self) -> FieldSpec:
        raise NotImplementedError

    def __str__(self) -> str:
        return str(self.spec)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self.spec)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and str(self.spec) == str(other.spec)

    def __hash__(self) -> int:
        return hash(str(self.spec))


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FieldError(f"cannot parse {text!r} as a rational number") from exc


class RationalField(Field):
    kind = "Q"
    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Fraction):
            return fmpq(value.numerator, value.denominator)
        return fmpq(value)

    def parse_element(self, text: str):
        return self(_parse_rational(text))

    def random_element(self, rng: random.Random, size: int = 5):
        return fmpq(rng.randint(-size, size), rng.randint(1, size))

    def to_rational(self, a):
        return Fraction(int(a.p), int(a.q))

    def _search_bound(self) -> int:
        # Over Q only q = -1 has a vanishing partial sum (at k = 2); q = 1 never does.
        return 64

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec("Q", None, self.format(self.q))


class PrimeField(Field):
    kind = "GF"

    def __init__(self, p: int | None, q_text: str = "1"):
        if p is None or p < 2 or not fmpz(p).is_prime():
            raise FieldError(f"GF modulus must be prime, got {p}")
        self.p = int(p)
        self.characteristic = self.p
        super().__init__(q_text)

    def __call__(self, value):
        if isinstance(value, nmod):
            return value
        if isinstance(value, (Fraction, fmpq)):
            num, den = (value.numerator, value.denominator) if isinstance(value, Fraction) else (int(value.p), int(value.q))
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return nmod(num, self.p) / nmod(den, self.p)
        return nmod(int(value), self.p)

    def parse_element(self, text: str):
        return self(_parse_rational(text))

    def random_element(self, rng: random.Random, size: int = 5):
        return nmod(rng.randrange(self.p), self.p)

    def to_rational(self, a):
        return int(a)

    def format(self, a) -> str:
        return str(int(a))

    def _search_bound(self) -> int:
        # q = 1 vanishes at k = p; otherwise q^k = 1 for some k <= p - 1.
        return self.p

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec("GF", self.p, self.format(self.q))


class CyclotomicElement:
    """An element of ``Q(zeta_n)`` as a polynomial of degree below ``phi(n)``."""

    __slots__ = ("field", "poly")

    def __init__(self, field: CyclotomicField, poly: fmpq_poly):
        self.field = field
        self.poly = poly

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            return other.poly
        if isinstance(other, (int, fmpq, fmpz)):
            return fmpq_poly([other])
        if isinstance(other, Fraction):
            return fmpq_poly([fmpq(other.numerator, other.denominator)])
        return NotImplemented

    def _wrap(self, poly: fmpq_poly) -> CyclotomicElement:
        return CyclotomicElement(self.field, poly % self.field.modulus_poly)

    def __add__(self, other):
        poly = self._coerce(other)
        if poly is NotImplemented:
            return poly
        return CyclotomicElement(self.field, self.poly + poly)

    __radd__ = __add__

    def __sub__(self, other):
        poly = self._coerce(other)
        if poly is NotImplemented:
            return poly
        return CyclotomicElement(self.field, self.poly - poly)

    def __rsub__(self, other):
        poly = self._coerce(other)
        if poly is NotImplemented:
            return poly
        return CyclotomicElement(self.field, poly - self.poly)

    def __neg__(self):
        return CyclotomicElement(self.field, -self.poly)

    def __mul__(self, other):
        poly = self._coerce(other)
        if poly is NotImplemented:
            return poly
        return self._wrap(self.poly * poly)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicElement:
        if self.poly == 0:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        gcd, s, _ = self.poly.xgcd(self.field.modulus_poly)
        # gcd is a nonzero constant because the modulus is irreducible
        return self._wrap(s / gcd[0])

    def __truediv__(self, other):
        poly = self._coerce(other)
        if poly is NotImplemented:
            return poly
        return self * CyclotomicElement(self.field, poly).inverse()

    def __rtruediv__(self, other):
        poly = self._coerce(other)
        if poly is NotImplemented:
            return poly
        return CyclotomicElement(self.field, poly) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicElement(self.field, fmpq_poly([1]))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        poly = self._coerce(other)
        if poly is NotImplemented:
            return False
        return self.poly == poly

    def __hash__(self):
        coeffs = self.poly.coeffs()
        if len(coeffs) <= 1:
            return hash(coeffs[0] if coeffs else fmpq(0))
        return hash(tuple(coeffs))

    def __bool__(self):
        return self.poly != 0

    def __repr__(self):
        return self.field.format(self)


class CyclotomicField(Field):
    """``Q(zeta_n)`` realized as ``Q[z] / Phi_n(z)``."""

    kind = "Qzeta"
    characteristic = 0

    def __init__(self, order: int | None, q_text: str = "zeta"):
        if order is None or order < 1:
            raise FieldError(f"cyclotomic order must be a positive integer, got {order}")
        self.order = int(order)
        self.modulus_poly = cyclotomic_polynomial(self.order)
        self.degree = self.modulus_poly.degree()
        super().__init__(q_text)

    def __call__(self, value):
        if isinstance(value, CyclotomicElement):
            return value
        if isinstance(value, fmpq_poly):
            return CyclotomicElement(self, value % self.modulus_poly)
        if isinstance(value, Fraction):
            value = fmpq(value.numerator, value.denominator)
        return CyclotomicElement(self, fmpq_poly([value]))

    @cached_property
    def zeta(self) -> CyclotomicElement:
        return self(fmpq_poly([0, 1]))

    _TERM_RE = re.compile(r"^(?P<coef>[0-9/]*)\*?(?P<z>zeta(?:\^(?P<exp>-?\d+))?)?$")

    def parse_element(self, text: str):
        """Parse sums of terms ``c``, ``zeta``, ``c*zeta^k`` (signs allowed)."""
        compact = text.replace(" ", "")
        if not compact:
            raise FieldError("empty element")
        total = self(0)
        for sign, term in re.findall(r"([+-]?)([^+-]+)", compact):
            match = self._TERM_RE.match(term)
            if match is None or (not match.group("coef") and not match.group("z")):
                raise FieldError(f"cannot parse {text!r} in {self.spec}")
            coef = _parse_rational(match.group("coef")) if match.group("coef") else Fraction(1)
            value = self(coef)
            if match.group("z"):
                value = value * self.zeta ** int(match.group("exp") or 1)
            total = total - value if sign == "-" else total + value
        return total

    def random_element(self, rng: random.Random, size: int = 5):
        coeffs = [fmpq(rng.randint(-size, size), rng.randint(1, size)) for _ in range(self.degree)]
        return self(fmpq_poly(coeffs))

    def is_zero(self, a) -> bool:
        return not a

    def to_rational(self, a):
        coeffs = a.poly.coeffs()
        if len(coeffs) > 1:
            return None
        c = coeffs[0] if coeffs else fmpq(0)
        return Fraction(int(c.p), int(c.q))

    def format(self, a) -> str:
        coeffs = a.poly.coeffs() if isinstance(a, CyclotomicElement) else [a]
        terms = []
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "zeta" if k == 1 else f"zeta^{k}"
                terms.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    def _search_bound(self) -> int:
        # Roots of unity in Q(zeta_n) have order dividing lcm(2, n).
        return 2 * self.order

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec("Qzeta", self.order, self.format(self.q))
