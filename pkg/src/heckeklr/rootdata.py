"""Type A quiver data, weights and roots, tableaux and permutation utilities.

Conventions used throughout the package:

* residues are plain integers when ``e = 0`` and least residues in ``[0, e)``
  otherwise;
* permutations are one-line tuples ``(w(1), ..., w(d))`` on ``1..d``;
  ``s_r`` is the transposition of ``r`` and ``r + 1``;
* ``s_r`` acts on residue sequences by swapping places ``r`` and ``r + 1``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itertools_permutations
from math import factorial

__all__ = [
    "normalize_residue",
    "cartan_entry",
    "adjacency",
    "DominantWeight",
    "PositiveRoot",
    "residue_window",
    "enumerate_I_alpha",
    "swap_places",
    "partitions",
    "Tableau",
    "standard_tableaux",
    "hook_length_count",
    "residue_data",
    "identity_permutation",
    "all_permutations",
    "permutation_length",
    "left_multiply",
    "right_multiply",
    "compose",
    "inverse_permutation",
    "is_left_descent",
    "reduced_word",
    "permutation_from_word",
    "format_residue",
]

Residues = tuple[int, ...]


def normalize_residue(e: int, i: int) -> int:
    return i % e if e else i


def format_residue(e: int, i: int) -> int | str:
    """Residues render as integers for ``e = 0`` and as ``"k mod e"`` otherwise."""
    return i if e == 0 else f"{i % e} mod {e}"


def cartan_entry(e: int, i: int, j: int) -> int:
    """Entry ``a_ij`` of the symmetric Cartan matrix of the quiver with vertex set ``Z/eZ``."""
    i, j = normalize_residue(e, i), normalize_residue(e, j)
    if i == j:
        return 2
    up = normalize_residue(e, i + 1) == j
    down = normalize_residue(e, i - 1) == j
    if up and down:
        return -2
    if up or down:
        return -1
    return 0


def adjacency(e: int, i: int, j: int) -> str:
    """How the ordered pair ``(i, j)`` sits in the quiver.

    Returns ``"same"`` (i = j), ``"double"`` (i and j joined both ways, e = 2),
    ``"right"`` (an arrow i -> j, so j = i + 1), ``"left"`` (an arrow j -> i,
    so i = j + 1) or ``"none"`` (not joined).
    """
    i, j = normalize_residue(e, i), normalize_residue(e, j)
    if i == j:
        return "same"
    up = normalize_residue(e, i + 1) == j
    down = normalize_residue(e, i - 1) == j
    if up and down:
        return "double"
    if up:
        return "right"
    if down:
        return "left"
    return "none"


@dataclass(frozen=True)
class DominantWeight:
    """A dominant weight given by its multicharge (residues with repetition)."""

    e: int
    charges: tuple[int, ...]

    def __post_init__(self):
        if not self.charges:
            raise ValueError("a dominant weight needs at least one charge")
        object.__setattr__(self, "charges", tuple(sorted(normalize_residue(self.e, c) for c in self.charges)))

    @property
    def level(self) -> int:
        return len(self.charges)

    def pairing(self, i: int) -> int:
        """The multiplicity of ``Lambda_i``, i.e. the pairing with ``alpha_i``."""
        return self.charges.count(normalize_residue(self.e, i))

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.charges).items()))

    def __str__(self) -> str:
        parts = []
        for i, m in self.multiplicities().items():
            parts.append(f"{m if m > 1 else ''}L{i}")
        return "+".join(parts)


@dataclass(frozen=True, order=True)
class PositiveRoot:
    """A sum of simple roots, stored as sorted ``(residue, multiplicity)`` pairs."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_sequence(cls, e: int, seq: Iterable[int]) -> PositiveRoot:
        counter = Counter(normalize_residue(e, i) for i in seq)
        return cls(tuple(sorted((i, m) for i, m in counter.items() if m)))

    @property
    def height(self) -> int:
        return sum(m for _, m in self.counts)

    def multiset(self) -> list[int]:
        return [i for i, m in self.counts for _ in range(m)]

    def __str__(self) -> str:
        if not self.counts:
            return "0"
        return "+".join(f"{m if m > 1 else ''}a{i}" for i, m in self.counts)


def residue_window(e: int, charges: Sequence[int], d: int) -> list[int]:
    """Residues that can occur as eigenvalue labels in degree ``d``."""
    if e:
        return list(range(e))
    return list(range(min(charges) - d, max(charges) + d + 1))


def enumerate_I_alpha(e: int, alpha: PositiveRoot) -> list[Residues]:
    """All residue sequences of content ``alpha``, in lexicographic order."""
    return sorted(set(_itertools_permutations(alpha.multiset())))


def swap_places(seq: Sequence[int], r: int) -> Residues:
    """The place permutation ``s_r . seq`` (1-based ``r``)."""
    out = list(seq)
    out[r - 1], out[r] = out[r], out[r - 1]
    return tuple(out)


# ---------------------------------------------------------------------------
# partitions and tableaux


def partitions(d: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``d`` as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = d
    if d == 0:
        return [()]
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in partitions(d - first, first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram by ``1..d``, stored row by row."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def position(self, k: int) -> tuple[int, int]:
        """0-based (row, column) of entry ``k``."""
        for a, row in enumerate(self.rows):
            if k in row:
                return a, row.index(k)
        raise KeyError(k)

    def is_standard(self) -> bool:
        for a, row in enumerate(self.rows):
            for b, v in enumerate(row):
                if b + 1 < len(row) and row[b + 1] <= v:
                    return False
                if a + 1 < len(self.rows) and b < len(self.rows[a + 1]) and self.rows[a + 1][b] <= v:
                    return False
        return True

    def swap(self, r: int) -> Tableau:
        """``s_r T``: exchange the entries ``r`` and ``r + 1``."""
        table = {r: r + 1, r + 1: r}
        return Tableau(tuple(tuple(table.get(v, v) for v in row) for row in self.rows))

    def residues(self, e: int, shift: int = 0) -> Residues:
        """Residue sequence: entry ``k`` in column ``b``, row ``a`` has residue ``b - a + shift``."""
        out = []
        for k in range(1, self.size + 1):
            a, b = self.position(k)
            out.append(normalize_residue(e, b - a + shift))
        return tuple(out)

    def content(self, k: int) -> int:
        a, b = self.position(k)
        return b - a

    def __str__(self) -> str:
        return "/".join(",".join(map(str, r)) for r in self.rows)


def _last_letter_key(t: Tableau) -> tuple[int, ...]:
    # entries placed lower come first, comparing d, then d-1, ...
    return tuple(-t.position(k)[0] for k in range(t.size, 0, -1))


@lru_cache(maxsize=None)
def standard_tableaux(shape: tuple[int, ...]) -> tuple[Tableau, ...]:
    """All standard tableaux of ``shape`` in last-letter order."""
    shape = tuple(shape)
    d = sum(shape)
    found: list[Tableau] = []

    def grow(rows: list[list[int]], k: int):
        if k > d:
            found.append(Tableau(tuple(tuple(r) for r in rows)))
            return
        for a in range(len(shape)):
            if len(rows[a]) < shape[a] and (a == 0 or len(rows[a - 1]) > len(rows[a])):
                rows[a].append(k)
                grow(rows, k + 1)
                rows[a].pop()

    grow([[] for _ in shape], 1)
    return tuple(sorted(found, key=_last_letter_key))


def hook_length_count(shape: Sequence[int]) -> int:
    """Number of standard tableaux by the hook length formula."""
    shape = list(shape)
    conjugate = [sum(1 for part in shape if part > b) for b in range(shape[0])] if shape else []
    hooks = 1
    for a, part in enumerate(shape):
        for b in range(part):
            hooks *= (part - b - 1) + (conjugate[b] - a - 1) + 1
    return factorial(sum(shape)) // hooks


def residue_data(shape: Sequence[int], e: int, shift: int = 0) -> tuple[PositiveRoot, list[tuple[Tableau, Residues]]]:
    """Weight of a partition together with each standard tableau's residue sequence."""
    pairs = [(t, t.residues(e, shift)) for t in standard_tableaux(tuple(shape))]
    seq = pairs[0][1] if pairs else ()
    return PositiveRoot.from_sequence(e, seq), pairs


# ---------------------------------------------------------------------------
# permutations


def identity_permutation(d: int) -> tuple[int, ...]:
    return tuple(range(1, d + 1))


def permutation_length(w: Sequence[int]) -> int:
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def left_multiply(r: int, w: Sequence[int]) -> tuple[int, ...]:
    """``s_r w``: swap the values ``r`` and ``r + 1`` in the one-line notation."""
    table = {r: r + 1, r + 1: r}
    return tuple(table.get(v, v) for v in w)


def right_multiply(w: Sequence[int], r: int) -> tuple[int, ...]:
    """``w s_r``: swap the entries in places ``r`` and ``r + 1``."""
    return swap_places(w, r)


def compose(v: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
    """``v w`` as maps: ``(v w)(k) = v(w(k))``."""
    return tuple(v[w[k] - 1] for k in range(len(w)))


def inverse_permutation(w: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(w)
    for k, v in enumerate(w, start=1):
        out[v - 1] = k
    return tuple(out)


def is_left_descent(r: int, w: Sequence[int]) -> bool:
    """Whether ``s_r w`` is shorter than ``w`` (value ``r + 1`` precedes ``r``)."""
    return w.index(r + 1) < w.index(r)


@lru_cache(maxsize=None)
def reduced_word(w: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically smallest reduced word ``(a_1, ..., a_k)`` with ``w = s_{a_1} ... s_{a_k}``."""
    word = []
    w = tuple(w)
    while True:
        descent = next((r for r in range(1, len(w)) if is_left_descent(r, w)), None)
        if descent is None:
            return tuple(word)
        word.append(descent)
        w = left_multiply(descent, w)


def permutation_from_word(word: Iterable[int], d: int) -> tuple[int, ...]:
    w = identity_permutation(d)
    for r in reversed(list(word)):
        w = left_multiply(r, w)
    return w


@lru_cache(maxsize=None)
def all_permutations(d: int) -> tuple[tuple[int, ...], ...]:
    """``S_d`` ordered by length, then by lex-min reduced word."""
    perms = _itertools_permutations(range(1, d + 1))
    return tuple(sorted(perms, key=lambda w: (permutation_length(w), reduced_word(w))))
