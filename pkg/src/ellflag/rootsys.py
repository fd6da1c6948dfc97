"""Finite root systems from Cartan matrices, in exact arithmetic.

Roots are integer coordinate vectors on the simple-root basis, the
symmetrized pairing is rational, and every predicate downstream
(positivity, vanishing, Cartan integers) is decided exactly; no floating
point appears anywhere in this module.

The Cartan convention is ``C[i][j] = 2<a_i, a_j> / <a_j, a_j>``, so the
simple reflection ``s_i`` acts on a coordinate vector ``m`` by
``m[i] -= sum_j m[j] * C[j][i]``.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from .errors import ValidationError

Coords = Tuple[int, ...]
QVector = Tuple[Q, ...]
Rational = Union[int, str, Q]

_OFF_DIAGONAL_RANGE = (0, -1, -2, -3)

# Safety margin for the reflection closure.  The highest root of a valid
# finite-type matrix of rank l has height < 30*l (E8 peaks at 29), so
# hitting the cap means the finite-type validation was somehow bypassed.
_HEIGHT_CAP_FACTOR = 30

_LABEL_RE = re.compile(r"^([A-G])(\d+)$")


def as_rational(x: Rational) -> Q:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(x, Q):
        return x
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, str):
        return Q(x)
    raise ValidationError(f"not a rational value: {x!r}")


def format_rational(q: Q) -> str:
    """Serialize a Fraction as "p" or "p/q" (exactness across the wire)."""
    return str(q)


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class CartanMatrix:
    """Integer Cartan matrix, validated to be of finite type.

    Finite type is checked as positivity of all leading principal minors;
    the first failing minor is named in the rejection diagnostic.
    """

    __slots__ = ("entries",)

    def __init__(self, rows: Iterable[Iterable[int]]) -> None:
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(entries)
        if n == 0:
            raise ValidationError("empty Cartan matrix")
        for row in entries:
            if len(row) != n:
                raise ValidationError(f"Cartan matrix is not square: {entries}")
        for i in range(n):
            if entries[i][i] != 2:
                raise ValidationError(
                    f"diagonal entry ({i},{i}) is {entries[i][i]}, expected 2"
                )
            for j in range(n):
                if i == j:
                    continue
                if entries[i][j] not in _OFF_DIAGONAL_RANGE:
                    raise ValidationError(
                        f"off-diagonal entry ({i},{j}) is {entries[i][j]}, "
                        f"expected one of {_OFF_DIAGONAL_RANGE}"
                    )
                if (entries[i][j] == 0) != (entries[j][i] == 0):
                    raise ValidationError(
                        f"entries ({i},{j}) and ({j},{i}) must vanish together"
                    )
        for k in range(1, n + 1):
            minor = _int_det([row[:k] for row in entries[:k]])
            if minor <= 0:
                raise ValidationError(
                    f"not finite type: leading principal minor {k} is {minor}"
                )
        self.entries = entries

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CartanMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"CartanMatrix({list(map(list, self.entries))})"


def cartan_from_label(label: str) -> CartanMatrix:
    """Build the standard Cartan matrix for a type label like "A2" or "G2"."""
    m = _LABEL_RE.match(label.strip())
    if not m:
        raise ValidationError(f"unrecognized type label: {label!r}")
    family, n = m.group(1), int(m.group(2))
    lo = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}[family]
    hi = {"A": None, "B": None, "C": None, "D": None, "E": 8, "F": 4, "G": 2}[family]
    if n < lo or (hi is not None and n > hi):
        raise ValidationError(f"rank {n} out of range for family {family}")

    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        rows[i][j] = cij
        rows[j][i] = cji

    if family in ("A", "B", "C"):
        for i in range(n - 1):
            edge(i, i + 1)
        if family == "B" and n >= 2:
            # last simple root short: C[n-2][n-1] = -2
            edge(n - 2, n - 1, -2, -1)
        if family == "C" and n >= 2:
            # last simple root long: C[n-1][n-2] = -2
            edge(n - 2, n - 1, -1, -2)
    elif family == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif family == "E":
        for i, j in ((0, 2), (2, 3), (3, 4), (4, 5), (1, 3)):
            edge(i, j)
        for i in range(5, n - 1):
            edge(i, i + 1)
    elif family == "F":
        edge(0, 1)
        edge(1, 2, -2, -1)
        edge(2, 3)
    else:  # G2
        edge(0, 1, -1, -3)
    return CartanMatrix(rows)


@functools.total_ordering
@dataclass(frozen=True)
class Root:
    """A root as its integer coordinates on the simple-root basis.

    Canonical order is (height, then lexicographic coordinates), which
    puts negative roots before positive ones.
    """

    coords: Coords

    def __post_init__(self) -> None:
        c = self.coords
        if not c or all(x == 0 for x in c):
            raise ValidationError(f"zero vector is not a root: {c}")
        if any(x > 0 for x in c) and any(x < 0 for x in c):
            raise ValidationError(f"mixed-sign coordinates are not a root: {c}")

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.coords))

    def __lt__(self, other: "Root") -> bool:
        return (self.height, self.coords) < (other.height, other.coords)

    def __repr__(self) -> str:
        return f"Root{self.coords}"


def _reflect_coords(cartan: CartanMatrix, i: int, m: Coords) -> Coords:
    pairing_i = sum(m[j] * cartan.entries[j][i] for j in range(len(m)))
    out = list(m)
    out[i] -= pairing_i
    return tuple(out)


def _symmetrizer(cartan: CartanMatrix) -> QVector:
    """Positive rational d with d[i]*C[i][j] == d[j]*C[j][i] for all i, j.

    Solved by propagation over the Dynkin graph, then scaled so the
    minimum within each connected component is 1 (short simple roots get
    squared length 2).
    """
    c = cartan.entries
    n = cartan.rank
    d: List[Q] = [Q(0)] * n
    assigned = [False] * n
    for start in range(n):
        if assigned[start]:
            continue
        component = [start]
        d[start] = Q(1)
        assigned[start] = True
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if i == j or c[i][j] == 0 or assigned[j]:
                    continue
                d[j] = d[i] * Q(c[j][i], c[i][j])
                assigned[j] = True
                component.append(j)
                queue.append(j)
        scale = min(d[k] for k in component)
        for k in component:
            d[k] /= scale
    for i in range(n):
        for j in range(n):
            if c[i][j] * d[j] != c[j][i] * d[i]:
                raise ValidationError(
                    f"Cartan matrix is not symmetrizable at ({i},{j})"
                )
    return tuple(d)


class RootSystem:
    """A finite root system with exact pairing and coweight data.

    ``positive_roots`` is the full positive system in canonical order;
    construction is by reflection closure from the simple roots, so the
    per-type tables are test targets rather than inputs.
    """

    __slots__ = (
        "cartan",
        "symmetrizer",
        "positive_roots",
        "_gram",
        "_pos_coords",
        "_all_coords",
    )

    def __init__(self, cartan: CartanMatrix) -> None:
        self.cartan = cartan
        self.symmetrizer = _symmetrizer(cartan)
        d = self.symmetrizer
        c = cartan.entries
        n = cartan.rank
        self._gram: Tuple[QVector, ...] = tuple(
            tuple(Q(c[i][j]) * d[j] for j in range(n)) for i in range(n)
        )
        self.positive_roots: Tuple[Root, ...] = self._close_positive_system()
        self._pos_coords: FrozenSet[Coords] = frozenset(
            r.coords for r in self.positive_roots
        )
        self._all_coords: FrozenSet[Coords] = self._pos_coords | frozenset(
            (-r).coords for r in self.positive_roots
        )

    def _close_positive_system(self) -> Tuple[Root, ...]:
        n = self.cartan.rank
        height_cap = _HEIGHT_CAP_FACTOR * n
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        pos = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(n):
                    mm = _reflect_coords(self.cartan, i, m)
                    if min(mm) >= 0 and mm not in pos:
                        if sum(mm) > height_cap:
                            raise ValidationError(
                                "reflection closure exceeded the height cap; "
                                "matrix is not of finite type"
                            )
                        pos.add(mm)
                        nxt.append(mm)
            frontier = nxt
        return tuple(sorted(Root(m) for m in pos))

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        n = self.rank
        return tuple(
            Root(tuple(1 if k == i else 0 for k in range(n))) for i in range(n)
        )

    def simple(self, i: int) -> Root:
        return Root(tuple(1 if k == i else 0 for k in range(self.rank)))

    @property
    def all_roots(self) -> Tuple[Root, ...]:
        return tuple(sorted([-r for r in self.positive_roots]) + list(self.positive_roots))

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def contains(self, coords: Coords) -> bool:
        return coords in self._all_coords

    def contains_positive(self, coords: Coords) -> bool:
        return coords in self._pos_coords

    def root(self, coords: Sequence[int]) -> Root:
        r = Root(tuple(int(x) for x in coords))
        if r.coords not in self._all_coords:
            raise ValidationError(f"{r} is not a root of this system")
        return r

    def reflect(self, i: int, root: Root) -> Root:
        if not 0 <= i < self.rank:
            raise ValidationError(f"simple-reflection index {i} out of range")
        return Root(_reflect_coords(self.cartan, i, root.coords))

    def pairing(self, alpha: Root, beta: Root) -> Q:
        m, n = alpha.coords, beta.coords
        return sum(
            m[i] * sum(self._gram[i][j] * n[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def cartan_integer(self, alpha: Root, beta: Root) -> Q:
        return 2 * self.pairing(alpha, beta) / self.pairing(beta, beta)

    def evaluate_on_coweight(self, alpha: Root, c: Sequence[Rational]) -> Q:
        if len(c) != self.rank:
            raise ValidationError(
                f"coweight vector has length {len(c)}, expected {self.rank}"
            )
        return sum(as_rational(x) * m for x, m in zip(c, alpha.coords))

    def __repr__(self) -> str:
        return f"RootSystem(rank={self.rank}, positive={self.num_positive})"


def build_root_system(cartan: Union[CartanMatrix, str, Sequence[Sequence[int]]]) -> RootSystem:
    """Construct the root system of a Cartan matrix or type label."""
    if isinstance(cartan, str):
        cartan = cartan_from_label(cartan)
    elif not isinstance(cartan, CartanMatrix):
        cartan = CartanMatrix(cartan)
    return RootSystem(cartan)


def pairing(rs: RootSystem, alpha: Root, beta: Root) -> Q:
    """Symmetrized inner product <alpha, beta>, exact."""
    return rs.pairing(alpha, beta)


def evaluate_on_coweight(rs: RootSystem, alpha: Root, c: Sequence[Rational]) -> Q:
    """Evaluate alpha on the coweight with coordinates c: sum c_a * m_a."""
    return rs.evaluate_on_coweight(alpha, c)
