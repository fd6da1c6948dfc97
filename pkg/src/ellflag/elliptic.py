"""Elliptic elements, eigenvalue gradings, and weighted partitions.

An elliptic element T is stored through the rational coordinates of -iT
on the coweight basis, so every level alpha(-iT) is an exact rational
and membership in the zero-level set is an exact vanishing test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .errors import IdentityCheckError, ValidationError
from .rootsys import QVector, Rational, Root, RootSystem, as_rational
from .weyl import WeylElement, _identity_mat, _mat_mul, simple_reflection_matrix


@dataclass(frozen=True)
class EllipticElement:
    """Coordinates of -iT on the coweight basis; any rational vector."""

    coeffs: QVector

    @staticmethod
    def of(coeffs: Sequence[Rational]) -> "EllipticElement":
        return EllipticElement(tuple(as_rational(x) for x in coeffs))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_dominant(self) -> bool:
        # simple-root values are exactly the coordinates, by duality
        return all(c >= 0 for c in self.coeffs)


@dataclass(frozen=True, eq=False)
class GradedDecomposition:
    """The eigenvalue grading of the root spaces under ad T.

    ``levels`` maps every nonzero rational eigenvalue to its root set;
    ``delta_black`` is the zero set.  Dimensions follow the bookkeeping
    dim levi = rank + |black|, r = |positives - black|, parabolic =
    levi + r, and the flag manifold has complex dimension r.
    """

    rs: RootSystem
    element: EllipticElement
    levels: Dict[Q, FrozenSet[Root]]
    delta_black: FrozenSet[Root]
    u_plus: FrozenSet[Root]
    u_minus: FrozenSet[Root]

    def level_of(self, alpha: Root) -> Q:
        return self.rs.evaluate_on_coweight(alpha, self.element.coeffs)

    def level_multiset(self) -> Tuple[Q, ...]:
        return tuple(sorted(self.level_of(a) for a in self.rs.all_roots))

    @property
    def black_positive(self) -> FrozenSet[Root]:
        return frozenset(r for r in self.delta_black if r.is_positive)

    @property
    def positive_complement(self) -> FrozenSet[Root]:
        """Positive roots outside the black set (the grading's u+ side
        once the element is dominant)."""
        return frozenset(self.rs.positive_roots) - self.delta_black

    @property
    def r(self) -> int:
        return len(self.positive_complement)

    @property
    def dim_levi(self) -> int:
        return self.rs.rank + len(self.delta_black)

    @property
    def dim_parabolic(self) -> int:
        return self.dim_levi + self.r

    @property
    def dim_group(self) -> int:
        return 2 * len(self.rs.positive_roots) + self.rs.rank

    @property
    def flag_dim(self) -> int:
        return self.r


def grade(rs: RootSystem, elem: EllipticElement) -> GradedDecomposition:
    """Partition the roots by their exact eigenvalue alpha(-iT)."""
    if len(elem.coeffs) != rs.rank:
        raise ValidationError(
            f"elliptic element has length {len(elem.coeffs)}, expected {rs.rank}"
        )
    levels: Dict[Q, set] = {}
    black = set()
    plus = set()
    minus = set()
    for alpha in rs.all_roots:
        lam = rs.evaluate_on_coweight(alpha, elem.coeffs)
        if lam == 0:
            black.add(alpha)
            continue
        levels.setdefault(lam, set()).add(alpha)
        (plus if lam > 0 else minus).add(alpha)
    return GradedDecomposition(
        rs=rs,
        element=elem,
        levels={lam: frozenset(s) for lam, s in sorted(levels.items())},
        delta_black=frozenset(black),
        u_plus=frozenset(plus),
        u_minus=frozenset(minus),
    )


def _coweight_reflect(rs: RootSystem, i: int, c: QVector) -> QVector:
    # contragredient action of s_i on coweight coordinates
    row = [rs.cartan.entries[k][i] for k in range(rs.rank)]
    out = list(c)
    for k in range(rs.rank):
        out[k] = -c[i] if k == i else c[k] - row[k] * c[i]
    return tuple(out)


def transform_coweight(w: WeylElement, coeffs: Sequence[Q]) -> QVector:
    """Coordinates of w . T for a coweight T with the given coordinates.

    Contragredient action: the value of a root on w . T equals the value
    of its preimage under w on T.
    """
    n = len(coeffs)
    inv = w.inv_mat
    return tuple(sum(inv[j][k] * coeffs[j] for j in range(n)) for k in range(n))


def dominant_form(
    rs: RootSystem, elem: EllipticElement
) -> Tuple[WeylElement, EllipticElement]:
    """Reflect the element into the dominant chamber.

    Returns (w, T') with T' = w.T, all simple values of T' nonnegative,
    and the grading data (black size, level multiset, dimensions) of T'
    identical to T's; the descent reflects at the least negative simple
    value and terminates by length descent.
    """
    if len(elem.coeffs) != rs.rank:
        raise ValidationError(
            f"elliptic element has length {len(elem.coeffs)}, expected {rs.rank}"
        )
    c = elem.coeffs
    ident = _identity_mat(rs.rank)
    w = WeylElement(rs, ident, ident, ())
    steps = 0
    budget = 2 * len(rs.positive_roots) + 1
    while True:
        neg = [i for i in range(rs.rank) if c[i] < 0]
        if not neg:
            break
        i = neg[0]
        c = _coweight_reflect(rs, i, c)
        s_mat = simple_reflection_matrix(rs, i)
        w = WeylElement(rs, _mat_mul(s_mat, w.mat), _mat_mul(w.inv_mat, s_mat), (i,) + w.word)
        steps += 1
        if steps > budget:
            raise IdentityCheckError("dominance descent did not terminate")
    result = EllipticElement(c)
    before, after = grade(rs, elem), grade(rs, result)
    if (
        len(before.delta_black) != len(after.delta_black)
        or before.level_multiset() != after.level_multiset()
        or (before.r, before.dim_levi) != (after.r, after.dim_levi)
    ):
        raise IdentityCheckError("dominance descent changed the grading data")
    return w, result


def positive_level_weights(grading: GradedDecomposition) -> Tuple[Q, ...]:
    """Levels of the non-black positive roots, in canonical root order.

    These are the weights whose nonnegative integer combinations are
    counted by :func:`count_weighted_partitions`; defined for dominant
    elements, where they are all positive.
    """
    if not grading.element.is_dominant:
        raise ValidationError("level weights require a dominant element")
    return tuple(
        grading.level_of(beta)
        for beta in grading.rs.positive_roots
        if beta not in grading.delta_black
    )


def count_weighted_partitions(
    weights: Sequence[Rational], theta: Rational
) -> FrozenSet[Tuple[int, ...]]:
    """All nonnegative integer vectors n with sum(n_j * w_j) = theta.

    Finite because each coordinate is confined to the box
    0 <= n_k <= theta / w_k; enumerated by depth-first search over that
    box with exact remainders.
    """
    ws = [as_rational(w) for w in weights]
    if any(w <= 0 for w in ws):
        raise ValidationError("all partition weights must be positive")
    th = as_rational(theta)
    found: List[Tuple[int, ...]] = []
    if th < 0:
        return frozenset()

    def descend(k: int, remaining: Q, prefix: List[int]) -> None:
        if k == len(ws):
            if remaining == 0:
                found.append(tuple(prefix))
            return
        box = int(remaining / ws[k])
        for n in range(box + 1):
            prefix.append(n)
            descend(k + 1, remaining - n * ws[k], prefix)
            prefix.pop()

    descend(0, th, [])
    return frozenset(found)
