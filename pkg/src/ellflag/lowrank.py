"""Exact low-rank matrix models: the rank-one orbit classifier and the
rank-two pseudo-metric signature table.

Everything structural is computed over Gaussian rationals (pairs of
exact rationals), so class tags, Gram matrices, and signatures are
decided exactly; floating point appears only in normalizer certificates
whose formulas contain radicals, and those are verified entrywise to
1e-9 (exactly, when the radicals happen to be rational).

This module doubles as the brute-force oracle for the combinatorial
modules in ranks one and two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .errors import IdentityCheckError, ValidationError
from .rootsys import Rational, as_rational

NORMALIZER_TOLERANCE = 1e-9


# ---------------------------------------------------------------------------
# Gaussian-rational scalars and matrices


@dataclass(frozen=True)
class QC:
    """A complex number with exact rational real and imaginary parts."""

    re: Q
    im: Q = Q(0)

    @staticmethod
    def of(x: Union["QC", Rational]) -> "QC":
        if isinstance(x, QC):
            return x
        return QC(as_rational(x))

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __repr__(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


ZERO = QC(Q(0))
ONE = QC(Q(1))
I_UNIT = QC(Q(0), Q(1))


class Mat:
    """An exact complex matrix (tuple of rows of QC entries)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Union[QC, Rational]]]) -> None:
        self.rows: Tuple[Tuple[QC, ...], ...] = tuple(
            tuple(QC.of(x) for x in row) for row in rows
        )
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise ValidationError("matrix is not square")

    @property
    def size(self) -> int:
        return len(self.rows)

    @staticmethod
    def diagonal(entries: Sequence[Union[QC, Rational]]) -> "Mat":
        n = len(entries)
        return Mat(
            [
                [QC.of(entries[i]) if i == j else ZERO for j in range(n)]
                for i in range(n)
            ]
        )

    def __add__(self, other: "Mat") -> "Mat":
        self._match(other)
        return Mat(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._match(other)
        return Mat(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __matmul__(self, other: "Mat") -> "Mat":
        self._match(other)
        n = self.size
        return Mat(
            [
                [
                    sum(
                        (self.rows[i][k] * other.rows[k][j] for k in range(n)),
                        ZERO,
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )

    def scale(self, s: Union[QC, Rational]) -> "Mat":
        sc = QC.of(s)
        return Mat([[sc * x for x in row] for row in self.rows])

    def trace(self) -> QC:
        return sum((self.rows[i][i] for i in range(self.size)), ZERO)

    @property
    def is_traceless(self) -> bool:
        return self.trace().is_zero

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero for row in self.rows for x in row)

    def _match(self, other: "Mat") -> None:
        if self.size != other.size:
            raise ValidationError("matrix size mismatch")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Mat({[list(r) for r in self.rows]})"


def bracket(x: Mat, y: Mat) -> Mat:
    """Commutator [x, y] = xy - yx."""
    return (x @ y) - (y @ x)


def killing(x: Mat, y: Mat) -> Q:
    """Killing form on traceless n x n matrices: 2n * tr(xy).

    The callers all pair elements of a real form, so the value must come
    out real; a nonreal value is rejected.
    """
    x._match(y)
    if not (x.is_traceless and y.is_traceless):
        raise ValidationError("Killing form requires traceless matrices")
    t = (x @ y).trace()
    value = t * QC.of(2 * x.size)
    if value.im != 0:
        raise ValidationError("Killing value is not real for these arguments")
    return value.re


# ---------------------------------------------------------------------------
# Rank one: orbit classifier for traceless real 2x2 matrices

TAG_K = "K"
TAG_A = "A"
TAG_N = "N"
TAG_O2 = "O2"

Mat2 = Tuple[Tuple[Union[Q, float], ...], ...]

REPRESENTATIVES: Dict[str, Tuple[Tuple[Q, ...], ...]] = {
    TAG_K: ((Q(0), Q(-1)), (Q(1), Q(0))),
    TAG_A: ((Q(1), Q(0)), (Q(0), Q(-1))),
    TAG_N: ((Q(0), Q(1)), (Q(0), Q(0))),
    TAG_O2: ((Q(0), Q(0)), (Q(0), Q(0))),
}


@dataclass(frozen=True)
class Sl2Class:
    """Orbit tag of a traceless 2x2 real matrix with its representative."""

    tag: str
    representative: Tuple[Tuple[Q, ...], ...]


def sl2_classify(a: Rational, b: Rational, c: Rational) -> Sl2Class:
    """Classify X = [[a, b], [c, -a]] by the exact sign of det X = -a^2 - bc."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    det = -a * a - b * c
    if det > 0:
        tag = TAG_K
    elif det < 0:
        tag = TAG_A
    elif a == b == c == 0:
        tag = TAG_O2
    else:
        tag = TAG_N
    return Sl2Class(tag=tag, representative=REPRESENTATIVES[tag])


class _Inexact(Exception):
    """Internal: a needed radical is irrational, fall back to floats."""


def _exact_sqrt(q: Q) -> Q:
    if q < 0:
        raise _Inexact
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        raise _Inexact
    return Q(rn, rd)


def _mat2_mul(g: Mat2, h: Mat2) -> Mat2:
    return (
        (
            g[0][0] * h[0][0] + g[0][1] * h[1][0],
            g[0][0] * h[0][1] + g[0][1] * h[1][1],
        ),
        (
            g[1][0] * h[0][0] + g[1][1] * h[1][0],
            g[1][0] * h[0][1] + g[1][1] * h[1][1],
        ),
    )


def _mat2_det(g: Mat2):
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def _mat2_adjoint_action(g: Mat2, x: Mat2) -> Mat2:
    det = _mat2_det(g)
    ginv = (
        (g[1][1] / det, -g[0][1] / det),
        (-g[1][0] / det, g[0][0] / det),
    )
    return _mat2_mul(_mat2_mul(g, x), ginv)


def _normalizer_formulas(
    a, b, c, det, sqrt: Callable
) -> Tuple[object, Mat2]:
    """The explicit (scale, unimodular matrix) pair, generic in the
    arithmetic: exact when ``sqrt`` is exact, floating otherwise."""
    if det > 0:
        # rotation class; det > 0 forces c != 0
        s2 = sqrt(det)
        s4 = sqrt(s2)
        if c > 0:
            sc = sqrt(c)
            return 1 / s2, ((sc / s4, -a / (sc * s4)), (0 * a, s4 / sc))
        sc = sqrt(-c)
        return -1 / s2, ((sc / s4, a / (sc * s4)), (0 * a, s4 / sc))
    if det < 0:
        s = sqrt(a * a + b * c)
        return -1 / s, ((1 + 0 * a, -(a + s) / c), (c / (2 * s), (s - a) / (2 * s)))
    if c != 0:
        return -1 / c, ((c, 1 - a), (-1 + 0 * a, a / c))
    # det == 0 and c == 0 force a == 0 and b != 0
    return 1 / b, ((1 + 0 * a, 0 * a), (0 * a, 1 + 0 * a))


def _verify_normalizer(lam, g: Mat2, x: Mat2, rep, exact: bool) -> None:
    det = _mat2_det(g)
    image = _mat2_adjoint_action(g, x)
    scaled = tuple(tuple(lam * e for e in row) for row in image)
    if exact:
        ok = det == 1 and scaled == rep
    else:
        ok = abs(det - 1) <= NORMALIZER_TOLERANCE and all(
            abs(scaled[i][j] - rep[i][j]) <= NORMALIZER_TOLERANCE
            for i in range(2)
            for j in range(2)
        )
    if not ok:
        raise IdentityCheckError(
            "normalizer certificate failed its post-check",
            {"matrix": x, "scale": lam, "g": g},
        )


def sl2_normalizer(
    a: Rational, b: Rational, c: Rational
) -> Tuple[Union[Q, float], Mat2]:
    """A pair (scale, g) with det g = 1 carrying X onto its representative.

    Exact rationals whenever the radicals in the closed formulas are
    rational, floating point otherwise; either way the certificate
    ``scale * g X g^-1 = representative`` is re-verified before return.
    """
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    if a == b == c == 0:
        raise ValidationError("the zero matrix has no normalizer certificate")
    det = -a * a - b * c

    if det < 0 and c == 0:
        # the split-class formula divides by c; shear first (a != 0 here)
        for t in (Q(1), Q(2)):
            cc = t * (2 * a - t * b)
            if cc != 0:
                lam, g = sl2_normalizer(a - t * b, b, cc)
                h = ((Q(1), Q(0)), (t, Q(1)))
                composed = _mat2_mul(
                    g if isinstance(lam, Q) else tuple(tuple(float(e) for e in r) for r in g),
                    h if isinstance(lam, Q) else ((1.0, 0.0), (float(t), 1.0)),
                )
                x = ((a, b), (c, -a))
                rep = REPRESENTATIVES[sl2_classify(a, b, c).tag]
                if isinstance(lam, Q):
                    _verify_normalizer(lam, composed, x, rep, exact=True)
                else:
                    xf = tuple(tuple(float(e) for e in row) for row in x)
                    repf = tuple(tuple(float(e) for e in row) for row in rep)
                    _verify_normalizer(lam, composed, xf, repf, exact=False)
                return lam, composed
        raise IdentityCheckError("shear failed to produce a lower-left entry")

    rep = REPRESENTATIVES[sl2_classify(a, b, c).tag]
    try:
        lam, g = _normalizer_formulas(a, b, c, det, _exact_sqrt)
        _verify_normalizer(lam, g, ((a, b), (c, -a)), rep, exact=True)
        return lam, g
    except _Inexact:
        af, bf, cf, detf = float(a), float(b), float(c), float(det)
        lam, g = _normalizer_formulas(af, bf, cf, detf, math.sqrt)
        repf = tuple(tuple(float(e) for e in row) for row in rep)
        _verify_normalizer(lam, g, ((af, bf), (cf, -af)), repf, exact=False)
        return lam, g


def sample_sl2(rng, tag: str) -> Tuple[Q, Q, Q]:
    """A seeded random traceless matrix with the requested class tag."""

    def small() -> Q:
        return Q(rng.randrange(-9, 10), rng.randrange(1, 7))

    if tag == TAG_O2:
        return Q(0), Q(0), Q(0)
    if tag == TAG_K:
        a = small()
        c = Q(0)
        while c == 0:
            c = small()
        d = Q(rng.randrange(1, 60), rng.randrange(1, 7))
        return a, (-a * a - d) / c, c
    if tag == TAG_A:
        if rng.randrange(4) == 0:
            a = Q(0)
            while a == 0:
                a = small()
            return a, small(), Q(0)
        a = small()
        c = Q(0)
        while c == 0:
            c = small()
        d = -Q(rng.randrange(1, 60), rng.randrange(1, 7))
        return a, (-a * a - d) / c, c
    if tag == TAG_N:
        if rng.randrange(4) == 0:
            b = Q(0)
            while b == 0:
                b = small()
            return Q(0), b, Q(0)
        a = small()
        c = Q(0)
        while c == 0:
            c = small()
        return a, -a * a / c, c
    raise ValidationError(f"unknown class tag {tag!r}")


def sample_sl2_group_element(rng) -> Mat2:
    """A random rational unimodular 2x2 matrix (product of shears)."""
    g: Mat2 = ((Q(1), Q(0)), (Q(0), Q(1)))
    for _ in range(rng.randrange(1, 5)):
        t = Q(rng.randrange(-5, 6), rng.randrange(1, 5))
        shear = ((Q(1), t), (Q(0), Q(1))) if rng.randrange(2) else ((Q(1), Q(0)), (t, Q(1)))
        g = _mat2_mul(g, shear)
    return g


# ---------------------------------------------------------------------------
# Rank two: the six invariant complex structures and their signatures

SU21_PARAMS = ("b", "c", "x", "y", "z", "w")

T_SU21 = Mat.diagonal([I_UNIT, ZERO, -I_UNIT])


def su21_element(
    a1: Rational, a2: Rational, b: Rational, c: Rational,
    x: Rational, y: Rational, z: Rational, w: Rational,
) -> Mat:
    """The general element of the rank-two model in its real parameters."""
    a1, a2 = as_rational(a1), as_rational(a2)
    b, c = as_rational(b), as_rational(c)
    x, y = as_rational(x), as_rational(y)
    z, w = as_rational(z), as_rational(w)
    a3 = -a1 - a2
    return Mat(
        [
            [QC(Q(0), a1), QC(b, c), QC(-y, x)],
            [QC(-b, c), QC(Q(0), a2), QC(-w, z)],
            [QC(-y, -x), QC(-w, -z), QC(Q(0), a3)],
        ]
    )


def _centered(params: Sequence[Q]) -> Mat:
    b, c, x, y, z, w = params
    return su21_element(0, 0, b, c, x, y, z, w)


def apply_complex_structure(a: int, params: Sequence[Q]) -> Tuple[Q, ...]:
    """Image parameters (b, c, x, y, z, w) under the a-th structure map."""
    b, c, x, y, z, w = (as_rational(p) for p in params)
    if a in (1, 2):
        image = (-c, b, -y, x, -w, z)
    elif a in (3, 4):
        image = (-c, b, -y, x, w, -z)
    elif a in (5, 6):
        image = (-c, b, y, -x, w, -z)
    else:
        raise ValidationError(f"complex structure index {a} out of range 1..6")
    if a % 2 == 0:
        image = tuple(-p for p in image)
    return image


def symplectic_pairing(x: Mat, y: Mat) -> Q:
    """omega(x, y): the Killing pairing of the fixed elliptic element
    against the commutator."""
    return killing(T_SU21, bracket(x, y))


def rational_inertia(gram: Sequence[Sequence[Q]]) -> Tuple[int, int, int]:
    """(negatives, positives, nulls) of a symmetric rational matrix,
    by exact congruence reduction with hyperbolic-pair handling."""
    n = len(gram)
    m = [list(row) for row in gram]
    for i in range(n):
        for j in range(n):
            if m[i][j] != m[j][i]:
                raise ValidationError("matrix is not symmetric")
    active = list(range(n))
    neg = pos = 0
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(
                (
                    (i, j)
                    for i in active
                    for j in active
                    if i != j and m[i][j] != 0
                ),
                None,
            )
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        pivot_row = list(m[piv])
        for i in active:
            if m[i][piv] != 0:
                f = m[i][piv] / d
                for j in active:
                    m[i][j] -= f * pivot_row[j]
                m[i][piv] = Q(0)
                m[piv][i] = Q(0)
    return neg, pos, len(active)


def _q_det(rows: Sequence[Sequence[Q]]) -> Q:
    n = len(rows)
    m = [list(r) for r in rows]
    det = Q(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Q(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


@dataclass(frozen=True)
class MetricSignature:
    """Gram matrix and inertia of one pseudo-metric g_a."""

    index: int
    gram: Tuple[Tuple[Q, ...], ...]
    negatives: int
    positives: int


@dataclass(frozen=True)
class SignatureReport:
    """Signatures of the six pseudo-metrics on the centered subspace.

    Basis order is the parameter order (b, c, x, y, z, w); the
    symplectic Gram matrix is carried along for the antisymmetry and
    nondegeneracy facts.
    """

    metrics: Tuple[MetricSignature, ...]
    omega_gram: Tuple[Tuple[Q, ...], ...]


def su21_signature_table() -> SignatureReport:
    """Compute the six Gram matrices and their exact signatures."""
    dim = len(SU21_PARAMS)
    basis_params = [
        tuple(Q(1) if k == u else Q(0) for k in range(dim)) for u in range(dim)
    ]
    basis = [_centered(p) for p in basis_params]

    omega = tuple(
        tuple(symplectic_pairing(basis[u], basis[v]) for v in range(dim))
        for u in range(dim)
    )
    for u in range(dim):
        for v in range(dim):
            if omega[u][v] != -omega[v][u]:
                raise IdentityCheckError("symplectic Gram is not antisymmetric")
    if _q_det(omega) == 0:
        raise IdentityCheckError("symplectic Gram is degenerate")

    metrics = []
    for a in range(1, 7):
        for p in basis_params:  # structure squares to minus the identity
            twice = apply_complex_structure(a, apply_complex_structure(a, p))
            if twice != tuple(-q for q in p):
                raise IdentityCheckError(f"structure {a} does not square to -id")
        # each structure map sends a basis parameter to a signed basis
        # parameter, so the metric Gram is a signed column rearrangement
        # of the symplectic Gram
        columns = []
        for v in range(dim):
            image = apply_complex_structure(a, basis_params[v])
            support = [k for k, q in enumerate(image) if q != 0]
            if len(support) != 1 or abs(image[support[0]]) != 1:
                raise IdentityCheckError(
                    f"structure {a} is not a signed basis permutation"
                )
            k = support[0]
            columns.append((k, image[k]))
        gram = tuple(
            tuple(sign * omega[u][k] for k, sign in columns) for u in range(dim)
        )
        for u in range(dim):
            for v in range(dim):
                if gram[u][v] != gram[v][u]:
                    raise IdentityCheckError(f"metric {a} Gram is not symmetric")
        negatives, positives, nulls = rational_inertia(gram)
        if nulls:
            raise IdentityCheckError(f"metric {a} Gram is degenerate")
        metrics.append(
            MetricSignature(
                index=a, gram=gram, negatives=negatives, positives=positives
            )
        )
    return SignatureReport(metrics=tuple(metrics), omega_gram=omega)


# ---------------------------------------------------------------------------
# ad T oracles for the rank-one and rank-two gradings


def sl2_adT_eigenvalues() -> Tuple[QC, QC, QC]:
    """Eigenvalues of ad T on the standard complexified rank-one basis."""
    t = Mat([[ZERO, ONE], [-ONE, ZERO]])
    e1 = Mat([[-I_UNIT, ONE], [ONE, I_UNIT]])
    e2 = Mat([[I_UNIT, ONE], [ONE, -I_UNIT]])
    out = []
    for e in (e1, e2, t):
        out.append(_eigen_scalar(bracket(t, e), e))
    return tuple(out)


def _eigen_scalar(image: Mat, vector: Mat) -> QC:
    """The scalar mu with image = mu * vector, verified entrywise."""
    n = vector.size
    mu: Optional[QC] = None
    for i in range(n):
        for j in range(n):
            if not vector.rows[i][j].is_zero:
                v = vector.rows[i][j]
                w = image.rows[i][j]
                # mu = w / v over the Gaussian rationals
                denom = v.re * v.re + v.im * v.im
                cand = QC(
                    (w.re * v.re + w.im * v.im) / denom,
                    (w.im * v.re - w.re * v.im) / denom,
                )
                if mu is None:
                    mu = cand
                elif mu != cand:
                    raise IdentityCheckError("matrix is not an eigenvector")
    if mu is None:
        raise IdentityCheckError("zero vector has no eigenvalue")
    if image != vector.scale(mu):
        raise IdentityCheckError("matrix is not an eigenvector")
    return mu


_SU21_COWEIGHTS = (
    (Q(2, 3), Q(-1, 3), Q(-1, 3)),
    (Q(1, 3), Q(1, 3), Q(-2, 3)),
)

# root coordinates on the simple basis -> elementary matrix position
_SU21_ROOT_POSITIONS: Dict[Tuple[int, int], Tuple[int, int]] = {
    (1, 0): (0, 1),
    (0, 1): (1, 2),
    (1, 1): (0, 2),
    (-1, 0): (1, 0),
    (0, -1): (2, 1),
    (-1, -1): (2, 0),
}


def su21_adT_levels(c1: Rational, c2: Rational) -> Dict[Tuple[int, int], Q]:
    """Exact ad T eigenvalues (over i) on the rank-two root vectors.

    T is the diagonal model of the coweight combination c1, c2; the
    returned map sends each root's simple-basis coordinates to the
    rational level of its root vector.
    """
    c1, c2 = as_rational(c1), as_rational(c2)
    diag = [
        I_UNIT * QC(c1 * _SU21_COWEIGHTS[0][k] + c2 * _SU21_COWEIGHTS[1][k])
        for k in range(3)
    ]
    t = Mat.diagonal(diag)
    levels: Dict[Tuple[int, int], Q] = {}
    for coords, (i, j) in _SU21_ROOT_POSITIONS.items():
        e = Mat([[ONE if (r, s) == (i, j) else ZERO for s in range(3)] for r in range(3)])
        mu = _eigen_scalar(bracket(t, e), e)
        if mu.re != 0:
            raise IdentityCheckError("ad T eigenvalue is not purely imaginary")
        levels[coords] = mu.im
    return levels


def a2_weyl_action_matrices() -> FrozenSet[Tuple[Tuple[int, ...], ...]]:
    """Action matrices on simple-root coordinates of all permutations of
    the three diagonal entries of the rank-two model.

    Independent oracle for the rank-two Weyl enumeration: the result is
    exactly the set of enumerated action matrices.
    """
    import itertools

    # epsilon_i - epsilon_j in simple coordinates
    eps_diff = {
        (0, 1): (1, 0),
        (1, 2): (0, 1),
        (0, 2): (1, 1),
        (1, 0): (-1, 0),
        (2, 1): (0, -1),
        (2, 0): (-1, -1),
    }
    mats = set()
    for p in itertools.permutations(range(3)):
        cols = [eps_diff[(p[0], p[1])], eps_diff[(p[1], p[2])]]
        mats.add(tuple(tuple(cols[j][r] for j in range(2)) for r in range(2)))
    return frozenset(mats)
