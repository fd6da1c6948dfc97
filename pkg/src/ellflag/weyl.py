"""Weyl group enumeration, inversion sets, and parabolic coset data.

Elements are stored by their exact action on the root lattice (an
integer matrix on simple-root coordinates) together with a defining word
in simple reflections.  Equality and deduplication go through inversion
sets, which identify elements uniquely; enumerated elements carry the
lexicographically least reduced word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import CapExceededError, IdentityCheckError, ValidationError
from .rootsys import Coords, Root, RootSystem

Matrix = Tuple[Coords, ...]  # row-major, integer entries

DEFAULT_CAP = 10**6


def _identity_mat(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(a: Matrix, v: Coords) -> Coords:
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) for i in range(n))


def simple_reflection_matrix(rs: RootSystem, i: int) -> Matrix:
    """Matrix of s_i on simple-root coordinates (columns are images)."""
    n = rs.rank
    c = rs.cartan.entries
    rows = [[1 if r == j else 0 for j in range(n)] for r in range(n)]
    for j in range(n):
        rows[i][j] = (1 if i == j else 0) - c[j][i]
    return tuple(tuple(r) for r in rows)


class WeylElement:
    """A Weyl group element acting exactly on the root lattice.

    ``word`` is a defining product of simple reflections; for elements
    produced by :func:`enumerate_weyl_group` it is the lexicographically
    least reduced word.  ``length`` is intrinsic (the inversion-set size),
    so it is correct even for ad-hoc products.
    """

    __slots__ = ("rs", "mat", "inv_mat", "word", "_inversion", "_hash")

    def __init__(
        self, rs: RootSystem, mat: Matrix, inv_mat: Matrix, word: Tuple[int, ...]
    ) -> None:
        self.rs = rs
        self.mat = mat
        self.inv_mat = inv_mat
        self.word = word
        self._inversion: Optional[FrozenSet[Root]] = None
        self._hash: Optional[int] = None

    def act(self, alpha: Root) -> Root:
        image = _mat_vec(self.mat, alpha.coords)
        if not self.rs.contains(image):
            raise IdentityCheckError(
                "Weyl action left the root system", {"word": self.word, "root": alpha}
            )
        return Root(image)

    def act_inverse(self, alpha: Root) -> Root:
        image = _mat_vec(self.inv_mat, alpha.coords)
        if not self.rs.contains(image):
            raise IdentityCheckError(
                "inverse Weyl action left the root system",
                {"word": self.word, "root": alpha},
            )
        return Root(image)

    @property
    def inversion_set(self) -> FrozenSet[Root]:
        """Positive roots sent negative by the inverse action."""
        if self._inversion is None:
            # root coordinates never mix signs, so min < 0 means negative
            self._inversion = frozenset(
                beta
                for beta in self.rs.positive_roots
                if min(_mat_vec(self.inv_mat, beta.coords)) < 0
            )
        return self._inversion

    @property
    def length(self) -> int:
        return len(self.inversion_set)

    @property
    def is_identity(self) -> bool:
        return self.mat == _identity_mat(self.rs.rank)

    def inverse(self) -> "WeylElement":
        return WeylElement(self.rs, self.inv_mat, self.mat, tuple(reversed(self.word)))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.rs is not other.rs and self.rs.cartan != other.rs.cartan:
            raise ValidationError("cannot compose elements of different groups")
        return WeylElement(
            self.rs,
            _mat_mul(self.mat, other.mat),
            _mat_mul(other.inv_mat, self.inv_mat),
            self.word + other.word,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return (
            self.rs.cartan == other.rs.cartan
            and self.inversion_set == other.inversion_set
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rs.cartan, self.inversion_set))
        return self._hash

    def __repr__(self) -> str:
        name = "*".join(f"s{i + 1}" for i in self.word) or "e"
        return f"<{name}>"


def act(w: WeylElement, alpha: Root) -> Root:
    """Image of a root under the element's lattice action."""
    return w.act(alpha)


def inversion_set(w: WeylElement) -> FrozenSet[Root]:
    """The set of positive roots made negative by the inverse action."""
    return w.inversion_set


class WeylGroup:
    """A fully enumerated Weyl group with canonical element order.

    Elements are ordered by (length, word); products looked up through
    the group come back canonical.
    """

    __slots__ = ("rs", "elements", "identity", "longest", "_by_mat")

    def __init__(self, rs: RootSystem, elements: Sequence[WeylElement]) -> None:
        self.rs = rs
        self.elements: Tuple[WeylElement, ...] = tuple(elements)
        self._by_mat: Dict[Matrix, WeylElement] = {w.mat: w for w in self.elements}
        self.identity = self._by_mat[_identity_mat(rs.rank)]
        self.longest = self._find_longest()

    def _find_longest(self) -> WeylElement:
        top = self.elements[-1]
        if top.inversion_set != frozenset(self.rs.positive_roots):
            raise IdentityCheckError(
                "last enumerated element is not the longest element"
            )
        if top.mat != top.inv_mat:
            raise IdentityCheckError("longest element is not an involution")
        return top

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, w: WeylElement) -> bool:
        return w.mat in self._by_mat

    def canonical(self, w: WeylElement) -> WeylElement:
        """The enumerated element with the same action (canonical word)."""
        try:
            return self._by_mat[w.mat]
        except KeyError:
            raise ValidationError("element does not belong to this group") from None

    def canonical_by_mat(self, mat: Matrix) -> WeylElement:
        try:
            return self._by_mat[mat]
        except KeyError:
            raise ValidationError("matrix is not a Weyl group action") from None

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._by_mat[_mat_mul(a.mat, b.mat)]

    def inverse(self, a: WeylElement) -> WeylElement:
        return self._by_mat[a.inv_mat]

    def simple(self, i: int) -> WeylElement:
        if not 0 <= i < self.rs.rank:
            raise ValidationError(f"simple-reflection index {i} out of range")
        return self._by_mat[simple_reflection_matrix(self.rs, i)]

    def reflection(self, gamma: Root) -> WeylElement:
        """The reflection along any root, as a canonical group element."""
        rs = self.rs
        if not rs.contains(gamma.coords):
            raise ValidationError(f"{gamma} is not a root of this system")
        n = rs.rank
        norm = rs.pairing(gamma, gamma)
        cols = []
        for j in range(n):
            k = 2 * rs.pairing(rs.simple(j), gamma) / norm
            if k.denominator != 1:
                raise IdentityCheckError("non-integer reflection coefficient")
            cols.append(
                tuple(
                    (1 if r == j else 0) - int(k) * gamma.coords[r] for r in range(n)
                )
            )
        mat = tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))
        return self.canonical_by_mat(mat)


def enumerate_weyl_group(rs: RootSystem, cap: int = DEFAULT_CAP) -> WeylGroup:
    """Breadth-first closure over simple reflections, deduplicated exactly.

    Raises :class:`CapExceededError` once more than ``cap`` elements have
    been found; the default cap keeps desk-scale types and refuses the
    enormous ones explicitly rather than truncating.
    """
    n = rs.rank
    gens = [simple_reflection_matrix(rs, i) for i in range(n)]
    identity = WeylElement(rs, _identity_mat(n), _identity_mat(n), ())
    by_mat: Dict[Matrix, WeylElement] = {identity.mat: identity}
    level = [identity]
    ordered = [identity]
    while level:
        nxt: Dict[Matrix, WeylElement] = {}
        for w in level:  # already in lex order of canonical words
            for i in range(n):
                mat = _mat_mul(w.mat, gens[i])
                if mat in by_mat or mat in nxt:
                    continue
                nxt[mat] = WeylElement(
                    rs, mat, _mat_mul(gens[i], w.inv_mat), w.word + (i,)
                )
        level = sorted(nxt.values(), key=lambda w: w.word)
        by_mat.update(nxt)
        ordered.extend(level)
        if len(by_mat) > cap:
            raise CapExceededError(
                f"Weyl group exceeds the enumeration cap of {cap} elements"
            )
    for w in ordered:  # group closure: every product of a generator is known
        for g in gens:
            if _mat_mul(w.mat, g) not in by_mat:
                raise IdentityCheckError("enumeration is not closed under generators")
    return WeylGroup(rs, ordered)


def is_symmetric_closed(rs: RootSystem, subset: FrozenSet[Root]) -> bool:
    """Whether a root subset is symmetric and closed under root addition."""
    coords = {r.coords for r in subset}
    for r in subset:
        if (-r).coords not in coords:
            return False
    for a in subset:
        for b in subset:
            s = tuple(x + y for x, y in zip(a.coords, b.coords))
            if any(s) and rs.contains(s) and s not in coords:
                return False
    return True


@dataclass(frozen=True)
class ParabolicCosets:
    """The Levi reflection subgroup and its minimal coset companions.

    ``levi`` is the subgroup generated by reflections along the black
    roots; ``reps`` are the elements whose inversion set avoids the black
    roots.  Every group element factors uniquely as levi * rep.
    """

    group: WeylGroup
    delta_black: FrozenSet[Root]
    levi: Tuple[WeylElement, ...]
    reps: Tuple[WeylElement, ...]

    @property
    def black_positive(self) -> FrozenSet[Root]:
        return frozenset(r for r in self.delta_black if r.is_positive)

    def factorize(self, w: WeylElement) -> Tuple[WeylElement, WeylElement]:
        """The unique (levi part, coset part) pair with product w.

        Uniqueness is certified by brute force over all candidate pairs,
        and the round trip is re-verified on every root.
        """
        group = self.group
        levi_mats = {t.mat: t for t in self.levi}
        found = []
        for sigma in self.reps:
            tau_mat = _mat_mul(w.mat, sigma.inv_mat)
            tau = levi_mats.get(tau_mat)
            if tau is not None:
                found.append((tau, sigma))
        if len(found) != 1:
            raise IdentityCheckError(
                "factorization through the coset set is not unique",
                {"word": w.word, "count": len(found)},
            )
        tau, sigma = found[0]
        for alpha in group.rs.all_roots:
            if tau.act(sigma.act(alpha)) != w.act(alpha):
                raise IdentityCheckError(
                    "factorization round trip failed", {"word": w.word}
                )
        return tau, sigma


def coset_sets(group: WeylGroup, delta_black: Iterable[Root]) -> ParabolicCosets:
    """Split the group along a symmetric closed root subset.

    The coset side is the inversion-set filter (elements whose inversion
    set avoids the black roots).  The Levi side is generated by the
    reflections along black roots; for black sets cut out by a dominant
    element this agrees with applying the same filter to inversion sets
    inside the black positives, but the generated subgroup stays correct
    for black sets in non-dominant position as well.
    """
    rs = group.rs
    black = frozenset(delta_black)
    for r in black:
        if not rs.contains(r.coords):
            raise ValidationError(f"{r} is not a root of this system")
    if not is_symmetric_closed(rs, black):
        raise ValidationError("black root set must be symmetric and closed")

    reps = tuple(
        w for w in group.elements if not (w.inversion_set & black)
    )

    gens = [group.reflection(g) for g in sorted(black) if g.is_positive]
    members: Dict[Matrix, WeylElement] = {group.identity.mat: group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for t in frontier:
            for g in gens:
                prod = group.mul(t, g)
                if prod.mat not in members:
                    members[prod.mat] = prod
                    nxt.append(prod)
        frontier = nxt
    levi = tuple(sorted(members.values(), key=lambda w: (len(w.word), w.word)))

    if len(levi) * len(reps) != len(group):
        raise IdentityCheckError(
            "coset counting identity |W| = |W1|*|W^1| failed",
            {"levi": len(levi), "reps": len(reps), "group": len(group)},
        )
    return ParabolicCosets(group=group, delta_black=black, levi=levi, reps=reps)


def factorize(
    group: WeylGroup, w: WeylElement, delta_black: Iterable[Root]
) -> Tuple[WeylElement, WeylElement]:
    """One-shot unique factorization; see :meth:`ParabolicCosets.factorize`."""
    return coset_sets(group, delta_black).factorize(w)
