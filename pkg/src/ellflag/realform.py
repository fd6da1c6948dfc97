"""Inner involutions, compact-root parity, and the section-finiteness test.

An inner involution is an integer coweight Z acting on each root space
by the sign (-1)^(alpha(Z)); even parity means the root space sits in
the maximal compact part.  The finiteness criterion searches the Weyl
orbit of the fundamental system for one that is nonnegative on the
elliptic element and whose active simple roots are all compact, with an
early rejection when no active root at all is compact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from .elliptic import EllipticElement
from .errors import IdentityCheckError, ValidationError
from .rootsys import Root, RootSystem
from .weyl import DEFAULT_CAP, WeylElement, WeylGroup, enumerate_weyl_group, is_symmetric_closed

HERMITIAN_FAST_FAIL = "hermitian_fast_fail"
EXHAUSTED_SEARCH = "exhausted_search"


@dataclass(frozen=True)
class InnerInvolution:
    """Integer coweight defining the involution; parity is alpha(Z) mod 2."""

    coweight: Tuple[int, ...]

    @staticmethod
    def of(coweight: Sequence[int]) -> "InnerInvolution":
        return InnerInvolution(tuple(int(z) for z in coweight))

    def parity(self, alpha: Root) -> int:
        if len(self.coweight) != len(alpha.coords):
            raise ValidationError("involution coweight has the wrong length")
        return sum(z * m for z, m in zip(self.coweight, alpha.coords)) % 2


@dataclass(frozen=True, eq=False)
class CompactRootData:
    """Partition of the roots into compact (even) and noncompact (odd)."""

    compact: FrozenSet[Root]
    noncompact: FrozenSet[Root]

    def is_compact(self, alpha: Root) -> bool:
        return alpha in self.compact


def compact_roots(rs: RootSystem, inv: InnerInvolution) -> CompactRootData:
    """Split the roots by the involution's parity on each root space."""
    if len(inv.coweight) != rs.rank:
        raise ValidationError(
            f"involution coweight has length {len(inv.coweight)}, expected {rs.rank}"
        )
    compact = frozenset(a for a in rs.all_roots if inv.parity(a) == 0)
    noncompact = frozenset(rs.all_roots) - compact
    if not is_symmetric_closed(rs, compact):
        raise IdentityCheckError("compact root set is not symmetric and closed")
    return CompactRootData(compact=compact, noncompact=noncompact)


@dataclass(frozen=True, eq=False)
class FundamentalSystem:
    """A Weyl image of the standard fundamental system.

    ``roots[i]`` is the image of the i-th simple root under the
    conjugating element, so the listing is deterministic.
    """

    roots: Tuple[Root, ...]
    conjugator: WeylElement

    @property
    def as_set(self) -> FrozenSet[Root]:
        return frozenset(self.roots)


def enumerate_fundamental_systems(
    rs: RootSystem, cap: int = DEFAULT_CAP, group: Optional[WeylGroup] = None
) -> Tuple[FundamentalSystem, ...]:
    """All Weyl images of the fundamental system, in canonical group order.

    The search space for the finiteness criterion; one system per group
    element, all distinct.
    """
    if group is None:
        group = enumerate_weyl_group(rs, cap)
    simple = rs.simple_roots
    systems = tuple(
        FundamentalSystem(roots=tuple(w.act(a) for a in simple), conjugator=w)
        for w in group.elements
    )
    if len({s.as_set for s in systems}) != len(group):
        raise IdentityCheckError("fundamental systems are not pairwise distinct")
    return systems


def check_s1(system: Iterable[Root], elem: EllipticElement) -> bool:
    """Whether every root of the system is nonnegative on the element."""
    return all(
        sum(c * m for c, m in zip(elem.coeffs, a.coords)) >= 0 for a in system
    )


def check_s2(
    system: Iterable[Root], elem: EllipticElement, k: CompactRootData
) -> bool:
    """Whether every system root with nonzero value is compact."""
    for a in system:
        value = sum(c * m for c, m in zip(elem.coeffs, a.coords))
        if value != 0 and not k.is_compact(a):
            return False
    return True


@dataclass(frozen=True)
class WitnessRoot:
    """One system root with its elliptic value and parity annotation."""

    root: Root
    value: Q
    compact: bool


@dataclass(frozen=True, eq=False)
class CriterionVerdict:
    """Outcome of the finiteness test, with a checked witness if it holds."""

    holds: bool
    witness: Optional[FundamentalSystem]
    witness_roots: Tuple[WitnessRoot, ...]
    failure_reason: Optional[str]
    annotation: Optional[str]


# Known orbit identifications, reported as free text only on exact input
# match: (Cartan entries, involution coweight, element coordinates) ->
# the Lie algebra of holomorphic vector fields on the orbit.
_ORBIT_ANNOTATIONS: Dict[Tuple, str] = {
    (((2, -1), (-3, 2)), (0, 1), (Q(1), Q(-2))): (
        "holomorphic vector fields on this orbit form the complex simple "
        "Lie algebra of type G2"
    ),
    (((2, -1), (-3, 2)), (0, 1), (Q(1), Q(-3))): (
        "holomorphic vector fields on this orbit form so(7, C)"
    ),
    (((2, -1), (-1, 2)), (0, 1), (Q(1), Q(0))): (
        "holomorphic vector fields on this orbit form sl(3, C)"
    ),
}


def _annotate(
    rs: RootSystem, elem: EllipticElement, inv: InnerInvolution
) -> Optional[str]:
    return _ORBIT_ANNOTATIONS.get((rs.cartan.entries, inv.coweight, elem.coeffs))


def _witness_roots(
    system: FundamentalSystem, elem: EllipticElement, k: CompactRootData
) -> Tuple[WitnessRoot, ...]:
    return tuple(
        WitnessRoot(
            root=a,
            value=sum(c * m for c, m in zip(elem.coeffs, a.coords)),
            compact=k.is_compact(a),
        )
        for a in system.roots
    )


def criterion_S(
    rs: RootSystem,
    elem: EllipticElement,
    inv: InnerInvolution,
    cap: int = DEFAULT_CAP,
    group: Optional[WeylGroup] = None,
) -> CriterionVerdict:
    """Decide whether some fundamental system passes both conditions.

    Searches the Weyl orbit in canonical order, so the returned witness
    is the one with the least (conjugator length, conjugator word).  If
    no root with nonzero elliptic value is compact the search cannot
    succeed and is refused immediately with the fast-fail reason.
    """
    if len(elem.coeffs) != rs.rank:
        raise ValidationError(
            f"elliptic element has length {len(elem.coeffs)}, expected {rs.rank}"
        )
    k = compact_roots(rs, inv)
    annotation = _annotate(rs, elem, inv)

    if elem.is_zero:
        if group is None:
            group = enumerate_weyl_group(rs, cap)
        system = FundamentalSystem(roots=rs.simple_roots, conjugator=group.identity)
        return CriterionVerdict(
            holds=True,
            witness=system,
            witness_roots=_witness_roots(system, elem, k),
            failure_reason=None,
            annotation=annotation,
        )

    active_compact = [
        a
        for a in rs.all_roots
        if rs.evaluate_on_coweight(a, elem.coeffs) != 0 and k.is_compact(a)
    ]
    if not active_compact:
        return CriterionVerdict(
            holds=False,
            witness=None,
            witness_roots=(),
            failure_reason=HERMITIAN_FAST_FAIL,
            annotation=annotation,
        )

    for system in enumerate_fundamental_systems(rs, cap, group):
        if check_s1(system.roots, elem) and check_s2(system.roots, elem, k):
            return CriterionVerdict(
                holds=True,
                witness=system,
                witness_roots=_witness_roots(system, elem, k),
                failure_reason=None,
                annotation=annotation,
            )
    return CriterionVerdict(
        holds=False,
        witness=None,
        witness_roots=(),
        failure_reason=EXHAUSTED_SEARCH,
        annotation=annotation,
    )


def all_passing_systems(
    rs: RootSystem,
    elem: EllipticElement,
    inv: InnerInvolution,
    cap: int = DEFAULT_CAP,
    group: Optional[WeylGroup] = None,
) -> Tuple[FundamentalSystem, ...]:
    """Every fundamental system passing both conditions, in search order."""
    k = compact_roots(rs, inv)
    return tuple(
        s
        for s in enumerate_fundamental_systems(rs, cap, group)
        if check_s1(s.roots, elem) and check_s2(s.roots, elem, k)
    )
