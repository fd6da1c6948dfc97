"""Generalized Bruhat stratification of the flag manifold of a grading.

Each coset representative sigma contributes one cell of codimension
n = length(sigma); its unipotent factor is spanned by the gamma set, of
size r - n.  The stratification is always computed in the dominant frame
(reflecting the elliptic element into the dominant chamber first and
recording the conjugator): the cell bookkeeping, in particular which
simple reflections contribute codimension-one cells, depends on the
fundamental system being adapted to the grading.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from .elliptic import EllipticElement, GradedDecomposition, dominant_form, grade
from .errors import IdentityCheckError, ValidationError
from .rootsys import Root, RootSystem
from .weyl import (
    DEFAULT_CAP,
    ParabolicCosets,
    WeylElement,
    WeylGroup,
    coset_sets,
    enumerate_weyl_group,
)


@dataclass(frozen=True)
class BruhatCell:
    """One stratum: coset representative, gamma set, and dimensions."""

    sigma: WeylElement
    gamma_set: FrozenSet[Root]
    n: int
    cell_dim: int
    u_dim: int


@dataclass(frozen=True, eq=False)
class Stratification:
    """All cells of a grading, with the dense codimension <= 1 sublist.

    ``grading`` is the dominant-frame grading actually stratified;
    ``original_grading`` keeps the caller's input and
    ``frame_conjugator`` is the Weyl element w with
    dominant element = w . original element (identity when the input was
    already dominant).
    """

    grading: GradedDecomposition
    original_grading: GradedDecomposition
    frame_conjugator: WeylElement
    group: WeylGroup
    cosets: ParabolicCosets
    cells: Tuple[BruhatCell, ...]
    dense_O: Tuple[BruhatCell, ...]
    histogram: Dict[int, int]


def _require_coset_rep(sigma: WeylElement, black: FrozenSet[Root]) -> None:
    if sigma.inversion_set & black:
        raise ValidationError(
            "element is not a coset representative: its inversion set "
            "meets the black roots"
        )


def gamma_set(
    sigma: WeylElement,
    grading: GradedDecomposition,
    longest: Optional[WeylElement] = None,
) -> FrozenSet[Root]:
    """Roots of the cell's unipotent factor attached to a representative.

    Defined as the part of the inversion set of sigma^-1 * longest that
    sigma maps into the non-black positives.  When ``longest`` is not
    supplied, that inversion set is obtained as the complement of the
    inversion set of sigma^-1 (the two agree; the identity itself is
    exercised by :func:`counting_identities`).
    """
    rs = grading.rs
    black = grading.delta_black
    _require_coset_rep(sigma, black)
    if longest is not None:
        phi_top = (sigma.inverse() * longest).inversion_set
    else:
        phi_top = frozenset(rs.positive_roots) - sigma.inverse().inversion_set
    target = grading.positive_complement
    gamma = frozenset(g for g in phi_top if sigma.act(g) in target)

    n = sigma.length
    if len(gamma) != len(target) - n:
        raise IdentityCheckError(
            "gamma set size differs from r - n",
            {"word": sigma.word, "gamma": len(gamma), "r": len(target), "n": n},
        )
    image = frozenset(sigma.act(g) for g in gamma)
    if image != target - sigma.inversion_set:
        raise IdentityCheckError(
            "gamma set image is not the non-black positives minus the inversion set",
            {"word": sigma.word},
        )
    return gamma


def stratify(
    rs: RootSystem, grading: GradedDecomposition, cap: int = DEFAULT_CAP
) -> Stratification:
    """Build every cell of the stratification, in (codimension, word) order."""
    original = grading
    conjugator: WeylElement
    if grading.element.is_dominant:
        dominant = grading
        group = enumerate_weyl_group(rs, cap)
        conjugator = group.identity
    else:
        w, elem = dominant_form(rs, grading.element)
        dominant = grade(rs, elem)
        group = enumerate_weyl_group(rs, cap)
        conjugator = group.canonical(w)

    cosets = coset_sets(group, dominant.delta_black)
    dim_group = dominant.dim_group
    r = dominant.r
    cells = []
    for sigma in sorted(cosets.reps, key=lambda s: (s.length, s.word)):
        gamma = gamma_set(sigma, dominant, group.longest)
        n = sigma.length
        cells.append(
            BruhatCell(
                sigma=sigma,
                gamma_set=gamma,
                n=n,
                cell_dim=dim_group - n,
                u_dim=r - n,
            )
        )

    if len(cells) != len(cosets.reps):
        raise IdentityCheckError("cell count differs from the coset count")
    zero_cells = [c for c in cells if c.n == 0]
    if len(zero_cells) != 1 or not zero_cells[0].sigma.is_identity:
        raise IdentityCheckError("expected exactly the identity cell at n = 0")
    one_cells = {c.sigma for c in cells if c.n == 1}
    expected_one = {
        group.simple(i)
        for i in range(rs.rank)
        if rs.simple(i) not in dominant.delta_black
    }
    if one_cells != expected_one:
        raise IdentityCheckError(
            "n = 1 cells do not match the simple reflections outside the black set",
            {"got": sorted(c.word for c in one_cells)},
        )

    histogram: Dict[int, int] = {}
    for c in cells:
        histogram[c.n] = histogram.get(c.n, 0) + 1
    return Stratification(
        grading=dominant,
        original_grading=original,
        frame_conjugator=conjugator,
        group=group,
        cosets=cosets,
        cells=tuple(cells),
        dense_O=tuple(c for c in cells if c.n <= 1),
        histogram=dict(sorted(histogram.items())),
    )


@dataclass(frozen=True)
class CountingReport:
    """Outcome of the per-representative counting identities."""

    sigma_word: Tuple[int, ...]
    n: int
    r: int
    gamma_size: int
    black_positive_size: int
    partition_ok: bool
    complement_ok: bool
    dimension_ok: bool
    failures: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def counting_identities(
    sigma: WeylElement,
    grading: GradedDecomposition,
    longest: Optional[WeylElement] = None,
    cap: int = DEFAULT_CAP,
) -> CountingReport:
    """Verify the cell-counting identities for one representative.

    (a) the top inversion set splits as gamma set plus the pullback of
    the black positives; (b) inversion sets of sigma^-1 * longest and
    sigma^-1 partition the positives by count; (c) the dimension
    bookkeeping (r - n) + |black positives| + dim(Borel) = dim(group) - n.
    All three are recomputed from scratch here, with the top inversion
    set taken directly from the composed element.
    """
    rs = grading.rs
    _require_coset_rep(sigma, grading.delta_black)
    if longest is None:
        longest = enumerate_weyl_group(rs, cap).longest

    sigma_inv = sigma.inverse()
    phi_top = (sigma_inv * longest).inversion_set
    phi_inv = sigma_inv.inversion_set
    gamma = gamma_set(sigma, grading, longest)
    black_pos = grading.black_positive
    pullback = frozenset(sigma.act_inverse(g) for g in black_pos)
    n = sigma.length
    r = grading.r

    failures = []
    partition_ok = gamma | pullback == phi_top and not (gamma & pullback)
    if not partition_ok:
        failures.append(
            "top inversion set is not the disjoint union of the gamma set "
            f"and the black pullback (sigma word {sigma.word})"
        )
    complement_ok = len(phi_top) + len(phi_inv) == len(rs.positive_roots)
    if not complement_ok:
        failures.append(
            "inversion sets of the top composite and the inverse do not "
            f"partition the positives by count (sigma word {sigma.word})"
        )
    dim_borel = rs.rank + len(rs.positive_roots)
    dimension_ok = (r - n) + len(black_pos) + dim_borel == grading.dim_group - n
    if not dimension_ok:
        failures.append(
            f"dimension bookkeeping failed (sigma word {sigma.word}): "
            f"({r}-{n}) + {len(black_pos)} + {dim_borel} != {grading.dim_group} - {n}"
        )
    return CountingReport(
        sigma_word=sigma.word,
        n=n,
        r=r,
        gamma_size=len(gamma),
        black_positive_size=len(black_pos),
        partition_ok=partition_ok,
        complement_ok=complement_ok,
        dimension_ok=dimension_ok,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class CodimReport:
    """Histogram of cell codimensions; no closure-order claims."""

    histogram: Dict[int, int]
    unique_minimum: bool
    max_n: int

    @property
    def ok(self) -> bool:
        return self.unique_minimum


def closure_codim_consistency(strat: Stratification) -> CodimReport:
    """Summarize codimensions: the histogram and the unique n = 0 cell.

    Which cells bound which is a topological fact outside this toolkit,
    so only the histogram is reported; no gap or adjacency claims.
    """
    hist = dict(sorted(strat.histogram.items()))
    return CodimReport(
        histogram=hist,
        unique_minimum=hist.get(0, 0) == 1,
        max_n=max(hist) if hist else 0,
    )
