"""Exact low-rank models: classifier, normalizer certificates, signatures.

Normalizer certificates are re-verified here by an independent float
computation of scale * g X g^-1, not by the module's own post-check.
"""

import random
from fractions import Fraction as Q

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ellflag import (
    EllipticElement,
    IdentityCheckError,
    ValidationError,
    build_root_system,
    enumerate_weyl_group,
    grade,
    sl2_classify,
    sl2_normalizer,
    su21_signature_table,
)
from ellflag.lowrank import (
    I_UNIT,
    ONE,
    REPRESENTATIVES,
    SU21_PARAMS,
    T_SU21,
    TAG_A,
    TAG_K,
    TAG_N,
    TAG_O2,
    ZERO,
    Mat,
    QC,
    _q_det,
    a2_weyl_action_matrices,
    apply_complex_structure,
    bracket,
    killing,
    rational_inertia,
    sample_sl2,
    sample_sl2_group_element,
    sl2_adT_eigenvalues,
    su21_adT_levels,
    su21_element,
    symplectic_pairing,
)

RATIONALS = st.fractions(min_value=-5, max_value=5, max_denominator=4)


# ---------------------------------------------------------------------------
# scalars and matrices


def test_qc_arithmetic():
    u = QC(Q(1), Q(2))
    v = QC(Q(3), Q(-1))
    assert u + v == QC(Q(4), Q(1))
    assert u * v == QC(Q(5), Q(5))
    assert -u == QC(Q(-1), Q(-2))
    assert u.conjugate() == QC(Q(1), Q(-2))
    assert (u * u.conjugate()).im == 0
    assert repr(QC(Q(1, 2), Q(-3))) == "(1/2-3i)"
    assert repr(I_UNIT) == "(0+1i)"
    assert ZERO.is_zero and not ONE.is_zero


def test_mat_basics():
    m = Mat([[1, 2], [3, 4]])
    assert (m @ m).rows == Mat([[7, 10], [15, 22]]).rows
    assert m.trace() == QC(Q(5))
    assert not m.is_traceless
    assert Mat.diagonal([1, -1]).is_traceless
    assert Mat([[0, 0], [0, 0]]).is_zero
    assert m.scale(Q(2)) == Mat([[2, 4], [6, 8]])
    with pytest.raises(ValidationError):
        Mat([[1, 2], [3]])
    with pytest.raises(ValidationError):
        m @ Mat([[1]])


def test_bracket_and_killing():
    x = Mat([[0, 1], [0, 0]])
    y = Mat([[0, 0], [1, 0]])
    assert bracket(x, y) == Mat.diagonal([1, -1])
    assert bracket(x, x).is_zero
    assert killing(T_SU21, T_SU21) == -12
    assert killing(x, y) == killing(y, x) == 4
    with pytest.raises(ValidationError):
        killing(Mat([[1, 0], [0, 0]]), x)
    with pytest.raises(ValidationError):
        killing(x, Mat([[ZERO, ZERO], [I_UNIT, ZERO]]))


@settings(max_examples=50, deadline=None)
@given(
    entries=st.lists(RATIONALS, min_size=9, max_size=9),
    entries2=st.lists(RATIONALS, min_size=9, max_size=9),
    entries3=st.lists(RATIONALS, min_size=9, max_size=9),
)
def test_jacobi_identity(entries, entries2, entries3):
    def mk(e):
        return Mat([e[0:3], e[3:6], e[6:9]])

    x, y, z = mk(entries), mk(entries2), mk(entries3)
    total = (
        bracket(x, bracket(y, z))
        + bracket(y, bracket(z, x))
        + bracket(z, bracket(x, y))
    )
    assert total.is_zero


# ---------------------------------------------------------------------------
# rank one: classifier and normalizer


def test_classify_representatives():
    assert sl2_classify(0, -1, 1).tag == TAG_K
    assert sl2_classify(1, 0, 0).tag == TAG_A
    assert sl2_classify(0, 1, 0).tag == TAG_N
    assert sl2_classify(0, 0, 0).tag == TAG_O2
    for tag, rep in REPRESENTATIVES.items():
        a, b, c = rep[0][0], rep[0][1], rep[1][0]
        assert sl2_classify(a, b, c).tag == tag


@settings(max_examples=100, deadline=None)
@given(a=RATIONALS, b=RATIONALS, c=RATIONALS)
def test_classify_by_det_sign(a, b, c):
    det = -a * a - b * c
    tag = sl2_classify(a, b, c).tag
    if det > 0:
        assert tag == TAG_K
    elif det < 0:
        assert tag == TAG_A
    elif (a, b, c) == (0, 0, 0):
        assert tag == TAG_O2
    else:
        assert tag == TAG_N


def test_normalizer_fixes_representatives():
    lam, g = sl2_normalizer(0, -1, 1)
    assert (lam, g) == (Q(1), ((Q(1), Q(0)), (Q(0), Q(1))))
    assert isinstance(lam, Q)
    lam, g = sl2_normalizer(0, 2, 0)
    assert (lam, g) == (Q(1, 2), ((Q(1), Q(0)), (Q(0), Q(1))))


def test_normalizer_rejects_zero():
    with pytest.raises(ValidationError):
        sl2_normalizer(0, 0, 0)


def _check_certificate(a, b, c):
    """Independent float verification of the returned certificate."""
    lam, g = sl2_normalizer(a, b, c)
    rep = REPRESENTATIVES[sl2_classify(a, b, c).tag]
    gf = [[float(e) for e in row] for row in g]
    det = gf[0][0] * gf[1][1] - gf[0][1] * gf[1][0]
    assert abs(det - 1) <= 1e-9
    x = [[float(a), float(b)], [float(c), float(-a)]]
    gi = [[gf[1][1], -gf[0][1]], [-gf[1][0], gf[0][0]]]
    gx = [
        [sum(gf[i][k] * x[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    img = [
        [sum(gx[i][k] * gi[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    for i in range(2):
        for j in range(2):
            assert abs(float(lam) * img[i][j] - float(rep[i][j])) <= 1e-9


def test_normalizer_samples():
    rng = random.Random(20240817)
    for tag in (TAG_K, TAG_A, TAG_N):
        for _ in range(60):
            a, b, c = sample_sl2(rng, tag)
            assert sl2_classify(a, b, c).tag == tag
            _check_certificate(a, b, c)


def test_normalizer_split_with_zero_corner():
    # exercises the shear branch: det < 0 but c = 0
    for a, b in [(Q(1), Q(0)), (Q(2), Q(3)), (Q(-1), Q(5)), (Q(1, 2), Q(1))]:
        assert sl2_classify(a, b, 0).tag == TAG_A
        _check_certificate(a, b, Q(0))


def test_class_invariant_under_rescaled_conjugation():
    rng = random.Random(7)
    for _ in range(200):
        tag = (TAG_K, TAG_A, TAG_N)[rng.randrange(3)]
        a, b, c = sample_sl2(rng, tag)
        g = sample_sl2_group_element(rng)
        lam = Q(0)
        while lam == 0:
            lam = Q(rng.randrange(-6, 7), rng.randrange(1, 4))
        gi = ((g[1][1], -g[0][1]), (-g[1][0], g[0][0]))
        x = ((a, b), (c, -a))
        gx = tuple(
            tuple(sum(g[i][k] * x[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )
        y = tuple(
            tuple(lam * sum(gx[i][k] * gi[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )
        assert sl2_classify(y[0][0], y[0][1], y[1][0]).tag == tag


# ---------------------------------------------------------------------------
# rank two: model matrices, structure maps, signatures


def _dagger(m: Mat) -> Mat:
    n = m.size
    return Mat([[m.rows[j][i].conjugate() for j in range(n)] for i in range(n)])


def test_su21_element_shape():
    m = su21_element(1, 2, 3, 4, 5, 6, 7, 8)
    assert m.is_traceless
    # skew with respect to the signature (1,1,-1) hermitian form
    j = Mat.diagonal([1, 1, -1])
    assert ((_dagger(m) @ j) + (j @ m)).is_zero
    assert su21_element(1, 0, 0, 0, 0, 0, 0, 0) + su21_element(
        0, 1, 0, 0, 0, 0, 0, 0
    ) == Mat.diagonal([I_UNIT, I_UNIT, QC(Q(0), Q(-2))])
    assert T_SU21 == su21_element(1, 0, 0, 0, 0, 0, 0, 0)


def test_structure_map_images():
    params = (Q(2), Q(3), Q(5), Q(7), Q(11), Q(13))
    images = {
        1: (-3, 2, -7, 5, -13, 11),
        2: (3, -2, 7, -5, 13, -11),
        3: (-3, 2, -7, 5, 13, -11),
        4: (3, -2, 7, -5, -13, 11),
        5: (-3, 2, 7, -5, 13, -11),
        6: (3, -2, -7, 5, -13, 11),
    }
    for a, want in images.items():
        assert apply_complex_structure(a, params) == tuple(Q(v) for v in want)
    with pytest.raises(ValidationError):
        apply_complex_structure(0, params)
    with pytest.raises(ValidationError):
        apply_complex_structure(7, params)


@settings(max_examples=30, deadline=None)
@given(params=st.lists(RATIONALS, min_size=6, max_size=6))
def test_structure_maps_square_to_minus_identity(params):
    for a in range(1, 7):
        twice = apply_complex_structure(a, apply_complex_structure(a, params))
        assert twice == tuple(-p for p in params)


def test_symplectic_spot_values():
    def vec(name):
        k = SU21_PARAMS.index(name)
        vals = [0] * 6
        vals[k] = 1
        return su21_element(0, 0, *vals)

    assert symplectic_pairing(vec("b"), vec("c")) == -12
    assert symplectic_pairing(vec("c"), vec("b")) == 12
    assert symplectic_pairing(vec("x"), vec("y")) == 24
    assert symplectic_pairing(vec("b"), vec("x")) == 0


def test_signature_table():
    report = su21_signature_table()
    assert [(m.negatives, m.positives) for m in report.metrics] == [
        (2, 4),
        (4, 2),
        (4, 2),
        (2, 4),
        (6, 0),
        (0, 6),
    ]
    assert [m.index for m in report.metrics] == [1, 2, 3, 4, 5, 6]
    g1 = report.metrics[0].gram
    g6 = report.metrics[5].gram
    assert g1[0][0] == -12  # metric 1 on the b-direction
    assert g6[0][0] == 12
    assert g1[2][2] == 24  # metric 1 on the x-direction
    assert report.omega_gram[0][1] == -12
    for m in report.metrics:
        assert all(m.gram[u][v] == m.gram[v][u] for u in range(6) for v in range(6))
        assert m.negatives + m.positives == 6
    w = report.omega_gram
    assert all(w[u][v] == -w[v][u] for u in range(6) for v in range(6))
    assert _q_det([list(r) for r in w]) != 0


# ---------------------------------------------------------------------------
# inertia and determinant utilities


def test_rational_inertia_examples():
    assert rational_inertia([[Q(1), Q(0), Q(0)], [Q(0), Q(-2), Q(0)], [Q(0), Q(0), Q(3)]]) == (1, 2, 0)
    assert rational_inertia([[Q(0), Q(1)], [Q(1), Q(0)]]) == (1, 1, 0)
    assert rational_inertia([[Q(0)] * 3 for _ in range(3)]) == (0, 0, 3)
    assert rational_inertia([[Q(0), Q(1), Q(0)], [Q(1), Q(0), Q(0)], [Q(0), Q(0), Q(0)]]) == (1, 1, 1)
    with pytest.raises(ValidationError):
        rational_inertia([[Q(0), Q(1)], [Q(2), Q(0)]])


@settings(max_examples=40, deadline=None)
@given(
    upper=st.lists(
        st.fractions(min_value=-3, max_value=3, max_denominator=2),
        min_size=6,
        max_size=6,
    ),
    flat=st.lists(st.integers(-2, 2), min_size=9, max_size=9),
)
def test_inertia_congruence_invariant(upper, flat):
    n = 3
    sym = [[Q(0)] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i, n):
            sym[i][j] = sym[j][i] = next(it)
    g = [[Q(v) for v in flat[i * n : (i + 1) * n]] for i in range(n)]
    assume(_q_det(g) != 0)
    gtmg = [
        [
            sum(g[k][i] * sym[k][l] * g[l][j] for k in range(n) for l in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    assert rational_inertia(gtmg) == rational_inertia(sym)


def test_q_det():
    assert _q_det([[Q(2), Q(0)], [Q(0), Q(3)]]) == 6
    assert _q_det([[Q(0), Q(1)], [Q(1), Q(0)]]) == -1
    assert _q_det([[Q(1), Q(2)], [Q(2), Q(4)]]) == 0


# ---------------------------------------------------------------------------
# ad T oracles against the combinatorial grading


def test_sl2_adT_eigenvalues():
    assert sl2_adT_eigenvalues() == (
        QC(Q(0), Q(2)),
        QC(Q(0), Q(-2)),
        QC(Q(0), Q(0)),
    )


@pytest.mark.parametrize("c1,c2", [(1, 0), (0, 1), (2, 3), (1, -2), (Q(1, 2), Q(1, 3))])
def test_su21_adT_levels(c1, c2):
    c1, c2 = Q(c1), Q(c2)
    levels = su21_adT_levels(c1, c2)
    want = {
        (1, 0): c1,
        (0, 1): c2,
        (1, 1): c1 + c2,
        (-1, 0): -c1,
        (0, -1): -c2,
        (-1, -1): -c1 - c2,
    }
    assert levels == want


def test_su21_adT_levels_match_a2_grading():
    rs = build_root_system("A2")
    for coeffs in [(1, 0), (2, -1), (1, 1)]:
        grading = grade(rs, EllipticElement.of(coeffs))
        levels = su21_adT_levels(*coeffs)
        for alpha in rs.all_roots:
            assert grading.level_of(alpha) == levels[alpha.coords]


def test_a2_weyl_action_matrices_match_enumeration():
    rs = build_root_system("A2")
    group = enumerate_weyl_group(rs)
    assert a2_weyl_action_matrices() == frozenset(w.mat for w in group.elements)
