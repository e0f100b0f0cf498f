import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjortho.admissible import AdmissibleSpec, discretize_symmetrized
from bjortho.operators import (
    LinearOperator,
    Side,
    ZeroSeminormError,
    bhatia_semrl_orthogonal,
    induced_seminorm,
    op_orthogonal_characterization,
    op_orthogonal_definition,
    sain_orthogonal,
    seminorm_cone_membership,
    spectral_operator_norm,
    top_singular_subspace,
    witness_functional,
)
from bjortho.spaces import (
    CoordinateAbs,
    DimensionError,
    Euclidean,
    LinearImage,
    Lp,
    SemiNormFamily,
    eval_seminorm,
)

from conftest import HEXAGON, vectors

L2F = SemiNormFamily([Euclidean()])
COORDS = SemiNormFamily([CoordinateAbs(0), CoordinateAbs(1)])
CIRCLE = discretize_symmetrized(AdmissibleSpec(), 0.01, 2)
COARSE = discretize_symmetrized(AdmissibleSpec(), 0.05, 2)
I2 = np.eye(2)
ROT = np.array([[0.0, -1.0], [1.0, 0.0]])
GOLDEN = (1 + math.sqrt(5)) / 2


# -- induced semi-norm ------------------------------------------------------------


def test_identity_attains_everywhere():
    res = induced_seminorm(I2, L2F, CIRCLE)
    assert res.P == pytest.approx(1.0, abs=1e-12)
    assert len(res.points) >= len(CIRCLE)
    assert res.indices == [0]


def test_diagonal_attains_on_first_axis():
    res = induced_seminorm(np.diag([2.0, 1.0]), L2F, CIRCLE)
    assert res.P == pytest.approx(2.0, abs=1e-12)
    assert all(abs(a[0]) > 0.999 for a in res.points)


def test_coordinate_family_attainment():
    res = induced_seminorm(I2, COORDS, CIRCLE)
    assert res.P == pytest.approx(1.0, abs=1e-12)
    assert res.indices == [0, 1]
    for a, i in res.attainment:
        assert abs(abs(a[i]) - 1.0) < 1e-5


def test_attainment_is_never_empty_even_with_zero_band():
    rng = np.random.default_rng(4)
    for _ in range(20):
        res = induced_seminorm(rng.uniform(-1, 1, (2, 2)), COORDS, COARSE, tol_band=0.0)
        assert res.attainment and res.indices


def test_induced_seminorm_json_and_dimension_check():
    res = induced_seminorm(np.diag([2.0, 1.0]), L2F, COARSE)
    js = res.to_json()
    assert js["P"] == res.P and len(js["attainment"]) == len(res.attainment)
    with pytest.raises(DimensionError):
        induced_seminorm(np.ones((2, 3)), L2F, COARSE)


@pytest.mark.parametrize(
    "T, expected",
    [(np.diag([2.0, 1.0]), 2.0), (ROT, 1.0), (np.array([[1.0, 1.0], [0.0, 1.0]]), GOLDEN), (np.zeros((2, 2)), 0.0)],
)
def test_spectral_norm_examples(T, expected):
    assert spectral_operator_norm(T) == pytest.approx(expected, rel=1e-10, abs=1e-15)


def test_spectral_norm_matches_sampled_p():
    T = np.array([[1.0, 1.0], [0.0, 1.0]])
    assert induced_seminorm(T, L2F, CIRCLE).P == pytest.approx(spectral_operator_norm(T), abs=1e-4)


def test_spectral_norm_matches_svd():
    rng = np.random.default_rng(6)
    for _ in range(30):
        T = rng.normal(size=(3, 3))
        assert spectral_operator_norm(T) == pytest.approx(np.linalg.norm(T, 2), rel=1e-6)


@pytest.mark.parametrize("mesh", [0.05, 0.01])
def test_euclidean_consistency_bound(mesh):
    sample = discretize_symmetrized(AdmissibleSpec(), mesh, 3)
    rng = np.random.default_rng(12)
    for _ in range(10):
        T = rng.uniform(-1, 1, (3, 3))
        sigma = spectral_operator_norm(T)
        assert abs(induced_seminorm(T, L2F, sample, refine=False).P - sigma) <= 5 * mesh * sigma


def test_refinement_beats_the_raw_sample():
    sample = discretize_symmetrized(AdmissibleSpec(), 0.05, 3)
    T = np.random.default_rng(13).uniform(-1, 1, (3, 3))
    sigma = spectral_operator_norm(T)
    raw = abs(induced_seminorm(T, L2F, sample, refine=False).P - sigma)
    refined = abs(induced_seminorm(T, L2F, sample, refine=True).P - sigma)
    assert refined <= 1e-10 * sigma < raw


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1), st.floats(-10, 10).filter(lambda t: abs(t) > 1e-3))
def test_p_is_a_seminorm_on_operators(seed, t):
    rng = np.random.default_rng(seed)
    T, S = rng.uniform(-1, 1, (2, 2)), rng.uniform(-1, 1, (2, 2))
    fam = SemiNormFamily([Euclidean(), CoordinateAbs(1)])

    def P(M):
        return induced_seminorm(M, fam, COARSE, refine=False).P

    assert P(T + S) <= P(T) + P(S) + 1e-9
    assert P(t * T) == pytest.approx(abs(t) * P(T), rel=1e-12)


# -- cones and witnesses ------------------------------------------------------------


@pytest.mark.parametrize(
    "p, u, v, plus, minus",
    [
        (CoordinateAbs(0), (1.0, 0.0), (0.0, 5.0), True, True),
        (Euclidean(), (1.0, 0.0), (1.0, 0.0), True, False),
        (Euclidean(), (1.0, 0.0), (0.0, 1.0), True, True),
    ],
)
def test_seminorm_cone_examples(p, u, v, plus, minus):
    a, b = seminorm_cone_membership(u, v, p)
    assert (a.yes, b.yes) == (plus, minus)
    assert not (a.indeterminate or b.indeterminate)


def test_seminorm_cone_zero_conventions_and_hypothesis():
    a, b = seminorm_cone_membership((1.0, 2.0), (0.0, 0.0), CoordinateAbs(0))
    assert a.yes and b.yes
    with pytest.raises(ZeroSeminormError):
        seminorm_cone_membership((0.0, 1.0), (1.0, 0.0), CoordinateAbs(0))


def test_witness_examples():
    w = witness_functional((1.0, 0.0), (0.0, 1.0), Euclidean(), Side.OPLUS)
    assert w.certified and list(w.f.coords) == pytest.approx([1.0, 0.0]) and w.pairing == 0.0
    w = witness_functional((1.0, 0.0), (1.0, 1.0), Euclidean(), Side.OPLUS)
    assert w.certified and w.pairing == pytest.approx(1.0)
    assert witness_functional((1.0, 0.0), (1.0, 1.0), Euclidean(), Side.OMINUS) is None
    a, b = seminorm_cone_membership((1.0, 0.0), (1.0, 1.0), Euclidean())
    assert a.yes and b.no


def test_witness_for_linear_image_and_json():
    p = LinearImage([[1.0, -1.0]], Euclidean())
    w = witness_functional((0.7, 0.2), (1.0, 1.0), p, "Oplus")
    assert w.certified
    assert abs(w.pairing) < 1e-15
    assert w.to_json()["f"] == pytest.approx([1.0, -1.0])


CLOSED_FORM = [Euclidean(), Lp(1.0), Lp(math.inf), Lp(3.0), HEXAGON, CoordinateAbs(0), LinearImage([[1.0, 2.0]], Lp(1.0))]


@pytest.mark.parametrize("p", CLOSED_FORM, ids=repr)
@given(u=vectors(), v=vectors())
def test_cone_side_matches_witness_side(p, u, v):
    if eval_seminorm(p, u) < 1e-6:
        return
    cones = seminorm_cone_membership(u, v, p)
    for side, cone in zip((Side.OPLUS, Side.OMINUS), cones):
        if cone.indeterminate:
            continue
        w = witness_functional(u, v, p, side)
        assert cone.yes == (w is not None and w.certified)


# -- operator routes --------------------------------------------------------------------


@pytest.mark.parametrize(
    "T, A, verdict",
    [
        (np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), True),
        (I2, I2, False),
        (I2, ROT, True),
    ],
)
def test_definition_examples(T, A, verdict):
    assert op_orthogonal_definition(T, A, L2F, CIRCLE).yes is verdict


def test_rotation_orthogonality_matches_spectral_grid():
    # singular values of I + λ R are sqrt(1 + λ^2)
    lams = np.linspace(-3, 3, 601)
    assert min(spectral_operator_norm(I2 + t * ROT) for t in lams) == pytest.approx(1.0, abs=1e-12)


def test_definition_with_null_direction_and_zero_operator():
    assert op_orthogonal_definition(I2, np.zeros((2, 2)), L2F, COARSE).yes
    with pytest.raises(ZeroSeminormError):
        op_orthogonal_definition(np.zeros((2, 2)), I2, L2F, COARSE)
    with pytest.raises(ZeroSeminormError):
        op_orthogonal_characterization(np.zeros((2, 2)), I2, L2F, COARSE)
    with pytest.raises(ZeroSeminormError):
        bhatia_semrl_orthogonal(np.zeros((2, 2)), I2)


def test_characterization_examples():
    res = op_orthogonal_characterization(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), L2F, CIRCLE)
    assert res.verdict.yes
    x, p_idx, y, q_idx = res.witnesses
    assert abs(x[0]) == pytest.approx(1.0, abs=1e-5) and abs(y[0]) == pytest.approx(1.0, abs=1e-5)
    assert (p_idx, q_idx) == (0, 0)
    assert res.to_json()["witnesses"]["p"] == 0
    res = op_orthogonal_characterization(I2, I2, L2F, CIRCLE)
    assert res.verdict.no and res.witnesses is None


def test_characterization_agrees_with_definition_on_pinned_pair():
    T, A = np.diag([2.0, 1.0]), np.array([[0.0, 1.0], [1.0, 0.0]])
    d = op_orthogonal_definition(T, A, L2F, CIRCLE)
    c = op_orthogonal_characterization(T, A, L2F, CIRCLE).verdict
    assert d.verdict is c.verdict
    assert d.yes


@pytest.mark.parametrize(
    "T, A, verdict",
    [(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), True), (I2, ROT, True), (I2, I2, False)],
)
def test_bhatia_semrl_examples(T, A, verdict):
    assert bhatia_semrl_orthogonal(T, A).yes is verdict


def test_bhatia_semrl_needs_square_operators():
    with pytest.raises(ValueError):
        bhatia_semrl_orthogonal(np.ones((2, 3)), np.ones((2, 3)))
    with pytest.raises(ValueError):
        bhatia_semrl_orthogonal(I2, np.eye(3))


def test_top_singular_subspace_multiplicity():
    assert top_singular_subspace(I2)[1].shape == (2, 2)
    assert top_singular_subspace(np.diag([2.0, 1.0, 2.0]))[1].shape == (3, 2)
    sigma, V = top_singular_subspace(np.diag([2.0, 1.0]))
    assert sigma == 2.0 and V.shape == (2, 1)


def test_sain_examples():
    linf = Lp(math.inf)
    assert sain_orthogonal(I2, np.diag([1.0, -1.0]), linf, linf).verdict.yes
    for nx, ny in ((linf, linf), (Lp(1.0), Lp(1.0)), (Euclidean(), Lp(3.0))):
        assert sain_orthogonal(I2, I2, nx, ny, mesh=0.05).verdict.no


def test_sain_matches_bhatia_semrl_in_hilbert_space():
    rng = np.random.default_rng(31)
    sample = discretize_symmetrized(AdmissibleSpec(), 0.01, 2)
    compared = 0
    for _ in range(200):
        T, A = rng.uniform(-1, 1, (2, 2)), rng.uniform(-1, 1, (2, 2))
        if rng.random() < 0.5:
            # move A onto the boundary: kill <Tx, Ax> at the top singular vector
            x = top_singular_subspace(T)[1][:, 0]
            Tx = T @ x
            A = A - np.outer(Tx, x) * (Tx @ A @ x) / (Tx @ Tx)
        s = sain_orthogonal(T, A, Euclidean(), Euclidean(), sample=sample).verdict
        b = bhatia_semrl_orthogonal(T, A)
        if not (s.indeterminate or b.indeterminate):
            compared += 1
            assert s.verdict is b.verdict
    assert compared >= 190


def test_short_image_does_not_inflate_the_characterization_margin():
    # boundary pair where |Ax| is small at the top singular vector
    T = np.array([[0.5134711440123372, -0.6636961424452887], [-0.6968402919804317, -0.9860255496856185]])
    A = np.array([[-0.7351046676629573, 0.31632036111931994], [0.7795757541359096, -0.33364190100166313]])
    res = op_orthogonal_characterization(T, A, L2F, CIRCLE)
    assert bhatia_semrl_orthogonal(T, A).yes
    assert res.verdict.yes and max(res.plus_margin, res.minus_margin) < 1e-8


def test_operator_verdicts_are_homogeneous():
    rng = np.random.default_rng(41)
    for _ in range(10):
        T, A = rng.uniform(-1, 1, (2, 2)), rng.uniform(-1, 1, (2, 2))
        t, s = rng.choice([-1, 1]) * rng.uniform(0.1, 10, 2)
        a = op_orthogonal_definition(T, A, COORDS, COARSE)
        b = op_orthogonal_definition(t * T, s * A, COORDS, COARSE)
        if not (a.indeterminate or b.indeterminate):
            assert a.verdict is b.verdict


# -- operator values ---------------------------------------------------------------


def test_linear_operator_round_trip_and_validation():
    T = LinearOperator([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    assert (T.rows, T.cols) == (2, 3)
    back = LinearOperator.from_json(T.to_json())
    np.testing.assert_array_equal(back.entries, T.entries)
    np.testing.assert_array_equal((2 * T + T).entries, 3 * T.entries)
    np.testing.assert_array_equal(T([1.0, 0.0, 0.0]), [1.0, 4.0])
    with pytest.raises(DimensionError):
        LinearOperator.from_json({"rows": 2, "cols": 2, "data": [1.0, 2.0, 3.0]})
    with pytest.raises(ValueError):
        LinearOperator([[1.0, math.nan]])
    with pytest.raises(ValueError):
        LinearOperator([1.0, 2.0])
