import numpy as np
import pytest

from graphdr import (
    DegenerateAngleError,
    InvalidInputError,
    Problem,
    Subspace,
    friedrichs,
    intersect_many,
    orthonormalize,
    pierra_angle,
    pierra_product,
    random_subspace,
)
from graphdr.harness import DimMode, generate_problem


def line(*direction):
    v = np.asarray(direction, dtype=float)
    return Subspace(len(v), (v / np.linalg.norm(v))[:, None])


def test_orthogonal_lines():
    report = friedrichs(line(1, 0), line(0, 1))
    assert report.cos_F == 0.0
    assert report.angle_rad == pytest.approx(np.pi / 2)


def test_line_pair_at_known_angle():
    phi = np.pi / 3
    report = friedrichs(line(1, 0), line(np.cos(phi), np.sin(phi)))
    assert report.cos_F == pytest.approx(0.5, abs=1e-12)


def test_nested_subspaces_deflate_to_right_angle():
    S1 = line(1, 0, 0)
    S2 = Subspace(3, np.eye(3)[:, :2])
    report = friedrichs(S1, S2)
    assert report.cos_F == 0.0
    assert report.deflated_dims[0] == 0


def test_identical_subspaces_right_angle_by_convention():
    rng = np.random.default_rng(0)
    S = random_subspace(5, 2, rng)
    report = friedrichs(S, S)
    assert report.angle_rad == pytest.approx(np.pi / 2)


def test_degenerate_residuals_raise():
    # two almost-identical lines: the intersection is detected as trivial but
    # the residual subspaces are numerically the same direction
    eps = 1e-9
    with pytest.raises(DegenerateAngleError):
        friedrichs(line(1, 0), line(np.cos(eps), np.sin(eps)))


def test_friedrichs_symmetric_and_rotation_invariant():
    rng = np.random.default_rng(1)
    S1 = random_subspace(8, 3, rng)
    S2 = random_subspace(8, 4, rng)
    a = friedrichs(S1, S2).cos_F
    assert abs(a - friedrichs(S2, S1).cos_F) <= 1e-10
    Q, _ = np.linalg.qr(rng.standard_normal((8, 8)))
    b = friedrichs(Subspace(8, Q @ S1.basis), Subspace(8, Q @ S2.basis)).cos_F
    assert abs(a - b) <= 1e-10


def test_two_lines_match_single_principal_angle():
    rng = np.random.default_rng(2)
    for _ in range(10):
        u = rng.standard_normal(5)
        w = rng.standard_normal(5)
        S1, S2 = line(*u), line(*w)
        expected = abs(np.dot(S1.basis[:, 0], S2.basis[:, 0]))
        assert abs(friedrichs(S1, S2).cos_F - expected) <= 1e-12


def test_pierra_product_shapes():
    rng = np.random.default_rng(3)
    problem = Problem(tuple(random_subspace(4, d, rng) for d in (2, 3)))
    U, diag = pierra_product(problem)
    assert U.ambient_dim == 8 and U.dim == 5
    assert diag.dim == 4
    assert np.allclose(diag.basis.T @ diag.basis, np.eye(4))


def test_pierra_full_sets():
    full = Subspace(3, np.eye(3))
    U, diag = pierra_product(Problem((full, full)))
    assert U.dim == 6 and diag.dim == 3


def test_pierra_intersection_mirrors_original():
    rng = np.random.default_rng(4)
    problem = generate_problem(8, 3, DimMode("common_core", d_min=4, d_max=6, core_dim=2), rng)
    U, diag = pierra_product(problem)
    prod_inter = intersect_many([U, diag])
    orig_inter = intersect_many(problem.subspaces)
    assert prod_inter.dim == orig_inter.dim


def test_pierra_angle_permutation_invariant():
    rng = np.random.default_rng(5)
    subs = tuple(random_subspace(6, d, rng) for d in (2, 3, 4))
    a = pierra_angle(Problem(subs)).angle_rad
    b = pierra_angle(Problem(subs[::-1])).angle_rad
    assert abs(a - b) <= 1e-10


def test_pierra_angle_identical_sets():
    rng = np.random.default_rng(6)
    S = random_subspace(5, 2, rng)
    report = pierra_angle(Problem((S, S, S)))
    assert report.angle_rad == pytest.approx(np.pi / 2)


def test_pierra_angle_full_scale_reproducible():
    rng1 = np.random.default_rng(7)
    rng2 = np.random.default_rng(7)
    p1 = generate_problem(50, 3, DimMode("generic"), rng1)
    p2 = generate_problem(50, 3, DimMode("generic"), rng2)
    a, b = pierra_angle(p1), pierra_angle(p2)
    assert a.angle_rad == b.angle_rad
    assert 0.0 < a.angle_rad < np.pi / 2


def test_ambient_mismatch_rejected():
    with pytest.raises(InvalidInputError):
        friedrichs(line(1, 0), line(1, 0, 0))
