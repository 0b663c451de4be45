"""Friedrichs angle and its n-set proxy via Pierra's product-space reformulation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAngleError, InvalidInputError
from .subspaces import (
    Problem,
    Subspace,
    complement,
    intersect_many,
    orthonormalize,
    project,
)


@dataclass(frozen=True)
class AngleReport:
    cos_F: float
    angle_rad: float
    deflated_dims: tuple[int, int]


def _deflate(S: Subspace, W: Subspace) -> Subspace:
    """Component of S orthogonal to W (project the basis onto W^perp, re-orthonormalize).

    The rank cutoff is absolute: the input columns are unit vectors, so any
    singular value below 1e-10 is projection noise, even when all of them are
    (S contained in W).
    """
    if W.is_trivial:
        return S
    B = S.basis - W.basis @ (W.basis.T @ S.basis)
    U, s, _ = np.linalg.svd(B, full_matrices=False)
    rank = int(np.sum(s > 1e-10))
    return Subspace(S.ambient_dim, U[:, :rank])


def friedrichs(S1: Subspace, S2: Subspace) -> AngleReport:
    """Friedrichs angle between S1 and S2.

    The intersection is removed first; if either residual is trivial the
    angle is pi/2 by convention (the defining max runs over an empty set).
    """
    if S1.ambient_dim != S2.ambient_dim:
        raise InvalidInputError("ambient dimensions differ")
    W = intersect_many([S1, S2])
    D1 = _deflate(S1, W)
    D2 = _deflate(S2, W)
    if D1.is_trivial or D2.is_trivial:
        return AngleReport(cos_F=0.0, angle_rad=np.pi / 2, deflated_dims=(D1.dim, D2.dim))
    sv = np.linalg.svd(D1.basis.T @ D2.basis, compute_uv=False)
    c = float(np.clip(sv[0], 0.0, 1.0))
    if c >= 1.0 - 1e-12:
        raise DegenerateAngleError("deflated subspaces are numerically identical")
    return AngleReport(cos_F=c, angle_rad=float(np.arccos(c)), deflated_dims=(D1.dim, D2.dim))


def pierra_product(problem: Problem) -> tuple[Subspace, Subspace]:
    """The product subspace U_1 x ... x U_n and the diagonal of (R^p)^n."""
    p, n = problem.ambient_dim, problem.n
    dims = [s.dim for s in problem.subspaces]
    U = np.zeros((p * n, sum(dims)))
    col = 0
    for i, s in enumerate(problem.subspaces):
        U[i * p : (i + 1) * p, col : col + s.dim] = s.basis
        col += s.dim
    diag = np.tile(np.eye(p), (n, 1)) / np.sqrt(n)
    return Subspace(p * n, U), Subspace(p * n, diag)


def pierra_angle(problem: Problem) -> AngleReport:
    """Friedrichs angle between the product subspace and the diagonal."""
    U_prod, diag = pierra_product(problem)
    return friedrichs(U_prod, diag)
