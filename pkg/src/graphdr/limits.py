"""Closed-form limit points of the splitting iterations.

For the graph-based method the governing blocks converge to

    v* = -(alpha_1 x*, ..., alpha_{n-1} x*) + P_E(v^0),

where x* is the common limit of the shadow blocks,

    x* = P_{U_1 cap ... cap U_n}( -(1 / ||alpha||^2) sum_j alpha_j v_j^0 ),

and E is the subspace of governing tuples whose Z-combinations land in each
U_i^perp.  For n = 2 this reduces to the classical characterization
v* = P_{U1 cap U2}(v^0) + P_{U1^perp cap U2^perp}(v^0) with x* = P_{U1 cap U2}(v^0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateAlphaError, InvalidInputError
from .graphs import SplittingOperator
from .subspaces import (
    Problem,
    RANK_TOL,
    Subspace,
    complement,
    intersect_many,
    project,
)


@dataclass(frozen=True)
class LimitData:
    """Limit points for one (problem, operator, initial point) triple."""

    x_star: np.ndarray = field(repr=False)
    v_star: np.ndarray = field(repr=False)  # (n-1, p) blocks
    alpha: np.ndarray = field(repr=False)
    E_basis: Subspace = field(repr=False)


def build_E(problem: Problem, op: SplittingOperator, tol: float = RANK_TOL) -> Subspace:
    """Null space of the map (e_1..e_{n-1}) -> (P_{U_i} sum_j Z_ij e_j)_i.

    Realized as the stacked pn x p(n-1) block matrix with blocks
    Z_ij * B_i B_i^T, null space by SVD.
    """
    n, p = op.n, problem.ambient_dim
    C = np.zeros((n * p, (n - 1) * p))
    for i in range(n):
        B = problem.subspaces[i].basis
        if B.shape[1] == 0:
            continue
        Pi = B @ B.T
        for j in range(n - 1):
            z = op.Z[i, j]
            if z != 0.0:
                C[i * p : (i + 1) * p, j * p : (j + 1) * p] = z * Pi
    _, sv, Vt = np.linalg.svd(C)
    rank = int(np.sum(sv > tol * sv[0])) if sv.size and sv[0] > 0 else 0
    return Subspace((n - 1) * p, Vt[rank:].T)


class LimitOracle:
    """Closed-form limits with the expensive pieces cached per (problem, op).

    The intersection of the U_i and the basis of E are computed once and
    reused for every initial point (and every theta, which the limit does
    not depend on).
    """

    def __init__(self, problem: Problem, op: SplittingOperator):
        if problem.n != op.n:
            raise InvalidInputError("operator and problem disagree on n")
        self.problem = problem
        self.op = op
        alpha_sq = float(op.alpha @ op.alpha)
        if alpha_sq <= 1e-24:
            raise DegenerateAlphaError("alpha vanishes; limit formula undefined")
        self._alpha_sq = alpha_sq
        self.intersection = intersect_many(problem.subspaces)
        self.E_basis = build_E(problem, op)

    def limits(self, v0) -> LimitData:
        from .engine import as_blocks  # local import to avoid a cycle

        n, p = self.op.n, self.problem.ambient_dim
        v0 = as_blocks(v0, n, p)
        alpha = self.op.alpha
        weighted = (alpha @ v0) / self._alpha_sq  # sum_j alpha_j v_j^0 / ||alpha||^2
        x_star = project(self.intersection, -weighted)
        pe = project(self.E_basis, v0.reshape(-1)).reshape(n - 1, p)
        v_star = pe - np.outer(alpha, x_star)
        return LimitData(
            x_star=x_star, v_star=v_star, alpha=alpha.copy(), E_basis=self.E_basis
        )


def explicit_limits(problem: Problem, op: SplittingOperator, v0) -> LimitData:
    """Convenience wrapper building a one-shot LimitOracle."""
    return LimitOracle(problem, op).limits(v0)


def dr_limit_two(U1: Subspace, U2: Subspace, v0: np.ndarray) -> np.ndarray:
    """Two-set DR limit: P_{U1 cap U2}(v0) + P_{U1perp cap U2perp}(v0)."""
    if U1.ambient_dim != U2.ambient_dim:
        raise InvalidInputError("ambient dimensions differ")
    v0 = np.asarray(v0, dtype=float)
    inter = intersect_many([U1, U2])
    inter_perp = intersect_many([complement(U1), complement(U2)])
    return project(inter, v0) + project(inter_perp, v0)
