"""Linear subspaces of R^p represented by orthonormal bases.

All geometric primitives used by the solvers live here: orthonormalization,
orthogonal projection, complements, intersections, principal angles and
random subspace generation.  A subspace is stored as a p x d matrix with
orthonormal columns; d = 0 encodes the trivial subspace {0}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

# Relative rank tolerance for all SVD-based rank decisions.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of R^p given by an orthonormal basis."""

    ambient_dim: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.ambient_dim <= 0:
            raise InvalidInputError("ambient dimension must be positive")
        basis = np.ascontiguousarray(np.asarray(self.basis, dtype=float))
        if basis.ndim != 2 or basis.shape[0] != self.ambient_dim:
            raise InvalidInputError(
                f"basis must be {self.ambient_dim} x d, got shape {basis.shape}"
            )
        d = basis.shape[1]
        if d > self.ambient_dim:
            raise InvalidInputError("subspace dimension exceeds ambient dimension")
        if d > 0:
            gram = basis.T @ basis
            if np.linalg.norm(gram - np.eye(d)) > 1e-12:
                raise InvalidInputError("basis columns are not orthonormal")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0


@dataclass(frozen=True)
class Problem:
    """A feasibility problem: find a point in the intersection of n subspaces."""

    subspaces: tuple[Subspace, ...]

    def __post_init__(self):
        subs = tuple(self.subspaces)
        if len(subs) < 2:
            raise InvalidInputError("a problem needs at least two subspaces")
        p = subs[0].ambient_dim
        if any(s.ambient_dim != p for s in subs):
            raise InvalidInputError("all subspaces must share one ambient dimension")
        object.__setattr__(self, "subspaces", subs)

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[0].ambient_dim

    @property
    def n(self) -> int:
        return len(self.subspaces)


def orthonormalize(vectors: np.ndarray, tol: float = RANK_TOL) -> Subspace:
    """Orthonormal basis of the column space of ``vectors``.

    Rank is decided by singular values exceeding ``tol`` times the largest
    singular value.  An empty input (zero columns) yields the trivial subspace.
    """
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    A = np.asarray(vectors, dtype=float)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2:
        raise InvalidInputError("expected a 2-d array of column vectors")
    p = A.shape[0]
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("input contains non-finite entries")
    if A.shape[1] == 0:
        return Subspace(p, np.zeros((p, 0)))
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return Subspace(p, U[:, :rank])


def project(S: Subspace, x: np.ndarray) -> np.ndarray:
    """Orthogonal projection of x onto S."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != S.ambient_dim and x.shape[0] != S.ambient_dim:
        raise InvalidInputError(
            f"vector length {x.shape} does not match ambient dim {S.ambient_dim}"
        )
    if x.ndim == 1:
        if x.shape[0] != S.ambient_dim:
            raise InvalidInputError("dimension mismatch")
        return S.basis @ (S.basis.T @ x)
    raise InvalidInputError("project expects a single vector")


def complement(S: Subspace) -> Subspace:
    """The orthogonal complement of S."""
    p = S.ambient_dim
    if S.is_trivial:
        return Subspace(p, np.eye(p))
    # Right singular vectors of B^T beyond its rank span the complement.
    _, _, Vt = np.linalg.svd(S.basis.T, full_matrices=True)
    return Subspace(p, Vt[S.dim:].T)


def intersect_many(subspaces, tol: float = RANK_TOL) -> Subspace:
    """Intersection of a list of subspaces sharing one ambient dimension.

    Computed as the null space of the stacked complement projectors
    (x lies in every S_i iff (I - B_i B_i^T) x = 0 for all i).
    """
    subs = list(subspaces)
    if not subs:
        raise InvalidInputError("cannot intersect an empty list of subspaces")
    p = subs[0].ambient_dim
    if any(s.ambient_dim != p for s in subs):
        raise InvalidInputError("ambient dimensions differ")
    rows = []
    for s in subs:
        if s.dim < p:
            rows.append(np.eye(p) - s.basis @ s.basis.T)
    if not rows:
        return Subspace(p, np.eye(p))
    C = np.vstack(rows)
    _, sv, Vt = np.linalg.svd(C)
    rank = int(np.sum(sv > tol * sv[0])) if sv.size and sv[0] > 0 else 0
    return Subspace(p, Vt[rank:].T)


def principal_angles(S1: Subspace, S2: Subspace) -> np.ndarray:
    """Principal angles between two nontrivial subspaces, ascending, in [0, pi/2]."""
    if S1.ambient_dim != S2.ambient_dim:
        raise InvalidInputError("ambient dimensions differ")
    if S1.is_trivial or S2.is_trivial:
        raise InvalidInputError("principal angles need nontrivial subspaces")
    sv = np.linalg.svd(S1.basis.T @ S2.basis, compute_uv=False)
    # Singular values descend, so arccos gives ascending angles.
    return np.arccos(np.clip(sv, 0.0, 1.0))


def random_subspace(p: int, d: int, rng: np.random.Generator) -> Subspace:
    """A random d-dimensional subspace of R^p, rotation-invariant in law.

    Orthonormalizes a p x d standard Gaussian sample; deterministic for a
    seeded generator.
    """
    if not 1 <= d <= p - 1:
        raise InvalidInputError(f"need 1 <= d <= p-1, got d={d}, p={p}")
    S = orthonormalize(rng.standard_normal((p, d)))
    # A Gaussian sample is full rank with probability 1.
    if S.dim != d:
        raise InvalidInputError("random sample was rank deficient")
    return S
