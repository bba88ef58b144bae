"""Node extraction from a WAM: approximate Fekete and discrete Leja points.

Both extractions act on the rectangular Vandermonde of the graded basis,
optionally after an iterated change to a mesh-discretely-orthonormal basis.
Approximate Fekete points come from column-pivoted QR of the transposed
matrix; discrete Leja points from row-pivoted LU.  The discrete Leja
selection depends on the basis ordering, which the graded ordering of
`polybasis` fixes.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import densela, polybasis
from .errors import RankDeficiencyError


@dataclass(frozen=True)
class OrthoBasis:
    """Transform P such that V @ P has (numerically) orthonormal columns."""

    transform: np.ndarray = field(repr=False)
    steps: int = 0


@dataclass(frozen=True)
class ExtractionResult:
    method: str
    degree: int
    ortho_steps: int
    mesh_family: str
    indices: np.ndarray = field(repr=False)
    nodes: np.ndarray = field(repr=False)

    @property
    def count(self):
        return self.indices.size


def orthogonalize(V, steps):
    """Iterated QR orthogonalization of the basis on the mesh.

    Accumulates the product of inverse triangular factors from `steps`
    successive QR factorizations; steps = 0 returns the identity.
    """
    V = np.asarray(V, dtype=float)
    m, n = V.shape
    if m < n:
        raise ValueError("mesh must have at least as many points as basis elements")
    P = np.eye(n)
    cur = V
    for _ in range(steps):
        Q, R = np.linalg.qr(cur)
        sign = np.where(np.diag(R) < 0.0, -1.0, 1.0)  # canonical: diag(R) > 0
        Q = Q * sign
        R = R * sign[:, None]
        diag = np.diag(R)
        if diag.max() <= 0.0 or diag.min() < densela.RANK_TOL * diag.max():
            raise RankDeficiencyError("basis is rank deficient on this mesh")
        P = P @ scipy.linalg.solve_triangular(R, np.eye(n))
        cur = Q
    return OrthoBasis(transform=P, steps=steps)


def _preconditioned_vandermonde(mesh, n, ortho_steps):
    basis = polybasis.enumerate_basis(n)
    if mesh.cardinality < len(basis):
        raise ValueError(
            f"mesh of {mesh.cardinality} points cannot support degree {n} "
            f"({len(basis)} basis elements)"
        )
    V = polybasis.vandermonde(basis, mesh)
    if ortho_steps == 0:
        return V
    P = orthogonalize(V, ortho_steps).transform
    return V @ P


def select_afp(mesh, n, ortho_steps=2):
    """Approximate Fekete points of degree n extracted from the mesh.

    Column-pivoted QR of the transposed (preconditioned) Vandermonde; the
    returned node order is the greedy selection order.
    """
    U = _preconditioned_vandermonde(mesh, n, ortho_steps)
    N = U.shape[1]
    rec = densela.qr_col_pivot(U.T, steps=N)
    idx = np.array(rec.order[:N])
    return ExtractionResult(
        method="afp",
        degree=n,
        ortho_steps=ortho_steps,
        mesh_family=mesh.family,
        indices=idx,
        nodes=mesh.points[idx],
    )


def select_dlp(mesh, n, ortho_steps=2):
    """Discrete Leja points of degree n extracted from the mesh.

    Row-pivoted LU of the (preconditioned) Vandermonde; the first N
    permuted rows are the nodes, in elimination order.
    """
    U = _preconditioned_vandermonde(mesh, n, ortho_steps)
    N = U.shape[1]
    rec = densela.lu_row_pivot(U)
    idx = np.array(rec.order[:N])
    return ExtractionResult(
        method="dlp",
        degree=n,
        ortho_steps=ortho_steps,
        mesh_family=mesh.family,
        indices=idx,
        nodes=mesh.points[idx],
    )
