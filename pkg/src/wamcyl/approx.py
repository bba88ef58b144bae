"""Interpolation and discrete least squares at extracted nodes.

Coefficients always live in the graded cylinder basis, even when a
least-squares projector was built through a preconditioning transform, so
interpolants can be evaluated and compared across modules.  Sup norms over
large control meshes are estimated blockwise; the maximum is
order-independent, so blocking never changes results.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import densela, extract, polybasis

# memory cap for control-mesh scans: at most 65536 rows per block, fewer
# when the basis is wide enough that a block would exceed ~2 GB
_BLOCK_ELEMENTS = 2.5e8


def _block_rows(ncols):
    return int(min(65536, max(1024, _BLOCK_ELEMENTS // max(ncols, 1))))


@dataclass(frozen=True)
class Interpolant:
    degree: int
    nodes: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class LsqProjector:
    mesh: object
    degree: int
    transform: np.ndarray = field(repr=False)
    q: np.ndarray = field(repr=False)


def interpolate(nodes, samples):
    """Interpolant through (nodes, samples); nodes is an ExtractionResult."""
    samples = np.asarray(samples, dtype=float)
    basis = polybasis.enumerate_basis(nodes.degree)
    V = polybasis.vandermonde(basis, nodes.nodes)
    coeffs = densela.solve(V, samples)
    return Interpolant(degree=nodes.degree, nodes=nodes.nodes, coefficients=coeffs)


def eval_interpolant(q, pts):
    """Values of the interpolant at the given points (Mesh or array)."""
    basis = polybasis.enumerate_basis(q.degree)
    block = _block_rows(len(basis))
    out = []
    for _, B in polybasis.iter_vandermonde_blocks(basis, pts, block):
        out.append(B @ q.coefficients)
    return np.concatenate(out)


def lebesgue_constant(nodes, control):
    """Max over the control mesh of the 1-norm of the Lagrange values.

    Solves V(nodes)^T L = V(control)^T blockwise with a single LU
    factorization of the node Vandermonde.
    """
    basis = polybasis.enumerate_basis(nodes.degree)
    A = polybasis.vandermonde(basis, nodes.nodes)
    lu_piv = densela.lu_factor_checked(A)
    block = _block_rows(len(basis))
    lam = 0.0
    for _, B in polybasis.iter_vandermonde_blocks(basis, control, block):
        L = scipy.linalg.lu_solve(lu_piv, B.T, trans=1)
        lam = max(lam, float(np.abs(L).sum(axis=0).max()))
    return lam


def build_lsq(mesh, n, steps=2):
    """Discrete least-squares projector on the mesh for degree n.

    The fit formula P (Q^T samples) presumes Q numerically orthonormal,
    which needs steps >= 1; one step suffices on well-conditioned bases
    and two make the defect negligible.
    """
    basis = polybasis.enumerate_basis(n)
    if mesh.cardinality < len(basis):
        raise ValueError("mesh too small for the requested degree")
    V = polybasis.vandermonde(basis, mesh)
    P = extract.orthogonalize(V, steps).transform
    return LsqProjector(mesh=mesh, degree=n, transform=P, q=V @ P)


def lsq_fit(proj, samples):
    """Least-squares coefficients in the graded basis: P (Q^T samples)."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape[0] != proj.q.shape[0]:
        raise ValueError("samples must align with the projector mesh")
    return proj.transform @ (proj.q.T @ samples)


def lsq_norm(proj, eval_on=None):
    """Operator norm of the projector: max over points of ||Q P^T p(x)||_1.

    Defaults to evaluating on the projector's own mesh.
    """
    pts = proj.mesh if eval_on is None else eval_on
    basis = polybasis.enumerate_basis(proj.degree)
    M = proj.q.shape[0]
    block = int(min(_block_rows(len(basis)), max(256, _BLOCK_ELEMENTS // max(M, 1))))
    PT = proj.transform.T
    best = 0.0
    for _, B in polybasis.iter_vandermonde_blocks(basis, pts, block):
        G = proj.q @ (PT @ B.T)
        best = max(best, float(np.abs(G).sum(axis=0).max()))
    return best
