"""Eigenstructure of graph shift operators and of orthogonal transform matrices.

Two decompositions are provided: the symmetric eigendecomposition of a shift
operator (real orthonormal basis, ascending eigenvalues, deterministic signs)
and the unitary eigendecomposition of the resulting orthogonal transform
matrix (unimodular eigenvalues in a canonical order). Fractional operator
powers are taken entrywise on the unimodular eigenvalues with the principal
logarithm, so repeated powers compose additively for a fixed branch.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError
from .graphs import GsoKind

_SIGN_TOL = 1e-8  # below this magnitude a component does not decide a sign/phase
_CLUSTER_GAP = 1e-9  # eigenvalue gap that separates invariant subspaces
_SNAP_TOL = 1e-13  # distance at which eigenvalues snap onto the real/imaginary axes


@dataclass(frozen=True)
class SpectralBasis:
    """Orthonormal eigenvectors (columns) and ascending eigenvalues of a GSO."""

    vectors: np.ndarray
    values: np.ndarray
    kind: GsoKind


@dataclass(frozen=True)
class FourierEigen:
    """Unitary eigendecomposition of an orthogonal transform matrix.

    ``source = vectors @ diag(values) @ vectors.conj().T`` with unimodular
    ``values`` sorted by ascending principal argument; argument ties are
    broken deterministically on the phase-normalized eigenvectors.
    """

    vectors: np.ndarray
    values: np.ndarray
    source: np.ndarray


def _fix_signs(v: np.ndarray, tol: float = _SIGN_TOL) -> np.ndarray:
    """Flip eigenvector columns so the first non-negligible component is positive."""
    w = v.copy()
    for j in range(w.shape[1]):
        nz = np.flatnonzero(np.abs(w[:, j]) > tol)
        if nz.size and w[nz[0], j] < 0:
            w[:, j] = -w[:, j]
    return w


def eig_sym(z: np.ndarray, kind: GsoKind = GsoKind.LAPLACIAN) -> SpectralBasis:
    """Eigendecompose a real symmetric shift operator.

    Raises ValidationError if ``z`` is not symmetric within 1e-10, and
    NumericalError if the decomposition fails its reconstruction bounds.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {z.shape}")
    if z.size and np.abs(z - z.T).max() > 1e-10:
        raise ValidationError("matrix is not symmetric within 1e-10")
    values, vectors = np.linalg.eigh((z + z.T) / 2.0)
    vectors = _fix_signs(vectors)
    n = z.shape[0]
    if np.abs(vectors.T @ vectors - np.eye(n)).max() >= 1e-12:
        raise NumericalError("eigenvector basis lost orthonormality")
    scale = 1.0 + (np.abs(z).max() if z.size else 0.0)
    if np.abs(z - (vectors * values) @ vectors.T).max() >= 1e-10 * scale:
        raise NumericalError("eigendecomposition failed its reconstruction bound")
    return SpectralBasis(vectors=vectors, values=values, kind=kind)


def gft_matrix(basis: SpectralBasis) -> np.ndarray:
    """Transform matrix that analyzes a vertex signal: the transposed basis."""
    return basis.vectors.T.copy()


def _canonical_order(mu: np.ndarray, p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sort eigenpairs by ascending principal argument with a deterministic tiebreak.

    Ties are broken on the phase-normalized eigenvector: first by the index
    of its leading non-negligible component (so an identity eigenbasis stays
    the identity), then lexicographically on the components.
    """
    n = mu.size
    cols = []
    keys = []
    for k in range(n):
        v = p[:, k]
        nz = np.flatnonzero(np.abs(v) > _SIGN_TOL)
        lead = int(nz[0]) if nz.size else n
        if nz.size:
            v = v * np.exp(-1j * np.angle(v[lead]))
        cols.append(v)
        lex = tuple(np.round(np.column_stack([v.real, v.imag]).ravel(), 12))
        keys.append((float(np.angle(mu[k])), lead, lex))
    order = sorted(range(n), key=lambda k: keys[k])
    return mu[order], np.column_stack([cols[k] for k in order])


def eig_unitary(f: np.ndarray, *, gap_tol: float = _CLUSTER_GAP) -> FourierEigen:
    """Unitary eigendecomposition of a real orthogonal matrix.

    Because ``f`` is normal, its Hermitian and skew parts commute; the skew
    part is diagonalized inside each eigenspace of the symmetric part, which
    needs only symmetric eigensolvers. Eigenvalues within _SNAP_TOL of the
    real or imaginary axis are snapped onto it so that branch cuts of
    fractional powers are taken deterministically.
    """
    f = np.asarray(f, dtype=float)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {f.shape}")
    n = f.shape[0]
    if np.abs(f.T @ f - np.eye(n)).max() >= 1e-8:
        raise ValidationError("matrix is not orthogonal within 1e-8")

    h1 = (f + f.T) / 2.0
    h2 = (f - f.T) / 2j  # Hermitian: f = h1 + 1j * h2
    h, q = np.linalg.eigh(h1)
    mu = np.zeros(n, dtype=complex)
    p = np.zeros((n, n), dtype=complex)
    start = 0
    for stop in range(1, n + 1):
        if stop < n and h[stop] - h[stop - 1] <= gap_tol:
            continue
        qc = q[:, start:stop]
        _, w = np.linalg.eigh(qc.T @ h2 @ qc)
        pc = qc @ w
        for k in range(stop - start):
            v = pc[:, k]
            lam = np.vdot(v, f @ v)
            mu[start + k] = lam / abs(lam)
        p[:, start:stop] = pc
        start = stop

    re, im = mu.real.copy(), mu.imag.copy()
    im[np.abs(im) < _SNAP_TOL] = 0.0
    re[np.abs(re) < _SNAP_TOL] = 0.0
    mu = re + 1j * im
    mu = mu / np.abs(mu)

    mu, p = _canonical_order(mu, p)
    if np.abs(np.abs(mu) - 1.0).max() >= 1e-10:
        raise NumericalError("eigenvalues of an orthogonal matrix must be unimodular")
    if np.abs(p.conj().T @ p - np.eye(n)).max() >= 1e-10:
        raise NumericalError("unitary eigenbasis lost orthonormality")
    if np.abs(f - (p * mu) @ p.conj().T).max() >= 1e-9:
        raise NumericalError("unitary eigendecomposition failed its reconstruction bound")
    return FourierEigen(vectors=p, values=mu, source=f)


def frac_diag_power(mu: np.ndarray, t: float) -> np.ndarray:
    """Entrywise fractional power of unimodular values via the principal log.

    The argument is taken in (-pi, pi]; values on the negative real axis use
    +pi, so (-1)**0.5 == 1j. Inputs must be unimodular within 1e-8; outputs
    are renormalized to the unit circle.
    """
    mu = np.asarray(mu, dtype=complex)
    if mu.size and np.abs(np.abs(mu) - 1.0).max() > 1e-8:
        raise ValidationError("fractional powers require unimodular eigenvalues")
    mu = mu / np.abs(mu)
    # keep negative-real inputs on the +pi side of the branch cut: an imaginary
    # part of -0.0 would otherwise flip np.log to -pi
    on_axis = mu.imag == 0.0
    mu = np.where(on_axis, mu.real + 0.0j, mu)
    return np.exp(float(t) * np.log(mu))


def frac_operator(fe: FourierEigen, t: float) -> np.ndarray:
    """Fractional power of the decomposed operator: P diag(mu**t) P^H."""
    d = frac_diag_power(fe.values, t)
    return (fe.vectors * d) @ fe.vectors.conj().T
