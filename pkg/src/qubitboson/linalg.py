"""Dense complex Hermitian eigensolver and spectral time evolution.

The eigensolver is a cyclic Jacobi iteration written in-repo so the core
numerical path has no external solver dependency; numpy is used only as the
array carrier. Matrices here are small (dim <= ~64), where Jacobi is both
robust and plenty fast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .model import HermitianOperator

MAX_SWEEPS = 100
OFFDIAG_TOL = 1e-12  # relative off-diagonal Frobenius norm
HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.values)


def _as_matrix(h) -> np.ndarray:
    if isinstance(h, HermitianOperator):
        return np.array(h.entries, dtype=complex)
    return np.array(h, dtype=complex)


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def eigh(h, max_sweeps: int = MAX_SWEEPS, tol: float = OFFDIAG_TOL) -> EigenDecomposition:
    """Diagonalize a complex Hermitian matrix by cyclic Jacobi rotations.

    Each rotation zeroes one off-diagonal pair (p, q): a diagonal phase
    makes a_pq real, then a real Givens rotation annihilates it. Output is
    deterministic: fixed sweep order, eigenvalues sorted ascending with
    ties broken by input index, and each eigenvector's largest-magnitude
    component made real and positive.
    """
    a = _as_matrix(h)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    herm_res = np.max(np.abs(a - a.conj().T)) if n else 0.0
    scale = max(1.0, float(np.max(np.abs(a)))) if n else 1.0
    if herm_res > HERMITICITY_TOL * scale:
        raise ValueError(f"matrix is not Hermitian: residual {herm_res:.3e}")
    a = 0.5 * (a + a.conj().T)

    v = np.eye(n, dtype=complex)
    norm_scale = max(float(np.linalg.norm(a)), 1e-300)

    converged = False
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= tol * norm_scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                # Phase so the pivot becomes real: column q scaled by d.
                d = apq.conjugate() / abs(apq)
                r = abs(apq)
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau)) if tau != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # Column combinations of the full unitary J = diag(1, d) * R(c, s)
                # restricted to columns (p, q).
                cp = a[:, p].copy()
                cq = a[:, q] * d
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :] * np.conj(d)
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q] * d
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        converged = _offdiag_norm(a) <= tol * norm_scale
    if not converged:
        raise ConvergenceError(
            f"Jacobi sweep cap {max_sweeps} reached; off-diagonal residual "
            f"{_offdiag_norm(a):.3e} (relative {_offdiag_norm(a) / norm_scale:.3e})"
        )

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    # Phase convention: largest-magnitude component real-positive.
    for k in range(n):
        col = vectors[:, k]
        idx = int(np.argmax(np.abs(col)))
        piv = col[idx]
        if abs(piv) > 0:
            vectors[:, k] = col * (piv.conjugate() / abs(piv))
    return EigenDecomposition(values=values, vectors=vectors)


def evolve(decomp: EigenDecomposition, t: float, psi0: np.ndarray) -> np.ndarray:
    """Apply exp(-i H t) to psi0 in the eigenbasis (hbar = 1)."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (decomp.dim,):
        raise ValueError(f"state dim {psi0.shape} != decomposition dim {decomp.dim}")
    coeffs = decomp.vectors.conj().T @ psi0
    return decomp.vectors @ (np.exp(-1j * decomp.values * t) * coeffs)


def evolve_grid(decomp: EigenDecomposition, times: np.ndarray, psi0: np.ndarray) -> np.ndarray:
    """Evolved states at many times at once; returns shape (dim, len(times))."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (decomp.dim,):
        raise ValueError(f"state dim {psi0.shape} != decomposition dim {decomp.dim}")
    coeffs = decomp.vectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(decomp.values, np.asarray(times, dtype=float)))
    return decomp.vectors @ (phases * coeffs[:, None])
