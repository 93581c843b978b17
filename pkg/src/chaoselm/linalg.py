"""Dense kernels backing the least-squares training path."""

import numpy as np

from .errors import DimensionMismatch, SvdFailure


def pinv(a: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse computed via SVD.

    Singular values <= `tol` are zeroed; the default cutoff is
    max(rows, cols) * eps * sigma_max, the usual numerical-rank threshold.
    The SVD route (rather than normal equations) keeps the minimum-norm
    property on rank-deficient input.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionMismatch(f"pinv expects a 2-D matrix, got ndim={a.ndim}")
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(f"SVD did not converge: {exc}") from exc
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]))
    if tol is None:
        tol = max(a.shape) * np.finfo(np.float64).eps * s[0]
    inv_s = np.where(s > tol, 1.0 / np.where(s > tol, s, 1.0), 0.0)
    return (vt.T * inv_s) @ u.T


def lstsq_min_norm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Minimum-Frobenius-norm least-squares solution X of A X = B.

    Equal to pinv(a) @ b; delegates to the SVD-based LAPACK solver.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim not in (1, 2):
        raise DimensionMismatch(
            f"lstsq expects 2-D A and 1-D/2-D B, got ndim {a.ndim} and {b.ndim}"
        )
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(
            f"A has {a.shape[0]} rows but B has {b.shape[0]}"
        )
    try:
        x, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(f"least-squares solve failed: {exc}") from exc
    return x
