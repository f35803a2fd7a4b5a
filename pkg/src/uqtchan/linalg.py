"""Dense complex linear algebra for one- and two-qubit operators.

Everything operates on plain numpy arrays of shape (2, 2) or (4, 4).
The Hermitian eigensolver is a cyclic complex Jacobi iteration: at these
sizes it is fast, dependency-free, and lets us pin eigenvector phases and
degenerate-cluster ordering exactly, which keeps Kraus reconstructions
downstream snapshot-stable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS_HERM = 1e-10
EPS_EIG = 1e-10
RANK_TOL = 1e-9

_OFF_DIAG_TOL = 1e-14
_MAX_SWEEPS = 60
_CLUSTER_TOL = 1e-11

I2 = np.eye(2, dtype=complex)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (I2, SX, SY, SZ)
I4 = np.eye(4, dtype=complex)
for _m in PAULIS + (I4,):
    _m.setflags(write=False)


def _as_square(m, dims=(2, 4)) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] not in dims:
        raise ValueError(f"expected dimension in {dims}, got {a.shape[0]}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def herm_residual(m: np.ndarray) -> float:
    """Max-entry deviation from Hermiticity, ||M - M^dag||_max."""
    a = np.asarray(m)
    return float(np.max(np.abs(a - a.conj().T)))


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two single-qubit operators (2x2 -> 4x4)."""
    am = _as_square(a, dims=(2,))
    bm = _as_square(b, dims=(2,))
    return np.kron(am, bm)


def partial_trace(m, keep: int) -> np.ndarray:
    """Trace a 4x4 two-qubit operator down to one qubit.

    keep=1 keeps the first (leftmost) tensor factor, keep=2 the second.
    """
    a = _as_square(m, dims=(4,)).reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ikjk->ij", a)
    if keep == 2:
        return np.einsum("kikj->ij", a)
    raise ValueError(f"keep must be 1 or 2, got {keep}")


@dataclass(frozen=True)
class EigenDecomp:
    """Hermitian eigendecomposition, eigenvalues sorted descending.

    Eigenvectors are the columns of `eigenvectors`, orthonormal, with the
    first non-negligible component of each phase-fixed to be real positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _phase_fix(v: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(np.abs(v) > 1e-8)
    if idx.size == 0:
        return v
    pivot = v[idx[0]]
    return v * (pivot.conjugate() / abs(pivot))


def _lex_key(v: np.ndarray) -> tuple:
    out = []
    for z in v:
        out.append(round(float(z.real), 10))
        out.append(round(float(z.imag), 10))
    return tuple(out)


def hermitian_eig(m) -> EigenDecomp:
    """Eigendecomposition of a Hermitian 2x2 or 4x4 matrix via cyclic Jacobi.

    Sweeps run until the off-diagonal Frobenius norm drops below 1e-14
    (relative to the matrix scale). Degenerate clusters are re-orthonormalized
    by modified Gram-Schmidt and ordered by a lexicographic comparison of the
    phase-fixed eigenvectors, so the output is deterministic.
    """
    a = _as_square(m)
    if herm_residual(a) > EPS_HERM:
        raise ValueError(
            f"matrix is not Hermitian within {EPS_HERM:g} "
            f"(residual {herm_residual(a):.3e})"
        )
    a = (a + a.conj().T) / 2.0
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.sqrt(np.sum(np.abs(a) ** 2))))

    for _ in range(_MAX_SWEEPS):
        off = np.sqrt(2.0 * sum(abs(a[p, q]) ** 2 for p in range(n - 1) for q in range(p + 1, n)))
        if off <= _OFF_DIAG_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                h = abs(apq)
                if h <= 1e-300:
                    continue
                w = apq.conjugate() / h  # phase that makes the pivot real
                theta = (a[q, q].real - a[p, p].real) / (2.0 * h)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                j = np.eye(n, dtype=complex)
                j[p, p] = c
                j[p, q] = s
                j[q, p] = -s * w
                j[q, q] = c * w
                a = j.conj().T @ a @ j
                v = v @ j

    vals = np.diag(a).real.copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = v[:, order]

    # Deterministic handling of (near-)degenerate clusters.
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and vals[start] - vals[stop] <= _CLUSTER_TOL * scale:
            stop += 1
        if stop - start > 1:
            cols = [_phase_fix(vecs[:, k].copy()) for k in range(start, stop)]
            cols.sort(key=_lex_key, reverse=True)
            for i in range(len(cols)):
                for jx in range(i):
                    cols[i] = cols[i] - np.vdot(cols[jx], cols[i]) * cols[jx]
                cols[i] = cols[i] / np.sqrt(np.vdot(cols[i], cols[i]).real)
            for i, k in enumerate(range(start, stop)):
                vecs[:, k] = cols[i]
        start = stop

    for k in range(n):
        vecs[:, k] = _phase_fix(vecs[:, k])

    vals.setflags(write=False)
    vecs.setflags(write=False)
    return EigenDecomp(eigenvalues=vals, eigenvectors=vecs)


def is_psd(m, tol: float = RANK_TOL) -> bool:
    """True iff the smallest eigenvalue of a Hermitian matrix is >= -tol."""
    dec = hermitian_eig(m)
    return bool(dec.eigenvalues[-1] >= -tol)


def numeric_rank(m, tol: float = RANK_TOL) -> int:
    """Eigenvalue count above tol * (largest eigenvalue) for Hermitian PSD input.

    Returns 0 for the zero matrix.
    """
    dec = hermitian_eig(m)
    lmax = float(dec.eigenvalues[0])
    if lmax <= tol:
        return 0
    return int(np.sum(dec.eigenvalues > tol * lmax))
