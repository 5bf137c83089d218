"""Small dense linear-algebra kernel: symmetric tridiagonal eigenproblems
and unitary exponentials of skew-Hermitian generators.

Everything is double precision and pure (no shared mutable state).
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels

__all__ = [
    "SymTridiagonal",
    "SpectralData",
    "eigh_tridiagonal",
    "expm_skew_hermitian",
]


@dataclass(frozen=True)
class SymTridiagonal:
    """Real symmetric tridiagonal matrix: diagonal (m) and off-diagonal (m-1)."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=float)
        offdiag = np.asarray(self.offdiag, dtype=float)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)
        if diag.ndim != 1 or diag.size < 1:
            raise ValueError("diag must be a vector of length >= 1")
        if offdiag.shape != (diag.size - 1,):
            raise ValueError("offdiag must have length len(diag) - 1")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(offdiag))):
            raise ValueError("tridiagonal entries must be finite")

    @property
    def size(self):
        return self.diag.size

    def dense(self):
        m = np.diag(self.diag).astype(float)
        if self.offdiag.size:
            m += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return m


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _fix_signs(V):
    # deterministic convention: first non-negligible component positive
    m = V.shape[0]
    for j in range(V.shape[1]):
        col = V[:, j]
        thr = 1e-8 * np.max(np.abs(col))
        for i in range(m):
            if abs(col[i]) > thr:
                if col[i] < 0.0:
                    V[:, j] = -col
                break
    return V


def eigh_tridiagonal(T: SymTridiagonal) -> SpectralData:
    """Full eigen-decomposition of a real symmetric tridiagonal matrix.

    Implicit QL with shifts (see kosc._kernels.tql2).  Eigenvalues come
    out ascending; each eigenvector has its first non-negligible
    component positive, so results are reproducible across runs.
    """
    lam, V = _kernels.tql2(T.diag.astype(float), T.offdiag.astype(float))
    return SpectralData(eigenvalues=lam, eigenvectors=_fix_signs(V))


def expm_skew_hermitian(G: np.ndarray) -> np.ndarray:
    """Unitary exp(G) for skew-Hermitian G, via the spectral decomposition
    of the Hermitian matrix iG.

    The result is V diag(exp(-i w)) V^dagger, unitary up to rounding;
    a series evaluation would not guarantee that.
    """
    G = np.asarray(G, dtype=complex)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError("G must be a square matrix")
    if not np.all(np.isfinite(G)):
        raise ValueError("G entries must be finite")
    scale = np.max(np.abs(G)) if G.size else 0.0
    defect = np.max(np.abs(G + G.conj().T)) if G.size else 0.0
    if defect > 1e-10 * scale:
        raise ValueError("G is not skew-Hermitian (|G + G^dagger| too large)")
    w, V = np.linalg.eigh(1j * G)
    return (V * np.exp(-1j * w)) @ V.conj().T
