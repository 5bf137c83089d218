"""Difference-operator realization of the oscillator on the nonuniform
lattice xi_j = h (j - pN), h = sqrt(2 N p (1-p)), and its unitary
equivalence to the Fock-basis model.

The Hamiltonian here has the equally spaced spectrum {n + 1/2}; the
Fock-basis Hamiltonian is the quadratic image
-(H_grid - 1/2)^2 + N H_grid of it under the intertwiner.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import oscillator
from .numerics import SymTridiagonal, eigh_tridiagonal
from .polynomials import OscillatorParams, lattice_functions

__all__ = [
    "Grid",
    "make_grid",
    "krawtchouk_functions",
    "build_hamiltonian",
    "build_ladder",
    "build_intertwiner",
    "relation_check",
    "RelationReport",
]


@dataclass(frozen=True)
class Grid:
    """Uniformly spaced nodes xi_j = h (j - pN), j = 0..N."""

    h: float
    nodes: np.ndarray


def make_grid(params: OscillatorParams) -> Grid:
    h = math.sqrt(2.0 * params.N * params.p * (1.0 - params.p))
    j = np.arange(params.N + 1, dtype=float)
    return Grid(h=h, nodes=h * (j - params.p * params.N))


def _alpha_sq(params: OscillatorParams, j: np.ndarray) -> np.ndarray:
    # radicand of the shift amplitude alpha(xi_j) = sqrt((N-j)(j+1))
    return ((1.0 - params.p) * params.N - (j - params.p * params.N)) * (
        params.p * params.N + 1.0 + (j - params.p * params.N)
    )


def krawtchouk_functions(params: OscillatorParams) -> np.ndarray:
    """Grid eigenfunction values, rows n: Psi[n, j] = Psi_n(xi_j).

    Psi_n is the renormalized polynomial row times sqrt(rho(j)) with an
    alternating sign, which makes the matrix orthogonal in both index
    families.
    """
    U = lattice_functions(params)
    signs = (-1.0) ** np.arange(params.N + 1)
    return signs[:, None] * U


def _hamiltonian_bands(params: OscillatorParams):
    p, N = params.p, params.N
    j = np.arange(N + 1, dtype=float)
    asq = _alpha_sq(params, j)
    if np.any(asq[:-1] < 0.0):
        raise ValueError("negative shift radicand at an interior node; grid and parameters disagree")
    alpha = np.sqrt(np.maximum(asq, 0.0))
    diag = 2.0 * p * (1.0 - p) * N + 0.5 + (1.0 - 2.0 * p) * (j - p * N)
    off = -math.sqrt(p * (1.0 - p)) * alpha[:-1]
    return diag, off


def build_hamiltonian(params: OscillatorParams) -> np.ndarray:
    """Difference-operator Hamiltonian in the grid delta basis.

    Off-diagonal terms come from the two shifts weighted by alpha; the
    up-shift amplitude vanishes at the top node and the down-shift
    amplitude at the bottom node, so truncation at the ends is exact and
    the matrix is symmetric tridiagonal.
    """
    diag, off = _hamiltonian_bands(params)
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


def build_ladder(params: OscillatorParams):
    """Grid ladder operators A_plus, A_minus and A0 = [A_plus, A_minus]/2.

    A_plus = (1-p) shift_down(alpha .) - p alpha shift_up(.) + diagonal,
    with "shift_down(alpha .)" meaning multiply by alpha first, then
    shift; the opposite ordering fails the raising action.
    """
    p, N = params.p, params.N
    j = np.arange(N + 1, dtype=float)
    alpha = np.sqrt(np.maximum(_alpha_sq(params, j), 0.0))
    diag = math.sqrt(p * (1.0 - p)) * (2.0 * j - N)
    # entry (j, j-1): alpha evaluated at the source node j-1
    a_plus = np.diag(diag) + np.diag((1.0 - p) * alpha[:-1], -1) + np.diag(-p * alpha[:-1], 1)
    a_minus = a_plus.T.copy()
    a0 = 0.5 * (a_plus @ a_minus - a_minus @ a_plus)
    return a_plus, a_minus, a0


def build_intertwiner(params: OscillatorParams) -> np.ndarray:
    """Unitary T sending Fock basis vector e_n to the grid eigenfunction
    Psi_n; columns are the Psi_n value vectors."""
    return krawtchouk_functions(params).T.copy()


class RelationReport(NamedTuple):
    unitarity: float          # max |T^t T - I|
    spectrum_deviation: float  # max |eig(H_grid) - (n + 1/2)|
    diagonalization: float    # max off-diagonal + diagonal deviation of T^-1 H T
    scalar_residual: float    # closed-form spectra pushed through the relation
    matrix_residual: float    # max |H_fock + (Ht - I/2)^2 - N Ht|


def relation_check(params: OscillatorParams) -> RelationReport:
    """Verify unitary equivalence and the quadratic spectral relation
    between the grid Hamiltonian and the Fock-basis Hamiltonian."""
    N = params.N
    T = build_intertwiner(params)
    H = build_hamiltonian(params)
    unit = float(np.max(np.abs(T.T @ T - np.eye(N + 1))))

    tri = SymTridiagonal(np.diag(H).copy(), np.diag(H, 1).copy())
    lam = eigh_tridiagonal(tri).eigenvalues
    n = np.arange(N + 1, dtype=float)
    spec_dev = float(np.max(np.abs(lam - (n + 0.5))))

    Ht = T.T @ H @ T
    diag_dev = float(np.max(np.abs(Ht - np.diag(n + 0.5))))

    lam_fock = oscillator.spectrum_formula(params)
    scalar = float(np.max(np.abs(-(n + 0.5 - 0.5) ** 2 + N * (n + 0.5) - lam_fock)))

    H_fock = oscillator.hamiltonian(params)
    shifted = Ht - 0.5 * np.eye(N + 1)
    matrix = float(np.max(np.abs(H_fock + shifted @ shifted - N * Ht)))
    return RelationReport(
        unitarity=unit,
        spectrum_deviation=spec_dev,
        diagonalization=diag_dev,
        scalar_residual=scalar,
        matrix_residual=matrix,
    )
