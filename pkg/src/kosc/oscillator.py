"""Fock-basis oscillator built from the Krawtchouk recurrence: position,
momentum, quadratures, ladder operators, number operator, and the
quadratic Hamiltonian with its closed-form spectrum."""

from typing import NamedTuple

import numpy as np

from .numerics import SymTridiagonal, eigh_tridiagonal
from .polynomials import OscillatorParams, recurrence_coefficients

__all__ = [
    "build_xp",
    "build_quadratures",
    "build_ladder",
    "hamiltonian",
    "spectrum_formula",
    "spectrum_check",
    "commutator_check",
    "CommutatorCheck",
]


def build_xp(params: OscillatorParams):
    """Selfadjoint X and P acting on the Fock basis: column n of X holds
    (b_{n-1}, a_n, b_n); P carries +-i on the off-diagonal entries."""
    rc = recurrence_coefficients(params)
    X = np.diag(rc.a) + np.diag(rc.b, 1) + np.diag(rc.b, -1)
    P = np.diag(rc.a).astype(complex)
    P += 1j * np.diag(rc.b, 1) - 1j * np.diag(rc.b, -1)
    return X, P


def build_quadratures(params: OscillatorParams):
    """Quadratures and Hamiltonian:

    Xt = entrywise real part of X - P (zero diagonal, off-diagonal b_n),
    Pt = -i (entrywise imaginary part of X - P),
    H  = (Xt^2 + Pt^2) / (4 p (1-p)).
    """
    rc = recurrence_coefficients(params)
    Xt = np.diag(rc.b, 1) + np.diag(rc.b, -1)
    Pt = 1j * np.diag(rc.b, 1) - 1j * np.diag(rc.b, -1)
    H = (Xt @ Xt + (Pt @ Pt).real) / (4.0 * params.p * (1.0 - params.p))
    return Xt, Pt, H


def hamiltonian(params: OscillatorParams) -> np.ndarray:
    return build_quadratures(params)[2]


def build_ladder(params: OscillatorParams):
    """Ladder operators and number operator.

    a_minus |n> = -sqrt(n (N-n+1)) |n-1>,
    a_plus  |n> = -sqrt((n+1) (N-n)) |n+1>,
    so a_minus is the transpose of a_plus and neither depends on p.
    """
    N = params.N
    n = np.arange(N, dtype=float)
    s = np.sqrt((n + 1.0) * (N - n))
    a_plus = np.diag(-s, -1)
    a_minus = a_plus.T.copy()
    number = np.diag(np.arange(N + 1, dtype=float))
    return a_plus, a_minus, number


def spectrum_formula(params: OscillatorParams) -> np.ndarray:
    """Closed-form eigenvalues lambda_n = N (n + 1/2) - n^2, n = 0..N;
    degenerate in pairs with lambda_0 = lambda_N = N/2."""
    n = np.arange(params.N + 1, dtype=float)
    return params.N * (n + 0.5) - n * n


def spectrum_check(params: OscillatorParams):
    """(computed ascending eigenvalues of H, closed-form values by n).

    The sorted multisets agree; H is diagonal in the Fock basis so the
    tridiagonal solver sees a zero off-diagonal.
    """
    H = hamiltonian(params)
    T = SymTridiagonal(np.diag(H).copy(), np.diag(H, 1).copy())
    computed = eigh_tridiagonal(T).eigenvalues
    return computed, spectrum_formula(params)


class CommutatorCheck(NamedTuple):
    diagonal: np.ndarray      # diagonal of [a_minus, a_plus]
    expected: np.ndarray      # N - 2n
    max_offdiag: float


def commutator_check(params: OscillatorParams) -> CommutatorCheck:
    """Diagonal of [a_minus, a_plus] from explicit matrix products.

    The computed diagonal is N - 2n.  (A commonly quoted closed form has
    constant N-1 instead of N; it is inconsistent with the square-root
    ladder coefficients and the matrix product decides.)
    """
    a_plus, a_minus, _ = build_ladder(params)
    C = a_minus @ a_plus - a_plus @ a_minus
    diag = np.diag(C).copy()
    off = C - np.diag(diag)
    n = np.arange(params.N + 1, dtype=float)
    return CommutatorCheck(
        diagonal=diag,
        expected=params.N - 2.0 * n,
        max_offdiag=float(np.max(np.abs(off))),
    )
