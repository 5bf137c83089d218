"""Krawtchouk polynomial families and their lattice tables.

Four families share the recurrence coefficients (a_n, b_n):

* plain K_n(x; p, N): terminating hypergeometric sum, K_n(0) = 1;
* renormalized family: the same polynomials scaled row-by-row so that
  they are orthonormal on the lattice {0..N} under the binomial weight
  (this is the Fock-basis normalization used by the oscillator modules);
* auxiliary family: same off-diagonal coefficients with the diagonal
  dropped (a_n = 0), whose degree-(N+1) roots drive the explicit
  coherent-state formula;
* psi family: the monic-type renormalization of the auxiliary family on
  the sqrt(2)-stretched axis, which extends one degree further because
  its recurrence never divides by b_n.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .numerics import SpectralData, SymTridiagonal, eigh_tridiagonal

__all__ = [
    "OscillatorParams",
    "RecurrenceCoefficients",
    "PolynomialTable",
    "RootSets",
    "recurrence_coefficients",
    "pochhammer",
    "krawtchouk",
    "weight",
    "weights",
    "renormalized_table",
    "lattice_table",
    "lattice_functions",
    "difference_residual",
    "difference_residual_matrix",
    "orthogonality_gram",
    "auxiliary_table",
    "psi_table",
    "psi_roots",
    "root_sets",
    "auxiliary_root_data",
]


@dataclass(frozen=True)
class OscillatorParams:
    """Model parameters: success probability p and lattice size N
    (the state space has dimension N + 1)."""

    p: float
    N: int

    def __post_init__(self):
        if not (isinstance(self.N, int) and not isinstance(self.N, bool)):
            raise ValueError("N must be an integer")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not (0.0 < self.p < 1.0):
            raise ValueError("p must lie in (0,1)")

    @property
    def dim(self):
        return self.N + 1


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Diagonal a_n (length N+1) and off-diagonal b_n (length N) of the
    symmetric Jacobi matrix; all b_n < 0."""

    a: np.ndarray
    b: np.ndarray


def recurrence_coefficients(params: OscillatorParams) -> RecurrenceCoefficients:
    p, N = params.p, params.N
    n = np.arange(N + 1, dtype=float)
    a = p * (N - n) + n * (1.0 - p)
    m = np.arange(N, dtype=float)
    b = -np.sqrt(p * (1.0 - p) * (m + 1.0) * (N - m))
    return RecurrenceCoefficients(a=a, b=b)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def krawtchouk(n: int, x: float, params: OscillatorParams) -> float:
    """Plain Krawtchouk polynomial K_n(x; p, N) by its terminating
    hypergeometric sum.

    The sum is evaluated after symmetry reductions (degree n -> N-n and
    argument x -> N-x, each flipping p and contributing an exact
    prefactor) so that the alternating sum stays well conditioned over
    the whole lattice.
    """
    p, N = params.p, params.N
    if not (0 <= n <= N):
        raise ValueError("polynomial degree must satisfy 0 <= n <= N")
    sign = 1.0
    xv = float(x)
    if n > N - n and float(xv).is_integer():
        sign *= ((p - 1.0) / p) ** int(xv)
        n = N - n
        p = 1.0 - p
    if xv > N - xv:
        sign *= ((p - 1.0) / p) ** n
        xv = N - xv
        p = 1.0 - p
    return sign * _kernels.hyp_sum(n, xv, p, N)


def weight(n: int, params: OscillatorParams) -> float:
    """Binomial lattice weight rho(n) = C(N,n) p^n (1-p)^(N-n)."""
    p, N = params.p, params.N
    if not (0 <= n <= N):
        raise ValueError("weight index must satisfy 0 <= n <= N")
    return math.comb(N, n) * p**n * (1.0 - p) ** (N - n)


def weights(params: OscillatorParams) -> np.ndarray:
    return np.array([weight(n, params) for n in range(params.N + 1)])


@dataclass(frozen=True)
class PolynomialTable:
    """Values table indexed [degree, eval point] plus the family tag."""

    values: np.ndarray
    eval_set: np.ndarray
    family: str


def lattice_table(params: OscillatorParams) -> np.ndarray:
    """Renormalized-family values on the integer lattice, shape
    (N+1, N+1), entry [n, x].

    Lattice points are exactly the Jacobi-matrix eigenvalues, so the
    glued two-sided recurrence applies and every entry is accurate in a
    relative sense even where the plain forward recurrence blows up.
    """
    rc = recurrence_coefficients(params)
    xs = np.arange(params.N + 1, dtype=float)
    return _kernels.spectral_point_table(rc.a, rc.b, xs)


def renormalized_table(params: OscillatorParams, eval_set=None) -> PolynomialTable:
    """Renormalized (lattice-orthonormal) family on an evaluation set.

    With eval_set=None the integer lattice is used via the stable glued
    recurrence; explicit evaluation sets run the forward recurrence.
    Row n equals the plain polynomial row scaled by
    sqrt(C(N,n) (p/(1-p))^n), the constant that makes the rows
    orthonormal under the binomial weight.
    """
    if eval_set is None:
        xs = np.arange(params.N + 1, dtype=float)
        vals = lattice_table(params)
    else:
        xs = np.asarray(eval_set, dtype=float)
        if xs.ndim != 1 or not np.all(np.isfinite(xs)):
            raise ValueError("eval_set must be a finite 1-d array")
        rc = recurrence_coefficients(params)
        vals = _kernels.forward_table(rc.a, rc.b, xs, params.N + 1)
    return PolynomialTable(values=vals, eval_set=xs, family="renormalized")


def lattice_functions(params: OscillatorParams) -> np.ndarray:
    """Orthogonal matrix U[n, x] = Ktilde_n(x) sqrt(rho(x)); rows and
    columns are both orthonormal (it is symmetric up to rounding)."""
    return lattice_table(params) * np.sqrt(weights(params))[None, :]


def orthogonality_gram(params: OscillatorParams):
    """Gram matrix G_mn = sum_x rho(x) Ktilde_m(x) Ktilde_n(x) and the
    dual Gram D_xy = sum_n sqrt(rho(x) rho(y)) Ktilde_n(x) Ktilde_n(y);
    both equal the identity."""
    U = lattice_functions(params)
    return U @ U.T, U.T @ U


def difference_residual(n: int, x: int, params: OscillatorParams) -> float:
    """Residual of the second-order lattice difference equation satisfied
    by row n, at lattice point x.

    Terms whose coefficient vanishes at the lattice ends (x = 0, x = N)
    are dropped; no ghost points are evaluated.
    """
    p, N = params.p, params.N
    if not (0 <= n <= N and 0 <= x <= N):
        raise ValueError("require 0 <= n <= N and 0 <= x <= N")
    T = lattice_table(params)
    up = p * (N - x)
    down = x * (1.0 - p)
    r = n * T[n, x] - (up + down) * T[n, x]
    if x < N:
        r += up * T[n, x + 1]
    if x > 0:
        r += down * T[n, x - 1]
    return float(r)


def difference_residual_matrix(params: OscillatorParams) -> np.ndarray:
    """All residuals at once, shape (N+1, N+1), scaled per row by the
    max row magnitude so entries compare against an absolute tolerance."""
    p, N = params.p, params.N
    T = lattice_table(params)
    xs = np.arange(N + 1, dtype=float)
    up = p * (N - xs)
    down = xs * (1.0 - p)
    ns = np.arange(N + 1, dtype=float)[:, None]
    r = (ns - (up + down)[None, :]) * T
    r[:, :-1] += up[None, :-1] * T[:, 1:]
    r[:, 1:] += down[None, 1:] * T[:, :-1]
    rowmax = np.max(np.abs(T), axis=1, keepdims=True)
    return r / rowmax


def auxiliary_table(params: OscillatorParams, eval_set, degree=None) -> PolynomialTable:
    """Zero-diagonal family on an evaluation set, degrees 0..degree.

    The recurrence divides by b_n, and b_N = 0, so degrees beyond N
    cannot be generated here; ask the psi family for degree N+1.
    """
    N = params.N
    if degree is None:
        degree = N
    if degree > N:
        raise ValueError(
            "cannot extend recurrence past degree N: b_N = 0 "
            "(use psi_table for the degree-(N+1) monic-type values)"
        )
    xs = np.asarray(eval_set, dtype=float)
    if xs.ndim != 1 or not np.all(np.isfinite(xs)):
        raise ValueError("eval_set must be a finite 1-d array")
    rc = recurrence_coefficients(params)
    zero_a = np.zeros(N + 1)
    vals = _kernels.forward_table(zero_a, rc.b, xs, degree + 1)
    return PolynomialTable(values=vals, eval_set=xs, family="auxiliary")


def psi_table(params: OscillatorParams, eval_set, degree=None) -> PolynomialTable:
    """Monic-type psi family: psi_0 = 1, psi_1 = y,
    psi_{l+1}(y) = y psi_l(y) - 2 b_{l-1}^2 psi_{l-1}(y).

    Equals the auxiliary family times the running product of sqrt(2) b_k
    after the substitution y = x sqrt(2); valid up to degree N+1, whose
    roots are the nodes of the coherent-state root sum.
    """
    N = params.N
    if degree is None:
        degree = N + 1
    if degree > N + 1:
        raise ValueError("psi family is defined up to degree N + 1")
    xs = np.asarray(eval_set, dtype=float)
    if xs.ndim != 1 or not np.all(np.isfinite(xs)):
        raise ValueError("eval_set must be a finite 1-d array")
    rc = recurrence_coefficients(params)
    beta_sq = 2.0 * rc.b**2
    vals = _kernels.monic_forward_table(beta_sq, xs, degree + 1)
    return PolynomialTable(values=vals, eval_set=xs, family="psi")


def psi_roots(params: OscillatorParams) -> SpectralData:
    """The N+1 roots of psi_{N+1}, as the eigenvalues of the zero-diagonal
    symmetric tridiagonal matrix with off-diagonal sqrt(2) b_n; the
    eigenvector matrix is returned for the coherent-state root sum."""
    rc = recurrence_coefficients(params)
    T = SymTridiagonal(np.zeros(params.N + 1), math.sqrt(2.0) * rc.b)
    return eigh_tridiagonal(T)


@dataclass(frozen=True)
class RootSets:
    """Roots of the degree-(N+1) auxiliary polynomial under the three
    axis conventions used by the coherent-state evaluator."""

    aux: np.ndarray     # eigenvalues of the zero-diagonal matrix with off-diag b_n
    psi: np.ndarray     # sqrt(2)-stretched axis (roots of psi_{N+1})
    ladder: np.ndarray  # b_n / sqrt(p(1-p)) normalization (p-independent lattice)


def root_sets(params: OscillatorParams) -> RootSets:
    rc = recurrence_coefficients(params)
    T = SymTridiagonal(np.zeros(params.N + 1), rc.b)
    aux = eigh_tridiagonal(T).eigenvalues
    scale = math.sqrt(params.p * (1.0 - params.p))
    return RootSets(aux=aux, psi=math.sqrt(2.0) * aux, ladder=aux / scale)


def auxiliary_root_data(params: OscillatorParams):
    """Auxiliary-family data at its own degree-(N+1) roots x_k:
    (roots, value table [l, k] for l = 0..N, per-root spectral weights).

    The weights are 1 / sum_l values[l,k]^2, i.e. the squared first
    components of the normalized eigenvectors; together with the value
    table they reproduce functions of the zero-diagonal matrix.
    """
    rc = recurrence_coefficients(params)
    T = SymTridiagonal(np.zeros(params.N + 1), rc.b)
    roots = eigh_tridiagonal(T).eigenvalues
    zero_a = np.zeros(params.N + 1)
    vals = _kernels.spectral_point_table(zero_a, rc.b, roots)
    w = 1.0 / np.sum(vals * vals, axis=0)
    return roots, vals, w
