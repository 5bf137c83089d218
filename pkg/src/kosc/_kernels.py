"""Numeric inner loops, JIT-compiled when numba is available.

Set ``KOSC_DISABLE_NUMBA=1`` to force the plain Python/numpy fallback
(same code, undecorated).  ``kosc.backend_name()`` reports which path
is active; ``benchmarks/bench_kernels.py`` compares the two.
"""

import math
import os

import numpy as np

_DISABLE = os.environ.get("KOSC_DISABLE_NUMBA", "0").lower() in ("1", "true", "yes")

if not _DISABLE:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

if not HAVE_NUMBA:

    def njit(*args, **kwargs):
        # decorator pass-through so the same source runs un-jitted
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(f):
            return f

        return wrap


def backend_name():
    return "numba" if HAVE_NUMBA else "numpy"


@njit(cache=True)
def tql2(diag, offdiag):
    """Eigen-decomposition of a real symmetric tridiagonal matrix.

    Implicit QL iteration with Wilkinson-type shifts.  Returns
    (eigenvalues ascending, eigenvector columns); orthogonality holds to
    machine precision because the eigenvector matrix is a product of
    plane rotations.
    """
    m = diag.shape[0]
    d = diag.copy()
    e = np.zeros(m)
    for i in range(m - 1):
        e[i] = offdiag[i]
    V = np.eye(m)
    eps = 2.220446049250313e-16
    for l in range(m):
        it = 0
        while True:
            # locate the first negligible subdiagonal at or after l
            mm = l
            while mm < m - 1:
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= eps * dd:
                    break
                mm += 1
            if mm == l:
                break
            it += 1
            if it > 64:
                raise RuntimeError("tridiagonal QL failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            if g >= 0.0:
                g = d[mm] - d[l] + e[l] / (g + r)
            else:
                g = d[mm] - d[l] + e[l] / (g - r)
            s = 1.0
            c = 1.0
            pp = 0.0
            broke = False
            for i in range(mm - 1, l - 1, -1):
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= pp
                    e[mm] = 0.0
                    broke = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - pp
                r = (d[i] - g) * s + 2.0 * c * bb
                pp = s * r
                d[i + 1] = g + pp
                g = c * r - bb
                for k in range(m):
                    f = V[k, i + 1]
                    V[k, i + 1] = s * V[k, i] + c * f
                    V[k, i] = c * V[k, i] - s * f
            if not broke:
                d[l] -= pp
                e[l] = g
                e[mm] = 0.0
    idx = np.argsort(d)
    d2 = np.empty(m)
    V2 = np.empty((m, m))
    for j in range(m):
        d2[j] = d[idx[j]]
        for k in range(m):
            V2[k, j] = V[k, idx[j]]
    return d2, V2


@njit(cache=True)
def spectral_point_table(a, b, xs):
    """Polynomial values q_n(x) for n = 0..N at points x that are
    eigenvalues of the Jacobi matrix tridiag(b, a, b).

    Shooting from both ends of the recurrence, glued where the forward
    and backward branches are both dominant.  Plain forward recurrence
    is unstable past the peak of a localized eigenvector; the glue
    keeps every entry accurate in a relative sense.
    """
    npts = xs.shape[0]
    n1 = a.shape[0]  # N + 1 rows
    out = np.empty((n1, npts))
    f = np.empty(n1)
    g = np.empty(n1)
    for j in range(npts):
        x = xs[j]
        f[0] = 1.0
        if n1 > 1:
            f[1] = (x - a[0]) / b[0]
        for n in range(1, n1 - 1):
            f[n + 1] = ((x - a[n]) * f[n] - b[n - 1] * f[n - 1]) / b[n]
        if n1 == 1:
            out[0, j] = 1.0
            continue
        g[n1 - 1] = 1.0
        g[n1 - 2] = (x - a[n1 - 1]) / b[n1 - 2]
        for n in range(n1 - 2, 0, -1):
            g[n - 1] = ((x - a[n]) * g[n] - b[n] * g[n + 1]) / b[n - 1]
        # glue index: both branches near the eigenvector peak
        kbest = 0
        pbest = -1.0
        for k in range(n1):
            pk = abs(f[k] * g[k])
            if pk > pbest and g[k] != 0.0:
                pbest = pk
                kbest = k
        scale = f[kbest] / g[kbest]
        for k in range(n1):
            out[k, j] = f[k] if k < kbest else g[k] * scale
    return out


@njit(cache=True)
def forward_table(a, b, xs, rows):
    """Plain forward three-term recurrence table, rows 0..rows-1.

    Suitable for general evaluation points at moderate degree; spectral
    points of the full matrix should use spectral_point_table.
    """
    npts = xs.shape[0]
    out = np.empty((rows, npts))
    for j in range(npts):
        x = xs[j]
        out[0, j] = 1.0
        if rows > 1:
            out[1, j] = (x - a[0]) / b[0]
        for n in range(1, rows - 1):
            out[n + 1, j] = ((x - a[n]) * out[n, j] - b[n - 1] * out[n - 1, j]) / b[n]
    return out


@njit(cache=True)
def monic_forward_table(beta_sq, xs, rows):
    """Monic-normalized table: pi_0 = 1, pi_{n+1} = x pi_n - beta_sq[n-1] pi_{n-1}.

    No divisions, so the family extends one degree past the matrix size.
    """
    npts = xs.shape[0]
    out = np.empty((rows, npts))
    for j in range(npts):
        x = xs[j]
        out[0, j] = 1.0
        if rows > 1:
            out[1, j] = x
        for n in range(1, rows - 1):
            out[n + 1, j] = x * out[n, j] - beta_sq[n - 1] * out[n - 1, j]
    return out


@njit(cache=True)
def hyp_sum(n, x, p, N):
    """Kahan-compensated terminating hypergeometric sum
    sum_k (-n)_k (-x)_k / (k! (-N)_k) p^{-k}."""
    total = 0.0
    comp = 0.0
    term = 1.0
    for k in range(n + 1):
        if k > 0:
            term = term * (-n + k - 1.0) * (-x + k - 1.0) / (k * (-N + k - 1.0)) / p
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total
