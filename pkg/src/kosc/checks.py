"""Verification suite: every structural identity of the model, evaluated
at one parameter point or swept over a grid, with explicit tolerances.

Each entry records the measured residual, the tolerance it must meet,
and a pass flag; informational entries (calibration records, known
misprints in the reference derivation) carry no flag.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import coherent, grid_oscillator, oscillator
from .polynomials import (
    OscillatorParams,
    difference_residual_matrix,
    krawtchouk,
    lattice_table,
    orthogonality_gram,
    psi_roots,
    recurrence_coefficients,
)

__all__ = ["CheckEntry", "CheckReport", "run_point_checks", "run_sweep", "DEFAULT_SWEEP"]

DEFAULT_SWEEP = {
    "p": (0.1, 0.3, 0.5, 0.7, 0.9),
    "N": (1, 2, 4, 8, 16, 32, 64),
}

COMMUTATOR_NOTE = (
    "commutator_diag = N - 2n "
    "(the reference derivation prints the constant as N - 1; the matrix "
    "product of the ladder operators gives N)"
)
GRID_SPECTRUM_NOTE = (
    "grid Hamiltonian eigenvalues read as n + 1/2 "
    "(the reference derivation displays 'n = 1/2'; the ladder "
    "factorization forces n + 1/2)"
)


@dataclass(frozen=True)
class CheckEntry:
    name: str
    value: float | None
    tolerance: float | None
    passed: bool | None
    note: str = ""

    def as_dict(self):
        return {
            "name": self.name,
            "value": self.value,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class CheckReport:
    entries: list = field(default_factory=list)

    def add(self, name, value, tolerance, note=""):
        self.entries.append(
            CheckEntry(
                name=name,
                value=float(value),
                tolerance=float(tolerance),
                passed=bool(value <= tolerance),
                note=note,
            )
        )

    def add_flag(self, name, passed, value=None, tolerance=None, note=""):
        self.entries.append(
            CheckEntry(name=name, value=value, tolerance=tolerance, passed=passed, note=note)
        )

    def add_note(self, name, note):
        self.entries.append(
            CheckEntry(name=name, value=None, tolerance=None, passed=None, note=note)
        )

    def extend(self, other):
        self.entries.extend(other.entries)

    @property
    def passed(self):
        return all(e.passed for e in self.entries if e.passed is not None)

    def failures(self):
        return [e for e in self.entries if e.passed is False]


def _maxabs(m):
    return float(np.max(np.abs(m)))


def _polynomial_checks(params, report):
    N = params.N
    G, D = orthogonality_gram(params)
    eye = np.eye(N + 1)
    report.add("gram_identity", _maxabs(G - eye), 1e-10)
    report.add("dual_gram_identity", _maxabs(D - eye), 1e-10)

    if N <= 32:
        T = lattice_table(params)
        rowmax = np.max(np.abs(T), axis=1)
        worst = 0.0
        for n in range(N + 1):
            scale = math.sqrt(math.comb(N, n) * (params.p / (1.0 - params.p)) ** n)
            for x in range(N + 1):
                direct = scale * krawtchouk(n, x, params)
                worst = max(worst, abs(direct - T[n, x]) / rowmax[n])
        report.add("recurrence_vs_direct", worst, 1e-9)
    else:
        report.add_note(
            "recurrence_vs_direct",
            "direct hypergeometric cross-check is specified for N <= 32; skipped",
        )

    report.add("difference_equation", _maxabs(difference_residual_matrix(params)), 1e-10)

    roots = psi_roots(params).eigenvalues
    scale = max(1.0, float(np.max(np.abs(roots))))
    report.add("psi_root_symmetry", _maxabs(roots + roots[::-1]) / scale, 1e-11)
    gap = float(np.min(np.diff(roots))) if N >= 1 else 1.0
    report.add_flag(
        "psi_roots_simple",
        gap > 0.0,
        value=gap,
        note="minimal root gap; must be positive (all roots simple)",
    )

    if params.p == 0.5:
        a = recurrence_coefficients(params).a
        report.add("diagonal_symmetry_at_half", _maxabs(a - N / 2.0), 0.0)


def _oscillator_checks(params, report):
    N = params.N
    X, P = oscillator.build_xp(params)
    Xt, Pt, H = oscillator.build_quadratures(params)
    herm = max(
        _maxabs(X - X.T),
        _maxabs(P - P.conj().T),
        _maxabs(Xt - Xt.T),
        _maxabs(Pt - Pt.conj().T),
        _maxabs(H - H.T),
    )
    report.add("hermiticity", herm, 1e-12)
    report.add("quadrature_zero_diagonal", _maxabs(np.diag(Xt)), 0.0)

    a_plus, a_minus, number = oscillator.build_ladder(params)
    report.add("ladder_adjoint", _maxabs(a_minus - a_plus.T), 0.0)

    c = 1.0 / (2.0 * math.sqrt(params.p * (1.0 - params.p)))
    report.add(
        "ladder_from_quadratures",
        max(_maxabs(c * (Xt + 1j * Pt) - a_plus), _maxabs(c * (Xt - 1j * Pt) - a_minus)),
        1e-12,
    )

    for q in (0.3, 0.7):
        other = oscillator.build_ladder(OscillatorParams(p=q, N=N))[0]
        report.add(f"ladder_p_independence_{q}", _maxabs(other - a_plus), 1e-12)

    report.add(
        "hamiltonian_factorization",
        _maxabs(H - 0.5 * (a_plus @ a_minus + a_minus @ a_plus)),
        1e-12,
    )

    computed, formula = oscillator.spectrum_check(params)
    report.add("spectrum_matches_formula", _maxabs(computed - np.sort(formula)), 1e-10)
    report.add(
        "spectrum_edge_degeneracy",
        max(abs(formula[0] - N / 2.0), abs(formula[N] - N / 2.0)),
        0.0,
    )

    comm = oscillator.commutator_check(params)
    report.add(
        "commutator_diagonal",
        max(_maxabs(comm.diagonal - comm.expected), comm.max_offdiag),
        1e-12,
        note=COMMUTATOR_NOTE,
    )


def _grid_checks(params, report):
    N = params.N
    H = grid_oscillator.build_hamiltonian(params)
    report.add("grid_hermiticity", _maxabs(H - H.T), 1e-11)

    psi = grid_oscillator.krawtchouk_functions(params)
    n = np.arange(N + 1, dtype=float)
    action = H @ psi.T - psi.T * (n + 0.5)[None, :]
    report.add("grid_eigenfunction_residual", _maxabs(action), 1e-9)

    a_plus, a_minus, a0 = grid_oscillator.build_ladder(params)
    report.add(
        "grid_factorization",
        _maxabs(0.5 * (a_plus @ a_minus - a_minus @ a_plus) + 0.5 * (N + 1) * np.eye(N + 1) - H),
        1e-10,
    )
    so3 = max(
        _maxabs(a0 @ a_plus - a_plus @ a0 - a_plus),
        _maxabs(a0 @ a_minus - a_minus @ a0 + a_minus),
    )
    report.add("grid_so3_commutators", so3, 1e-10)

    T = grid_oscillator.build_intertwiner(params)
    report.add("grid_a0_diagonal", _maxabs(T.T @ a0 @ T - np.diag(n - N / 2.0)), 1e-10)

    rel = grid_oscillator.relation_check(params)
    report.add("grid_spectrum", rel.spectrum_deviation, 1e-9, note=GRID_SPECTRUM_NOTE)
    report.add("intertwiner_unitary", rel.unitarity, 1e-10)
    report.add("intertwiner_diagonalizes", rel.diagonalization, 1e-9)
    report.add("spectral_relation_scalar", rel.scalar_residual, 1e-12)
    report.add("spectral_relation_matrix", rel.matrix_residual, 1e-8)


_POINT_ZS = (0.5, 1.0 * cmath.exp(0.25j * math.pi), 2.0 * cmath.exp(0.5j * math.pi))


def _coherent_checks(params, report):
    N = params.N
    norm_dev = 0.0
    for z in _POINT_ZS:
        st = coherent.displacement_state(z, params)
        norm_dev = max(norm_dev, abs(np.linalg.norm(st.amplitudes) - 1.0))
    report.add("displacement_unit_norm", norm_dev, 1e-12)

    vac = coherent.displacement_state(0.0, params).amplitudes
    e0 = np.zeros(N + 1, dtype=complex)
    e0[0] = 1.0
    report.add("displacement_zero_label", _maxabs(vac - e0), 1e-12)

    tiny = coherent.displacement_state(1e-6, params).amplitudes
    report.add("displacement_continuity", float(np.linalg.norm(tiny - e0)), 1e-5)

    z0, phi = 0.8 * cmath.exp(0.2j), 0.9
    base = coherent.displacement_state(z0, params).amplitudes
    rot = coherent.displacement_state(z0 * cmath.exp(1j * phi), params).amplitudes
    twist = np.exp(1j * phi * np.arange(N + 1))
    report.add("displacement_phase_covariance", _maxabs(rot - twist * base), 1e-10)

    if N <= 32:
        worst = 0.0
        for z in _POINT_ZS:
            d = coherent.aligned_distance(
                coherent.displacement_state(z, params), coherent.root_sum_state(z, params)
            )
            worst = max(worst, d)
        report.add("root_sum_matches_displacement", worst, 1e-7)
    else:
        report.add_note(
            "root_sum_matches_displacement",
            "root-sum cross-check is run for N <= 32; skipped",
        )

    pe = coherent.power_expansion_coefficients(params, n_max=12)
    report.add("generator_power_parity", pe.parity_violation, 1e-12)
    report.add("generator_power_z_independence", pe.z_independence, 1e-9)

    spin_dev = abs(np.linalg.norm(coherent.spin_state(1.0 + 0.3j, params).amplitudes) - 1.0)
    report.add("spin_unit_norm", spin_dev, 1e-12)

    basis = coherent.phase_basis(0.0, params).states
    report.add("phase_basis_orthonormal", _maxabs(basis.conj().T @ basis - np.eye(N + 1)), 1e-12)
    ph = coherent.phase_coherent_state(0.7, 0.0, params)
    report.add("phase_state_unit_norm", abs(np.linalg.norm(ph.amplitudes) - 1.0), 1e-12)


def global_checks() -> CheckReport:
    """Parameter-independent entries: the two-level closed form, the
    family distinctness sample, calibration records and known misprints."""
    report = CheckReport()

    worst = 0.0
    for p in (0.3, 0.5, 0.8):
        params = OscillatorParams(p=p, N=1)
        for z in (0.4, 1.0 * cmath.exp(0.9j), 2.3 * cmath.exp(-0.4j)):
            cf = coherent.two_level_closed_form(z)
            worst = max(worst, _maxabs(coherent.displacement_state(z, params).amplitudes - cf))
    report.add("two_level_closed_form", worst, 1e-12)

    params = OscillatorParams(p=0.5, N=4)
    disp = coherent.displacement_state(1.0, params)
    spin = coherent.spin_state(1.0, params)
    phase = coherent.phase_coherent_state(1.0, 0.0, params)
    for name, st in (("spin", spin), ("phase", phase)):
        ov = abs(coherent.overlap(st, disp))
        report.add_flag(
            f"distinct_from_displacement_{name}",
            ov < 1.0 - 1e-3,
            value=ov,
            tolerance=1.0 - 1e-3,
            note="family overlap with the displacement state at z=1, xi=1, N=4, p=1/2 must stay below 1 - 1e-3",
        )

    cal = coherent.calibration_record(params)
    report.add_note(
        "root_sum_calibration",
        f"root scaling '{cal['root_scaling']}' selected by the two-level closed form; "
        f"weights: {cal['weights']} ({cal['weights_note']})",
    )
    report.add_note("commutator_misprint", COMMUTATOR_NOTE)
    report.add_note("grid_spectrum_misprint", GRID_SPECTRUM_NOTE)
    return report


def run_point_checks(params: OscillatorParams, include_global=True) -> CheckReport:
    """All verification entries at one (p, N)."""
    report = CheckReport()
    _polynomial_checks(params, report)
    _oscillator_checks(params, report)
    _grid_checks(params, report)
    _coherent_checks(params, report)
    if include_global:
        report.extend(global_checks())
    return report


def run_sweep(ps=None, ns=None) -> CheckReport:
    """Point checks over the default parameter grid plus the global
    entries once; entry names get a (p, N) suffix."""
    ps = DEFAULT_SWEEP["p"] if ps is None else ps
    ns = DEFAULT_SWEEP["N"] if ns is None else ns
    report = CheckReport()
    for p in ps:
        for N in ns:
            point = run_point_checks(OscillatorParams(p=p, N=N), include_global=False)
            for e in point.entries:
                report.entries.append(
                    CheckEntry(
                        name=f"{e.name}[p={p},N={N}]",
                        value=e.value,
                        tolerance=e.tolerance,
                        passed=e.passed,
                        note=e.note,
                    )
                )
    report.extend(global_checks())
    return report
