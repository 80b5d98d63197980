"""Cross-check suite: every dual route the package maintains, as runnable checks.

``run_checks("fast")`` covers closed-form identities and operator-path
equivalences; ``"full"`` adds the quadrature integrals and a seeded Monte
Carlo run. Each check reports its tolerance and the worst observed error so
failures carry numbers, not just a flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import StateVector, coherent_state, displacement_matrix, number_state
from .polarization import polarization_budget, polarization_budget_numerical
from .sampler import SamplerConfig, run_shots
from .statistics import (
    QuadratureGrid,
    conditional_beta_density,
    integrate_over_plane,
    loss_gain_split,
    photon_statistics_closed_form,
    photon_statistics_quadrature,
)
from .teleport import (
    end_to_end_projection,
    single_photon_beta_density,
    single_photon_output_closed_form,
    teleport_output,
    transfer_operator,
)

__all__ = ["CheckResult", "run_checks", "CHECK_LEVELS"]

CHECK_LEVELS = ("fast", "full")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    tolerance: float
    observed: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: observed {self.observed:.3e} (tolerance {self.tolerance:.1e})"
        if self.detail:
            text += f" [{self.detail}]"
        return text


def _inputs(cutoff: int) -> list[StateVector]:
    return [
        number_state(0, cutoff),
        number_state(1, cutoff),
        number_state(2, cutoff),
        coherent_state(0.5, cutoff),
    ]


def check_path_equivalence(cutoff: int = 48) -> CheckResult:
    """Transfer-operator route vs literal projection route, elementwise."""
    betas = [0.0, 1.0, -1.0, 1.0j, 0.7 + 0.3j]
    qs = [0.0, 0.33, 0.5, 0.82]
    worst = 0.0
    for q in qs:
        for beta in betas:
            for state in _inputs(cutoff):
                via_op = teleport_output(state, q, beta).amplitudes
                via_proj = end_to_end_projection(state, q, beta).amplitudes
                worst = max(worst, float(np.max(np.abs(via_op - via_proj))))
    return CheckResult("operator vs projection route", worst < 1e-9, 1e-9, worst)


def check_closed_form_output(cutoff: int = 48) -> CheckResult:
    """Displaced two-term closed form vs the operator route for |1>."""
    worst = 0.0
    for q in (0.0, 0.33, 0.5, 0.82):
        for beta in (0.0, 0.5, 1.0, -1.0, 1.0j, 0.7 + 0.3j, 2.0 - 1.0j):
            direct = teleport_output(number_state(1, cutoff), q, beta).amplitudes
            closed = single_photon_output_closed_form(q, beta, cutoff).amplitudes
            worst = max(worst, float(np.max(np.abs(direct - closed))))
    return CheckResult("single-photon closed form", worst < 1e-10, 1e-10, worst)


def check_density_closed_form(cutoff: int = 64) -> CheckResult:
    """norm^2 of T_q(beta)|1> vs the closed-form outcome density, relative."""
    worst = 0.0
    radii = np.arange(0.0, 4.0 + 1e-12, 0.25)
    for q in (0.2, 0.5, 0.8):
        for r in radii:
            numeric = teleport_output(number_state(1, cutoff), q, complex(r)).norm_sq()
            closed = single_photon_beta_density(q, complex(r))
            worst = max(worst, abs(numeric - closed) / closed)
    return CheckResult("outcome density closed form", worst < 1e-9, 1e-9, worst)


def check_hermiticity(cutoff: int = 48) -> CheckResult:
    worst = 0.0
    for q in (0.0, 0.33, 0.5, 0.82):
        for beta in (0.0, 1.0, 1.0j, 0.7 + 0.3j, -2.0 + 0.5j):
            worst = max(worst, transfer_operator(q, beta, cutoff).hermiticity_defect())
    return CheckResult("transfer operator hermitian", worst < 1e-12, 1e-12, worst)


def check_diagonal_at_zero(cutoff: int = 48) -> CheckResult:
    worst = 0.0
    for q in (0.0, 0.33, 0.5, 0.82):
        mat = transfer_operator(q, 0.0, cutoff).matrix
        off = mat - np.diag(np.diag(mat))
        worst = max(worst, float(np.max(np.abs(off))))
    return CheckResult("transfer operator diagonal at beta=0", worst == 0.0, 0.0, worst)


def check_displacement_unitary(cutoff: int = 64) -> CheckResult:
    worst = 0.0
    # Rows far below the cutoff: displaced basis states must fit under it.
    block = 20
    eye = np.eye(block)
    for alpha in (0.5, 1.0, 2.0, 1.0 + 1.0j, -0.3 + 1.2j):
        mat = displacement_matrix(alpha, cutoff).matrix
        prod = (mat @ mat.conj().T)[:block, :block]
        worst = max(worst, float(np.max(np.abs(prod - eye))))
    return CheckResult("displacement unitary on leading block", worst < 1e-8, 1e-8, worst)


def check_loss_gain_identities() -> CheckResult:
    worst = 0.0
    for q in np.arange(0.0, 0.995, 0.01):
        split = loss_gain_split(float(q))
        worst = max(worst, abs(split.p_loss + split.p_success + split.p_gain - 1.0))
        worst = max(worst, abs(split.p_loss - photon_statistics_closed_form(float(q), 0)))
        worst = max(worst, abs(split.p_success - photon_statistics_closed_form(float(q), 1)))
    return CheckResult("loss/success/gain closed-form identities", worst < 1e-15, 1e-15, worst)


def check_polarization_identities() -> CheckResult:
    worst = 0.0
    for q in np.arange(0.0, 0.995, 0.01):
        qf = float(q)
        budget = polarization_budget(qf)
        p0 = photon_statistics_closed_form(qf, 0)
        p1 = photon_statistics_closed_form(qf, 1)
        s = 0.5 * (1.0 + qf)
        worst = max(worst, abs(budget.p_trans - p1 * s))
        worst = max(worst, abs(budget.p_flip - p0 * p0))
        worst = max(worst, abs(budget.p_zero - p0 * s))
        worst = max(worst, abs(budget.total() - 1.0))
    return CheckResult("polarization factorization identities", worst < 1e-15, 1e-15, worst)


def check_ordering_invariants() -> CheckResult:
    ok = True
    detail = ""
    qs = np.arange(0.01, 0.995, 0.01)
    for q in qs:
        split = loss_gain_split(float(q))
        budget = polarization_budget(float(q))
        if split.p_gain < split.p_loss:
            ok, detail = False, f"p_gain < p_loss at q={q:.2f}"
            break
        others = (budget.p_trans, budget.p_zero, budget.p_multi)
        if not all(budget.p_flip < v for v in others):
            ok, detail = False, f"p_flip not smallest at q={q:.2f}"
            break
    return CheckResult("gain/loss and flip ordering", ok, 0.0, 0.0 if ok else 1.0, detail)


def check_photon_stats_quadrature(cutoff: int = 64) -> CheckResult:
    worst = 0.0
    for q in (0.2, 0.5, 0.8):
        dist = photon_statistics_quadrature(number_state(1, cutoff), q)
        for n in range(7):
            closed = photon_statistics_closed_form(q, n)
            worst = max(worst, abs(float(dist.probabilities[n]) - closed))
    return CheckResult("photon statistics quadrature vs closed form", worst < 1e-6, 1e-6, worst)


def check_conditional_integrals() -> CheckResult:
    worst = 0.0
    for q in (0.2, 0.5, 0.8):
        grid = QuadratureGrid.for_entanglement(q)
        i0 = integrate_over_plane(lambda b: conditional_beta_density(0, q, b), grid)
        i1 = integrate_over_plane(lambda b: conditional_beta_density(1, q, b), grid)
        split = loss_gain_split(q)
        worst = max(worst, abs(i0 - split.p_loss), abs(i1 - split.p_success))
    return CheckResult("conditional density integrals", worst < 1e-6, 1e-6, worst)


def check_polarization_quadrature(cutoff: int = 48) -> CheckResult:
    worst = 0.0
    for q in (0.33, 0.5, 0.82):
        closed = polarization_budget(q).as_tuple()
        numeric = polarization_budget_numerical(q, cutoff).as_tuple()
        worst = max(worst, max(abs(c - n) for c, n in zip(closed, numeric)))
    return CheckResult("polarization budget quadrature", worst < 1e-6, 1e-6, worst)


def check_vacuum_success(cutoff: int = 48) -> CheckResult:
    worst = 0.0
    for q in (0.33, 0.5, 0.82):
        dist = photon_statistics_quadrature(number_state(0, cutoff), q)
        worst = max(worst, abs(float(dist.probabilities[0]) - 0.5 * (1.0 + q)))
    return CheckResult("vacuum success probability (1+q)/2", worst < 1e-6, 1e-6, worst)


def check_monte_carlo(seed: int = 20260815, shots: int = 100_000) -> CheckResult:
    q = 0.5
    result = run_shots(SamplerConfig(master_seed=seed, shots=shots, q=q, cutoff=32), workers=4)
    split = loss_gain_split(q)
    worst_sigmas = 0.0
    for name, expected in zip(("loss", "success", "gain"), split.as_tuple()):
        observed = result.counts[name] / shots
        sigma = math.sqrt(expected * (1.0 - expected) / shots)
        worst_sigmas = max(worst_sigmas, abs(observed - expected) / sigma)
    repeat = run_shots(SamplerConfig(master_seed=seed, shots=shots, q=q, cutoff=32), workers=1)
    identical = repeat.records == result.records
    return CheckResult(
        "Monte Carlo frequencies and determinism",
        worst_sigmas < 3.0 and identical,
        3.0,
        worst_sigmas,
        "worker counts agree" if identical else "WORKER MISMATCH",
    )


_FAST_CHECKS = [
    check_path_equivalence,
    check_closed_form_output,
    check_hermiticity,
    check_diagonal_at_zero,
    check_displacement_unitary,
    check_loss_gain_identities,
    check_polarization_identities,
    check_ordering_invariants,
]

_FULL_CHECKS = _FAST_CHECKS + [
    check_density_closed_form,
    check_photon_stats_quadrature,
    check_conditional_integrals,
    check_polarization_quadrature,
    check_vacuum_success,
    check_monte_carlo,
]


def run_checks(level: str = "fast") -> list[CheckResult]:
    if level not in CHECK_LEVELS:
        raise ValueError(f"level must be one of {CHECK_LEVELS}, got {level!r}")
    checks = _FAST_CHECKS if level == "fast" else _FULL_CHECKS
    return [check() for check in checks]
