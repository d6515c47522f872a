"""Direct numerical integration of the pre-series pair amplitude.

The amplitude is evaluated as the frequency integral

    A(tau) = integral dnu  e^{i nu tau} e^{-(T/2)^2 nu^2}
                           e^{i depth cos(mod_frequency (omega0/2 - nu))}

over a truncated symmetric window, by a composite trapezoid rule whose point
count doubles until two successive estimates agree.  Nothing here uses the
Bessel expansion, so agreement with the series path is a genuine two-route
check of the closed form, including the sign structure of its exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, ParameterError
from .model import (
    CosinePhaseFilter,
    GlobalPhaseLedger,
    PhysicalParams,
    SeriesTruncation,
    characteristic_time,
    count_rate,
    pump_angular_frequency,
    truncation_for,
)

_TAU_CHUNK = 256

#: (depth, mod_frequency/fs) grid exercised by the `validate` command.
VALIDATION_DEPTHS = (0.0, 1.0, 2.0, 5.0, 10.0)
VALIDATION_MOD_FREQUENCIES = (0.0, 25.0, 50.0, 53.0, 300.0, 1000.0)


@dataclass(frozen=True)
class QuadratureSettings:
    """Window and refinement policy for the frequency integral.

    halfwidth_folds  window is |nu| <= 2*folds/T, where the Gaussian weight
                     has decayed to e^{-folds^2}
    initial_points   coarsest interval count (raised automatically when the
                     integrand oscillates faster than it can resolve)
    max_points       refinement budget
    rel_tolerance    successive-estimate agreement target, relative to the
                     larger of the local amplitude and the depth-0 peak scale
    """

    halfwidth_folds: float = 6.0
    initial_points: int = 1024
    max_points: int = 2**20
    rel_tolerance: float = 1e-11

    def __post_init__(self) -> None:
        if not self.halfwidth_folds > 0:
            raise ParameterError("halfwidth_folds must be > 0")
        if self.initial_points < 64:
            raise ParameterError("initial_points must be >= 64")
        if self.max_points < self.initial_points:
            raise ParameterError("max_points must be >= initial_points")
        if not 0 < self.rel_tolerance <= 1e-6:
            raise ParameterError("rel_tolerance must be in (0, 1e-6]")


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass
class QuadratureResult:
    """Converged amplitude with its self-consistency error estimate."""

    value: complex
    error_estimate: float
    points: int
    diff_history: tuple[float, ...]


@dataclass
class DeviationReport:
    """Worst pointwise rate disagreement between the two evaluation routes."""

    max_abs_diff: float
    tau_at_max: float


def nu_halfwidth(params: PhysicalParams, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Integration window edge 2*folds/T in rad/fs."""
    return 2.0 * settings.halfwidth_folds / characteristic_time(params)


def integrand(params: PhysicalParams, filt: CosinePhaseFilter, nu: float, tau: float,
              phases: GlobalPhaseLedger | None = None) -> complex:
    """One integrand value at frequency detuning nu (rad/fs) and delay tau (fs)."""
    T = characteristic_time(params)
    omega0 = pump_angular_frequency(params)
    val = np.exp(1j * nu * tau - (0.5 * T * nu) ** 2
                 + 1j * filt.depth * np.cos(filt.mod_frequency * (0.5 * omega0 - nu)))
    if phases is not None:
        val = val * phases.factor(omega0)
    return complex(val)


def _required_intervals(nu_max: float, taus: np.ndarray, filt: CosinePhaseFilter,
                        settings: QuadratureSettings) -> int:
    # Resolution guard: the coarse level must already sample the fastest
    # e^{i nu tau} / filter oscillation, or the doubling check can lie.
    fastest = max(float(np.max(np.abs(taus))) if taus.size else 0.0, filt.mod_frequency)
    guard = 40.0 * nu_max * fastest / (2.0 * math.pi)
    n = max(settings.initial_points, int(math.floor(guard)) + 1)
    return n + (n % 2)  # even interval counts nest under halving


def _amplitude_grid(params: PhysicalParams, filt: CosinePhaseFilter, taus: np.ndarray,
                    settings: QuadratureSettings,
                    phases: GlobalPhaseLedger | None = None
                    ) -> tuple[np.ndarray, np.ndarray, int, tuple[float, ...]]:
    """Raw (unnormalized) amplitudes over a tau grid, refined to tolerance.

    Returns (values, per-tau estimate differences, interval count, history of
    per-level worst relative differences).
    """
    taus = np.asarray(taus, dtype=float)
    T = characteristic_time(params)
    omega0 = pump_angular_frequency(params)
    nu_max = nu_halfwidth(params, settings)
    # convergence floor: the depth-0 peak integral, so near-zero tails are
    # judged against the curve scale rather than against themselves
    scale_floor = 2.0 * math.sqrt(math.pi) / T

    n_coarse = _required_intervals(nu_max, taus, filt, settings)
    n = 2 * n_coarse
    if n > settings.max_points:
        raise ConvergenceError(
            f"resolving the integrand needs {n} intervals, over the budget of "
            f"{settings.max_points}; raise max_points or shrink the tau window")

    history: list[float] = []
    while True:
        nus = np.linspace(-nu_max, nu_max, n + 1)
        w = np.exp(-(0.5 * T * nus) ** 2
                   + 1j * filt.depth * np.cos(filt.mod_frequency * (0.5 * omega0 - nus)))
        if phases is not None:
            w = w * phases.factor(omega0)
        h = 2.0 * nu_max / n
        wt_fine = w * h
        wt_fine[0] *= 0.5
        wt_fine[-1] *= 0.5
        wt_coarse = w[::2] * (2.0 * h)
        wt_coarse[0] *= 0.5
        wt_coarse[-1] *= 0.5

        fine = np.empty(taus.size, dtype=complex)
        coarse = np.empty(taus.size, dtype=complex)
        for lo in range(0, taus.size, _TAU_CHUNK):
            hi = min(lo + _TAU_CHUNK, taus.size)
            phase = np.exp(1j * taus[lo:hi, None] * nus[None, :])
            fine[lo:hi] = phase @ wt_fine
            coarse[lo:hi] = phase[:, ::2] @ wt_coarse

        diff = np.abs(fine - coarse)
        rel = diff / np.maximum(np.abs(fine), scale_floor)
        worst = float(np.max(rel))
        history.append(worst)
        if worst < settings.rel_tolerance:
            return fine, diff, n, tuple(history)
        if 2 * n > settings.max_points:
            k = int(np.argmax(rel))
            raise ConvergenceError(
                f"no convergence at {n} intervals (budget {settings.max_points}): "
                f"last estimates {complex(coarse[k])} vs {complex(fine[k])} at tau={taus[k]} fs")
        n *= 2


@lru_cache(maxsize=64)
def _baseline_raw(params: PhysicalParams, settings: QuadratureSettings) -> complex:
    """Raw depth-0, tau=0 integral; the shared normalization anchor."""
    values, _, _, _ = _amplitude_grid(params, CosinePhaseFilter(0.0, 0.0),
                                      np.array([0.0]), settings)
    return complex(values[0])


def amplitude_quadrature(params: PhysicalParams, filt: CosinePhaseFilter, tau: float,
                         settings: QuadratureSettings = DEFAULT_SETTINGS,
                         phases: GlobalPhaseLedger | None = None) -> QuadratureResult:
    """Normalized amplitude at one delay, by adaptive point doubling.

    The raw integral is divided by the depth-0, tau=0 integral computed with
    the same rule, so the series and quadrature routes share one baseline.
    """
    values, diffs, n, history = _amplitude_grid(params, filt, np.array([float(tau)]),
                                                settings, phases)
    base = _baseline_raw(params, settings)
    return QuadratureResult(value=complex(values[0] / base),
                            error_estimate=float(diffs[0] / abs(base)),
                            points=n, diff_history=history)


def rate_grid(params: PhysicalParams, filt: CosinePhaseFilter, tau_grid,
              settings: QuadratureSettings | None = None,
              phases: GlobalPhaseLedger | None = None) -> np.ndarray:
    """Normalized rates |A|^2 over a tau grid, one refinement for the whole grid."""
    if settings is None:
        settings = DEFAULT_SETTINGS
    taus = np.asarray(tau_grid, dtype=float)
    if taus.size == 0:
        raise ParameterError("tau_grid must be non-empty")
    values, _, _, _ = _amplitude_grid(params, filt, taus, settings, phases)
    base = _baseline_raw(params, settings)
    return np.abs(values / base) ** 2


def phase_mismatch_linearized(params: PhysicalParams, nu: float) -> float:
    """Longitudinal mismatch k0 - k1 cos(theta) - k2 cos(theta), in rad/mm.

    Under the linearized degenerate expansion k1 = k* + nu/u, k2 = k* - nu/u
    with exact matching k0 = 2 k* cos(theta), the nu/u legs cancel at equal
    emission angles, so the mismatch vanishes for every nu and the
    finite-crystal sinc factor is a constant.  The cancellation is evaluated
    coefficient by coefficient (the magnitude of k* is irrelevant to it and
    would otherwise need a dispersion model), so the returned value is an
    exact 0.0 rather than a rounding residue.
    """
    nu = float(nu)
    if not math.isfinite(nu):
        raise ParameterError("nu must be finite")
    cos_t = math.cos(math.radians(params.emission_angle))
    kstar_coeff = 2.0 * cos_t - cos_t - cos_t  # exact 0.0 in floating point
    u_mm_per_fs = params.group_velocity * 1e-12
    nu_coeff = (1.0 / u_mm_per_fs - 1.0 / u_mm_per_fs) * cos_t  # exact 0.0
    kstar_mag = 0.5 * pump_angular_frequency(params) / (params.light_speed * 1e-12)
    return kstar_coeff * kstar_mag + nu_coeff * nu


def comparison_grid(params: PhysicalParams, filt: CosinePhaseFilter,
                    spacing: float = 10.0,
                    trunc: SeriesTruncation | None = None) -> np.ndarray:
    """Uniform tau grid covering every lobe of the series with ~5T margin."""
    if spacing <= 0:
        raise ParameterError("spacing must be > 0")
    if trunc is None:
        trunc = truncation_for(filt)
    halfwidth = trunc.max_order * filt.mod_frequency + 5.0 * characteristic_time(params)
    n = math.ceil(halfwidth / spacing)
    return np.arange(-n, n + 1) * spacing


def compare_methods(params: PhysicalParams, filt: CosinePhaseFilter, tau_grid,
                    settings: QuadratureSettings | None = None,
                    trunc: SeriesTruncation | None = None) -> DeviationReport:
    """Worst |rate_series - rate_quadrature| over the grid and where it occurs."""
    taus = np.asarray(tau_grid, dtype=float)
    if taus.size == 0:
        raise ParameterError("tau_grid must be non-empty")
    if trunc is None:
        trunc = truncation_for(filt)
    series = np.asarray(count_rate(params, filt, trunc, taus))
    quad = rate_grid(params, filt, taus, settings)
    diff = np.abs(series - quad)
    k = int(np.argmax(diff))
    return DeviationReport(max_abs_diff=float(diff[k]), tau_at_max=float(taus[k]))
