"""Two-photon correlation model for degenerate noncollinear type-I pair emission.

The idler photon passes a spectral phase filter exp(i*depth*cos(mod_frequency*omega)).
After the frequency integral the (unnormalized) pair amplitude at detection-time
delay tau = t2 - t1 collapses to a Bessel series

    A(tau) = sum_m  i^m J_m(depth) exp(i m mod_frequency omega0 / 2)
                    exp(-(tau - m*mod_frequency)^2 / T^2)

where omega0 is the pump angular frequency and T = 2 eps_perp sin(theta) / u is
the correlation time scale of the unfiltered pair.  The coincidence rate is
|A|^2, normalized so the unfiltered (depth 0) curve peaks at exactly 1.

Unit convention: times in fs, angular frequencies in rad/fs.  Lengths and
velocities are converted at the parameter boundary and never appear inside
the numerics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j_table
from .errors import ParameterError

LIGHT_SPEED_DEFAULT = 3.0e8  # m/s, pinned round value; override via PhysicalParams

_METHODS = ("series", "quadrature")


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PhysicalParams:
    """Source geometry and pump parameters.

    pump_wavelength      nm
    group_velocity       m/s, common signal/idler group velocity u
    beam_param           um, pump transverse Gaussian parameter (beam radius is beam_param/sqrt(2))
    emission_angle       degrees, common signal/idler emission angle, 0 < angle < 90
    crystal_half_length  mm, optional; only the longitudinal mismatch check looks at it
    light_speed          m/s
    """

    pump_wavelength: float
    group_velocity: float
    beam_param: float
    emission_angle: float
    crystal_half_length: float | None = None
    light_speed: float = LIGHT_SPEED_DEFAULT

    def __post_init__(self) -> None:
        for name in ("pump_wavelength", "group_velocity", "beam_param",
                     "emission_angle", "light_speed"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.pump_wavelength <= 0:
            raise ParameterError("pump_wavelength must be > 0")
        if self.light_speed <= 0:
            raise ParameterError("light_speed must be > 0")
        if not 0 < self.group_velocity < self.light_speed:
            raise ParameterError("group_velocity must satisfy 0 < u < light_speed")
        if self.beam_param <= 0:
            raise ParameterError("beam_param must be > 0")
        if not 0 < self.emission_angle < 90:
            # angle -> 0 makes the correlation time diverge
            raise ParameterError("emission_angle must be strictly between 0 and 90 degrees")
        if self.crystal_half_length is not None:
            chl = _require_finite("crystal_half_length", self.crystal_half_length)
            if chl <= 0:
                raise ParameterError("crystal_half_length must be > 0 when given")
            object.__setattr__(self, "crystal_half_length", chl)


#: Parameter set used throughout the bundled presets.
DEFAULT_PARAMS = PhysicalParams(
    pump_wavelength=350.0,
    group_velocity=2.0e8,
    beam_param=100.0,
    emission_angle=15.0,
)


@dataclass(frozen=True)
class CosinePhaseFilter:
    """Spectral phase filter depth*cos(mod_frequency*omega) applied to the idler.

    depth          rad, >= 0 (negative depth is the same filter by Bessel parity)
    mod_frequency  fs, >= 0
    """

    depth: float
    mod_frequency: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "depth", _require_finite("depth", self.depth))
        object.__setattr__(self, "mod_frequency",
                           _require_finite("mod_frequency", self.mod_frequency))
        if self.depth < 0:
            raise ParameterError("depth must be >= 0")
        if self.mod_frequency < 0:
            raise ParameterError("mod_frequency must be >= 0")


@dataclass(frozen=True)
class SeriesTruncation:
    """Symmetric series cutoff: orders -max_order..max_order are kept.

    tail_tolerance bounds the dropped coefficient mass
    sum_{|m|>max_order} |J_m(depth)|.
    """

    max_order: int
    tail_tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if self.max_order < 0:
            raise ParameterError("max_order must be >= 0")


@dataclass(frozen=True)
class GlobalPhaseLedger:
    """Constant unit-modulus factors dropped from the amplitude before |.|^2.

    The dropped factors are exp(-i*(omega0/2)*(t1+t2)) from the detection
    times and exp(i*(k1.r1 + k2.r2)) from the phase-matched propagation, with
    the detectors placed symmetrically (r1 = r2, so the frequency-dependent
    (nu/u)*(r1 - r2) leg vanishes).  Dropping them cannot change |A|^2; the
    quadrature path can re-apply them to assert exactly that.

    detection_time_sum   fs, t1 + t2
    path_phase           rad, k1.r1 + k2.r2 accumulated along the matched paths
    detector_separation  fs-equivalent path difference r1 - r2; fixed 0 here
    """

    detection_time_sum: float = 0.0
    path_phase: float = 0.0
    detector_separation: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("detection_time_sum", self.detection_time_sum)
        _require_finite("path_phase", self.path_phase)
        if self.detector_separation != 0.0:
            raise ParameterError("detector_separation is fixed at 0 (symmetric detectors)")

    def factor(self, pump_omega: float) -> complex:
        """The dropped constant, |factor| = 1 and independent of tau and nu."""
        return complex(np.exp(1j * (self.path_phase
                                    - 0.5 * pump_omega * self.detection_time_sum)))


def characteristic_time(params: PhysicalParams) -> float:
    """Correlation time scale T = 2*eps_perp*sin(theta)/u in fs.

    The unfiltered amplitude envelope is exp(-tau^2/T^2).
    """
    theta = math.radians(params.emission_angle)
    # um -> m gives 1e-6, s -> fs gives 1e15, net 1e9
    return 2.0e9 * params.beam_param * math.sin(theta) / params.group_velocity


def pump_angular_frequency(params: PhysicalParams) -> float:
    """Pump angular frequency 2*pi*c/lambda in rad/fs."""
    # nm -> m gives 1e-9, rad/s -> rad/fs gives 1e-15, net 1e-6
    return 2.0 * math.pi * params.light_speed / (params.pump_wavelength * 1e6)


def filter_phase(filt: CosinePhaseFilter, omega) -> float | np.ndarray:
    """Phase depth*cos(mod_frequency*omega) in rad, for omega in rad/fs (>= 0)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0) or not np.all(np.isfinite(omega)):
        raise ParameterError("omega must be finite and >= 0")
    out = filt.depth * np.cos(filt.mod_frequency * omega)
    return float(out) if out.ndim == 0 else out


def truncation_for(filt: CosinePhaseFilter, tol: float = 1e-12) -> SeriesTruncation:
    """Smallest usable symmetric cutoff for the given filter depth.

    Scans |J_m(depth)| for the first order where three consecutive values sit
    below tol, then extends until the dropped two-sided tail mass is below
    tol/2, which is what keeps the depth-independent identities (e.g. the
    mod_frequency = 0 reduction) good to tol in the rate.
    """
    if not 0 < tol <= 1e-3:
        raise ParameterError(f"tol must be in (0, 1e-3], got {tol!r}")
    if filt.depth == 0.0:
        return SeriesTruncation(max_order=0, tail_tolerance=tol)

    n = math.ceil(filt.depth) + 80
    while True:
        if n > 1000:
            raise ParameterError(f"filter depth {filt.depth} too large for series truncation")
        j = np.abs(bessel_j_table(filt.depth, n).values)
        below = j < tol
        candidates = np.nonzero(below[1:-2] & below[2:-1] & below[3:])[0]
        if candidates.size:
            m = int(candidates[0])
            break
        n *= 2
    # two-sided tail mass actually dropped; suffixes of the |J| scan
    tail = 2.0 * np.cumsum(j[::-1])[::-1]
    while m + 1 <= n and tail[m + 1] >= 0.5 * tol:
        m += 1
    return SeriesTruncation(max_order=m, tail_tolerance=tol)


def series_coefficients(filt: CosinePhaseFilter, trunc: SeriesTruncation,
                        pump_omega: float) -> tuple[np.ndarray, np.ndarray]:
    """Orders m = -M..M and coefficients i^m J_m(depth) e^{i m mod_frequency pump_omega/2}."""
    m_max = trunc.max_order
    table = bessel_j_table(filt.depth, m_max)
    orders = np.arange(-m_max, m_max + 1)
    j = table.values[np.abs(orders)].copy()
    j[(orders < 0) & (orders % 2 != 0)] *= -1.0
    # i^m looked up exactly instead of complex powers, which round
    i_pow = np.array([1.0, 1.0j, -1.0, -1.0j])[np.mod(orders, 4)]
    twist = np.exp(1j * orders * (0.5 * filt.mod_frequency * pump_omega))
    return orders, i_pow * j * twist


def amplitude_series(params: PhysicalParams, filt: CosinePhaseFilter,
                     trunc: SeriesTruncation, tau) -> complex | np.ndarray:
    """Bessel-series pair amplitude at delay tau (fs); scalar in, scalar out.

    Normalized so that depth = 0 gives exactly exp(-tau^2/T^2) + 0i.
    """
    T = characteristic_time(params)
    omega0 = pump_angular_frequency(params)
    orders, coeff = series_coefficients(filt, trunc, omega0)
    tau_arr = np.asarray(tau, dtype=float)
    shifts = (tau_arr[..., None] - orders * filt.mod_frequency) / T
    out = np.exp(-shifts * shifts) @ coeff
    return complex(out) if out.ndim == 0 else out


def count_rate(params: PhysicalParams, filt: CosinePhaseFilter,
               trunc: SeriesTruncation, tau) -> float | np.ndarray:
    """Normalized coincidence rate |A(tau)|^2; equals exp(-2 tau^2/T^2) at depth 0."""
    a = amplitude_series(params, filt, trunc, tau)
    out = np.abs(np.asarray(a)) ** 2
    return float(out) if out.ndim == 0 else out


@dataclass
class CorrelationCurve:
    """Sampled coincidence-rate curve over a tau grid (fs)."""

    tau_grid: np.ndarray
    rates: np.ndarray
    method: str
    params: PhysicalParams
    filter: CosinePhaseFilter

    def __post_init__(self) -> None:
        self.tau_grid = np.asarray(self.tau_grid, dtype=float)
        self.rates = np.asarray(self.rates, dtype=float)
        if self.method not in _METHODS:
            raise ParameterError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.tau_grid.ndim != 1 or self.tau_grid.size == 0:
            raise ParameterError("tau_grid must be a non-empty 1-d array")
        if self.rates.shape != self.tau_grid.shape:
            raise ParameterError("rates and tau_grid must have the same length")
        if not np.all(np.isfinite(self.tau_grid)):
            raise ParameterError("tau_grid must be finite")
        if np.any(np.diff(self.tau_grid) <= 0):
            raise ParameterError("tau_grid must be strictly increasing")
        if np.any(self.rates < 0):
            raise ParameterError("rates must be non-negative")


def sample_curve(params: PhysicalParams, filt: CosinePhaseFilter, tau_grid,
                 method: str = "series", trunc: SeriesTruncation | None = None,
                 settings=None) -> CorrelationCurve:
    """Evaluate the rate over tau_grid by the series or by direct quadrature.

    Both methods share the depth-0 peak-1 normalization, so their curves are
    directly comparable.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if method not in _METHODS:
        raise ParameterError(f"method must be one of {_METHODS}, got {method!r}")
    if tau_grid.ndim != 1 or tau_grid.size == 0:
        raise ParameterError("tau_grid must be a non-empty 1-d array")
    if method == "series":
        if trunc is None:
            trunc = truncation_for(filt)
        rates = count_rate(params, filt, trunc, tau_grid)
    else:
        from .quadrature import rate_grid  # deferred: quadrature imports this module

        rates = rate_grid(params, filt, tau_grid, settings)
    return CorrelationCurve(tau_grid=tau_grid, rates=np.asarray(rates),
                            method=method, params=params, filter=filt)
