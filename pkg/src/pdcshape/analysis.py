"""Observables of correlation curves: peak delay, sweeps, lobes, total yield."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks, peak_prominences

from .errors import (
    InsufficientDataError,
    ParameterError,
    ResolutionError,
    SearchError,
    WindowError,
)
from .model import (
    CorrelationCurve,
    CosinePhaseFilter,
    PhysicalParams,
    SeriesTruncation,
    characteristic_time,
    count_rate,
    sample_curve,
    truncation_for,
)

_RATE_TIE = 1e-12  # rates closer than this are treated as tied


@dataclass
class TauMaxResult:
    """Location of the global rate maximum and how tightly it was bracketed."""

    tau_max: float
    rate_at_max: float
    refinement_width: float


@dataclass
class SweepResult:
    """Peak delay against filter modulation frequency."""

    beta_values: np.ndarray
    tau_max_values: np.ndarray
    rates: np.ndarray

    def __post_init__(self) -> None:
        self.beta_values = np.asarray(self.beta_values, dtype=float)
        self.tau_max_values = np.asarray(self.tau_max_values, dtype=float)
        self.rates = np.asarray(self.rates, dtype=float)
        if not (self.beta_values.shape == self.tau_max_values.shape == self.rates.shape):
            raise ParameterError("sweep arrays must have equal lengths")
        if np.any(np.diff(self.beta_values) <= 0):
            raise ParameterError("beta_values must be strictly increasing")


@dataclass(frozen=True)
class Lobe:
    center: float
    height: float
    prominence: float


@dataclass
class LobeReport:
    """Strict local maxima of a sampled curve, tallest-first merged within T/4."""

    lobes: list[Lobe]
    threshold: float


def _best_index(xs: np.ndarray, ys: np.ndarray) -> int:
    """Argmax with ties (within _RATE_TIE) broken by smallest |x|, then negative x."""
    cand = np.nonzero(ys >= np.max(ys) - _RATE_TIE)[0]
    order = np.lexsort((np.sign(xs[cand]), np.abs(xs[cand])))
    return int(cand[order[0]])


def find_tau_max(params: PhysicalParams, filt: CosinePhaseFilter,
                 search_halfwidth: float | None = None, grid_step: float = 0.5,
                 refine_tol: float = 0.01,
                 trunc: SeriesTruncation | None = None) -> TauMaxResult:
    """Locate the delay of maximum coincidence rate.

    A coarse scan over a symmetric grid (always containing tau = 0) brackets
    the global maximum, which is then refined by repeated 9-point bracketing
    plus a final parabolic fit down to refine_tol.  Rate ties within 1e-12 go
    to the smallest |tau| and then to negative tau.  The default window
    max_order*mod_frequency + 5T covers every series lobe; if the scan peaks
    on the window edge the window was too small and a SearchError is raised.
    """
    if not 0 < grid_step <= 1.0:
        raise ParameterError("grid_step must be in (0, 1] fs")
    if not 0 < refine_tol <= 0.01:
        raise ParameterError("refine_tol must be in (0, 0.01] fs")
    if trunc is None:
        trunc = truncation_for(filt)
    if search_halfwidth is None:
        search_halfwidth = (trunc.max_order * filt.mod_frequency
                            + 5.0 * characteristic_time(params))
    if search_halfwidth <= grid_step:
        raise ParameterError("search_halfwidth must exceed grid_step")

    n = math.ceil(search_halfwidth / grid_step)
    taus = np.arange(-n, n + 1) * grid_step
    rates = np.asarray(count_rate(params, filt, trunc, taus))
    i = _best_index(taus, rates)
    if i == 0 or i == taus.size - 1:
        raise SearchError(
            f"rate maximum at the window edge (tau = {taus[i]} fs); widen search_halfwidth")

    lo = taus[i] - grid_step
    hi = taus[i] + grid_step
    xs = np.linspace(lo, hi, 9)
    ys = np.asarray(count_rate(params, filt, trunc, xs))
    j = _best_index(xs, ys)
    while hi - lo > refine_tol:
        lo = xs[max(j - 1, 0)]
        hi = xs[min(j + 1, xs.size - 1)]
        xs = np.linspace(lo, hi, 9)
        ys = np.asarray(count_rate(params, filt, trunc, xs))
        j = _best_index(xs, ys)
    final_lo = xs[max(j - 1, 0)]
    final_hi = xs[min(j + 1, xs.size - 1)]

    best_x = float(xs[j])
    best_y = float(ys[j])
    if 0 < j < xs.size - 1:
        yl, y0, yr = ys[j - 1], ys[j], ys[j + 1]
        curv = yl + yr - 2.0 * y0
        if curv < 0.0:
            step = xs[j] - xs[j - 1]
            vertex = xs[j] + 0.5 * step * (yl - yr) / curv
            vertex = min(max(vertex, final_lo), final_hi)
            y_vertex = float(count_rate(params, filt, trunc, vertex))
            if y_vertex >= best_y:
                best_x, best_y = float(vertex), y_vertex
    return TauMaxResult(tau_max=best_x, rate_at_max=best_y,
                        refinement_width=float(final_hi - final_lo))


def sweep_beta(params: PhysicalParams, alpha: float, beta_start: float,
               beta_end: float, beta_step: float, *,
               search_halfwidth: float | None = None, grid_step: float = 0.5,
               refine_tol: float = 0.01, trunc_tol: float = 1e-12) -> SweepResult:
    """find_tau_max at each modulation frequency in [beta_start, beta_end]."""
    if not 0 <= beta_start < beta_end:
        raise ParameterError("need 0 <= beta_start < beta_end")
    if beta_step <= 0:
        raise ParameterError("beta_step must be > 0")
    count = int(math.floor((beta_end - beta_start) / beta_step + 1e-9)) + 1
    betas = beta_start + np.arange(count) * beta_step
    # the cutoff depends only on depth, so compute it once for the whole sweep
    trunc = truncation_for(CosinePhaseFilter(alpha, 0.0), trunc_tol)
    tau_maxes = np.empty(count)
    peak_rates = np.empty(count)
    for k, b in enumerate(betas):
        try:
            res = find_tau_max(params, CosinePhaseFilter(alpha, float(b)),
                               search_halfwidth=search_halfwidth,
                               grid_step=grid_step, refine_tol=refine_tol, trunc=trunc)
        except SearchError as exc:
            raise SearchError(f"{exc} (at mod_frequency {b} fs)") from exc
        tau_maxes[k] = res.tau_max
        peak_rates[k] = res.rate_at_max
    return SweepResult(beta_values=betas, tau_max_values=tau_maxes, rates=peak_rates)


def oscillation_period(sweep: SweepResult) -> float:
    """Dominant period of tau_max(beta), from same-direction zero crossings.

    Crossing positions are linearly interpolated between the nearest nonzero
    samples; spacings between successive up-crossings and successive
    down-crossings are pooled and averaged.
    """
    x = sweep.beta_values
    y = sweep.tau_max_values
    nz = np.nonzero(y != 0.0)[0]
    crossings: list[tuple[float, int]] = []
    if nz.size >= 2:
        s = np.sign(y[nz])
        for k in np.nonzero(s[:-1] * s[1:] < 0)[0]:
            i, j = int(nz[k]), int(nz[k + 1])
            xc = x[i] - y[i] * (x[j] - x[i]) / (y[j] - y[i])
            crossings.append((float(xc), int(s[k + 1])))
    if len(crossings) < 3:
        raise InsufficientDataError(
            f"found {len(crossings)} zero crossings, need at least 3 for a period estimate")
    ups = np.array([c for c, d in crossings if d > 0])
    downs = np.array([c for c, d in crossings if d < 0])
    spacings = np.concatenate([np.diff(ups), np.diff(downs)])
    return float(np.mean(spacings))


def alpha_family(params: PhysicalParams, beta: float, alphas, tau_grid,
                 method: str = "series") -> list[CorrelationCurve]:
    """One curve per modulation depth, all sharing the depth-0 peak-1 baseline."""
    return [sample_curve(params, CosinePhaseFilter(float(a), float(beta)),
                         tau_grid, method=method) for a in alphas]


def detect_lobes(curve: CorrelationCurve, min_height: float | None = None) -> LobeReport:
    """Strict local maxima above min_height (default 0.01 of the curve max).

    Maxima closer than T/4 are merged into their tallest member; that scale
    separates genuine envelope lobes from sampling-level ripple.
    """
    T = characteristic_time(curve.params)
    steps = np.diff(curve.tau_grid)
    if not np.allclose(steps, steps[0], rtol=1e-6, atol=0.0):
        raise ParameterError("lobe detection requires a uniform tau grid")
    step = float(steps[0])
    if step > T / 20.0:
        raise ResolutionError(
            f"grid step {step:g} fs is coarser than T/20 = {T / 20.0:g} fs")
    rates = curve.rates
    threshold = 0.01 * float(np.max(rates)) if min_height is None else float(min_height)
    distance = max(1, math.ceil((T / 4.0) / step))
    idx, _ = find_peaks(rates, height=threshold, distance=distance)
    prominences = peak_prominences(rates, idx)[0] if idx.size else np.array([])
    lobes = [Lobe(center=float(curve.tau_grid[i]), height=float(rates[i]),
                  prominence=float(p)) for i, p in zip(idx, prominences)]
    return LobeReport(lobes=lobes, threshold=threshold)


def total_coincidence_integral(curve: CorrelationCurve) -> float:
    """Trapezoid integral of the rate over tau, in fs.

    A phase-only filter conserves this, so it is a cross-parameter check.
    The window must be wide enough that both edge rates are below 1e-10 of
    the curve maximum.
    """
    steps = np.diff(curve.tau_grid)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ParameterError("total integral requires a uniform tau grid")
    peak = float(np.max(curve.rates))
    if curve.rates[0] > 1e-10 * peak or curve.rates[-1] > 1e-10 * peak:
        raise WindowError("edge rates above 1e-10 of the maximum; widen the tau window")
    return float(np.trapezoid(curve.rates, curve.tau_grid))
