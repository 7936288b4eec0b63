"""Derived physics: quasienergy zeros, periodic-oscillation conditions,
trace-level periodicity verification, and probe spectral-line catalogs."""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from .dynamics import PopulationTrace
from .floquet import mean_bessel, quasienergy
from .model import SystemParams
from .specfun import bessel_j

__all__ = [
    "SpectralLine",
    "PeriodicityResult",
    "quasienergy_zeros",
    "periodicity_residual",
    "solve_periodic_ratio",
    "trace_periodicity_check",
    "spectral_lines",
    "xconfig_spectral_lines",
]

ZERO_SCAN_STEP = 0.02
ZERO_REFINE_TOL = 1.0e-4
PERIODICITY_RESIDUAL_TOL = 1.0e-3
DEFAULT_WEIGHT_THRESHOLD = 1.0e-8


@dataclass(frozen=True)
class SpectralLine:
    """One probe transition line between the two quasienergy branches."""

    m: int
    n: int
    frequency: float
    weight: float

    @property
    def kind(self) -> str:
        if self.frequency > 0:
            return "absorption"
        if self.frequency < 0:
            return "amplification"
        return "static"


@dataclass(frozen=True)
class PeriodicityResult:
    """Deviation of m |E_N| from n delta, in units of delta."""

    m: int
    n: int
    residual: float
    is_periodic: bool


def _energy_at_ratio(base: SystemParams, ratio: float) -> float:
    params = replace(base, amplitude=ratio * base.carrier)
    return quasienergy(params)


def quasienergy_zeros(params_base: SystemParams, ratio_min: float, ratio_max: float,
                      tol: float = ZERO_REFINE_TOL,
                      grid_step: float = ZERO_SCAN_STEP) -> list[float]:
    """All zeros of A/omega_0 -> E_N inside [ratio_min, ratio_max].

    A fixed-step scan brackets candidates, which are refined either by
    bisection (sign changes) or by bounded minimisation (tangent zeros, where
    E_N touches zero without changing sign -- the generic case here, since
    the period-averaged coupling is non-negative between its zeros).
    """
    if ratio_min < 0 or ratio_max <= ratio_min:
        raise ValueError("need 0 <= ratio_min < ratio_max")
    if tol <= 0 or grid_step <= 0:
        raise ValueError("tol and grid_step must be > 0")

    count = int(math.ceil((ratio_max - ratio_min) / grid_step)) + 1
    grid = np.linspace(ratio_min, ratio_max, count)
    values = np.array([_energy_at_ratio(params_base, r) for r in grid])
    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return []

    zeros: list[float] = []
    for i in range(len(grid) - 1):
        if values[i] * values[i + 1] < 0.0:
            zeros.append(_bisect_zero(params_base, grid[i], grid[i + 1], tol))
    for i in range(1, len(grid) - 1):
        if abs(values[i]) < abs(values[i - 1]) and abs(values[i]) <= abs(values[i + 1]):
            result = optimize.minimize_scalar(
                lambda r: abs(_energy_at_ratio(params_base, r)),
                bounds=(grid[i - 1], grid[i + 1]), method="bounded",
                options={"xatol": min(tol, 1e-5)})
            if abs(result.fun) < 1e-6 * scale:
                zeros.append(float(result.x))

    zeros.sort()
    deduped: list[float] = []
    for z in zeros:
        if not deduped or z - deduped[-1] > max(tol, 1e-6):
            deduped.append(z)
    return deduped


def _bisect_zero(base: SystemParams, lo: float, hi: float, tol: float) -> float:
    f_lo = _energy_at_ratio(base, lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = _energy_at_ratio(base, mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def periodicity_residual(params: SystemParams, m: int, n: int) -> PeriodicityResult:
    """How far m |E_N| is from n delta, normalised by delta.

    When the residual vanishes the accumulated phase grows by exactly n pi
    over m modulation periods, so the populations repeat with period
    m pi / delta.  A zero quasienergy is flagged periodic outright (constant
    phase slope; the formula would report residual = n).
    """
    if m != int(m) or int(m) < 1 or n != int(n) or int(n) < 1:
        raise ValueError("m and n must be positive integers")
    m, n = int(m), int(n)
    energy = quasienergy(params)
    if energy == 0.0:
        return PeriodicityResult(m=m, n=n, residual=float(n), is_periodic=True)
    residual = abs(m * abs(energy) - n * params.modulation) / params.modulation
    return PeriodicityResult(m=m, n=n, residual=residual,
                             is_periodic=residual < PERIODICITY_RESIDUAL_TOL)


def solve_periodic_ratio(params_base: SystemParams, m: int, n: int) -> float:
    """Modulation-to-tunneling ratio delta/delta_gap giving periodic dynamics.

    Returns (n/m) (1/(2 pi)) int_0^pi J_N(2 (A/omega_0) |cos u|) du, i.e. half
    the period-averaged coupling scaled by n/m.  Note the index convention:
    the value satisfies m delta = n |E_N|, so feeding it back into
    ``periodicity_residual`` closes with the roles of (m, n) swapped.
    """
    if m != int(m) or int(m) < 1 or n != int(n) or int(n) < 1:
        raise ValueError("m and n must be positive integers")
    if params_base.amplitude == 0.0:
        _warnings.warn("zero drive amplitude: periodicity condition is degenerate",
                       stacklevel=2)
        return 0.0
    return (int(n) / int(m)) * 0.5 * mean_bessel(params_base)


def trace_periodicity_check(trace: PopulationTrace, period: float, reps: int = 1,
                            tol: float = 1.0e-2) -> float:
    """Largest repetition defect max_t |P1(t + k period) - P1(t)|, k = 1..reps.

    Shifted samples are linearly interpolated on the trace.  ``tol`` is the
    gate the caller (and the CLI) compares the returned deviation against;
    it does not alter the computation.  Raises if the trace spans less than
    (reps + 1) periods.
    """
    if period <= 0:
        raise ValueError("period must be > 0")
    if reps != int(reps) or int(reps) < 1:
        raise ValueError("reps must be a positive integer")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    reps = int(reps)
    t = trace.times
    span = t[-1] - t[0]
    if span < (reps + 1) * period * (1.0 - 1e-12):
        raise ValueError(
            f"trace spans {span:.6g} but needs at least {(reps + 1) * period:.6g}")
    deviation = 0.0
    base = t <= t[-1] - reps * period + 1e-12 * span
    for k in range(1, reps + 1):
        shifted = np.interp(t[base] + k * period, t, trace.p1)
        deviation = max(deviation, float(np.max(np.abs(shifted - trace.p1[base]))))
    return deviation


def spectral_lines(params: SystemParams,
                   weight_threshold: float = DEFAULT_WEIGHT_THRESHOLD,
                   index_cutoff: int | None = None) -> list[SpectralLine]:
    """Probe-transition catalog between the two quasienergy branches.

    Frequencies are eps0 + m omega_0 + 2 E_N + (2n - m) delta with weights
    2 |J_n(A/omega_0) J_{m-n}(A/omega_0)|; lines below ``weight_threshold``
    are dropped.  Positive frequencies are absorption lines, negative ones
    amplification.
    """
    if weight_threshold < 0:
        raise ValueError("weight_threshold must be >= 0")
    if index_cutoff is None:
        index_cutoff = int(math.ceil(params.drive_ratio)) + 20
    if index_cutoff != int(index_cutoff) or int(index_cutoff) < 0:
        raise ValueError("index_cutoff must be a non-negative integer")
    cutoff = int(index_cutoff)
    ratio = params.drive_ratio
    stark = 2.0 * quasienergy(params)
    orders = np.arange(-2 * cutoff, 2 * cutoff + 1)
    jvals = {int(k): bessel_j(int(k), ratio) for k in orders}
    lines: list[SpectralLine] = []
    for m in range(-cutoff, cutoff + 1):
        for n in range(-cutoff, cutoff + 1):
            weight = 2.0 * abs(jvals[n] * jvals[m - n])
            if weight < weight_threshold:
                continue
            freq = (params.epsilon0 + m * params.carrier + stark
                    + (2 * n - m) * params.modulation)
            lines.append(SpectralLine(m=m, n=n, frequency=freq, weight=weight))
    return lines


def xconfig_spectral_lines(omega0: float, delta_mod: float, n_range: int) -> list[float]:
    """Probe lines of the transition-coupled configuration: omega_0 + n delta.

    No drive-dependent shift appears; the catalog depends only on the carrier
    and the modulation frequency.
    """
    if n_range != int(n_range) or int(n_range) < 0:
        raise ValueError("n_range must be a non-negative integer")
    if delta_mod <= 0:
        raise ValueError("delta_mod must be > 0")
    return [omega0 + n * delta_mod for n in range(-int(n_range), int(n_range) + 1)]
