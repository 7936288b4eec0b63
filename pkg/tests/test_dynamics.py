import cmath
import math

import numpy as np
import pytest

from floquet_qubit.dynamics import (
    AmplitudePair,
    PopulationTrace,
    analytic_populations,
    evolve_full,
    evolve_reduced,
    integrate_full,
    integrate_reduced,
    rabi_frequency,
    xconfig_dynamics,
)
from floquet_qubit.floquet import build_phase_decomposition, phase_gamma
from floquet_qubit.model import SystemParams, hamiltonian

from oracles import central_difference


def make_params(order=1, ratio=0.1, gap_over_mod=40.0, modulation=1e-3, carrier=1.0,
                epsilon0=None):
    eps0 = order * carrier if epsilon0 is None else epsilon0
    return SystemParams(epsilon0=eps0, delta_gap=gap_over_mod * modulation,
                        amplitude=ratio * carrier, carrier=carrier,
                        modulation=modulation, order=order)


def expm_oracle(params, axis, t_end, steps):
    """Piecewise-constant midpoint propagator built from model.hamiltonian.

    Independent of the adaptive integrators: each step applies the exact
    exponential of the (traceless, real-symmetric) Hamiltonian frozen at the
    step midpoint.
    """
    h_step = t_end / steps
    up, down = 0.0 + 0.0j, 1.0 + 0.0j
    for k in range(steps):
        h = hamiltonian(params, axis, (k + 0.5) * h_step)
        a = h[0, 0].real
        b = h[0, 1].real
        w = math.hypot(a, b)
        if w == 0.0:
            continue
        cos_wh = math.cos(w * h_step)
        msin = -1j * math.sin(w * h_step) / w
        up, down = (cos_wh * up + msin * (a * up + b * down),
                    cos_wh * down + msin * (b * up - a * down))
    return down, up  # (c1, c2)


# ---------------------------------------------------------------------------
# analytic populations
# ---------------------------------------------------------------------------

def test_analytic_initial_condition():
    trace = analytic_populations(make_params(), [0.0, 1.0, 2.0])
    assert trace.p1[0] == 1.0
    assert trace.p2[0] == 0.0


def test_analytic_full_inversion_at_quarter_phase():
    # find the time where the accumulated phase reaches pi/2: populations
    # must be fully inverted there
    p = make_params(order=1, ratio=0.1, gap_over_mod=40.0)
    dec = build_phase_decomposition(p)
    lo, hi = 0.0, 20 * p.period
    assert dec.gamma_at(hi) > math.pi / 2
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if dec.gamma_at(mid) < math.pi / 2:
            lo = mid
        else:
            hi = mid
    t_star = 0.5 * (lo + hi)
    trace = analytic_populations(p, [t_star])
    assert trace.p1[0] < 1e-12
    assert trace.p2[0] > 1.0 - 1e-12


def test_analytic_rejects_detuned_params():
    p = make_params(epsilon0=1.05)
    with pytest.raises(ValueError):
        analytic_populations(p, [0.0, 1.0])


def test_first_order_oscillates_faster_than_second():
    # same drive, same window: the slope of the accumulated phase drops by
    # more than an order of magnitude from N=1 to N=2
    p1 = make_params(order=1, ratio=0.1, gap_over_mod=40.0)
    p2 = make_params(order=2, ratio=0.1, gap_over_mod=40.0)
    slope1 = build_phase_decomposition(p1).slope
    slope2 = build_phase_decomposition(p2).slope
    assert slope1 / slope2 > 10.0
    times = np.linspace(0.0, 5 * p1.period, 4001)
    inversions1 = np.sum(np.diff(analytic_populations(p1, times).p1 < 0.5) != 0)
    inversions2 = np.sum(np.diff(analytic_populations(p2, times).p1 < 0.5) != 0)
    assert inversions1 > 3 * max(inversions2, 1)


# ---------------------------------------------------------------------------
# Rabi frequency
# ---------------------------------------------------------------------------

def test_rabi_frequency_trivials():
    p = make_params(order=1)
    assert abs(rabi_frequency(p, p.period / 2)) < 1e-12
    assert rabi_frequency(make_params(ratio=0.0), 3.21) == 0.0


def test_rabi_frequency_is_phase_derivative():
    p = make_params(order=1, ratio=0.8, gap_over_mod=20.0)
    h = 1e-4 * p.period
    for t in (0.1 * p.period, 0.27 * p.period, 1.4 * p.period):
        fd = central_difference(lambda s: phase_gamma(p, s)[0], t, h)
        assert fd == pytest.approx(rabi_frequency(p, t), rel=1e-6)


# ---------------------------------------------------------------------------
# reduced integration
# ---------------------------------------------------------------------------

def test_reduced_no_coupling_is_constant():
    p = make_params(gap_over_mod=0.0)
    trace = integrate_reduced(p, 5 * p.period)
    assert np.all(trace.p1 == 1.0)


def test_reduced_matches_closed_form_at_resonance():
    p = make_params(order=1, ratio=0.1, gap_over_mod=40.0)
    times = np.linspace(0.0, 5 * p.period, 801)
    trace = integrate_reduced(p, times[-1], tol=1e-10, times=times)
    reference = analytic_populations(p, times)
    assert np.max(np.abs(trace.p1 - reference.p1)) < 1e-6


def test_reduced_norm_conservation():
    p = make_params(order=2, ratio=1.0, gap_over_mod=31.0)
    times = np.linspace(0.0, 10 * p.period, 41)
    amps = evolve_reduced(p, times, tol=1e-11)
    norm = np.abs(amps[0]) ** 2 + np.abs(amps[1]) ** 2
    assert np.max(np.abs(norm - 1.0)) < 1e-8


def test_reduced_time_reversal():
    # evolving with the coupling sign flipped for the same duration undoes
    # the evolution at exact resonance
    p = make_params(order=1, ratio=0.5, gap_over_mod=25.0)
    t_end = 3.3 * p.period
    forward = evolve_reduced(p, [0.0, t_end], tol=1e-11)
    state = AmplitudePair(c1=complex(forward[0, -1]), c2=complex(forward[1, -1]))
    p_rev = SystemParams(epsilon0=p.epsilon0, delta_gap=-p.delta_gap,
                         amplitude=p.amplitude, carrier=p.carrier,
                         modulation=p.modulation, order=p.order)
    back = evolve_reduced(p_rev, [0.0, t_end], tol=1e-11, initial=state)
    assert abs(back[0, -1] - 1.0) < 1e-6
    assert abs(back[1, -1]) < 1e-6


def test_reduced_supports_detuning():
    # small detuning suppresses the inversion depth below the resonant value
    p_res = make_params(order=1, ratio=0.1, gap_over_mod=10.0, modulation=1e-2)
    p_det = SystemParams(epsilon0=p_res.epsilon0 + 0.3 * p_res.delta_gap,
                         delta_gap=p_res.delta_gap, amplitude=p_res.amplitude,
                         carrier=p_res.carrier, modulation=p_res.modulation, order=1)
    times = np.linspace(0.0, 40 * p_res.period, 2001)
    deep = integrate_reduced(p_res, times[-1], times=times).p2.max()
    shallow = integrate_reduced(p_det, times[-1], times=times).p2.max()
    assert deep > 0.99
    assert shallow < deep - 0.05


# ---------------------------------------------------------------------------
# full integration
# ---------------------------------------------------------------------------

def test_full_trivial_constant():
    p = make_params(ratio=0.0, gap_over_mod=0.0)
    trace = integrate_full(p, "z", 200.0)
    assert np.max(np.abs(trace.p1 - 1.0)) < 1e-12


def test_full_matches_expm_oracle_z():
    p = SystemParams(epsilon0=1.0, delta_gap=0.3, amplitude=0.5, carrier=1.0,
                     modulation=0.02, order=1)
    t_end = 50.0
    trace = integrate_full(p, "z", t_end, tol=1e-10, times=np.array([0.0, t_end]))
    c1, c2 = expm_oracle(p, "z", t_end, steps=250_000)
    assert trace.p1[-1] == pytest.approx(abs(c1) ** 2, abs=1e-6)
    assert trace.p2[-1] == pytest.approx(abs(c2) ** 2, abs=1e-6)


def test_full_matches_expm_oracle_x():
    p = SystemParams(epsilon0=0.0, delta_gap=1.0, amplitude=0.2, carrier=1.0,
                     modulation=0.02, order=1)
    t_end = 40.0
    trace = integrate_full(p, "x", t_end, tol=1e-10, times=np.array([0.0, t_end]))
    c1, c2 = expm_oracle(p, "x", t_end, steps=200_000)
    assert trace.p1[-1] == pytest.approx(abs(c1) ** 2, abs=1e-6)


def test_full_norm_conservation():
    p = make_params(order=1, ratio=0.6, gap_over_mod=2.0, modulation=0.045)
    times = np.linspace(0.0, 10 * p.period, 21)
    amps = evolve_full(p, "z", times, tol=1e-11)
    norm = np.abs(amps[0]) ** 2 + np.abs(amps[1]) ** 2
    assert np.max(np.abs(norm - 1.0)) < 1e-8


def test_full_agrees_with_reduced_even_order():
    # second-order resonance in the slow-modulation regime: the reduced
    # model tracks the exact dynamics to well inside the 0.05 budget
    p = make_params(order=2, ratio=1.0, gap_over_mod=1.0, modulation=1e-3)
    times = np.linspace(0.0, 10 * p.period, 401)
    full = integrate_full(p, "z", times[-1], tol=1e-8, times=times)
    reduced = integrate_reduced(p, times[-1], tol=1e-10, times=times)
    assert np.max(np.abs(full.p1 - reduced.p1)) < 0.05


def test_full_x_config_matches_rotating_frame_form():
    # one-quantum resonance of the transition-coupled configuration; the
    # rotating-frame coupling amplitude is half the per-component drive
    amplitude = 0.1
    v = amplitude / 2
    delta = 1e-3
    p = SystemParams(epsilon0=0.0, delta_gap=1.0, amplitude=amplitude, carrier=1.0,
                     modulation=delta, order=1)
    times = np.linspace(0.0, math.pi / delta, 401)
    trace = integrate_full(p, "x", times[-1], tol=1e-8, times=times)
    expected = np.sin((v / delta) * np.sin(delta * times)) ** 2
    assert np.max(np.abs(trace.p2 - expected)) < 0.05


def test_full_invalid_axis():
    with pytest.raises(ValueError):
        integrate_full(make_params(), "y", 1.0)


# ---------------------------------------------------------------------------
# x-configuration closed forms
# ---------------------------------------------------------------------------

def test_xconfig_node_and_peak():
    delta = 1e-3
    assert xconfig_dynamics(0.05, delta, math.pi / delta).p_up < 1e-12
    # (v/delta) sin(delta t) = pi/2 at sin = pi/2 * delta / v
    v = 0.05
    t_peak = math.asin(math.pi / 2 * delta / v) / delta
    assert xconfig_dynamics(v, delta, t_peak).p_up == pytest.approx(1.0, abs=1e-12)


def test_xconfig_phases_are_purely_periodic():
    # no secular phase accumulates over a full modulation cycle, i.e. the
    # branch quasienergies vanish
    v, delta = 0.07, 2e-3
    t0 = 123.4
    cycle = 2 * math.pi / delta
    a = xconfig_dynamics(v, delta, t0)
    b = xconfig_dynamics(v, delta, t0 + cycle)
    assert b.qes_plus == pytest.approx(a.qes_plus, abs=1e-9)
    assert b.qes_minus == pytest.approx(a.qes_minus, abs=1e-9)
    assert abs(a.qes_plus * a.qes_minus - 1.0) < 1e-12  # opposite phases


def test_xconfig_rejects_zero_modulation():
    with pytest.raises(ValueError):
        xconfig_dynamics(0.1, 0.0, 1.0)


# ---------------------------------------------------------------------------
# trace container
# ---------------------------------------------------------------------------

def test_trace_validates_population_sum():
    with pytest.raises(ValueError):
        PopulationTrace(times=[0.0, 1.0], p1=[1.0, 0.8], p2=[0.0, 0.1])


def test_trace_validates_monotonic_times():
    with pytest.raises(ValueError):
        PopulationTrace(times=[0.0, 0.0], p1=[1.0, 1.0], p2=[0.0, 0.0])


def test_amplitude_pair_norm():
    pair = AmplitudePair(c1=1 / math.sqrt(2), c2=1j / math.sqrt(2))
    assert pair.norm == pytest.approx(1.0, abs=1e-15)
