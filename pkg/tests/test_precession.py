import math

import numpy as np
import pytest

from vmw.precession import (LobeTrackingError, PrecessionConfig, evolve,
                            particle_ring, q_ring, to_field_frame,
                            track_rotation)
from vmw.wavepacket import WavepacketSpec, build_j_wavepacket

SPEC = WavepacketSpec.of(80, 40, 5.0, 5.0)
SMALL = WavepacketSpec.of(20, 10, 2.0, 2.0)


def test_time_zero_is_identity():
    config = PrecessionConfig(SMALL, 1.0, (0.0,))
    state = evolve(config)[0]
    base = to_field_frame(build_j_wavepacket(SMALL), config.axis_polar())
    for tj, c in state.blocks.items():
        np.testing.assert_allclose(c, base.blocks[tj], atol=1e-15)


def test_full_period_revival():
    omega = 0.7
    config = PrecessionConfig(SMALL, omega, (0.0, 2.0 * math.pi / omega))
    start, end = evolve(config)
    ring0, ring1 = particle_ring(start), particle_ring(end)
    assert np.abs(ring1 - ring0).max() < 1e-10
    q0, q1 = q_ring(start, 0.07), q_ring(end, 0.07)
    assert np.abs(q1 - q0).max() < 1e-10


def test_quarter_turn_is_rigid_rotation():
    omega = 1.0
    config = PrecessionConfig(SMALL, omega, (0.0, math.pi / 2.0))
    start, quarter = evolve(config)
    n = 720
    ring0 = particle_ring(start, n)
    ring1 = particle_ring(quarter, n)
    np.testing.assert_allclose(np.roll(ring0, n // 4), ring1,
                               atol=1e-10 * ring0.max())


def test_traces_linear_and_locked():
    omega = 1.0
    times = tuple(np.linspace(0.0, 2.0 * math.pi, 13))
    trace = track_rotation(PrecessionConfig(SPEC, omega, times))
    slopes_j = np.diff(trace.j_azimuth) / np.diff(trace.times)
    slopes_p = np.diff(trace.particle_azimuth) / np.diff(trace.times)
    assert np.abs(slopes_j / omega - 1.0).max() < 0.05
    assert np.abs(slopes_p / omega - 1.0).max() < 0.05
    assert np.ptp(trace.j_azimuth - trace.particle_azimuth) <= 2.0 * math.pi / 720.0
    assert np.abs(trace.norms - 1.0).max() < 1e-12
    drift = (trace.chi_widths.max() - trace.chi_widths.min()) / trace.chi_widths[0]
    assert drift < 0.02


def test_zero_field_static_traces():
    trace = track_rotation(PrecessionConfig(SMALL, 0.0, (0.0, 1.0, 2.0)))
    assert np.ptp(trace.j_azimuth) == pytest.approx(0.0, abs=1e-12)
    assert np.ptp(trace.particle_azimuth) == pytest.approx(0.0, abs=1e-12)


def test_flat_azimuth_raises():
    # without a j-spread the particle ring has no azimuthal structure
    flat = WavepacketSpec.of(20, 10, 0.0, 2.0)
    with pytest.raises(LobeTrackingError):
        track_rotation(PrecessionConfig(flat, 1.0, (0.0, 0.5)))


def test_config_validation():
    with pytest.raises(ValueError):
        PrecessionConfig(SMALL, -1.0, (0.0,))
    with pytest.raises(ValueError):
        PrecessionConfig(SMALL, 1.0, (1.0, 0.0))
