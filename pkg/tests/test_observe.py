"""Measured observables: centroids, widths, momentum drift, norm tracking."""

import math

import numpy as np
import pytest

from blochsim import (
    ChainState,
    DegenerateStateError,
    EvolveSettings,
    MomentumSpectrum,
    ProfileSpec,
    bloch_period,
    build_state,
    centroid_n,
    make_hatano_nelson,
    make_imaginary_hopping,
    momentum_centroid,
    norm_factor,
    record,
    run,
    theta_correction,
    to_spectrum,
    width_n,
    width_n_centered,
)

HN = make_hatano_nelson(1.0, 0.1, F=0.2)
HERM = make_hatano_nelson(1.0, 0.0, F=0.2)
IMAG = make_imaginary_hopping(1.0, F=0.2)
GAUSS = ProfileSpec.gaussian_packet(0.02)


def snapshots(model, samples=33, window=(-131, 131)):
    c0 = build_state(GAUSS, window)
    times = np.linspace(0.0, bloch_period(model), samples).tolist()
    return run(c0, model, EvolveSettings(method="spectral"), times)


def test_site_moments_by_hand():
    st = ChainState(1, np.array([1.0, 0.0, 1.0], dtype=np.complex128))
    assert centroid_n(st) == pytest.approx(2.0)
    assert width_n(st) == pytest.approx(math.sqrt((1 + 9) / 2.0))
    assert width_n_centered(st) == pytest.approx(1.0)


def test_momentum_centroid_peak_centered_at_zone_edge():
    # weight hugging the zone boundary must average to the boundary, not to
    # the interior value a naive linear mean would give
    N = 64
    q = -math.pi + 2.0 * math.pi * np.arange(N) / N
    edge = math.pi * (1 - 2.0 / N)
    delta = np.mod(q - edge + math.pi, 2 * math.pi) - math.pi
    vals = np.exp(-(delta**2) / 0.02).astype(np.complex128)
    c = momentum_centroid(MomentumSpectrum(vals, a=1.0))
    folded = math.remainder(c - edge, 2 * math.pi)
    assert abs(folded) < 1e-6
    # the naive linear mean is pulled toward the interior by the wrapped tail
    naive = float((q * np.abs(vals) ** 2).sum() / (np.abs(vals) ** 2).sum())
    assert abs(naive - edge) > 1.0


def test_momentum_centroid_unwrap_tracking():
    spec = MomentumSpectrum(np.exp(-np.linspace(-math.pi, math.pi, 128, endpoint=False) ** 2 / 0.1).astype(np.complex128))
    base = momentum_centroid(spec)
    # follow a fictitious drift two zones down
    assert momentum_centroid(spec, previous=base - 2 * math.pi) == pytest.approx(
        base - 2 * math.pi, abs=1e-12
    )
    with pytest.raises(DegenerateStateError):
        momentum_centroid(MomentumSpectrum(np.zeros(16, dtype=np.complex128)))


def test_hermitian_drift_is_rigid():
    """Acceleration theorem: <q> moves at exactly -F, no correction."""
    obs = record(snapshots(HERM), HERM)
    thetas = np.array([o.theta_measured for o in obs])
    assert np.abs(thetas).max() < 1e-10
    # unwrapped centroid crossed one full zone downward
    drop = obs[-1].centroid_q_unwrapped - obs[0].centroid_q_unwrapped
    assert drop == pytest.approx(-2.0 * math.pi, abs=1e-9)


def test_measured_theta_matches_prediction():
    states = snapshots(HN)
    obs = record(states, HN)
    spec0 = to_spectrum(states[0], a=HN.a)
    for o in obs:
        predicted = theta_correction(spec0, HN, o.t)
        assert abs(o.theta_measured - predicted) < 1e-8


def test_norm_tracks_amplification_envelope():
    # the uniform-amplification law ignores the packet's momentum spread;
    # for this packet the true envelope deviates by up to 6.6% mid-cycle
    obs = record(snapshots(HN), HN)
    devs = [abs(o.norm / norm_factor(HN, o.t) - 1.0) for o in obs]
    assert max(devs) < 0.10
    assert obs[0].norm == pytest.approx(1.0)
    # and exact again after a full period
    assert obs[-1].norm == pytest.approx(1.0, abs=1e-10)


def test_breathing_lattice_observables():
    obs = record(snapshots(IMAG, window=(-111, 111)), IMAG)
    cents = np.array([o.centroid_n for o in obs])
    widths = np.array([o.width for o in obs])
    assert np.abs(cents).max() < 1e-8  # no oscillation, only breathing
    assert abs(widths[-1] - widths[0]) < 1e-4
    assert widths.max() > 1.3 * widths.min()
    assert widths[0] == pytest.approx(1.0 / (2.0 * math.sqrt(0.02)), rel=1e-6)
    fracs = [o.boundary_fraction for o in obs]
    assert max(fracs) < 1e-10


def test_record_requires_snapshots():
    with pytest.raises(ValueError):
        record([], HN)
