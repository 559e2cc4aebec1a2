import math

import pytest

import helmscat as hs


def test_version_string():
    assert hs.__version__.count(".") == 2


def test_profile_basics():
    p = hs.WaveSpeedProfile(2.0, [(1.0, 3.0), (4.0, 1.5)])
    assert p.c0 == 2.0
    assert p.at(0.5) == 2.0
    assert p.at(1.0) == 2.0  # left-continuous at the jump
    assert p.at(1.5) == 3.0
    assert p.jumps == [(1.0, 3.0), (4.0, 1.5)]


def test_validation_maps_to_value_error():
    with pytest.raises(ValueError):
        hs.WaveSpeedProfile(-1.0)
    with pytest.raises(ValueError):
        hs.FrequencyBand(2.0, 1.0, 10)


def test_forward_matches_reflection_response():
    p = hs.WaveSpeedProfile(1.0, [(2.0, 1.5), (3.0, 0.75)])
    band = hs.FrequencyBand(0.5, 3.0, 64)
    trace = hs.synth_trace(p, 0.0, 1.0, band)
    assert trace.role == "measured-d"
    refl = hs.data_to_reflection(trace, 0.0, 1.0, p.c0)
    assert refl.role == "reflection-R"
    for k, omega in enumerate(band.omegas()):
        direct = hs.reflection_response(p, 0.0, omega)
        assert abs(refl.values[k] - direct) <= 1e-12 * max(1.0, abs(direct))


def test_roundtrip_recovers_profile():
    # Three equal-travel-time layers; one full period of clean data.
    delta0 = 1.0
    period = math.pi / delta0
    c0 = 1.0
    speeds = [c0]
    for r in (0.3, -0.2, 0.4):
        speeds.append(speeds[-1] * (1.0 + r) / (1.0 - r))
    jumps, x = [], 0.0
    for c_prev, c_next in zip(speeds, speeds[1:]):
        x += c_prev * delta0
        jumps.append((x, c_next))
    p = hs.WaveSpeedProfile(c0, jumps)

    band = hs.FrequencyBand(-period / 2, period / 2, 600)
    trace = hs.synth_trace(p, 0.0, jumps[0][0] / 2, band)
    report = hs.invert(trace, 0.0, jumps[0][0] / 2, c0, 3, period=period)

    assert report.delta0 == pytest.approx(delta0, abs=1e-12)
    for got, want in zip(report.reflectivities, (0.3, -0.2, 0.4)):
        assert got == pytest.approx(want, abs=1e-9)
    for (gx, gc), (wx, wc) in zip(report.profile.jumps, jumps):
        assert gx == pytest.approx(wx, abs=1e-9)
        assert gc == pytest.approx(wc, abs=1e-9)
    assert report.diagnostics.clamp_count == 0


def test_schur_bound():
    assert hs.schur_bound([0.5, 0.5]) == pytest.approx(0.8, abs=1e-15)


def test_noise_is_seeded():
    p = hs.WaveSpeedProfile(1.0, [(1.0, 2.0)])
    band = hs.FrequencyBand(1.0, 2.0, 32)
    t = hs.synth_trace(p, 0.0, 0.5, band)
    a = hs.add_noise(t, 0.1, 7)
    b = hs.add_noise(t, 0.1, 7)
    c = hs.add_noise(t, 0.1, 8)
    assert a.values == b.values
    assert a.values != c.values
