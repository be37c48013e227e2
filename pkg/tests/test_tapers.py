import io
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from taperqpe import new_grid
from taperqpe.eigen import dpss_taper
from taperqpe.spectra import two_nearest_probability, window_probability
from taperqpe.tapers import (
    Taper,
    cosine,
    dtft,
    from_vector,
    global_phase_align,
    grid_spectrum,
    modulate,
    phi_shift,
    ray_distance,
    sine,
    tophat,
    write_csv,
)


def direct_dtft(amps, f):
    # plain O(N) loop, kept deliberately naive
    N = len(amps)
    return sum(amps[n] * np.exp(2j * np.pi * n * f) for n in range(N)) / np.sqrt(N)


def all_tapers(g):
    hb = g.half_bin
    return [tophat(g), sine(g), cosine(g), phi_shift(g, hb), phi_shift(g, -hb), dpss_taper(g)]


def test_tophat_n4():
    assert np.allclose(tophat(new_grid(1, 1)).amps, 0.5)


def test_sine_n2():
    assert np.allclose(sine(new_grid(1, 0)).amps, [0, 1])


def test_constructors_unit_norm(small_grid):
    for t in all_tapers(small_grid):
        assert abs(np.linalg.norm(t.amps) - 1) <= 1e-12


def test_rejects_unnormalised():
    with pytest.raises(ValueError):
        Taper(np.ones(4), "bad")
    with pytest.raises(ValueError):
        from_vector(np.zeros(4))


def test_amps_read_only():
    t = tophat(new_grid(2, 0))
    with pytest.raises(ValueError):
        t.amps[0] = 1


def test_tophat_peak_is_one():
    assert abs(dtft(tophat(new_grid(5, 0)), 0.0)) ** 2 == pytest.approx(1, abs=1e-12)


def test_sine_peak_against_direct_sum():
    t = sine(new_grid(5, 0))
    assert dtft(t, 0.0) == pytest.approx(direct_dtft(t.amps, 0.0), abs=1e-12)


def test_sine_two_nearest_midpoint():
    g = new_grid(5, 0)
    assert two_nearest_probability(sine(g), g.half_bin) == pytest.approx(1, abs=1e-10)


def test_phi_shift_zero_is_tophat():
    g = new_grid(4, 0)
    assert np.allclose(phi_shift(g, 0.0).amps, tophat(g).amps)


@pytest.mark.parametrize("sign", [1, -1])
def test_phi_shift_unit_success(sign):
    g = new_grid(4, 0)
    off = sign * g.half_bin
    assert window_probability(phi_shift(g, off), off, 0) == pytest.approx(1, abs=1e-10)


def test_phi_shift_rejects_large_offset():
    g = new_grid(4, 0)
    with pytest.raises(ValueError):
        phi_shift(g, 2 * g.half_bin)


def test_modulate():
    g = new_grid(4, 1)
    off = 0.3 * g.half_bin
    assert np.allclose(modulate(tophat(g), off).amps, phi_shift(g, off).amps)
    d = dpss_taper(g)
    assert np.array_equal(modulate(d, 0.0).amps, d.amps)


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.5, 0.5), st.integers(0, 5))
def test_dtft_matches_direct_sum(f, which):
    g = new_grid(3, 2)
    t = all_tapers(g)[which]
    assert abs(dtft(t, f) - direct_dtft(t.amps, f)) <= 1e-12


def test_dtft_array_shape():
    t = tophat(new_grid(3, 0))
    assert dtft(t, np.zeros((2, 3))).shape == (2, 3)
    assert np.isscalar(dtft(t, 0.1))


def test_parseval_random_phases(small_grid, rng):
    N = small_grid.N
    for t in all_tapers(small_grid):
        for theta in rng.uniform(0, 1, 100):
            s = np.sum(np.abs(dtft(t, theta - np.arange(N) / N)) ** 2)
            assert s == pytest.approx(1, abs=1e-10)


def test_grid_spectrum_matches_dtft(small_grid):
    N = small_grid.N
    for t in all_tapers(small_grid):
        assert np.allclose(grid_spectrum(t), dtft(t, np.arange(N) / N), atol=1e-12)


def test_sine_cosine_in_shifted_span():
    g = new_grid(5, 0)
    hb = g.half_bin
    basis = np.column_stack([phi_shift(g, hb).amps, phi_shift(g, -hb).amps])
    q, _ = np.linalg.qr(basis)
    for t in (sine(g), cosine(g)):
        assert np.linalg.norm(q.conj().T @ t.amps) == pytest.approx(1, abs=1e-10)


def test_global_phase():
    g = new_grid(3, 1)
    t = dpss_taper(g)
    rotated = Taper(t.amps * np.exp(0.7j), "r")
    assert ray_distance(t, rotated) <= 1e-12
    assert np.allclose(global_phase_align(t.amps, rotated.amps), t.amps)


def test_json_round_trip():
    t = phi_shift(new_grid(3, 0), 0.01)
    back = Taper.from_json(json.loads(json.dumps(t.to_json())))
    assert back.label == t.label and np.array_equal(back.amps, t.amps)


def test_csv_layout():
    g = new_grid(2, 0)
    buf = io.StringIO()
    write_csv([tophat(g), sine(g)], buf, oversample=2)
    rows = buf.getvalue().splitlines()
    assert rows[0] == "kind,x,tophat,sine"
    assert len(rows) == 1 + 4 + 8
    assert rows[1].startswith("amp,0,") and rows[5].startswith("dtft,")
