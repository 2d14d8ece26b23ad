import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonpair import optics
from photonpair.optics import FieldVector, apply, beam_splitter, compose, intensities, phase_shifter

S2 = 1 / math.sqrt(2)


def random_circuit(rng, n, length):
    t = optics.identity(n)
    for _ in range(length):
        if n > 1 and rng.random() < 0.5:
            i, j = rng.choice(n, size=2, replace=False)
            el = beam_splitter(n, int(i), int(j))
        else:
            el = phase_shifter(n, int(rng.integers(n)), rng.uniform(-10, 10))
        t = compose(t, el)
    return t


def test_bs_on_single_input():
    out = apply(beam_splitter(2, 0, 1), [1.0, 0.0])
    assert np.allclose(out.modes, [S2, 1j * S2], atol=1e-15)
    assert np.allclose(intensities(out), [0.5, 0.5], atol=1e-15)


def test_two_splitters_swap_up_to_phase():
    bs = beam_splitter(2, 0, 1)
    out = apply(compose(bs, bs), [2.0, 0.0])
    assert np.allclose(out.modes, [0, 2j], atol=1e-15)


def test_bs_embedding():
    t = beam_splitter(4, 0, 1).entries
    assert np.allclose(t[2:, 2:], np.eye(2))
    assert np.allclose(t[:2, 2:], 0) and np.allclose(t[2:, :2], 0)
    assert np.allclose(beam_splitter(4, 3, 1).block(3, 1), S2 * np.array([[1, 1j], [1j, 1]]))


@pytest.mark.parametrize("args", [(2, 0, 2), (2, -1, 0), (3, 1, 1)])
def test_bs_bad_indices(args):
    with pytest.raises(optics.ModeIndexError):
        beam_splitter(*args)


def test_bs_error_names_index():
    with pytest.raises(optics.ModeIndexError, match="5"):
        beam_splitter(3, 0, 5)


def test_phase_shifter_examples():
    assert np.allclose(phase_shifter(2, 1, 0).entries, np.eye(2))
    assert np.allclose(apply(phase_shifter(2, 1, math.pi), [0.3, 0.7j]).modes, [0.3, -0.7j], atol=1e-15)
    assert np.allclose(apply(phase_shifter(2, 1, math.pi / 2), [0, 1]).modes, [0, 1j], atol=1e-15)
    with pytest.raises(optics.ModeIndexError):
        phase_shifter(2, 2, 0.1)
    with pytest.raises(ValueError):
        phase_shifter(2, 0, float("nan"))


def test_compose_identity_and_phases():
    rng = np.random.default_rng(0)
    t = random_circuit(rng, 3, 10)
    assert np.array_equal(compose(t, optics.identity(3)).entries, t.entries)
    a, b = 0.4, -1.3
    assert np.allclose(compose(phase_shifter(2, 0, a), phase_shifter(2, 0, b)).entries,
                       phase_shifter(2, 0, a + b).entries, atol=1e-15)


def test_compose_order():
    # phase first, then splitter: compose(first, second) == second @ first
    p, bs = phase_shifter(2, 1, 0.7), beam_splitter(2, 0, 1)
    assert np.allclose(compose(p, bs).entries, bs.entries @ p.entries)
    assert np.allclose((bs @ p).entries, bs.entries @ p.entries)


def test_mzi_chain_matches_closed_form():
    e0 = 0.8 - 0.3j
    for phi in np.linspace(0, 2 * np.pi, 13):
        t = optics.chain([beam_splitter(2, 0, 1), phase_shifter(2, 1, phi), beam_splitter(2, 0, 1)])
        out = apply(t, [e0, 0])
        u = cmath.exp(1j * phi)
        assert out[0] == pytest.approx(e0 / 2 * (1 - u), abs=1e-14)
        assert out[1] == pytest.approx(1j * e0 / 2 * (1 + u), abs=1e-14)


def test_apply_signal_idler():
    e0, ps, pi_ = 1.3, 0.4, -1.1
    es, ei = e0 * cmath.exp(1j * ps), e0 * cmath.exp(1j * pi_)
    out = apply(beam_splitter(2, 0, 1), [es, ei])
    assert out[0] == pytest.approx(S2 * (es + 1j * ei), abs=1e-14)
    assert out[1] == pytest.approx(S2 * (1j * es + ei), abs=1e-14)


def test_apply_identity_and_mzi_at_pi():
    v = FieldVector.of(1 + 2j, -0.5j, 3)
    assert np.array_equal(apply(optics.identity(3), v).modes, v.modes)
    t = optics.chain([beam_splitter(2, 0, 1), phase_shifter(2, 1, math.pi), beam_splitter(2, 0, 1)])
    assert np.allclose(intensities(apply(t, [1.0, 0])), [1, 0], atol=1e-15)
    t = optics.chain([beam_splitter(2, 0, 1), phase_shifter(2, 1, math.pi / 2), beam_splitter(2, 0, 1)])
    assert np.allclose(intensities(apply(t, [1.0, 0])), [0.5, 0.5], atol=1e-15)


def test_dimension_errors():
    with pytest.raises(optics.DimensionError, match="2.*3|3.*2"):
        compose(optics.identity(2), optics.identity(3))
    with pytest.raises(optics.DimensionError):
        apply(optics.identity(2), [1, 0, 0])


def test_intensities_basic():
    assert list(intensities([1 + 0j, 0])) == [1.0, 0.0]


def test_values_are_immutable():
    t = beam_splitter(2, 0, 1)
    with pytest.raises(ValueError):
        t.entries[0, 0] = 3


@pytest.mark.parametrize("seed", range(20))
def test_random_circuits_unitary(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    t = random_circuit(rng, n, int(rng.integers(0, 101)))
    assert t.unitarity_error() < 1e-12


def test_energy_conservation_1000_inputs():
    rng = np.random.default_rng(1)
    t = random_circuit(rng, 6, 100)
    for _ in range(1000):
        v = rng.normal(size=6) + 1j * rng.normal(size=6)
        out = apply(t, v)
        tin = np.sum(np.abs(v) ** 2)
        assert abs(out.total_intensity() - tin) <= 1e-12 * tin


amp = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)


@given(amp, amp)
def test_swap_property(a, b):
    bs = beam_splitter(2, 0, 1)
    out = apply(compose(bs, bs), [a, b])
    scale = max(1.0, abs(a), abs(b))
    assert abs(out[0] - 1j * b) < 1e-12 * scale
    assert abs(out[1] - 1j * a) < 1e-12 * scale


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_compose_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_circuit(rng, 4, 5) for _ in range(3))
    left = compose(compose(a, b), c).entries
    right = compose(a, compose(b, c)).entries
    assert np.max(np.abs(left - right)) < 1e-12
