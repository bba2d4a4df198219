"""Tests for the seeded nonlinear autoregressive generators."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from fcar.errors import NonFiniteState
from fcar.simulate import (
    DgpSpec,
    default_spec,
    sigma_het,
    simulate,
    simulate_expar,
    simulate_setar,
    simulate_sine,
)


# ---------------------------------------------------------------- sigma_het


def test_sigma_het_is_state_free_constant():
    assert sigma_het(np.zeros(4)) == pytest.approx(0.1)
    assert sigma_het(np.zeros(10)) == pytest.approx(0.05 * math.sqrt(10))
    assert sigma_het(np.zeros(10)) == pytest.approx(0.15811388300841897)


def test_sigma_het_same_value_at_any_state():
    rng = np.random.default_rng(0)
    base = sigma_het(np.zeros(4))
    for _ in range(5):
        assert sigma_het(rng.normal(size=4)) == base


def test_sigma_het_explicit_order_wins():
    assert sigma_het(np.zeros(4), p=10) == pytest.approx(0.05 * math.sqrt(10))


def test_sigma_het_singular_ratio_uses_limit():
    # exp(mean |lags|) == 5 makes the shared factor exactly 0; the ratio
    # falls back to its limit 1 instead of producing 0/0.
    assert sigma_het(np.array([math.log(5.0)])) == pytest.approx(0.05)


# ------------------------------------------------------------------ DgpSpec


def test_spec_rejects_unknown_kind():
    with pytest.raises(ValueError, match="unknown dgp kind"):
        DgpSpec(kind="cubic", p=1, d=1, a=(0.5,))


def test_spec_rejects_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        DgpSpec(kind="sine", p=3, d=1, a=(0.5, 0.5), omega=1.0)


def test_spec_requires_kind_specific_parameters():
    with pytest.raises(ValueError, match="omega"):
        DgpSpec(kind="sine", p=1, d=1, a=(0.5,))
    with pytest.raises(ValueError, match="requires b"):
        DgpSpec(kind="expar", p=2, d=1, a=(0.1, 0.1), delta=1.0)
    with pytest.raises(ValueError, match="requires b"):
        DgpSpec(kind="expar", p=2, d=1, a=(0.1, 0.1), b=(0.1,), delta=1.0)
    with pytest.raises(ValueError, match="delta"):
        DgpSpec(kind="expar", p=1, d=1, a=(0.1,), b=(0.1,))
    with pytest.raises(ValueError, match="requires r"):
        DgpSpec(kind="setar", p=1, d=1, a=(0.1,), b=(0.1,))


# ------------------------------------------------------- coefficient truths


def test_sine_functions_vanish_at_zero_and_peak_at_quarter_period():
    fns = default_spec("sine", 4).true_functions()
    for fn in fns:
        assert fn(0.0) == pytest.approx(0.0)
    # omega = 4.5, so u = 1/9 puts the argument at pi/2.
    assert fns[0](1.0 / 9.0) == pytest.approx(0.5)
    assert fns[1](1.0 / 9.0) == pytest.approx(-0.5)


def test_expar_functions_at_origin_and_far_field():
    fns = default_spec("expar", 4).true_functions()
    assert fns[0](0.0) == pytest.approx(0.5)  # a1 + b1
    assert fns[1](0.0) == pytest.approx(-0.5)  # a2 + b2
    # exp(-25 u^2) is ~0 far out, leaving just a.
    assert fns[0](10.0) == pytest.approx(0.3)


def test_setar_functions_switch_at_threshold():
    fns = default_spec("setar", 4).true_functions()
    # Second lag: a2 = 0.2 below r2 = -0.1, b2 = -0.5 at and above it.
    assert fns[1](-0.2) == pytest.approx(0.2)
    assert fns[1](0.0) == pytest.approx(-0.5)
    # The boundary point takes the upper branch.
    assert fns[0](0.0) == pytest.approx(0.4)  # r1 = 0.0 -> b1


def test_expar_with_zero_decay_is_constant():
    spec = DgpSpec(kind="expar", p=1, d=1, a=(0.3,), b=(0.2,), delta=0.0)
    fn = spec.true_functions()[0]
    u = np.linspace(-3.0, 3.0, 7)
    assert_array_equal(fn(u), np.full(7, 0.5))


def test_true_functions_vectorise():
    spec = default_spec("setar", 4)
    fns = spec.true_functions()
    u = np.array([-0.5, -0.15, 0.0, 0.5])
    vec = fns[1](u)
    assert_array_equal(vec, [fns[1](v) for v in u])


# ----------------------------------------------------------------- simulate


def test_simulate_is_deterministic_per_seed():
    first = simulate_sine(80, seed=11)
    second = simulate_sine(80, seed=11)
    assert_array_equal(first.series.values, second.series.values)
    assert not np.array_equal(first.series.values, simulate_sine(80, seed=12).series.values)


def test_simulated_series_reports_its_inputs():
    sim = simulate_setar(60, seed=5)
    assert sim.seed == 5
    assert sim.spec.kind == "setar"
    assert sim.series.values.shape == (60,)
    assert sim.preamble.shape == (max(sim.spec.p, sim.spec.d),)
    assert sim.shocks.shape == (60,)
    assert len(sim.true_fns) == sim.spec.p


@pytest.mark.parametrize("maker", [simulate_sine, simulate_setar])
def test_replay_from_preamble_and_shocks(maker):
    sim = maker(50, seed=9)
    spec = sim.spec
    m = max(spec.p, spec.d)
    state = np.concatenate([sim.preamble, sim.series.values])
    rebuilt = np.empty(50)
    for i in range(50):
        t = m + i
        lags = state[t - spec.p : t][::-1]
        coef = np.array([fn(state[t - spec.d]) for fn in sim.true_fns])
        rebuilt[i] = float(coef @ lags) + sim.shocks[i]
    assert_array_equal(rebuilt, sim.series.values)


def test_stock_processes_stay_bounded():
    for kind, maker in (("sine", simulate_sine), ("expar", simulate_expar),
                        ("setar", simulate_setar)):
        hits = sum(
            np.max(np.abs(maker(200, seed=s).series.values)) < 10.0
            for s in range(100)
        )
        assert hits >= 99, f"{kind}: only {hits}/100 seeds stayed inside +-10"


def test_divergent_recursion_raises_with_context():
    spec = DgpSpec(kind="expar", p=1, d=1, a=(2.0,), b=(0.0,), delta=1.0,
                   noise="unit")
    with pytest.raises(NonFiniteState) as excinfo:
        simulate(spec, 10, seed=3)
    assert excinfo.value.seed == 3
    assert excinfo.value.step == 20


@pytest.mark.parametrize("bad_n", [0, -1, 2.5])
def test_simulate_rejects_bad_length(bad_n):
    with pytest.raises(ValueError):
        simulate_sine(bad_n, seed=0)


def test_callable_noise_replaces_the_scale():
    sim = simulate_sine(40, seed=1, noise=lambda lags: 0.0)
    assert_array_equal(sim.shocks, np.zeros(40))


def test_unit_noise_scales_shocks():
    het = simulate_sine(40, seed=6)
    unit = simulate_sine(40, seed=6, noise="unit")
    # Same eps draw, different sigma: the ratio is the constant scale.
    assert_allclose(het.shocks, 0.1 * unit.shocks, rtol=1e-12)


# ------------------------------------------------------------ stock tables


def test_default_spec_stock_shapes():
    sine = default_spec("sine", 10)
    assert sine.p == 10 and sine.d == 2 and sine.omega == 1.5
    expar = default_spec("expar", 4)
    assert expar.delta == 25.0 and expar.noise == "het"
    setar = default_spec("setar", 4)
    assert setar.d == 1 and setar.noise == "unit"


def test_default_spec_unknown_kind_or_order():
    with pytest.raises(ValueError, match="unknown dgp kind"):
        default_spec("arch", 4)
    with pytest.raises(ValueError, match="no stock"):
        default_spec("sine", 7)


def test_partial_parameters_are_rejected():
    with pytest.raises(ValueError, match="also need"):
        simulate_expar(50, p=4, a=(0.3, -0.35, 0.1, -0.2))
    with pytest.raises(ValueError, match="no stock"):
        simulate_expar(50, p=2, seed=1)


def test_delay_override_keeps_stock_coefficients():
    sim = simulate_sine(40, d=5, seed=0)
    assert sim.spec.d == 5
    assert sim.spec.a == default_spec("sine", 4).a
