import numpy as np
import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from photonswap.bath import (
    BathError,
    BathSpec,
    DephasingTable,
    bose_occupation,
    dephasing_table,
    discretize_ohmic,
    dressed_coefficients,
    dressing_phases,
    eta_abs_sq,
    f_number,
    load_discrete_csv,
    save_discrete_csv,
    thermal_factor,
    thermal_integral,
    thermal_integrand,
    vacuum_exponent,
    vacuum_exponent_quad,
    vacuum_factor,
)

mp.mp.dps = 40


def f_ohmic_closed(gamma, wc, t):
    """2 gamma (wc t - atan(wc t)) at 40 digits."""
    x = mp.mpf(wc) * mp.mpf(t)
    return float(2 * mp.mpf(gamma) * (x - mp.atan(x)))


def test_bath_spec_validation():
    with pytest.raises(BathError):
        BathSpec.ohmic(-1, 1)
    with pytest.raises(BathError):
        BathSpec.ohmic(1, 0)
    with pytest.raises(BathError):
        BathSpec.discrete([1.0, 0.0], [1, 1])
    with pytest.raises(BathError):
        BathSpec.discrete([1.0], [1, 1])
    with pytest.raises(BathError):
        BathSpec.ohmic(1, 1, r=-0.1)
    with pytest.raises(BathError):
        BathSpec("lorentzian")


def test_f_number_zero_and_closed_form():
    spec = BathSpec.ohmic(0.8, 1.7)
    assert f_number(spec, 0.0) == 0.0
    for t in (0.05, 0.5, 2.0, 11.0, 60.0):
        assert f_number(spec, t) == pytest.approx(f_ohmic_closed(0.8, 1.7, t), rel=1e-10)


@given(st.floats(1e-3, 50))
@settings(max_examples=30, deadline=None)
def test_f_number_odd(t):
    for spec in (BathSpec.ohmic(1.0, 1.0), BathSpec.discrete([0.3, 1.2, 4.0], [0.2, 0.5, 0.1])):
        assert f_number(spec, -t) == -f_number(spec, t)


def test_f_number_discrete():
    w = np.array([0.4, 1.5])
    x = np.array([0.3, 0.7])
    t = 2.2
    expect = 2 * np.sum(x * (t - np.sin(w * t) / w) / w)
    assert f_number(BathSpec.discrete(w, x), t) == pytest.approx(expect, rel=1e-13)


def test_eta():
    assert eta_abs_sq(1.3, 0.0) == 0.0
    assert eta_abs_sq(np.pi, 1.0) == pytest.approx(4 / np.pi**2)
    assert eta_abs_sq(2.0, np.pi) == pytest.approx(0.0, abs=1e-30)
    # |i (exp(-iwt) - 1) / w|^2 from the complex definition
    w, t = 0.7, 1.9
    assert eta_abs_sq(w, t) == pytest.approx(abs(1j * (np.exp(-1j * w * t) - 1) / w) ** 2, rel=1e-14)
    with pytest.raises(BathError):
        eta_abs_sq(0.0, 1.0)


def test_vacuum_factor_examples():
    spec = BathSpec.ohmic(1.0, 1.0, r=1.0)
    assert vacuum_factor(spec, 0, 1.0) == 1.0
    assert vacuum_factor(spec, 1, 1.0) == pytest.approx(2**-0.5, rel=1e-14)
    assert vacuum_factor(spec, 2, 1.0) == pytest.approx(2**-2, rel=1e-14)


@pytest.mark.parametrize("tau", [0.05, 0.7, np.pi, 9.0])
def test_vacuum_exponent_quadrature(tau):
    spec = BathSpec.ohmic(1.4, 0.6)
    assert vacuum_exponent_quad(spec, tau) == pytest.approx(1.4 * np.log1p((0.6 * tau) ** 2), rel=1e-10)


def test_discrete_converges_to_ohmic():
    spec = BathSpec.ohmic(1.0, 1.0, r=0.7)
    disc = discretize_ohmic(spec, 10_000)
    for tau in (0.5, np.pi / 2, np.pi):
        for dn in (1, 2):
            v_exact = vacuum_factor(spec, dn, tau)
            assert abs(vacuum_factor(disc, dn, tau) / v_exact - 1) < 1e-3
            for temp in (0.5, 2.0):
                t_exact = thermal_factor(spec, dn, tau, temp)
                assert abs(thermal_factor(disc, dn, tau, temp) / t_exact - 1) < 1e-3


def test_thermal_integral_limits():
    spec = BathSpec.ohmic(1.0, 1.3)
    assert thermal_integral(spec, 2.0, 0.0) == 0.0
    for tau, temp in ((0.5, 0.2), (2.0, 3.0)):
        limit = thermal_integrand(np.array([0.0]), tau, temp, 1.3)[0]
        assert limit == pytest.approx(temp * tau**2 / 4)
        near = thermal_integrand(np.array([1e-7]), tau, temp, 1.3)[0]
        assert near == pytest.approx(limit, rel=1e-6)


def test_thermal_integral_against_mpmath():
    def ref(tau, temp, wc):
        f = lambda w: mp.sin(w * tau / 2) ** 2 / (w * mp.exp(w / wc) * mp.expm1(w / temp))
        return float(mp.quad(f, mp.linspace(0, 80 * max(wc, temp), 60) + [mp.inf]))

    spec = BathSpec.ohmic(1.0, 1.0)
    for tau, temp in ((np.pi, 0.5), (np.pi / 4, 2.0), (0.3, 4.0)):
        assert thermal_integral(spec, tau, temp) == pytest.approx(ref(tau, temp, 1.0), rel=1e-9)


def test_thermal_integral_monotone_in_temperature():
    spec = BathSpec.ohmic(1.0, 1.0)
    for tau in (0.4, np.pi / 2, np.pi):
        vals = [thermal_integral(spec, tau, temp) for temp in np.linspace(0, 6, 25)]
        assert np.all(np.diff(vals) > 0)


def test_thermal_factor_examples():
    spec = BathSpec.ohmic(1.0, 1.0, r=0.5)
    assert thermal_factor(spec, 3, 1.0, 0.0) == 1.0
    assert thermal_factor(spec, 0, 1.0, 2.0) == 1.0
    i_val = thermal_integral(spec, 1.0, 2.0)
    assert thermal_factor(spec, 2, 1.0, 2.0) == pytest.approx(np.exp(-4 * 4 * 0.25 * i_val), rel=1e-14)
    # Two discrete modes, one placed where the mean occupation is exactly 1.
    temp = 0.9
    w = np.array([temp * np.log(2), 2.0])
    x = np.array([0.4, 0.1])
    tau = 1.7
    z = x * 4 * np.sin(w * tau / 2) ** 2 / w**2
    nbar = np.array([1.0, 1 / (np.exp(2.0 / temp) - 1)])
    assert bose_occupation(w[:1], temp)[0] == pytest.approx(1.0, rel=1e-14)
    expect = np.exp(-(z * nbar).sum())
    assert thermal_factor(BathSpec.discrete(w, x), 1, tau, temp) == pytest.approx(expect, rel=1e-13)


def test_dephasing_table_shapes_and_symmetry():
    spec = BathSpec.ohmic(1.0, 1.0, r=0.6)
    one = dephasing_table(spec, 1, 1.0, 1.0)
    np.testing.assert_array_equal(one.total, [[1.0]])
    tab = dephasing_table(spec, 3, np.pi / 2, 0.7)
    assert np.all(np.diag(tab.total) == 1.0)
    np.testing.assert_array_equal(tab.total, tab.total.T)
    assert len(np.unique(tab.total)) <= 3
    np.testing.assert_array_equal(tab.total, tab.d0 * tab.dT)
    cold = dephasing_table(spec, 4, 1.0, 0.0)
    np.testing.assert_array_equal(cold.dT, np.ones((4, 4)))
    assert np.all((tab.total > 0) & (tab.total <= 1))
    assert isinstance(DephasingTable.from_matrix(np.ones((2, 2))).total, np.ndarray)


def test_delta_n_squared_law():
    spec = BathSpec.ohmic(0.9, 1.4, r=0.3)
    tab = dephasing_table(spec, 6, 2.0, 1.5)
    for d in (tab.d0, tab.dT):
        base = np.log(d[0, 1])
        for n in range(6):
            for k in range(6):
                assert np.log(d[n, k]) / base == pytest.approx((n - k) ** 2, rel=1e-8, abs=1e-12)


def test_factors_decay_with_tau():
    spec = BathSpec.ohmic(1.0, 1.0, r=0.8)
    taus = np.linspace(0.05, np.pi, 40)
    for temp in (0.5, 2.0):
        d0 = [vacuum_factor(spec, 1, t) for t in taus]
        dT = [thermal_factor(spec, 1, t, temp) for t in taus]
        assert np.all(np.diff(d0) <= 0)
        assert np.all(np.diff(dT) <= 0)


def test_dressed_coefficients():
    spec = BathSpec.ohmic(1.0, 1.0, r=0.9)
    c = np.array([0.6, 0.48j, 0.64])
    p0 = np.exp(0.3j)
    out = dressed_coefficients(c, p0, spec, 1.2)
    assert out[0] == c[0]
    np.testing.assert_allclose(np.abs(out), np.abs(c), rtol=1e-15)
    f = f_ohmic_closed(1.0, 1.0, -1.2)
    n = np.arange(3)
    np.testing.assert_allclose(out, np.conj(p0) ** n * np.exp(-0.5j * n * (n + 1) * 0.81 * f) * c, rtol=1e-9)
    # n=1, r=1, F = pi, p0 = 1: c1 -> -c1
    assert dressing_phases(2, 1.0, 1.0, np.pi)[1] == pytest.approx(-1)


def test_csv_round_trip(tmp_path):
    spec = BathSpec.discrete([0.5, 1.25, 3.0], [0.1, 0.2, 0.05], r=0.4)
    path = tmp_path / "modes.csv"
    save_discrete_csv(spec, path)
    back = load_discrete_csv(path, r=0.4)
    np.testing.assert_array_equal(back.omegas, spec.omegas)
    np.testing.assert_array_equal(back.xi_sq, spec.xi_sq)
    bad = tmp_path / "bad.csv"
    bad.write_text("w,x\n1,2\n")
    with pytest.raises(BathError):
        load_discrete_csv(bad)
    bad.write_text("omega,xi_sq\n1,abc\n")
    with pytest.raises(BathError):
        load_discrete_csv(bad)


def test_vacuum_exponent_discrete_matches_sum():
    spec = BathSpec.discrete([0.5, 2.0], [0.3, 0.1])
    tau = 1.4
    expect = 0.3 * eta_abs_sq(0.5, tau) + 0.1 * eta_abs_sq(2.0, tau)
    assert vacuum_exponent(spec, tau) == pytest.approx(expect)
