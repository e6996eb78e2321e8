"""The mixed-state squeezing criterion and its closed forms."""

import math

import numpy as np
import pytest

from conftest import random_density, random_oriented, rotate_state
from spinsqueeze import (HalfInt, SpinDensity, TensorParams, analyze,
                         from_tensors, lf_criterion, lf_variances,
                         oriented_margin, spin_scale_rank1, variance)
from spinsqueeze.errors import AngularMomentumError, UnphysicalStateError
from spinsqueeze.frames import rotation_matrix

TABLE1_S1 = TensorParams(1, {(1, 0): 0.9, (2, 0): 0.5, (2, 2): 0.45, (2, -2): 0.45})


def stretched(twice_s: int) -> SpinDensity:
    n = twice_s + 1
    mat = np.zeros((n, n), dtype=complex)
    mat[0, 0] = 1.0
    return SpinDensity(HalfInt(twice_s), mat)


def test_coherent_state_sits_on_the_boundary():
    for ts in (1, 2, 3, 4):
        rep = analyze(stretched(ts))
        s = ts / 2
        assert rep.min_variance == pytest.approx(s / 2, abs=1e-12)
        assert rep.sz_half == pytest.approx(s / 2, abs=1e-12)
        assert abs(rep.q_margin) < 1e-12
        assert not rep.squeezed
        assert rep.xi == pytest.approx(1.0, abs=1e-12)


def test_table_row_squeezed_along_y():
    rep = analyze(from_tensors(TABLE1_S1))
    assert rep.squeezed
    assert rep.phi_min == pytest.approx(math.pi / 2)
    assert rep.min_variance == pytest.approx(0.289008, abs=1e-6)
    assert rep.variance_x0 == pytest.approx(0.808623, abs=1e-6)
    assert rep.sz_half == pytest.approx(0.367423, abs=1e-6)
    assert rep.q_margin == pytest.approx(0.367423 - 0.289008, abs=1e-6)


def test_unpolarized_state_reports_reason():
    rep = analyze(SpinDensity(1, np.eye(3) / 3))
    assert not rep.squeezed
    assert rep.reason == "no vector polarization"
    assert rep.sz_half == 0.0


def test_non_psd_input_rejected():
    with pytest.raises(UnphysicalStateError) as exc:
        analyze(from_tensors(TensorParams(1, {(1, 0): 2.0})))
    assert exc.value.eigenvalues is not None


def test_report_variance_curve_endpoints():
    rep = analyze(from_tensors(TABLE1_S1))
    assert rep.variance_at(0.0) == pytest.approx(rep.variance_x0, abs=1e-15)
    assert rep.variance_at(math.pi / 2) == pytest.approx(rep.variance_y0, abs=1e-14)
    d = rep.as_dict(phi_points=5)
    assert len(d["variance_curve"]) == 5
    assert d["squeezed"] is True


def test_closed_forms_match_matrix_route(rng):
    # variances along the report's own frame axes, from matrix arithmetic
    for ts in (2, 3, 4):
        for _ in range(15):
            rho = random_density(rng, ts)
            rep = analyze(rho)
            if rep.reason is not None:
                continue
            r = rotation_matrix(rep.frame)
            assert variance(rho, r[:, 0]) == pytest.approx(rep.variance_x0, abs=1e-10)
            assert variance(rho, r[:, 1]) == pytest.approx(rep.variance_y0, abs=1e-10)
            # the frame's z-axis is the mean spin direction
            assert np.abs(np.cross(rep.mean_spin, r[:, 2])).max() < 1e-10


# ---------------------------------------------------------------------------
# lf_criterion
# ---------------------------------------------------------------------------

def test_lf_criterion_table_row_both_azimuths():
    # spin 3/2 row (t2_0, t2_2, t1_0) = (0.7, 0.5, 1.06)
    m_y = lf_criterion("3/2", 1.06, 0.7, 0.5, math.pi / 2)
    m_x = lf_criterion("3/2", 1.06, 0.7, 0.5, 0.0)
    assert m_y > 0
    assert m_x < 0
    vx, vy, szh = lf_variances("3/2", 1.06, 0.7, 0.5)
    scale = spin_scale_rank1("3/2") ** 2   # 3/(s(s+1))
    assert m_y == pytest.approx((szh - vy) / scale, abs=1e-12)
    assert m_x == pytest.approx((szh - vx) / scale, abs=1e-12)


def test_lf_criterion_pure_vector_polarization_never_squeezes():
    # t^2 = 0: margin = f1 |t1_0|/2 - 1 <= 0 at the extremal spin-1 value
    extremal = math.sqrt(1.5)
    assert lf_criterion(1, extremal, 0.0, 0.0, 0.0) == pytest.approx(-0.25, abs=1e-12)
    assert lf_criterion(1, 0.9, 0.0, 0.0, 1.0) < 0


def test_lf_criterion_rejects_low_spin():
    with pytest.raises(AngularMomentumError):
        lf_criterion("1/2", 1.0, 0.0, 0.0, 0.0)


def test_lf_criterion_consistent_with_analyze(rng):
    scale_free = lambda s: spin_scale_rank1(s) ** 2
    for ts in (2, 3):
        for _ in range(20):
            rho = random_density(rng, ts)
            rep = analyze(rho)
            if rep.reason is not None:
                continue
            from spinsqueeze import special_lakin_frame
            params = special_lakin_frame(rho).params
            margin = lf_criterion(HalfInt(ts), params.get(1, 0).real,
                                  params.get(2, 0).real, params.get(2, 2).real,
                                  rep.phi_min)
            assert margin * scale_free(HalfInt(ts)) == pytest.approx(
                rep.q_margin, abs=1e-10)


# ---------------------------------------------------------------------------
# oriented states
# ---------------------------------------------------------------------------

def test_oriented_margin_boundary_cases():
    assert oriented_margin("1/2", [1.0, 0.0]) == pytest.approx(0.0, abs=1e-15)
    assert oriented_margin(1, [1.0, 0.0, 0.0]) == pytest.approx(0.0, abs=1e-15)
    assert oriented_margin(1, [1 / 3] * 3) < 0


def test_oriented_margin_validation():
    with pytest.raises(ValueError):
        oriented_margin(1, [0.5, 0.5])            # wrong length
    with pytest.raises(ValueError):
        oriented_margin(1, [0.7, 0.4, -0.1])      # negative
    with pytest.raises(ValueError):
        oriented_margin(1, [0.7, 0.1, 0.1])       # not normalized


def test_oriented_margin_never_positive(rng):
    for ts in (1, 2, 3, 4, 5):
        n = ts + 1
        for _ in range(2000):
            p = rng.dirichlet(np.ones(n))
            assert oriented_margin(HalfInt(ts), p) <= 1e-12


def test_oriented_states_never_squeezed(rng):
    for ts in (1, 2, 3, 4):
        for _ in range(100):
            rho, _, _ = random_oriented(rng, ts)
            assert not analyze(rho).squeezed


def test_spin_half_never_squeezed(rng):
    for _ in range(200):
        assert not analyze(random_density(rng, 1)).squeezed


def test_verdict_frame_independent(rng):
    base = from_tensors(TABLE1_S1)
    rep0 = analyze(base)
    for _ in range(20):
        rep = analyze(rotate_state(rng, base))
        assert rep.squeezed == rep0.squeezed
        assert rep.q_margin == pytest.approx(rep0.q_margin, abs=1e-10)
        assert rep.min_variance == pytest.approx(rep0.min_variance, abs=1e-10)
    mixed = random_density(rng, 4)
    rep0 = analyze(mixed)
    for _ in range(10):
        rep = analyze(rotate_state(rng, mixed))
        assert rep.squeezed == rep0.squeezed
        assert rep.q_margin == pytest.approx(rep0.q_margin, abs=1e-10)
