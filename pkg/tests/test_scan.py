"""Scan kernels, backend equivalence, CSV determinism."""

import io
import math

import numpy as np
import pytest

from spinsqueeze import (ScanConfig, channel_squeezing, correlations,
                         couple_spin1, run_scan, to_tensors, write_csv)
from spinsqueeze.frames import euler_from_rotation, rotate_tensors
from spinsqueeze.scan import (COLUMNS, CSV_HEADER, available_backends,
                              evaluate_points, get_kernel, scan_backend)


def grid_arrays(rng, n):
    p1 = rng.uniform(0, 1, n)
    p2 = rng.uniform(0, 1, n)
    theta = rng.uniform(0.01, math.pi - 0.01, n)
    phi = rng.uniform(0, 2 * math.pi, n)
    return p1, p2, theta, phi


def test_backend_selected():
    assert scan_backend() in available_backends()


def test_backends_bitwise_identical(rng):
    backends = available_backends()
    if len(backends) < 2:
        pytest.skip("compiled kernel not built")
    p1, p2, theta, phi = grid_arrays(rng, 4000)
    outs = [evaluate_points(p1, p2, theta, phi, backend=name)
            for name in sorted(backends)]
    assert np.array_equal(outs[0], outs[1], equal_nan=True)


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        get_kernel("fortran")


def test_jobs_do_not_change_results(rng):
    p1, p2, theta, phi = grid_arrays(rng, 5000)
    base = evaluate_points(p1, p2, theta, phi, jobs=1)
    for jobs in (2, 3, 8):
        assert np.array_equal(base, evaluate_points(p1, p2, theta, phi, jobs=jobs),
                              equal_nan=True)


def test_kernel_matches_library_routes(rng):
    """Kernel columns against the high-level API, point by point."""
    for _ in range(40):
        a = rng.uniform(0.05, 1.0)
        b = rng.uniform(0.05, 1.0)
        theta = rng.uniform(0.05, math.pi - 0.05)
        phi = rng.uniform(0, 2 * math.pi)
        p1 = a * np.array([0.0, 0.0, 1.0])
        p2 = b * np.array([math.sin(theta), 0.0, math.cos(theta)])
        row = evaluate_points([a], [b], [theta], [phi])[0]
        col = {name: row[i] for i, name in enumerate(COLUMNS)}

        state = couple_spin1(p1, p2)
        assert col["weight"] == pytest.approx(state.weight, abs=1e-14)
        # tensor parameters in the distinguished frame
        frame = state.frame
        basis = np.column_stack([frame.x0, frame.y0, frame.z0])
        lf = rotate_tensors(state.params, euler_from_rotation(basis))
        assert col["t1_0"] == pytest.approx(lf.get(1, 0).real, abs=1e-12)
        assert col["t2_0"] == pytest.approx(lf.get(2, 0).real, abs=1e-12)
        assert col["t2_2"] == pytest.approx(lf.get(2, 2).real, abs=1e-12)
        assert abs(lf.get(2, 2).imag) < 1e-12

        sq = channel_squeezing(p1, p2, phi)
        assert col["variance_perp"] == pytest.approx(sq.variance_perp, abs=1e-13)
        assert col["sz_half"] == pytest.approx(sq.sz_expect / 2, abs=1e-13)
        assert col["q_value"] == pytest.approx(sq.q_value, abs=1e-13)
        assert bool(col["squeezed"]) == sq.squeezed

        c = correlations(p1, p2, phi)
        for comp in ("xx", "yy", "zz", "xz", "zy", "xy"):
            assert col[f"c_{comp}"] == pytest.approx(getattr(c, comp), abs=1e-13), comp


def test_degenerate_rows_marked_nan():
    out = evaluate_points([0.5], [0.5], [math.pi], [0.0])[0]
    col = dict(zip(COLUMNS, out))
    assert col["weight"] == pytest.approx((3 - 0.25) / 12, abs=1e-12)
    assert col["t1_0"] == 0.0
    assert col["sz_half"] == 0.0
    assert col["squeezed"] == 0.0
    for name in ("t2_0", "t2_2", "variance_perp", "q_value", "c_xx", "c_zz"):
        assert math.isnan(col[name]), name


def test_scan_config_validation():
    with pytest.raises(ValueError):
        ScanConfig(p1=[1.2], p2=[0.5], theta=[0.3], phi=[0.0])
    with pytest.raises(ValueError):
        ScanConfig(p1=[0.5], p2=[0.5], theta=[], phi=[0.0])


def test_run_scan_row_order():
    config = ScanConfig(p1=[0.3, 0.6], p2=[0.5], theta=[0.1, 0.2, 0.3], phi=[0.0, 1.0])
    res = run_scan(config)
    assert res.data.shape == (12, len(COLUMNS))
    # phi fastest, then theta, then p2, then p1
    assert np.array_equal(res.phi[:4], [0.0, 1.0, 0.0, 1.0])
    assert np.array_equal(res.theta[:4], [0.1, 0.1, 0.2, 0.2])
    assert res.p1[0] == 0.3 and res.p1[-1] == 0.6


def csv_string(res) -> str:
    buf = io.StringIO()
    write_csv(res, buf)
    return buf.getvalue()


def test_csv_format():
    config = ScanConfig(p1=[1.0], p2=[1.0], theta=[math.pi / 2], phi=[0.0])
    text = csv_string(run_scan(config))
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert len(fields) == len(COLUMNS) + 4
    q = dict(zip(CSV_HEADER.split(","), fields))
    assert q["squeezed"] == "1"
    assert float(q["q_value"]) == pytest.approx(math.sqrt(2) / 2 - 0.5, abs=1e-12)
    # 12 significant digits
    assert q["theta_rad"] == "%.12g" % (math.pi / 2)


def test_csv_byte_identical_across_jobs_and_runs(rng):
    config = ScanConfig(p1=np.linspace(0.1, 1, 7), p2=[0.85],
                        theta=np.linspace(0.01, 3.1, 40),
                        phi=np.linspace(0, 1.5, 5))
    texts = {csv_string(run_scan(config, jobs=j)) for j in (1, 2, 5, 1)}
    assert len(texts) == 1
    backends = available_backends()
    if len(backends) == 2:
        a = csv_string(run_scan(config, backend="python"))
        b = csv_string(run_scan(config, backend="cython"))
        assert a == b
