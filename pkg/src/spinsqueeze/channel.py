"""Coupling two polarized spin-1/2 systems into a channel spin-1 state.

Each qubit is specified by a polarization vector p with |p| <= 1 through
rho(i) = (1 + sigma . p_i)/2. The product state, projected onto total
spin 1, is again of the standard tensor form

    rho = w [1 + sum t^k_q T^k_q^dagger],    w = (3 + p1.p2)/12,

with closed-form tensor parameters

    t^1_q = sqrt(6)/(3 + p1.p2) (p1 + p2)_q,
    t^2_q = 2 sqrt(3)/(3 + p1.p2) (p1 x p2)^2_q   (rank-2 tensor product).

Three independent routes to these parameters are implemented: the closed
forms, a recoupling contraction through 9-j symbols, and a brute-force
4x4 projection (:func:`project_spin1`). Squeezing and the spin-spin
correlations of the projected pair are evaluated both from published
closed forms (verbatim, see :func:`correlations`) and from matrix
arithmetic (:func:`correlations_oracle`); genuine disagreements between
the two are reported by :func:`verify_correlations`, never patched over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .angular import clebsch_gordan, wigner_9j
from .density import SpinDensity, TensorParams
from .errors import LakinFrameUndefined
from .halfint import HalfInt

__all__ = [
    "ChannelFrame", "ChannelState", "ChannelSqueezing", "Correlations",
    "CorrelationMismatch", "couple_spin1", "couple_spin1_9j", "project_oracle",
    "channel_geometry", "channel_squeezing", "correlations",
    "correlations_oracle", "verify_correlations",
    "ThresholdScanConfig", "ThresholdScanResult", "threshold_scan",
]

DEGENERATE_TOL = 1e-10
MARGIN_TOL = 1e-12

_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


def _as_polarization(p, name: str) -> np.ndarray:
    v = np.asarray(p, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite")
    if np.linalg.norm(v) > 1.0 + 1e-12:
        raise ValueError(f"|{name}| = {np.linalg.norm(v):.6g} exceeds 1")
    return v


def _spherical(v: np.ndarray) -> dict[int, complex]:
    """Spherical components of a real vector: V_0 = V_z,
    V_{+-1} = -+(V_x +- i V_y)/sqrt(2)."""
    return {
        1: -(v[0] + 1j * v[1]) / math.sqrt(2.0),
        0: complex(v[2]),
        -1: (v[0] - 1j * v[1]) / math.sqrt(2.0),
    }


def _qubit_density(p: np.ndarray) -> np.ndarray:
    return 0.5 * (_I2 + p[0] * _SX + p[1] * _SY + p[2] * _SZ)


@lru_cache(maxsize=1)
def _triplet_basis() -> np.ndarray:
    """Rows are <m1 m2|1 m> coefficient vectors for m = 1, 0, -1;
    product basis ordered (up up, up dn, dn up, dn dn)."""
    rows = []
    for tm in (2, 0, -2):
        row = np.zeros(4, dtype=complex)
        for i1, tm1 in enumerate((1, -1)):
            for i2, tm2 in enumerate((1, -1)):
                row[2 * i1 + i2] = clebsch_gordan(
                    HalfInt(1), HalfInt(1), HalfInt(2),
                    HalfInt(tm1), HalfInt(tm2), HalfInt(tm))
        rows.append(row)
    out = np.array(rows)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ChannelFrame:
    """The distinguished frame of the coupled pair: z along p1 + p2,
    x in the (p1, p2) plane with p1 at azimuth 0, y = z cross x."""

    x0: np.ndarray
    y0: np.ndarray
    z0: np.ndarray
    p1_components: np.ndarray    # (x0, y0, z0) components of p1
    p2_components: np.ndarray


@dataclass(frozen=True)
class ChannelState:
    """Spin-1 projection of a product of two polarized qubits.

    ``weight`` is the prefactor (3 + p1.p2)/12 of the normalized tensor
    expansion; the trace of the unnormalized projected matrix is three
    times that, the triplet probability (3 + p1.p2)/4. ``params`` are
    the tensor parameters in the same frame the polarizations were given
    in; ``frame`` is the distinguished frame (None when p1 + p2 = 0).
    """

    weight: float
    params: TensorParams
    frame: Optional[ChannelFrame]

    @property
    def triplet_probability(self) -> float:
        return 3.0 * self.weight


def channel_geometry(p1, p2) -> ChannelFrame:
    """Construct the distinguished frame and the polarization components
    in it. Components reproduce the closed forms

        p_x0(1) = P1 P2 sin(theta) / |p1+p2| = -p_x0(2),
        p_y0(i) = 0,
        p_z0(i) = (P_i^2 + p1.p2) / |p1+p2|.

    Raises :class:`LakinFrameUndefined` when p1 + p2 vanishes.
    """
    v1 = _as_polarization(p1, "p1")
    v2 = _as_polarization(p2, "p2")
    total = v1 + v2
    ps = float(np.linalg.norm(total))
    if ps <= DEGENERATE_TOL:
        raise LakinFrameUndefined("p1 + p2 = 0: no distinguished frame")
    z0 = total / ps
    trans = v1 - np.dot(v1, z0) * z0
    tnorm = float(np.linalg.norm(trans))
    if tnorm > 1e-12:
        x0 = trans / tnorm
    else:
        # collinear pair: any transverse axis serves; pick deterministically
        seed = np.array([1.0, 0.0, 0.0]) if abs(z0[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        x0 = seed - np.dot(seed, z0) * z0
        x0 /= np.linalg.norm(x0)
    y0 = np.cross(z0, x0)
    comp1 = np.array([np.dot(v1, x0), np.dot(v1, y0), np.dot(v1, z0)])
    comp2 = np.array([np.dot(v2, x0), np.dot(v2, y0), np.dot(v2, z0)])
    return ChannelFrame(x0=x0, y0=y0, z0=z0,
                        p1_components=comp1, p2_components=comp2)


def couple_spin1(p1, p2) -> ChannelState:
    """Tensor parameters of the spin-1 projection, from the closed forms."""
    v1 = _as_polarization(p1, "p1")
    v2 = _as_polarization(p2, "p2")
    pd = float(np.dot(v1, v2))
    den = 3.0 + pd
    s1 = _spherical(v1)
    s2 = _spherical(v2)
    entries: dict[tuple[int, int], complex] = {}
    for q in (-1, 0, 1):
        entries[(1, q)] = math.sqrt(6.0) / den * (s1[q] + s2[q])
    for q in range(-2, 3):
        acc = 0j
        for q1 in (-1, 0, 1):
            q2 = q - q1
            if abs(q2) <= 1:
                acc += clebsch_gordan(1, 1, 2, q1, q2, q) * s1[q1] * s2[q2]
        entries[(2, q)] = 2.0 * math.sqrt(3.0) / den * acc
    params = TensorParams(HalfInt(2), entries)
    try:
        frame = channel_geometry(v1, v2)
    except LakinFrameUndefined:
        frame = None
    return ChannelState(weight=den / 12.0, params=params, frame=frame)


@lru_cache(maxsize=None)
def _recoupling_weight(k1: int, k2: int, k: int) -> float:
    """[k1][k2] {1/2 1/2 k1; 1/2 1/2 k2; 1 1 k}."""
    nj = wigner_9j(HalfInt(1), HalfInt(1), HalfInt(2 * k1),
                   HalfInt(1), HalfInt(1), HalfInt(2 * k2),
                   HalfInt(2), HalfInt(2), HalfInt(2 * k))
    return math.sqrt((2 * k1 + 1) * (2 * k2 + 1)) * nj


def couple_spin1_9j(p1, p2) -> TensorParams:
    """Same tensor parameters through the recoupling (9-j) contraction:

        t^k_q = [6 sqrt(3)/(3 + p1.p2)] sum_{k1,k2} [k1][k2]
                {1/2 1/2 k1; 1/2 1/2 k2; 1 1 k} (t^{k1}(1) x t^{k2}(2))^k_q

    where t^0_0(i) = 1 and t^1_q(i) are the spherical components of p_i.
    """
    v1 = _as_polarization(p1, "p1")
    v2 = _as_polarization(p2, "p2")
    den = 3.0 + float(np.dot(v1, v2))
    s1 = _spherical(v1)
    s2 = _spherical(v2)

    def tk(s, k, q):
        if k == 0:
            return 1.0 if q == 0 else 0.0
        return s[q]

    entries: dict[tuple[int, int], complex] = {}
    for k in (1, 2):
        for q in range(-k, k + 1):
            acc = 0j
            for k1 in (0, 1):
                for k2 in (0, 1):
                    w = _recoupling_weight(k1, k2, k)
                    if w == 0.0:
                        continue
                    prod = 0j
                    for q1 in range(-k1, k1 + 1):
                        q2 = q - q1
                        if abs(q2) <= k2:
                            prod += (clebsch_gordan(k1, k2, k, q1, q2, q)
                                     * tk(s1, k1, q1) * tk(s2, k2, q2))
                    acc += w * prod
            entries[(k, q)] = 6.0 * math.sqrt(3.0) / den * acc
    return TensorParams(HalfInt(2), entries)


def project_oracle(p1, p2) -> SpinDensity:
    """Brute-force route: form the 4x4 product matrix, project onto the
    triplet subspace and express it in the |1 m> basis. The result is
    unnormalized; its trace is the triplet probability (3 + p1.p2)/4."""
    v1 = _as_polarization(p1, "p1")
    v2 = _as_polarization(p2, "p2")
    basis = _triplet_basis()
    rc = np.kron(_qubit_density(v1), _qubit_density(v2))
    return SpinDensity(HalfInt(2), basis.conj() @ rc @ basis.T)


@dataclass(frozen=True)
class ChannelSqueezing:
    """Closed-form squeezing data at transverse azimuth phi.

    ``q_value`` is the dimensionless margin |p1+p2|/2
    + |p1 x p2|^2 cos^2(phi)/|p1+p2|^2 - 1, positive exactly when the
    squeezing inequality holds; it equals (3 + p1.p2)/2 times
    (sz_expect/2 - variance_perp).
    """

    variance_perp: float
    sz_expect: float
    q_value: float
    squeezed: bool


def channel_squeezing(p1, p2, phi: float) -> ChannelSqueezing:
    """Evaluate the closed forms for the transverse variance, the mean
    spin and the squeezing margin of the projected pair."""
    v1 = _as_polarization(p1, "p1")
    v2 = _as_polarization(p2, "p2")
    pd = float(np.dot(v1, v2))
    den = 3.0 + pd
    total = v1 + v2
    ps2 = float(np.dot(total, total))
    if ps2 <= DEGENERATE_TOL ** 2:
        raise LakinFrameUndefined("p1 + p2 = 0: transverse direction undefined")
    ps = math.sqrt(ps2)
    cross = np.cross(v1, v2)
    cross2 = float(np.dot(cross, cross))
    cp = math.cos(phi)
    var = 2.0 * (ps2 - cross2 * cp * cp) / (den * ps2)
    sz = 2.0 * ps / den
    q = 0.5 * ps + cross2 / ps2 * cp * cp - 1.0
    return ChannelSqueezing(variance_perp=var, sz_expect=sz, q_value=q,
                            squeezed=bool(q > MARGIN_TOL))


@dataclass(frozen=True)
class Correlations:
    xx: float
    yy: float
    zz: float
    xz: float
    zy: float
    xy: float

    def as_dict(self) -> dict:
        return {"xx": self.xx, "yy": self.yy, "zz": self.zz,
                "xz": self.xz, "zy": self.zy, "xy": self.xy}


def correlations(p1, p2, phi: float) -> Correlations:
    """Spin-spin correlations of the projected pair, published closed forms.

    The forms are evaluated verbatim, including the C_zz auxiliary term
    P_n = 4 P1^2 P2^2 + 2 (p1.p2)(P1^2 + P2^2) - sin^2(theta) with a bare
    sin^2 of the opening angle, and C_xy = 0 identically. Both choices
    disagree with direct matrix arithmetic in parts of parameter space;
    see :func:`verify_correlations`.
    """
    v1 = _as_polarization(p1, "p1")
    v2 = _as_polarization(p2, "p2")
    a2 = float(np.dot(v1, v1))
    b2 = float(np.dot(v2, v2))
    pd = float(np.dot(v1, v2))
    den = 3.0 + pd
    total = v1 + v2
    ps2 = float(np.dot(total, total))
    if ps2 <= DEGENERATE_TOL ** 2:
        raise LakinFrameUndefined("p1 + p2 = 0: correlation frame undefined")
    cross = np.cross(v1, v2)
    cross2 = float(np.dot(cross, cross))
    crossn = math.sqrt(cross2)
    sin2t = cross2 / (a2 * b2) if a2 * b2 > DEGENERATE_TOL ** 2 else 0.0
    c2p = math.cos(2.0 * phi)
    cp = math.cos(phi)
    sp = math.sin(phi)
    cxx = (ps2 - pd * (a2 + b2) - 2.0 * a2 * b2 * (1.0 + sin2t * c2p)) / (4.0 * den * ps2)
    cyy = (ps2 - 2.0 * a2 * b2 * (1.0 - sin2t * c2p) - pd * (a2 + b2)) / (4.0 * den * ps2)
    cxz = crossn * (b2 - a2) * cp / (2.0 * den * ps2)
    pn = 4.0 * a2 * b2 + 2.0 * pd * (a2 + b2) - sin2t
    czz = 1.0 / 12.0 - ps2 / (den * den) + pn / (3.0 * den * ps2)
    czy = (a2 - b2) * crossn * sp / (2.0 * den * ps2)
    return Correlations(xx=cxx, yy=cyy, zz=czz, xz=cxz, zy=czy, xy=0.0)


def correlations_oracle(p1, p2, phi: float) -> Correlations:
    """Correlations from matrix arithmetic.

    C_ab = <S_a(1) S_b(2)> - <S_a(1)><S_b(2)> with half-Pauli factors,
    expectations in the normalized triplet projection, components along
    the frame axes rotated by phi about z0:
    (x0 cos phi + y0 sin phi, -x0 sin phi + y0 cos phi, z0). The
    projected state is exchange-symmetric, so C_ab = C_ba.
    """
    v1 = _as_polarization(p1, "p1")
    v2 = _as_polarization(p2, "p2")
    frame = channel_geometry(v1, v2)
    ax = math.cos(phi) * frame.x0 + math.sin(phi) * frame.y0
    ay = -math.sin(phi) * frame.x0 + math.cos(phi) * frame.y0
    az = frame.z0
    basis = _triplet_basis()
    proj = basis.T @ basis.conj()     # 4x4 projector onto the triplet
    rc = np.kron(_qubit_density(v1), _qubit_density(v2))
    rp = proj @ rc @ proj
    rp = rp / np.trace(rp)

    def s1(v):
        return np.kron((v[0] * _SX + v[1] * _SY + v[2] * _SZ) / 2.0, _I2)

    def s2(v):
        return np.kron(_I2, (v[0] * _SX + v[1] * _SY + v[2] * _SZ) / 2.0)

    def corr(va, vb):
        a, b = s1(va), s2(vb)
        return float((np.trace(rp @ a @ b)
                      - np.trace(rp @ a) * np.trace(rp @ b)).real)

    return Correlations(xx=corr(ax, ax), yy=corr(ay, ay), zz=corr(az, az),
                        xz=corr(ax, az), zy=corr(az, ay), xy=corr(ax, ay))


_FORMULA_NOTES = {
    "zz": "closed form uses P_n = 4 P1^2 P2^2 + 2 (p1.p2)(P1^2+P2^2) - sin^2(theta)",
    "xy": "closed form fixes C_xy = 0 for every phi",
}


@dataclass(frozen=True)
class CorrelationMismatch:
    component: str
    closed: float
    oracle: float
    p1: tuple
    p2: tuple
    phi: float
    note: str

    def __str__(self):
        return (f"C_{self.component}: closed {self.closed:+.12g} vs oracle "
                f"{self.oracle:+.12g} at p1={self.p1}, p2={self.p2}, "
                f"phi={self.phi:.6g} ({self.note})")


def verify_correlations(p1, p2, phi: float, tol: float = 1e-10) -> list[CorrelationMismatch]:
    """Compare closed forms against the matrix-arithmetic oracle.

    Returns one record per component whose closed form deviates from the
    oracle by more than ``tol``, naming the formula involved. The oracle
    is authoritative; the closed forms are never adjusted.
    """
    closed = correlations(p1, p2, phi)
    oracle = correlations_oracle(p1, p2, phi)
    out = []
    for comp in ("xx", "yy", "zz", "xz", "zy", "xy"):
        c = getattr(closed, comp)
        o = getattr(oracle, comp)
        if abs(c - o) > tol:
            out.append(CorrelationMismatch(
                component=comp, closed=c, oracle=o,
                p1=tuple(round(x, 12) for x in np.asarray(p1, dtype=float)),
                p2=tuple(round(x, 12) for x in np.asarray(p2, dtype=float)),
                phi=phi, note=_FORMULA_NOTES.get(comp, "closed form as published")))
    return out


# ---------------------------------------------------------------------------
# Threshold searches over polarization magnitude
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdScanConfig:
    """Grid specification for the minimum-polarization searches.

    At least 200 points per axis; theta runs over the open interval
    (0, pi) and the margin is maximized at phi = 0.
    """

    p_points: int = 400
    theta_points: int = 400

    def __post_init__(self):
        if self.p_points < 200 or self.theta_points < 200:
            raise ValueError("threshold scans need at least 200 points per axis")


@dataclass(frozen=True)
class ThresholdScanResult:
    min_polarization_equal: float      # |p1| = |p2| = P threshold
    min_polarization_vs_pure: float    # |p1| threshold against |p2| = 1
    p_resolution: float
    theta_resolution: float


def _first_squeezed(p_values: np.ndarray, theta: np.ndarray, pure_partner: bool,
                    jobs: int, backend) -> float:
    from .scan import IDX_Q_VALUE, evaluate_points

    nt = theta.size
    ones = np.ones(nt)
    for p in p_values:
        p1 = np.full(nt, p)
        p2 = ones if pure_partner else p1
        out = evaluate_points(p1, p2, theta, np.zeros(nt), jobs=jobs, backend=backend)
        q = out[:, IDX_Q_VALUE]
        if np.any(q > MARGIN_TOL):
            return float(p)
    return math.inf


def threshold_scan(config: ThresholdScanConfig = ThresholdScanConfig(),
                   jobs: int = 1, backend: Optional[str] = None) -> ThresholdScanResult:
    """Least polarization magnitudes that admit squeezing.

    (a) equal magnitudes |p1| = |p2| = P: scan (P, theta) at phi = 0 for
    the smallest squeezed P (the analytic optimum over theta gives the
    margin P^2 - 3/4, so the true threshold is sqrt(3)/2);
    (b) against a pure partner |p2| = 1: the smallest squeezed |p1|.

    Both searches sweep P upward on a uniform grid, so the reported
    values overestimate the true thresholds by at most one grid step
    (plus the theta-grid refinement error).
    """
    p_values = np.linspace(0.0, 1.0, config.p_points)
    theta = np.linspace(0.0, math.pi, config.theta_points + 2)[1:-1]
    equal = _first_squeezed(p_values, theta, pure_partner=False,
                            jobs=jobs, backend=backend)
    vs_pure = _first_squeezed(p_values, theta, pure_partner=True,
                              jobs=jobs, backend=backend)
    return ThresholdScanResult(
        min_polarization_equal=equal,
        min_polarization_vs_pure=vs_pure,
        p_resolution=float(p_values[1] - p_values[0]),
        theta_resolution=float(theta[1] - theta[0]),
    )
