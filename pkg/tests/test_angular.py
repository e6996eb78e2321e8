"""Coupling coefficients and rotation matrix elements.

Expected values come from independent routes: hand-evaluated closed
forms, Clebsch-Gordan contraction oracles for the 6-j and 9-j symbols,
and a matrix-exponential oracle for the rotation matrices.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from spinsqueeze import (EulerAngles, HalfInt, clebsch_gordan,
                         clebsch_gordan_exact, little_d, racah_w, wigner_6j,
                         wigner_9j, wigner_d, wigner_d_matrix)
from spinsqueeze.errors import AngularMomentumError
from spinsqueeze.frames import euler_from_rotation, rotation_matrix
from spinsqueeze.tensor_ops import spin_matrices


def cg_safe(j1, j2, j, m1, m2, m):
    """Zero instead of raising for parity-invalid (j, m) pairs."""
    for jj, mm in ((j1, m1), (j2, m2), (j, m)):
        tj, tm = HalfInt.of(jj).twice, HalfInt.of(mm).twice
        if (tj - tm) % 2 != 0 or abs(tm) > tj:
            return 0.0
    return clebsch_gordan(j1, j2, j, m1, m2, m)


def halfrange(j):
    tj = HalfInt.of(j).twice
    return [HalfInt(t) for t in range(-tj, tj + 1, 2)]


# ---------------------------------------------------------------------------
# Clebsch-Gordan
# ---------------------------------------------------------------------------

def test_cg_trivial_couplings():
    assert clebsch_gordan(1, 0, 1, 0, 0, 0) == 1.0
    assert clebsch_gordan("1/2", "1/2", 1, "1/2", "1/2", 1) == 1.0


def test_cg_closed_form_value():
    # C(1 1 2; 0 0 0) = sqrt(2/3), from the explicit factorial sum
    assert clebsch_gordan(1, 1, 2, 0, 0, 0) == pytest.approx(math.sqrt(2 / 3), abs=1e-15)
    sign, square = clebsch_gordan_exact(1, 1, 2, 0, 0, 0)
    assert sign == 1 and square == Fraction(2, 3)


def test_cg_selection_rules():
    assert clebsch_gordan(1, 1, 2, 0, 1, 0) == 0.0      # m1 + m2 != m
    assert clebsch_gordan(1, 1, 3, 0, 0, 0) == 0.0      # triangle violated
    assert clebsch_gordan("1/2", "1/2", 2, "1/2", "1/2", 1) == 0.0


def test_cg_parity_domain_error():
    with pytest.raises(AngularMomentumError):
        clebsch_gordan("1/2", 0, "1/2", 1, 0, 1)
    with pytest.raises(AngularMomentumError):
        clebsch_gordan(1, 1, 1, "1/2", "1/2", 1)


def _sqrt_decompose(f: Fraction) -> tuple[Fraction, int]:
    """sqrt(f) = coeff * sqrt(d) with rational coeff and squarefree d."""
    n = f.numerator * f.denominator
    square, free = 1, 1
    d = 2
    while d * d <= n:
        count = 0
        while n % d == 0:
            n //= d
            count += 1
        square *= d ** (count // 2)
        if count % 2:
            free *= d
        d += 1
    free *= n
    return Fraction(square, f.denominator), free


def test_cg_orthogonality_exact():
    # sum_{m1,m2} C(j1 j2 j; m1 m2 m) C(j1 j2 j'; m1 m2 m') = delta delta,
    # verified in exact surd arithmetic (tolerance zero) for j1, j2 <= 2.
    for tj1 in range(0, 5):
        for tj2 in range(0, 5):
            j1, j2 = HalfInt(tj1), HalfInt(tj2)
            couplings = [HalfInt(tj) for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)]
            for j in couplings:
                for jp in couplings:
                    for m in halfrange(j):
                        for mp in halfrange(jp):
                            if m != mp:
                                continue  # every term carries a zero factor
                            surds: dict[int, Fraction] = {}
                            for m1 in halfrange(j1):
                                m2 = m - m1
                                if abs(m2.twice) > tj2:
                                    continue
                                s1, q1 = clebsch_gordan_exact(j1, j2, j, m1, m2, m)
                                s2, q2 = clebsch_gordan_exact(j1, j2, jp, m1, m2, mp)
                                if s1 == 0 or s2 == 0:
                                    continue
                                coeff, free = _sqrt_decompose(q1 * q2)
                                surds[free] = surds.get(free, Fraction(0)) + s1 * s2 * coeff
                            expected = Fraction(1) if (j == jp and m == mp) else Fraction(0)
                            assert surds.get(1, Fraction(0)) == expected, (j1, j2, j, jp, m)
                            for free, coeff in surds.items():
                                if free != 1:
                                    assert coeff == 0, (j1, j2, j, jp, m, free)


def test_cg_swap_symmetry(rng):
    # C(j1 j2 j; m1 m2 m) = (-1)^(j1+j2-j) C(j2 j1 j; m2 m1 m)
    for _ in range(200):
        tj1, tj2 = rng.integers(0, 5, size=2)
        tj_opts = range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)
        tj = rng.choice(list(tj_opts))
        tm1 = rng.choice(list(range(-tj1, tj1 + 1, 2))) if tj1 else 0
        tm2 = rng.choice(list(range(-tj2, tj2 + 1, 2))) if tj2 else 0
        tm = tm1 + tm2
        if abs(tm) > tj:
            continue
        a = clebsch_gordan(*(HalfInt(int(t)) for t in (tj1, tj2, tj, tm1, tm2, tm)))
        b = clebsch_gordan(*(HalfInt(int(t)) for t in (tj2, tj1, tj, tm2, tm1, tm)))
        phase = (-1) ** ((tj1 + tj2 - tj) // 2)
        assert a == pytest.approx(phase * b, abs=1e-14)


# ---------------------------------------------------------------------------
# Racah W / 6-j
# ---------------------------------------------------------------------------

def _recoupling_sum(a, b, c, d, e, f, gamma):
    """<(ab)e, d; c | a, (bd)f; c> = [e][f] W(abcd; ef) via CG contraction."""
    total = 0.0
    for alpha in halfrange(a):
        for beta in halfrange(b):
            eps = alpha + beta
            if abs(eps.twice) > HalfInt.of(e).twice:
                continue
            delta = HalfInt.of(gamma) - eps
            if abs(delta.twice) > HalfInt.of(d).twice:
                continue
            phi = beta + delta
            total += (cg_safe(a, b, e, alpha, beta, eps)
                      * cg_safe(e, d, c, eps, delta, gamma)
                      * cg_safe(b, d, f, beta, delta, phi)
                      * cg_safe(a, f, c, alpha, phi, gamma))
    return total


@pytest.mark.parametrize("args", [
    (1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 2, 2),
    ("3/2", 1, "3/2", 1, "3/2", 2),
    (2, 1, 1, 2, 1, 2),
    ("1/2", 1, "1/2", 1, "3/2", "1/2"),
])
def test_racah_w_against_recoupling_oracle(args):
    a, b, c, d, e, f = args
    gamma = "1/2" if HalfInt.of(c).twice % 2 else 0
    norm = math.sqrt((HalfInt.of(e).twice + 1) * (HalfInt.of(f).twice + 1))
    assert norm * racah_w(a, b, c, d, e, f) == pytest.approx(
        _recoupling_sum(a, b, c, d, e, f, gamma), abs=1e-13)


def test_racah_w_triangle_selection():
    # two of the triads here have half-integer perimeter
    assert racah_w("1/2", 1, "1/2", 1, "1/2", "1/2") == 0.0
    assert wigner_6j(1, 1, 3, 1, 1, 1) == 0.0
    assert racah_w(1, 1, 1, 1, 5, 1) == 0.0


def test_6j_known_value():
    # {1 1 1; 1 1 1} = 1/6, a standard closed-form special case
    assert wigner_6j(1, 1, 1, 1, 1, 1) == pytest.approx(1 / 6, abs=1e-15)


# ---------------------------------------------------------------------------
# 9-j
# ---------------------------------------------------------------------------

def _ninej_projection_sum(js):
    """Contraction of six CG coefficients over all projections, divided by
    [j13][j23][j31][j32]; evaluated at the stretched total projection."""
    j11, j12, j13, j21, j22, j23, j31, j32, j33 = [HalfInt.of(j) for j in js]
    m33 = j33
    total = 0.0
    for m11 in halfrange(j11):
        for m12 in halfrange(j12):
            m13 = m11 + m12
            if abs(m13.twice) > j13.twice:
                continue
            for m21 in halfrange(j21):
                m31 = m11 + m21
                if abs(m31.twice) > j31.twice:
                    continue
                m22 = HalfInt(m33.twice - m13.twice - m21.twice)
                if abs(m22.twice) > j22.twice:
                    continue
                m23 = m21 + m22
                m32 = m12 + m22
                if abs(m23.twice) > j23.twice or abs(m32.twice) > j32.twice:
                    continue
                total += (cg_safe(j11, j12, j13, m11, m12, m13)
                          * cg_safe(j21, j22, j23, m21, m22, m23)
                          * cg_safe(j13, j23, j33, m13, m23, m33)
                          * cg_safe(j11, j21, j31, m11, m21, m31)
                          * cg_safe(j12, j22, j32, m12, m22, m32)
                          * cg_safe(j31, j32, j33, m31, m32, m33))
    norm = math.sqrt((j13.twice + 1) * (j23.twice + 1)
                     * (j31.twice + 1) * (j32.twice + 1))
    return total / norm


def test_9j_all_zero():
    assert wigner_9j(*([0] * 9)) == 1.0


def test_9j_channel_coupling_case():
    js = ("1/2", "1/2", 1, "1/2", "1/2", 1, 1, 1, 0)
    assert wigner_9j(*js) == pytest.approx(_ninej_projection_sum(js), abs=1e-14)


def _valid_triads(js):
    rows = [js[0:3], js[3:6], js[6:9]]
    cols = [js[0::3], js[1::3], js[2::3]]
    for (a, b, c) in rows + cols:
        if not (abs(a - b) <= c <= a + b) or (a + b + c) % 2:
            return False
    return True


def test_9j_exhaustive_small_against_projection_oracle():
    # every triangle-valid combination with all arguments <= 1
    checked = 0
    for combo in np.ndindex(*(3,) * 9):
        if not _valid_triads(combo):
            continue
        js = [HalfInt(int(t)) for t in combo]
        assert wigner_9j(*js) == pytest.approx(
            _ninej_projection_sum(js), abs=1e-12), combo
        checked += 1
    assert checked > 50


def test_9j_random_arguments_up_to_two_against_oracle(rng):
    checked = 0
    while checked < 60:
        combo = tuple(int(t) for t in rng.integers(0, 5, size=9))
        if not _valid_triads(combo):
            continue
        js = [HalfInt(t) for t in combo]
        assert wigner_9j(*js) == pytest.approx(
            _ninej_projection_sum(js), abs=1e-12), combo
        checked += 1


def test_9j_one_zero_reduces_to_6j():
    # {a b c; d e c; g g 0} = (-1)^(b+c+d+g) / sqrt((2c+1)(2g+1)) {a b c; e d g}
    cases = [(1, 1, 2, 1, 1, 1), ("1/2", "1/2", 1, "1/2", "1/2", 1),
             ("3/2", "1/2", 1, "1/2", "3/2", 2), (1, 2, 1, 2, 1, 2)]
    for (a, b, c, d, e, g) in cases:
        lhs = wigner_9j(a, b, c, d, e, c, g, g, 0)
        tsum = sum(HalfInt.of(x).twice for x in (b, c, d, g))
        phase = (-1.0) ** (tsum // 2)
        nc = HalfInt.of(c).twice + 1
        ng = HalfInt.of(g).twice + 1
        rhs = phase / math.sqrt(nc * ng) * wigner_6j(a, b, c, e, d, g)
        assert lhs == pytest.approx(rhs, abs=1e-14)


# ---------------------------------------------------------------------------
# Rotation matrix elements
# ---------------------------------------------------------------------------

def test_identity_rotation_is_kronecker():
    ident = EulerAngles.identity()
    for k in ("1/2", 1, "3/2", 2):
        d = wigner_d_matrix(k, ident)
        assert np.abs(d - np.eye(d.shape[0])).max() < 1e-15


def test_little_d_closed_forms():
    for beta in (0.0, 0.35, 1.2, math.pi / 2, 2.8, math.pi):
        assert little_d("1/2", "1/2", "1/2", beta) == pytest.approx(
            math.cos(beta / 2), abs=1e-15)
        assert little_d(1, 0, 0, beta) == pytest.approx(math.cos(beta), abs=1e-15)


def test_wigner_d_bounds_checked():
    with pytest.raises(AngularMomentumError):
        wigner_d(1, 2, 0, EulerAngles.identity())
    with pytest.raises(AngularMomentumError):
        wigner_d(1, "1/2", 0, EulerAngles.identity())


def _expm_unitary(generator: np.ndarray, angle: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(generator)
    return (vecs * np.exp(-1j * angle * vals)) @ vecs.conj().T


def test_d_matrix_against_matrix_exponential_oracle(rng):
    for tk in (1, 2, 3, 4, 8):
        sx, sy, sz = spin_matrices(HalfInt(tk))
        for _ in range(5):
            a, b, g = rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            left = wigner_d_matrix(HalfInt(tk), EulerAngles(a, b, g))
            right = _expm_unitary(sz, a) @ _expm_unitary(sy, b) @ _expm_unitary(sz, g)
            assert np.abs(left - right).max() < 1e-12


def test_d_matrix_unitarity(rng):
    for tk in (1, 2, 3, 4, 5, 6, 7, 8):
        for _ in range(4):
            angles = EulerAngles(rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi),
                                 rng.uniform(0, 2 * np.pi))
            d = wigner_d_matrix(HalfInt(tk), angles)
            assert np.abs(d @ d.conj().T - np.eye(tk + 1)).max() < 1e-12


def test_d_matrix_composition(rng):
    # D(R1) D(R2) = D(R1 o R2) for integer ranks (the SO(3) composition;
    # half-integer ranks live on the double cover where a sign can appear)
    for k in (1, 2, 3, 4):
        for _ in range(5):
            r1 = EulerAngles(rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi),
                             rng.uniform(0, 2 * np.pi))
            r2 = EulerAngles(rng.uniform(0, 2 * np.pi), rng.uniform(0, np.pi),
                             rng.uniform(0, 2 * np.pi))
            combined = euler_from_rotation(rotation_matrix(r1) @ rotation_matrix(r2))
            left = wigner_d_matrix(k, r1) @ wigner_d_matrix(k, r2)
            right = wigner_d_matrix(k, combined)
            assert np.abs(left - right).max() < 1e-12


def test_euler_normalization_preserves_rotation(rng):
    for _ in range(50):
        raw = rng.uniform(-10, 10, size=3)
        angles = EulerAngles(*raw)
        assert 0 <= angles.alpha < 2 * np.pi
        assert 0 <= angles.beta <= np.pi
        assert 0 <= angles.gamma < 2 * np.pi
        ca, sa = np.cos(raw[0]), np.sin(raw[0])
        cb, sb = np.cos(raw[1]), np.sin(raw[1])
        cc, sc = np.cos(raw[2]), np.sin(raw[2])
        rz1 = np.array([[ca, -sa, 0], [sa, ca, 0], [0, 0, 1]])
        ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
        rz2 = np.array([[cc, -sc, 0], [sc, cc, 0], [0, 0, 1]])
        assert np.abs(rotation_matrix(angles) - rz1 @ ry @ rz2).max() < 1e-12


def test_euler_angles_require_finite():
    with pytest.raises(ValueError):
        EulerAngles(math.nan, 0.0, 0.0)
