"""Exact angular-momentum coupling coefficients and rotation matrix elements.

All coupling coefficients are evaluated from single-sum factorial formulas
in exact rational arithmetic (arbitrary-precision integers, ``Fraction``)
and converted to floating point only at the API boundary. Coefficients
squared are rational, so the exact value is carried as ``(sign, square)``
pairs; :func:`clebsch_gordan_exact` and :func:`wigner_6j_exact` expose
this form.

Conventions, fixed package-wide:

* Clebsch-Gordan coefficients in the Condon-Shortley phase convention.
* ``racah_w(a, b, c, d, e, f) = (-1)^(a+b+c+d) {a b e; d c f}``.
* Active z-y-z Euler rotations,
  ``D^k_{q'q}(alpha, beta, gamma) = exp(-i q' alpha) d^k_{q'q}(beta) exp(-i q gamma)``.

Every function is pure; the memoized coefficient caches are only ever
appended to and are safe for concurrent readers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import AngularMomentumError
from .halfint import HalfInt, check_magnitude, check_projection

__all__ = [
    "EulerAngles",
    "clebsch_gordan",
    "clebsch_gordan_exact",
    "racah_w",
    "wigner_6j",
    "wigner_6j_exact",
    "wigner_9j",
    "wigner_d",
    "wigner_d_matrix",
    "little_d",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class EulerAngles:
    """z-y-z Euler angles of an active rotation, in radians.

    Normalized on construction to alpha, gamma in [0, 2*pi) and
    beta in [0, pi] (the same classical rotation; note that for
    half-integer ranks the 2*pi wrapping selects one sheet of SU(2)).
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        a, b, g = float(self.alpha), float(self.beta), float(self.gamma)
        if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(g)):
            raise ValueError("Euler angles must be finite")
        b = b % _TWO_PI
        if b > math.pi:
            a += math.pi
            g -= math.pi
            b = _TWO_PI - b
        object.__setattr__(self, "alpha", a % _TWO_PI)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "gamma", g % _TWO_PI)

    @staticmethod
    def identity() -> "EulerAngles":
        return EulerAngles(0.0, 0.0, 0.0)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)


def _fact2(twice: int) -> int:
    """(twice/2)! for an even non-negative twice-value."""
    if twice < 0 or twice % 2 != 0:
        raise AngularMomentumError(f"factorial argument {twice}/2 invalid")
    return math.factorial(twice // 2)


def _triangle_ok(ta: int, tb: int, tc: int) -> bool:
    return (abs(ta - tb) <= tc <= ta + tb) and (ta + tb + tc) % 2 == 0


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    """Squared triangle coefficient, exact."""
    return Fraction(
        _fact2(ta + tb - tc) * _fact2(ta - tb + tc) * _fact2(-ta + tb + tc),
        _fact2(ta + tb + tc + 2),
    )


@lru_cache(maxsize=None)
def _cg_exact(tj1: int, tj2: int, tj: int, tm1: int, tm2: int, tm: int):
    """(sign, square) of C(j1 j2 j; m1 m2 m), exact. Assumes valid parities."""
    if tm1 + tm2 != tm or not _triangle_ok(tj1, tj2, tj):
        return 0, Fraction(0)
    pre = Fraction(tj + 1) * _delta_sq(tj1, tj2, tj)
    pre *= (_fact2(tj1 + tm1) * _fact2(tj1 - tm1) * _fact2(tj2 + tm2)
            * _fact2(tj2 - tm2) * _fact2(tj + tm) * _fact2(tj - tm))
    kmin = max(0, (tj2 - tj - tm1) // 2, (tj1 - tj + tm2) // 2)
    kmax = min((tj1 + tj2 - tj) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (math.factorial(k)
               * _fact2(tj1 + tj2 - tj - 2 * k)
               * _fact2(tj1 - tm1 - 2 * k)
               * _fact2(tj2 + tm2 - 2 * k)
               * _fact2(tj - tj2 + tm1 + 2 * k)
               * _fact2(tj - tj1 - tm2 + 2 * k))
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0, Fraction(0)
    sign = 1 if total > 0 else -1
    return sign, pre * total * total


def _coerce_pair(j, m, names: str) -> tuple[HalfInt, HalfInt]:
    jh, mh = HalfInt.of(j), HalfInt.of(m)
    check_magnitude(jh, names[1])
    check_projection(jh, mh, names)
    return jh, mh


def clebsch_gordan_exact(j1, j2, j, m1, m2, m):
    """Exact Clebsch-Gordan coefficient as ``(sign, square: Fraction)``.

    The coefficient itself is ``sign * sqrt(square)``. Selection-rule
    failures give ``(0, Fraction(0))``; invalid (j, m) parities raise
    :class:`AngularMomentumError`.
    """
    j1h, m1h = _coerce_pair(j1, m1, "(j1, m1)")
    j2h, m2h = _coerce_pair(j2, m2, "(j2, m2)")
    jh, mh = _coerce_pair(j, m, "(j, m)")
    return _cg_exact(j1h.twice, j2h.twice, jh.twice, m1h.twice, m2h.twice, mh.twice)


def clebsch_gordan(j1, j2, j, m1, m2, m) -> float:
    """C(j1 j2 j; m1 m2 m) in the Condon-Shortley convention.

    Zero when m1 + m2 != m or the triangle rule fails.
    """
    sign, square = clebsch_gordan_exact(j1, j2, j, m1, m2, m)
    return sign * math.sqrt(square)


@lru_cache(maxsize=None)
def _six_j_exact(tj1: int, tj2: int, tj3: int, tj4: int, tj5: int, tj6: int):
    """(sign, square) of the 6-j symbol {j1 j2 j3; j4 j5 j6}, exact."""
    if not (_triangle_ok(tj1, tj2, tj3) and _triangle_ok(tj4, tj5, tj3)
            and _triangle_ok(tj4, tj2, tj6) and _triangle_ok(tj1, tj5, tj6)):
        return 0, Fraction(0)
    pre = (_delta_sq(tj1, tj2, tj3) * _delta_sq(tj4, tj5, tj3)
           * _delta_sq(tj1, tj5, tj6) * _delta_sq(tj4, tj2, tj6))
    zmin = max(tj1 + tj2 + tj3, tj4 + tj5 + tj3, tj1 + tj5 + tj6, tj4 + tj2 + tj6) // 2
    zmax = min(tj1 + tj2 + tj4 + tj5, tj1 + tj3 + tj4 + tj6, tj2 + tj3 + tj5 + tj6) // 2
    total = Fraction(0)
    for z in range(zmin, zmax + 1):
        den = (_fact2(2 * z - tj1 - tj2 - tj3) * _fact2(2 * z - tj4 - tj5 - tj3)
               * _fact2(2 * z - tj1 - tj5 - tj6) * _fact2(2 * z - tj4 - tj2 - tj6)
               * _fact2(tj1 + tj2 + tj4 + tj5 - 2 * z)
               * _fact2(tj1 + tj3 + tj4 + tj6 - 2 * z)
               * _fact2(tj2 + tj3 + tj5 + tj6 - 2 * z))
        total += Fraction((-1) ** z * math.factorial(z + 1), den)
    if total == 0:
        return 0, Fraction(0)
    sign = 1 if total > 0 else -1
    return sign, pre * total * total


def wigner_6j_exact(j1, j2, j3, j4, j5, j6):
    """Exact 6-j symbol {j1 j2 j3; j4 j5 j6} as ``(sign, square: Fraction)``."""
    tw = []
    for name, j in zip("j1 j2 j3 j4 j5 j6".split(), (j1, j2, j3, j4, j5, j6)):
        jh = HalfInt.of(j)
        check_magnitude(jh, name)
        tw.append(jh.twice)
    return _six_j_exact(*tw)


def wigner_6j(j1, j2, j3, j4, j5, j6) -> float:
    """The 6-j symbol {j1 j2 j3; j4 j5 j6}; zero when a triad fails."""
    sign, square = wigner_6j_exact(j1, j2, j3, j4, j5, j6)
    return sign * math.sqrt(square)


def racah_w(a, b, c, d, e, f) -> float:
    """Racah coefficient W(abcd; ef) = (-1)^(a+b+c+d) {a b e; d c f}."""
    ah, bh = HalfInt.of(a), HalfInt.of(b)
    ch, dh = HalfInt.of(c), HalfInt.of(d)
    phase_twice = ah.twice + bh.twice + ch.twice + dh.twice
    if phase_twice % 2 != 0:
        # a+b+c+d half-integral cannot satisfy any triad anyway
        return 0.0
    phase = -1.0 if (phase_twice // 2) % 2 else 1.0
    return phase * wigner_6j(a, b, e, d, c, f)


def wigner_9j(j11, j12, j13, j21, j22, j23, j31, j32, j33) -> float:
    """The 9-j symbol, via the single sum over three 6-j symbols.

    Zero when any row or column triad violates the triangle rules.
    """
    tw = []
    for name, j in zip(
            "j11 j12 j13 j21 j22 j23 j31 j32 j33".split(),
            (j11, j12, j13, j21, j22, j23, j31, j32, j33)):
        jh = HalfInt.of(j)
        check_magnitude(jh, name)
        tw.append(jh.twice)
    a, b, c, d, e, f, g, h, i = tw
    txmin = max(abs(a - i), abs(b - f), abs(d - h))
    txmax = min(a + i, b + f, d + h)
    total = 0.0
    for tx in range(txmin, txmax + 2, 2):
        s1, q1 = _six_j_exact(a, b, c, f, i, tx)
        if s1 == 0:
            continue
        s2, q2 = _six_j_exact(d, e, f, b, tx, h)
        if s2 == 0:
            continue
        s3, q3 = _six_j_exact(g, h, i, tx, a, d)
        if s3 == 0:
            continue
        phase = -1.0 if tx % 2 else 1.0
        total += (phase * (tx + 1) * s1 * s2 * s3
                  * math.sqrt(q1 * q2 * q3))
    return total


@lru_cache(maxsize=None)
def _d_prefactor(tk: int, tqp: int, tq: int) -> float:
    num = (_fact2(tk + tq) * _fact2(tk - tq)
           * _fact2(tk + tqp) * _fact2(tk - tqp))
    return math.sqrt(num)


def little_d(k, qp, q, beta: float) -> float:
    """Reduced rotation matrix element d^k_{q'q}(beta), Wigner's sum formula."""
    kh, qph = _coerce_pair(k, qp, "(k, q')")
    _, qh = _coerce_pair(k, q, "(k, q)")
    tk, tqp, tq = kh.twice, qph.twice, qh.twice
    c, s = math.cos(beta / 2.0), math.sin(beta / 2.0)
    nmin = max(0, (tq - tqp) // 2)
    nmax = min((tk + tq) // 2, (tk - tqp) // 2)
    pre = _d_prefactor(tk, tqp, tq)
    total = 0.0
    for n in range(nmin, nmax + 1):
        den = (_fact2(tk + tq - 2 * n) * math.factorial(n)
               * _fact2(tk - tqp - 2 * n) * _fact2(2 * n - tq + tqp))
        power_c = tk - 2 * n + (tq - tqp) // 2   # 2k - 2n + q - q'
        power_s = 2 * n - (tq - tqp) // 2        # 2n - q + q'
        sign = -1.0 if (n - (tq - tqp) // 2) % 2 else 1.0
        total += sign * (c ** power_c) * (s ** power_s) / den
    return pre * total


def wigner_d(k, qp, q, angles: EulerAngles) -> complex:
    """Rotation matrix element D^k_{q'q}(alpha, beta, gamma).

    ``D = exp(-i q' alpha) d^k_{q'q}(beta) exp(-i q gamma)``; as a matrix in
    (q', q) this is unitary and represents the active z-y-z rotation.
    """
    kh = HalfInt.of(k)
    qph, qh = HalfInt.of(qp), HalfInt.of(q)
    d = little_d(kh, qph, qh, angles.beta)
    return (cmath.exp(-1j * qph.value * angles.alpha) * d
            * cmath.exp(-1j * qh.value * angles.gamma))


def wigner_d_matrix(k, angles: EulerAngles) -> np.ndarray:
    """Full D^k matrix with rows q' = k..-k and columns q = k..-k."""
    kh = check_magnitude(HalfInt.of(k), "k")
    tk = kh.twice
    n = tk + 1
    out = np.empty((n, n), dtype=complex)
    ea, eg = angles.alpha, angles.gamma
    for i, tqp in enumerate(range(tk, -tk - 1, -2)):
        pa = cmath.exp(-1j * (tqp / 2.0) * ea)
        for j, tq in enumerate(range(tk, -tk - 1, -2)):
            d = little_d(kh, HalfInt(tqp), HalfInt(tq), angles.beta)
            out[i, j] = pa * d * cmath.exp(-1j * (tq / 2.0) * eg)
    return out
