"""Irreducible spherical tensor operators and spin matrices.

Basis ordering is fixed throughout the package: row/column 0 corresponds
to m = s, descending to m = -s. With that ordering S_z = diag(s, ..., -s)
and the rank-1 operators reduce to the spherical Pauli matrices at
s = 1/2.

Matrix elements follow the Madison normalization,
``<s m'|T^k_q|s m> = sqrt(2k+1) C(s k s; m q m')`` so that
``Tr(T^k_q^dagger T^k'_q') = (2s+1) delta_kk' delta_qq'``.

Construction is lazy and memoized per (s, k, q); the returned arrays are
frozen (non-writeable) so cached values are safe to share between threads.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .angular import _cg_exact
from .errors import AngularMomentumError
from .halfint import HalfInt, check_magnitude

__all__ = ["build_tau", "spin_matrices", "projection_values"]


def projection_values(s) -> list[HalfInt]:
    """Projections m = s, s-1, ..., -s in basis order."""
    ts = HalfInt.of(s).twice
    return [HalfInt(tm) for tm in range(ts, -ts - 1, -2)]


@lru_cache(maxsize=None)
def _tau_cached(ts: int, k: int, q: int) -> np.ndarray:
    n = ts + 1
    root = math.sqrt(2 * k + 1)
    out = np.zeros((n, n), dtype=complex)
    for i, tmp in enumerate(range(ts, -ts - 1, -2)):      # row: m'
        for j, tm in enumerate(range(ts, -ts - 1, -2)):   # column: m
            sign, square = _cg_exact(ts, 2 * k, ts, tm, 2 * q, tmp)
            if sign:
                out[i, j] = sign * root * math.sqrt(square)
    out.flags.writeable = False
    return out


def build_tau(s, k, q) -> np.ndarray:
    """The (2s+1)x(2s+1) matrix of the spherical tensor operator T^k_q.

    Requires integer rank 0 <= k <= 2s and |q| <= k. The k = 0 operator is
    the identity. The returned array is read-only and shared; copy before
    mutating.
    """
    sh = check_magnitude(HalfInt.of(s), "s")
    kh = HalfInt.of(k)
    qh = HalfInt.of(q)
    if not kh.is_integer or not qh.is_integer:
        raise AngularMomentumError(f"tensor rank indices must be integers, got k={kh}, q={qh}")
    ki, qi = kh.twice // 2, qh.twice // 2
    if ki < 0 or ki > sh.twice:
        raise AngularMomentumError(f"rank k={ki} outside 0..2s for s={sh}")
    if abs(qi) > ki:
        raise AngularMomentumError(f"|q|={abs(qi)} exceeds k={ki}")
    return _tau_cached(sh.twice, ki, qi)


@lru_cache(maxsize=None)
def _spin_cached(ts: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    s = ts / 2.0
    n = ts + 1
    ms = np.array([tm / 2.0 for tm in range(ts, -ts - 1, -2)])
    sz = np.diag(ms).astype(complex)
    sp = np.zeros((n, n), dtype=complex)
    for j in range(1, n):
        m = ms[j]
        sp[j - 1, j] = math.sqrt(s * (s + 1) - m * (m + 1))
    sx = (sp + sp.conj().T) / 2.0
    sy = (sp - sp.conj().T) / 2j
    for arr in (sx, sy, sz):
        arr.flags.writeable = False
    return sx, sy, sz


def spin_matrices(s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(S_x, S_y, S_z) from the ladder-operator matrix elements.

    Satisfies S x S = iS; the spherical components equal
    sqrt(s(s+1)/3) T^1_q. Read-only shared arrays.
    """
    sh = check_magnitude(HalfInt.of(s), "s")
    if sh.twice == 0:
        raise AngularMomentumError("spin matrices need s >= 1/2")
    return _spin_cached(sh.twice)
