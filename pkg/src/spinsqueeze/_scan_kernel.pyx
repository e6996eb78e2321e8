# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled scan kernel: per-point channel-pair evaluation.

Expression-for-expression identical to _scan_kernel_py so both backends
produce bit-identical output. See that module for the column layout and
the degenerate-row policy.
"""

from libc.math cimport cos, sin, sqrt, NAN

cdef double _SQRT6 = sqrt(6.0)
cdef double _SQRT3 = sqrt(3.0)
cdef double _SQRT23 = sqrt(2.0 / 3.0)
cdef double _DEGENERATE_TOL2 = 1e-20
cdef double _MARGIN_TOL = 1e-12


def evaluate_into(double[::1] p1m, double[::1] p2m,
                  double[::1] theta, double[::1] phi,
                  double[:, ::1] out):
    """Fill out[i, :] for every point; all arguments length-N (out N x 14)."""
    cdef Py_ssize_t i, j, n = p1m.shape[0]
    cdef double a, b, ct, st, cp, sp, a2, b2, pd, den, weight, ps2, cross, cross2
    cdef double ps, cp2, c2p, px1, pz1, pz2, t10, t20, t22, var, szh, q
    cdef double sin2t, cxx, cyy, cxz, pn, czz, czy
    with nogil:
        for i in range(n):
            a = p1m[i]
            b = p2m[i]
            ct = cos(theta[i])
            st = sin(theta[i])
            cp = cos(phi[i])
            sp = sin(phi[i])
            a2 = a * a
            b2 = b * b
            pd = a * b * ct
            den = 3.0 + pd
            weight = den / 12.0
            ps2 = a2 + b2 + 2.0 * pd
            cross = a * b * st
            cross2 = cross * cross
            if ps2 <= _DEGENERATE_TOL2:
                out[i, 0] = weight
                out[i, 1] = 0.0
                out[i, 2] = NAN
                out[i, 3] = NAN
                out[i, 4] = NAN
                out[i, 5] = 0.0
                out[i, 6] = NAN
                out[i, 7] = 0.0
                for j in range(8, 14):
                    out[i, j] = NAN
                continue
            ps = sqrt(ps2)
            cp2 = cp * cp
            c2p = cp2 - sp * sp
            px1 = cross / ps
            pz1 = (a2 + pd) / ps
            pz2 = (b2 + pd) / ps
            t10 = _SQRT6 * ps / den
            t20 = 2.0 * _SQRT3 / den * (_SQRT23 * pz1 * pz2 + px1 * px1 / _SQRT6)
            t22 = -_SQRT3 * px1 * px1 / den
            var = 2.0 * (ps2 - cross2 * cp2) / (den * ps2)
            szh = ps / den
            q = 0.5 * ps + cross2 / ps2 * cp2 - 1.0
            sin2t = st * st
            cxx = (ps2 - pd * (a2 + b2) - 2.0 * a2 * b2 * (1.0 + sin2t * c2p)) / (4.0 * den * ps2)
            cyy = (ps2 - 2.0 * a2 * b2 * (1.0 - sin2t * c2p) - pd * (a2 + b2)) / (4.0 * den * ps2)
            cxz = cross * (b2 - a2) * cp / (2.0 * den * ps2)
            pn = 4.0 * a2 * b2 + 2.0 * pd * (a2 + b2) - sin2t
            czz = 1.0 / 12.0 - ps2 / (den * den) + pn / (3.0 * den * ps2)
            czy = (a2 - b2) * cross * sp / (2.0 * den * ps2)
            out[i, 0] = weight
            out[i, 1] = t10
            out[i, 2] = t20
            out[i, 3] = t22
            out[i, 4] = var
            out[i, 5] = szh
            out[i, 6] = q
            out[i, 7] = 1.0 if q > _MARGIN_TOL else 0.0
            out[i, 8] = cxx
            out[i, 9] = cyy
            out[i, 10] = czz
            out[i, 11] = cxz
            out[i, 12] = czy
            out[i, 13] = 0.0
