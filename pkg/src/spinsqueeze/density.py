"""Spin-state data model: density matrices and statistical tensor parameters.

A spin-s state is carried either as a density matrix (:class:`SpinDensity`)
or as its expansion coefficients in the spherical tensor operator basis
(:class:`TensorParams`), related by

    rho = (Tr rho / (2s+1)) * sum_kq (-1)^q t^k_{-q} T^k_q,
    t^k_q = Tr(rho T^k_q) / Tr(rho).

Unnormalized traces are allowed everywhere; every derived quantity divides
by the trace. Tensor entries are always stored trace-normalized, with
t^0_0 = 1 implicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

import numpy as np

from .angular import clebsch_gordan, racah_w
from .errors import AngularMomentumError, HermiticityError, SchemaError
from .halfint import HalfInt, check_magnitude
from .tensor_ops import build_tau, spin_matrices

__all__ = [
    "TensorParams",
    "SpinDensity",
    "PositivityReport",
    "Spin1Bound",
    "OrientationReport",
    "from_tensors",
    "to_tensors",
    "polarization",
    "variance",
    "check_positivity",
    "purity_residual",
    "classify_orientation",
    "spin_scale_rank1",
    "spin_scale_rank2",
    "tensor_params_from_dict",
    "state_from_dict",
    "state_to_dict",
    "load_state_file",
]

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-10


def spin_scale_rank1(s) -> float:
    """sqrt(s(s+1)/3): converts rank-1 tensors to spin spherical components."""
    sv = HalfInt.of(s).value
    return math.sqrt(sv * (sv + 1) / 3.0)


def spin_scale_rank2(s) -> float:
    """sqrt(s(s+1)(2s-1)(2s+3)/30): the rank-2 weight in second moments.

    Vanishes at s = 1/2, where no rank-2 tensors exist.
    """
    sv = HalfInt.of(s).value
    return math.sqrt(sv * (sv + 1) * (2 * sv - 1) * (2 * sv + 3) / 30.0)


class TensorParams:
    """Trace-normalized spherical tensor parameters t^k_q of a spin-s state.

    Entries are a mapping (k, q) -> complex with integer 0 <= k <= 2s and
    |q| <= k; omitted entries are zero and t^0_0 is fixed at 1. The
    conjugation pairing t^k_q* = (-1)^q t^k_{-q} is enforced on
    construction (``fill_partners=True`` completes missing partners
    instead of rejecting them).
    """

    __slots__ = ("spin", "trace", "_entries")

    def __init__(self, spin, entries: Mapping, trace: float = 1.0,
                 fill_partners: bool = False):
        sh = check_magnitude(HalfInt.of(spin), "spin")
        trace = float(trace)
        if not math.isfinite(trace) or trace <= 0:
            raise ValueError(f"trace must be positive and finite, got {trace}")
        data: dict[tuple[int, int], complex] = {}
        for key, val in entries.items():
            k, q = int(key[0]), int(key[1])
            if k < 0 or k > sh.twice:
                raise AngularMomentumError(
                    f"rank k={k} outside 0..2s for spin {sh}")
            if abs(q) > k:
                raise AngularMomentumError(f"|q|={abs(q)} exceeds k={k}")
            data[(k, q)] = complex(val)
        if (0, 0) in data:
            if abs(data[(0, 0)] - 1.0) > 1e-9:
                raise ValueError(
                    f"t^0_0 must equal 1 after trace normalization, got {data[(0, 0)]}")
            del data[(0, 0)]
        if fill_partners:
            for (k, q), val in list(data.items()):
                if (k, -q) not in data:
                    data[(k, -q)] = (-1) ** q * val.conjugate()
        bad = []
        for (k, q), val in data.items():
            partner = data.get((k, -q), 0j)
            if abs(val.conjugate() - (-1) ** q * partner) > HERMITICITY_TOL:
                bad.append((k, q))
        if bad:
            raise HermiticityError(
                "conjugation pairing violated at (k, q) = "
                + ", ".join(map(str, sorted(bad))))
        self.spin = sh
        self.trace = trace
        self._entries = data

    def get(self, k: int, q: int) -> complex:
        if k == 0 and q == 0:
            return 1.0 + 0j
        return self._entries.get((k, q), 0j)

    def items(self) -> Iterator[tuple[tuple[int, int], complex]]:
        """Stored (k >= 1) entries in deterministic (k, q) order."""
        return iter(sorted(self._entries.items()))

    @property
    def max_rank(self) -> int:
        return self.spin.twice

    def with_trace(self, trace: float) -> "TensorParams":
        return TensorParams(self.spin, self._entries, trace=trace)

    def __repr__(self):
        body = ", ".join(f"t({k},{q})={v:.6g}" for (k, q), v in self.items())
        return f"TensorParams(spin={self.spin}, trace={self.trace:.6g}, {body or 'unpolarized'})"


@dataclass(frozen=True)
class SpinDensity:
    """A (2s+1) x (2s+1) Hermitian matrix with positive trace."""

    spin: HalfInt
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        sh = check_magnitude(HalfInt.of(self.spin), "spin")
        mat = np.array(self.matrix, dtype=complex)
        n = sh.twice + 1
        if mat.shape != (n, n):
            raise ValueError(f"matrix shape {mat.shape} != ({n}, {n}) for spin {sh}")
        scale = max(1.0, float(np.abs(mat).max()))
        if np.abs(mat - mat.conj().T).max() > HERMITICITY_TOL * scale:
            raise HermiticityError("density matrix is not Hermitian")
        tr = np.trace(mat)
        if abs(tr.imag) > HERMITICITY_TOL * scale or tr.real <= 0:
            raise ValueError(f"trace must be real and positive, got {tr}")
        mat.flags.writeable = False
        object.__setattr__(self, "spin", sh)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.spin.twice + 1

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def normalized_matrix(self) -> np.ndarray:
        return self.matrix / self.trace


def from_tensors(t: TensorParams) -> SpinDensity:
    """Assemble the density matrix from tensor parameters (exact inverse
    of :func:`to_tensors`)."""
    ts = t.spin.twice
    n = ts + 1
    rho = np.eye(n, dtype=complex)
    for (k, q), val in t.items():
        # (-1)^q t^k_{-q} T^k_q summed over q; reindexed to stored entries
        rho += (-1) ** q * val * build_tau(t.spin, k, -q)
    return SpinDensity(t.spin, rho * (t.trace / n))


def to_tensors(rho: SpinDensity) -> TensorParams:
    """Project a density matrix onto the tensor operator basis."""
    tr = np.trace(rho.matrix)
    if abs(tr) < 1e-300:
        raise ValueError("zero-trace density matrix has no tensor parameters")
    entries = {}
    for k in range(1, rho.spin.twice + 1):
        for q in range(-k, k + 1):
            val = np.trace(rho.matrix @ build_tau(rho.spin, k, q)) / tr
            entries[(k, q)] = complex(val)
    return TensorParams(rho.spin, entries, trace=float(tr.real))


def polarization(rho: SpinDensity) -> np.ndarray:
    """Vector polarization <S> / Tr(rho) as a Cartesian 3-vector."""
    sx, sy, sz = spin_matrices(rho.spin)
    tr = rho.trace
    return np.array([
        np.trace(rho.matrix @ sx).real / tr,
        np.trace(rho.matrix @ sy).real / tr,
        np.trace(rho.matrix @ sz).real / tr,
    ])


def variance(rho: SpinDensity, direction) -> float:
    """Variance of the spin component along a direction (normalized internally)."""
    d = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(d)
    if norm < 1e-300:
        raise ValueError("direction must be a non-zero vector")
    d = d / norm
    sx, sy, sz = spin_matrices(rho.spin)
    sn = d[0] * sx + d[1] * sy + d[2] * sz
    tr = rho.trace
    mean = np.trace(rho.matrix @ sn).real / tr
    second = np.trace(rho.matrix @ sn @ sn).real / tr
    return second - mean * mean


@dataclass(frozen=True)
class Spin1Bound:
    name: str
    value: float
    lower: float
    upper: float

    @property
    def satisfied(self) -> bool:
        return self.lower - PSD_TOL <= self.value <= self.upper + PSD_TOL


@dataclass(frozen=True)
class PositivityReport:
    psd: bool
    eigenvalues: np.ndarray          # ascending, trace-normalized
    spin1_bounds: Optional[list]     # only populated for s = 1

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])


def check_positivity(rho: SpinDensity) -> PositivityReport:
    """Eigenvalue PSD test, plus the published spin-1 boundary conditions.

    The spin-1 conditions are necessary constraints on the tensor
    parameters: the three diagonal occupations (1 +- sqrt(3/2) t^1_0 +
    t^2_0/sqrt(2))/3 and (1 - sqrt(2) t^2_0)/3 lie in [0, 1], the squared
    parameter norm t^1_0^2 + 2|t^2_2|^2 + 2|t^2_1|^2 + t^2_0^2 stays
    below 2, and 0 <= det(rho) <= 1/27.
    """
    eigs = np.linalg.eigvalsh(rho.normalized_matrix())
    psd = bool(eigs[0] >= -PSD_TOL)
    bounds = None
    if rho.spin.twice == 2:
        t = to_tensors(rho)
        t10 = t.get(1, 0).real
        t20 = t.get(2, 0).real
        t21 = abs(t.get(2, 1))
        t22 = abs(t.get(2, 2))
        r32 = math.sqrt(1.5)
        bounds = [
            Spin1Bound("occupation m=+1", (1 + r32 * t10 + t20 / math.sqrt(2)) / 3, 0.0, 1.0),
            Spin1Bound("occupation m=-1", (1 - r32 * t10 + t20 / math.sqrt(2)) / 3, 0.0, 1.0),
            Spin1Bound("occupation m=0", (1 - math.sqrt(2) * t20) / 3, 0.0, 1.0),
            Spin1Bound("parameter norm", t10 ** 2 + 2 * t22 ** 2 + 2 * t21 ** 2 + t20 ** 2, 0.0, 2.0),
            Spin1Bound("determinant", float(np.linalg.det(rho.normalized_matrix()).real), 0.0, 1.0 / 27.0),
        ]
    return PositivityReport(psd=psd, eigenvalues=eigs, spin1_bounds=bounds)


def _coupled_product(t: TensorParams, k1: int, k2: int, k: int, q: int) -> complex:
    """(t^{k1} x t^{k2})^k_q = sum C(k1 k2 k; q1 q2 q) t^{k1}_{q1} t^{k2}_{q2}."""
    total = 0j
    for q1 in range(-k1, k1 + 1):
        q2 = q - q1
        if abs(q2) > k2:
            continue
        a = t.get(k1, q1)
        if a == 0:
            continue
        b = t.get(k2, q2)
        if b == 0:
            continue
        total += clebsch_gordan(k1, k2, k, q1, q2, q) * a * b
    return total


def purity_residual(t: TensorParams) -> float:
    """How far the tensor parameters are from describing a pure state.

    rho^2 = rho translates into one constraint per (k, q):

        sum_{k1,k2} [k1][k2] W(s k1 s k2; s k) (t^{k1} x t^{k2})^k_q
            = sqrt(2s+1) t^k_q,

    with [k] = sqrt(2k+1). Returns the largest absolute violation; zero
    (to rounding) exactly for pure states.
    """
    s = t.spin
    kmax = s.twice
    worst = 0.0
    for k in range(0, kmax + 1):
        for q in range(-k, k + 1):
            lhs = 0j
            for k1 in range(0, kmax + 1):
                for k2 in range(abs(k - k1), min(kmax, k + k1) + 1):
                    w = racah_w(s, k1, s, k2, s, k)
                    if w == 0.0:
                        continue
                    prod = _coupled_product(t, k1, k2, k, q)
                    if prod == 0:
                        continue
                    lhs += math.sqrt((2 * k1 + 1) * (2 * k2 + 1)) * w * prod
            rhs = math.sqrt(s.twice + 1) * t.get(k, q)
            worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True)
class OrientationReport:
    oriented: bool
    axis: Optional[np.ndarray]
    populations: Optional[np.ndarray]   # along the axis, ordered m = s..-s


def classify_orientation(rho: SpinDensity) -> OrientationReport:
    """Decide whether the state is diagonal in some |s m> basis.

    Solves the linear system [rho, S.n] = 0 for a real axis n (three
    unknowns); when a non-trivial solution exists the state is rotated to
    that quantization axis and diagonality is confirmed. A state
    proportional to the identity is reported oriented along z by
    convention.
    """
    n = rho.dim
    mat = rho.normalized_matrix()
    if np.abs(mat - np.eye(n) / n).max() < 1e-12:
        return OrientationReport(True, np.array([0.0, 0.0, 1.0]), np.full(n, 1.0 / n))
    spins = spin_matrices(rho.spin)
    cols = []
    for sa in spins:
        comm = mat @ sa - sa @ mat
        cols.append(np.concatenate([comm.real.ravel(), comm.imag.ravel()]))
    a = np.column_stack(cols)
    _, svals, vt = np.linalg.svd(a)
    if svals[-1] > 1e-10 * max(1.0, svals[0]):
        return OrientationReport(False, None, None)
    axis = vt[-1]
    axis = axis / np.linalg.norm(axis)
    # deterministic sign: largest component positive
    lead = np.argmax(np.abs(axis))
    if axis[lead] < 0:
        axis = -axis
    theta = math.acos(max(-1.0, min(1.0, axis[2])))
    phi = math.atan2(axis[1], axis[0])
    from .angular import EulerAngles, wigner_d_matrix
    u = wigner_d_matrix(rho.spin, EulerAngles(phi, theta, 0.0))
    rotated = u.conj().T @ mat @ u
    off = rotated - np.diag(np.diag(rotated))
    if np.abs(off).max() > 1e-8:
        return OrientationReport(False, None, None)
    return OrientationReport(True, axis, np.real(np.diag(rotated)))


# ---------------------------------------------------------------------------
# JSON state schema
# ---------------------------------------------------------------------------

def tensor_params_from_dict(data: Mapping) -> TensorParams:
    """Parse the JSON state schema.

    ``{"spin": "1" | "3/2" | 1.5, "trace": 1.0,
       "tensors": [{"k": 2, "q": 0, "re": 0.5, "im": 0.0}, ...]}``

    Omitted (k, q) entries are zero; omitted Hermitian partners are filled
    from the pairing. Violations raise :class:`SchemaError`.
    """
    if not isinstance(data, Mapping):
        raise SchemaError("state file must contain a JSON object")
    if "spin" not in data:
        raise SchemaError("missing required key 'spin'")
    try:
        spin = HalfInt.of(data["spin"])
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"invalid spin value {data['spin']!r}: {exc}") from None
    trace = data.get("trace", 1.0)
    if not isinstance(trace, (int, float)) or isinstance(trace, bool):
        raise SchemaError(f"trace must be a number, got {trace!r}")
    tensors = data.get("tensors", [])
    if not isinstance(tensors, (list, tuple)):
        raise SchemaError("'tensors' must be an array")
    entries: dict[tuple[int, int], complex] = {}
    for i, item in enumerate(tensors):
        if not isinstance(item, Mapping):
            raise SchemaError(f"tensors[{i}] must be an object")
        try:
            k, q = int(item["k"]), int(item["q"])
        except (KeyError, ValueError, TypeError):
            raise SchemaError(f"tensors[{i}] needs integer 'k' and 'q'") from None
        re = item.get("re", 0.0)
        im = item.get("im", 0.0)
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            raise SchemaError(f"tensors[{i}] 're'/'im' must be numbers")
        if (k, q) in entries:
            raise SchemaError(f"duplicate tensor entry (k={k}, q={q})")
        entries[(k, q)] = complex(re, im)
    try:
        return TensorParams(spin, entries, trace=float(trace), fill_partners=True)
    except (AngularMomentumError, HermiticityError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def state_from_dict(data: Mapping) -> SpinDensity:
    return from_tensors(tensor_params_from_dict(data))


def state_to_dict(t: TensorParams) -> dict:
    """Serialize tensor parameters into the JSON state schema."""
    tensors = []
    for (k, q), val in t.items():
        tensors.append({"k": k, "q": q, "re": val.real, "im": val.imag})
    return {"spin": str(t.spin), "trace": t.trace, "tensors": tensors}


def load_state_file(path) -> tuple[TensorParams, SpinDensity]:
    """Read a state file; returns both tensor and matrix forms."""
    import json

    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"state file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from None
    params = tensor_params_from_dict(data)
    return params, from_tensors(params)
