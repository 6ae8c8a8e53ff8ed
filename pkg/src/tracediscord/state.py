"""Two-qubit states: validation, Bloch form, named families, classification.

Basis order throughout is |00>, |01>, |10>, |11> with qubit A first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import linalg
from .errors import DomainError, NonHermitian, NotApplicable, NotPositive, TraceNotOne

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10
CLASSIFY_TOL = 1e-12
QC_CHECK_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated two-qubit density matrix. Build it with :func:`validate`."""

    matrix: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)

    @property
    def eigenvalues(self) -> np.ndarray:
        return linalg.hermitian_eigenvalues(self.matrix)

    def swapped(self) -> "DensityMatrix":
        return DensityMatrix(_frozen(SWAP @ self.matrix @ SWAP))


@dataclass(frozen=True, eq=False)
class BlochForm:
    x_a: np.ndarray
    x_b: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x_a", _frozen(np.asarray(self.x_a, dtype=float).reshape(3)))
        object.__setattr__(self, "x_b", _frozen(np.asarray(self.x_b, dtype=float).reshape(3)))
        object.__setattr__(self, "gamma", _frozen(np.asarray(self.gamma, dtype=float).reshape(3, 3)))


class StateTag(str, enum.Enum):
    CLASS_A = "class_a"
    CLASS_B = "class_b"
    RANK_ONE_GAMMA = "rank_one_gamma"
    QUANTUM_CLASSICAL = "quantum_classical"
    X_STATE = "x_state"
    GENERAL = "general"


@dataclass(frozen=True)
class StateClass:
    tag: StateTag
    params: dict[str, Any] = field(default_factory=dict)


def validate(m) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity; return a frozen state."""
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (4, 4):
        raise ValueError(f"a two-qubit state is 4x4, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("state has non-finite entries")
    residual = linalg.hermiticity_residual(arr)
    if residual > HERMITIAN_TOL:
        raise NonHermitian(f"hermiticity violated: max|rho - rho^dagger| = {residual:.3e}")
    trace = np.trace(arr)
    if abs(trace - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace must be 1, got {trace.real:.15g}{trace.imag:+.3g}j")
    lowest = linalg.hermitian_eigenvalues(arr)[0]
    if lowest < -POSITIVITY_TOL:
        raise NotPositive(f"positivity violated: smallest eigenvalue {lowest:.3e}")
    return DensityMatrix(_frozen(0.5 * (arr + arr.conj().T)))


def to_bloch(rho: DensityMatrix) -> BlochForm:
    m = np.asarray(rho.matrix)
    x_a = [np.trace(m @ np.kron(s, I2)) for s in PAULI]
    x_b = [np.trace(m @ np.kron(I2, s)) for s in PAULI]
    gamma = [[np.trace(m @ np.kron(si, sj)) for sj in PAULI] for si in PAULI]
    values = np.concatenate([np.ravel(x_a), np.ravel(x_b), np.ravel(gamma)])
    imag = float(np.max(np.abs(values.imag)))
    if imag > HERMITIAN_TOL:
        raise NonHermitian(f"Pauli expectation values are complex (max imag {imag:.3e})")
    return BlochForm(np.real(x_a), np.real(x_b), np.real(gamma))


def bloch_matrix(b: BlochForm) -> np.ndarray:
    """Assemble the 4x4 matrix of a Bloch form without validating it."""
    m = np.kron(I2, I2).astype(complex)
    for i, s in enumerate(PAULI):
        m += b.x_a[i] * np.kron(s, I2) + b.x_b[i] * np.kron(I2, s)
        for j, t in enumerate(PAULI):
            m += b.gamma[i, j] * np.kron(s, t)
    return m / 4.0


def from_bloch(b: BlochForm) -> DensityMatrix:
    return validate(bloch_matrix(b))


def make_bell_diagonal(c1: float, c2: float, c3: float) -> DensityMatrix:
    """Mixture of Bell states with ``Gamma = diag(c1, c2, c3)``."""
    return from_bloch(BlochForm(np.zeros(3), np.zeros(3), np.diag([c1, c2, c3])))


def qubit_state(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    return 0.5 * (I2 + s[0] * PAULI[0] + s[1] * PAULI[1] + s[2] * PAULI[2])


def _projector(n) -> np.ndarray:
    return qubit_state(n)


def make_quantum_classical(p: float, s0, s1) -> DensityMatrix:
    """``p rho_0 (x) |0><0| + (1-p) rho_1 (x) |1><1|`` with Bloch vectors s0, s1 on A."""
    s0 = np.asarray(s0, dtype=float)
    s1 = np.asarray(s1, dtype=float)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"qc weight p must lie in [0, 1], got {p}")
    for name, s in (("s0", s0), ("s1", s1)):
        if s.shape != (3,):
            raise DomainError(f"{name} must be a 3-vector")
        if np.linalg.norm(s) > 1.0 + 1e-12:
            raise DomainError(f"|{name}| must be <= 1, got {np.linalg.norm(s):.6g}")
    ket0 = np.diag([1.0, 0.0]).astype(complex)
    ket1 = np.diag([0.0, 1.0]).astype(complex)
    return validate(p * np.kron(qubit_state(s0), ket0) + (1 - p) * np.kron(qubit_state(s1), ket1))


def make_x_state(diag, rho32: complex, rho41: complex) -> DensityMatrix:
    """X-shaped state; ``rho32`` sits at row 3 col 2 and ``rho41`` at row 4 col 1."""
    d = np.asarray(diag, dtype=float)
    if d.shape != (4,):
        raise DomainError("x-state diagonal needs 4 entries")
    if np.any(d < 0):
        raise DomainError(f"x-state nonnegative diagonal violated: {d.tolist()}")
    if abs(d.sum() - 1.0) > TRACE_TOL:
        raise DomainError(f"x-state trace: diagonal sums to {d.sum():.15g}, not 1")
    if d[0] * d[3] < abs(rho41) ** 2 - 1e-12:
        raise DomainError(f"x-state positivity: rho11*rho44 = {d[0] * d[3]:.6g} < |rho41|^2 = {abs(rho41) ** 2:.6g}")
    if d[1] * d[2] < abs(rho32) ** 2 - 1e-12:
        raise DomainError(f"x-state positivity: rho22*rho33 = {d[1] * d[2]:.6g} < |rho32|^2 = {abs(rho32) ** 2:.6g}")
    m = np.diag(d).astype(complex)
    m[2, 1], m[1, 2] = rho32, np.conj(rho32)
    m[3, 0], m[0, 3] = rho41, np.conj(rho41)
    return validate(m)


def x_state_parameters(m, tol: float = CLASSIFY_TOL) -> dict[str, float]:
    """Read ``(g1, g2, g3, xa3)`` off an X-shaped matrix.

    Phases of the two coherences are discarded (they can be removed with
    local z rotations), so ``g1 = 2(|rho32| + |rho41|) >= |g2|``.
    Raises :class:`NotApplicable` when an entry outside the X pattern exceeds ``tol``.
    """
    arr = np.asarray(m, dtype=complex)
    mask = np.ones((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = False
    mask[np.arange(4), 3 - np.arange(4)] = False
    stray = float(np.max(np.abs(arr[mask])))
    if stray > tol:
        raise NotApplicable(f"not an X state: entry of size {stray:.3e} outside the X pattern")
    d = arr.diagonal().real
    r32 = abs(arr[2, 1])
    r41 = abs(arr[3, 0])
    return {
        "g1": 2.0 * (r32 + r41),
        "g2": 2.0 * (r32 - r41),
        "g3": 1.0 - 2.0 * (d[1] + d[2]),
        "xa3": 2.0 * (d[0] + d[1]) - 1.0,
        "rho32": r32,
        "rho41": r41,
    }


def _quantum_classical_params(b: BlochForm, svd: linalg.SignedSVD, tol: float):
    """Return QC parameters if the state is p rho0 (x) P(n) + (1-p) rho1 (x) P(-n), else None."""
    if abs(svd.gamma[1]) > tol:
        return None
    if abs(svd.gamma[0]) > tol:
        n = np.asarray(svd.omega[0], dtype=float)
    elif np.linalg.norm(b.x_b) > tol:
        n = b.x_b / np.linalg.norm(b.x_b)
    else:
        return None
    c = float(b.x_b @ n)
    if np.linalg.norm(b.x_b - c * n) > tol:
        return None
    p = 0.5 * (1.0 + c)
    if not tol < p < 1.0 - tol:
        return None
    u = b.gamma @ n
    s0 = (b.x_a + u) / (2.0 * p)
    s1 = (b.x_a - u) / (2.0 * (1.0 - p))
    if max(np.linalg.norm(s0), np.linalg.norm(s1)) > 1.0 + QC_CHECK_TOL:
        return None
    rebuilt = p * np.kron(qubit_state(s0), _projector(n)) + (1 - p) * np.kron(qubit_state(s1), _projector(-n))
    if np.max(np.abs(rebuilt - bloch_matrix(b))) > QC_CHECK_TOL:
        return None
    l0, l1 = float(np.linalg.norm(s0)), float(np.linalg.norm(s1))
    if l0 > 0 and l1 > 0:
        phi = float(np.arctan2(np.linalg.norm(linalg.cross(s0, s1)), linalg.dot(s0, s1)))
    else:
        phi = 0.0
    return {"p": p, "s0": min(l0, 1.0), "s1": min(l1, 1.0), "phi": phi, "axis_b": n}


def classify(b: BlochForm, tol: float = CLASSIFY_TOL) -> StateClass:
    """Most specific closed-form family of a state.

    Checked in order: class A (``x_a = 0``), class B (equal ``|gamma_k|``),
    X state with a nonzero coherence, quantum-classical with both branch
    weights nonzero, rank-one correlation matrix, and finally general.
    """
    svd = linalg.signed_svd_so3(b.gamma)
    g = np.abs(svd.gamma)
    if np.linalg.norm(b.x_a) <= tol:
        return StateClass(StateTag.CLASS_A, {"gamma": svd.gamma})
    if g[0] - g[2] <= tol:
        return StateClass(StateTag.CLASS_B, {"gamma": svd.gamma})
    try:
        xp = x_state_parameters(bloch_matrix(b), tol)
    except NotApplicable:
        xp = None
    if xp is not None and max(xp["rho32"], xp["rho41"]) > tol:
        return StateClass(StateTag.X_STATE, {k: xp[k] for k in ("g1", "g2", "g3", "xa3")})
    qc = _quantum_classical_params(b, svd, tol)
    if qc is not None:
        return StateClass(StateTag.QUANTUM_CLASSICAL, qc)
    if g[1] <= tol:
        return StateClass(StateTag.RANK_ONE_GAMMA, {"gamma": svd.gamma, "w1": svd.o[0]})
    return StateClass(StateTag.GENERAL, {})


# JSON schema: {"matrix": [[[re, im] x4] x4]}

def to_json_obj(rho: DensityMatrix) -> dict:
    m = np.asarray(rho.matrix)
    return {"matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m]}


def matrix_from_json_obj(obj) -> np.ndarray:
    """Parse the state schema; ``ValueError`` messages name the offending field."""
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise ValueError('field "matrix": missing (expected {"matrix": [[[re, im], ...], ...]})')
    rows = obj["matrix"]
    if not isinstance(rows, list) or len(rows) != 4:
        raise ValueError('field "matrix": expected a list of 4 rows')
    m = np.zeros((4, 4), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise ValueError(f"field matrix[{i}]: expected a list of 4 entries")
        for j, entry in enumerate(row):
            ok = (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
            )
            if not ok:
                raise ValueError(f"field matrix[{i}][{j}]: expected a [re, im] pair of numbers, got {entry!r}")
            m[i, j] = complex(entry[0], entry[1])
    return m
