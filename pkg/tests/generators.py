"""Seeded random two-qubit states for the test suite."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from tracediscord.state import (
    I2,
    PAULI,
    BlochForm,
    bloch_matrix,
    make_quantum_classical,
    make_x_state,
    qubit_state,
    validate,
)

# Bloch correlation matrices of |Phi+>, |Phi->, |Psi+>, |Psi->
BELL_GAMMAS = np.array([[1, -1, 1], [-1, 1, 1], [1, 1, -1], [-1, -1, -1]], dtype=float)


def unit_vector(rng) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def ball_vector(rng, radius: float = 1.0) -> np.ndarray:
    return unit_vector(rng) * radius * rng.uniform() ** (1.0 / 3.0)


def random_density(rng, rank: int | None = None):
    """Ginibre-distributed state of the given rank (random rank if omitted)."""
    k = int(rng.integers(1, 5)) if rank is None else rank
    g = rng.normal(size=(4, k)) + 1j * rng.normal(size=(4, k))
    m = g @ g.conj().T
    return validate(m / np.trace(m).real)


def random_hermitian(rng, n: int = 4) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def random_local_unitary(rng) -> np.ndarray:
    u = unitary_group.rvs(2, random_state=rng)
    v = unitary_group.rvs(2, random_state=rng)
    return np.kron(u, v)


def conjugate(rho, u: np.ndarray):
    m = np.asarray(rho.matrix)
    return validate(u @ m @ u.conj().T)


def depolarize_b(rho, q: float):
    """``(id (x) Phi_q)(rho) = (1 - q) rho + q rho_A (x) I/2``."""
    m = np.asarray(rho.matrix).reshape(2, 2, 2, 2)
    rho_a = np.einsum("ajbj->ab", m)
    return validate((1.0 - q) * np.asarray(rho.matrix) + q * np.kron(rho_a, I2 / 2.0))


def random_x_state(rng, zero_coherence: str | None = None):
    """X state with random phases; ``zero_coherence`` in {None, "rho32", "rho41"}."""
    d = rng.dirichlet(np.ones(4))
    r41 = np.sqrt(d[0] * d[3]) * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    r32 = np.sqrt(d[1] * d[2]) * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    if zero_coherence == "rho32":
        r32 = 0.0
    elif zero_coherence == "rho41":
        r41 = 0.0
    return make_x_state(d, r32, r41)


def random_bell_weights(rng) -> np.ndarray:
    return rng.dirichlet(np.ones(4))


def bell_diagonal_c(weights) -> np.ndarray:
    return np.asarray(weights) @ BELL_GAMMAS


def random_rank_one(rng):
    """State with a rank-one correlation matrix and generic local Bloch vectors."""
    while True:
        b = BlochForm(ball_vector(rng), ball_vector(rng),
                      rng.uniform(-1, 1) * np.outer(unit_vector(rng), unit_vector(rng)))
        lam = rng.uniform(0.2, 1.0)
        b = BlochForm(lam * b.x_a, lam * b.x_b, lam * b.gamma)
        m = bloch_matrix(b)
        if np.linalg.eigvalsh(m)[0] >= 0:
            return validate(m)


def random_quantum_classical(rng):
    return make_quantum_classical(rng.uniform(0.05, 0.95), ball_vector(rng), ball_vector(rng))


def random_classical_quantum(rng):
    """``sum_i p_i |i><i| (x) rho_i`` with A's basis along a random axis."""
    n = unit_vector(rng)
    p = rng.uniform()
    s0, s1 = ball_vector(rng), ball_vector(rng)
    m = p * np.kron(qubit_state(n), qubit_state(s0)) + (1 - p) * np.kron(qubit_state(-n), qubit_state(s1))
    return validate(m)


def singlet():
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return validate(np.outer(psi, psi.conj()))


def class_b_mixture(p: float, r_a) -> "object":
    """``p rho_A (x) I/2 + (1 - p) |Psi-><Psi-|``."""
    return validate(p * np.kron(qubit_state(r_a), I2 / 2.0) + (1 - p) * np.asarray(singlet().matrix))


def pauli_vec(v) -> np.ndarray:
    return v[0] * PAULI[0] + v[1] * PAULI[1] + v[2] * PAULI[2]
