"""Discord carried across an XX spin chain.

Qubit 0 sits outside the chain and starts correlated with site 1. Once a
single excitation has moved along the chain with amplitude ``f(t)`` from
site 1 to site N, the state of (N, 0) is an X state fixed by ``f``. Its
discord with measurement on N is ``|f| (1 - |f|^2) / (2 sqrt(|f|^4 - |f|^2 + 1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import minimize_scalar

from .errors import ConsistencyError, DomainError, InvalidConfig, NotPositive
from .state import DensityMatrix, to_bloch, validate, x_state_parameters
from .tdd import MinimizerConfig, tdd_numeric, tdd_x_state

AMPLITUDE_TOL = 1e-12
SERIES_TOL = 1e-9


@dataclass(frozen=True)
class ChainConfig:
    """Chain length ``n``, coupling ``j`` and the sample times."""

    n: int
    j: float = 1.0
    t_grid: tuple[float, ...] = (0.0,)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidConfig(f"chain length must be an integer >= 2, got {self.n}")
        if not (self.j > 0 and math.isfinite(self.j)):
            raise InvalidConfig(f"coupling must be positive, got {self.j}")
        times = tuple(float(t) for t in self.t_grid)
        if not times:
            raise InvalidConfig("time grid is empty")
        if any(not math.isfinite(t) or t < 0 for t in times):
            raise InvalidConfig("times must be finite and non-negative")
        if any(b < a for a, b in zip(times, times[1:])):
            raise InvalidConfig("time grid must be non-decreasing")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "t_grid", times)

    @classmethod
    def uniform(cls, n: int, j: float, t_max: float, steps: int) -> "ChainConfig":
        """``steps`` evenly spaced times from 0 to ``t_max`` (just ``t = 0`` when ``steps == 1``)."""
        if steps < 1:
            raise InvalidConfig(f"steps must be positive, got {steps}")
        if not (t_max >= 0 and math.isfinite(t_max)):
            raise InvalidConfig(f"t_max must be finite and non-negative, got {t_max}")
        return cls(n, j, tuple(np.linspace(0.0, t_max, steps).tolist()))


@dataclass(frozen=True, eq=False)
class ChainSample:
    t: float
    f: complex
    rho: DensityMatrix
    d: float
    d_xstate: float
    d_numeric: float

    @property
    def abs_f(self) -> float:
        return abs(self.f)


def transition_amplitude(cfg: ChainConfig, t: float) -> complex:
    """Amplitude for the excitation to go from site 1 to site N in time ``t``."""
    n = cfg.n
    if t == 0.0:
        return 0j  # the excitation starts on site 1, never site N
    k = np.arange(1, n + 1)
    q = k * math.pi / (n + 1)
    weights = np.sin(q) * np.sin(q * n)
    phases = np.exp(-2j * cfg.j * np.cos(q) * t)
    return complex(2.0 / (n + 1) * np.sum(weights * phases))


def single_excitation_amplitudes(cfg: ChainConfig, t: float) -> np.ndarray:
    """Site amplitudes at time ``t`` for one excitation that starts on site 1.

    Propagates with the nearest-neighbour hopping matrix (hopping ``j``),
    diagonalized directly rather than through its known sine modes.
    """
    evals, evecs = eigh_tridiagonal(np.zeros(cfg.n), np.full(cfg.n - 1, float(cfg.j)))
    start = np.zeros(cfg.n)
    start[0] = 1.0
    return evecs @ (np.exp(-1j * evals * t) * (evecs.T @ start))


def output_state(f: complex) -> DensityMatrix:
    """State of (site N, qubit 0) for transfer amplitude ``f``."""
    p = abs(f) ** 2
    if p > 1.0 + AMPLITUDE_TOL:
        raise NotPositive(f"transfer amplitude must satisfy |f| <= 1, got |f| = {abs(f):.12g}")
    m = np.diag([2.0 - p, 2.0 - p, p, p]).astype(complex)
    m[0, 3] = m[1, 2] = f
    m[3, 0] = m[2, 1] = np.conj(f)
    return validate(m / 4.0)


def tdd_of_f(fabs: float) -> float:
    """Discord of :func:`output_state` as a function of ``|f|``."""
    if not -AMPLITUDE_TOL <= fabs <= 1.0 + AMPLITUDE_TOL:
        raise DomainError(f"|f| must lie in [0, 1], got {fabs}")
    x = min(max(fabs, 0.0), 1.0)
    x2 = x * x
    return 0.5 * x * (1.0 - x2) / math.sqrt(x2 * x2 - x2 + 1.0)


def peak_abs_f() -> tuple[float, float]:
    """``(|f|_M, D_M)``: where :func:`tdd_of_f` peaks on [0, 1], found numerically."""
    res = minimize_scalar(lambda x: -tdd_of_f(x), bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x), tdd_of_f(float(res.x))


def peak_abs_f_closed() -> float:
    """Closed-form root of ``dD/d|f| = 0`` inside (0, 1)."""
    tau = (1.0 + 3.0 * math.sqrt(57.0)) ** (1.0 / 3.0)
    return 1.0 / math.sqrt(3.0 / (1.0 - 8.0 / tau + tau))


def run_series(cfg: ChainConfig, minimizer: MinimizerConfig = MinimizerConfig(),
               tol: float = SERIES_TOL) -> list[ChainSample]:
    """Evaluate every time in ``cfg.t_grid`` three ways.

    ``d`` uses :func:`tdd_of_f`, ``d_xstate`` the X-state closed form on the
    assembled state and ``d_numeric`` the general minimizer. A disagreement
    above ``tol`` raises :class:`ConsistencyError`.
    """
    samples = []
    for t in cfg.t_grid:
        f = transition_amplitude(cfg, t)
        rho = output_state(f)
        d = tdd_of_f(abs(f))
        xp = x_state_parameters(rho.matrix)
        d_x = tdd_x_state(xp["g1"], xp["g2"], xp["g3"], xp["xa3"]).value
        d_n = tdd_numeric(to_bloch(rho), minimizer).value
        gap = max(abs(d - d_x), abs(d - d_n))
        if gap > tol:
            raise ConsistencyError(f"routes disagree by {gap:.3e} at t = {t}")
        samples.append(ChainSample(t=t, f=f, rho=rho, d=d, d_xstate=d_x, d_numeric=d_n))
    return samples


def series_peak(samples: list[ChainSample]) -> tuple[float, float, float]:
    """``(t, |f|, D)`` at the sample with the largest discord (earliest on ties)."""
    best = max(range(len(samples)), key=lambda i: (samples[i].d, -i))
    s = samples[best]
    return s.t, s.abs_f, s.d
