"""One-sided trace distance discord (measurement on qubit A).

The engine works in the frame of the signed singular value decomposition
``Gamma = O^T diag(gamma) Omega``. There the discord is
``D = (1/4) sqrt(2 min_e h(e))`` with ``h = a + sqrt(a^2 - b)`` an explicit
function of the measurement axis ``e``. :func:`tdd_numeric` minimizes ``h``
over the sphere; the other ``tdd_*`` functions are closed forms for the
families where the minimum is known analytically, and :func:`tdd` picks the
most specific one.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import linalg
from .errors import ConsistencyError, DegenerateDenominator, DomainError, InvalidConfig, NotApplicable
from .state import (
    CLASSIFY_TOL,
    PAULI,
    BlochForm,
    DensityMatrix,
    StateTag,
    classify,
    to_bloch,
    validate,
)

DISCRIMINANT_TOL = 1e-10
CLOSED_FORM_TOL = 1e-10
VERIFY_TOL = 1e-8
DENOMINATOR_FLOOR = 1e-15
RANK_ONE_FLOOR = 1e-14


class Method(str, enum.Enum):
    NUMERIC = "numeric"
    CLASS_AB = "class_ab"
    RANK_ONE = "rank_one"
    QUANTUM_CLASSICAL = "quantum_classical"
    X_STATE = "x_state"
    ORACLE = "oracle"


@dataclass(frozen=True)
class MinimizerConfig:
    """Settings for :func:`tdd_numeric`.

    ``grid`` is (polar, azimuthal) cells over the upper hemisphere,
    ``restarts`` caps the number of grid local minima that are refined, and
    a simplex stops once its diameter in chart coordinates drops below
    ``tol / 10`` (``h`` is Lipschitz with a modest constant, so this bounds
    the error in ``h`` by about ``tol``).
    """

    grid: tuple[int, int] = (128, 256)
    restarts: int = 8
    tol: float = 1e-10
    max_iter: int = 500
    verify: bool = False

    def __post_init__(self):
        try:
            n_theta, n_phi = (int(v) for v in self.grid)
        except (TypeError, ValueError):
            raise InvalidConfig(f"grid must be a pair of integers, got {self.grid!r}") from None
        if n_theta < 2 or n_phi < 4:
            raise InvalidConfig(f"grid needs at least 2 polar and 4 azimuthal cells, got {self.grid!r}")
        if self.restarts < 1:
            raise InvalidConfig(f"restarts must be positive, got {self.restarts}")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise InvalidConfig(f"tol must be a positive number, got {self.tol}")
        if self.max_iter < 1:
            raise InvalidConfig(f"max_iter must be positive, got {self.max_iter}")
        object.__setattr__(self, "grid", (n_theta, n_phi))


@dataclass(frozen=True, eq=False)
class CorrelationFrame:
    """``Gamma = o.T @ diag(gamma) @ omega``; ``x_a_frame[k] = x_A . w[k]``."""

    o: np.ndarray
    omega: np.ndarray
    gamma: np.ndarray
    x_a_frame: np.ndarray

    @property
    def w(self) -> np.ndarray:
        return self.o

    def to_lab(self, v) -> np.ndarray:
        return self.o.T @ np.asarray(v, dtype=float)


@dataclass(frozen=True)
class Direction:
    """Measurement axis as polar angles in the ``{w_k}`` frame."""

    theta: float
    phi: float

    @property
    def vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    @classmethod
    def from_vector(cls, e) -> "Direction":
        """Angles of ``e`` (or of ``-e``, which is the same measurement) with ``theta <= pi/2``."""
        e = np.asarray(e, dtype=float)
        e = e / np.linalg.norm(e)
        if e[2] < 0:
            e = -e
        theta = math.atan2(math.hypot(e[0], e[1]), e[2])
        phi = math.atan2(e[1], e[0]) % (2.0 * math.pi)
        return cls(theta, phi)


@dataclass(frozen=True)
class TddResult:
    value: float
    method: Method
    h_min: float | None = None
    direction: Direction | None = None
    axis: np.ndarray | None = field(default=None, compare=False)
    diagnostics: dict[str, Any] = field(default_factory=dict, compare=False)


def _h_to_value(h: float) -> float:
    return 0.25 * math.sqrt(2.0 * max(h, 0.0))


def _value_to_h(d: float) -> float:
    return 8.0 * d * d


# -- frame -------------------------------------------------------------------

def build_frame(b: BlochForm, tol: float = CLASSIFY_TOL) -> CorrelationFrame:
    """Signed SVD of ``Gamma`` plus ``x_A`` expressed in the ``{w_k}`` basis.

    When ``Gamma`` has rank one the second and third axes are free. They are
    fixed so that ``w_1 . x_A >= 0`` and ``w_2`` lies in the plane of ``w_1``
    and ``x_A``; then ``x_a_frame = (+, +, 0)``.
    """
    svd = linalg.signed_svd_so3(b.gamma)
    o = np.array(svd.o)
    omega = np.array(svd.omega)
    gamma = np.array(svd.gamma)
    x_a = np.asarray(b.x_a, dtype=float)
    if abs(gamma[1]) <= tol and abs(gamma[0]) > tol:
        if o[0] @ x_a < 0:
            o[:2] *= -1.0
            omega[:2] *= -1.0
        perp = o[1:] @ x_a
        r = math.hypot(perp[0], perp[1])
        if r > 0:
            c, s = perp[0] / r, perp[1] / r
            rot = np.array([[c, s], [-s, c]])
            o[1:] = rot @ o[1:]
            omega[1:] = rot @ omega[1:]
    x_frame = o @ x_a
    for arr in (o, omega, gamma, x_frame):
        arr.setflags(write=False)
    return CorrelationFrame(o=o, omega=omega, gamma=gamma, x_a_frame=x_frame)


# -- objective ---------------------------------------------------------------

def objective_ab(f: CorrelationFrame, d: Direction) -> tuple[float, float]:
    """``a = Q + |x_perp|^2`` and ``b = 4 (|chi|^2 + |g|^2)`` at axis ``d``."""
    e = d.vector
    g = np.asarray(f.gamma, dtype=float)
    x = np.asarray(f.x_a_frame, dtype=float)
    # |w_k_perp|^2 = 1 - e_k^2, written as a sum of the other two squares
    sq = e * e
    w_perp2 = np.array([sq[1] + sq[2], sq[0] + sq[2], sq[0] + sq[1]])
    q = float(np.sum(g * g * w_perp2))
    x_perp = x - (x @ e) * e
    chi = g * x_perp
    gv = np.array([g[1] * g[2] * e[0], g[2] * g[0] * e[1], g[0] * g[1] * e[2]])
    a = q + float(x_perp @ x_perp)
    b = 4.0 * float(chi @ chi + gv @ gv)
    return a, b


def _tangent_pair(e1: float, e2: float, e3: float):
    r = math.hypot(e1, e2)
    if r > 0.0:
        cp, sp = e1 / r, e2 / r
    else:
        cp, sp = 1.0, 0.0
    return (e3 * cp, e3 * sp, -r), (-sp, cp, 0.0)


def _a_and_root(g, x, e1: float, e2: float, e3: float) -> tuple[float, float]:
    """``a`` and ``sqrt(a^2 - b) = |z0^2 - z1^2 - z2^2 - z3^2|`` at a unit axis.

    With ``tau = t1 + i t2`` for an orthonormal pair spanning the plane
    orthogonal to ``e``, ``z0 = x . tau`` and ``zk = gamma_k tau_k``. This
    form has no cancellation where ``a^2 = b``, which is exactly where the
    minimum of ``h`` tends to sit.
    """
    t1, t2 = _tangent_pair(e1, e2, e3)
    z0 = complex(x[0] * t1[0] + x[1] * t1[1] + x[2] * t1[2], x[0] * t2[0] + x[1] * t2[1])
    z1 = g[0] * complex(t1[0], t2[0])
    z2 = g[1] * complex(t1[1], t2[1])
    z3 = g[2] * t1[2]
    a = (z0.real * z0.real + z0.imag * z0.imag) + abs(z1) ** 2 + abs(z2) ** 2 + z3 * z3
    return a, abs(z0 * z0 - z1 * z1 - z2 * z2 - z3 * z3)


def _h_point(g, x, e1: float, e2: float, e3: float) -> float:
    a, root = _a_and_root(g, x, e1, e2, e3)
    return a + root


def objective_h(f: CorrelationFrame, d: Direction) -> float:
    """``h = a + sqrt(a^2 - b)``.

    Raises :class:`ConsistencyError` if ``a^2 - b`` is below ``-1e-10``,
    which cannot happen for a valid state.
    """
    a, b = objective_ab(f, d)
    if a * a - b < -DISCRIMINANT_TOL:
        raise ConsistencyError(f"a^2 - b = {a * a - b:.3e} is negative")
    e = d.vector
    return _h_point(tuple(f.gamma), tuple(f.x_a_frame), *e)


@functools.lru_cache(maxsize=8)
def _hemisphere(n_theta: int, n_phi: int):
    theta = np.linspace(0.0, 0.5 * math.pi, n_theta)
    phi = np.arange(n_phi) * (2.0 * math.pi / n_phi)
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    ct, st, cp, sp = np.cos(th), np.sin(th), np.cos(ph), np.sin(ph)
    ct[-1] = 0.0  # cos(pi/2) exactly
    t1 = np.stack([ct * cp, ct * sp, -st], axis=-1).reshape(-1, 3)
    t2 = np.stack([-sp, cp, np.zeros_like(sp)], axis=-1).reshape(-1, 3)
    arrays = {
        "e": np.stack([st * cp, st * sp, ct], axis=-1).reshape(-1, 3),
        "t1": t1,
        "t2": t2,
        # per-axis products that make the grid objective three small matmuls
        "sum_sq": t1 * t1 + t2 * t2,
        "diff_sq": t1 * t1 - t2 * t2,
        "cross": t1 * t2,
    }
    for v in arrays.values():
        v.setflags(write=False)
    arrays["step"] = float(theta[1] - theta[0])
    return arrays


def _h_grid(g, x, grid) -> np.ndarray:
    """Vectorized form of :func:`_h_point` (real and imaginary parts written out)."""
    g2 = np.asarray(g, dtype=float) ** 2
    x = np.asarray(x, dtype=float)
    u = grid["t1"] @ x
    v = grid["t2"] @ x
    a = u * u + v * v + grid["sum_sq"] @ g2
    re = u * u - v * v - grid["diff_sq"] @ g2
    im = 2.0 * (u * v - grid["cross"] @ g2)
    return a + np.hypot(re, im)


def _grid_local_minima(h: np.ndarray) -> np.ndarray:
    """Flat indices of cells no larger than their eight neighbours.

    Azimuth wraps around; the row past the equator is the antipodal image
    of the row just inside it, and the pole row counts as one point.
    """
    n_theta, n_phi = h.shape
    below = np.full((1, n_phi), np.inf)
    above = np.roll(h[-2:-1], n_phi // 2, axis=1) if n_phi % 2 == 0 else np.full((1, n_phi), np.inf)
    ext = np.vstack([below, h, above])
    keep = np.ones_like(h, dtype=bool)
    for dt in (-1, 0, 1):
        for dp in (-1, 0, 1):
            if dt or dp:
                keep &= h <= np.roll(ext, -dp, axis=1)[1 + dt:1 + dt + n_theta]
    keep[0, 1:] = False
    return np.flatnonzero(keep.ravel())


def _nelder_mead(fun, step: float, xtol: float, max_iter: int):
    """Two-dimensional Nelder-Mead from the origin; returns ``(point, value, iterations)``."""
    pts = [(0.0, 0.0), (step, 0.0), (0.0, step)]
    vals = [fun(*p) for p in pts]
    it = 0
    while it < max_iter:
        it += 1
        order = sorted(range(3), key=vals.__getitem__)
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        (bx, by), (mx, my), (wx, wy) = pts
        if max(abs(mx - bx), abs(my - by), abs(wx - bx), abs(wy - by)) <= xtol:
            break
        cx, cy = 0.5 * (bx + mx), 0.5 * (by + my)
        rx, ry = 2.0 * cx - wx, 2.0 * cy - wy
        fr = fun(rx, ry)
        if fr < vals[0]:
            ex, ey = 3.0 * cx - 2.0 * wx, 3.0 * cy - 2.0 * wy
            fe = fun(ex, ey)
            pts[2], vals[2] = ((ex, ey), fe) if fe < fr else ((rx, ry), fr)
        elif fr < vals[1]:
            pts[2], vals[2] = (rx, ry), fr
        else:
            if fr < vals[2]:
                kx, ky = 0.5 * (cx + rx), 0.5 * (cy + ry)
            else:
                kx, ky = 0.5 * (cx + wx), 0.5 * (cy + wy)
            fk = fun(kx, ky)
            if fk < min(fr, vals[2]):
                pts[2], vals[2] = (kx, ky), fk
            else:
                pts = [pts[0]] + [(0.5 * (bx + px), 0.5 * (by + py)) for px, py in pts[1:]]
                vals = [vals[0]] + [fun(*p) for p in pts[1:]]
    i = min(range(3), key=vals.__getitem__)
    return pts[i], vals[i], it


def minimize_h(f: CorrelationFrame, cfg: MinimizerConfig = MinimizerConfig()):
    """Global minimum of ``h`` over the sphere.

    Returns ``(h_min, e_frame, info)``. The grid stage visits the upper
    hemisphere only, since ``h(e) = h(-e)``; every local minimum of the grid
    (best first, at most ``cfg.restarts``) seeds a simplex search in a
    gnomonic chart around that cell. The answer never exceeds the best grid
    value.
    """
    g = tuple(float(v) for v in f.gamma)
    x = tuple(float(v) for v in f.x_a_frame)
    grid = _hemisphere(*cfg.grid)
    h_grid = _h_grid(g, x, grid)
    # the pole row is a single point; rounding must not make its copies differ
    h_grid[: cfg.grid[1]] = h_grid[0]
    e_grid = grid["e"]
    starts = _grid_local_minima(h_grid.reshape(cfg.grid))
    if starts.size == 0:
        starts = np.array([int(np.argmin(h_grid))])
    starts = starts[np.argsort(h_grid[starts], kind="stable")][: cfg.restarts]

    best_h, best_e = math.inf, None
    evaluations = 0
    for idx in starts:
        e0 = e_grid[idx]
        h0 = float(h_grid[idx])
        t1, t2 = _tangent_pair(*e0)

        def chart(u, v, e0=e0, t1=t1, t2=t2):
            p = (e0[0] + u * t1[0] + v * t2[0], e0[1] + u * t1[1] + v * t2[1], e0[2] + u * t1[2] + v * t2[2])
            n = math.sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])
            return p[0] / n, p[1] / n, p[2] / n

        def fun(u, v):
            return _h_point(g, x, *chart(u, v))

        (u, v), hv, it = _nelder_mead(fun, grid["step"], 0.1 * cfg.tol, cfg.max_iter)
        evaluations += it
        if hv <= h0:
            e0, h0 = np.array(chart(u, v)), hv
        if h0 < best_h:
            best_h, best_e = h0, np.asarray(e0, dtype=float)
    info = {"grid": cfg.grid, "starts": int(len(starts)), "iterations": evaluations,
            "grid_min": float(h_grid.min())}
    return best_h, best_e, info


def tdd_numeric(b: BlochForm, cfg: MinimizerConfig = MinimizerConfig()) -> TddResult:
    frame = build_frame(b)
    h_min, e, info = minimize_h(frame, cfg)
    d = Direction.from_vector(e)
    a, bb = objective_ab(frame, d)
    info["discriminant"] = a * a - bb
    return TddResult(
        value=_h_to_value(h_min),
        method=Method.NUMERIC,
        h_min=h_min,
        direction=d,
        axis=frame.to_lab(d.vector),
        diagnostics=info,
    )


# -- closed forms --------------------------------------------------------------

def tdd_class_ab(f: CorrelationFrame, tol: float = CLOSED_FORM_TOL) -> TddResult:
    """``|gamma_2| / 2`` for ``x_A = 0`` or equal ``|gamma_k|``."""
    g = np.sort(np.abs(np.asarray(f.gamma, dtype=float)))[::-1]
    if np.linalg.norm(f.x_a_frame) > tol and g[0] - g[2] > tol:
        raise NotApplicable("class A/B form needs x_A = 0 or equal |gamma_k|")
    value = 0.5 * float(g[1])
    return TddResult(value=value, method=Method.CLASS_AB, h_min=2.0 * float(g[1]) ** 2)


def tdd_rank_one(f: CorrelationFrame, x_a, tol: float = CLOSED_FORM_TOL) -> TddResult:
    """``|g1 ^ x_A| / (2 max |g1 +- x_A|)`` with ``g1 = |gamma_1| w_1``."""
    g = np.asarray(f.gamma, dtype=float)
    if abs(g[1]) > tol or abs(g[2]) > tol:
        raise NotApplicable(f"correlation matrix is not rank one (|gamma_2| = {abs(g[1]):.3e})")
    x_a = np.asarray(x_a, dtype=float)
    g1 = abs(g[0]) * np.asarray(f.w[0], dtype=float)
    denom = max(np.linalg.norm(g1 + x_a), np.linalg.norm(g1 - x_a))
    if denom < RANK_ONE_FLOOR:
        value = 0.0
    else:
        value = float(np.linalg.norm(linalg.cross(g1, x_a))) / (2.0 * denom)
    return TddResult(value=value, method=Method.RANK_ONE, h_min=_value_to_h(value))


def tdd_quantum_classical(p: float, s0_len: float, s1_len: float, phi: float) -> TddResult:
    """``(sin phi / 2) min(p s0, (1 - p) s1)`` for ``p rho_0 (x) |0><0| + (1-p) rho_1 (x) |1><1|``.

    ``s0_len`` and ``s1_len`` are the Bloch lengths of ``rho_0`` and ``rho_1``
    and ``phi`` is the angle between them.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    for name, s in (("s0", s0_len), ("s1", s1_len)):
        if not 0.0 <= s <= 1.0:
            raise DomainError(f"{name} length must lie in [0, 1], got {s}")
    if not 0.0 <= phi <= math.pi:
        raise DomainError(f"phi must lie in [0, pi], got {phi}")
    value = 0.5 * math.sin(phi) * min(p * s0_len, (1.0 - p) * s1_len)
    return TddResult(value=value, method=Method.QUANTUM_CLASSICAL, h_min=_value_to_h(value))


def x_state_compact(g1: float, g2: float, g3: float, xa3: float) -> float:
    """Single-expression X-state discord.

    Raises :class:`DegenerateDenominator` when the denominator is below 1e-15.
    """
    s1, s2, s3, sx = g1 * g1, g2 * g2, g3 * g3, xa3 * xa3
    hi = max(s3, s2 + sx)
    lo = min(s3, s1)
    den = hi - lo + s1 - s2
    if den < DENOMINATOR_FLOOR:
        raise DegenerateDenominator(f"denominator {den:.3e} below {DENOMINATOR_FLOOR:.0e}")
    return 0.5 * math.sqrt(max(s1 * hi - s2 * lo, 0.0) / den)


def _step(v: float) -> float:
    return 1.0 if v > 0 else (0.5 if v == 0 else 0.0)


def x_state_piecewise(g1: float, g2: float, g3: float, xa3: float) -> float:
    """Case-by-case X-state discord, with the step function equal to 1/2 at 0."""
    s1, s2, s3, sx = g1 * g1, g2 * g2, g3 * g3, xa3 * xa3
    if s1 - s3 + sx < 0 or abs(g3) >= abs(g1):
        return 0.5 * abs(g1)
    switch = s2 - s3 + sx
    total = 0.0
    if _step(switch):
        delta = s1 - s3
        den = sx + delta
        # equals gamma_1^2 (gamma_2^2 + x^2) - gamma_2^2 gamma_3^2 over the same denominator
        ratio = (sx * s3 + delta * (s2 + sx)) / den if den > 0 else s3
        total += _step(switch) * 0.5 * math.sqrt(max(ratio, 0.0))
    if _step(-switch):
        total += _step(-switch) * 0.5 * abs(g3)
    return total


def tdd_x_state(g1: float, g2: float, g3: float, xa3: float) -> TddResult:
    """X-state discord from ``gamma = (g1, g2, g3)`` and ``x_A = (0, 0, xa3)``.

    Labels follow the X-state convention ``g1 = 2(|rho32| + |rho41|)``,
    ``g2 = 2(|rho32| - |rho41|)``, so ``|g1| >= |g2|`` while ``g3`` is free.
    """
    if abs(g2) > abs(g1) + CLOSED_FORM_TOL:
        raise DomainError(f"X-state labels need |g1| >= |g2|, got {g1}, {g2}")
    try:
        value = x_state_compact(g1, g2, g3, xa3)
        route = "compact"
    except DegenerateDenominator:
        value = x_state_piecewise(g1, g2, g3, xa3)
        route = "piecewise"
    return TddResult(value=value, method=Method.X_STATE, h_min=_value_to_h(value),
                     diagnostics={"route": route})


# -- dispatch ------------------------------------------------------------------

def _closed_form(b: BlochForm, tol: float = CLASSIFY_TOL) -> TddResult | None:
    cls = classify(b, tol)
    if cls.tag in (StateTag.CLASS_A, StateTag.CLASS_B):
        res = tdd_class_ab(build_frame(b))
    elif cls.tag is StateTag.X_STATE:
        p = cls.params
        res = tdd_x_state(p["g1"], p["g2"], p["g3"], p["xa3"])
    elif cls.tag is StateTag.QUANTUM_CLASSICAL:
        p = cls.params
        res = tdd_quantum_classical(p["p"], p["s0"], p["s1"], p["phi"])
    elif cls.tag is StateTag.RANK_ONE_GAMMA:
        res = tdd_rank_one(build_frame(b), b.x_a)
    else:
        return None
    res.diagnostics["class"] = cls.tag.value
    return res


def closed_form(rho: DensityMatrix) -> TddResult:
    """The closed form that applies to ``rho``; :class:`NotApplicable` if none does."""
    res = _closed_form(to_bloch(rho))
    if res is None:
        raise NotApplicable("no closed form applies to this state")
    return res


def tdd(rho: DensityMatrix, cfg: MinimizerConfig = MinimizerConfig()) -> TddResult:
    """Discord with measurement on A, via a closed form when one applies.

    With ``cfg.verify`` the numeric minimizer also runs and the two must
    agree to 1e-8, otherwise :class:`ConsistencyError` is raised.
    """
    if not isinstance(rho, DensityMatrix):
        rho = validate(rho)
    b = to_bloch(rho)
    res = _closed_form(b)
    if res is None:
        return tdd_numeric(b, cfg)
    if cfg.verify:
        num = tdd_numeric(b, cfg)
        gap = abs(num.value - res.value)
        res.diagnostics["numeric"] = num.value
        res.diagnostics["verify_residual"] = gap
        if gap > VERIFY_TOL:
            raise ConsistencyError(
                f"{res.method.value} gives {res.value:.12g} but the minimizer gives {num.value:.12g}")
    return res


def tdd_left(rho: DensityMatrix, cfg: MinimizerConfig = MinimizerConfig()) -> TddResult:
    """Discord with measurement on B (the two qubits exchanged)."""
    if not isinstance(rho, DensityMatrix):
        rho = validate(rho)
    return tdd(rho.swapped(), cfg)


# -- reduction check helpers ---------------------------------------------------

def assemble_m_matrix(b: BlochForm, e) -> np.ndarray:
    """``4 (rho - Pi_e(rho))`` built term by term from the Bloch data (lab frame)."""
    e = np.asarray(e, dtype=float)
    e = e / np.linalg.norm(e)
    i2 = np.eye(2, dtype=complex)
    x = np.asarray(b.x_a, dtype=float)
    xp = x - (e @ x) * e
    m = np.kron(sum(xp[k] * PAULI[k] for k in range(3)), i2)
    for i in range(3):
        u = -e[i] * e
        u[i] += 1.0
        su = sum(u[k] * PAULI[k] for k in range(3))
        for j in range(3):
            m = m + b.gamma[i, j] * np.kron(su, PAULI[j])
    return m


def m_trace_norm_closed(b: BlochForm, e) -> float:
    """``2 (sqrt(a + sqrt b) + sqrt(a - sqrt b))`` at lab-frame axis ``e``."""
    frame = build_frame(b)
    d = Direction.from_vector(frame.o @ (np.asarray(e, dtype=float) / np.linalg.norm(e)))
    _, bb = objective_ab(frame, d)
    a, root = _a_and_root(tuple(frame.gamma), tuple(frame.x_a_frame), *d.vector)
    upper = a + math.sqrt(max(bb, 0.0))
    if upper <= 0.0:
        return 0.0
    # a - sqrt(b) = (a^2 - b) / (a + sqrt(b)) avoids cancellation
    return 2.0 * (math.sqrt(upper) + root / math.sqrt(upper))
