"""Brute-force discord straight from the definition.

``D = 1/2 min_e || rho - Pi_e(rho) ||_1`` where ``Pi_e`` measures qubit A
along ``e`` and forgets the outcome. Trace norms come from the spectrum of
the assembled 4x4 matrix; nothing here goes through the ``a``/``b``
reduction used by :mod:`tracediscord.tdd`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

from .errors import InvalidConfig
from .state import I2, PAULI, DensityMatrix, validate

_SIGMA_A = tuple(np.kron(s, I2) for s in PAULI)
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class OracleConfig:
    """``points`` lattice directions on the hemisphere and ``starts`` refined candidates.

    A simplex stops once its angular size is below ``tol`` and its values
    agree to ``f_tol``.
    """

    points: int = 20000
    starts: int = 3
    tol: float = 1e-12
    f_tol: float = 1e-14
    max_iter: int = 2000

    def __post_init__(self):
        if int(self.points) < 16:
            raise InvalidConfig(f"points must be at least 16, got {self.points}")
        if int(self.starts) < 1:
            raise InvalidConfig(f"starts must be positive, got {self.starts}")
        for name in ("tol", "f_tol"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise InvalidConfig(f"{name} must be a positive number, got {v}")
        if int(self.max_iter) < 1:
            raise InvalidConfig(f"max_iter must be positive, got {self.max_iter}")


def _axis(d) -> np.ndarray:
    if hasattr(d, "theta"):
        st = math.sin(d.theta)
        return np.array([st * math.cos(d.phi), st * math.sin(d.phi), math.cos(d.theta)])
    e = np.asarray(d, dtype=float).reshape(3)
    return e / np.linalg.norm(e)


def _matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return np.asarray(rho.matrix)
    return np.asarray(validate(rho).matrix)


def apply_measurement_channel(rho, d) -> np.ndarray:
    """``(P (x) I) rho (P (x) I) + (Q (x) I) rho (Q (x) I)`` with ``P = (I + e.sigma)/2``.

    ``d`` is a lab-frame unit vector or anything with ``theta``/``phi``.
    """
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    e = _axis(d)
    es = e[0] * PAULI[0] + e[1] * PAULI[1] + e[2] * PAULI[2]
    p = np.kron(0.5 * (I2 + es), I2)
    q = np.kron(0.5 * (I2 - es), I2)
    return p @ m @ p + q @ m @ q


@functools.lru_cache(maxsize=4)
def fibonacci_hemisphere(n: int) -> np.ndarray:
    """``n`` near-uniform unit vectors with ``z > 0``."""
    i = np.arange(n)
    z = 1.0 - (i + 0.5) / n
    r = np.sqrt(1.0 - z * z)
    ph = i * _GOLDEN_ANGLE
    pts = np.stack([r * np.cos(ph), r * np.sin(ph), z], axis=-1)
    pts.setflags(write=False)
    return pts


def _sandwiches(m: np.ndarray) -> np.ndarray:
    """``K[i, j] = (s_i (x) I) rho (s_j (x) I)`` flattened to (9, 16)."""
    return np.array([[si @ m @ sj for sj in _SIGMA_A] for si in _SIGMA_A]).reshape(9, 16)


@functools.lru_cache(maxsize=1)
def _pauli_basis():
    """The 15 traceless products ``s_a (x) s_b`` and their multiplication table.

    For ``a != b`` the products either anticommute, and drop out of a
    square, or commute with ``P_a P_b = s P_c`` for real ``s = +-1``. Row
    ``c`` of the returned index arrays lists the six ordered commuting pairs
    landing on ``P_c``. Everything is found numerically from the matrices.
    """
    singles = (I2,) + PAULI
    basis = np.array([np.kron(x, y) for x in singles for y in singles][1:])
    pairs: list[list[tuple[int, int, float]]] = [[] for _ in range(15)]
    for a in range(15):
        for b in range(15):
            if a == b:
                continue
            prod = basis[a] @ basis[b]
            if not np.allclose(prod, basis[b] @ basis[a]):
                continue
            coeff = np.einsum("cij,ji->c", basis, prod) / 4.0
            c = int(np.argmax(np.abs(coeff)))
            pairs[c].append((a, b, float(coeff[c].real)))
    first = np.array([[a for a, _, _ in row] for row in pairs])
    second = np.array([[b for _, b, _ in row] for row in pairs])
    sign = np.array([[s for _, _, s in row] for row in pairs])
    flat = basis.reshape(15, 16)
    for arr in (first, second, sign, flat):
        arr.setflags(write=False)
    return flat, first, second, sign


def _pauli_coefficients(mats: np.ndarray) -> np.ndarray:
    """Real coordinates of Hermitian 4x4 matrices (flattened rows) in the traceless Pauli basis."""
    flat = _pauli_basis()[0]
    # tr(P M) = sum_ab P_ba M_ab; P is Hermitian so P_ba = conj(P_ab)
    return (np.asarray(mats).reshape(-1, 16) @ flat.conj().T).real / 4.0


@functools.lru_cache(maxsize=4)
def _lattice_weights(n: int) -> np.ndarray:
    e = fibonacci_hemisphere(n)
    w = (e[:, :, None] * e[:, None, :]).reshape(-1, 9)
    w.setflags(write=False)
    return w


def _disturbance(m: np.ndarray, k: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Pauli coordinates of ``rho - Pi_e(rho) = (rho - S rho S)/2`` with ``S = e.sigma (x) I``.

    ``w`` holds the products ``e_i e_j`` for a batch of axes, one row per
    axis. The map is linear in ``w``, so only the nine sandwiches ``k`` and
    ``rho`` itself are ever expanded.
    """
    kc = _pauli_coefficients(k)
    k_sym = 0.5 * (kc.reshape(3, 3, 15) + kc.reshape(3, 3, 15).transpose(1, 0, 2)).reshape(9, 15)
    return 0.5 * (_pauli_coefficients(m)[0] - w @ k_sym)


def _power_sums(c: np.ndarray):
    """``tr X^2``, ``tr X^3`` and ``tr X^4`` for ``X = sum_a c_a P_a``.

    ``X^2 = |c|^2 I + sum_c q_c P_c`` because anticommuting pairs cancel.
    The ordered pairs ``(a, b)`` and ``(b, a)`` contribute equally, so only
    the pairs with ``a < b`` are visited, with doubled weight.
    """
    _, first, second, sign = _pauli_basis()
    ct = np.ascontiguousarray(np.asarray(c, dtype=float).T)
    q = np.zeros_like(ct)
    for row in range(15):
        for a, b, s in zip(first[row], second[row], sign[row]):
            if a < b:
                q[row] += (2.0 * s) * (ct[a] * ct[b])
    norm2 = np.einsum("an,an->n", ct, ct)
    p2 = 4.0 * norm2
    p3 = 4.0 * np.einsum("an,an->n", ct, q)
    p4 = 4.0 * (norm2 * norm2 + np.einsum("an,an->n", q, q))
    return p2, p3, p4


def _trace_norm_screen(c: np.ndarray) -> np.ndarray:
    """Trace norms of traceless Hermitian 4x4 matrices given by Pauli coordinates.

    Power sums give the depressed quartic ``y^4 + p y^2 + q y + r``; all its
    roots are real, so the resolvent cubic has three nonnegative roots and
    is solved in trigonometric form. Accurate to roughly 1e-8, which is only
    used to rank lattice points.
    """
    p2, p3, p4 = _power_sums(c)
    p = -0.5 * p2
    q = -p3 / 3.0
    r = 0.125 * p2 * p2 - 0.25 * p4
    c2, c1, c0 = 2.0 * p, p * p - 4.0 * r, -q * q
    pp = np.minimum(c1 - c2 * c2 / 3.0, -1e-300)
    qq = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    amp = 2.0 * np.sqrt(-pp / 3.0)
    den = pp * amp
    cos3 = np.divide(3.0 * qq, den, out=np.zeros_like(den), where=den != 0.0)
    ang = np.arccos(np.clip(cos3, -1.0, 1.0)) / 3.0
    ca, sa = amp * np.cos(ang), amp * (0.5 * math.sqrt(3.0)) * np.sin(ang)
    shift = c2 / 3.0
    s1 = np.sqrt(np.maximum(ca - shift, 0.0))
    s2 = np.sqrt(np.maximum(-0.5 * ca + sa - shift, 0.0))
    s3 = np.sqrt(np.maximum(-0.5 * ca - sa - shift, 0.0))
    s3 = np.where(q <= 0, s3, -s3)
    return 0.5 * (np.abs(s1 + s2 + s3) + np.abs(s1 - s2 - s3) + np.abs(s2 - s1 - s3) + np.abs(s3 - s1 - s2))


def _simplex(fun, step: float, xtol: float, ftol: float, max_iter: int):
    """Nelder-Mead on two variables starting at the origin.

    Stops when the simplex is smaller than ``xtol`` and its values agree to ``ftol``.
    """
    pts = [(0.0, 0.0), (step, 0.0), (0.0, step)]
    vals = [fun(*p) for p in pts]
    for _ in range(max_iter):
        order = sorted(range(3), key=vals.__getitem__)
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        b, mid, w = pts
        size = max(abs(mid[0] - b[0]), abs(mid[1] - b[1]), abs(w[0] - b[0]), abs(w[1] - b[1]))
        if size <= xtol and vals[2] - vals[0] <= ftol:
            break
        c = (0.5 * (b[0] + mid[0]), 0.5 * (b[1] + mid[1]))
        r = (2.0 * c[0] - w[0], 2.0 * c[1] - w[1])
        fr = fun(*r)
        if fr < vals[0]:
            e = (3.0 * c[0] - 2.0 * w[0], 3.0 * c[1] - 2.0 * w[1])
            fe = fun(*e)
            pts[2], vals[2] = (e, fe) if fe < fr else (r, fr)
        elif fr < vals[1]:
            pts[2], vals[2] = r, fr
        else:
            inner = r if fr < vals[2] else w
            k = (0.5 * (c[0] + inner[0]), 0.5 * (c[1] + inner[1]))
            fk = fun(*k)
            if fk < min(fr, vals[2]):
                pts[2], vals[2] = k, fk
            else:
                pts = [b] + [(0.5 * (b[0] + p[0]), 0.5 * (b[1] + p[1])) for p in pts[1:]]
                vals = [vals[0]] + [fun(*p) for p in pts[1:]]
    i = min(range(3), key=vals.__getitem__)
    return pts[i], vals[i]


def _frame_around(c: np.ndarray) -> np.ndarray:
    helper = np.array([0.0, 0.0, 1.0]) if abs(c[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    t1 = np.cross(helper, c)
    t1 /= np.linalg.norm(t1)
    return np.stack([c, t1, np.cross(c, t1)], axis=1)


def definition_minimum(rho, cfg: OracleConfig = OracleConfig()) -> tuple[float, np.ndarray]:
    """``(D, e)``: the discord and a lab-frame measurement axis attaining it.

    Every lattice direction is scored; the best few well-separated ones are
    polished with a Nelder-Mead simplex over the polar angles of a frame
    rotated so the candidate sits on its equator, where the chart is regular.
    """
    m = _matrix(rho)
    k = _sandwiches(m)
    lattice = fibonacci_hemisphere(int(cfg.points))
    screen = _trace_norm_screen(_disturbance(m, k, _lattice_weights(int(cfg.points))))
    spacing = math.sqrt(2.0 * math.pi / cfg.points)

    chosen: list[int] = []
    far = math.cos(3.0 * spacing)
    remaining = screen.copy()
    for _ in range(int(cfg.starts)):
        i = int(np.argmin(remaining))
        if not math.isfinite(remaining[i]):
            break
        chosen.append(i)
        remaining[np.abs(lattice @ lattice[i]) >= far] = np.inf

    flat = m.reshape(16)

    def value(e) -> float:
        w = (e[0] * e[0], e[0] * e[1], e[0] * e[2], e[1] * e[0], e[1] * e[1], e[1] * e[2],
             e[2] * e[0], e[2] * e[1], e[2] * e[2])
        x = (0.5 * (flat - np.dot(w, k))).reshape(4, 4)
        w, info = lapack.zheev(x, compute_v=0)[::2]
        if info != 0:
            w = np.linalg.eigvalsh(x)
        return 0.5 * float(np.abs(w).sum())

    best_d, best_e = math.inf, None
    for i in chosen:
        rot = _frame_around(lattice[i])

        def along(dt, dp, rot=rot):
            # polar angles measured from the candidate on the rotated equator
            st = math.cos(dt)
            return rot @ (st * math.cos(dp), st * math.sin(dp), -math.sin(dt))

        (dt, dp), d = _simplex(lambda u, v: value(along(u, v)), spacing, cfg.tol, cfg.f_tol, int(cfg.max_iter))
        for cand_d, cand_e in ((value(lattice[i]), lattice[i]), (d, along(dt, dp))):
            if cand_d < best_d:
                best_d, best_e = cand_d, np.asarray(cand_e, dtype=float)
    return best_d, best_e


def tdd_definition(rho, cfg: OracleConfig = OracleConfig()) -> float:
    """Discord with measurement on A, minimized by brute force over axes."""
    return definition_minimum(rho, cfg)[0]
