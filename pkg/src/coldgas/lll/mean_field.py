"""Gross-Pitaevskii energy restricted to the lowest Landau level.

For ``f = sum_m c_m phi_m`` in the orthonormal orbitals ``phi_m ~ z^m``,

    1/2 <f x f| delta_12 |f x f> = 1/2 (2 pi)^{-3/2} sum_M (M! / 2^M) |s_M|^2,
    s_M = sum_{a + b = M} c_a c_b / sqrt(a! b!),

minimized under ``||f||^2 = N`` and ``<f| z d_z |f> = sum_m m |c_m|^2 = L``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize
from scipy.special import gammaln

from ..errors import NotConverged
from .interaction import PAIR_STRENGTH

CONSTRAINT_TOL = 1e-8


@dataclass
class LLLGPResult:
    energy: float
    coefficients: np.ndarray
    N_weight: float
    L_target: float
    norm_error: float
    momentum_error: float

    def to_dict(self):
        return {
            "energy": self.energy,
            "coefficients_re": self.coefficients.real.tolist(),
            "coefficients_im": self.coefficients.imag.tolist(),
            "N_weight": self.N_weight,
            "L_target": self.L_target,
        }


class _Quartic:
    def __init__(self, M):
        m = np.arange(M)
        self.M = M
        self.inv_sqrt_fact = np.exp(-0.5 * gammaln(m + 1))
        k = np.arange(2 * M - 1)
        self.weights = np.exp(gammaln(k + 1) - k * np.log(2.0))

    def split(self, x):
        return x[: self.M] + 1j * x[self.M:]

    def energy_and_grad(self, x):
        c = self.split(x)
        d = c * self.inv_sqrt_fact
        s = np.convolve(d, d)
        ws = self.weights * s
        energy = 0.5 * PAIR_STRENGTH * float(np.sum(self.weights * np.abs(s) ** 2))
        # dE/d conj(c_a) = K / sqrt(a!) sum_b w_{a+b} s_{a+b} conj(d_b)
        corr = np.array([np.dot(ws[a:a + self.M], np.conj(d)) for a in range(self.M)])
        wirt = PAIR_STRENGTH * self.inv_sqrt_fact * corr
        grad = 2.0 * np.concatenate([wirt.real, wirt.imag])
        return energy, grad


def lll_gp_energy(c):
    """Quartic form 1/2 <f x f| delta_12 |f x f> for orbital coefficients ``c``."""
    c = np.asarray(c, dtype=complex)
    q = _Quartic(len(c))
    return q.energy_and_grad(np.concatenate([c.real, c.imag]))[0]


def _constraint_errors(c, N, L):
    w = np.abs(c) ** 2
    return abs(w.sum() - N), abs(np.dot(np.arange(len(c)), w) - L)


def lll_gp_minimize(N_weight, L_target, M_modes=12, tol=1e-12, seed=0, n_starts=8, max_iter=2000):
    """Minimize the LLL Gross-Pitaevskii energy at fixed norm and angular momentum.

    Sequential least squares from ``n_starts`` random complex starts; the best
    feasible result is returned.  Raises NotConverged when no start meets the
    constraints to ``1e-8``.
    """
    if M_modes < 2:
        raise ValueError("need at least two modes")
    if not N_weight > 0:
        raise ValueError("N_weight must be positive")
    if not 0 <= L_target < N_weight * (M_modes - 1):
        raise ValueError("need 0 <= L_target < N_weight (M_modes - 1)")
    N, L, M = float(N_weight), float(L_target), int(M_modes)
    if L == 0:
        c = np.zeros(M, dtype=complex)
        c[0] = np.sqrt(N)
        return LLLGPResult(lll_gp_energy(c), c, N, L, 0.0, 0.0)

    q = _Quartic(M)
    m = np.concatenate([np.arange(M), np.arange(M)]).astype(float)
    cons = [
        {"type": "eq", "fun": lambda x: np.dot(x, x) - N, "jac": lambda x: 2.0 * x},
        {"type": "eq", "fun": lambda x: np.dot(m * x, x) - L, "jac": lambda x: 2.0 * m * x},
    ]
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(n_starts):
        # random start concentrated near the target angular momentum
        centre = L / N
        amp = np.exp(-0.5 * (np.arange(M) - centre) ** 2 / max(centre, 1.0)) + 0.1
        x0 = np.concatenate([amp, amp]) * rng.standard_normal(2 * M)
        x0 *= np.sqrt(N / np.dot(x0, x0))
        res = optimize.minimize(
            q.energy_and_grad, x0, jac=True, method="SLSQP", constraints=cons,
            options={"ftol": tol, "maxiter": max_iter},
        )
        c = q.split(res.x)
        en, el = _constraint_errors(c, N, L)
        if en > CONSTRAINT_TOL or el > CONSTRAINT_TOL:
            continue
        energy = float(res.fun)
        if best is None or energy < best.energy:
            best = LLLGPResult(energy, c, N, L, en, el)
    if best is None:
        raise NotConverged(f"no start met the constraints to {CONSTRAINT_TOL:g}")
    return best
