"""Yrast curve, Laughlin zero mode and the convex-hull ground-state scan."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse.linalg import eigsh

from .basis import DEFAULT_BETA, enumerate_basis, log_state_norm
from .interaction import PAIR_STRENGTH, delta_matrix

DEGENERACY_TOL = 1e-10
UNITS_NOTE = (
    "hbar = 2m = 1; Delta_N values include the factor (2 pi)^(-3/2); "
    "scan energies in units of 8 pi a with kappa = (1 - |Omega|) / (8 pi a)"
)


def lowest_eigenpairs(H, k=6):
    """Smallest eigenvalues (ascending) and eigenvectors of a real symmetric matrix.

    Dense LAPACK for ndarrays; restarted Lanczos (ARPACK) for sparse input.
    """
    if isinstance(H, np.ndarray):
        w, v = np.linalg.eigh(H)
        return w[:k], v[:, :k]
    n = H.shape[0]
    k = min(k, n - 1)
    w, v = eigsh(H, k=k, which="SA", tol=1e-13, ncv=min(n, max(2 * k + 1, 40)))
    order = np.argsort(w)
    return w[order], v[:, order]


@dataclass
class YrastPoint:
    N: int
    L: int
    dim: int
    delta_min: float
    ground_vector: np.ndarray = field(repr=False)
    degeneracy: int

    def to_dict(self):
        return {"N": self.N, "L": self.L, "dim": self.dim, "delta_min": self.delta_min,
                "degeneracy": self.degeneracy}


def yrast(N, L, beta=DEFAULT_BETA, cap=None):
    """Lowest eigenvalue of the interaction at total angular momentum ``L``."""
    H, basis = delta_matrix(N, L, beta=beta, cap=cap)
    w, v = lowest_eigenpairs(H)
    vec = v[:, 0]
    # deterministic sign: largest component positive
    vec = vec * np.sign(vec[np.argmax(np.abs(vec))])
    deg = int(np.sum(np.abs(w - w[0]) <= DEGENERACY_TOL))
    return YrastPoint(N, L, len(basis), float(w[0]), vec, deg)


def yrast_closed_form_coefficient(N, L):
    """Known values of Delta_N(L) / (2 pi)^{-3/2} as a Fraction, or None where unknown."""
    if N < 1 or L < 0:
        raise ValueError("need N >= 1 and L >= 0")
    if L >= N * (N - 1):
        return Fraction(0)
    if L in (0, 1):
        return Fraction(N * (N - 1), 2)
    if L <= N:
        return Fraction(N, 2) * (N - 1 - Fraction(L, 2))
    return None


def yrast_closed_form(N, L):
    c = yrast_closed_form_coefficient(N, L)
    return None if c is None else float(c) * PAIR_STRENGTH


def yrast_table(N, L_max=None, beta=DEFAULT_BETA, cap=None):
    """Yrast points for ``L = 0 .. L_max`` (default ``N(N-1)``)."""
    if L_max is None:
        L_max = N * (N - 1)
    return [yrast(N, L, beta=beta, cap=cap) for L in range(L_max + 1)]


# --------------------------------------------------------------------------
# Laughlin state


def _vandermonde_square_coefficient(mu):
    """Coefficient of ``z^mu`` in prod_{i<j} (z_i - z_j)^2, exact.

    Expanding both Vandermonde factors as signed sums over permutations, the
    coefficient is ``sum sgn(sigma) sgn(tau)`` over pairs with
    ``sigma(i) + tau(i) = mu_i``; depth-first search over positions.
    """
    n = len(mu)
    total = 0
    used_s = [False] * n
    used_t = [False] * n
    s_vals, t_vals = [], []

    def inversions(seq):
        return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])

    def dfs(i):
        nonlocal total
        if i == n:
            sign = -1 if (inversions(s_vals) + inversions(t_vals)) % 2 else 1
            total += sign
            return
        for s in range(n):
            t = mu[i] - s
            if used_s[s] or t < 0 or t >= n or used_t[t]:
                continue
            used_s[s] = used_t[t] = True
            s_vals.append(s)
            t_vals.append(t)
            dfs(i + 1)
            s_vals.pop()
            t_vals.pop()
            used_s[s] = used_t[t] = False

    dfs(0)
    return total


def laughlin_coefficients(N, cap=None):
    """Integer coefficients of the bosonic Laughlin state in the monomial symmetric basis.

    Returns ``(basis, coeffs)`` at ``L = N(N-1)``, coefficient ``c_mu`` of ``m_mu``.
    """
    basis = enumerate_basis(N, N * (N - 1), cap=cap)
    return basis, [_vandermonde_square_coefficient(mu) for mu in basis.states]


def laughlin_vector(N, beta=DEFAULT_BETA, cap=None):
    """Unit vector of the Laughlin state in the orthonormalized basis."""
    basis, coeffs = laughlin_coefficients(N, cap=cap)
    logn = np.array([log_state_norm(s, beta) for s in basis.states])
    scale = np.exp(0.5 * (logn - logn.max()))
    vec = np.array(coeffs, dtype=float) * scale
    return vec / np.linalg.norm(vec), basis


def laughlin_residual(N, beta=DEFAULT_BETA, cap=None):
    """||Delta_N psi|| / ||psi|| for the Laughlin state psi."""
    vec, basis = laughlin_vector(N, beta=beta, cap=cap)
    H, _ = delta_matrix(N, N * (N - 1), beta=beta, cap=cap)
    return float(np.linalg.norm(H @ vec))


# --------------------------------------------------------------------------
# convex hull scan


def lower_hull_vertices(points, tol=1e-12):
    """Extreme points of the lower convex hull of ``(x, y)`` points sorted by x.

    Collinear interior points are dropped (within ``tol``).
    """
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross <= tol * max(1.0, abs(p[0] - x1)):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


@dataclass(frozen=True)
class HLLLScanRow:
    kappa: float
    L_star: int
    E0: float

    def to_dict(self):
        return {"kappa": self.kappa, "L_star": self.L_star, "E0": self.E0}


def hll_ground_scan(N, kappa_grid, table=None, tie_tol=1e-12, beta=DEFAULT_BETA, cap=None):
    """Ground angular momentum and energy of ``kappa L + Delta_N(L)`` (units of 8 pi a).

    ``table`` maps L to Delta_N(L) over ``0..N(N-1)``; computed when omitted.
    Ties within ``tie_tol`` go to the smaller L.
    """
    if table is None:
        table = {p.L: p.delta_min for p in yrast_table(N, beta=beta, cap=cap)}
    Ls = np.array(sorted(table))
    deltas = np.array([table[L] for L in Ls])
    rows = []
    for kappa in kappa_grid:
        kappa = float(kappa)
        if kappa < 0:
            raise ValueError("kappa must be >= 0")
        energies = kappa * Ls + deltas
        e_min = energies.min()
        i = int(np.argmax(energies <= e_min + tie_tol))
        rows.append(HLLLScanRow(kappa, int(Ls[i]), float(energies[i])))
    return rows


def hull_breakpoints(table, tol=1e-12):
    """Hull vertices and the kappa values where the ground L changes between them.

    Returns ``(vertices, kappas)``: ``kappas[i]`` is minus the slope between
    vertex ``i`` and ``i + 1``.
    """
    hull = lower_hull_vertices([(float(L), float(d)) for L, d in table.items()], tol=tol)
    kappas = [-(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(hull[:-1], hull[1:])]
    return [int(x) for x, _ in hull], kappas
