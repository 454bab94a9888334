"""Thermodynamics of the ideal Bose gas (hbar = 2m = k_B = 1).

The free energy density is the Legendre transform

    f0(rho, T) = sup_{mu < 0} [ mu rho + T (2 pi)^-3 int dp ln(1 - exp(-(p^2 - mu)/T)) ],

and the momentum integral reduces to Bose functions: the bracket equals
``mu rho - T (T/4pi)^{3/2} g_{5/2}(e^{mu/T})`` and its stationarity condition is
``rho = (T/4pi)^{3/2} g_{3/2}(e^{mu/T})``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .errors import DomainError, TailNotConverged

ZETA_3_2 = float(special.zeta(1.5))
ZETA_5_2 = float(special.zeta(2.5))

_N_EXPANSION = 40


@lru_cache(maxsize=None)
def _expansion_coefficients(s):
    """Coefficients zeta(s - k) (-1)^k / k! of the expansion of g_s(e^{-t}) around t = 0."""
    return tuple(float(special.zeta(s - k)) * (-1) ** k / math.factorial(k) for k in range(_N_EXPANSION))


def polylog(s, z):
    """Bose function ``g_s(z) = sum_{k >= 1} z^k / k^s`` for ``0 <= z <= 1`` and ``s > 1``.

    Direct series for ``z <= 1/2``.  Above that, the expansion
    ``g_s(e^{-t}) = Gamma(1 - s) t^{s-1} + sum_k zeta(s - k) (-t)^k / k!``
    (convergent for t < 2 pi; here t <= ln 2) keeps the error near round-off.
    """
    z = float(z)
    if not (0.0 <= z <= 1.0) or math.isnan(z):
        raise DomainError(f"fugacity must lie in [0, 1], got {z}")
    if not s > 1:
        raise DomainError(f"Bose function order must exceed 1, got {s}")
    if z == 0.0:
        return 0.0
    if z <= 0.5:
        total, zk, k = 0.0, 1.0, 0
        while True:
            k += 1
            zk *= z
            term = zk / k**s
            total += term
            if term <= 1e-18 * total:  # <= also ends subnormal z
                return total
    t = -math.log(z)
    if t == 0.0:
        return float(special.zeta(s))
    if float(s).is_integer():
        raise DomainError("integer orders are not supported near z = 1")
    coeffs = _expansion_coefficients(float(s))
    series = 0.0
    tk = 1.0
    for c in coeffs:
        series += c * tk
        tk *= t
    return math.gamma(1.0 - s) * t ** (s - 1.0) + series


def critical_density(T):
    """rho_c(T) = zeta(3/2) (T / 4 pi)^{3/2}."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    return ZETA_3_2 * (T / (4.0 * math.pi)) ** 1.5


def critical_temperature(rho):
    """T_c(rho) = 4 pi rho^{2/3} / zeta(3/2)^{2/3}."""
    if not rho > 0:
        raise DomainError(f"density must be positive, got {rho}")
    return 4.0 * math.pi * (rho / ZETA_3_2) ** (2.0 / 3.0)


def density_from_mu(mu, T):
    """Density at chemical potential ``mu <= 0``: (T/4pi)^{3/2} g_{3/2}(e^{mu/T})."""
    if mu > 0:
        raise DomainError(f"chemical potential must be <= 0, got {mu}")
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    if mu == -math.inf:
        return 0.0
    return (T / (4.0 * math.pi)) ** 1.5 * polylog(1.5, math.exp(mu / T))


@lru_cache(maxsize=4096)
def effective_mu(rho, T):
    """Maximizing chemical potential of the Legendre transform.

    Zero in the condensed phase ``rho >= rho_c(T)``; otherwise the root of
    ``density_from_mu(mu, T) = rho`` by bisection.  ``-inf`` at ``rho = 0``.
    """
    if rho < 0:
        raise DomainError(f"density must be >= 0, got {rho}")
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    if rho == 0:
        return -math.inf
    if rho >= critical_density(T):
        return 0.0
    lo, hi = -T * 1e3 * (1.0 + abs(math.log(rho))), 0.0
    while density_from_mu(lo, T) > rho:
        lo *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if density_from_mu(mid, T) < rho:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * abs(mid):
            break
    return 0.5 * (lo + hi)


def free_energy_ideal(rho, T):
    """f0(rho, T) evaluated at the maximizing chemical potential."""
    mu = effective_mu(rho, T)
    if mu == -math.inf:
        return 0.0
    pressure = T * (T / (4.0 * math.pi)) ** 1.5 * polylog(2.5, math.exp(mu / T))
    return mu * rho - pressure


def condensate_density(rho, T):
    """[rho - rho_c(T)]_+; equals rho at T = 0."""
    if T == 0:
        return float(rho)
    return max(rho - critical_density(T), 0.0)


@dataclass(frozen=True)
class ThermoPoint:
    rho: float
    T: float
    mu_bar: float
    f0: float
    rho_c: float
    condensate: float
    decay_class: str

    def to_dict(self):
        return asdict(self)


def thermo_point(rho, T, rtol=1e-12):
    return ThermoPoint(
        rho=float(rho),
        T=float(T),
        mu_bar=effective_mu(rho, T),
        f0=free_energy_ideal(rho, T),
        rho_c=critical_density(T),
        condensate=condensate_density(rho, T),
        decay_class=obdm_decay_class(rho, T, rtol=rtol),
    )


# --------------------------------------------------------------------------
# one-particle density matrix


LONG_RANGE_ORDER = "long_range_order"
EXPONENTIAL = "exponential"
ALGEBRAIC = "algebraic"


def obdm_decay_class(rho, T, rtol=1e-12):
    """Large-distance behaviour of gamma(x, y): condensed, critical, or normal."""
    if not (rho > 0 and T > 0):
        raise DomainError("decay class needs rho > 0 and T > 0")
    rc = critical_density(T)
    if abs(rho - rc) <= rtol * rc:
        return ALGEBRAIC
    return LONG_RANGE_ORDER if rho > rc else EXPONENTIAL


_DIRECT_TERMS_CAP = 20000


def _tail_integral(N, b, c):
    """int_N^inf exp(-c x - b/x) x^{-3/2} dx, via x = s^{-2}."""
    top = N**-0.5
    if c == 0.0:
        if b == 0.0:
            return 2.0 * top
        return math.sqrt(math.pi / b) * math.erf(math.sqrt(b) * top)
    val, _ = integrate.quad(lambda s: 2.0 * math.exp(-c / (s * s) - b * s * s), 0.0, top,
                            epsabs=1e-16, epsrel=1e-13, limit=200)
    return val


def obdm_kernel(rho, T, r, n_max=None, tol=1e-10):
    """Kernel gamma(x, y) of the ideal gas at separation ``r = |x - y|``.

    ``[rho - rho_c]_+ + sum_{n >= 1} e^{mu n / T} (4 pi n / T)^{-3/2} e^{-T r^2 / 4n}``.
    The first ``n_max`` terms are summed directly (automatic by default).  When
    the rigorous tail bound at that point is above ``tol`` the remainder is
    replaced by its Euler-Maclaurin estimate (integral plus endpoint
    corrections); TailNotConverged is raised when even that estimate cannot
    certify ``tol``.
    """
    if r < 0:
        raise DomainError("separation must be >= 0")
    mu = effective_mu(rho, T)
    if mu == -math.inf:
        return 0.0
    pref = (T / (4.0 * math.pi)) ** 1.5
    c = -mu / T
    b = T * r * r / 4.0
    z = math.exp(-c)

    if n_max is None:
        if c > 0:
            # geometric bound: pref z^{N+1} / ((N+1)^{3/2} (1 - z)) < tol
            n_geo = math.ceil(math.log(tol * (1.0 - z) / pref) / math.log(z)) if z > 0 else 1
            n_max = int(min(max(n_geo, 1), _DIRECT_TERMS_CAP))
        else:
            n_max = _DIRECT_TERMS_CAP
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")

    n = np.arange(1, n_max + 1, dtype=float)
    terms = np.exp(-c * n - b / n) * n**-1.5
    total = float(np.sum(terms[::-1]))

    N = float(n_max)
    if c > 0:
        bound = z ** (N + 1) / ((N + 1) ** 1.5 * (1.0 - z))
    else:
        bound = _tail_integral(N, b, 0.0) if N >= 2.0 * b / 3.0 else math.inf
    if pref * bound >= tol:
        f = math.exp(-c * N - b / N) * N**-1.5
        psi = -c - 1.5 / N + b / N**2
        dpsi = 1.5 / N**2 - 2.0 * b / N**3
        ddpsi = -3.0 / N**3 + 6.0 * b / N**4
        f1 = f * psi
        f3 = f * (psi**3 + 3.0 * psi * dpsi + ddpsi)
        tail = _tail_integral(N, b, c) - 0.5 * f - f1 / 12.0 + f3 / 720.0
        if pref * abs(f3) / 720.0 >= tol:
            raise TailNotConverged(
                f"tail of the kernel sum not certified below {tol:g} with n_max={n_max}"
            )
        total += tail
    return max(rho - critical_density(T), 0.0) + pref * total
