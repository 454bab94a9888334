"""Leading-order dilute Bose gas formulas.

Closed forms only; the o(rho^2) remainders are not modeled.  Every result
carries the diluteness ``a^3 rho`` so callers can judge validity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

from . import ideal_gas

LHY_COEFF = 128.0 / (15.0 * math.sqrt(math.pi))
DILUTENESS_WARN = 1e-2
# linear reference line for the Tc-shift plot: a commonly quoted simulation slope, not a proven value.
DEFAULT_LINEAR_SLOPE = 1.3
# T / rho^{2/3} above this multiple of the ideal-gas critical ratio is labelled classical.
CLASSICAL_RATIO = 10.0


class DilutenessWarning(UserWarning):
    pass


@dataclass(frozen=True)
class DiluteParams:
    a: float
    rho: float
    T: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if self.a < 0 or self.rho < 0 or self.T < 0:
            raise ValueError("a, rho and T must be non-negative")
        if self.diluteness > DILUTENESS_WARN:
            warnings.warn(
                f"a^3 rho = {self.diluteness:.3g} exceeds {DILUTENESS_WARN}; dilute formulas unreliable",
                DilutenessWarning,
                stacklevel=3,
            )

    @property
    def diluteness(self):
        return self.a**3 * self.rho

    @property
    def regime(self):
        """'ground_state' at T = 0, else 'quantum' or 'classical' by T / rho^{2/3}."""
        if self.T == 0 or self.rho == 0:
            return "ground_state" if self.T == 0 else "classical"
        ratio = self.T / self.rho ** (2.0 / 3.0)
        tc_ratio = 4.0 * math.pi / ideal_gas.ZETA_3_2 ** (2.0 / 3.0)
        return "classical" if ratio > CLASSICAL_RATIO * tc_ratio else "quantum"


def ground_energy_density(a, rho):
    """e(rho) = 4 pi a rho^2."""
    return 4.0 * math.pi * a * rho * rho


def lhy_relative_correction(a, rho):
    return LHY_COEFF * math.sqrt(a**3 * rho)


def lhy_energy_density(a, rho):
    """4 pi a rho^2 (1 + 128/(15 sqrt(pi)) sqrt(a^3 rho))."""
    return ground_energy_density(a, rho) * (1.0 + lhy_relative_correction(a, rho))


def interaction_correction(a, rho, T):
    """4 pi a (2 rho^2 - [rho - rho_c(T)]_+^2), the shift of f over f0."""
    n0 = condensate_density(rho, T)
    return 4.0 * math.pi * a * (2.0 * rho * rho - n0 * n0)


def free_energy_dilute(a, rho, T):
    """f = f0(rho, T) + 4 pi a (2 rho^2 - [rho - rho_c(T)]_+^2)."""
    return ideal_gas.free_energy_ideal(rho, T) + interaction_correction(a, rho, T)


def condensate_density(rho, T):
    return ideal_gas.condensate_density(rho, T)


def tc_upper_bound(rho, a, c=1.0):
    """T_c^(0)(rho) (1 + c sqrt(a rho^{1/3}))."""
    if not c > 0:
        raise ValueError("bound constant c must be positive")
    return ideal_gas.critical_temperature(rho) * (1.0 + c * math.sqrt(a * rho ** (1.0 / 3.0)))


@dataclass(frozen=True)
class BoundRow:
    x: float
    sqrt_bound: float
    linear_reference: float

    def to_dict(self):
        return asdict(self)


def tc_bound_curve(grid, c=1.0, linear_slope=DEFAULT_LINEAR_SLOPE):
    """Relative T_c shift data: ``c sqrt(x)`` bound and ``slope * x`` reference, x = a rho^{1/3}."""
    rows = []
    for x in grid:
        x = float(x)
        if x < 0:
            raise ValueError("a rho^{1/3} grid values must be >= 0")
        rows.append(BoundRow(x, c * math.sqrt(x), linear_slope * x))
    return rows


@dataclass(frozen=True)
class DiluteReport:
    a: float
    rho: float
    T: float
    diluteness: float
    regime: str
    e_leading: float
    e_lhy: float
    f0: float | None
    f: float | None
    rho_c: float | None
    condensate: float
    tc_ideal: float | None
    tc_upper: float | None

    def to_dict(self):
        return asdict(self)


def dilute_report(a, rho, T, c=1.0):
    p = DiluteParams(a, rho, T, c)
    thermal = T > 0
    return DiluteReport(
        a=a, rho=rho, T=T, diluteness=p.diluteness, regime=p.regime,
        e_leading=ground_energy_density(a, rho),
        e_lhy=lhy_energy_density(a, rho),
        f0=ideal_gas.free_energy_ideal(rho, T) if thermal else None,
        f=free_energy_dilute(a, rho, T) if thermal else None,
        rho_c=ideal_gas.critical_density(T) if thermal else None,
        condensate=condensate_density(rho, T),
        tc_ideal=ideal_gas.critical_temperature(rho) if rho > 0 else None,
        tc_upper=tc_upper_bound(rho, a, c) if rho > 0 else None,
    )
