"""s-wave scattering length of repulsive radial pair potentials.

The scattering length is the minimizer value of

    4 pi a = inf int |grad phi|^2 + (1/2) v phi^2,   phi >= 0,  phi(r) -> 1,

whose minimizer ``u = r phi`` solves the zero-energy radial equation
``u'' = v u / 2`` with ``u = 0`` at the hard-core radius (or the origin).
Beyond the cutoff ``v = 0`` and ``u = c (r - a)``.  Units: hbar = 2m = 1, so
potential data from elsewhere must already carry this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonFiniteTail, NotUnitScattering, RangeTooSmall

STEPS_PER_CUTOFF = 2000


@dataclass(frozen=True)
class NoTail:
    kind = "none"

    def segments(self, start, cutoff):
        return [(start, cutoff, lambda r: np.zeros_like(r))] if cutoff > start else []

    def born_integral(self, start, cutoff):
        return 0.0

    def scaled(self, lam):
        return self

    def to_dict(self):
        return {"kind": "none"}


@dataclass(frozen=True)
class SoftSphere:
    """Constant ``height`` for ``r < radius``; zero beyond."""

    height: float
    radius: float
    kind = "soft_sphere"

    def __post_init__(self):
        if not (math.isfinite(self.height) and math.isfinite(self.radius)):
            raise NonFiniteTail("soft sphere parameters must be finite")
        if self.height < 0:
            raise ValueError(f"soft sphere height must be >= 0, got {self.height}")
        if self.radius < 0:
            raise ValueError(f"soft sphere radius must be >= 0, got {self.radius}")

    def segments(self, start, cutoff):
        h = self.height
        out = []
        if self.radius > start:
            out.append((start, self.radius, lambda r: np.full_like(r, h)))
        lo = max(start, self.radius)
        if cutoff > lo:
            out.append((lo, cutoff, lambda r: np.zeros_like(r)))
        return out

    def born_integral(self, start, cutoff):
        top = min(self.radius, cutoff)
        return self.height * (top**3 - start**3) / 3.0 if top > start else 0.0

    def scaled(self, lam):
        return SoftSphere(self.height / lam**2, self.radius * lam)

    def to_dict(self):
        return {"kind": "soft_sphere", "height": self.height, "radius": self.radius}


@dataclass(frozen=True)
class Tabulated:
    """Piecewise-linear potential through ``(r, v)`` samples.

    Constant extension below the first and above the last sample (up to the
    cutoff of the owning potential).
    """

    r: tuple
    v: tuple
    kind = "tabulated"

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or r.size < 1:
            raise ValueError("tabulated potential needs matching 1-D r and v samples")
        if np.any(np.diff(r) <= 0):
            raise ValueError("tabulated r samples must be strictly increasing")
        object.__setattr__(self, "r", tuple(float(x) for x in r))
        object.__setattr__(self, "v", tuple(float(x) for x in v))

    def _pieces(self, start, cutoff):
        """(a, b, v_a, slope) linear pieces covering [start, cutoff]."""
        r, v = self.r, self.v
        knots = [start] + [x for x in r if start < x < cutoff] + [cutoff]
        pieces = []
        for a, b in zip(knots[:-1], knots[1:]):
            mid = 0.5 * (a + b)
            if mid <= r[0]:
                pieces.append((a, b, v[0], 0.0))
            elif mid >= r[-1]:
                pieces.append((a, b, v[-1], 0.0))
            else:
                k = int(np.searchsorted(r, mid)) - 1
                slope = (v[k + 1] - v[k]) / (r[k + 1] - r[k])
                pieces.append((a, b, v[k] + slope * (a - r[k]), slope))
        return pieces

    def check(self, start):
        for x, y in zip(self.r, self.v):
            if x >= start and not math.isfinite(y):
                raise NonFiniteTail(f"tabulated v({x}) = {y} outside the hard core")
            if math.isfinite(y) and y < 0:
                raise ValueError(f"tabulated v({x}) = {y} is negative")

    def segments(self, start, cutoff):
        out = []
        for a, b, va, slope in self._pieces(start, cutoff):
            out.append((a, b, lambda rr, a=a, va=va, slope=slope: va + slope * (rr - a)))
        return out

    def born_integral(self, start, cutoff):
        total = 0.0
        for a, b, va, s in self._pieces(start, cutoff):
            c3 = (b**3 - a**3) / 3.0
            total += va * c3 + s * ((b**4 - a**4) / 4.0 - a * c3)
        return total

    def scaled(self, lam):
        return Tabulated(tuple(x * lam for x in self.r), tuple(y / lam**2 for y in self.v))

    def to_dict(self):
        return {"kind": "tabulated", "samples": [[x, y] for x, y in zip(self.r, self.v)]}


@dataclass(frozen=True)
class RadialPotential:
    """Non-negative radial pair potential: hard core, tail, and ``v = 0`` beyond the cutoff."""

    hard_core_radius: float = 0.0
    tail: object = field(default_factory=NoTail)
    cutoff_radius: float | None = None

    def __post_init__(self):
        if not math.isfinite(self.hard_core_radius) or self.hard_core_radius < 0:
            raise ValueError("hard_core_radius must be finite and >= 0")
        cutoff = self.cutoff_radius
        if cutoff is None:
            cutoff = self.hard_core_radius
            if isinstance(self.tail, SoftSphere):
                cutoff = max(cutoff, self.tail.radius)
            elif isinstance(self.tail, Tabulated):
                cutoff = max(cutoff, self.tail.r[-1])
            object.__setattr__(self, "cutoff_radius", float(cutoff))
        if not math.isfinite(self.cutoff_radius):
            raise ValueError("cutoff_radius must be finite")
        if self.cutoff_radius < self.hard_core_radius:
            raise ValueError("cutoff_radius must be >= hard_core_radius")
        if isinstance(self.tail, Tabulated):
            self.tail.check(self.hard_core_radius)

    def __call__(self, r):
        """Evaluate v(r); ``inf`` inside the hard core."""
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for a, b, fn in self.tail.segments(self.hard_core_radius, self.cutoff_radius):
            m = (r >= a) & (r < b)
            out[m] = fn(r[m])
        out[r < self.hard_core_radius] = np.inf
        return out

    def scaled(self, lam):
        """Dilation ``v(r) -> v(r / lam) / lam^2``; scales the scattering length by ``lam``."""
        return RadialPotential(self.hard_core_radius * lam, self.tail.scaled(lam), self.cutoff_radius * lam)

    def to_dict(self):
        return {
            "hard_core_radius": self.hard_core_radius,
            "tail": self.tail.to_dict(),
            "cutoff_radius": self.cutoff_radius,
        }

    @classmethod
    def from_dict(cls, d):
        t = d.get("tail") or {"kind": "none"}
        kind = t.get("kind", "none")
        if kind == "none":
            tail = NoTail()
        elif kind in ("soft_sphere", "square_well"):
            tail = SoftSphere(float(t["height"]), float(t["radius"]))
        elif kind == "tabulated":
            samples = t["samples"]
            tail = Tabulated(tuple(s[0] for s in samples), tuple(s[1] for s in samples))
        else:
            raise ValueError(f"unknown tail kind {kind!r}")
        cutoff = d.get("cutoff_radius")
        return cls(float(d.get("hard_core_radius", 0.0)), tail, None if cutoff is None else float(cutoff))


@dataclass
class ScatteringSolution:
    a: float
    r: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    r_matched: float
    residual: float

    @property
    def u_samples(self):
        return list(zip(self.r.tolist(), self.u.tolist()))

    def to_dict(self):
        return {"a": self.a, "r_matched": self.r_matched, "residual": self.residual}


def _rk4_segment(fn, a, b, u, du, n):
    """Integrate u'' = fn(r) u / 2 over [a, b] with n classical RK4 steps."""
    h = (b - a) / n
    rs = a + h * np.arange(n + 1)
    vs = fn(rs)
    vm = fn(rs[:-1] + 0.5 * h)
    us = np.empty(n + 1)
    us[0] = u
    for i in range(n):
        v0, v1, v2 = 0.5 * vs[i], 0.5 * vm[i], 0.5 * vs[i + 1]
        k1u, k1d = du, v0 * u
        k2u, k2d = du + 0.5 * h * k1d, v1 * (u + 0.5 * h * k1u)
        k3u, k3d = du + 0.5 * h * k2d, v1 * (u + 0.5 * h * k2u)
        k4u, k4d = du + h * k3d, v2 * (u + h * k3u)
        u = u + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
        du = du + h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d)
        us[i + 1] = u
    return rs, us, u, du


def _integrate(pot, r_max, step):
    """Return (r, u, a) at a single step size, reading a off the free region."""
    start = pot.hard_core_radius
    u, du = 0.0, 1.0
    rs_all, us_all = [np.array([start])], [np.array([0.0])]
    for a_, b_, fn in pot.tail.segments(start, pot.cutoff_radius):
        n = max(1, math.ceil((b_ - a_) / step - 1e-9))
        rs, us, u, du = _rk4_segment(fn, a_, b_, u, du, n)
        rs_all.append(rs[1:])
        us_all.append(us[1:])
    rc = pot.cutoff_radius
    n_free = max(10, math.ceil((r_max - rc) / step - 1e-9))
    r_free = rc + (r_max - rc) * np.arange(1, n_free + 1) / n_free
    u_free = u + du * (r_free - rc)
    r = np.concatenate(rs_all + [r_free])
    uu = np.concatenate(us_all + [u_free])

    # least-squares line through the last 10% of the free region
    window = r_free >= rc + 0.9 * (r_max - rc)
    slope, intercept = np.polyfit(r_free[window], u_free[window], 1)
    return r, uu, -intercept / slope


def solve_zero_energy(pot, r_max=None, step=None):
    """Scattering length by RK4 on the zero-energy equation, Richardson-extrapolated in the step.

    Defaults: ``r_max = 4 * cutoff_radius`` and ``step = cutoff_radius / 2000``.
    """
    rc = pot.cutoff_radius
    if r_max is None:
        r_max = 4.0 * rc if rc > 0 else 1.0
    if step is None:
        step = (rc if rc > 0 else r_max) / STEPS_PER_CUTOFF
    if not r_max > rc:
        raise RangeTooSmall(f"r_max = {r_max} must exceed cutoff_radius = {rc}")
    if not step > 0:
        raise ValueError("step must be positive")
    if isinstance(pot.tail, Tabulated):
        pot.tail.check(pot.hard_core_radius)

    _, _, a_coarse = _integrate(pot, r_max, step)
    r, u, a_fine = _integrate(pot, r_max, 0.5 * step)
    a = a_fine + (a_fine - a_coarse) / 15.0
    return ScatteringSolution(float(a), r, u, float(rc), float(abs(a_fine - a_coarse)))


def scattering_length(pot, **kwargs):
    return solve_zero_energy(pot, **kwargs).a


def born_bound(pot):
    """Upper bound ``(1/8 pi) int v = (1/2) int_0^inf v r^2 dr``; ``inf`` with a hard core."""
    if pot.hard_core_radius > 0:
        return math.inf
    return 0.5 * pot.tail.born_integral(0.0, pot.cutoff_radius)


def rescale_potential(pot, a_target, tol=1e-6):
    """Rescale a unit-scattering-length potential to scattering length ``a_target``.

    Implements ``v(x) = w(x / a) / a^2``.
    """
    if not a_target > 0:
        raise ValueError("a_target must be positive")
    a = scattering_length(pot)
    if abs(a - 1.0) > tol:
        raise NotUnitScattering(f"potential has scattering length {a!r}, not 1")
    return pot.scaled(a_target)


def soft_sphere_scattering_length(height, radius):
    """Closed form ``R - tanh(kappa R) / kappa`` with ``kappa = sqrt(height / 2)``."""
    if height == 0:
        return 0.0
    kappa = math.sqrt(height / 2.0)
    return radius - math.tanh(kappa * radius) / kappa
