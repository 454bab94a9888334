"""Rotating Gross-Pitaevskii ground states.

The functional minimized here is

    E[phi] = <phi| -Lap + V - omega L_z |phi> + 4 pi g int |phi|^4,   ||phi|| = 1,

with ``V = s |x|^2 + q |x|^4`` and ``L_z = -i (x d_y - y d_x)``; its Euler-Lagrange
equation carries ``8 pi g |phi|^2`` in place of ``4 pi g |phi|^2``.  Units are
hbar = 2m = 1.  In ``dim=2`` the same coupling is used literally (reduced model).

Derivatives are pseudo-spectral on a periodic box whose half-width is chosen so
that ``phi`` is negligible at the edges; the grid is cell-centred, so the origin
sits at a plaquette centre.  Minimization is a preconditioned, conjugated
gradient flow on the unit sphere with an exact line search along the
normalized path and a halving safeguard on the true energy.
"""

from __future__ import annotations

import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import fft, ndimage, optimize

from .errors import GridTooCoarse, NotConverged, Unstable

FOUR_PI = 4.0 * math.pi

# Fraction of the norm allowed above 2/3 of the grid Nyquist wavenumber.
HIGH_FREQUENCY_LIMIT = 1e-6

# Relative size of floating-point noise tolerated in accepted energy steps.
ENERGY_ROUNDOFF = 1e-13


@dataclass(frozen=True)
class TrapSpec:
    """Radial trap ``V(x) = quad_coeff |x|^2 + quart_coeff |x|^4``."""

    quad_coeff: float = 0.25
    quart_coeff: float = 0.0

    def __post_init__(self):
        s, q = self.quad_coeff, self.quart_coeff
        if s < 0 or q < 0 or s + q <= 0:
            raise ValueError(f"trap needs s >= 0, q >= 0, s + q > 0 (got s={s}, q={q})")

    def __call__(self, r2):
        return self.quad_coeff * r2 + self.quart_coeff * r2 * r2


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centred grid on ``[-half_width, half_width]^dim``."""

    n: int
    half_width: float
    dim: int

    @property
    def shape(self):
        return (self.n,) * self.dim

    @property
    def dx(self):
        return 2.0 * self.half_width / self.n

    @property
    def dV(self):
        return self.dx**self.dim

    @cached_property
    def x1(self):
        return -self.half_width + (np.arange(self.n) + 0.5) * self.dx

    @cached_property
    def coords(self):
        """Per-axis coordinate arrays shaped for broadcasting."""
        out = []
        for axis in range(self.dim):
            shape = [1] * self.dim
            shape[axis] = self.n
            out.append(self.x1.reshape(shape))
        return tuple(out)

    @cached_property
    def r2(self):
        return sum(c * c for c in self.coords)

    @cached_property
    def k1(self):
        return 2.0 * np.pi * fft.fftfreq(self.n, d=self.dx)

    @cached_property
    def wavenumbers(self):
        """Per-axis wavenumbers shaped for broadcasting, Nyquist zeroed (odd derivatives)."""
        k = self.k1.copy()
        k[self.n // 2] = 0.0
        out = []
        for axis in range(self.dim):
            shape = [1] * self.dim
            shape[axis] = self.n
            out.append(k.reshape(shape))
        return tuple(out)

    @cached_property
    def ksq(self):
        out = np.zeros(self.shape)
        for axis in range(self.dim):
            shape = [1] * self.dim
            shape[axis] = self.n
            out = out + (self.k1**2).reshape(shape)
        return out

    def inner(self, a, b):
        """Discrete L2 inner product <a|b>."""
        return np.vdot(a, b) * self.dV

    def norm(self, a):
        return math.sqrt(float(np.vdot(a, a).real) * self.dV)

    def to_dict(self):
        return {"n": self.n, "half_width": self.half_width, "dim": self.dim}


@dataclass(frozen=True)
class GPConfig:
    trap: TrapSpec = field(default_factory=TrapSpec)
    g: float = 0.0
    omega: float = 0.0
    grid_n: int = 128
    box_half_width: float = 12.0
    dim: int = 2

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")
        if self.g < 0:
            raise ValueError(f"coupling g must be >= 0, got {self.g}")
        if self.grid_n < 8 or self.grid_n % 2:
            raise ValueError(f"grid_n must be even and >= 8, got {self.grid_n}")
        if self.box_half_width <= 0:
            raise ValueError("box_half_width must be positive")
        if not self.stable:
            raise Unstable(
                f"V - |Omega x|^2/4 is bounded above at infinity: omega={self.omega}, "
                f"s={self.trap.quad_coeff}, q={self.trap.quart_coeff}"
            )

    @property
    def stable(self):
        q, s = self.trap.quart_coeff, self.trap.quad_coeff
        return q > 0 or self.omega**2 < 4.0 * s

    @cached_property
    def grid(self):
        return Grid(self.grid_n, self.box_half_width, self.dim)

    @cached_property
    def potential(self):
        return self.trap(self.grid.r2)

    def to_dict(self):
        return {
            "trap": {"quad_coeff": self.trap.quad_coeff, "quart_coeff": self.trap.quart_coeff},
            "g": self.g,
            "omega": self.omega,
            "grid_n": self.grid_n,
            "box_half_width": self.box_half_width,
            "dim": self.dim,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["trap"] = TrapSpec(**d["trap"])
        return cls(**d)


@dataclass
class EnergyBreakdown:
    kinetic: float
    trap: float
    rotation: float
    interaction: float
    rotation_imag: float = 0.0

    @property
    def total(self):
        return self.kinetic + self.trap + self.rotation + self.interaction

    def to_dict(self):
        return {
            "total": self.total,
            "kinetic": self.kinetic,
            "trap": self.trap,
            "rotation": self.rotation,
            "interaction": self.interaction,
        }


@dataclass
class GPState:
    config: GPConfig
    phi: np.ndarray
    energy: EnergyBreakdown
    mu: float
    residual_norm: float
    iterations: int
    converged: bool
    seed: int | None = None
    energy_history: list = field(default_factory=list, repr=False)

    @property
    def energy_total(self):
        return self.energy.total

    @property
    def energy_kinetic(self):
        return self.energy.kinetic

    @property
    def energy_trap(self):
        return self.energy.trap

    @property
    def energy_rotation(self):
        return self.energy.rotation

    @property
    def energy_interaction(self):
        return self.energy.interaction

    def to_dict(self):
        grid = self.config.grid
        flat = np.ascontiguousarray(self.phi, dtype=complex).ravel(order="C")
        interleaved = np.empty(2 * flat.size)
        interleaved[0::2] = flat.real
        interleaved[1::2] = flat.imag
        return {
            "config": self.config.to_dict(),
            "grid": {**grid.to_dict(), "dx": grid.dx, "order": "row-major", "layout": "interleaved re,im"},
            "energy": self.energy.to_dict(),
            "mu": self.mu,
            "residual_norm": self.residual_norm,
            "iterations": self.iterations,
            "converged": self.converged,
            "seed": self.seed,
            "field": interleaved.tolist(),
        }

    @classmethod
    def from_dict(cls, d):
        config = GPConfig.from_dict(d["config"])
        vals = np.asarray(d["field"], dtype=float)
        phi = (vals[0::2] + 1j * vals[1::2]).reshape(config.grid.shape)
        e = d["energy"]
        energy = EnergyBreakdown(e["kinetic"], e["trap"], e["rotation"], e["interaction"])
        return cls(config, phi, energy, d["mu"], d["residual_norm"], d["iterations"], d["converged"], d.get("seed"))

    def dumps(self):
        return json.dumps(self.to_dict())


# --------------------------------------------------------------------------
# operators


def _angular_momentum(phi_hat, grid):
    """L_z phi = -i (x d_y - y d_x) phi, from the Fourier transform of phi."""
    kx, ky = grid.wavenumbers[0], grid.wavenumbers[1]
    x, y = grid.coords[0], grid.coords[1]
    dphi_dx = fft.ifftn(1j * kx * phi_hat)
    dphi_dy = fft.ifftn(1j * ky * phi_hat)
    return -1j * (x * dphi_dy - y * dphi_dx)


def apply_linear(phi, config):
    """Apply the one-body operator ``h = -Lap + V - omega L_z``."""
    grid = config.grid
    phi_hat = fft.fftn(phi)
    out = fft.ifftn(grid.ksq * phi_hat) + config.potential * phi
    if config.omega != 0.0:
        out = out - config.omega * _angular_momentum(phi_hat, grid)
    return out


def high_frequency_fraction(phi, grid):
    """Fraction of the norm carried by |k| above 2/3 of the Nyquist wavenumber."""
    power = np.abs(fft.fftn(phi)) ** 2
    kmax = math.pi / grid.dx
    mask = grid.ksq > (2.0 * kmax / 3.0) ** 2
    total = power.sum()
    return float(power[mask].sum() / total) if total > 0 else 0.0


def normalize(phi, grid):
    return phi / grid.norm(phi)


def gp_energy(phi, config, check_resolution=True):
    """Energy breakdown of a normalized field.

    Raises GridTooCoarse when more than 1e-6 of the norm sits in the top third
    of the resolvable wavenumbers.
    """
    grid = config.grid
    if check_resolution:
        frac = high_frequency_fraction(phi, grid)
        if frac > HIGH_FREQUENCY_LIMIT:
            raise GridTooCoarse(f"high-frequency tail carries {frac:.3e} of the norm")
    phi_hat = fft.fftn(phi)
    dens = np.abs(phi) ** 2
    kinetic = float(np.sum(grid.ksq * np.abs(phi_hat) ** 2).real) * grid.dV / phi.size
    trap = float(np.sum(config.potential * dens)) * grid.dV
    rot, rot_imag = 0.0, 0.0
    if config.omega != 0.0:
        lz = grid.inner(phi, _angular_momentum(phi_hat, grid))
        rot, rot_imag = -config.omega * lz.real, -config.omega * lz.imag
    inter = FOUR_PI * config.g * float(np.sum(dens * dens)) * grid.dV
    return EnergyBreakdown(kinetic, trap, rot, inter, rot_imag)


def angular_momentum_expectation(phi, config):
    grid = config.grid
    return grid.inner(phi, _angular_momentum(fft.fftn(phi), grid)).real


def gp_residual(phi, config):
    """Return ``(r, mu)`` with ``r = (h + 8 pi g |phi|^2) phi - mu phi``."""
    hphi = apply_linear(phi, config) + 2.0 * FOUR_PI * config.g * np.abs(phi) ** 2 * phi
    mu = config.grid.inner(phi, hphi).real
    return hphi - mu * phi, mu


# --------------------------------------------------------------------------
# minimization


def _line_energy(tau, c_lin, c_quart, dnorm2, g):
    """Energy change E(phi(tau)) - E(phi) along the normalized path, cancellation-free."""
    n = 1.0 + tau * tau * dnorm2
    a0, a1, a2 = c_lin
    c0, c1, c2, c3, c4 = c_quart
    lin = 2.0 * a1 * tau + (a2 - a0 * dnorm2) * tau * tau
    quart = tau * (c1 + tau * ((c2 - 2.0 * c0 * dnorm2) + tau * (c3 + tau * (c4 - c0 * dnorm2 * dnorm2))))
    return lin / n + FOUR_PI * g * quart / (n * n)


def _best_step(c_lin, c_quart, dnorm2, g, tau_guess):
    """Minimize the energy along the normalized path phi(tau) for tau >= 0."""
    taus = tau_guess * np.logspace(-4, 3, 57)
    vals = _line_energy(taus, c_lin, c_quart, dnorm2, g)
    i = int(np.argmin(vals))
    lo = taus[i - 1] if i > 0 else 0.0
    hi = taus[min(i + 1, len(taus) - 1)]
    res = optimize.minimize_scalar(
        _line_energy, bounds=(lo, hi), args=(c_lin, c_quart, dnorm2, g),
        method="bounded", options={"xatol": 1e-10 * max(hi, 1e-12)},
    )
    if res.fun <= vals[i]:
        return float(res.x), float(res.fun)
    return float(taus[i]), float(vals[i])


def _descend(config, phi, tol, max_iter):
    grid = config.grid
    g8 = 2.0 * FOUR_PI * config.g
    dV = grid.dV

    phi = normalize(phi, grid)
    hlin = apply_linear(phi, config)
    energy = float(np.vdot(phi, hlin).real) * dV + FOUR_PI * config.g * float(np.sum(np.abs(phi) ** 4)) * dV
    history = [energy]
    d_prev = hd_prev = None
    grad_prev = r_prev_dot = None
    tau = 0.5
    it = 0
    res_norm = math.inf
    for it in range(1, max_iter + 1):
        dens = np.abs(phi) ** 2
        hphi = hlin + g8 * dens * phi
        mu = float(np.vdot(phi, hphi).real) * dV
        r = hphi - mu * phi
        res_norm = math.sqrt(float(np.vdot(r, r).real) * dV)
        if res_norm <= tol:
            it -= 1
            break

        # kinetic preconditioner, shifted by the current one-body scale
        alpha = max(mu, 1.0)
        grad = fft.ifftn(fft.fftn(r) / (alpha + grid.ksq))
        grad = grad - (float(np.vdot(phi, grad).real) * dV) * phi
        r_dot = float(np.vdot(r, grad).real)
        if d_prev is None or it % 200 == 0:
            beta = 0.0
        else:
            beta = max(0.0, float(np.vdot(r, grad - grad_prev).real) / r_prev_dot)
        d = -grad
        hd = apply_linear(d, config)
        if beta > 0.0:
            d = d + beta * d_prev
            hd = hd + beta * hd_prev
        # keep d tangent; phi's component of d costs one scalar correction of hd
        c = float(np.vdot(phi, d).real) * dV
        if c != 0.0:
            d = d - c * phi
            hd = hd - c * hlin
        slope = float(np.vdot(hphi, d).real) * dV
        if slope >= 0.0:
            d, hd = -grad, apply_linear(-grad, config)
            c = float(np.vdot(phi, d).real) * dV
            d, hd = d - c * phi, hd - c * hlin

        dnorm2 = float(np.vdot(d, d).real) * dV
        c_lin = (
            float(np.vdot(phi, hlin).real) * dV,
            float(np.vdot(d, hlin).real) * dV,
            float(np.vdot(d, hd).real) * dV,
        )
        p0 = dens
        p1 = 2.0 * (phi.conj() * d).real
        p2 = np.abs(d) ** 2
        c_quart = np.array([
            np.sum(p0 * p0), 2.0 * np.sum(p0 * p1), np.sum(p1 * p1 + 2.0 * p0 * p2),
            2.0 * np.sum(p1 * p2), np.sum(p2 * p2),
        ]) * dV
        tau, model_drop = _best_step(c_lin, c_quart, dnorm2, config.g, max(tau, 1e-8))
        if not model_drop < 0.0:
            break

        # halving safeguard on the directly evaluated energy; the slack is the
        # round-off floor of the energy sum itself
        slack = ENERGY_ROUNDOFF * (abs(c_lin[0]) + FOUR_PI * config.g * c_quart[0])
        accepted = False
        for _ in range(60):
            scale = 1.0 / math.sqrt(1.0 + tau * tau * dnorm2)
            phi_new = (phi + tau * d) * scale
            hlin_new = (hlin + tau * hd) * scale
            e_new = (float(np.vdot(phi_new, hlin_new).real) * dV
                     + FOUR_PI * config.g * float(np.sum(np.abs(phi_new) ** 4)) * dV)
            if e_new <= energy + slack:
                accepted = True
                break
            tau *= 0.5
        if not accepted:
            break
        # renormalize exactly and refresh h phi periodically to stop drift
        nrm = grid.norm(phi_new)
        phi, hlin = phi_new / nrm, hlin_new / nrm
        if it % 50 == 0:
            hlin = apply_linear(phi, config)
        energy = e_new
        history.append(energy)
        d_prev, hd_prev = d, hd
        grad_prev, r_prev_dot = grad, r_dot

    return phi, res_norm, it, history


def _fix_global_phase(phi):
    idx = np.argmax(np.abs(phi))
    val = phi.flat[idx]
    return phi * (abs(val) / val) if val != 0 else phi


def random_initial_field(config, rng):
    """Smooth complex Gaussian random field under a Gaussian envelope."""
    grid = config.grid
    noise = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    width = max(1.0, 0.5 * thomas_fermi_radius(config))
    smooth = fft.ifftn(fft.fftn(noise) * np.exp(-grid.ksq * 0.5))
    envelope = np.exp(-grid.r2 / (2.0 * width**2))
    return normalize(smooth * envelope + 0.5 * envelope, grid)


def thomas_fermi_radius(config):
    """Rough cloud radius: Thomas-Fermi estimate, never below the oscillator scale."""
    s, q = config.trap.quad_coeff, config.trap.quart_coeff
    g = config.g
    # solve for R in the reduced density profile (mu - V)/(8 pi g) normalized to one
    if g == 0:
        scale = s**-0.25 if s > 0 else q ** (-1.0 / 6.0)
        return scale
    if config.dim == 2:
        def norm_minus_one(R):
            mu = s * R * R + q * R**4
            # int_0^R 2 pi r (mu - V)/(8 pi g) dr
            val = (mu * R * R / 2 - s * R**4 / 4 - q * R**6 / 6) * 2 * math.pi / (2 * FOUR_PI * g)
            return val - 1.0
    else:
        def norm_minus_one(R):
            mu = s * R * R + q * R**4
            val = (mu * R**3 / 3 - s * R**5 / 5 - q * R**7 / 7) * FOUR_PI / (2 * FOUR_PI * g)
            return val - 1.0
    # increasing in R from -1 at R = 0
    hi = 1.0
    while norm_minus_one(hi) < 0:
        hi *= 2.0
    R = optimize.brentq(norm_minus_one, 0.0, hi)
    osc = s**-0.25 if s > 0 else q ** (-1.0 / 6.0)
    return max(R, osc)


def minimize_gp(config, seed=0, tol=1e-8, max_iter=20000, n_restarts=5, strict=False, initial=None):
    """Best-of-restarts minimizer of the GP functional.

    Each restart ``k`` starts from a random field drawn with seed ``seed + k``
    (or from ``initial`` for ``k = 0`` when given).  Returns the lowest-energy
    state; ``converged`` is False when its residual stayed above ``tol``, and
    ``strict=True`` turns that into :class:`NotConverged`.
    """
    if not config.stable:
        raise Unstable("configuration is not stable")
    best = None
    for k in range(n_restarts):
        rng = np.random.default_rng(seed + k)
        phi0 = initial if (k == 0 and initial is not None) else random_initial_field(config, rng)
        phi, res, iters, history = _descend(config, phi0, tol, max_iter)
        phi = _fix_global_phase(phi)
        energy = gp_energy(phi, config, check_resolution=False)
        state = GPState(config, phi, energy, energy.total + energy.interaction, res, iters,
                        res <= tol, seed + k, history)
        if best is None or state.energy_total < best.energy_total:
            best = state
    # final consistency of mu with the residual definition
    _, best.mu = gp_residual(best.phi, config)
    if high_frequency_fraction(best.phi, config.grid) > HIGH_FREQUENCY_LIMIT:
        warnings.warn("minimizer is under-resolved on this grid", RuntimeWarning, stacklevel=2)
    if strict and not best.converged:
        raise NotConverged(f"residual {best.residual_norm:.3e} above tol {tol:.1e}", best)
    return best


# --------------------------------------------------------------------------
# diagnostics (2D)


def _require_2d(phi):
    if np.ndim(phi) != 2:
        raise ValueError("this diagnostic is defined for dim = 2 fields only")


def detect_vortices(phi, grid, min_core_distance=None, density_floor=0.05):
    """Plaquette winding numbers of the phase, restricted to the condensate.

    Returns a list of ``((x, y), winding)`` at plaquette centres.  A plaquette is
    kept when its winding is nonzero and the maximum density within
    ``min_core_distance`` exceeds ``density_floor`` times the peak density, which
    discards the phase noise outside the cloud.  Detections closer than
    ``min_core_distance`` with equal winding are merged.
    """
    _require_2d(phi)
    if min_core_distance is None:
        min_core_distance = 4.0 * grid.dx
    theta = np.angle(phi)

    def wrap(a):
        return (a + np.pi) % (2.0 * np.pi) - np.pi

    # corners (i,j) -> (i+1,j) -> (i+1,j+1) -> (i,j+1): counter-clockwise in (x, y)
    t00, t10 = theta[:-1, :-1], theta[1:, :-1]
    t11, t01 = theta[1:, 1:], theta[:-1, 1:]
    circ = wrap(t10 - t00) + wrap(t11 - t10) + wrap(t01 - t11) + wrap(t00 - t01)
    winding = np.rint(circ / (2.0 * np.pi)).astype(int)

    dens = np.abs(phi) ** 2
    size = max(3, 2 * int(math.ceil(min_core_distance / grid.dx)) + 1)
    local_max = ndimage.maximum_filter(dens, size=size, mode="constant")
    plaquette_env = local_max[:-1, :-1]
    keep = (winding != 0) & (plaquette_env >= density_floor * dens.max())

    xc = grid.x1[:-1] + 0.5 * grid.dx
    found = []
    for i, j in zip(*np.nonzero(keep)):
        found.append(((float(xc[i]), float(xc[j])), int(winding[i, j])))

    merged = []
    for pos, w in found:
        for k, (p2, w2) in enumerate(merged):
            if w2 == w and math.dist(pos, p2) < min_core_distance:
                break
        else:
            merged.append((pos, w))
    return merged


def _fourier_interpolate(phi, grid, xs, ys):
    """Trigonometric interpolation of a periodic grid field at arbitrary points."""
    n = grid.n
    coeff = fft.fft2(phi) / (n * n)
    k = grid.k1
    x0 = grid.x1[0]
    ex = np.exp(1j * np.outer(xs - x0, k))
    ey = np.exp(1j * np.outer(ys - x0, k))
    # Nyquist column is split symmetrically so real fields interpolate to real values
    half = n // 2
    ex[:, half] = np.cos(k[half] * (xs - x0))
    ey[:, half] = np.cos(k[half] * (ys - x0))
    return np.einsum("pk,kl,pl->p", ex, coeff, ey)


def anisotropy(phi, grid, n_radii=None, n_angles=128, r_max=None):
    """Relative L2 deviation of the density from its azimuthal average.

    The field is spectrally interpolated onto a polar grid, so radial densities
    give zero to round-off and the value is invariant under rotations of the field.
    """
    _require_2d(phi)
    if r_max is None:
        r_max = 0.9 * grid.half_width
    if n_radii is None:
        n_radii = max(16, int(r_max / grid.dx))
    radii = (np.arange(n_radii) + 0.5) * (r_max / n_radii)
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    rr, aa = np.meshgrid(radii, angles, indexing="ij")
    vals = _fourier_interpolate(phi, grid, (rr * np.cos(aa)).ravel(), (rr * np.sin(aa)).ravel())
    dens = (np.abs(vals) ** 2).reshape(rr.shape)
    mean = dens.mean(axis=1, keepdims=True)
    w = radii[:, None]
    num = np.sum((dens - mean) ** 2 * w)
    den = np.sum(dens**2 * w)
    return float(math.sqrt(num / den)) if den > 0 else 0.0


@dataclass
class ScanRow:
    g: float
    anisotropy: float
    vortex_count: int
    energy: float
    residual_norm: float
    converged: bool
    seed: int

    def to_dict(self):
        return {
            "g": self.g, "anisotropy": self.anisotropy, "vortex_count": self.vortex_count,
            "energy": self.energy, "residual_norm": self.residual_norm,
            "converged": self.converged, "seed": self.seed,
        }


def _scan_point(args):
    config, seeds, tol, max_iter = args
    best = None
    for s in seeds:
        st = minimize_gp(config, seed=s, tol=tol, max_iter=max_iter, n_restarts=1)
        if best is None or st.energy_total < best.energy_total:
            best = st
    grid = config.grid
    vort = detect_vortices(best.phi, grid)
    return ScanRow(config.g, anisotropy(best.phi, grid), len(vort), best.energy_total,
                   best.residual_norm, best.converged, best.seed)


def symmetry_breaking_scan(trap, omega, g_grid, seeds=range(5), grid_n=128, box_half_width=8.0,
                           tol=1e-8, max_iter=20000, jobs=1, threshold=1e-2):
    """Per-coupling best-of-seeds minimizers in a faster-than-quadratic trap.

    Returns ``(rows, g_onset)`` where ``g_onset`` is the smallest scanned coupling
    whose anisotropy exceeds ``threshold`` (None if none does).
    """
    if trap.quart_coeff <= 0:
        raise ValueError("symmetry-breaking scan needs a quartic trap component (q > 0)")
    seeds = list(seeds)
    tasks = [
        (GPConfig(trap, float(g), omega, grid_n, box_half_width, 2), seeds, tol, max_iter)
        for g in g_grid
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_point, tasks))
    else:
        rows = [_scan_point(t) for t in tasks]
    rows.sort(key=lambda row: row.g)
    onset = next((row.g for row in rows if row.anisotropy > threshold), None)
    return rows, onset
