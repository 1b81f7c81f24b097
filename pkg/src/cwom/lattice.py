"""Discrete optomechanical arrays and the array -> continuum mapping.

A 1D ring of sites with tight-binding photon/phonon hopping and either a
local on-site coupling or a link coupling (phonons dressing the tunneling
between neighbors). Site amplitudes map to continuum fields as
a_j = a(j dx) sqrt(dx), which preserves total photon number exactly; the
continuum coupling is g0_cont = g0_site sqrt(dx), so the proper continuum
limit holds g0_cont fixed while g0_site grows as 1/sqrt(dx).

The link coupling expands, around each link center, into the canonical
continuum terms: a pointwise coupling 2 g0 sqrt(dx), plus
second-order-in-dx derivative couplings obtained by integrating the
Taylor remainder by parts,

    g_ppp_eff = 2 g0 sqrt(dx)
    g_mmp_eff = -g0 sqrt(dx) dx^2
    g_mpm_eff = -g0 sqrt(dx) dx^2 / 4   (real),

with no first-derivative (odd-sector) photon terms: they cancel by the
inversion symmetry of the link geometry. The prefactors complete the
expansion in closed form; the array-vs-continuum convergence study in the
test suite confirms them numerically at second order.
"""

from dataclasses import dataclass, field

import numpy as np

from .core.couplings import CouplingSet
from .core.fields import FieldState
from .core.grid import Grid1D
from .dynamics.stepper import DivergenceError

COUPLING_KINDS = ("site", "link")


def band_structure(J: dict, dx_lattice: float, k_samples) -> np.ndarray:
    """Tight-binding band omega(k) = -sum_l 2 J_l cos(k l dx) (rad/s).

    ``J`` maps positive hop distances to real tunneling rates; Hermiticity
    of the hopping Hamiltonian requires real J, so complex values are
    rejected rather than silently producing a complex band.
    """
    k = np.asarray(k_samples, dtype=float)
    band = np.zeros_like(k)
    for hop, rate in J.items():
        if not isinstance(hop, (int, np.integer)) or hop < 1:
            raise ValueError("hop distances must be integers >= 1")
        if isinstance(rate, complex) and rate.imag != 0.0:
            raise ValueError("complex tunneling rejected: the band would not "
                             "be real (non-Hermitian hopping)")
        band -= 2.0 * float(np.real(rate)) * np.cos(k * hop * dx_lattice)
    return band


@dataclass(frozen=True)
class ArrayConfig:
    """Discrete-array parameters (SI units; per-site rates)."""

    n_sites: int
    dx_lattice: float
    J: dict = field(default_factory=dict)
    K: dict = field(default_factory=dict)
    g0_site: float = 0.0
    g0_link: float = 0.0
    kappa: float = 0.0
    Gamma: float = 0.0
    n_th: float = 0.0
    omega_frame: float = 0.0   # constant subtracted from the photon band
    Omega_frame: float = 0.0   # constant subtracted from the phonon band

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError("need at least two sites")
        if self.dx_lattice <= 0:
            raise ValueError("lattice constant must be positive")
        if self.kappa < 0 or self.Gamma < 0 or self.n_th < 0:
            raise ValueError("rates and occupation must be non-negative")
        for hops in (self.J, self.K):
            for hop in hops:
                if not isinstance(hop, (int, np.integer)) or hop < 1:
                    raise ValueError("hop distances must be integers >= 1")

    def photon_band(self) -> np.ndarray:
        k = 2.0 * np.pi * np.fft.fftfreq(self.n_sites, d=self.dx_lattice)
        return band_structure(self.J, self.dx_lattice, k) - self.omega_frame

    def phonon_band(self) -> np.ndarray:
        k = 2.0 * np.pi * np.fft.fftfreq(self.n_sites, d=self.dx_lattice)
        return band_structure(self.K, self.dx_lattice, k) - self.Omega_frame


@dataclass
class LatticeState:
    a: np.ndarray
    b: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=np.complex128)
        self.b = np.asarray(self.b, dtype=np.complex128)

    def photon_number(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2))

    def phonon_number(self) -> float:
        return float(np.sum(np.abs(self.b) ** 2))

    def copy(self) -> "LatticeState":
        return LatticeState(self.a.copy(), self.b.copy(), self.time)


def _site_rhs(a, b, g0):
    u = b + np.conj(b)
    return 1j * g0 * u * a, 1j * g0 * np.abs(a) ** 2


def _link_rhs(a, b, g0):
    # u_j lives on the link between sites j and j+1
    u = b + np.conj(b)
    a_next = np.roll(a, -1)
    a_prev = np.roll(a, 1)
    u_prev = np.roll(u, 1)
    da = 1j * g0 * (a_next * u + a_prev * u_prev)
    db = 1j * g0 * (np.conj(a_next) * a + np.conj(a) * a_next)
    return da, db


class LatticeStepper:
    """Strang-split integrator for the array: exact tunneling half-steps in
    k-space, explicit RK4 interaction + damping, Euler-Maruyama site noise.
    """

    def __init__(self, config: ArrayConfig, dt: float, sampling: str = "none"):
        if dt <= 0:
            raise ValueError("dt must be positive")
        self.config = config
        self.dt = dt
        self.sampling = sampling
        self._half_a = np.exp(-0.5j * config.photon_band() * dt)
        self._half_b = np.exp(-0.5j * config.phonon_band() * dt)

    def _interaction(self, a, b):
        cfg = self.config
        da = np.zeros_like(a)
        db = np.zeros_like(b)
        if cfg.g0_site:
            sa, sb = _site_rhs(a, b, cfg.g0_site)
            da += sa
            db += sb
        if cfg.g0_link:
            la, lb = _link_rhs(a, b, cfg.g0_link)
            da += la
            db += lb
        if cfg.kappa:
            da -= 0.5 * cfg.kappa * a
        if cfg.Gamma:
            db -= 0.5 * cfg.Gamma * b
        return da, db

    def step_inplace(self, state: LatticeState, rng=None, step_index: int = 0):
        dt = self.dt
        state.a = np.fft.ifft(self._half_a * np.fft.fft(state.a))
        state.b = np.fft.ifft(self._half_b * np.fft.fft(state.b))
        a0, b0 = state.a, state.b
        k1a, k1b = self._interaction(a0, b0)
        k2a, k2b = self._interaction(a0 + 0.5 * dt * k1a, b0 + 0.5 * dt * k1b)
        k3a, k3b = self._interaction(a0 + 0.5 * dt * k2a, b0 + 0.5 * dt * k2b)
        k4a, k4b = self._interaction(a0 + dt * k3a, b0 + dt * k3b)
        state.a = a0 + dt / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a)
        state.b = b0 + dt / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b)
        if self.sampling == "wigner" and rng is not None:
            n = self.config.n_sites
            # per-site input-output noise: variance (n + 1/2)/dt per step
            if self.config.kappa:
                sig = np.sqrt(0.5 / (2.0 * dt))
                state.a += dt * np.sqrt(self.config.kappa) * sig * (
                    rng.standard_normal(n) + 1j * rng.standard_normal(n))
            if self.config.Gamma:
                sig = np.sqrt((self.config.n_th + 0.5) / (2.0 * dt))
                state.b += dt * np.sqrt(self.config.Gamma) * sig * (
                    rng.standard_normal(n) + 1j * rng.standard_normal(n))
        if not (np.all(np.isfinite(state.a)) and np.all(np.isfinite(state.b))):
            raise DivergenceError(step_index, state.time, np.inf, np.inf)
        state.a = np.fft.ifft(self._half_a * np.fft.fft(state.a))
        state.b = np.fft.ifft(self._half_b * np.fft.fft(state.b))
        state.time += dt
        return state


def simulate_array(config: ArrayConfig, initial: LatticeState, dt: float,
                   n_steps: int, sampling: str = "none", rng=None,
                   record_every: int = 0):
    """Integrate the discrete model; optionally record site snapshots.

    Returns (final_state, snapshots) with snapshots a list of
    (time, a_sites, b_sites) tuples when ``record_every`` > 0.
    """
    state = initial.copy()
    stepper = LatticeStepper(config, dt, sampling=sampling)
    snapshots = []
    for i in range(n_steps):
        stepper.step_inplace(state, rng=rng, step_index=i)
        if record_every and (i + 1) % record_every == 0:
            snapshots.append((state.time, state.a.copy(), state.b.copy()))
    return state, snapshots


def to_continuum(a_sites, b_sites, dx_lattice: float) -> FieldState:
    """Map site amplitudes to continuum fields: a(j dx) = a_j / sqrt(dx).

    Total photon/phonon number is preserved exactly. Link-coupled phonons
    physically sit half a cell to the right of their site index; they are
    returned on the same grid, with the offset left to the caller's
    comparison.
    """
    a_sites = np.asarray(a_sites, dtype=complex)
    grid = Grid1D(len(a_sites), dx_lattice)
    root = np.sqrt(dx_lattice)
    return FieldState(grid, a_sites / root, np.asarray(b_sites, dtype=complex) / root)


def from_continuum(state: FieldState):
    """Inverse of :func:`to_continuum`: (a_sites, b_sites)."""
    root = np.sqrt(state.grid.dx)
    return state.a * root, state.b * root


def site_coupling_from_continuum(g0_cont: float, dx_lattice: float) -> float:
    """g0_site realizing a continuum coupling g0_cont: g0_cont/sqrt(dx)."""
    return g0_cont / np.sqrt(dx_lattice)


def link_effective_couplings(g0_link: float, dx_lattice: float) -> CouplingSet:
    """Continuum coupling set emerging from the link-coupled array at
    second order in the lattice constant. Even sector only: the link
    geometry is inversion symmetric, so no odd (first-derivative photon)
    terms survive."""
    root = np.sqrt(dx_lattice)
    return CouplingSet.even(
        g_ppp=2.0 * g0_link * root,
        g_mmp=-g0_link * root * dx_lattice ** 2,
        g_mpm=-g0_link * root * dx_lattice ** 2 / 4.0,
    )
