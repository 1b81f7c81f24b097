"""Open-waveguide boundaries on a periodic grid.

The half-infinite waveguide is emulated by two pieces:

* an additive *source deposit* near one end, which launches the drive and
  the incoming vacuum noise as travelling waves, and
* an *absorbing ramp* at the far end, which damps anything that reaches
  it, including waves that exit through x = 0 and reappear across the
  periodic seam.

Deposit normalization. Adding sqrt(c) * (dt/dx) * s(t_n) per step, under
exact spectral advection at speed c, reconstructs the band-limited inflow
signal: a cw amplitude alpha launches a travelling wave of amplitude
alpha/sqrt(c), i.e. photon flux |alpha|^2, and white noise of variance
(n + 1/2)/dt per step produces a spatially white mover with equal-time
variance (n + 1/2)/dx per cell (the vacuum's 1/(2 dx) per-mover
correlator). Both follow from the sampling identity
sum_m sinc^2(u - m nu) = 1/nu for advection fractions nu = c dt/dx <= 1.

The coherent drive is deposited through a short Hann kernel normalized at
the resonant wavenumber, which suppresses the near-Nyquist source wake to
~1e-4; the noise is deposited into a single cell so its spectrum stays
white across the full band. Left-moving waves pass through the additive
source unmodified and leave through the seam into the ramp.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from ..core.dispersion import DispersionSpec
from ..core.fields import FieldState, Frame
from ..core.grid import Grid1D
from .drive import EndfireDrive

MAX_ABSORBER_FRACTION = 0.1 + 1e-12


class BoundaryError(ValueError):
    """Raised when a drive cannot be launched cleanly at the boundary."""


class ResolutionWarning(UserWarning):
    """Field content too close to the grid's Nyquist limit to absorb cleanly."""


def boundary_velocity(dispersion: DispersionSpec, grid: Grid1D, carrier_k: float,
                      rel_tol: float = 1e-3) -> float:
    """Group speed at the carrier; rejects non-constant local dispersion.

    End-fire launching assumes a locally constant photon velocity. The
    group velocity is sampled over a band of +- pi/(8 dx) around the
    carrier and must not deviate from its carrier value by more than
    ``rel_tol`` relatively.
    """
    delta = np.pi / (8.0 * grid.dx)
    ks = carrier_k + np.linspace(-delta, delta, 17)
    try:
        vs = np.asarray(dispersion.group_velocity_at(ks), dtype=float)
    except ValueError as err:
        raise BoundaryError(f"cannot sample group velocity near carrier: {err}") from err
    v0 = float(dispersion.group_velocity_at(carrier_k))
    if abs(v0) == 0.0:
        raise BoundaryError("zero group velocity at the drive carrier")
    dev = np.max(np.abs(vs - v0))
    if dev > rel_tol * abs(v0):
        raise BoundaryError(
            "non-constant dispersion near the boundary: group velocity varies by "
            f"{dev:.3e} m/s ({dev / abs(v0):.2%}) within +-pi/(8 dx) of the carrier; "
            "end-fire injection requires a locally linear branch")
    return abs(v0)


class DepositPlan:
    """Precomputed per-step source terms for one end-fire drive."""

    def __init__(self, grid: Grid1D, dispersion: DispersionSpec,
                 drive: EndfireDrive, frame: Frame, dt: float,
                 kernel_halfwidth: int = 2):
        carrier = drive.carrier_in_frame(frame.k)
        c = boundary_velocity(dispersion, grid, carrier)
        nu = c * dt / grid.dx
        if nu > 1.0:
            raise BoundaryError(
                f"advection fraction c*dt/dx = {nu:.3f} > 1; "
                "reduce dt for clean injection")
        if drive.inlet_cell < kernel_halfwidth \
                or drive.inlet_cell >= grid.n_points - kernel_halfwidth:
            raise BoundaryError("inlet_cell too close to the grid edge for the "
                                "drive kernel")
        self.drive = drive
        self.detuning = drive.detuning(frame.omega)
        self.scale = np.sqrt(c) * dt / grid.dx
        self.noise_sigma = np.sqrt(0.5 / (2.0 * dt))
        offs = np.arange(-kernel_halfwidth, kernel_halfwidth + 1)
        window = 0.5 * (1.0 + np.cos(np.pi * offs / (kernel_halfwidth + 1)))
        cells = (drive.inlet_cell + offs) % grid.n_points
        # matched normalization: unit response of the resonant wavenumber
        khat = np.sum(window * np.exp(-1j * carrier * cells * grid.dx))
        self.kernel_cells = cells
        self.kernel = window / khat

    def apply(self, state: FieldState, rng: np.random.Generator = None,
              vacuum_noise: bool = False):
        s = self.drive.amplitude(state.time)
        if self.detuning != 0.0:
            s = s * np.exp(-1j * self.detuning * state.time)
        if s != 0.0:
            state.a[self.kernel_cells] += self.scale * s * self.kernel
        if vacuum_noise:
            if rng is None:
                raise BoundaryError("vacuum noise injection requires an rng")
            xi = self.noise_sigma * (rng.standard_normal() + 1j * rng.standard_normal())
            state.a[self.drive.inlet_cell] += self.scale * xi


def inject_boundary(state: FieldState, drive: EndfireDrive,
                    dispersion: DispersionSpec, dt: float,
                    rng: np.random.Generator = None,
                    vacuum_noise: bool = False) -> FieldState:
    """Deposit one step of drive (and vacuum inflow) at the inlet.

    Launched cw photon flux is |alpha_in|^2; with ``vacuum_noise`` the
    injected mover also carries the Wigner vacuum, giving the 1/(2 dx)
    equal-time correlator diagonal downstream. Mutates ``state.a``.
    """
    plan = DepositPlan(state.grid, dispersion, drive, state.frame, dt)
    plan.apply(state, rng=rng, vacuum_noise=vacuum_noise)
    return state


@dataclass(frozen=True)
class AbsorberProfile:
    """Smooth damping ramp sigma(x) (1/s) over the far end of the grid."""

    sigma: np.ndarray
    width_fraction: float

    def __post_init__(self):
        if self.width_fraction > MAX_ABSORBER_FRACTION:
            raise ValueError("absorbing ramp may occupy at most 10% of the grid")
        sig = np.asarray(self.sigma, dtype=float)
        if np.any(sig < 0):
            raise ValueError("damping profile must be non-negative")
        sig.flags.writeable = False
        object.__setattr__(self, "sigma", sig)

    def decay_factors(self, dt: float) -> np.ndarray:
        return np.exp(-self.sigma * dt)


def make_absorber(grid: Grid1D, speed: float, width_fraction: float = 0.1,
                  opacity: float = 10.0) -> AbsorberProfile:
    """Smooth damping bump over the far end of the grid.

    ``opacity`` is the single-pass amplitude attenuation exponent for a
    wave crossing at ``speed``: transmitted energy ~ exp(-2*opacity). The
    bump rises and falls with quintic smoothsteps and vanishes at both of
    its edges, so waves meet no damping discontinuity from either
    direction; in particular left-movers that exit through x = 0 and
    reappear across the periodic seam are absorbed without reflection.
    """
    n = grid.n_points
    width = int(round(width_fraction * n))
    if width < 8:
        raise ValueError("absorbing bump needs at least 8 cells")
    xi = np.linspace(0.0, 1.0, width, endpoint=True)
    up = np.minimum(2.0 * xi, 1.0)
    down = np.minimum(2.0 - 2.0 * xi, 1.0)
    shape = np.minimum(_smoothstep5(up), _smoothstep5(down))
    # sigma_max chosen so integral sigma dx / speed = opacity; the up-down
    # quintic bump integrates to 1/2 over its unit support.
    sigma_max = 2.0 * opacity * abs(speed) / (width * grid.dx)
    sigma = np.zeros(n)
    sigma[n - width:] = sigma_max * shape
    return AbsorberProfile(sigma=sigma, width_fraction=width_fraction)


def _smoothstep5(x: np.ndarray) -> np.ndarray:
    return x ** 3 * (10.0 - 15.0 * x + 6.0 * x ** 2)


def absorbing_layer(state: FieldState, profile: AbsorberProfile, dt: float,
                    check_resolution: bool = True) -> FieldState:
    """Damp both fields by exp(-sigma(x) dt). Mutates ``state``.

    Emits a :class:`ResolutionWarning` when a significant energy fraction
    sits above 80% of the Nyquist wavenumber, where the ramp can no longer
    guarantee low reflection.
    """
    if check_resolution:
        spec = np.abs(np.fft.fft(state.a)) ** 2
        total = spec.sum()
        if total > 0:
            hot = np.abs(state.grid.k_axis) > 0.8 * np.pi / state.grid.dx
            if spec[hot].sum() > 0.01 * total:
                warnings.warn(
                    "field energy within 20% of the Nyquist wavenumber; absorbing "
                    "layer reflection is not controlled for under-resolved pulses",
                    ResolutionWarning, stacklevel=2)
    factors = profile.decay_factors(dt)
    state.a *= factors
    state.b *= factors
    return state
