"""Coupled evolution of several optical branches and one phonon field.

Each branch carries its own rotating frame (lab carrier omega, k) and
envelope dispersion; the phonon frame (Omega_d, q_d) is independent. In
these frames the pointwise interaction splits into channels

    d a_j/dt += i g(j,l) a_l * {b  with phase (k_l-k_j+q_d, w_l-w_j+Omega_d)
                                b* with phase (k_l-k_j-q_d, w_l-w_j-Omega_d)}
    d b/dt   += i g(j,l) conj(a_j) a_l * phase (k_l-k_j-q_d, w_l-w_j-Omega_d)

with phase (K, W) meaning exp(i K x - i W t). A channel is resonant when
its phase vanishes; choosing frames that satisfy three-wave matching makes
the physical process (amplifying or swapping) autonomous. With
``rotating_wave=True`` only resonant channels are kept, which is the
standard envelope model for phase-matched two-branch runs; the full set
retains counter-rotating channels at the cost of resolving them in dt.

Branch equations reuse the pointwise coupling only; derivative couplings
are a single-branch feature of the core interaction.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core.dispersion import DispersionSpec
from .core.fields import FieldState, Frame
from .core.grid import Grid1D
from .core.spectral import apply_phase, dispersion_phase
from .dynamics.bath import sample_noise_field
from .dynamics.boundary import AbsorberProfile, DepositPlan
from .dynamics.drive import EndfireDrive
from .dynamics.stepper import DivergenceError


@dataclass(frozen=True)
class BranchConfig:
    """One optical branch: envelope dispersion in its own rotating frame."""

    label: str
    dispersion: DispersionSpec
    frame_omega: float = 0.0
    frame_k: float = 0.0
    kappa: float = 0.0
    drive: Optional[EndfireDrive] = None
    frozen: bool = False


@dataclass(frozen=True)
class PhononConfig:
    """The phonon field's envelope frame, band, and damping."""

    dispersion: DispersionSpec
    frame_omega: float = 0.0
    frame_k: float = 0.0
    gamma: float = 0.0
    n_th: float = 0.0


@dataclass
class MultiBranchState:
    grid: Grid1D
    fields: list
    b: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.fields = [np.asarray(f, dtype=np.complex128) for f in self.fields]
        self.b = np.asarray(self.b, dtype=np.complex128)
        n = self.grid.n_points
        for f in self.fields:
            if f.shape != (n,):
                raise ValueError("branch field length must match the grid")
        if self.b.shape != (n,):
            raise ValueError("phonon field length must match the grid")

    @staticmethod
    def vacuum(grid: Grid1D, n_branches: int) -> "MultiBranchState":
        return MultiBranchState(grid, [grid.zeros() for _ in range(n_branches)],
                                grid.zeros())

    def photon_number(self, j: int) -> float:
        return float(np.sum(np.abs(self.fields[j]) ** 2) * self.grid.dx)

    def phonon_number(self) -> float:
        return float(np.sum(np.abs(self.b) ** 2) * self.grid.dx)

    def copy(self) -> "MultiBranchState":
        return MultiBranchState(self.grid, [f.copy() for f in self.fields],
                                self.b.copy(), self.time)


@dataclass(frozen=True)
class _Channel:
    j: int
    l: int
    g: complex
    conjugate_b: bool
    W: float
    spatial: Optional[np.ndarray]  # e^{iKx}, None when K = 0

    @property
    def resonant(self) -> bool:
        return self.W == 0.0 and self.spatial is None


class MultiBranchSystem:
    """Validated configuration + precomputed channel phases."""

    def __init__(self, grid: Grid1D, branches, phonon: PhononConfig,
                 g0_matrix, rotating_wave: bool = False, sampling: str = "none",
                 absorber: AbsorberProfile = None):
        self.grid = grid
        self.branches = tuple(branches)
        self.phonon = phonon
        g = np.asarray(g0_matrix, dtype=complex)
        nb = len(self.branches)
        if g.shape != (nb, nb):
            raise ValueError("g0_matrix shape must match the branch count")
        if not np.allclose(g, g.conj().T, rtol=1e-12, atol=0.0):
            raise ValueError("g0_matrix must be Hermitian")
        self.g0 = g
        self.rotating_wave = rotating_wave
        if sampling not in ("none", "wigner"):
            raise ValueError("sampling must be 'none' or 'wigner'")
        self.sampling = sampling
        self.absorber = absorber
        self.photon_channels, self.phonon_channels = self._build_channels()

    def _phase_array(self, K: float):
        if K == 0.0:
            return None
        steps = K / self.grid.dk
        if abs(steps - round(steps)) > 1e-6:
            raise ValueError(
                f"channel wavenumber offset {K:.6e} rad/m is not commensurate "
                "with the grid; adjust the frame carriers")
        return np.exp(1j * K * self.grid.x_axis)

    def _build_channels(self):
        photon, phonon = [], []
        qd, Od = self.phonon.frame_k, self.phonon.frame_omega
        for j, bj in enumerate(self.branches):
            for l, bl in enumerate(self.branches):
                g = complex(self.g0[j, l])
                if g == 0.0:
                    continue
                dk = bl.frame_k - bj.frame_k
                dw = bl.frame_omega - bj.frame_omega
                for conj_b, sgn in ((False, +1.0), (True, -1.0)):
                    W = dw + sgn * Od
                    K = dk + sgn * qd
                    ch = _Channel(j=j, l=l, g=g, conjugate_b=conj_b, W=_snap(W),
                                  spatial=self._phase_array(_snap(K)))
                    if not self.rotating_wave or ch.resonant:
                        photon.append(ch)
                # phonon channel: conj(a_j) a_l with phase (dk - qd, dw - Od)
                ch = _Channel(j=j, l=l, g=g, conjugate_b=False, W=_snap(dw - Od),
                              spatial=self._phase_array(_snap(dk - qd)))
                if not self.rotating_wave or ch.resonant:
                    phonon.append(ch)
        return photon, phonon


def _snap(x: float, tol: float = 1e-9) -> float:
    return 0.0 if abs(x) < tol else x


class MultiBranchStepper:
    """Strang-split integrator over branch + phonon envelopes."""

    def __init__(self, system: MultiBranchSystem, dt: float):
        if dt <= 0:
            raise ValueError("dt must be positive")
        self.system = system
        self.dt = dt
        grid = system.grid
        self._half = [dispersion_phase(b.dispersion, grid, 0.5 * dt)
                      for b in system.branches]
        self._half_b = dispersion_phase(system.phonon.dispersion, grid, 0.5 * dt)
        self._decay = (system.absorber.decay_factors(dt)
                       if system.absorber is not None else None)
        self._deposits = []
        for idx, branch in enumerate(system.branches):
            if branch.drive is not None:
                frame = Frame(branch.frame_omega, branch.frame_k)
                self._deposits.append(
                    (idx, DepositPlan(grid, branch.dispersion, branch.drive,
                                      frame, dt)))

    def _rhs(self, fields, b, t):
        sysd = self.system
        dfields = [None if br.frozen else np.zeros_like(fields[0])
                   for br in sysd.branches]
        db = np.zeros_like(b)
        for ch in sysd.photon_channels:
            if sysd.branches[ch.j].frozen:
                continue
            u_part = np.conj(b) if ch.conjugate_b else b
            term = 1j * ch.g * fields[ch.l] * u_part
            if ch.spatial is not None:
                term = term * ch.spatial
            if ch.W != 0.0:
                term = term * np.exp(-1j * ch.W * t)
            dfields[ch.j] += term
        for ch in sysd.phonon_channels:
            term = 1j * ch.g * np.conj(fields[ch.j]) * fields[ch.l]
            if ch.spatial is not None:
                term = term * ch.spatial
            if ch.W != 0.0:
                term = term * np.exp(-1j * ch.W * t)
            db += term
        for j, br in enumerate(sysd.branches):
            if dfields[j] is not None and br.kappa:
                dfields[j] -= 0.5 * br.kappa * fields[j]
        if sysd.phonon.gamma:
            db -= 0.5 * sysd.phonon.gamma * b
        return dfields, db

    def step_inplace(self, state: MultiBranchState, rng=None, step_index: int = 0):
        sysd = self.system
        dt = self.dt
        for j, br in enumerate(sysd.branches):
            if not br.frozen:
                state.fields[j] = apply_phase(state.fields[j], self._half[j])
        state.b = apply_phase(state.b, self._half_b)

        f0, b0, t = state.fields, state.b, state.time

        def add(fields, b, dfields, db, w):
            return ([f if df is None else f + w * df
                     for f, df in zip(fields, dfields)], b + w * db)

        k1f, k1b = self._rhs(f0, b0, t)
        f_, b_ = add(f0, b0, k1f, k1b, 0.5 * dt)
        k2f, k2b = self._rhs(f_, b_, t + 0.5 * dt)
        f_, b_ = add(f0, b0, k2f, k2b, 0.5 * dt)
        k3f, k3b = self._rhs(f_, b_, t + 0.5 * dt)
        f_, b_ = add(f0, b0, k3f, k3b, dt)
        k4f, k4b = self._rhs(f_, b_, t + dt)
        new_fields = []
        for j in range(len(f0)):
            if k1f[j] is None:
                new_fields.append(f0[j])
            else:
                new_fields.append(f0[j] + dt / 6.0 * (k1f[j] + 2 * k2f[j]
                                                      + 2 * k3f[j] + k4f[j]))
        state.fields = new_fields
        state.b = b0 + dt / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b)

        if sysd.sampling == "wigner":
            for j, br in enumerate(sysd.branches):
                if br.kappa and not br.frozen:
                    state.fields[j] += dt * sample_noise_field(
                        sysd.grid, br.kappa, 0.0, dt, rng)
            if sysd.phonon.gamma:
                state.b += dt * sample_noise_field(
                    sysd.grid, sysd.phonon.gamma, sysd.phonon.n_th, dt, rng)
        for idx, plan in self._deposits:
            holder = FieldState(sysd.grid, state.fields[idx], state.b,
                                time=state.time)
            plan.apply(holder, rng=rng, vacuum_noise=sysd.sampling == "wigner")
            state.fields[idx] = holder.a
        if self._decay is not None:
            for j, br in enumerate(sysd.branches):
                if not br.frozen:
                    state.fields[j] *= self._decay
            state.b *= self._decay

        for j in range(len(sysd.branches)):
            if not np.isfinite(state.fields[j][0]):
                raise DivergenceError(step_index, state.time, np.inf, np.inf)
        for f in state.fields + [state.b]:
            if not np.all(np.isfinite(f)):
                raise DivergenceError(step_index, state.time, np.inf, np.inf)

        for j, br in enumerate(sysd.branches):
            if not br.frozen:
                state.fields[j] = apply_phase(state.fields[j], self._half[j])
        state.b = apply_phase(state.b, self._half_b)
        state.time += dt
        return state


def evolve_multibranch(system: MultiBranchSystem, state: MultiBranchState,
                       dt: float, n_steps: int, observers: dict = None,
                       record_every: int = 1, rng=None):
    """Run the multibranch stepper; same recording contract as evolve()."""
    from .dynamics.stepper import Trajectory

    observers = observers or {}
    work = state.copy()
    stepper = MultiBranchStepper(system, dt)
    times = [work.time]
    records = {name: [obs(work)] for name, obs in observers.items()}
    for i in range(n_steps):
        stepper.step_inplace(work, rng=rng, step_index=i)
        if (i + 1) % record_every == 0 or i == n_steps - 1:
            times.append(work.time)
            for name, obs in observers.items():
                records[name].append(obs(work))
    return Trajectory(times=np.asarray(times), records=records, final_state=work,
                      dt=dt, n_steps=n_steps)
