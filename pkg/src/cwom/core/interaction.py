"""Interaction-induced time derivatives for the coupled photon-phonon fields.

Both field equations descend from one Hamiltonian,

    H_int = -hbar * integral dx [ g_ppp a+ a u + g_mmp (dx a+)(dx a) u
            + (g_mpm (dx a+) a (dx u) + h.c.) + g_ppm a+ a (dx u)
            + (g_mpp (dx a+) a u + h.c.) + g_mmm (dx a+)(dx a)(dx u) ],

by functional differentiation: da/dt = -i dH/da+, db/dt = -i dH/db+ (with
hbar divided out). The even-sector photon equation reads

    da/dt = i g_ppp u a - i g_mmp dx(u dx a)
            - i g_mpm dx(a dx u) + i g_mpm* (dx a)(dx u),

and the matching phonon equation

    db/dt = i g_ppp a+ a + i g_mmp (dx a+)(dx a)
            - i g_mpm dx((dx a+) a) - i g_mpm* dx(a+ dx a).

The odd-sector pieces follow from the same variational rule; they are not
usually written out, so the derivation is spelled out term by term in the
channel functions below. Every term carries exactly one a+ and one a, so
the interaction conserves total photon number identically.

The channels are deliberately *bilinear* in (photon field, displacement)
and (photon-dagger field, photon field): the linearized fluctuation
equations reuse them with background and fluctuation fields in either slot.
"""

import numpy as np

from .couplings import CouplingSet
from .fields import FieldState
from .grid import Grid1D
from .spectral import spectral_derivative


def photon_channel(f: np.ndarray, u: np.ndarray, couplings: CouplingSet,
                   grid: Grid1D, conjugate: bool = False) -> np.ndarray:
    """Photon-equation interaction terms, bilinear in (f, u).

    With ``conjugate=True`` returns the formally conjugated operator
    (all coupling constants conjugated, i -> -i), which propagates the
    tracked conjugate partner in the doubled fluctuation system.
    """
    c = couplings
    s = -1.0 if conjugate else 1.0

    def g(val):
        return np.conj(val) if conjugate else val

    def D(z):
        return spectral_derivative(z, grid, 1)

    out = np.zeros(grid.n_points, dtype=np.complex128)
    df = du = None
    if c.g_ppp != 0:
        out += (1j * s) * g(c.g_ppp) * u * f
    if c.g_mmp != 0:
        df = D(f)
        out += (-1j * s) * g(c.g_mmp) * D(u * df)
    if c.g_mpm != 0:
        df = D(f) if df is None else df
        du = D(u)
        out += (-1j * s) * g(c.g_mpm) * D(f * du)
        out += (1j * s) * g(np.conj(c.g_mpm)) * df * du
    if c.g_ppm != 0:
        du = D(u) if du is None else du
        out += (1j * s) * g(c.g_ppm) * f * du
    if c.g_mpp != 0:
        df = D(f) if df is None else df
        out += (-1j * s) * g(c.g_mpp) * D(f * u)
        out += (1j * s) * g(np.conj(c.g_mpp)) * df * u
    if c.g_mmm != 0:
        df = D(f) if df is None else df
        du = D(u) if du is None else du
        out += (-1j * s) * g(c.g_mmm) * D(df * du)
    return out


def phonon_channel(fdag: np.ndarray, f: np.ndarray, couplings: CouplingSet,
                   grid: Grid1D, conjugate: bool = False) -> np.ndarray:
    """Phonon-equation interaction terms, bilinear in (fdag, f).

    ``fdag`` stands in for the daggered photon field; the nonlinear
    equations pass conj(a), the linearized ones pass background or
    fluctuation fields independently.
    """
    c = couplings
    s = -1.0 if conjugate else 1.0

    def g(val):
        return np.conj(val) if conjugate else val

    def D(z):
        return spectral_derivative(z, grid, 1)

    out = np.zeros(grid.n_points, dtype=np.complex128)
    dfd = df = None
    if c.g_ppp != 0:
        out += (1j * s) * g(c.g_ppp) * fdag * f
    if c.g_mmp != 0:
        dfd, df = D(fdag), D(f)
        out += (1j * s) * g(c.g_mmp) * dfd * df
    if c.g_mpm != 0:
        dfd = D(fdag) if dfd is None else dfd
        df = D(f) if df is None else df
        out += (-1j * s) * g(c.g_mpm) * D(dfd * f)
        out += (-1j * s) * g(np.conj(c.g_mpm)) * D(fdag * df)
    if c.g_ppm != 0:
        out += (-1j * s) * g(c.g_ppm) * D(fdag * f)
    if c.g_mpp != 0:
        dfd = D(fdag) if dfd is None else dfd
        df = D(f) if df is None else df
        out += (1j * s) * g(c.g_mpp) * dfd * f
        out += (1j * s) * g(np.conj(c.g_mpp)) * fdag * df
    if c.g_mmm != 0:
        dfd = D(fdag) if dfd is None else dfd
        df = D(f) if df is None else df
        out += (-1j * s) * g(c.g_mmm) * D(dfd * df)
    return out


def interaction_rhs(state: FieldState, couplings: CouplingSet):
    """Interaction-only (da/dt, db/dt) for the current field state.

    The displacement entering the photon equation is u = b + b*. Spatial
    derivatives are spectral, so the k-space scattering vertex is realized
    exactly mode by mode.
    """
    u = state.displacement()
    da = photon_channel(state.a, u, couplings, state.grid)
    db = phonon_channel(np.conj(state.a), state.a, couplings, state.grid)
    return da, db


def interaction_energy_density(state: FieldState, couplings: CouplingSet) -> np.ndarray:
    """Interaction Hamiltonian density divided by -hbar (rad/s per meter)."""
    c = couplings
    grid = state.grid
    a = state.a
    u = state.displacement()
    da = spectral_derivative(a, grid, 1)
    du = spectral_derivative(u, grid, 1)
    dens = np.zeros(grid.n_points, dtype=np.complex128)
    dens += c.g_ppp * np.abs(a) ** 2 * u
    dens += c.g_mmp * np.abs(da) ** 2 * u
    dens += 2.0 * np.real(c.g_mpm * np.conj(da) * a * du)
    dens += c.g_ppm * np.abs(a) ** 2 * du
    dens += 2.0 * np.real(c.g_mpp * np.conj(da) * a) * u
    dens += c.g_mmm * np.abs(da) ** 2 * du
    return np.real(dens)


def total_energy(state: FieldState, couplings: CouplingSet,
                 dispersion_a, dispersion_b) -> float:
    """Classical Hamiltonian of the closed system, in units of hbar (rad/s).

    Free parts evaluate omega(-i dx) and Omega(-i dx) spectrally; the
    interaction part subtracts per the -hbar convention.
    """
    grid = state.grid
    wa = dispersion_a.values_on(grid)
    wb = dispersion_b.values_on(grid)
    fa = np.fft.fft(state.a)
    fb = np.fft.fft(state.b)
    # Parseval: sum_x conj(f) (W f) dx = sum_k W |F_k|^2 dx / n
    free = (np.sum(wa * np.abs(fa) ** 2) + np.sum(wb * np.abs(fb) ** 2)) \
        * grid.dx / grid.n_points
    inter = np.sum(interaction_energy_density(state, couplings)) * grid.dx
    return float(np.real(free) - float(inter))
