"""Scenario presets: defaults, execution, and artifact emission.

Every run writes into the output directory:

    effective_config.cfg   fully resolved configuration (re-runnable)
    report.json            scenario-specific machine-readable summary
    *.csv                  tabulated results, one header row with units
    *.snap                 binary field snapshots where applicable

Presets are sized to finish in seconds; the config file scales them up.
"""

import time
from pathlib import Path

import numpy as np

from ..core.couplings import CouplingSet
from ..core.dispersion import DispersionSpec
from ..core.fields import FieldState
from ..core.grid import Grid1D
from ..dynamics.bath import BathSpec
from ..dynamics.boundary import make_absorber
from ..dynamics.drive import EndfireDrive
from ..dynamics.rng import trajectory_generator
from ..dynamics.stepper import (DispersionPair, evolve, make_energy_observer,
                                observe_phonon_number, observe_photon_number)
from ..experiments import (array_convergence_study, run_forward_comb,
                           run_swap_profile, run_two_branch_gain)
from ..strongcoupling import sweep_coupling
from .config import ScenarioConfig, serialize_config
from .output import write_csv, write_json_report, write_snapshot

DEFAULTS = {
    "regime_sweep": {
        "sweep": {"v2": 7e7, "vb": 1e3, "gamma2": 10.0, "gamma_b": 2e5,
                  "g_min": 1e2, "g_max": 1e8, "points": 2000,
                  "strong_ratio": 10.0},
    },
    "backward_gain": {
        "gain": {"g0_12": 1e4, "v1": 7e7, "v2": 7e7, "vb": 1e3,
                 "Gamma": 2 * np.pi * 3e8, "kappa2": 0.0,
                 "omega1": 2 * np.pi * 193.5e12, "pump_power": 1.0,
                 "seed_ratio": 1e-10, "n_points": 256, "efolds": 4.0,
                 "direction": -1},
    },
    "intermodal_swap": {
        "swap": {"g12": 0.0707, "v2": 2.0, "vb": 1.0, "gamma2": 0.02,
                 "gamma_b": 0.03, "n_points": 512, "seed": 0.5,
                 "decay_lengths": 5.0},
    },
    "comb": {
        "comb": {"n_points": 128, "dx": 1.0, "velocity": 0.05, "omega0": 1.0,
                 "g0": 0.02, "pump": 1.0, "seed_b": 2.0, "q_mode": 6,
                 "orders": 2, "periods": 24.0},
    },
    "array_convergence": {
        "array": {"kind": "site", "sizes": (32.0, 64.0, 128.0), "length": 32.0,
                  "curvature": 0.5, "g_cont": 0.05, "t_total": 4.0,
                  "n_ref": 256},
    },
    "custom": {
        "grid": {"n_points": 128, "dx": 1.0},
        "photon": {"kind": "linear", "velocity": 2.0},
        "phonon": {"kind": "flat", "omega0": 1.0},
        "couplings": {"sector": "even", "g_ppp": 0.05},
        "bath": {"kappa": 0.2, "gamma_mech": 0.5, "n_th": 0.0,
                 "sampling": "none"},
        "drive": {"mode": "endfire", "alpha_in": 1.0 + 0.0j, "inlet_cell": 4},
        "integration": {"dt": 0.02, "t_total": 100.0, "record_every": 50,
                        "absorber": "on", "absorber_opacity": 10.0},
        "ensemble": {"trajectories": 1, "base_seed": 1},
    },
}


def resolve_config(config: ScenarioConfig) -> ScenarioConfig:
    """Layer the user's config over the scenario's preset defaults."""
    base = {sec: dict(kv) for sec, kv in DEFAULTS.get(config.scenario, {}).items()}
    base.setdefault("scenario", {})["name"] = config.scenario
    merged = ScenarioConfig(config.scenario, base).merged(config.sections)
    return merged


def _dispersion_from(section: dict, default_kind="flat") -> DispersionSpec:
    kind = section.get("kind", default_kind)
    if kind == "linear":
        return DispersionSpec.linear(section.get("velocity", 0.0),
                                     section.get("omega0", 0.0))
    if kind == "flat":
        return DispersionSpec.flat(section.get("omega0", 0.0))
    if kind == "polynomial":
        return DispersionSpec.polynomial(section.get("coeffs", (0.0,)))
    raise ValueError(f"unknown dispersion kind {kind!r} (two_sided bands are "
                     "built from the grid at run time)")


def run_scenario(config: ScenarioConfig, output_dir) -> dict:
    """Execute one scenario; returns the report dict written to report.json."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    config = resolve_config(config)
    (out / "effective_config.cfg").write_text(serialize_config(config))
    runner = _RUNNERS[config.scenario]
    t0 = time.time()
    report = runner(config, out)
    report["scenario"] = config.scenario
    report["wall_time_s"] = time.time() - t0
    write_json_report(out / "report.json", report)
    return report


def _run_regime_sweep(config: ScenarioConfig, out: Path) -> dict:
    p = config.section("sweep")
    g = np.logspace(np.log10(p["g_min"]), np.log10(p["g_max"]), int(p["points"]))
    lam_p, lam_m, D, regimes = sweep_coupling(g, p["v2"], p["vb"], p["gamma2"],
                                              p["gamma_b"], p["strong_ratio"])
    write_csv(out / "regime_sweep.csv", [
        ("g12", "Hz", g),
        ("re_lambda_plus", "1/m", lam_p.real),
        ("im_lambda_plus", "1/m", lam_p.imag),
        ("re_lambda_minus", "1/m", lam_m.real),
        ("im_lambda_minus", "1/m", lam_m.imag),
        ("D", "1/m^2", D),
        ("regime", "label", list(regimes)),
    ])
    threshold_osc = np.sqrt(p["v2"] * p["vb"]) * abs(p["gamma2"] - p["gamma_b"]) / 4
    threshold_strong = np.sqrt(p["v2"] * p["vb"]) * (p["gamma2"] + p["gamma_b"]) / 4
    first_osc = int(np.argmax(regimes != "overdamped"))
    return {
        "threshold_osc_Hz": threshold_osc,
        "threshold_strong_Hz": threshold_strong,
        "first_oscillatory_g_Hz": float(g[first_osc]),
        "n_points": int(p["points"]),
    }


def _run_backward_gain(config: ScenarioConfig, out: Path) -> dict:
    p = config.section("gain")
    result = run_two_branch_gain(
        g0_12=p["g0_12"], v1=p["v1"], v2=p["v2"], vb=p["vb"], Gamma=p["Gamma"],
        kappa2=p["kappa2"], omega1=p["omega1"], pump_power_W=p["pump_power"],
        seed_power_ratio=p["seed_ratio"], n_points=int(p["n_points"]),
        target_efolds=p["efolds"], direction=int(p.get("direction", -1)))
    write_csv(out / "gain_profile.csv", [
        ("x", "m", result.x),
        ("P1", "W", result.P1),
        ("P2", "W", result.P2),
        ("Pb", "W", result.Pb),
    ])
    mismatch = abs(result.measured_power_slope - result.predicted_power_slope) \
        / abs(result.predicted_power_slope)
    return {
        "measured_power_slope_per_m": result.measured_power_slope,
        "predicted_power_slope_per_m": result.predicted_power_slope,
        "relative_mismatch": mismatch,
        "G_B_per_W_m": result.G_B,
        "pump_power_W": result.pump_power_W,
        "pump_depletion": result.pump_depletion,
        "adiabatic_ratio": result.adiabatic_ratio,
        "direction": result.direction,
    }


def _run_intermodal_swap(config: ScenarioConfig, out: Path) -> dict:
    p = config.section("swap")
    result = run_swap_profile(g12=p["g12"], v2=p["v2"], vb=p["vb"],
                              gamma2=p["gamma2"], gamma_b=p["gamma_b"],
                              n_points=int(p["n_points"]),
                              seed_amplitude=p["seed"],
                              span_decay_lengths=p["decay_lengths"])
    write_csv(out / "swap_profile.csv", [
        ("x", "m", result.x),
        ("a2", "m^(-1/2)", result.a2),
        ("b", "m^(-1/2)", result.b),
        ("a2_predicted", "m^(-1/2)", result.a2_predicted),
        ("b_predicted", "m^(-1/2)", result.b_predicted),
    ])
    return {
        "max_rel_error": result.max_rel_error,
        "lambda_plus_per_m": result.lambda_plus,
        "lambda_minus_per_m": result.lambda_minus,
        "regime": result.regime,
    }


def _run_comb(config: ScenarioConfig, out: Path) -> dict:
    p = config.section("comb")
    result = run_forward_comb(
        n_points=int(p["n_points"]), dx=p["dx"], v=p["velocity"],
        Omega0=p["omega0"], g0=p["g0"], pump=p["pump"], seed_b=p["seed_b"],
        q_mode=int(p["q_mode"]), n_orders=int(p["orders"]),
        periods=p["periods"])
    orders = result.orders
    write_csv(out / "comb_sidebands.csv", [
        ("order", "1", orders),
        ("stokes_power", "1", [result.stokes_power[n] for n in orders]),
        ("anti_stokes_power", "1", [result.anti_stokes_power[n] for n in orders]),
        ("asymmetry", "1", [result.asymmetry[n] for n in orders]),
        ("stokes_peak_freq", "rad/s", [result.peak_frequency[-n] for n in orders]),
        ("anti_stokes_peak_freq", "rad/s",
         [result.peak_frequency[n] for n in orders]),
    ])
    return {
        "asymmetry": {str(n): result.asymmetry[n] for n in orders},
        "peak_frequencies_rad_s": {str(n): result.peak_frequency[n]
                                   for n in result.peak_frequency},
        "Omega0_rad_s": result.Omega0,
    }


def _run_array_convergence(config: ScenarioConfig, out: Path) -> dict:
    p = config.section("array")
    sizes = tuple(int(s) for s in p["sizes"])
    result = array_convergence_study(kind=p["kind"], sizes=sizes,
                                     length=p["length"], D2=p["curvature"],
                                     g_cont=p["g_cont"], T=p["t_total"],
                                     n_ref=int(p["n_ref"]))
    columns = [
        ("dx", "m", result.dxs),
        ("l2_error", "1", result.errors),
    ]
    if result.errors_pointwise_model is not None:
        columns.append(("l2_error_pointwise_model", "1",
                        result.errors_pointwise_model))
    write_csv(out / "array_convergence.csv", columns)
    return {"fitted_order": result.slope, "kind": p["kind"],
            "sizes": list(sizes)}


def _run_custom(config: ScenarioConfig, out: Path) -> dict:
    gridc = config.section("grid")
    grid = Grid1D(int(gridc["n_points"]), gridc["dx"])
    disp = DispersionPair(_dispersion_from(config.section("photon"), "linear"),
                          _dispersion_from(config.section("phonon"), "flat"))
    cpl = config.section("couplings")
    couplings = CouplingSet(
        g_ppp=cpl.get("g_ppp", 0.0), g_mmp=cpl.get("g_mmp", 0.0),
        g_mpm=cpl.get("g_mpm", 0.0), g_ppm=cpl.get("g_ppm", 0.0),
        g_mpp=cpl.get("g_mpp", 0.0), g_mmm=cpl.get("g_mmm", 0.0),
        sector=cpl.get("sector", "even"))
    bathc = config.section("bath")
    bath = BathSpec(kappa=bathc.get("kappa", 0.0),
                    gamma_mech=bathc.get("gamma_mech", 0.0),
                    n_th=bathc.get("n_th", None),
                    temperature=bathc.get("temperature", None),
                    omega_ref=bathc.get("omega_ref", 0.0),
                    sampling=bathc.get("sampling", "none"))
    drivec = config.section("drive")
    drive = None
    if drivec.get("mode", "none") == "endfire":
        drive = EndfireDrive(alpha_in=drivec.get("alpha_in", 0.0),
                             omega_L=drivec.get("omega_L"),
                             k_L=drivec.get("k_L"),
                             inlet_cell=int(drivec.get("inlet_cell", 4)))
    integ = config.section("integration")
    dt = integ["dt"]
    n_steps = int(round(integ["t_total"] / dt))
    absorber = None
    if integ.get("absorber", "off") == "on":
        speed = integ.get("absorber_speed",
                          abs(disp.photon.group_velocity_at(0.0)) or 1.0)
        absorber = make_absorber(grid, speed=speed,
                                 opacity=integ.get("absorber_opacity", 10.0))
    ens = config.section("ensemble")
    n_traj = int(ens.get("trajectories", 1))
    base_seed = int(ens.get("base_seed", 1))
    observers = {
        "photon_number": observe_photon_number,
        "phonon_number": observe_phonon_number,
        "energy": make_energy_observer(couplings, disp),
    }
    mean_records = None
    final = None
    for idx in range(n_traj):
        rng = trajectory_generator(base_seed, idx)
        traj = evolve(FieldState.vacuum(grid), couplings, disp, bath=bath,
                      drive=drive, dt=dt, n_steps=n_steps, observers=observers,
                      record_every=int(integ.get("record_every", 1)), rng=rng)
        if mean_records is None:
            times = traj.times
            mean_records = {k: np.asarray(v, dtype=float)
                            for k, v in traj.records.items()}
        else:
            for k, v in traj.records.items():
                mean_records[k] += np.asarray(v, dtype=float)
        final = traj.final_state
    for k in mean_records:
        mean_records[k] /= n_traj
    write_csv(out / "observables.csv", [
        ("t", "s", times),
        ("photon_number", "1", mean_records["photon_number"]),
        ("phonon_number", "1", mean_records["phonon_number"]),
        ("energy", "hbar*rad/s", mean_records["energy"]),
    ])
    write_snapshot(out / "final_state.snap", final.a, final.b, grid.dx)
    return {
        "trajectories": n_traj,
        "n_steps": n_steps,
        "final_photon_number": final.photon_number(),
        "final_phonon_number": final.phonon_number(),
    }


_RUNNERS = {
    "regime_sweep": _run_regime_sweep,
    "backward_gain": _run_backward_gain,
    "intermodal_swap": _run_intermodal_swap,
    "comb": _run_comb,
    "array_convergence": _run_array_convergence,
    "custom": _run_custom,
}
