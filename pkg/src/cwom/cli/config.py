"""Scenario configuration: sectioned key-value files with explicit units.

Every physical quantity carries a unit suffix checked against the schema
(`Gamma = 6.28e6 /s`); dimensionless keys use no suffix. Unknown sections
or keys are rejected, and validation reports every offending entry at
once rather than stopping at the first. Unit bugs dominate this domain,
so the parser refuses to guess.
"""

from dataclasses import dataclass, field
from pathlib import Path

SCENARIOS = ("custom", "comb", "backward_gain", "intermodal_swap",
             "array_convergence", "regime_sweep")

# value kinds: float / int / complex / str / list (comma-separated floats)
# unit "1" marks dimensionless numerics; None marks enums/strings.
SCHEMA = {
    "scenario": {"name": ("str", None)},
    "grid": {"n_points": ("int", "1"), "dx": ("float", "m")},
    "photon": {
        "kind": ("str", None), "velocity": ("float", "m/s"),
        "omega0": ("float", "rad/s"), "coeffs": ("list", "SI"),
    },
    "phonon": {
        "kind": ("str", None), "velocity": ("float", "m/s"),
        "omega0": ("float", "rad/s"), "coeffs": ("list", "SI"),
    },
    "couplings": {
        "sector": ("str", None),
        "g_ppp": ("float", "Hz*m^(1/2)"), "g_mmp": ("float", "Hz*m^(5/2)"),
        "g_mpm": ("complex", "Hz*m^(5/2)"), "g_ppm": ("float", "Hz*m^(3/2)"),
        "g_mpp": ("complex", "Hz*m^(3/2)"), "g_mmm": ("float", "Hz*m^(7/2)"),
    },
    "bath": {
        "kappa": ("float", "/s"), "gamma_mech": ("float", "/s"),
        "n_th": ("float", "1"), "temperature": ("float", "K"),
        "omega_ref": ("float", "rad/s"), "sampling": ("str", None),
    },
    "drive": {
        "mode": ("str", None), "alpha_in": ("complex", "s^(-1/2)"),
        "omega_L": ("float", "rad/s"), "k_L": ("float", "rad/m"),
        "inlet_cell": ("int", "1"), "kappa_ex": ("float", "/s"),
    },
    "integration": {
        "dt": ("float", "s"), "t_total": ("float", "s"),
        "record_every": ("int", "1"), "absorber": ("str", None),
        "absorber_opacity": ("float", "1"), "absorber_speed": ("float", "m/s"),
    },
    "ensemble": {"trajectories": ("int", "1"), "base_seed": ("int", "1")},
    "gain": {
        "g0_12": ("float", "Hz*m^(1/2)"), "v1": ("float", "m/s"),
        "v2": ("float", "m/s"), "vb": ("float", "m/s"),
        "Gamma": ("float", "/s"), "kappa2": ("float", "/s"),
        "omega1": ("float", "rad/s"), "pump_power": ("float", "W"),
        "seed_ratio": ("float", "1"), "n_points": ("int", "1"),
        "efolds": ("float", "1"), "direction": ("int", "1"),
    },
    "sweep": {
        "v2": ("float", "m/s"), "vb": ("float", "m/s"),
        "gamma2": ("float", "/m"), "gamma_b": ("float", "/m"),
        "g_min": ("float", "Hz"), "g_max": ("float", "Hz"),
        "points": ("int", "1"), "strong_ratio": ("float", "1"),
    },
    "swap": {
        "g12": ("float", "Hz"), "v2": ("float", "m/s"), "vb": ("float", "m/s"),
        "gamma2": ("float", "/m"), "gamma_b": ("float", "/m"),
        "n_points": ("int", "1"), "seed": ("float", "s^(-1/2)"),
        "decay_lengths": ("float", "1"),
    },
    "comb": {
        "n_points": ("int", "1"), "dx": ("float", "m"),
        "velocity": ("float", "m/s"), "omega0": ("float", "rad/s"),
        "g0": ("float", "Hz*m^(1/2)"), "pump": ("float", "m^(-1/2)"),
        "seed_b": ("float", "m^(-1/2)"), "q_mode": ("int", "1"),
        "orders": ("int", "1"), "periods": ("float", "1"),
    },
    "array": {
        "kind": ("str", None), "sizes": ("list", "1"),
        "length": ("float", "m"), "curvature": ("float", "m^2/s"),
        "g_cont": ("float", "Hz*m^(1/2)"), "t_total": ("float", "s"),
        "n_ref": ("int", "1"),
    },
}


class ConfigError(ValueError):
    """Validation failure; ``problems`` lists every offending entry."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.problems))


@dataclass
class ScenarioConfig:
    """Parsed, unit-checked configuration: scenario name + typed sections."""

    scenario: str
    sections: dict = field(default_factory=dict)

    def get(self, section: str, key: str, default=None):
        return self.sections.get(section, {}).get(key, default)

    def section(self, name: str) -> dict:
        return dict(self.sections.get(name, {}))

    def merged(self, overrides: dict) -> "ScenarioConfig":
        """New config with override sections layered on top."""
        out = {sec: dict(kv) for sec, kv in self.sections.items()}
        for sec, kv in overrides.items():
            out.setdefault(sec, {}).update(kv)
        return ScenarioConfig(scenario=out.get("scenario", {}).get(
            "name", self.scenario), sections=out)


def _parse_value(section, key, raw, problems):
    kind, unit = SCHEMA[section][key]
    raw = raw.strip()
    if kind == "str":
        return raw
    parts = raw.split()
    if unit == "1" or unit is None:
        token, given_unit = parts[0], (parts[1] if len(parts) > 1 else None)
        if given_unit is not None and given_unit != "1":
            problems.append(f"[{section}] {key}: dimensionless, got unit "
                            f"{given_unit!r}")
            return None
    else:
        if len(parts) != 2:
            problems.append(f"[{section}] {key}: expected '<value> {unit}'")
            return None
        token, given_unit = parts
        if given_unit != unit:
            problems.append(f"[{section}] {key}: unit {given_unit!r} does not "
                            f"match expected {unit!r}")
            return None
    try:
        if kind == "int":
            return int(token)
        if kind == "float":
            return float(token)
        if kind == "complex":
            return complex(token)
        if kind == "list":
            return tuple(float(tok) for tok in token.split(","))
    except ValueError:
        problems.append(f"[{section}] {key}: cannot parse {token!r} as {kind}")
        return None
    problems.append(f"[{section}] {key}: unknown kind {kind!r}")
    return None


def parse_config_text(text: str) -> ScenarioConfig:
    problems = []
    sections = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip()
            if current not in SCHEMA:
                problems.append(f"line {lineno}: unknown section [{current}]")
                current = None
            else:
                sections.setdefault(current, {})
            continue
        if "=" not in stripped:
            problems.append(f"line {lineno}: expected 'key = value'")
            continue
        if current is None:
            problems.append(f"line {lineno}: key outside any known section")
            continue
        key, raw = (s.strip() for s in stripped.split("=", 1))
        if key not in SCHEMA[current]:
            problems.append(f"[{current}] unknown key {key!r}")
            continue
        value = _parse_value(current, key, raw, problems)
        if value is not None:
            sections[current][key] = value
    name = sections.get("scenario", {}).get("name")
    if name is None:
        problems.append("[scenario] name is required")
    elif name not in SCENARIOS:
        problems.append(f"[scenario] unknown scenario {name!r}; choose from "
                        f"{', '.join(SCENARIOS)}")
    if problems:
        raise ConfigError(problems)
    return ScenarioConfig(scenario=name, sections=sections)


def load_config(path) -> ScenarioConfig:
    return parse_config_text(Path(path).read_text())


def serialize_config(config: ScenarioConfig) -> str:
    """Render a config back to text; re-parsing reproduces it exactly."""
    lines = []
    for section in SCHEMA:
        if section not in config.sections:
            continue
        lines.append(f"[{section}]")
        for key, value in config.sections[section].items():
            kind, unit = SCHEMA[section][key]
            if kind == "str":
                lines.append(f"{key} = {value}")
                continue
            if kind == "list":
                token = ",".join("%.17g" % v for v in value)
            elif kind == "complex":
                token = "%.17g%+.17gj" % (value.real, value.imag)
            elif kind == "int":
                token = str(int(value))
            else:
                token = "%.17g" % value
            if unit in (None, "1"):
                lines.append(f"{key} = {token}")
            else:
                lines.append(f"{key} = {token} {unit}")
        lines.append("")
    return "\n".join(lines)
