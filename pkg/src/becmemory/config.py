"""Flat key-value run configuration.

Config files are plain text, one ``key = value`` per line, ``#`` comments.
Keys are namespaced and carry their unit in the name (MHz for ordinary
frequencies, ns/us/ms for times, G/mG for fields, um for lengths); all
quantities are converted to SI/angular units when the typed RunConfig is
built.  Defaults reproduce the reference experiment.
"""

import math
from dataclasses import dataclass

from .constants import RB87_D1, AtomicConstants
from .eit import ControlField, MediumParams
from .efficiency import PulseParams
from .memory import NOISE_PRESETS, NoiseModel


class ConfigError(Exception):
    """Invalid configuration file, key or value."""


DEFAULTS = {
    # condensate and probe transition
    "medium.atom_number": 1.2e6,
    "medium.radius_x_um": 7.0,
    "medium.radius_y_um": 25.0,
    "medium.radius_z_um": 25.0,
    "medium.gamma_inv_ns": 26.0,        # excited-state lifetime 1/Gamma
    "medium.branching_ratio": 1.0 / 12.0,
    "medium.lambda_p_nm": 795.0,
    # >0: rescale the atom number so the on-axis optical depth hits this
    # value before generating figures; 0 disables the rescaling.
    "medium.dp_target": 127.0,
    # control beam
    "control.omega_c_mhz": 20.0,
    "control.delta_c_mhz": 0.0,
    # probe pulse
    "pulse.tau_p_ns": 94.0,
    "pulse.t0_ns": 230.0,
    "pulse.waist_um": 8.0,
    # magnetic-field noise; sigma_b_mg < 0 means "use the preset value"
    "noise.preset": "line-synced",
    "noise.mean_bz_g": 1.0 / 7.0,
    "noise.sigma_b_mg": -1.0,
    # synthetic detector statistics
    "detector.relative_sigma": 0.02,
    "detector.background": 0.0,
    # include the slow-light delay in the Faraday rotation angle
    "rotation.include_pulse_delay": False,
    # recorded detection-path transmissions, applied only when enabled
    "attenuation.enabled": False,
    "attenuation.fiber": 0.66,
    "attenuation.mode_resonant": 0.88,
    "attenuation.mode_detuned": 0.80,
    "attenuation.cavity": 0.8,
    "storage.t_store_us": 1.0,
    "seed": 12345,
    "output.path": "",
    # per-command sweep grids
    "fig3.window_starts_us": "0,495,980,2380",
    "fig3.window_length_us": 25.0,
    "fig3.step_us": 0.25,
    "fig3.phi0_rad": 0.0,
    "fig4.n_points": 25,
    "fig4.shots": 400,
    "fig4.t_max_sigma_factor": 2.2,
    "fig5.t_max_ms": 1.5,
    "fig5.n_points": 121,
    "fig5.eta0": 1.0,
    "fig5.sigma_eta_fit_ms": 0.48,
    "fig6.t_max_ms": 0.15,
    "fig6.n_points": 121,
    "fig6.condensate_fractions": "0.3,0.6,0.9",
    "fig6.temperature_uk": 1.0,
    "fig7.omega_min_mhz": 5.0,
    "fig7.omega_max_mhz": 60.0,
    "fig7.n_points": 221,
    "fig8.span_resonant_mhz": 15.0,
    "fig8.span_detuned_mhz": 2.0,
    "fig8.delta_c_detuned_mhz": 70.0,
    "fig8.n_points": 601,
    "tomography.eta0": 0.5,
    "tomography.repeats": 1,
    "tomography.shots": 0,              # 0: ensemble-exact output states
    "optimize.omega_min_mhz": 1.0,
    "optimize.omega_max_mhz": 100.0,
    "optimize.grid": 200,
    "optimize.averaged": True,
}


def _coerce(key: str, text: str):
    """Parse a string override to the type of the key's default."""
    default = DEFAULTS[key]
    text = text.strip()
    if isinstance(default, bool):
        low = text.lower()
        if low in ("true", "yes", "on", "1"):
            return True
        if low in ("false", "no", "off", "0"):
            return False
        raise ConfigError(f"expected a boolean for {key!r}, got {text!r}")
    if isinstance(default, int):
        try:
            return int(text)
        except ValueError as exc:
            raise ConfigError(f"expected an integer for {key!r}, "
                              f"got {text!r}") from exc
    if isinstance(default, float):
        try:
            return float(text)
        except ValueError as exc:
            raise ConfigError(f"expected a number for {key!r}, "
                              f"got {text!r}") from exc
    return text


def parse_config_text(text: str) -> dict[str, str]:
    """Read ``key = value`` lines; full-line comments start with '#'."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {line!r}")
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def build_mapping(file_entries: dict[str, str] | None = None,
                  overrides: list[str] | None = None) -> dict:
    """Merge defaults, a parsed config file, and --set overrides."""
    mapping = dict(DEFAULTS)
    for source in (file_entries or {},):
        for key, value in source.items():
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            mapping[key] = _coerce(key, value)
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r}")
        mapping[key] = _coerce(key, value)
    return mapping


MHZ = 2.0 * math.pi * 1e6      # ordinary MHz -> angular rad/s


@dataclass(frozen=True)
class RunConfig:
    """Typed view of a full configuration mapping."""

    medium: MediumParams
    control: ControlField
    pulse: PulseParams
    noise: NoiseModel
    constants: AtomicConstants
    detector_sigma: float
    detector_background: float
    seed: int
    output_path: str | None
    raw: dict

    def get(self, key: str):
        return self.raw[key]

    @property
    def dp_target(self) -> float:
        return float(self.raw["medium.dp_target"])

    def model_medium(self) -> MediumParams:
        """Medium used for figure generation, optionally depth-rescaled."""
        if self.dp_target > 0:
            return self.medium.rescaled_to_depth(self.dp_target)
        return self.medium

    def attenuation_factor(self) -> float:
        """Overall detection-path transmission, 1.0 unless enabled."""
        if not self.raw["attenuation.enabled"]:
            return 1.0
        mode = self.raw["attenuation.mode_resonant"] \
            if self.control.delta_c == 0 \
            else self.raw["attenuation.mode_detuned"]
        return float(self.raw["attenuation.fiber"] * mode
                     * self.raw["attenuation.cavity"])

    @classmethod
    def from_mapping(cls, mapping: dict) -> "RunConfig":
        raw = dict(DEFAULTS)
        raw.update(mapping)
        try:
            medium = MediumParams(
                atom_number=raw["medium.atom_number"],
                r_x=raw["medium.radius_x_um"] * 1e-6,
                r_y=raw["medium.radius_y_um"] * 1e-6,
                r_z=raw["medium.radius_z_um"] * 1e-6,
                gamma_total=1.0 / (raw["medium.gamma_inv_ns"] * 1e-9),
                branching_ratio=raw["medium.branching_ratio"],
                lambda_p=raw["medium.lambda_p_nm"] * 1e-9,
            )
            control = ControlField(raw["control.omega_c_mhz"] * MHZ,
                                   raw["control.delta_c_mhz"] * MHZ)
            pulse = PulseParams(tau_p=raw["pulse.tau_p_ns"] * 1e-9,
                                t0=raw["pulse.t0_ns"] * 1e-9,
                                waist=raw["pulse.waist_um"] * 1e-6)
            preset = raw["noise.preset"]
            sigma_mg = raw["noise.sigma_b_mg"]
            if preset in NOISE_PRESETS:
                if sigma_mg >= 0:
                    raise ConfigError(
                        "noise.sigma_b_mg is set by the preset; use "
                        "noise.preset = custom to choose it explicitly")
                noise = NoiseModel.from_preset(preset,
                                               raw["noise.mean_bz_g"])
            elif preset == "custom":
                if sigma_mg < 0:
                    raise ConfigError(
                        "noise.preset = custom requires noise.sigma_b_mg")
                noise = NoiseModel(raw["noise.mean_bz_g"], sigma_mg * 1e-3,
                                   "custom")
            else:
                raise ConfigError(
                    f"unknown noise.preset {preset!r}; expected one of "
                    f"{sorted(NOISE_PRESETS) + ['custom']}")
            if raw["detector.relative_sigma"] < 0:
                raise ConfigError("detector.relative_sigma must be >= 0")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return cls(medium=medium, control=control, pulse=pulse, noise=noise,
                   constants=RB87_D1,
                   detector_sigma=float(raw["detector.relative_sigma"]),
                   detector_background=float(raw["detector.background"]),
                   seed=int(raw["seed"]),
                   output_path=raw["output.path"] or None,
                   raw=raw)


def load_config(path: str | None = None, overrides: list[str] | None = None,
                preset: str | None = None,
                seed: int | None = None) -> RunConfig:
    """Build a RunConfig from an optional file plus command-line overrides."""
    entries = None
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                entries = parse_config_text(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path!r}: {exc}") \
                from exc
    mapping = build_mapping(entries, overrides)
    if preset is not None:
        if preset not in NOISE_PRESETS and preset != "custom":
            raise ConfigError(f"unknown preset {preset!r}")
        mapping["noise.preset"] = preset
    if seed is not None:
        mapping["seed"] = int(seed)
    return RunConfig.from_mapping(mapping)


def parse_float_list(text: str) -> list[float]:
    """Comma-separated floats used by list-valued config keys."""
    try:
        return [float(part) for part in str(text).split(",") if
                part.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") \
            from exc
