"""Run configuration: flat INI files, recipe lookup, and validation.

A run is described by one [run] section of key = value pairs; the Raman
calculator reads a [raman] section.  Three committed recipes (fig2a, fig2b,
fig3, plus raman_sodium) ship inside the package so the headline results are
single commands; --config accepts either a file path or one of those names.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass
from importlib import resources

from .ramancalc import RamanParams
from .spinops import CouplingScheme, scheme_from_name
from .state import DickeState, all_down_state, all_up_state, coherent_spin_state

OUTPUT_CHOICES = ("edge_populations", "ghz_fidelity", "squeezing", "moments")

_COHERENT_RE = re.compile(r"^coherent\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)$")


class ConfigError(ValueError):
    """Invalid run configuration (maps to exit code 1)."""


def parse_initial(text: str):
    """'all_up', 'all_down', or 'coherent(theta, phi)' with angles in rad."""
    text = text.strip()
    if text in ("all_up", "all_down"):
        return text
    match = _COHERENT_RE.match(text)
    if match:
        try:
            return ("coherent", float(match.group(1)), float(match.group(2)))
        except ValueError as exc:
            raise ConfigError(f"bad coherent-state angles in {text!r}") from exc
    raise ConfigError(
        f"unknown initial state {text!r}; expected all_up, all_down or "
        "coherent(theta, phi)"
    )


@dataclass
class RunConfig:
    """Everything one scan needs; validated on construction.

    t_max = 0 is accepted as a degenerate single-point grid (one CSV row at
    t = 0), useful for smoke checks; otherwise t_max must be positive.
    """

    scheme: CouplingScheme
    n_atoms: int
    initial: str = "all_up"
    t_max: float = 1.0
    n_points: int = 1000
    outputs: tuple[str, ...] = ()
    seed: int = 0
    output_path: str = "run"

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ConfigError(f"n_atoms must be >= 1, got {self.n_atoms}")
        if self.t_max < 0:
            raise ConfigError(f"t_max must be nonnegative, got {self.t_max}")
        if self.n_points < 2:
            raise ConfigError(f"n_points must be >= 2, got {self.n_points}")
        parse_initial(self.initial)  # raises on nonsense
        if not self.outputs:
            default = ["edge_populations", "squeezing"]
            if self.n_atoms % 2 == 0:
                default.insert(1, "ghz_fidelity")
            self.outputs = tuple(default)
        self.outputs = tuple(dict.fromkeys(self.outputs))  # dedupe, keep order
        for name in self.outputs:
            if name not in OUTPUT_CHOICES:
                raise ConfigError(
                    f"unknown output {name!r}; choices: {', '.join(OUTPUT_CHOICES)}"
                )
        if "ghz_fidelity" in self.outputs and self.n_atoms % 2 != 0:
            raise ConfigError(
                "ghz_fidelity requires an even atom number (the edge "
                "superposition construction assumes it)"
            )
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}")

    def initial_state(self) -> DickeState:
        parsed = parse_initial(self.initial)
        if parsed == "all_up":
            return all_up_state(self.n_atoms)
        if parsed == "all_down":
            return all_down_state(self.n_atoms)
        _, theta, phi = parsed
        return coherent_spin_state(self.n_atoms, theta, phi)


def recipe_path(name: str):
    """Path to a packaged recipe config, or None if no such recipe."""
    ref = resources.files("spinsim").joinpath("recipes", f"{name}.cfg")
    return ref if ref.is_file() else None


def _read_config(path_or_name: str, section: str) -> configparser.SectionProxy:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    recipe = recipe_path(path_or_name)
    if recipe is not None:
        parser.read_string(recipe.read_text(), source=str(path_or_name))
    else:
        read = parser.read(path_or_name)
        if not read:
            raise ConfigError(
                f"config {path_or_name!r} is neither a readable file nor a "
                "packaged recipe name"
            )
    if section not in parser:
        raise ConfigError(f"config {path_or_name!r} has no [{section}] section")
    return parser[section]


_RUN_KEYS = {"scheme", "n_atoms", "initial", "t_max", "n_points", "outputs", "seed", "output_path"}


def load_run_config(path_or_name: str | None, overrides: dict | None = None) -> RunConfig:
    """Build a RunConfig from an INI file/recipe plus CLI-style overrides.

    Overrides (already-typed values keyed like the INI fields) win over file
    values; a config file is optional if the overrides alone are complete.
    """
    values: dict = {}
    if path_or_name is not None:
        section = _read_config(path_or_name, "run")
        unknown = set(section) - _RUN_KEYS
        if unknown:
            raise ConfigError(f"unknown keys in [run]: {', '.join(sorted(unknown))}")
        try:
            if "scheme" in section:
                values["scheme"] = scheme_from_name(section["scheme"].strip())
            for key, cast in (("n_atoms", int), ("t_max", float), ("n_points", int), ("seed", int)):
                if key in section:
                    values[key] = cast(section[key])
        except ValueError as exc:
            raise ConfigError(f"bad value in [run]: {exc}") from exc
        if "initial" in section:
            values["initial"] = section["initial"].strip()
        if "outputs" in section:
            values["outputs"] = tuple(
                tok.strip() for tok in section["outputs"].split(",") if tok.strip()
            )
        if "output_path" in section:
            values["output_path"] = section["output_path"].strip()
    for key, val in (overrides or {}).items():
        if val is not None:
            values[key] = val
    if "scheme" not in values:
        raise ConfigError("no scheme given (config file or --scheme)")
    if "n_atoms" not in values:
        raise ConfigError("no atom number given (config file or --n-atoms)")
    if isinstance(values["scheme"], str):
        try:
            values["scheme"] = scheme_from_name(values["scheme"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return RunConfig(**values)


_RAMAN_KEYS = ("omega1", "omega2", "delta_m", "delta_a", "eta", "gamma_m", "omega_gg", "k", "mass")


def load_raman_params(path_or_name: str) -> RamanParams:
    section = _read_config(path_or_name, "raman")
    unknown = set(section) - set(_RAMAN_KEYS)
    if unknown:
        raise ConfigError(f"unknown keys in [raman]: {', '.join(sorted(unknown))}")
    missing = [k for k in _RAMAN_KEYS if k not in section]
    if missing:
        raise ConfigError(f"missing keys in [raman]: {', '.join(missing)}")
    try:
        params = RamanParams(**{k: float(section[k]) for k in _RAMAN_KEYS})
    except ValueError as exc:
        raise ConfigError(f"bad [raman] parameters: {exc}") from exc
    return params
