import copy
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from jsonschema import Draft7Validator

from utils.helpers import load_json_file, load_yaml_file

DEFAULTS_PATH = Path(__file__).with_name("default_config.json")
MODELS = ("ring", "box")


class ConfigError(Exception):
    """Base class for configuration problems"""


class UnknownKey(ConfigError):
    def __init__(self, keys: List[str]):
        super().__init__(f"unknown configuration key(s): {', '.join(sorted(keys))}")
        self.keys = sorted(keys)


class OutOfRange(ConfigError):
    def __init__(self, key: str, value: Any, allowed: str):
        super().__init__(f"{key} = {value!r} is out of range (allowed: {allowed})")
        self.key = key
        self.value = value
        self.allowed = allowed


class MissingRequired(ConfigError):
    def __init__(self, key: str):
        super().__init__(f"missing required configuration key: {key}")
        self.key = key


def _number(default: float, description: str, **bounds) -> Dict[str, Any]:
    return {"type": "number", "default": default, "description": description, **bounds}


# Dotted key descriptors: type, default, range and description per key
CONFIG_SCHEMA: Dict[str, Dict[str, Any]] = {
    "model": {"type": "string", "enum": list(MODELS), "description": "Which model to simulate"},
    "ring.M": _number(1.0, "Ring mass", exclusiveMinimum=0),
    "ring.l": _number(1.0, "Coordinate circumference", exclusiveMinimum=0),
    "ring.m_field": _number(0.0, "Field mass", minimum=0),
    "ring.L0": _number(1.0, "Initial circumference", exclusiveMinimum=0),
    "ring.V0": _number(0.0, "Initial rate of change of the circumference",
                       exclusiveMinimum=-1, exclusiveMaximum=1),
    "ring.t_end": _number(2.0, "End of the simulated window", exclusiveMinimum=0),
    "ring.backreaction": {"type": "boolean", "default": True,
                          "description": "Include the trace-anomaly backreaction"},
    "ring.compare": {"type": "boolean", "default": True,
                     "description": "Also run the other equation of motion for comparison"},
    "ring.dense_dt": _number(1e-3, "Output sampling step", exclusiveMinimum=0),
    "box.l": _number(50.0, "Transverse side length", exclusiveMinimum=0),
    "box.m": _number(10.0, "Mirror mass", exclusiveMinimum=0),
    "box.t0": _number(1.0, "Initial time", exclusiveMinimum=0),
    "box.t_end": _number(10.0, "End of the simulated window", exclusiveMinimum=0),
    "box.V0": {"type": "array", "default": [-0.5, 0.5], "minItems": 1,
               "items": {"type": "number", "exclusiveMinimum": -1, "exclusiveMaximum": 1},
               "description": "Initial mirror velocities, one run each"},
    "box.m_field": _number(0.0, "Field mass", minimum=0),
    "box.time_convention": {"type": "string", "enum": ["cosmic", "conformal"], "default": "cosmic",
                            "description": "Clock used in the creation density"},
    "box.creation_form": {"type": "string", "enum": ["closed", "reconciled"], "default": "closed",
                          "description": "Creation density used by the dynamics"},
    "box.partials": {"type": "string", "enum": ["fd", "analytic"], "default": "fd",
                     "description": "How the Euler-Lagrange partials are computed"},
    "box.dense_dt": _number(1e-2, "Output sampling step", exclusiveMinimum=0),
    "ode.tol": _number(1e-10, "Integrator tolerance", minimum=1e-13, maximum=1e-2),
    "ode.method": {"type": "string", "enum": ["DOP853", "RK45", "RK23"], "default": "DOP853",
                   "description": "Embedded Runge-Kutta pair"},
    "quad.rel_tol": _number(1e-9, "Quadrature relative tolerance", minimum=1e-14, maximum=1e-2),
    "quad.abs_tol": _number(1e-13, "Quadrature absolute tolerance", exclusiveMinimum=0),
    "output.dir": {"type": "string", "default": "results", "description": "Output directory"},
    "run.deterministic": {"type": "boolean", "const": True, "default": True,
                          "description": "Runs are deterministic (no stochastic elements)"},
}

_BOUND_WORDS = {"minimum": ">=", "exclusiveMinimum": ">", "maximum": "<=", "exclusiveMaximum": "<"}


def build_json_schema(descriptors: Dict[str, Dict[str, Any]] = CONFIG_SCHEMA) -> Dict[str, Any]:
    properties = {}
    for key, descriptor in descriptors.items():
        properties[key] = {k: v for k, v in descriptor.items() if k not in ("default", "description")}
    return {"type": "object", "properties": properties, "required": ["model"],
            "additionalProperties": False}


def describe_range(descriptor: Dict[str, Any]) -> str:
    if "enum" in descriptor:
        return "one of " + ", ".join(map(str, descriptor["enum"]))
    if "const" in descriptor:
        return f"exactly {descriptor['const']!r}"
    source = descriptor.get("items", descriptor)
    parts = [f"{_BOUND_WORDS[b]} {source[b]}" for b in _BOUND_WORDS if b in source]
    prefix = "non-empty list of numbers " if descriptor.get("type") == "array" else f"{descriptor['type']} "
    return prefix + " and ".join(parts) if parts else prefix.strip()


def flatten(document: Dict[str, Any], model: Optional[str] = None, prefix: str = "") -> Dict[str, Any]:
    """Nested mappings become dotted keys; bare keys belong to the model's section."""
    flat: Dict[str, Any] = {}
    for key, value in document.items():
        key = str(key)
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, model, prefix=f"{dotted}."))
            continue
        if not prefix and "." not in key and key != "model" and model in MODELS:
            dotted = f"{model}.{key}"
        flat[dotted] = value
    return flat


@dataclass
class RunConfig:
    """A validated, fully defaulted run configuration keyed by dotted names."""
    model: str
    values: Dict[str, Any] = field(default_factory=dict)

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value using dot notation"""
        if key == "model":
            return self.model
        return self.values.get(key, default)

    def section(self, name: str) -> Dict[str, Any]:
        prefix = f"{name}."
        return {k[len(prefix):]: v for k, v in self.values.items() if k.startswith(prefix)}

    def to_flat(self) -> Dict[str, Any]:
        flat = {"model": self.model}
        flat.update(self.values)
        return flat

    def ring_params(self):
        from ring1d import RingParams
        return RingParams(M=self.get("ring.M"), l=self.get("ring.l"), m_field=self.get("ring.m_field"))

    def box_params(self):
        from box3d import BoxParams, CreationForm, PartialsMode, TimeConvention
        return BoxParams(l=self.get("box.l"), m_mirror=self.get("box.m"), t0=self.get("box.t0"),
                         m_field=self.get("box.m_field"),
                         time_convention=TimeConvention(self.get("box.time_convention")),
                         creation_form=CreationForm(self.get("box.creation_form")),
                         partials=PartialsMode(self.get("box.partials")))


class ConfigManager:
    def __init__(self, config_path: str = str(DEFAULTS_PATH)):
        self.config_path = Path(config_path)
        self.logger = logging.getLogger(__name__)
        self.defaults: Dict[str, Any] = {}
        self.validator = Draft7Validator(build_json_schema())
        self.load_defaults()

    def load_defaults(self) -> Dict[str, Any]:
        """Load default values from the JSON defaults file"""
        try:
            self.defaults = flatten(load_json_file(str(self.config_path)))
            self.logger.debug("Defaults loaded from %s", self.config_path)
        except Exception as e:
            self.logger.error("Error loading defaults from %s: %s", self.config_path, e)
            self.defaults = {k: copy.deepcopy(d["default"]) for k, d in CONFIG_SCHEMA.items()
                             if "default" in d}
        return self.defaults

    def get(self, key: str, default: Any = None) -> Any:
        """Get a default value using dot notation"""
        return self.defaults.get(key, default)

    def validate(self, flat: Dict[str, Any]) -> None:
        """Raise the first configuration error found in a flat document"""
        unknown = [k for k in flat if k not in CONFIG_SCHEMA]
        if unknown:
            raise UnknownKey(unknown)
        if "model" not in flat:
            raise MissingRequired("model")
        errors = sorted(self.validator.iter_errors(flat), key=lambda e: list(e.path))
        for error in errors:
            if error.validator == "required":
                raise MissingRequired("model")
            key = str(error.path[0]) if error.path else "model"
            value = flat.get(key)
            raise OutOfRange(key, value, describe_range(CONFIG_SCHEMA[key]))
        self._check_cross_field(flat)

    def _check_cross_field(self, flat: Dict[str, Any]) -> None:
        model = flat["model"]
        if model == "ring" and flat.get("ring.backreaction", True):
            critical = 1.0 / (12.0 * math.pi * flat.get("ring.M", 1.0))
            if flat.get("ring.L0", 1.0) <= critical:
                raise OutOfRange("ring.L0", flat.get("ring.L0"), f"> critical length {critical:.9g}")
        if model == "box" and flat.get("box.t_end", 10.0) <= flat.get("box.t0", 1.0):
            raise OutOfRange("box.t_end", flat.get("box.t_end"), f"> box.t0 = {flat.get('box.t0', 1.0)}")

    def build(self, document: Optional[Dict[str, Any]]) -> RunConfig:
        """Validate a parsed document and fill in defaults"""
        if document is None:
            raise MissingRequired("model")
        if not isinstance(document, dict):
            raise ConfigError("configuration must be a key-value mapping")
        flat = flatten(document, document.get("model"))
        if isinstance(flat.get("box.V0"), (int, float)) and not isinstance(flat.get("box.V0"), bool):
            flat["box.V0"] = [flat["box.V0"]]
        self.validate(flat)

        values = {k: copy.deepcopy(v) for k, v in self.defaults.items()}
        values.update({k: v for k, v in flat.items() if k != "model"})
        for key, descriptor in CONFIG_SCHEMA.items():
            if key in values and descriptor.get("type") == "number":
                values[key] = float(values[key])
        if "box.V0" in values:
            values["box.V0"] = [float(v) for v in values["box.V0"]]
        return RunConfig(model=flat["model"], values=values)

    def parse(self, text: str) -> RunConfig:
        try:
            document = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError(f"malformed configuration document: {e}") from e
        return self.build(document)

    def load(self, path: str) -> RunConfig:
        try:
            document = load_yaml_file(path)
        except yaml.YAMLError as e:
            raise ConfigError(f"malformed configuration document {path}: {e}") from e
        config = self.build(document)
        self.logger.info("Configuration loaded from %s", path)
        return config

    def emit(self, config: RunConfig) -> str:
        """Flat dotted YAML with sorted keys"""
        return yaml.safe_dump(config.to_flat(), sort_keys=True, default_flow_style=False)

    def with_value(self, config: RunConfig, key: str, value: Any) -> RunConfig:
        """A copy of ``config`` with one key replaced, revalidated"""
        flat = config.to_flat()
        flat[key] = value
        return self.build(flat)

    def get_default_config(self, model: str) -> RunConfig:
        return self.build({"model": model})


_default_manager: Optional[ConfigManager] = None


def default_manager() -> ConfigManager:
    global _default_manager
    if _default_manager is None:
        _default_manager = ConfigManager()
    return _default_manager


def parse_config(text: str) -> RunConfig:
    return default_manager().parse(text)


def emit_config(config: RunConfig) -> str:
    return default_manager().emit(config)
