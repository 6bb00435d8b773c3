"""Scenario documents: schema validation, defaults and conversion to run objects."""
from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .band import DispersionSpec
from .cavity import CavityConfig, Grating, InjectionSpec, Mask
from .ensemble import EnsembleSpec
from .errors import SchemaError
from .scenarios import CavityScenario, LatticeScenario

SCHEMA_VERSION = 1

_BAND = {"J": 1.0, "a": 1.0}

DEFAULTS = {
    "band_report": {
        "sample_every": 1, "seed": 0,
        "band": _BAND, "M": 64, "n_samples": 256, "k_points": 257,
    },
    "lattice_run": {
        "sample_every": 10, "seed": 0,
        "band": _BAND,
        "lattice": {"N": 256, "origin": None},
        "packet": {"center": -20.0, "sigma_sq": 16.0, "k0a": 0.5 * np.pi},
        "potential": {"kind": "none"},
        "duration": 60.0, "dt": 0.01, "snapshots": True, "propagator": "splitstep",
        "analysis": {"barrier_site": 0, "t_eval": None, "slope_windows": []},
    },
    "cavity_run": {
        "sample_every": 1, "seed": 0,
        "cavity": {"wavelength": 633e-9, "focal": 0.02, "grating_period": 30e-6, "T": 0.02,
                   "n_x": 8192, "window_periods": 64, "exact_phase": True},
        "grating": {"J": 0.5},
        "mask": {"kind": "none"},
        "injection": {"w": 800e-6, "k0a": 0.5 * np.pi, "t0": 20.0, "tau": 10.0, "amplitude": 1.0},
        "n_trips": 120, "snapshots": True, "heatmap_x_stride": 16, "slope_start": None,
    },
    "ensemble_run": {
        "sample_every": 1, "seed": 0,
        "n_realizations": 20, "base_seed": 0,
        "observables": ["com_slope", "final_norm"], "workers": 1,
    },
}


def _schema():
    text = resources.files("metacrystal").joinpath("schema/scenario.schema.json").read_text()
    return json.loads(text)


_VALIDATOR = jsonschema.Draft202012Validator(_schema())


def schema():
    """The published scenario schema as a dict."""
    return copy.deepcopy(_VALIDATOR.schema)


def _merge(defaults, doc):
    out = copy.deepcopy(defaults)
    for key, value in doc.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _validate(doc):
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: (len(e.absolute_path), e.message))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        pointer = "".join(f"/{p}" for p in err.absolute_path)
        raise SchemaError(err.message, pointer)


def with_defaults(doc):
    """Validate ``doc`` and return it with every default filled in."""
    if not isinstance(doc, dict):
        raise SchemaError("scenario must be a JSON object")
    _validate(doc)
    merged = _merge(DEFAULTS[doc["kind"]], doc)
    if doc["kind"] == "ensemble_run":
        inner = doc["scenario"]
        merged["scenario"] = _merge(DEFAULTS[inner["kind"]], inner)
    _validate(merged)
    return merged


@dataclass
class ScenarioConfig:
    """A validated scenario document with defaults applied."""

    document: dict
    source: str | None = None

    @property
    def kind(self):
        return self.document["kind"]

    @property
    def sha256(self):
        return config_hash(self.document)

    def override_seed(self, seed):
        doc = copy.deepcopy(self.document)
        doc["base_seed" if self.kind == "ensemble_run" else "seed"] = int(seed)
        return ScenarioConfig(with_defaults(doc), self.source)


def config_hash(document):
    canon = json.dumps(document, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load_document(doc, source=None) -> ScenarioConfig:
    return ScenarioConfig(with_defaults(doc), source)


def parse_config(path) -> ScenarioConfig:
    """Read and validate a scenario file.

    Raises SchemaError for malformed JSON or schema violations and OSError
    when the file cannot be read.
    """
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    return load_document(doc, str(path))


def builtin_path(name):
    """Path of a bundled scenario, e.g. ``builtin_path("fig2a_sawtooth")``."""
    name = name if name.endswith(".json") else name + ".json"
    path = resources.files("metacrystal").joinpath("scenarios", name)
    if not path.is_file():
        raise FileNotFoundError(f"no built-in scenario {name}")
    return Path(str(path))


def builtin_names():
    root = resources.files("metacrystal").joinpath("scenarios")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def band_spec(doc) -> DispersionSpec:
    coeffs = tuple((int(n), complex(re, im)) for n, re, im in doc.get("coefficients", ()))
    return DispersionSpec(doc["kind"], float(doc.get("J", 1.0)), float(doc.get("a", 1.0)), coeffs)


def lattice_scenario(doc) -> LatticeScenario:
    an = doc["analysis"]
    return LatticeScenario(
        band=band_spec(doc["band"]),
        N=doc["lattice"]["N"], origin=doc["lattice"]["origin"],
        center=doc["packet"]["center"], sigma_sq=doc["packet"]["sigma_sq"], k0a=doc["packet"]["k0a"],
        potential=dict(doc["potential"]),
        duration=doc["duration"], dt=doc["dt"], sample_every=doc["sample_every"],
        snapshots=doc["snapshots"], propagator=doc["propagator"],
        barrier_site=an["barrier_site"], t_eval=an["t_eval"], seed=doc["seed"],
    )


def cavity_scenario(doc) -> CavityScenario:
    c, g, m, inj = doc["cavity"], doc["grating"], doc["mask"], doc["injection"]
    grating = Grating(g["kind"], g.get("J", 0.5), tuple(g.get("samples", ())))
    mask = Mask(m["kind"], U0=m.get("U0", 0.0), d=m.get("d", 0.0), s=m.get("s", 1.0),
                half_width=m.get("half_width", 0.0), cell=m.get("cell"), seed=doc["seed"])
    cfg = CavityConfig(c["wavelength"], c["focal"], c["grating_period"], c["T"], grating, mask,
                       c["n_x"], c["window_periods"], c["exact_phase"])
    return CavityScenario(cfg, InjectionSpec(**inj), doc["n_trips"], doc["sample_every"],
                          doc["snapshots"], doc["slope_start"], doc["seed"])


def scenario_from(doc):
    if doc["kind"] == "lattice_run":
        return lattice_scenario(doc)
    if doc["kind"] == "cavity_run":
        return cavity_scenario(doc)
    raise ValueError(f"{doc['kind']} is not a runnable scenario")


def ensemble_spec(doc) -> EnsembleSpec:
    return EnsembleSpec(scenario_from(doc["scenario"]), doc["n_realizations"],
                        doc["base_seed"], tuple(doc["observables"]))
