"""
Scenario configuration for the command-line front end.

A scenario is a nested mapping, normally read from a YAML file::

    signal:   {kind: squeezed, xi: 0.5}        # vacuum | coherent | squeezed | superposition
    lo:       {r: 2.0, phase_grid: "0:pi:33"}  # or phi: 0.0
    detector: {N: 4, eta: 0.5, nu: 0.25}
    noise:    {sigma_x: 0.0, sigma_p: 0.0}
    cutoff:   {value: null, truncation: 1.0e-10}
    sweep:    {xi: "0.1:3.0:30"}               # optional, witness command only
    seed: 1234
    shots: 1000000
    max_order: 4

Every field has a default; validation errors name the offending field.
"""

from __future__ import annotations

import copy
import re
from dataclasses import dataclass, field

import numpy as np
import yaml

from .detector import DetectorConfig
from .errors import ArgumentError
from .fock import DEFAULT_TRUNCATION, coherent_state, squeezed_vacuum, superposition_0n, vacuum
from .gaussian import GaussianState
from .lo_noise import LONoiseModel

__all__ = ["ConfigError", "PRESETS", "ScenarioConfig", "load_config", "parse_grid"]

SIGNAL_KINDS = ("vacuum", "coherent", "squeezed", "superposition")
REPRESENTATIONS = ("auto", "fock", "gaussian")


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


_ANGLE = re.compile(r"^([-+]?[0-9.]*)\s*\*?\s*pi(?:\s*/\s*([0-9.]+))?$")


def _parse_number(text, field_name: str) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip()
    try:
        return float(s)
    except ValueError:
        pass
    m = _ANGLE.match(s)
    if not m:
        raise ConfigError(field_name, f"cannot parse number {text!r}")
    factor = m.group(1)
    if factor in ("", "+", "-"):
        factor = -1.0 if factor == "-" else 1.0
    value = float(factor) * np.pi
    if m.group(2):
        value /= float(m.group(2))
    return value


def parse_grid(text, field_name: str = "grid") -> np.ndarray:
    """Parse ``start:stop:count`` (endpoints included); ``pi`` multiples are allowed."""
    if isinstance(text, (list, tuple)):
        return np.array([_parse_number(v, field_name) for v in text])
    parts = str(text).split(":")
    if len(parts) == 1:
        return np.array([_parse_number(parts[0], field_name)])
    if len(parts) != 3:
        raise ConfigError(field_name, f"expected start:stop:count, got {text!r}")
    start, stop = (_parse_number(p, field_name) for p in parts[:2])
    try:
        count = int(parts[2])
    except ValueError:
        raise ConfigError(field_name, f"count must be an integer, got {parts[2]!r}") from None
    if count < 1:
        raise ConfigError(field_name, "count must be >= 1")
    return np.linspace(start, stop, count)


DEFAULTS = {
    "signal": {"kind": "vacuum", "representation": "auto"},
    "lo": {"r": 2.0, "phi": 0.0},
    "detector": {"N": 4, "eta": 0.5, "nu": 0.25},
    "noise": {"sigma_x": 0.0, "sigma_p": 0.0},
    "cutoff": {"value": None, "truncation": DEFAULT_TRUNCATION},
    "sweep": {},
    "seed": 1234,
    "shots": 100000,
    "max_order": None,
    "resamples": 200,
}


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


@dataclass
class ScenarioConfig:
    raw: dict
    signal_kind: str
    signal_params: dict
    representation: str
    r: float
    phases: np.ndarray
    detector: DetectorConfig
    sigma_x: float
    sigma_p: float
    cutoff: int | None
    truncation: float
    sweep: dict = field(default_factory=dict)
    seed: int = 1234
    shots: int = 100000
    max_order: int | None = None
    resamples: int = 200

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        unknown = set(data or {}) - set(DEFAULTS)
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown key")
        raw = _merge(DEFAULTS, data or {})

        sig = raw["signal"]
        kind = sig.get("kind")
        if kind not in SIGNAL_KINDS:
            raise ConfigError("signal.kind", f"must be one of {', '.join(SIGNAL_KINDS)}, got {kind!r}")
        rep = sig.get("representation", "auto")
        if rep not in REPRESENTATIONS:
            raise ConfigError("signal.representation", f"must be one of {', '.join(REPRESENTATIONS)}")
        params = {}
        if kind == "coherent":
            alpha = sig.get("alpha", 0.0)
            if isinstance(alpha, (list, tuple)):
                if len(alpha) != 2:
                    raise ConfigError("signal.alpha", "expected a number or [re, im]")
                alpha = complex(float(alpha[0]), float(alpha[1]))
            params["alpha"] = complex(alpha)
        elif kind == "squeezed":
            xi = _parse_number(sig.get("xi", 0.0), "signal.xi")
            if xi < 0:
                raise ConfigError("signal.xi", f"must be >= 0, got {xi}")
            params["xi"] = xi
        elif kind == "superposition":
            n = sig.get("n", 1)
            if not isinstance(n, int) or n < 1:
                raise ConfigError("signal.n", f"must be an integer >= 1, got {n!r}")
            if rep == "gaussian":
                raise ConfigError("signal.representation", "superposition states are not Gaussian")
            params["n"] = n

        lo = raw["lo"]
        r = _parse_number(lo.get("r", 2.0), "lo.r")
        if r < 0:
            raise ConfigError("lo.r", f"must be >= 0, got {r}")
        if "phase_grid" in lo and lo["phase_grid"] is not None:
            phases = parse_grid(lo["phase_grid"], "lo.phase_grid")
        else:
            phases = np.array([_parse_number(lo.get("phi", 0.0), "lo.phi")])

        det = raw["detector"]
        try:
            detector = DetectorConfig(int(det["N"]), float(det["eta"]), float(det["nu"]))
        except ArgumentError as exc:
            name = str(exc).split()[0]
            raise ConfigError(f"detector.{name}", str(exc)) from None
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("detector", f"invalid detector block: {exc}") from None

        noise = raw["noise"]
        sigma_x = _parse_number(noise.get("sigma_x", 0.0), "noise.sigma_x")
        sigma_p = _parse_number(noise.get("sigma_p", 0.0), "noise.sigma_p")
        for name, value in (("noise.sigma_x", sigma_x), ("noise.sigma_p", sigma_p)):
            if value < 0:
                raise ConfigError(name, f"must be >= 0, got {value}")

        cut = raw["cutoff"]
        cutoff = cut.get("value")
        if cutoff is not None and (not isinstance(cutoff, int) or cutoff < 0):
            raise ConfigError("cutoff.value", f"must be a non-negative integer or null, got {cutoff!r}")
        truncation = float(cut.get("truncation", DEFAULT_TRUNCATION))
        if not 0 < truncation < 1:
            raise ConfigError("cutoff.truncation", f"must lie in (0, 1), got {truncation}")

        sweep = {}
        for key, value in (raw.get("sweep") or {}).items():
            if key not in ("xi", "eta"):
                raise ConfigError(f"sweep.{key}", "only xi and eta can be swept")
            sweep[key] = parse_grid(value, f"sweep.{key}")
        if "eta" in sweep and np.any((sweep["eta"] < 0) | (sweep["eta"] > 1)):
            raise ConfigError("sweep.eta", "efficiencies must lie in [0, 1]")
        if "xi" in sweep and kind != "squeezed":
            raise ConfigError("sweep.xi", "a squeezing sweep needs signal.kind: squeezed")

        shots = raw.get("shots")
        if not isinstance(shots, int) or shots < 1:
            raise ConfigError("shots", f"must be a positive integer, got {shots!r}")
        seed = raw.get("seed")
        if not isinstance(seed, int) or seed < 0:
            raise ConfigError("seed", f"must be a non-negative integer, got {seed!r}")
        max_order = raw.get("max_order")
        if max_order is not None and (not isinstance(max_order, int) or not 0 <= max_order <= detector.N):
            raise ConfigError("max_order", f"must be an integer in 0..{detector.N}, got {max_order!r}")
        resamples = raw.get("resamples")
        if not isinstance(resamples, int) or resamples < 2:
            raise ConfigError("resamples", f"must be an integer >= 2, got {resamples!r}")

        return cls(raw, kind, params, rep, r, phases, detector, sigma_x, sigma_p,
                   cutoff, truncation, sweep, seed, shots, max_order, resamples)

    def to_dict(self) -> dict:
        return copy.deepcopy(self.raw)

    def build_signal(self, **override):
        """Signal state; ``override`` replaces signal parameters (e.g. ``xi``)."""
        params = {**self.signal_params, **override}
        kind, rep = self.signal_kind, self.representation
        gaussian = rep == "gaussian" or (rep == "auto" and kind != "superposition")
        if kind == "superposition":
            return superposition_0n(params["n"], self.cutoff)
        if gaussian:
            if kind == "coherent":
                return GaussianState(alpha=params["alpha"])
            if kind == "squeezed":
                return GaussianState(xi=params["xi"])
            return GaussianState()
        if kind == "coherent":
            return coherent_state(params["alpha"], self.cutoff, self.truncation)
        if kind == "squeezed":
            return squeezed_vacuum(params["xi"], self.cutoff, self.truncation)
        return vacuum(self.cutoff or 0)

    def detector_with(self, eta: float | None = None) -> DetectorConfig:
        if eta is None:
            return self.detector
        return DetectorConfig(self.detector.N, float(eta), self.detector.nu)

    def noise_model(self, phi: float, sigma_x: float | None = None,
                    sigma_p: float | None = None) -> LONoiseModel:
        return LONoiseModel(self.r, phi,
                            self.sigma_x if sigma_x is None else sigma_x,
                            self.sigma_p if sigma_p is None else sigma_p)


def load_config(path) -> dict:
    with open(path) as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise ConfigError("<root>", "configuration must be a mapping")
    return data


_REFERENCE_DETECTOR = {"N": 4, "eta": 0.5, "nu": 0.25}

PRESETS: dict[str, dict] = {
    # coherent alpha = 2 at r = 2 on ideal arrays; four diodes per arm as in the other presets
    "fig1b": {
        "signal": {"kind": "coherent", "alpha": 2.0},
        "lo": {"r": 2.0, "phase_grid": "0:2pi:65"},
        "detector": {"N": 4, "eta": 1.0, "nu": 0.0},
    },
    "fig1c": {
        "signal": {"kind": "coherent", "alpha": 2.0},
        "lo": {"r": 2.0, "phase_grid": "0:2pi:129"},
        "detector": {"N": 4, "eta": 1.0, "nu": 0.0},
    },
    "fig2": {
        "signal": {"kind": "superposition", "n": 1},
        "lo": {"r": 2.0, "phase_grid": "0:2pi:129"},
        "detector": _REFERENCE_DETECTOR,
        "max_order": 1,
    },
    "fig3": {
        "signal": {"kind": "squeezed", "xi": 0.5},
        "lo": {"r": 2.0, "phase_grid": [0.0, "pi/2"]},
        "detector": _REFERENCE_DETECTOR,
        "sweep": {"xi": "0.01:3.0:300"},
    },
    "fig4": {
        "signal": {"kind": "superposition", "n": 2},
        "lo": {"r": 2.0, "phase_grid": "0:pi:73"},
        "detector": _REFERENCE_DETECTOR,
        "sweep": {"eta": "0.05:1.0:20"},
    },
    "fig5": {
        "signal": {"kind": "squeezed", "xi": 0.5},
        "lo": {"r": 2.0, "phase_grid": "0:pi:61"},
        "detector": _REFERENCE_DETECTOR,
        "noise": {"sigma_x": 2.0, "sigma_p": 1.2},
    },
    "montecarlo": {
        "signal": {"kind": "squeezed", "xi": 0.5},
        "lo": {"r": 2.0, "phi": 0.0},
        "detector": _REFERENCE_DETECTOR,
        "shots": 1000000,
        "seed": 20240101,
    },
}
