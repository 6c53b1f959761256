"""Run configuration: TOML files plus command-line overrides."""
from __future__ import annotations

import copy
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .measures import MarkovMeasure
from .systems import SymbolicSystem, ToralAutomorphism, as_word, system_from_config

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_SEED = 42

DEFAULT_SYSTEMS = {
    "estimate-entropy": {"kind": "toral", "matrix": [[2, 1], [1, 1]]},
    "local-entropy": {"kind": "toral", "matrix": [[2, 1], [1, 1]]},
    "spectrum": {"kind": "full_shift", "alphabet": 2},
    "separated-count": {"kind": "full_shift", "alphabet": 2},
    "glue-demo": {"kind": "full_shift", "alphabet": 2},
    "uniform-separation": {"kind": "full_shift", "alphabet": 2},
    "irregular-demo": {"kind": "full_shift", "alphabet": 2},
}


@dataclass
class RunConfig:
    """Everything a subcommand needs; ``raw`` is echoed into ``summary.json``."""

    command: str
    system: dict
    params: dict
    out: str = "out"
    threads: int = 1
    seed: int = DEFAULT_SEED
    strict: bool = False
    raw: dict = field(default_factory=dict)

    def build_system(self):
        return system_from_config(self.system)

    def get(self, key, default=None):
        return self.params.get(key, default)

    def echo(self) -> dict:
        return {"command": self.command, "system": self.system, "params": self.params,
                "out": self.out, "threads": self.threads, "seed": self.seed,
                "strict": self.strict}


def load_toml(path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ValidationError(f"malformed config {path}: {exc}") from exc


def section_name(command: str) -> str:
    return command.replace("-", "_")


def build_config(command: str, path=None, overrides: dict | None = None, out=None,
                 threads=None, seed=None, strict=False) -> RunConfig:
    """Merge a config file with flag overrides (flags win)."""
    raw = load_toml(path) if path else {}
    system = copy.deepcopy(raw.get("system", DEFAULT_SYSTEMS.get(command, {})))
    params = copy.deepcopy(raw.get(section_name(command), {}))
    params.update({k: v for k, v in (overrides or {}).items() if v is not None})
    run = raw.get("run", {})
    cfg = RunConfig(command, system, params,
                    out=out or run.get("out", "out"),
                    threads=int(threads if threads is not None else run.get("threads", 1)),
                    seed=int(seed if seed is not None else run.get("seed", DEFAULT_SEED)),
                    strict=bool(strict or run.get("strict", False)), raw=raw)
    if cfg.threads < 1:
        raise ValidationError("threads must be at least 1")
    if not 0 <= cfg.seed < 2 ** 64:
        raise ValidationError("seed must be an unsigned 64-bit integer")
    for key in ("n", "eps", "grid_levels", "checkpoints", "taus"):
        vals = cfg.params.get(key)
        if isinstance(vals, (list, tuple)) and len(vals) == 0:
            raise ValidationError(f"{key} must be nonempty")
    return cfg


def measure_from_config(entry: dict | None, system) -> MarkovMeasure:
    """``{kind = bernoulli, probs = [...]}``, ``parry``, ``uniform`` or ``{kind = dirac, symbol}``."""
    entry = entry or {"kind": "parry"}
    kind = entry.get("kind", "parry")
    if kind == "bernoulli":
        return MarkovMeasure.bernoulli(entry.get("probs", [0.5, 0.5]))
    if kind == "parry":
        return MarkovMeasure.parry(system)
    if kind == "uniform":
        return MarkovMeasure.uniform_branching(system)
    if kind == "dirac":
        return MarkovMeasure.dirac_fixed(int(entry.get("symbol", 0)), system.alphabet_size)
    if kind == "markov":
        return MarkovMeasure(np.asarray(entry["P"], dtype=float))
    raise ValidationError(f"unknown measure kind {kind!r}")


def predicate_from_config(entry, system):
    """Subset predicates: ``all``, ``empty``, ``fixed_point``, ``golden_mean``,
    ``cylinder:<word>``."""
    if entry in (None, "all"):
        return None
    if entry == "empty":
        return lambda p: False
    if entry == "fixed_point":
        if isinstance(system, ToralAutomorphism):
            return lambda p: bool(np.all(np.minimum(np.mod(p, 1), 1 - np.mod(p, 1)) < 1e-9))
        return lambda p: bool(np.all(np.asarray(p) == 0))
    if entry == "golden_mean" and isinstance(system, SymbolicSystem):
        return lambda w: not bool(np.any((np.asarray(w)[:-1] == 1) & (np.asarray(w)[1:] == 1)))
    if isinstance(entry, str) and entry.startswith("cylinder:") and isinstance(system,
                                                                             SymbolicSystem):
        pre = as_word(entry.split(":", 1)[1])
        return lambda w: bool(np.array_equal(np.asarray(w)[:len(pre)], pre))
    raise ValidationError(f"unknown predicate {entry!r}")
