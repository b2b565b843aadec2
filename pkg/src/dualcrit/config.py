"""Flat key = value design configs and their translation into designs.

One key per line, ``#`` starts a comment line, values are numbers,
identifiers, or a comma-separated list for ``grid``. Keys are the design
field names; command-line overrides replace file values before a design
is built. Rates are proportions (0.075, never 7.5).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .binary import DualCriterionBinaryDesign, prior_from_mean
from .distributions import BetaParams
from .outcomes import InfeasibleDesignError
from .three_outcome import (
    DEFAULT_N_MAX as THREE_OUTCOME_N_MAX,
    ThreeOutcomeDesign,
    find_three_outcome_design,
)
from .tte import DualCriterionTTEDesign, PrecisionTTEDesign, StandardTTEDesign

DEFAULT_SEED = 42
DEFAULT_REPLICATES = 100_000

ENDPOINTS = ("tte", "binary")
DESIGN_KINDS = ("dual", "standard", "precision", "three_outcome")

# key -> parser; also fixes the canonical dump order.
_SCHEMA: dict[str, str] = {
    "endpoint": "str",
    "design_kind": "str",
    "label": "str",
    "alpha": "float",
    "beta": "float",
    "null_hr": "float",
    "decision_hr": "float",
    "alt_hr": "float",
    "sigma": "float",
    "n_events": "int",
    "factor": "float",
    "level": "float",
    "prior_a": "float",
    "prior_b": "float",
    "prior_mean": "float",
    "null_orr": "float",
    "sig_prob": "float",
    "decision_orr": "float",
    "n": "int",
    "p0": "float",
    "p1": "float",
    "eta": "float",
    "pi": "float",
    "r_go": "int",
    "r_nogo": "int",
    "n_max": "int",
    "seed": "int",
    "reps": "int",
    "grid": "grid",
}


class ConfigError(ValueError):
    """A config file or override that cannot be turned into a design."""


def _parse_scalar(key: str, text: str):
    kind = _SCHEMA[key]
    if kind == "str":
        return text
    if kind == "grid":
        items = [piece.strip() for piece in text.split(",") if piece.strip()]
        if not items:
            raise ConfigError(f"grid must list at least one value, got {text!r}")
        try:
            return [float(piece) for piece in items]
        except ValueError:
            raise ConfigError(f"grid values must be numbers, got {text!r}") from None
    try:
        if kind == "int":
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        return float(text)
    except ValueError:
        raise ConfigError(f"value for {key!r} must be a number, got {text!r}") from None


def parse_value(key: str, text: str):
    if key not in _SCHEMA:
        raise ConfigError(f"unknown config key {key!r}")
    return _parse_scalar(key, text.strip())


def parse_config_text(text: str, source: str = "<config>") -> dict:
    cfg: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        try:
            cfg[key] = parse_value(key, value)
        except ConfigError as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}") from None
    return cfg


def load_config(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text, source=str(path))


def apply_overrides(cfg: dict, assignments: list[str]) -> dict:
    """Apply ``key=value`` override strings on top of a parsed config."""
    out = dict(cfg)
    for item in assignments:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, _, value = item.partition("=")
        out[key.strip()] = parse_value(key.strip(), value)
    return out


def _format_value(key: str, value) -> str:
    if _SCHEMA[key] == "grid":
        return ", ".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(cfg: dict, path: str | Path) -> None:
    """Write the effective config so it re-parses to the identical design."""
    lines = [
        f"{key} = {_format_value(key, cfg[key])}" for key in _SCHEMA if key in cfg
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _require(cfg: dict, *keys: str) -> None:
    missing = [key for key in keys if key not in cfg]
    if missing:
        raise ConfigError(
            f"missing required key(s) for this design: {', '.join(missing)}"
        )


def endpoint_of(cfg: dict) -> str:
    _require(cfg, "endpoint")
    endpoint = cfg["endpoint"]
    if endpoint not in ENDPOINTS:
        raise ConfigError(f"endpoint must be one of {ENDPOINTS}, got {endpoint!r}")
    return endpoint


def design_kind_of(cfg: dict) -> str:
    _require(cfg, "design_kind")
    kind = cfg["design_kind"]
    if kind not in DESIGN_KINDS:
        raise ConfigError(f"design_kind must be one of {DESIGN_KINDS}, got {kind!r}")
    endpoint = endpoint_of(cfg)
    valid = {"tte": ("dual", "standard", "precision"), "binary": ("dual", "three_outcome")}
    if kind not in valid[endpoint]:
        raise ConfigError(
            f"design_kind {kind!r} is not available for endpoint {endpoint!r}"
        )
    return kind


def prior_of(cfg: dict) -> BetaParams:
    b = cfg.get("prior_b", 1.0)
    if "prior_a" in cfg:
        return BetaParams(a=cfg["prior_a"], b=b)
    if "prior_mean" in cfg:
        return prior_from_mean(cfg["prior_mean"], b=b)
    raise ConfigError("binary designs need prior_a (or prior_mean), plus prior_b")


@dataclass(frozen=True)
class ResolvedDesign:
    """A built design plus the run parameters the commands share."""

    endpoint: str
    kind: str
    design: object
    label: str | None
    grid: list[float] | None
    sigma: float
    n_events: int | None
    seed: int
    reps: int


def _wrap(cfg, design, *, sigma=2.0, n_events=None) -> ResolvedDesign:
    return ResolvedDesign(
        endpoint=endpoint_of(cfg),
        kind=design_kind_of(cfg),
        design=design,
        label=cfg.get("label"),
        grid=cfg.get("grid"),
        sigma=sigma,
        n_events=n_events,
        seed=cfg.get("seed", DEFAULT_SEED),
        reps=cfg.get("reps", DEFAULT_REPLICATES),
    )


def resolve_design(cfg: dict, *, require_n: bool = True) -> ResolvedDesign:
    """Build the design a config describes.

    With ``require_n=False`` the sample-size field may be absent for
    designs whose size the ``size`` command derives; the design slot is
    then None and only the sizing inputs are validated.
    """
    endpoint = endpoint_of(cfg)
    kind = design_kind_of(cfg)
    try:
        if endpoint == "tte" and kind == "dual":
            _require(cfg, "alpha", "decision_hr")
            sigma = cfg.get("sigma", 2.0)
            if "n_events" not in cfg and not require_n:
                return _wrap(cfg, None, sigma=sigma)
            _require(cfg, "n_events")
            design = DualCriterionTTEDesign(
                alpha=cfg["alpha"],
                decision_hr=cfg["decision_hr"],
                n_events=cfg["n_events"],
                null_hr=cfg.get("null_hr", 1.0),
                sigma=sigma,
            )
            return _wrap(cfg, design, sigma=sigma, n_events=cfg["n_events"])
        if endpoint == "tte" and kind == "standard":
            _require(cfg, "alpha", "beta", "alt_hr")
            design = StandardTTEDesign(
                alpha=cfg["alpha"],
                beta=cfg["beta"],
                alt_hr=cfg["alt_hr"],
                null_hr=cfg.get("null_hr", 1.0),
            )
            return _wrap(
                cfg, design, sigma=cfg.get("sigma", 2.0), n_events=cfg.get("n_events")
            )
        if endpoint == "tte" and kind == "precision":
            _require(cfg, "factor")
            design = PrecisionTTEDesign(
                factor=cfg["factor"],
                level=cfg.get("level", 0.95),
                sigma=cfg.get("sigma", 2.0),
            )
            return _wrap(cfg, design, sigma=design.sigma)
        if endpoint == "binary" and kind == "dual":
            _require(cfg, "null_orr", "sig_prob", "decision_orr")
            prior = prior_of(cfg)
            if "n" not in cfg and not require_n:
                return _wrap(cfg, None)
            _require(cfg, "n")
            design = DualCriterionBinaryDesign(
                prior=prior,
                null_orr=cfg["null_orr"],
                sig_prob=cfg["sig_prob"],
                decision_orr=cfg["decision_orr"],
                n=cfg["n"],
            )
            return _wrap(cfg, design)
        # binary three_outcome
        _require(cfg, "p0", "p1", "alpha", "beta", "eta", "pi")
        boundary_keys = [key for key in ("n", "r_go", "r_nogo") if key in cfg]
        if len(boundary_keys) == 3:
            design = ThreeOutcomeDesign(
                n=cfg["n"],
                r_go=cfg["r_go"],
                r_nogo=cfg["r_nogo"],
                p0=cfg["p0"],
                p1=cfg["p1"],
                alpha=cfg["alpha"],
                beta=cfg["beta"],
                eta=cfg["eta"],
                pi=cfg["pi"],
            )
        elif boundary_keys:
            raise ConfigError(
                "three_outcome designs need either all of n, r_go, r_nogo or none"
            )
        else:
            design = find_three_outcome_design(
                p0=cfg["p0"],
                p1=cfg["p1"],
                alpha=cfg["alpha"],
                beta=cfg["beta"],
                eta=cfg["eta"],
                pi=cfg["pi"],
                n_max=cfg.get("n_max", THREE_OUTCOME_N_MAX),
            )
        return _wrap(cfg, design)
    except (ConfigError, InfeasibleDesignError):
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
