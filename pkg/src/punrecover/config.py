"""Flat ``key = value`` configuration and resource loading."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from importlib import resources as importlib_resources
from pathlib import Path

from . import langmodel
from .lexicon import load_lexicon
from .phonetics import CostModel, load_phoneme_map, load_pron_dict
from .recovery import ENGLISH, HINDI, Resources, Settings

ENV_VAR = "PUNRECOVER_CONFIG"

PATH_KEYS = ("english_lexicon", "hindi_lexicon", "ne_list", "pron_dict", "phoneme_map",
             "english_lm", "hindi_lm")
_INT_KEYS = {"context_k": 1, "top_n": 1}
_FLOAT_KEYS = ("kn_discount", "intra_word_threshold", "lm_blend_weight", *CostModel.field_names())


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    paths: dict[str, Path] = field(default_factory=dict)
    kn_discount: float = 0.75
    context_k: int = 200
    top_n: int = 5
    intra_word_threshold: float = 0.45
    lm_blend_weight: float = 0.0
    costs: CostModel = field(default_factory=CostModel)

    def settings(self) -> Settings:
        return Settings(self.costs, self.context_k, self.top_n, self.intra_word_threshold,
                        self.lm_blend_weight)

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def path(self, key: str) -> Path:
        try:
            return self.paths[key]
        except KeyError:
            raise ConfigError(f"config lacks {key!r}") from None


def bundled_config_path() -> Path:
    return Path(str(importlib_resources.files("punrecover") / "data" / "desk" / "desk.conf"))


def default_config_path() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else bundled_config_path()


def parse_config(text: str, base_dir: Path = Path(".")) -> Config:
    cfg = Config()
    cost_kw = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key in PATH_KEYS:
                p = Path(value).expanduser()
                cfg.paths[key] = p if p.is_absolute() else base_dir / p
            elif key in _INT_KEYS:
                v = int(value)
                if v < _INT_KEYS[key]:
                    raise ConfigError(f"line {lineno}: {key} must be >= {_INT_KEYS[key]}")
                setattr(cfg, key, v)
            elif key in CostModel.field_names():
                cost_kw[key] = float(value)
            elif key in _FLOAT_KEYS:
                setattr(cfg, key, float(value))
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None
    if not 0 < cfg.kn_discount < 1:
        raise ConfigError("kn_discount must lie in (0, 1)")
    if not 0 <= cfg.intra_word_threshold <= 1:
        raise ConfigError("intra_word_threshold must lie in [0, 1]")
    if cfg.lm_blend_weight < 0:
        raise ConfigError("lm_blend_weight must be >= 0")
    try:
        cfg.costs = CostModel(**cost_kw)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    return cfg


def load_config(path: str | Path | None = None) -> Config:
    path = Path(path) if path else default_config_path()
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    return parse_config(text, path.parent)


def load_resources(cfg: Config) -> Resources:
    for key in PATH_KEYS:
        p = cfg.path(key)
        if not p.exists():
            raise ConfigError(f"{key}: file not found: {p}")
    lexicon = load_lexicon(cfg.path("english_lexicon"), cfg.path("hindi_lexicon"),
                           cfg.path("ne_list"))
    models = {ENGLISH: langmodel.load(cfg.path("english_lm")),
              HINDI: langmodel.load(cfg.path("hindi_lm"))}
    return Resources(lexicon, models, load_pron_dict(cfg.path("pron_dict")),
                     load_phoneme_map(cfg.path("phoneme_map")))
