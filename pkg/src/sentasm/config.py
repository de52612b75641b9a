"""Run configuration: one flat INI section plus command-line overrides."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Union


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    # corpus and resource paths
    conllu: Optional[str] = None
    trees: Optional[str] = None
    labels: Optional[str] = None
    lexicon: Optional[str] = None
    embeddings: Optional[str] = None
    stopwords: Optional[str] = None
    seeds: Optional[str] = None
    # generation settings
    task: str = "sa"
    strategy: Optional[str] = None  # default depends on task
    beam: int = 4
    rng_seed: int = 0
    per_word: int = 3
    per_adjunct: int = 8
    mlm_top_k: int = 5
    sentences_per_seed: int = 4
    leaf_k: int = 4
    max_tests_per_seed: int = 256
    # execution settings
    threshold: float = 0.1
    endpoint: Optional[str] = None
    mlm_endpoint: Optional[str] = None
    mask_token: str = "[MASK]"
    timeout: float = 10.0
    max_in_flight: int = 4
    retries: int = 0
    backoff: float = 0.1
    workers: int = 1
    out: str = "out"

    def validate(self) -> None:
        if self.task not in ("mrc", "sa", "ssm"):
            raise ConfigError(f"unknown task {self.task!r}")
        if self.strategy is not None and self.strategy not in ("synonym", "mlm"):
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.beam < 1:
            raise ConfigError("beam size must be >= 1")
        if not (0.0 < self.threshold < 1.0):
            raise ConfigError("threshold must lie in (0, 1)")
        for name in ("conllu", "trees", "labels", "lexicon", "embeddings", "stopwords", "seeds"):
            value = getattr(self, name)
            if value is not None and not Path(value).exists():
                raise ConfigError(f"{name} path does not exist: {value}")

    @property
    def effective_strategy(self) -> str:
        if self.strategy is not None:
            return self.strategy
        return "synonym" if self.task == "mrc" else "mlm"


_INT_FIELDS = {
    "beam",
    "rng_seed",
    "per_word",
    "per_adjunct",
    "mlm_top_k",
    "sentences_per_seed",
    "leaf_k",
    "max_tests_per_seed",
    "max_in_flight",
    "retries",
    "workers",
}
_FLOAT_FIELDS = {"threshold", "timeout", "backoff"}


def load_config(path: Union[str, Path]) -> RunConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    section = parser["run"] if parser.has_section("run") else parser["DEFAULT"]
    known = {f.name for f in fields(RunConfig)}
    cfg = RunConfig()
    for key, raw in section.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        if key in _INT_FIELDS:
            value: object = int(raw)
        elif key in _FLOAT_FIELDS:
            value = float(raw)
        else:
            value = raw
        setattr(cfg, key, value)
    return cfg


def apply_overrides(cfg: RunConfig, overrides: dict[str, object]) -> RunConfig:
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    return cfg
