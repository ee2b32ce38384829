"""Service configuration: a small key=value file, environment overrides,
and CLI flags layered on top (flags win, then env, then file, then
defaults)."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ValidationError
from .facets import ClusteringConfig
from .summarize import (
    DEFAULT_CACHE_SIZE,
    DEFAULT_OUTPUT_BUDGET,
    DEFAULT_TIMEOUT_MS,
    DEFAULT_TOKEN_BUDGET,
)

ENV_SUMMARIZER_URL = "SUMMARIZER_URL"
ENV_SUMMARIZER_TIMEOUT_MS = "SUMMARIZER_TIMEOUT_MS"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    data_dir: str | None = None
    summarizer_url: str | None = None
    summarizer_timeout_ms: int = DEFAULT_TIMEOUT_MS
    cache_size: int = DEFAULT_CACHE_SIZE
    token_budget: int = DEFAULT_TOKEN_BUDGET
    output_budget: int = DEFAULT_OUTPUT_BUDGET
    cd_threshold: float = 0.5
    alignment_threshold: float = 0.5
    max_mentions: int = 50

    def clustering(self) -> ClusteringConfig:
        return ClusteringConfig(
            cd_merge_threshold=self.cd_threshold,
            alignment_threshold=self.alignment_threshold,
            max_cluster_mentions=self.max_mentions,
        )


_FIELD_TYPES = {f.name: f.type for f in fields(ServiceConfig)}

_INT_KEYS = {
    "port",
    "summarizer_timeout_ms",
    "cache_size",
    "token_budget",
    "output_budget",
    "max_mentions",
}
_FLOAT_KEYS = {"cd_threshold", "alignment_threshold"}


def _coerce(key: str, raw: str, *, source: str, line: int):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ValidationError(
            f"bad value for {key}: {raw!r}", source=source, line=line
        ) from None
    return raw


def load_config_file(path: str | Path) -> dict:
    """Parse `key = value` lines; `#` starts a comment; blank lines ignored."""
    path = Path(path)
    values: dict = {}
    with path.open("r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            stripped = raw.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ValidationError(
                    f"expected key = value, got {raw.strip()!r}",
                    source=str(path),
                    line=line_no,
                )
            key, _, value = stripped.partition("=")
            key = key.strip()
            value = value.strip().strip("\"'")
            if key not in _FIELD_TYPES:
                raise ValidationError(
                    f"unknown config key {key!r}", source=str(path), line=line_no
                )
            values[key] = _coerce(key, value, source=str(path), line=line_no)
    return values


def resolve_config(
    config_path: str | Path | None = None,
    overrides: dict | None = None,
    env: dict | None = None,
) -> ServiceConfig:
    env = os.environ if env is None else env
    config = ServiceConfig()
    if config_path is not None:
        config = replace(config, **load_config_file(config_path))
    env_values: dict = {}
    if env.get(ENV_SUMMARIZER_URL):
        env_values["summarizer_url"] = env[ENV_SUMMARIZER_URL]
    if env.get(ENV_SUMMARIZER_TIMEOUT_MS):
        env_values["summarizer_timeout_ms"] = _coerce(
            "summarizer_timeout_ms",
            env[ENV_SUMMARIZER_TIMEOUT_MS],
            source="<env>",
            line=0,
        )
    if env_values:
        config = replace(config, **env_values)
    if overrides:
        config = replace(
            config, **{k: v for k, v in overrides.items() if v is not None}
        )
    return config
