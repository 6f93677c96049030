"""Loading of run configuration files."""

from __future__ import annotations

import logging
import tomllib
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from mashumaro.exceptions import ExtraKeysError, InvalidFieldValue, MissingField

from pyswbnet.exceptions import InvalidConfig
from pyswbnet.models import RunConfig

_LOGGER = logging.getLogger(__name__)


def _merge(base: dict[str, Any], update: Mapping[str, Any]) -> dict[str, Any]:
    """Return `base` with `update` merged in, nested tables key by key."""
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _nested_config_error(exc: BaseException) -> InvalidConfig | None:
    cause = exc.__cause__ or exc.__context__
    while cause is not None:
        if isinstance(cause, InvalidConfig):
            return cause
        cause = cause.__cause__ or cause.__context__
    return None


def run_config_from_mapping(values: Mapping[str, Any]) -> RunConfig:
    """Build a run config from (possibly partial) nested values over the defaults."""
    merged = _merge(RunConfig().to_dict(), values)
    try:
        return RunConfig.from_dict(merged)
    except ExtraKeysError as exc:
        raise InvalidConfig(", ".join(sorted(exc.extra_keys)), "unknown key") from exc
    except InvalidFieldValue as exc:
        if (nested := _nested_config_error(exc)) is not None:
            raise nested from exc
        raise InvalidConfig(
            exc.field_name, f"invalid value {exc.field_value!r}"
        ) from exc
    except MissingField as exc:
        raise InvalidConfig(exc.field_name, "missing value") from exc


def load_run_config(path: Path | None = None) -> RunConfig:
    """Read a TOML run config; keys not in the file keep their defaults."""
    if path is None:
        return RunConfig()
    try:
        with path.open("rb") as handle:
            values = tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidConfig(str(path), f"not valid TOML: {exc}") from exc
    _LOGGER.debug("Loaded run config %s with keys %s", path, sorted(values))
    return run_config_from_mapping(values)
