"""
Job configuration files.

    # comment
    kb = family.kb
    positives = { alice, carol }
    negatives = { bob }
    k4 = 20
    keepCommonTypes = true

Relative ``kb`` paths are resolved against the directory of the config file.
"""

import re
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from ..core.config import settings
from ..core.exceptions import ConfigException
from ..models.config import JobConfig

_LINE = re.compile(r"^(?P<key>[A-Za-z][A-Za-z0-9]*)\s*=\s*(?P<value>.*)$")
_SET = re.compile(r"^\{(?P<body>.*)\}$")

_INT_KEYS = frozenset(
    {
        "n1",
        "n2",
        "k1",
        "k2",
        "k3",
        "k4",
        "k5",
        "maxSolutions",
        "expressionCap",
        "alpha3Rerank",
    }
)
_BOOL_KEYS = frozenset({"keepCommonTypes", "computeAlpha3", "pruneSignatures"})
_SET_KEYS = frozenset({"positives", "negatives"})
_PATH_KEYS = frozenset({"kb"})
KNOWN_KEYS = _INT_KEYS | _BOOL_KEYS | _SET_KEYS | _PATH_KEYS

# k6 is accepted as another spelling of k5
_ALIASES = {"k6": "k5"}


def _int(key: str, value: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigException(
            f"'{key}' expects a number, got {value!r}", line
        ) from None


def _bool(key: str, value: str, line: int) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ConfigException(f"'{key}' expects true or false, got {value!r}", line)


def _names(key: str, value: str, line: int) -> frozenset[str]:
    match = _SET.match(value)
    if match is None:
        raise ConfigException(f"'{key}' expects a set such as {{ a, b }}", line)
    names = [n.strip() for n in match.group("body").split(",")]
    names = [n for n in names if n]
    if not names:
        raise ConfigException(f"empty example set for '{key}'", line)
    return frozenset(names)


def parse_config(
    text: str, base_dir: Path | None = None, default_cap: int | None = None
) -> JobConfig:
    """
    Parse a job configuration; keys that are not given take their defaults.
    ``expressionCap`` defaults to ``default_cap``, else to the ECII_EXPRESSION_CAP
    setting.

    Raises:
        ConfigException: malformed line, unknown or repeated key, bad value,
            empty example set, or a missing required key
    """
    values: dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if match is None:
            raise ConfigException(f"malformed line {line!r}", number)
        key, value = match.group("key"), match.group("value").strip()
        key = _ALIASES.get(key, key)
        if key not in KNOWN_KEYS:
            raise ConfigException(f"unknown key '{key}'", number)
        if key in values:
            raise ConfigException(f"'{key}' given twice", number)
        if key in _INT_KEYS:
            values[key] = _int(key, value, number)
        elif key in _BOOL_KEYS:
            values[key] = _bool(key, value, number)
        elif key in _SET_KEYS:
            values[key] = _names(key, value, number)
        else:
            if not value:
                raise ConfigException("'kb' expects a file path", number)
            path = Path(value)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            values[key] = path

    values.setdefault(
        "expressionCap",
        settings.ECII_EXPRESSION_CAP if default_cap is None else default_cap,
    )
    try:
        return JobConfig(**values)
    except ValidationError as exc:
        raise ConfigException(_describe(exc)) from exc


def _describe(exc: ValidationError) -> str:
    messages = []
    for error in exc.errors():
        where = ".".join(str(part) for part in error["loc"]) or "config"
        if error["type"] == "missing":
            messages.append(f"missing required key '{where}'")
        else:
            messages.append(f"'{where}': {error['msg']}")
    return "; ".join(messages)

