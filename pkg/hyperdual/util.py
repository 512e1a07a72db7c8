"""Utilities for the command line interface: point literals and the defaults file."""

from __future__ import annotations

import json
import re
import warnings
from pathlib import Path
from typing import Union

from hyperdual.field import Scalar

CLI_CONFIG_FP = Path.home() / ".hyperdual" / "hyperdual_cli.json"

CLI_DEFAULTS = {
    "format": "json",
    "strict": True,
    "verify_threshold": 1e-4,
    "parallel": False,
}

_UNSIGNED = r"(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?"
_REAL_RE = re.compile(rf"[+-]?{_UNSIGNED}")
_IMAG_RE = re.compile(rf"(?P<im>[+-]?{_UNSIGNED})i")
_COMPLEX_RE = re.compile(rf"(?P<re>[+-]?{_UNSIGNED})(?P<im>[+-]{_UNSIGNED})i")


def parse_scalar(text: str) -> Scalar:
    """Parse a real or complex literal.

    Accepted forms are ``a``, ``bi``, ``a+bi`` and ``a-bi`` with decimal numbers a and b.
    Whitespace is ignored.

    Parameters
    ----------
    text:
        The literal.

    Returns
    -------
        A float for real literals, a complex number otherwise.

    Raises
    ------
    ValueError:
        If the literal is malformed.

    Examples
    --------
    >>> parse_scalar("1+1i")
    (1+1j)
    >>> parse_scalar(" 2.3 ")
    2.3

    """
    literal = "".join(text.split())
    if _REAL_RE.fullmatch(literal):
        return float(literal)
    match = _IMAG_RE.fullmatch(literal)
    if match:
        return complex(0.0, float(match.group("im")))
    match = _COMPLEX_RE.fullmatch(literal)
    if match:
        return complex(float(match.group("re")), float(match.group("im")))
    raise ValueError(f"Cannot parse '{text.strip()}' as a real or complex number.")


def parse_point(text: str) -> list[Scalar]:
    """Parse a comma separated list of real or complex literals.

    Raises
    ------
    ValueError:
        If the list is empty or one of the literals is malformed.

    """
    if not text.strip():
        raise ValueError("The point should have at least one coordinate.")
    return [parse_scalar(part) for part in text.split(",")]


def load_cli_config(config_path: Union[str, Path] = CLI_CONFIG_FP) -> dict:
    """Read the defaults of the command line interface.

    Missing files give the built-in defaults. Unknown keys and values of the wrong
    type are skipped with a warning.

    Parameters
    ----------
    config_path, optional:
        JSON file with the defaults, by default ~/.hyperdual/hyperdual_cli.json.

    Returns
    -------
        Dictionary with the keys of :data:`CLI_DEFAULTS`.

    """
    config = dict(CLI_DEFAULTS)
    try:
        with open(config_path, "r", encoding="utf-8") as handle:
            user_config = json.load(handle)
    except FileNotFoundError:
        return config
    except json.JSONDecodeError as exc:
        warnings.warn(f"Ignoring configuration file {config_path}: {exc}")
        return config
    if not isinstance(user_config, dict):
        warnings.warn(f"Ignoring configuration file {config_path}: not a JSON object.")
        return config
    for key, value in user_config.items():
        if key not in CLI_DEFAULTS:
            warnings.warn(f"Ignoring unknown key '{key}' in {config_path}.")
        elif key == "verify_threshold" and isinstance(value, (int, float)) and not isinstance(
            value, bool
        ):
            config[key] = float(value)
        elif key == "format" and value in ("json", "csv"):
            config[key] = value
        elif key in ("strict", "parallel") and isinstance(value, bool):
            config[key] = value
        else:
            warnings.warn(f"Ignoring invalid value {value!r} for '{key}' in {config_path}.")
    return config
