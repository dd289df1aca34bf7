"""Published JSON schemas for the CLI output documents."""

import json
from importlib import resources

__all__ = ["load", "names"]

_NAMES = ("eval", "lfd_report", "leibniz_report", "verify_theorem")


def names():
    return _NAMES


def load(name: str) -> dict:
    """Load one of the shipped schemas by short name (see ``names()``)."""
    if name not in _NAMES:
        raise KeyError(f"unknown schema {name!r}; expected one of {_NAMES}")
    text = resources.files(__package__).joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)
