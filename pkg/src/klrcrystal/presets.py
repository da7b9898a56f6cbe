"""Bundled example data."""

from __future__ import annotations

import json
from importlib import resources

from .cartan import BorcherdsCartanDatum, validate_datum

#: the presets every acceptance sweep runs over
CORE_PRESETS = ("sl2", "rank2", "imaginary", "isotropic", "mixed")
ALL_PRESETS = CORE_PRESETS + ("imaginary4", "orthogonal")


def preset_json(name: str) -> dict:
    if name not in ALL_PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(ALL_PRESETS)}")
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def preset(name: str) -> BorcherdsCartanDatum:
    return validate_datum(preset_json(name))
