"""Named built-in fixtures: catalogs, models and blow-up centers shipped as
JSON files inside this package."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..catalog import ActionCatalog, catalog_from_json, ensure_valid_catalog
from ..errors import ValidationError
from ..models import BlowupCenter, ModelDescription, center_from_json, model_from_json

_ROOT = resources.files("burnloc.fixtures")


def _names(subdir: str) -> tuple[str, ...]:
    folder = _ROOT / subdir
    return tuple(sorted(p.name[: -len(".json")] for p in folder.iterdir() if p.name.endswith(".json")))


def _load(subdir: str, name: str) -> dict:
    path = _ROOT / subdir / f"{name}.json"
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ValidationError(
            f"unknown {subdir[:-1]} fixture {name!r}; available: {', '.join(_names(subdir))}"
        ) from None
    return json.loads(text)


def catalog_names() -> tuple[str, ...]:
    return _names("catalogs")


def model_names() -> tuple[str, ...]:
    return _names("models")


def center_names() -> tuple[str, ...]:
    return _names("centers")


@lru_cache(maxsize=None)
def fixture_catalog(name: str) -> ActionCatalog:
    return ensure_valid_catalog(catalog_from_json(_load("catalogs", name), name=name))


def fixture_model(name: str) -> ModelDescription:
    return model_from_json(_load("models", name), fixture_catalog, name=name)


def fixture_center(name: str) -> BlowupCenter:
    return center_from_json(_load("centers", name))
