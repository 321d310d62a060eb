"""Loading rings, maps, and subfields from names, JSON literals, or files.

Command-line flags accept three spellings:

* a preset name (``gf4``, ``herzer-swap@bm2``),
* an inline JSON object mirroring RingSpec/MapSpec (``{"kind": "zmod", "n": 6}``),
* a path to a JSON file holding such an object (``--ring r.cfg``).

Map files need ``domain`` and ``codomain`` ring objects next to the map
description, since a bare value table does not name its rings.
"""

from __future__ import annotations

import json
import os
from typing import Optional, Tuple

from . import presets
from .jordan import JordanMap, MapSpec, build_map
from .rings import FiniteRing, RingSpec, build_ring

__all__ = ["parse_ring_arg", "parse_map_arg", "parse_subfield_arg", "ConfigError"]


class ConfigError(ValueError):
    pass


def _load_json_arg(text: str) -> Optional[dict]:
    """Inline JSON object or path to one; None when the text is neither."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ConfigError("bad inline JSON: %s" % exc) from None
    if os.path.exists(stripped):
        with open(stripped, "r", encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError("bad JSON in %s: %s" % (stripped, exc)) from None
    return None


def parse_ring_arg(text: str, cap: Optional[int] = None) -> FiniteRing:
    if text in presets.RING_ORDER:
        return presets.ring_preset(text)
    data = _load_json_arg(text)
    if data is None:
        raise ConfigError(
            "ring %r is not a preset (%s), inline JSON, or a readable file"
            % (text, ", ".join(presets.RING_ORDER))
        )
    spec = RingSpec.from_dict(data)
    if cap is None:
        return build_ring(spec)
    return build_ring(spec, cap=cap)


def parse_map_arg(text: str) -> JordanMap:
    if text in presets.MAP_ORDER or text == "frobenius@gf4":
        return presets.map_preset(text)
    data = _load_json_arg(text)
    if data is None:
        names = presets.MAP_ORDER + ("frobenius@gf4",)
        raise ConfigError(
            "map %r is not a preset (%s), inline JSON, or a readable file"
            % (text, ", ".join(names))
        )
    try:
        domain = build_ring(RingSpec.from_dict(data["domain"]))
        codomain = build_ring(RingSpec.from_dict(data["codomain"]))
        spec = MapSpec.from_dict(data["map"] if "map" in data else data)
    except KeyError as exc:
        raise ConfigError("map config needs %s" % exc) from None
    return build_map(spec, domain, codomain)


def parse_subfield_arg(ring: FiniteRing, text: str):
    """A subfield by size ("3"), by element list JSON, or from a file."""
    from .chains import SubfieldK, find_subfields

    data = _load_json_arg(text)
    if data is not None:
        try:
            elems = tuple(sorted(int(v) for v in data["elements"]))
        except (KeyError, TypeError) as exc:
            raise ConfigError("subfield config needs an 'elements' list: %s" % exc) from None
        for kf in find_subfields(ring):
            if kf.elems == elems:
                return kf
        raise ConfigError("%r is not a subfield of %s" % (list(elems), ring.label))
    try:
        size = int(text)
    except ValueError:
        raise ConfigError("subfield %r is neither a size nor a config" % text) from None
    matches = [kf for kf in find_subfields(ring) if kf.size == size]
    if not matches:
        raise ConfigError("%s has no subfield of size %d" % (ring.label, size))
    return matches[0]
