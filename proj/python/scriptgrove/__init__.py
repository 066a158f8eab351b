"""Keystroke edit logs to operation graphs, tree layouts and SVG.

Every function takes the edit log as JSONL text. Use ``read_log`` to load
one from disk.
"""

import json
from pathlib import Path

from . import _scriptgrove as _core
from ._scriptgrove import LogError, SchemaError, arc_size, check, default_palette, generate, replay

__all__ = [
    "LogError",
    "SchemaError",
    "arc_size",
    "check",
    "condense",
    "default_palette",
    "generate",
    "graph",
    "layout",
    "read_log",
    "render_frames",
    "render_svg",
    "replay",
    "segments",
    "stats",
]


def read_log(path):
    return Path(path).read_text(encoding="utf-8")


def _palette_json(palette):
    return None if palette is None else json.dumps(list(palette))


def condense(jsonl, idle_ms=None):
    return json.loads(_core.condense_json(jsonl, idle_ms))


def graph(jsonl, timezone="UTC", atomic=False):
    return json.loads(_core.graph_json(jsonl, timezone, atomic))


def layout(jsonl, phototropism=0.3, unit_arc_len=2.0, base_radius=12.0, palette=None, timezone="UTC"):
    return json.loads(
        _core.layout_json(jsonl, phototropism, unit_arc_len, base_radius, _palette_json(palette), timezone)
    )


def render_svg(jsonl, width=800, height=800, margin=20.0, background="#ffffff", phototropism=0.3,
               unit_arc_len=2.0, base_radius=12.0, palette=None, timezone="UTC"):
    return _core.render_svg(jsonl, width, height, margin, background, phototropism, unit_arc_len,
                            base_radius, _palette_json(palette), timezone)


def render_frames(jsonl, interval_ms=60_000, width=800, height=800, phototropism=0.3, palette=None,
                  timezone="UTC"):
    return _core.render_frames(jsonl, interval_ms, width, height, phototropism, _palette_json(palette), timezone)


def segments(jsonl, depth=1, timezone="UTC"):
    return json.loads(_core.segments_json(jsonl, depth, timezone))


def stats(jsonl, depth=1, description="", timezone="UTC"):
    return json.loads(_core.stats_json(jsonl, depth, description, timezone))
