"""The drawing value type and its JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping


def _frac(s) -> Fraction:
    return Fraction(str(s))


@dataclass(frozen=True)
class Drawing:
    """Exact straight-line drawing plus its cover lines.

    ``horizontal`` are ordinates, ``vertical`` abscissas of the chain lines and
    ``extra_vertical`` abscissas of lines that do not belong to the
    antichain/chain families (the s-t line of a triangulation drawing).
    """

    points: Mapping[str, tuple[Fraction, Fraction]]
    edges: tuple[tuple[str, str], ...]
    horizontal: tuple[Fraction, ...] = ()
    vertical: tuple[Fraction, ...] = ()
    extra_vertical: tuple[Fraction, ...] = ()
    edge_colors: Mapping[tuple[str, str], str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def total_lines(self) -> int:
        return len(self.horizontal) + len(self.vertical) + len(self.extra_vertical)

    def to_dict(self) -> dict:
        d = {
            "points": {v: [str(x), str(y)] for v, (x, y) in sorted(self.points.items())},
            "edges": [list(e) for e in sorted(self.edges)],
            "cover": {
                "horizontal": [str(y) for y in self.horizontal],
                "vertical": [str(x) for x in self.vertical],
            },
        }
        if self.extra_vertical:
            d["cover"]["extra_vertical"] = [str(x) for x in self.extra_vertical]
        if self.edge_colors:
            d["edge_colors"] = [[u, v, c] for (u, v), c in sorted(self.edge_colors.items())]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, d: Mapping) -> "Drawing":
        pts = {str(v): (_frac(x), _frac(y)) for v, (x, y) in d["points"].items()}
        cover = d.get("cover", {})
        colors = {(str(u), str(v)): c for u, v, c in d.get("edge_colors", [])}
        return cls(
            pts,
            tuple(tuple(map(str, e)) for e in d.get("edges", [])),
            tuple(_frac(y) for y in cover.get("horizontal", [])),
            tuple(_frac(x) for x in cover.get("vertical", [])),
            tuple(_frac(x) for x in cover.get("extra_vertical", [])),
            colors,
        )

    @classmethod
    def from_json(cls, s: str) -> "Drawing":
        return cls.from_dict(json.loads(s))
