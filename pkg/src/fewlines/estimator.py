"""A small estimator-style front end: ``fit`` a graph or lattice, read the drawing off."""

from __future__ import annotations

import json
from typing import Any

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .drawing import draw_4connected_triangulation, draw_lattice_few_lines, draw_transversal
from .graph import PlaneGraph
from .poset import Poset, Realizer


def check_input(X: Any):
    """Coerce ``X`` to a ``PlaneGraph`` or a ``(Poset, Realizer)`` pair."""
    if isinstance(X, PlaneGraph):
        return X
    if isinstance(X, tuple) and len(X) == 2 and isinstance(X[0], Poset) and isinstance(X[1], Realizer):
        return X
    if isinstance(X, str):
        X = json.loads(X)
    if isinstance(X, dict):
        if "rotation" in X:
            return PlaneGraph.from_dict(X)
        if "elements" in X:
            p, r = Poset.from_dict(X)
            if r is None:
                raise ValueError("poset input needs a realizer")
            return p, r
    raise TypeError(f"cannot interpret {type(X).__name__} as a plane graph or planar lattice")


class FewLinesLayout(BaseEstimator):
    """Straight-line drawing on few horizontal and vertical lines.

    Parameters
    ----------
    mode : {"auto", "triangulation", "transversal", "lattice"}
        ``auto`` picks the triangulation path for a triangular outer face,
        the transversal path for a 4-gon and the lattice path for posets.
    """

    def __init__(self, mode: str = "auto"):
        self.mode = mode

    def fit(self, X, y=None):
        obj = check_input(X)
        mode = self.mode
        if mode == "auto":
            if isinstance(obj, tuple):
                mode = "lattice"
            else:
                mode = "triangulation" if len(obj.outer_face) == 3 else "transversal"
        if mode == "lattice":
            if not isinstance(obj, tuple):
                raise ValueError("lattice mode needs a poset with realizer")
            self.layout_ = draw_lattice_few_lines(*obj)
        elif mode == "triangulation":
            self.layout_ = draw_4connected_triangulation(obj)
        elif mode == "transversal":
            self.layout_ = draw_transversal(obj)
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        self.mode_ = mode
        self.drawing_ = self.layout_.drawing
        self.vertices_ = sorted(self.drawing_.points)
        self.n_lines_ = self.drawing_.total_lines
        return self

    def transform(self, X=None) -> np.ndarray:
        """Vertex coordinates as floats, rows in ``vertices_`` order."""
        if not hasattr(self, "drawing_"):
            raise NotFittedError("call fit first")
        pts = self.drawing_.points
        return np.array([[float(pts[v][0]), float(pts[v][1])] for v in self.vertices_])

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).transform()
