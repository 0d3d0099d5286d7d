import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from conftest import red_poset_of
from fewlines.estimator import FewLinesLayout, check_input
from fewlines.graph import octahedron, pyr5


def test_fit_transform_pyr5():
    est = FewLinesLayout()
    X = est.fit_transform(pyr5())
    assert est.mode_ == "transversal" and est.n_lines_ == 2
    assert est.vertices_ == sorted("satbv")
    assert X.shape == (5, 2) and X.dtype == np.float64
    assert X[est.vertices_.index("v")].tolist() == [1.0, 1.0]


def test_auto_modes():
    assert FewLinesLayout().fit(octahedron()).mode_ == "triangulation"
    assert FewLinesLayout().fit(red_poset_of(pyr5())).mode_ == "lattice"


def test_json_and_dict_input():
    g = pyr5()
    a = FewLinesLayout().fit(g.to_json()).transform()
    b = FewLinesLayout().fit(g.to_dict()).transform()
    assert np.array_equal(a, b)
    p, r = red_poset_of(g)
    assert FewLinesLayout().fit(p.to_dict(r)).n_lines_ == 2


def test_params_and_clone():
    est = FewLinesLayout(mode="lattice")
    assert est.get_params() == {"mode": "lattice"}
    est.set_params(mode="auto")
    c = clone(est)
    assert c.mode == "auto" and not hasattr(c, "drawing_")


def test_errors():
    with pytest.raises(NotFittedError):
        FewLinesLayout().transform()
    with pytest.raises(ValueError):
        FewLinesLayout(mode="bogus").fit(pyr5())
    with pytest.raises(ValueError):
        FewLinesLayout(mode="lattice").fit(pyr5())
    with pytest.raises(TypeError):
        check_input(42)
    p, _ = red_poset_of(pyr5())
    with pytest.raises(ValueError):
        check_input(p.to_dict())
