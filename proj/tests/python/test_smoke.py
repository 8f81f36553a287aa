import math
from fractions import Fraction

import numpy as np
import pytest

import bernpos


def test_binomial_exact():
    assert bernpos.binomial(60, 30) == 118264581564861424
    assert bernpos.binomial(4, 2) == 6


def test_local_scale():
    assert bernpos.delta_n(100, 0.1) == pytest.approx(0.03)
    assert bernpos.Delta_n(100, 0.0001) == pytest.approx(0.01)


def test_second_moment_is_exact():
    # T_{n,2} = n x (1 - x)
    coeffs = [Fraction(c) for c in bernpos.central_moment_coeffs(7, 2)]
    assert coeffs[:3] == [0, 7, -7]


def test_quadratic_reproduced():
    p = bernpos.approximate("quadratic_shifted", d=1, n=[10], r=2)
    assert p.degree == [12]
    for x in np.linspace(0, 1, 21):
        assert p([x]) == pytest.approx(1 + x * (1 - x), abs=1e-12)
    assert p.min_coefficient() >= 1.0


def test_tensor_shape_and_round_trip():
    p = bernpos.approximate("smooth_bump", d=2, n=[6, 9], r=3)
    assert p.coeffs.shape == (10, 13)
    q = bernpos.Bernstein.from_text(p.to_text())
    assert np.array_equal(q.coeffs, p.coeffs)
    assert p([0.0, 1.0]) == pytest.approx(0.5, abs=1e-12)


def test_reports():
    rep = bernpos.verify("smooth_bump", d=1, r=0)
    assert rep["violations"] == []
    assert rep["max_ratio"] <= 1.05
    pos = bernpos.positivity("quadratic_shifted", r=2, n_max=40)
    assert pos["threshold"] is not None
    lem = bernpos.lemma_check(n_max=40, s_max=4, grid=51)
    assert not lem["has_violations"]


def test_errors():
    with pytest.raises(IndexError):
        bernpos.approximate("no_such_function")
    with pytest.raises(ValueError):
        bernpos.approximate("smooth_bump", backend="exact")
    assert "runge_shifted" in bernpos.builtin_names()
    assert math.isfinite(bernpos.abs_moment_scaled(10, 3, 0.3))
