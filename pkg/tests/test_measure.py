"""Measure container tests: canonical atoms, two-point family, grids."""

import math
import random
from fractions import Fraction

import pytest

from maxwass.geometry import DiagonalLine, L_MINUS, L_PLUS, Point2
from maxwass.measure import (
    DiscreteMeasure,
    GridMeasure,
    KloecknerParam,
    family_grid,
    in_family_F,
    kloeckner_measure,
    kloeckner_recover,
    phi_star,
    phi_t,
    push_forward,
)
from maxwass.scalars import ConstraintError, ParseError

F = Fraction


def test_atoms_canonicalized_sorted_and_merged():
    mu = DiscreteMeasure(
        [
            (Point2(F(1), F(0)), F(1, 4)),
            (Point2(F(0), F(0)), F(1, 4)),
            (Point2(F(1), F(0)), F(1, 2)),
        ]
    )
    assert mu.atoms == (
        (Point2(F(0), F(0)), F(1, 4)),
        (Point2(F(1), F(0)), F(3, 4)),
    )


def test_zero_weights_dropped_negative_rejected():
    mu = DiscreteMeasure(
        [(Point2(F(0), F(0)), F(1)), (Point2(F(1), F(1)), F(0))]
    )
    assert mu.support_size == 1
    with pytest.raises(ConstraintError):
        DiscreteMeasure(
            [(Point2(F(0), F(0)), F(3, 2)), (Point2(F(1), F(1)), F(-1, 2))]
        )


def test_mass_must_be_one():
    with pytest.raises(ConstraintError):
        DiscreteMeasure([(Point2(F(0), F(0)), F(1, 2))])


def test_square_mode_validation():
    DiscreteMeasure([(Point2(F(1), F(-1)), F(1))], square_mode=True)
    with pytest.raises(ConstraintError):
        DiscreteMeasure([(Point2(F(5, 4), F(0)), F(1))], square_mode=True)


def test_json_round_trip_preserves_exactness():
    mu = DiscreteMeasure(
        [
            (Point2(F(1, 3), F(-2, 7)), F(1, 6)),
            (Point2(F(0), F(2)), F(5, 6)),
        ]
    )
    again = DiscreteMeasure.from_json_dict(mu.to_json_dict())
    assert again == mu and again.exact


def test_from_json_dict_errors_are_parse_errors():
    with pytest.raises(ParseError):
        DiscreteMeasure.from_json_dict({"not-atoms": []})
    with pytest.raises(ParseError):
        DiscreteMeasure.from_json_dict({"atoms": [{"x": [0]}]})


def test_push_forward_merges_collisions():
    mu = DiscreteMeasure(
        [(Point2(F(-1), F(0)), F(1, 2)), (Point2(F(1), F(0)), F(1, 2))]
    )
    eta = push_forward(lambda x: Point2(abs(x.x1), x.x2), mu)
    assert eta.atoms == ((Point2(F(1), F(0)), F(1)),)


def test_kloeckner_measure_exact_atoms():
    """u = e^r = 2: weights 1/5 at m - sigma*u and 4/5 at m + sigma/u."""
    mu = kloeckner_measure(KloecknerParam(0, 1, math.log(2)), exp_r=F(2))
    assert mu.atoms == (
        (Point2(F(-2), F(-2)), F(1, 5)),
        (Point2(F(1, 2), F(1, 2)), F(4, 5)),
    )
    assert mu.supported_on(L_PLUS)


def test_kloeckner_balanced_case():
    mu = kloeckner_measure(KloecknerParam(F(1, 2), F(3, 2), 0), exp_r=F(1))
    assert mu.atoms == (
        (Point2(F(-1), F(-1)), F(1, 2)),
        (Point2(F(2), F(2)), F(1, 2)),
    )


def test_kloeckner_sigma_zero_is_dirac():
    mu = kloeckner_measure(KloecknerParam(F(3), 0, 0), exp_r=F(1))
    assert mu.is_dirac and mu.points()[0] == Point2(F(3), F(3))


def test_kloeckner_recover_round_trip():
    param = KloecknerParam(0, 1, math.log(2))
    mu = kloeckner_measure(param, exp_r=F(2))
    back = kloeckner_recover(mu)
    assert back.m == pytest.approx(0.0)
    assert back.sigma == pytest.approx(1.0)
    assert back.r == pytest.approx(math.log(2))


def test_phi_star_and_phi_t_act_on_r():
    param = KloecknerParam(F(1), F(2), 0.25)
    assert phi_star(param).r == -0.25
    assert phi_t(param, 0.5).r == 0.75
    sigma0 = KloecknerParam(F(1), 0, 0)
    assert phi_t(sigma0, 3.0) == sigma0


def test_in_family_F_requires_distinct_weights():
    mu = DiscreteMeasure(
        [(Point2(F(0), F(0)), F(1, 2)), (Point2(F(3), F(1)), F(1, 2))]
    )
    assert not in_family_F(mu)


def test_in_family_F_detects_projection_collision():
    """Two atoms on the main diagonal share their anti-diagonal
    projection (the origin), so no such measure is in general position."""
    mu = DiscreteMeasure(
        [(Point2(F(0), F(0)), F(1, 3)), (Point2(F(1), F(1)), F(2, 3))]
    )
    assert not in_family_F(mu)


def test_in_family_F_generic_example():
    mu = DiscreteMeasure(
        [
            (Point2(F(0), F(0)), F(1, 6)),
            (Point2(F(2), F(1)), F(1, 3)),
            (Point2(F(5), F(3)), F(1, 2)),
        ]
    )
    assert in_family_F(mu)


def test_family_grid_crossings():
    mu = DiscreteMeasure(
        [
            (Point2(F(0), F(0)), F(1, 3)),
            (Point2(F(2), F(0)), F(2, 3)),
        ]
    )
    assert in_family_F(mu)
    z = family_grid(mu)
    # t-params 0 and 1, s-params 0 and 1: crossings (t+s, t-s)
    assert z[0][0] == Point2(F(0), F(0))
    assert z[0][1] == Point2(F(1), F(-1))
    assert z[1][0] == Point2(F(1), F(1))
    assert z[1][1] == Point2(F(2), F(0))


def test_grid_measure_marginals_enforced():
    mu = DiscreteMeasure(
        [
            (Point2(F(0), F(0)), F(1, 3)),
            (Point2(F(2), F(0)), F(2, 3)),
        ]
    )
    w = mu.weights()
    GridMeasure(mu, [[w[0] * w[0], w[0] * w[1]], [w[1] * w[0], w[1] * w[1]]])
    with pytest.raises(ConstraintError):
        # row sums 1/2, 1/2 do not match the base weights 1/3, 2/3
        GridMeasure(mu, [[F(1, 2), F(0)], [F(0), F(1, 2)]])


def test_grid_measure_to_measure_and_gap():
    mu = DiscreteMeasure(
        [
            (Point2(F(0), F(0)), F(1, 3)),
            (Point2(F(2), F(0)), F(2, 3)),
        ]
    )
    w = mu.weights()
    xi = GridMeasure(mu, [[w[0] * w[0], w[0] * w[1]], [w[1] * w[0], w[1] * w[1]]])
    measure = xi.to_measure()
    assert measure.support_size == 4
    assert xi.min_grid_gap() == 1
    again = GridMeasure.from_json_dict(xi.to_json_dict())
    assert again.base == mu and again.weights == xi.weights


def test_diagonal_line_detection():
    mu = DiscreteMeasure(
        [(Point2(F(0), F(1)), F(1, 2)), (Point2(F(2), F(-1)), F(1, 2))]
    )
    line = mu.diagonal_line()
    assert line == DiagonalLine(-1, F(1))
    off = DiscreteMeasure(
        [(Point2(F(0), F(0)), F(1, 2)), (Point2(F(2), F(1)), F(1, 2))]
    )
    assert off.diagonal_line() is None


def test_float_measures_not_exact():
    mu = DiscreteMeasure([(Point2(0.5, 0.25), 1.0)])
    assert not mu.exact
    assert mu.is_dirac