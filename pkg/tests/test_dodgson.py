import random
from fractions import Fraction

import pytest

import oracles
from ninner import (
    ConditionedPair,
    InnerSpace,
    MinorSpec,
    SquareMatrix,
    condensation_determinant,
    condensation_report,
    dodgson_residual_e40,
    dodgson_residual_e41,
    minor,
    representation_bridge_check,
)
from ninner.errors import PreconditionError
from ninner.rng import SplitMix64
from ninner.scalar import FLOAT
from ninner.suites import random_matrix


def rand_matrix(rng, n):
    return SquareMatrix.from_rows([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)])


def test_minor_spec_validation():
    with pytest.raises(PreconditionError):
        MinorSpec((2, 1), (1, 2))
    with pytest.raises(PreconditionError):
        MinorSpec((1,), (1, 2))
    with pytest.raises(PreconditionError):
        MinorSpec((), ())
    m = SquareMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(PreconditionError):
        minor(m, MinorSpec((1, 3), (1, 2)))


def test_minor_matches_oracle():
    m = SquareMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert minor(m, MinorSpec((1, 3), (2, 3))) == oracles.cofactor_det(oracles.submatrix(m.rows(), (1, 3), (2, 3)))
    assert minor(m, MinorSpec((2,), (2,))) == 5


@pytest.mark.parametrize("order", range(3, 7))
def test_residuals_zero_random(order):
    rng = random.Random(order)
    for _ in range(25):
        m = rand_matrix(rng, order)
        assert dodgson_residual_e40(m) == 0
        assert dodgson_residual_e41(m) == 0
        assert condensation_determinant(m) == oracles.cofactor_det(m.rows())


def test_interior_identity_by_hand():
    # Order 3: a22 * det = M11 M33 - M13 M31 in corner-minor form.
    rows = [[2, 1, 3], [1, 4, 1], [5, 2, 2]]
    m = SquareMatrix.from_rows(rows)
    det = oracles.cofactor_det(rows)
    tl = oracles.cofactor_det(oracles.submatrix(rows, (1, 2), (1, 2)))
    br = oracles.cofactor_det(oracles.submatrix(rows, (2, 3), (2, 3)))
    tr = oracles.cofactor_det(oracles.submatrix(rows, (1, 2), (2, 3)))
    bl = oracles.cofactor_det(oracles.submatrix(rows, (2, 3), (1, 2)))
    assert 4 * det == tl * br - tr * bl
    assert dodgson_residual_e41(m) == 0


def test_order_too_small():
    with pytest.raises(PreconditionError):
        dodgson_residual_e40(SquareMatrix.from_rows([[1, 2], [3, 4]]))
    assert condensation_determinant(SquareMatrix.from_rows([[1, 2], [3, 4]])) == -2
    assert condensation_determinant(SquareMatrix.from_rows([[7]])) == 7


def test_condensation_zero_interior_rotates():
    rows = [[1, 2, 3], [4, 0, 6], [7, 8, 10]]
    rep = condensation_report(SquareMatrix.from_rows(rows))
    assert rep.value == oracles.cofactor_det(rows)
    assert rep.rotations >= 1 and not rep.fell_back


def test_condensation_falls_back():
    # Every cyclic row shift keeps a zero in an interior divisor position.
    rows = [[1, 0, 2, 3], [0, 0, 0, 1], [4, 0, 0, 5], [6, 0, 7, 8]]
    rep = condensation_report(SquareMatrix.from_rows(rows))
    assert rep.value == oracles.cofactor_det(rows)
    assert rep.fell_back and rep.rotations == 4


def test_engineered_corpus():
    rng = SplitMix64(17)
    rotations = 0
    for order in range(3, 7):
        for _ in range(40):
            m = random_matrix(rng, order, engineered=True)
            rep = condensation_report(m)
            assert rep.value == oracles.cofactor_det(m.rows())
            assert dodgson_residual_e40(m) == 0 and dodgson_residual_e41(m) == 0
            rotations += rep.rotations > 0
    assert rotations > 0


def test_float_condensation_tracks_near_cancellation():
    m = SquareMatrix(4, (-0.75, 0.0, -0.7777777777777778, -0.42857142857142855, -0.3333333333333333, 1.4, -0.4, 0.5,
                         -0.375, -3.5, 1.0, 0.8, 0.25, -0.8333333333333334, 3.0, 4.0), FLOAT)
    exact = SquareMatrix.from_rows([[Fraction(v).limit_denominator(100) for v in r] for r in m.rows()])
    rep = condensation_report(m)
    assert rep.fragile
    assert abs(rep.value - float(oracles.cofactor_det(exact.rows()))) < 1e-9


def test_bridge_identity(space3, triple):
    x, u, v = triple
    assert representation_bridge_check(space3, ConditionedPair(x, x, [u, v])) == 0
    rng = SplitMix64(4)
    s = InnerSpace.euclidean(5)
    for _ in range(20):
        vs = [rng.vector(5) for _ in range(5)]
        assert representation_bridge_check(s, ConditionedPair(vs[0], vs[1], vs[2:])) == 0
    with pytest.raises(PreconditionError):
        representation_bridge_check(space3, ConditionedPair(x, x, [u]))
