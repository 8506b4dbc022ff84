import random
from fractions import Fraction

import pytest

import oracles
from ninner import (
    InnerSpace,
    SquareMatrix,
    Vector,
    combination,
    cramer_solve,
    determinant,
    gram_determinant,
    gram_matrix,
    hadamard_bound,
    inner_product,
    is_linearly_dependent,
    norm_squared,
    solve_consistent,
)
from ninner.errors import DimensionMismatchError, PreconditionError, SingularSystemError
from ninner.kernels import available_backends
from ninner.scalar import EXACT, FLOAT


def rand_rows(rng, n, lo=-9, hi=9):
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]


def test_vector_arithmetic():
    a = Vector([1, 2, 3])
    b = Vector(["1/2", 0, -1])
    assert (a + b).coords == (Fraction(3, 2), 2, 2)
    assert (a - b).coords == (Fraction(1, 2), 2, 4)
    assert (-a).coords == (-1, -2, -3)
    assert (a * Fraction(1, 2)).coords == (Fraction(1, 2), 1, Fraction(3, 2))
    assert (2 * a) == Vector([2, 4, 6])
    assert Vector.zeros(3).is_zero()
    assert Vector.basis(3, 1) == Vector([0, 1, 0])
    assert combination([1, 2], [a, b]) == a + b * 2


def test_vector_immutable_and_checked():
    a = Vector([1, 2])
    with pytest.raises(AttributeError):
        a.coords = (0, 0)
    with pytest.raises(DimensionMismatchError):
        a + Vector([1, 2, 3])
    with pytest.raises(TypeError):
        a + Vector([1.0, 2.0], FLOAT)
    with pytest.raises(TypeError):
        Vector([0.5])


@pytest.mark.parametrize("n", range(1, 7))
def test_determinant_matches_cofactor(n):
    rng = random.Random(n)
    for _ in range(20):
        rows = rand_rows(rng, n)
        assert determinant(SquareMatrix.from_rows(rows)) == oracles.cofactor_det(rows)


def test_determinant_leibniz_small():
    rng = random.Random(0)
    for n in range(1, 5):
        rows = rand_rows(rng, n)
        assert oracles.leibniz_det(rows) == oracles.cofactor_det(rows) == determinant(SquareMatrix.from_rows(rows))


def test_determinant_singular_and_swaps():
    m = SquareMatrix.from_rows([[0, 1, 2], [0, 3, 4], [5, 6, 7]])
    assert determinant(m) == oracles.cofactor_det(m.rows())
    assert determinant(SquareMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_determinant_float_close():
    rng = random.Random(3)
    rows = rand_rows(rng, 5)
    exact = determinant(SquareMatrix.from_rows(rows))
    approx = determinant(SquareMatrix.from_rows([[float(v) for v in r] for r in rows], FLOAT))
    assert abs(approx - float(exact)) <= 1e-9 * max(1.0, abs(float(exact)))


def test_square_matrix_validation():
    with pytest.raises(DimensionMismatchError):
        SquareMatrix.from_rows([[1, 2], [3]])
    m = SquareMatrix.from_rows([[1, 2], [3, 4]])
    assert m[1, 0] == 3
    assert m.transpose().rows() == [[1, 3], [2, 4]]
    assert not m.is_symmetric()


@pytest.mark.parametrize("backend", sorted(available_backends()))
def test_kernel_backends_match_oracle(backend):
    mod = available_backends()[backend]
    rng = random.Random(11)
    for n in range(0, 7):
        for _ in range(10):
            ints = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            assert mod.det_int(ints) == oracles.cofactor_det(ints)
            assert abs(mod.det_float(ints) - float(oracles.cofactor_det(ints))) <= 1e-9 * max(1, abs(float(oracles.cofactor_det(ints))))


@pytest.mark.parametrize("backend", sorted(available_backends()))
def test_elimination_kernel_is_nested_2x2(backend):
    # One elimination step on a Gram matrix gives the one-conditioner products.
    mod = available_backends()[backend]
    g = [[5, 2, 1], [2, 3, 4], [1, 4, 7]]
    out = mod.eliminate_object(g, 1)
    assert out == [[5 * 7 - 1 * 1, 2 * 7 - 1 * 4], [2 * 7 - 4 * 1, 3 * 7 - 4 * 4]]
    outf = mod.eliminate_float([[float(v) for v in r] for r in g], 1)
    assert outf == [[float(v) for v in r] for r in out]
    assert mod.eliminate_object(g, 0) == g


def test_inner_space_weighted():
    w = [[2, 1], [1, 3]]
    s = InnerSpace(2, w)
    x, y = s.vector([1, 2]), s.vector([3, -1])
    assert inner_product(s, x, y) == oracles.dot((1, 2), (3, -1), w)
    assert norm_squared(s, x) == oracles.dot((1, 2), (1, 2), w)
    assert not s.is_euclidean
    assert InnerSpace.euclidean(2).is_euclidean


@pytest.mark.parametrize("weight", [[[1, 2], [3, 4]], [[1, 2], [2, 1]], [[0, 0], [0, 1]]])
def test_inner_space_rejects_bad_weights(weight):
    with pytest.raises(PreconditionError):
        InnerSpace(2, weight)


def test_inner_space_checks_vectors():
    s = InnerSpace.euclidean(3)
    with pytest.raises(DimensionMismatchError):
        inner_product(s, Vector([1, 2]), Vector([1, 2]))
    with pytest.raises(DimensionMismatchError):
        s.check(Vector([1, 2]))


def test_gram():
    s = InnerSpace.euclidean(3)
    vs = [s.vector(v) for v in ((1, 0, 0), (1, 1, 1), (2, 1, 2))]
    assert gram_matrix(s, vs).rows()[1] == [1, 3, 5]
    assert gram_determinant(s, vs) == 1
    assert gram_determinant(s, vs) == oracles.gram([(1, 0, 0), (1, 1, 1), (2, 1, 2)])
    with pytest.raises(PreconditionError):
        gram_matrix(s, [])


def test_linear_dependence():
    s = InnerSpace.euclidean(3)
    a, b = s.vector([1, 2, 3]), s.vector([0, 1, 1])
    assert not is_linearly_dependent(s, [a, b])
    assert is_linearly_dependent(s, [a, b, a * 2 - b])
    assert is_linearly_dependent(s, [a, b, a, b])
    fs = InnerSpace.euclidean(3, FLOAT)
    fa, fb = fs.vector([1.0, 2.0, 3.0]), fs.vector([0.0, 1.0, 1.0])
    assert is_linearly_dependent(fs, [fa, fb, fa * 0.1 + fb * 3.0])
    assert not is_linearly_dependent(fs, [fa, fb])


def test_cramer_and_consistent():
    rows = [[2, 1], [1, 3]]
    sol = cramer_solve([[Fraction(v) for v in r] for r in rows], [Fraction(3), Fraction(5)], EXACT)
    assert sol == oracles.gauss_jordan_solve(rows, [3, 5])
    with pytest.raises(SingularSystemError) as info:
        cramer_solve([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(2)], EXACT)
    assert info.value.witness == 0
    f = [[Fraction(v) for v in r] for r in [[1, 2], [2, 4]]]
    sol = solve_consistent(f, [Fraction(3), Fraction(6)], EXACT)
    assert sol is not None and sol[0] + 2 * sol[1] == 3
    assert solve_consistent(f, [Fraction(3), Fraction(7)], EXACT) is None


def test_hadamard_bound():
    s = InnerSpace.euclidean(3)
    vs = [s.vector(v) for v in ((1, 0, 0), (1, 1, 1), (2, 1, 2))]
    assert float(hadamard_bound(s, vs)) >= abs(float(gram_determinant(s, vs))) ** 0.5
