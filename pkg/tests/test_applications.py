from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ninner import (
    NORMAL_EQUATIONS,
    STATISTICS_FORM,
    VECTOR_CRAMER,
    ConditionedPair,
    Dataset,
    InnerSpace,
    Vector,
    chebyshev,
    covariance,
    two_level_residual,
    lupu_product_residual,
    gram3_residual,
    nested4_residual,
    gram4_residual,
    fit_all,
    fit_dataset_vector_method,
    fit_normal_equations,
    fit_statistics_form,
    fit_vector_method,
    gram_determinant,
    gram_swap_residual,
    gram_wrt,
    gram_wrt_residual,
    iterated_2_inner,
    lupu_gap,
    mean,
    n_chebyshev,
    n_chebyshev_schwarz_gap,
    stddev,
    variance,
)
from ninner.errors import CollinearError, PreconditionError, SingularSystemError
from ninner.rng import SplitMix64
from ninner.scalar import FLOAT
from ninner.suites import random_dataset

small = st.fractions(min_value=-9, max_value=9, max_denominator=6)


def vecs(dim, count):
    return st.lists(st.lists(small, min_size=dim, max_size=dim), min_size=count, max_size=count)


def test_lupu_triple(space3, triple):
    x, u, v = triple
    assert lupu_gap(space3, x, u, v) == 1


def test_lupu_coplanar_zero(space3):
    x, w = space3.vector([1, 2, 0]), space3.vector([0, 1, 0])
    assert lupu_gap(space3, x, w, x + w * 3) == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 5).flatmap(lambda d: vecs(d, 5)))
def test_gram_identities(vs):
    s = InnerSpace.euclidean(len(vs[0]))
    x, y, v, w, z = [Vector(c) for c in vs]
    assert lupu_gap(s, x, w, z) >= 0
    assert two_level_residual(s, x, w, z) == 0
    assert lupu_product_residual(s, x, w, z) == 0
    assert gram3_residual(s, x, w, z) == 0
    assert nested4_residual(s, x, y, v, w, z) == 0
    assert gram4_residual(s, x, v, w, z) == 0
    assert gram_swap_residual(s, x, w, z) == 0
    assert gram_wrt_residual(s, x, w, v, z) == 0


def test_gram3_against_oracle(space3, triple):
    x, u, v = triple
    assert iterated_2_inner(space3, ConditionedPair(x, x, [u, v])) == oracles.gram([x.coords, u.coords, v.coords]) * 9


def test_gram_wrt_printed_form_fails():
    # Dropping z from the right-hand Gram determinant is not an identity.
    s = InnerSpace.euclidean(4)
    x, w, v, z = (s.vector(c) for c in ((1, 2, 0, 1), (0, 1, 3, 1), (2, 0, 1, 1), (1, 1, 1, 1)))
    zz = 4
    lhs = gram_wrt(s, [x, w, v], z)
    assert lhs == 16
    assert gram_determinant(s, [x, w, v]) * zz * zz == 3504
    assert lhs == gram_determinant(s, [x, w, v, z]) * zz * zz
    assert gram_wrt_residual(s, x, w, v, z) == 0


def test_gram_wrt_printed_form_holds_for_orthogonal_unit_z():
    s = InnerSpace.euclidean(4)
    x, w, v, z = (s.vector(c) for c in ((1, 2, 0, 0), (0, 1, 3, 0), (2, 0, 1, 0), (0, 0, 0, 1)))
    assert gram_wrt(s, [x, w, v], z) == gram_determinant(s, [x, w, v])


# --- regression -----------------------------------------------------------


def synthetic(mode="exact"):
    xs = [1, 0, 2, 5, 3, -1]
    ys = [0, 1, 3, 1, -2, 4]
    zs = [2 * a + 3 * b + 5 for a, b in zip(xs, ys)]
    if mode == FLOAT:
        xs, ys, zs = ([float(v) for v in c] for c in (xs, ys, zs))
    return Dataset(xs, ys, zs, mode=mode)


def test_synthetic_all_methods():
    for fit in fit_all(synthetic()).values():
        assert fit.coefficients == (2, 3, 5)
        assert fit.residual_sum_squares == 0


def test_synthetic_float():
    for fit in fit_all(synthetic(FLOAT)).values():
        assert all(abs(a - b) < 1e-9 for a, b in zip(fit.coefficients, (2, 3, 5)))


def test_regression_matches_oracle():
    rng = SplitMix64(21)
    for _ in range(30):
        ds = random_dataset(rng, 8)
        ref = oracles.least_squares(ds.x, ds.y, ds.z)
        fits = fit_all(ds)
        for f in fits.values():
            assert list(f.coefficients) == ref
        assert set(fits) == {VECTOR_CRAMER, STATISTICS_FORM, NORMAL_EQUATIONS}


def test_float_regression_agrees_with_exact():
    rng = SplitMix64(22)
    for _ in range(20):
        ds = random_dataset(rng, 8)
        fds = Dataset([float(v) for v in ds.x], [float(v) for v in ds.y], [float(v) for v in ds.z], mode=FLOAT)
        exact = fit_normal_equations(ds).coefficients
        for f in fit_all(fds).values():
            for p, q in zip(f.coefficients, exact):
                assert abs(p - float(q)) <= 1e-9 * max(1.0, abs(float(q)))


def test_collinear():
    ds = Dataset([1, 2, 3, 4], [1, 2, 3, 4], [3, 1, 4, 1])
    for fn in (fit_normal_equations, fit_statistics_form, fit_dataset_vector_method):
        with pytest.raises(SingularSystemError):
            fn(ds)
    fds = Dataset([1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0], mode=FLOAT)
    with pytest.raises(CollinearError) as info:
        fit_statistics_form(fds)
    assert info.value.witness is not None


def test_vector_method_c_formula_with_norm_factor():
    # Non-unit e exercises the ||e||^2 / ||y||^2 factors in the c formula.
    s = InnerSpace.euclidean(4)
    rng = SplitMix64(8)
    for _ in range(20):
        x, y, e, w = (rng.vector(4) for _ in range(4))
        try:
            fit = fit_vector_method(s, x, y, e, w)
        except SingularSystemError:
            continue
        cols = [x, y, e]
        ata = [[sum(p * q for p, q in zip(a.coords, b.coords)) for b in cols] for a in cols]
        atw = [sum(p * q for p, q in zip(a.coords, w.coords)) for a in cols]
        assert list(fit.coefficients) == oracles.gauss_jordan_solve(ata, atw)


def test_statistics():
    assert mean([1, 2, 3]) == 2
    assert variance([1, 2, 3]) == Fraction(2, 3)
    assert covariance([1, 2, 3], [3, 2, 1]) == Fraction(-2, 3)
    assert stddev([1, 3]).value == 1
    assert abs(variance([1.0, 2.0, 3.0]) - 2 / 3) < 1e-15


# --- Chebyshev ------------------------------------------------------------


def test_chebyshev_value(space3):
    x, y, z = (space3.vector(c) for c in ((1, 0, 0), (0, 1, 0), (1, 1, 0)))
    assert chebyshev(space3, x, y, z) == -1


def test_n_chebyshev(space3, triple):
    x, u, v = triple
    assert n_chebyshev(space3, ConditionedPair(x, x, [u, v])) == 9
    assert n_chebyshev_schwarz_gap(space3, ConditionedPair(x, u, [v])) >= 0
    with pytest.raises(PreconditionError):
        n_chebyshev(space3, ConditionedPair(x, x, [u, space3.zero_vector()]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: vecs(k + 1, k + 2)))
def test_n_chebyshev_gap(vs):
    s = InnerSpace.euclidean(len(vs[0]))
    x, y, *conds = [Vector(c) for c in vs]
    if any(c.is_zero() for c in conds):
        return
    assert n_chebyshev_schwarz_gap(s, ConditionedPair(x, y, conds)) >= 0
