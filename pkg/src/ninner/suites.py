"""Seeded randomized identity suites driven by ``ninner verify``.

Every check draws its trials from an independent SplitMix64 stream keyed by
``(seed, check name, trial index)``, so a run is reproducible byte for byte
and trials could be evaluated in any order.
"""

import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ninner import applications as apps
from ninner import dodgson
from ninner.core import InnerSpace, SquareMatrix, determinant, norm_squared
from ninner.errors import InternalConsistencyError, NInnerError, SingularSystemError
from ninner.products import (
    ITERATED,
    ConditionedPair,
    _iterated,
    _standard,
    _standard_scale,
    axiom_check,
    iterated_scale,
    representation_report,
    schwarz_equality,
    schwarz_gap,
)
from ninner.rng import trial_rng
from ninner.scalar import DEFAULT_TOL, EXACT

SUITES = ("axioms", "schwarz", "representation", "scaling", "dodgson", "gram", "chebyshev")
ALL = "all"

COUNTEREXAMPLE_TRIPLE = ((1, 0, 0), (1, 1, 1), (2, 1, 2))


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = ALL
    dim: Optional[int] = None
    n: int = 3
    trials: int = 50
    seed: int = 0
    mode: str = EXACT
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.suite not in SUITES + (ALL,):
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.dim is None:
            object.__setattr__(self, "dim", max(self.n, 2) + 1)
        # n = 0 is accepted for the dodgson suite, which only uses dim.
        if self.suite == "dodgson" and self.n == 0:
            pass
        elif not 2 <= self.n <= 8:
            raise ValueError("n must be between 2 and 8")
        elif self.dim < self.n:
            raise ValueError("dim must be >= n so independent conditioners exist")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class CheckOutcome:
    suite: str
    name: str
    trials: int
    passed: int
    expect_fail: bool = False
    witness: Optional[dict] = None

    @property
    def ok(self):
        if self.expect_fail:
            return self.witness is not None
        return self.passed == self.trials


@dataclass
class SuiteRun:
    config: SuiteConfig
    checks: List[CheckOutcome] = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)


def _stream_seed(seed, name):
    return (seed ^ (zlib.crc32(name.encode()) * 0x9E3779B1)) & ((1 << 64) - 1)


def _run(suite, name, cfg, trial):
    """Run ``trial(rng)`` for every trial; it returns None or a witness dict."""
    base = _stream_seed(cfg.seed, f"{suite}/{name}")
    passed = 0
    first = None
    for t in range(cfg.trials):
        rng = trial_rng(base, t)
        try:
            w = trial(rng)
        except (InternalConsistencyError, NInnerError) as exc:
            w = {"error": f"{type(exc).__name__}: {exc}"}
        if w is None:
            passed += 1
        elif first is None:
            first = dict(w, trial=t)
    return CheckOutcome(suite, name, cfg.trials, passed, witness=first)


def _zero(cfg, r, scale):
    if cfg.mode == EXACT:
        return r == 0
    return abs(r) <= cfg.tol * max(float(scale), 1e-300)


def _nonneg(cfg, r, scale):
    if cfg.mode == EXACT:
        return r >= 0
    return r >= -cfg.tol * max(float(scale), 1e-300)


def _fail(**kw):
    return kw


def _space(cfg, dim=None):
    return InnerSpace.euclidean(dim or cfg.dim, cfg.mode)


def _norms(space, *vs):
    out = 1.0
    for v in vs:
        out *= max(float(norm_squared(space, v)), 1e-300)
    return out


# --- axioms ---------------------------------------------------------------


def suite_axioms(cfg):
    space = _space(cfg)
    base = _stream_seed(cfg.seed, "axioms")
    out = []
    plan = [(a, "standard") for a in ("I1", "I2", "I3", "I4", "I5", "I6")]
    plan += [(a, ITERATED) for a in ("P1", "P2", "P3", "P4", "P5", "C1", "C2", "C3", "C4")]
    for axiom, target in plan:
        rep = axiom_check(space, axiom, cfg.trials, _stream_seed(base, axiom), cfg.n, target, tol=cfg.tol)
        passed = rep.trials if rep.passed else rep.trials - 1
        out.append(CheckOutcome("axioms", f"{axiom}/{target}", rep.trials, passed, witness=rep.witness))

    # I2 fails for the iterated product once n >= 3.
    fixtures = ()
    if cfg.n == 3 and cfg.dim >= 3:
        pad = (0,) * (cfg.dim - 3)
        fixtures = ([space.vector(v + pad) for v in COUNTEREXAMPLE_TRIPLE],)
    rep = axiom_check(space, "I2", cfg.trials, _stream_seed(base, "I2/iterated"), cfg.n, ITERATED,
                      fixtures=fixtures, tol=cfg.tol)
    passed = rep.trials if rep.passed else rep.trials - 1
    out.append(CheckOutcome("axioms", "I2/iterated", rep.trials, passed, expect_fail=cfg.n >= 3, witness=rep.witness))
    return out


# --- Schwarz --------------------------------------------------------------


def suite_schwarz(cfg):
    space = _space(cfg)
    k = cfg.n - 1

    def gap_nonneg(rng):
        conds = [rng.vector(space.dim, space.mode) for _ in range(k)]
        x, y = rng.vector(space.dim, space.mode), rng.vector(space.dim, space.mode)
        p = ConditionedPair(x, y, conds)
        gap = schwarz_gap(space, p)
        scale = iterated_scale(space, x, x, conds) * iterated_scale(space, y, y, conds)
        return None if _nonneg(cfg, gap, scale) else _fail(vectors=[x, y, *conds], gap=gap)

    def cheb_gap(rng):
        conds = [rng.nonzero_vector(space.dim, space.mode) for _ in range(k)]
        x, y = rng.vector(space.dim, space.mode), rng.vector(space.dim, space.mode)
        p = ConditionedPair(x, y, conds)
        gap = apps.n_chebyshev_schwarz_gap(space, p, cfg.tol)
        scale = iterated_scale(space, x, x, conds) * iterated_scale(space, y, y, conds)
        return None if _nonneg(cfg, gap, scale) else _fail(vectors=[x, y, *conds], gap=gap)

    def equality(rng):
        conds = rng.independent(space, k)
        x = rng.vector(space.dim, space.mode)
        mu = abs(rng.rational())
        if space.mode != EXACT:
            mu = float(mu)
        y = x * mu + rng.in_span(conds, space.mode)
        p = ConditionedPair(x, y, conds)
        gap = schwarz_gap(space, p)
        eq = schwarz_equality(space, p, cfg.tol)
        scale = iterated_scale(space, x, x, conds) * iterated_scale(space, y, y, conds)
        if _zero(cfg, gap, scale) and eq.holds:
            return None
        return _fail(vectors=[x, y, *conds], mu=mu, gap=gap, detected=eq)

    return [
        _run("schwarz", "gap_nonnegative", cfg, gap_nonneg),
        _run("schwarz", "n_chebyshev_gap_nonnegative", cfg, cheb_gap),
        _run("schwarz", "equality_case", cfg, equality),
    ]


# --- representation -------------------------------------------------------


def suite_representation(cfg):
    space = _space(cfg)
    k = cfg.n - 1

    def draw(rng):
        return [rng.vector(space.dim, space.mode) for _ in range(k + 2)]

    def representation(rng):
        x, y, *conds = draw(rng)
        rep = representation_report(space, ConditionedPair(x, y, conds), cfg.tol)
        return None if rep is not None else _fail(vectors=[x, y, *conds])

    def bridge(rng):
        x, y, *conds = draw(rng)
        r = dodgson.representation_bridge_check(space, ConditionedPair(x, y, conds))
        scale = _standard_scale(space, x, y, conds) * _norms(space, *conds[1:]) * 4
        return None if _zero(cfg, r, scale) else _fail(vectors=[x, y, *conds], residual=r)

    def permutation(rng):
        x, y, *conds = draw(rng)
        a = _standard(space, x, y, conds)
        b = _standard(space, x, y, rng.shuffle(conds))
        return None if _zero(cfg, a - b, _standard_scale(space, x, y, conds)) else _fail(vectors=[x, y, *conds], value=a, permuted=b)

    out = [_run("representation", "iterated_equals_e_times_standard", cfg, representation)]
    if k >= 2:
        out.append(_run("representation", "bridge_identity", cfg, bridge))
    out.append(_run("representation", "standard_permutation_invariance", cfg, permutation))
    return out


# --- scaling and norm identities ------------------------------------------


def suite_scaling(cfg):
    space = _space(cfg)
    k = cfg.n - 1
    mode = space.mode

    def vecs(rng, m):
        return [rng.vector(space.dim, mode) for _ in range(m)]

    def scaling_law(rng):
        x, y, *conds = vecs(rng, k + 2)
        t = rng.nonzero_rational()
        if mode != EXACT:
            t = float(t)
        lhs = _iterated(space, x * t, y * t, [c * t for c in conds])
        rhs = t ** (1 << cfg.n) * _iterated(space, x, y, conds)
        scale = iterated_scale(space, x, y, conds) * abs(t) ** (1 << cfg.n)
        return None if _zero(cfg, lhs - rhs, scale) else _fail(vectors=[x, y, *conds], t=t, lhs=lhs, rhs=rhs)

    def parallelogram(rng):
        v, w, *conds = vecs(rng, k + 2)
        s = lambda a: _standard(space, a, a, conds)  # noqa: E731
        r = s(v + w) + s(v - w) - 2 * s(v) - 2 * s(w)
        scale = 8 * _norms(space, v + w, *conds) + 8 * _norms(space, v - w, *conds)
        return None if _zero(cfg, r, scale) else _fail(vectors=[v, w, *conds], residual=r)

    def polarization(rng):
        v, w, *conds = vecs(rng, k + 2)
        s = lambda a: _standard(space, a, a, conds)  # noqa: E731
        r = s(v + w) - s(v - w) - 4 * _standard(space, v, w, conds)
        scale = 8 * _norms(space, v + w, *conds) + 8 * _norms(space, v - w, *conds)
        return None if _zero(cfg, r, scale) else _fail(vectors=[v, w, *conds], residual=r)

    def annihilation(rng):
        y, *conds = vecs(rng, k + 1)
        x = rng.in_span(conds, mode)
        val = _iterated(space, x, y, conds)
        return None if _zero(cfg, val, iterated_scale(space, x, y, conds)) else _fail(vectors=[x, y, *conds], value=val)

    def quotient(rng):
        x, y, *conds = vecs(rng, k + 2)
        x2 = x + rng.in_span(conds, mode)
        y2 = y + rng.in_span(conds, mode)
        a = _iterated(space, x, y, conds)
        b = _iterated(space, x2, y2, conds)
        scale = iterated_scale(space, x2, y2, conds) + iterated_scale(space, x, y, conds)
        return None if _zero(cfg, a - b, scale) else _fail(vectors=[x, y, *conds], shifted=[x2, y2], value=a, shifted_value=b)

    return [
        _run("scaling", "scaling_law", cfg, scaling_law),
        _run("scaling", "parallelogram", cfg, parallelogram),
        _run("scaling", "polarization", cfg, polarization),
        _run("scaling", "span_annihilation", cfg, annihilation),
        _run("scaling", "quotient_invariance", cfg, quotient),
    ]


# --- Dodgson --------------------------------------------------------------


def random_matrix(rng, order, mode=EXACT, engineered=False):
    """Random rational matrix; ``engineered`` zeroes interior entries so condensation must fall back."""
    rows = [[rng.rational() for _ in range(order)] for _ in range(order)]
    if engineered and order >= 3:
        rows[1][1] = Fraction(0)
        i = 1 + rng.randbelow(order - 2)
        j = 1 + rng.randbelow(order - 2)
        rows[i][j] = Fraction(0)
        if order >= 4 and rng.randbelow(2):
            # Rank-deficient interior block: row 2 copies row 1 on the interior columns.
            for c in range(1, order - 1):
                rows[2][c] = rows[1][c]
    if mode != EXACT:
        rows = [[float(v) for v in r] for r in rows]
    return SquareMatrix(order, tuple(v for r in rows for v in r), mode)


def _hadamard(m):
    out = 1.0
    for r in m.rows():
        out *= math.sqrt(sum(float(v) ** 2 for v in r)) or 1.0
    return out


def dodgson_orders(cfg):
    return list(range(3, max(3, cfg.dim) + 1))


def suite_dodgson(cfg):
    out = []
    for order in dodgson_orders(cfg):
        def check(rng, order=order):
            m = random_matrix(rng, order, cfg.mode, engineered=rng.randbelow(4) == 0)
            h = _hadamard(m)
            r40 = dodgson.dodgson_residual_e40(m)
            r41 = dodgson.dodgson_residual_e41(m)
            cond = dodgson.condensation_determinant(m)
            det = determinant(m)
            scale = h * h * 4
            ok = _zero(cfg, r40, scale) and _zero(cfg, r41, scale) and _zero(cfg, cond - det, h)
            if ok:
                return None
            return _fail(matrix=m, e40=r40, e41=r41, condensation=cond, determinant=det)

        out.append(_run("dodgson", f"order_{order}", cfg, check))
    return out


# --- Gram relations and regression ---------------------------------------


def random_dataset(rng, n=8, mode=EXACT):
    cols = [[rng.rational() for _ in range(n)] for _ in range(3)]
    if mode != EXACT:
        cols = [[float(v) for v in c] for c in cols]
    return apps.Dataset(*cols, mode=mode)


def suite_gram(cfg):
    """Gram-determinant identities, the Lupu gap and three-way regression agreement."""
    space = _space(cfg)
    mode = space.mode

    def vecs(rng, m):
        return [rng.vector(space.dim, mode) for _ in range(m)]

    def lupu(rng):
        x, w, z = vecs(rng, 3)
        gap = apps.lupu_gap(space, x, w, z, cfg.tol)
        return None if _nonneg(cfg, gap, 8 * _norms(space, x, w, z)) else _fail(vectors=[x, w, z], gap=gap)

    def residual_check(fn, m, degree_vectors):
        def check(rng):
            vs = vecs(rng, m)
            r = fn(space, *vs)
            scale = 64 * _norms(space, *[vs[i] for i in degree_vectors])
            return None if _zero(cfg, r, scale) else _fail(vectors=vs, residual=r)

        return check

    def regression(rng):
        ds = random_dataset(rng, 8, mode)
        try:
            fits = apps.fit_all(ds, cfg.tol)
        except SingularSystemError:
            return None
        ref = fits[apps.NORMAL_EQUATIONS]
        for f in fits.values():
            if not apps.fits_agree(f, ref, mode, cfg.tol):
                return _fail(dataset=[ds.x, ds.y, ds.z], fits=fits)
        return None

    return [
        _run("gram", "lupu_nonnegative", cfg, lupu),
        _run("gram", "two_level", cfg, residual_check(apps.two_level_residual, 3, (0, 0, 1, 2, 2))),
        _run("gram", "lupu_product", cfg, residual_check(apps.lupu_product_residual, 3, (0, 1, 2, 2))),
        _run("gram", "gram3", cfg, residual_check(apps.gram3_residual, 3, (0, 1, 2, 2))),
        _run("gram", "nested4", cfg, residual_check(apps.nested4_residual, 5, (0, 1, 2, 3, 3, 4, 4, 4, 4))),
        _run("gram", "nested4_gram_form", cfg, residual_check(lambda s, x, v, w, z: apps.nested4_residual(s, x, x, v, w, z), 4, (0, 1, 2, 2, 3, 3, 3, 3))),
        _run("gram", "gram4", cfg, residual_check(apps.gram4_residual, 4, (0, 1, 2, 2, 3, 3, 3, 3))),
        _run("gram", "gram_swap", cfg, residual_check(apps.gram_swap_residual, 3, (0, 1, 2, 1, 2))),
        _run("gram", "gram_wrt", cfg, residual_check(apps.gram_wrt_residual, 4, (0, 1, 2, 3, 3, 3, 3))),
        _run("gram", "regression_agreement", cfg, regression),
    ]


# --- Chebyshev ------------------------------------------------------------


def suite_chebyshev(cfg):
    space = _space(cfg)
    k = cfg.n - 1
    mode = space.mode

    def two(rng):
        x, y = rng.vector(space.dim, mode), rng.vector(space.dim, mode)
        z = rng.nonzero_vector(space.dim, mode)
        apps.chebyshev(space, x, y, z, cfg.tol)
        return None

    def nfold(rng):
        x, y = rng.vector(space.dim, mode), rng.vector(space.dim, mode)
        conds = [rng.nonzero_vector(space.dim, mode) for _ in range(k)]
        apps.n_chebyshev(space, ConditionedPair(x, y, conds), cfg.tol)
        return None

    return [
        _run("chebyshev", "chebyshev_is_2_inner", cfg, two),
        _run("chebyshev", "n_chebyshev_is_iterated", cfg, nfold),
    ]


RUNNERS = {
    "axioms": suite_axioms,
    "schwarz": suite_schwarz,
    "representation": suite_representation,
    "scaling": suite_scaling,
    "dodgson": suite_dodgson,
    "gram": suite_gram,
    "chebyshev": suite_chebyshev,
}


def run(cfg):
    names = SUITES if cfg.suite == ALL else (cfg.suite,)
    result = SuiteRun(cfg)
    for name in names:
        result.checks.extend(RUNNERS[name](cfg))
    return result


__all__ = ["SuiteConfig", "CheckOutcome", "SuiteRun", "SUITES", "run", "random_matrix", "random_dataset"]
