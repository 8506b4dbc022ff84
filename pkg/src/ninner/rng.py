"""SplitMix64: a tiny, portable, seedable generator.

Every suite trial gets its own stream derived from ``(seed, trial)``, so
results do not depend on execution order or platform.
"""

from fractions import Fraction

from ninner.core import Vector, combination, is_linearly_dependent
from ninner.errors import PreconditionError
from ninner.scalar import EXACT

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

MAX_REDRAWS = 100


def _mix(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed=0, stream=0):
        seed &= MASK64
        self.state = _mix((seed + GOLDEN * (stream + 1)) & MASK64) if stream else seed

    def next_u64(self):
        self.state = (self.state + GOLDEN) & MASK64
        return _mix(self.state)

    def randbelow(self, n):
        """Uniform integer in [0, n) by rejection, free of modulo bias."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, lo, hi):
        """Uniform integer in [lo, hi]."""
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randbelow(len(seq))]

    def shuffle(self, items):
        items = list(items)
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def rational(self, max_num=9, max_den=9):
        return Fraction(self.randint(-max_num, max_num), self.randint(1, max_den))

    def nonzero_rational(self, max_num=9, max_den=9):
        while True:
            q = self.rational(max_num, max_den)
            if q:
                return q

    def scalar(self, mode):
        q = self.rational()
        return q if mode == EXACT else float(q)

    def vector(self, dim, mode=EXACT):
        return Vector._raw([self.scalar(mode) for _ in range(dim)], mode)

    def nonzero_vector(self, dim, mode=EXACT):
        for _ in range(MAX_REDRAWS):
            v = self.vector(dim, mode)
            if not v.is_zero():
                return v
        raise PreconditionError("could not draw a nonzero vector")

    def independent(self, space, k):
        """Draw ``k`` linearly independent vectors, redrawing degenerate tuples."""
        if k > space.dim:
            raise PreconditionError(f"cannot draw {k} independent vectors in dimension {space.dim}")
        for _ in range(MAX_REDRAWS):
            vs = [self.vector(space.dim, space.mode) for _ in range(k)]
            if not is_linearly_dependent(space, vs):
                return vs
        raise PreconditionError(f"no independent {k}-tuple after {MAX_REDRAWS} redraws")

    def in_span(self, vectors, mode=EXACT):
        """Random rational combination of ``vectors``."""
        return combination([self.scalar(mode) for _ in vectors], vectors)


def trial_rng(seed, trial):
    """Independent stream for one trial of a seeded suite."""
    return SplitMix64(seed, stream=trial + 1)
