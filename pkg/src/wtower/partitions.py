"""Integer partitions and the Young-diagram statistics used throughout.

Partitions are tuples of weakly decreasing positive integers.  ``Partition``
is a thin ``tuple`` subclass so that plain tuples produced in hot loops and
``Partition`` instances hash and compare identically.
"""

from collections import Counter
from functools import lru_cache
from math import factorial


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self):
        return tuple(self)

    @property
    def n(self):
        return sum(self)

    def __repr__(self):
        return f"Partition({list(self)})"


def canonical(parts):
    """Sort an arbitrary multiset of positive integers into partition order."""
    return tuple(sorted(parts, reverse=True))


@lru_cache(maxsize=None)
def _enumerate(n, largest):
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _enumerate(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n):
    """All partitions of ``n`` in reverse lexicographic order.

    >>> enumerate_partitions(4)
    [Partition([4]), Partition([3, 1]), Partition([2, 2]), Partition([2, 1, 1]), Partition([1, 1, 1, 1])]
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _enumerate(n, n)]


def multiplicity(lam, k):
    if k < 1:
        raise ValueError("part size must be >= 1")
    return sum(1 for p in lam if p == k)


def multiplicities(lam):
    return Counter(lam)


@lru_cache(maxsize=None)
def z_factor(lam):
    """Centralizer order prod_k k^{m_k} m_k!."""
    z = 1
    for k, m in Counter(lam).items():
        z *= k**m * factorial(m)
    return z


def class_size(lam):
    """Number of permutations of cycle type ``lam`` in S_n."""
    return factorial(sum(lam)) // z_factor(tuple(lam))


def bump(lam, m):
    """Replace one part ``m`` of ``lam`` by ``m + 1``."""
    lam = tuple(lam)
    if m not in lam:
        raise ValueError(f"{list(lam)} has no part equal to {m}")
    parts = list(lam)
    parts.remove(m)
    parts.append(m + 1)
    return Partition(canonical(parts))


def conjugate(lam):
    lam = tuple(lam)
    if not lam:
        return Partition(())
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def boxes(lam):
    """Boxes (row, col) of the diagram, 1-based, row by row."""
    return [(i + 1, j + 1) for i, row in enumerate(lam) for j in range(row)]


def content_sum(lam):
    return sum(j - i for i, j in boxes(lam))


def arm_leg(lam, box):
    """Arm and leg lengths of ``box = (row, col)`` inside ``lam``."""
    lam = tuple(lam)
    row, col = box
    if row < 1 or row > len(lam) or col < 1 or col > lam[row - 1]:
        raise ValueError(f"box {box} lies outside {list(lam)}")
    arm = lam[row - 1] - col
    leg = conjugate(lam)[col - 1] - row
    return arm, leg


def n_statistic(lam):
    """n(lam) = sum (i - 1) lam_i."""
    return sum(i * p for i, p in enumerate(lam))


def dominates(lam, mu):
    """True if ``lam`` dominates ``mu`` (same size, partial sums >=)."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def remove_parts(lam, sub):
    """Multiset difference ``lam - sub``; None if ``sub`` is not contained."""
    rest = list(lam)
    for p in sub:
        try:
            rest.remove(p)
        except ValueError:
            return None
    return tuple(rest)


def to_json(lam):
    return list(lam)


def from_json(data):
    return Partition(canonical(data))
