"""Shared random generators and independent oracles for the tests."""

import random
from itertools import combinations

from rootcomp import matrix as mx
from rootcomp.series import LaurentPoly


def random_poly(rng, lo=0, hi=2, zero_prob=0.3):
    if rng.random() < zero_prob:
        return LaurentPoly()
    return LaurentPoly([rng.randint(-2, 2) for _ in range(hi - lo + 1)], lo)


def random_unipotent_upper(rng, size, hi=2):
    m = [[LaurentPoly.const(1) if i == j else LaurentPoly() for j in range(size)] for i in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            m[i][j] = random_poly(rng, 0, hi)
    return mx.as_matrix(m)


def random_GO(rng, size, hi=2):
    """Random element of GL(O) with constant determinant +-1: products of triangular and permutation factors."""
    up = random_unipotent_upper(rng, size, hi)
    low = mx.transpose(random_unipotent_upper(rng, size, hi))
    perm = list(range(size))
    rng.shuffle(perm)
    p = mx.as_matrix([[1 if perm[i] == j else 0 for j in range(size)] for i in range(size)])
    return mx.mul_all(up, p, low)


def determinantal_smith(m):
    """Smith exponents from minimal valuations of k x k minors."""
    size = len(m)
    d = [0]
    for k in range(1, size + 1):
        best = None
        for rows in combinations(range(size), k):
            for cols in combinations(range(size), k):
                sub = tuple(tuple(m[r][c] for c in cols) for r in rows)
                v = mx.det(sub)
                if v and (best is None or v.valuation < best):
                    best = v.valuation
        d.append(best)
    return tuple(sorted((d[k] - d[k - 1] for k in range(1, size + 1)), reverse=True))


def rng_for(seed):
    return random.Random(seed)
