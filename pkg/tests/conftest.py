import os
import sys

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from perflevel import make_complex, make_ring  # noqa: E402
from perflevel.linalg import nullspace  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

P = 101

# (variables, relations) of artinian rings with k-length at most 6
ARTINIAN = {
    "x2": (["x"], ["x^2"]),
    "x3": (["x"], ["x^3"]),
    "m2_2": (["x", "y"], ["x^2", "x*y", "y^2"]),
    "x2y2": (["x", "y"], ["x^2", "y^2"]),
    "m2_3": (["x", "y", "z"], ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]),
    "x2y3": (["x", "y"], ["x^2", "y^3"]),
    "x2xyy3": (["x", "y"], ["x^2", "x*y", "y^3"]),
}
OTHER = {
    "poly2": (["x", "y"], []),
    "xy": (["x", "y"], ["x*y"]),
    "poly3": (["x", "y", "z"], []),
}
ZOO = {**ARTINIAN, **OTHER}

_rings = {}
_oracles = {}


def ring(name):
    if name not in _rings:
        v, r = ZOO[name]
        _rings[name] = make_ring(P, v, relations=r)
    return _rings[name]


def oracle(name):
    from oracle import ExpandedRing

    if name not in _oracles:
        v, r = ARTINIAN[name]
        _oracles[name] = ExpandedRing(P, v, r)
    return _oracles[name]


def random_element(R, degree, rng):
    from perflevel.polyring import Polynomial

    return Polynomial(R.S, {m: int(rng.integers(0, R.p)) for m in R.basis(degree)})


def random_complex(R, rng, ranks, lo=0, max_twist_gap=2):
    """Random graded complex with the given ranks, built bottom-up through kernels.

    Each new column is a random element of the graded kernel of the previous
    differential, so d^2 = 0 by construction.
    """
    p = R.p
    twists = {lo: sorted(int(t) for t in rng.integers(0, 2, size=ranks[0]))}
    diffs = {}
    for n, r in enumerate(ranks[1:], start=1):
        i = lo + n
        prev = twists[i - 1]
        base = min(prev) if prev else 0
        new = sorted(base + int(t) for t in rng.integers(0, max_twist_gap + 1, size=r))
        cols = []
        for t in new:
            idx = R.free_basis(prev, t)
            if not idx:
                cols.append([R.zero()] * len(prev))
                continue
            keys = sorted(idx, key=idx.get)
            if i - 1 > lo and twists[i - 2]:
                d = diffs[i - 1]
                images = []
                for c, m in keys:
                    col = [R.reduce(d[row][c].mul_term(m, 1)) for row in range(len(d))]
                    images.append(R.coords(col, twists[i - 2], t))
                A = np.array(images, dtype=np.int64).T if images else np.zeros((0, len(keys)), dtype=np.int64)
                if A.shape[0] == 0:
                    K = np.eye(len(keys), dtype=np.int64)
                else:
                    K = nullspace(A, p).T
            else:
                K = np.eye(len(keys), dtype=np.int64)
            if K.size == 0:
                cols.append([R.zero()] * len(prev))
                continue
            coeffs = rng.integers(0, p, size=K.shape[1])
            vec = (K @ coeffs) % p
            col = [R.S.zero() for _ in prev]
            for (c, m), v in zip(keys, vec):
                if v:
                    col[c] = col[c] + R.S.monomial(m, int(v))
            cols.append(col)
        twists[i] = new
        diffs[i] = [[cols[k][j] for k in range(len(new))] for j in range(len(prev))]
    return make_complex(R, twists, diffs)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
