"""Dense linear algebra over a prime field GF(p).

Matrices are numpy int64 arrays holding residues in [0, p).  The prime is
bounded by 2**31 so products of two residues never overflow.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 2**31


class Cancelled(RuntimeError):
    """Raised when a cooperative cancellation callback asks a solve to stop."""


def _check_cancel(should_stop):
    if should_stop is not None and should_stop():
        raise Cancelled("computation cancelled")


def rref(A, p, should_stop=None):
    """Row-reduce ``A`` modulo ``p``.

    Returns ``(R, pivots)`` where ``R`` is the reduced row echelon form and
    ``pivots`` lists the pivot column of each nonzero row.
    """
    R = np.array(A, dtype=np.int64, copy=True) % p
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = R.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        _check_cancel(should_stop)
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        inv = pow(int(R[row, col]), p - 2, p)
        R[row] = (R[row] * inv) % p
        factors = R[:, col].copy()
        factors[row] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            R[hit] = (R[hit] - np.outer(factors[hit], R[row])) % p
        pivots.append(col)
        row += 1
    return R[:row], pivots


def rank(A, p):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p):
    """Basis of the right null space of ``A``, one vector per row of the result."""
    A = np.asarray(A, dtype=np.int64)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-R[r, f]) % p
    return basis


def solve(A, b, p, *, rng=None, should_stop=None):
    """Solve ``A x = b`` over GF(p).

    Returns one solution, or ``None`` when the system is inconsistent.  With
    ``rng`` (a ``numpy.random.Generator``) the free variables are drawn at
    random instead of set to zero, which picks a random point of the affine
    solution space.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    nrows, ncols = A.shape
    if nrows == 0:
        x = np.zeros(ncols, dtype=np.int64)
        if rng is not None and ncols:
            x = rng.integers(0, p, size=ncols).astype(np.int64)
        return x
    aug = np.concatenate([A % p, (b % p)[:, None]], axis=1)
    R, pivots = rref(aug, p, should_stop=should_stop)
    if pivots and pivots[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    if rng is not None and free:
        x[free] = rng.integers(0, p, size=len(free))
    for r, pc in enumerate(pivots):
        acc = int(R[r, ncols])
        if free:
            acc -= int(np.dot(R[r, free] % p, x[free] % p) % p)
        x[pc] = acc % p
    return x


class RowSpace:
    """Incrementally maintained span of vectors in GF(p)^n.

    ``add`` reports whether a vector enlarged the span; ``contains`` tests
    membership without changing anything.
    """

    def __init__(self, n, p):
        self.n = n
        self.p = p
        self._rows = {}  # pivot column -> row normalised to 1 at the pivot

    def __len__(self):
        return len(self._rows)

    def _reduce(self, v):
        p = self.p
        v = np.asarray(v, dtype=np.int64) % p
        for col in sorted(self._rows):
            c = v[col]
            if c:
                v = (v - c * self._rows[col]) % p
        return v

    def contains(self, v):
        return not self._reduce(v).any()

    def add(self, v):
        v = self._reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        col = int(nz[0])
        v = (v * pow(int(v[col]), self.p - 2, self.p)) % self.p
        for other in self._rows:
            c = self._rows[other][col]
            if c:
                self._rows[other] = (self._rows[other] - c * v) % self.p
        self._rows[col] = v
        return True
