"""Hilbert series of graded quotients S^r / M computed from lead-term data.

A series is stored as a Laurent polynomial numerator N(t) over (1 - t)^n,
where n is the number of variables of S.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

NEG_INF = -math.inf


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_add(a, b, sign=1, shift=0):
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + sign * v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=20000)
def _numerator(gens):
    """Numerator of the Hilbert series of S / (gens) for a minimal monomial generating set."""
    if not gens:
        return ((0, 1),)
    # base case: pairwise coprime generators give a complete intersection
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    coprime = all(
        not (supports[i] & supports[j])
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    )
    if coprime:
        poly = {0: 1}
        for g in gens:
            poly = _poly_add(poly, poly, sign=-1, shift=sum(g))
        return tuple(sorted(poly.items()))
    # pivot on the variable occurring in the most generators
    counts = [0] * len(gens[0])
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    var = max(range(len(counts)), key=counts.__getitem__)
    pivot = tuple(1 if i == var else 0 for i in range(len(counts)))
    with_pivot = _minimalize(gens + (pivot,))
    colon = _minimalize(
        tuple(tuple(max(e - q, 0) for e, q in zip(g, pivot)) for g in gens)
    )
    # N(I) = N(I + (x)) + t * N(I : x)
    left = dict(_numerator(with_pivot))
    right = dict(_numerator(colon))
    return tuple(sorted(_poly_add(left, right, shift=1).items()))


def monomial_numerator(gens):
    gens = _minimalize(tuple(tuple(g) for g in gens))
    return dict(_numerator(gens))


@dataclass(frozen=True)
class HilbertSeries:
    """Hilbert series ``numerator(t) / (1 - t)^nvars`` with a Laurent numerator."""

    numerator: tuple  # sorted (power, coefficient) pairs, no zero coefficients
    nvars: int

    @classmethod
    def from_dict(cls, num, nvars):
        return cls(tuple(sorted((k, v) for k, v in num.items() if v)), nvars)

    @classmethod
    def of_module(cls, lead_ideals, twists, nvars):
        """Series of S^r / M where ``lead_ideals[c]`` generates in(M) in component c."""
        total = {}
        for gens, tw in zip(lead_ideals, twists):
            total = _poly_add(total, monomial_numerator(gens), shift=tw)
        return cls.from_dict(total, nvars)

    def as_dict(self):
        return dict(self.numerator)

    def __add__(self, other):
        assert self.nvars == other.nvars
        return HilbertSeries.from_dict(_poly_add(self.as_dict(), other.as_dict()), self.nvars)

    def __sub__(self, other):
        assert self.nvars == other.nvars
        return HilbertSeries.from_dict(
            _poly_add(self.as_dict(), other.as_dict(), sign=-1), self.nvars
        )

    def shift(self, d):
        """Series of M(-d): every degree moves up by ``d``."""
        return HilbertSeries(tuple((k + d, v) for k, v in self.numerator), self.nvars)

    def is_zero(self):
        return not self.numerator

    def value(self, d):
        n = self.nvars
        total = 0
        for k, c in self.numerator:
            m = d - k
            if m < 0:
                continue
            total += c * (math.comb(m + n - 1, n - 1) if n else (1 if m == 0 else 0))
        return total

    def window(self, lo, hi):
        return [self.value(d) for d in range(lo, hi + 1)]

    def reduced(self):
        """Divide out factors (1 - t) from the numerator.

        Returns ``(h, dim)`` with ``h`` the reduced numerator as a dict and
        ``dim`` the order of the pole at t = 1 (the Krull dimension).  For the
        zero series ``dim`` is -inf.
        """
        if not self.numerator:
            return {}, NEG_INF
        lo = self.numerator[0][0]
        hi = self.numerator[-1][0]
        coeffs = [0] * (hi - lo + 1)
        for k, v in self.numerator:
            coeffs[k - lo] = v
        divided = 0
        while divided < self.nvars and sum(coeffs) == 0:
            # synthetic division by (1 - t): q_i = sum_{j <= i} c_j
            q, acc = [], 0
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs = q
            divided += 1
        h = {lo + i: c for i, c in enumerate(coeffs) if c}
        return h, self.nvars - divided

    @property
    def dimension(self):
        return self.reduced()[1]

    def is_finite_length(self):
        return self.dimension <= 0

    @property
    def length(self):
        """Total k-dimension, or ``math.inf`` when the module has positive dimension."""
        h, dim = self.reduced()
        if dim == NEG_INF:
            return 0
        if dim > 0:
            return math.inf
        return sum(h.values())

    def support(self):
        """(lowest, highest) degree carrying nonzero HF for a finite-length series."""
        h, dim = self.reduced()
        if dim == NEG_INF:
            return None
        if dim > 0:
            raise ValueError("infinite length module has unbounded support")
        return min(h), max(h)

    def __str__(self):
        terms = " + ".join(f"{v}*t^{k}" for k, v in self.numerator) or "0"
        return f"({terms}) / (1-t)^{self.nvars}"
