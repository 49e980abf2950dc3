"""Standard-graded quotient rings R = S/J over GF(p) and their ideals.

R is treated as graded-local: the maximal ideal is generated by all
variables and the residue field is GF(p).  Relations must be homogeneous of
degree at least two, so the embedding dimension is the number of variables.
"""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .errors import MalformedInput, NotHomogeneous, PreconditionError
from .linalg import RowSpace
from .polyring import (
    Polynomial,
    PolynomialRing,
    buchberger,
    krull_dim,
    vec_degree,
    column_to_vec,
)
from .polyring.poly import mono_divides


class Ring:
    """Handle for R = S/J with a reduced Groebner basis of J precomputed."""

    def __init__(self, S, relations, gb):
        self.S = S
        self.relations = tuple(relations)
        self.gb = gb
        self._basis = {}
        self._index = {}

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.S == other.S
            and set(self.gb.generators) == set(other.gb.generators)
        )

    def __hash__(self):
        return hash((self.S, frozenset(self.gb.generators)))

    def __repr__(self):
        rel = ", ".join(map(str, self.relations)) or "0"
        return f"{self.S} / ({rel})"

    p = property(lambda self: self.S.p)
    variables = property(lambda self: self.S.variables)
    order = property(lambda self: self.S.order)
    nvars = property(lambda self: self.S.nvars)

    @property
    def edim(self):
        return self.S.nvars

    @cached_property
    def krull_dim(self):
        return krull_dim(self.gb)

    @property
    def artinian(self):
        return self.krull_dim == 0

    @cached_property
    def hilbert_series(self):
        return self.gb.hilbert_series()

    @property
    def k_length(self):
        """Length of R as a module over itself (``math.inf`` unless artinian)."""
        return self.hilbert_series.length

    @cached_property
    def top_degree(self):
        """Largest degree with R_d != 0 for an artinian ring; None otherwise."""
        if not self.artinian:
            return None
        return self.hilbert_series.support()[1]

    @cached_property
    def relation_polys(self):
        """Groebner basis polynomials of J (the relations used in module computations)."""
        return self.gb.generators if len(self.gb) else []

    def zero(self):
        return self.S.zero()

    def one(self):
        return self.S.one()

    @property
    def gens(self):
        return self.S.gens

    def reduce(self, f):
        if isinstance(f, int):
            f = self.S.constant(f)
        if not self.relations:
            return f
        return self.gb.nf(f)

    def parse(self, text):
        return self.reduce(self.S.parse(text))

    def element(self, value):
        """Coerce an int, string or polynomial to a reduced element of R."""
        if isinstance(value, str):
            return self.parse(value)
        return self.reduce(self.S(value))

    def basis(self, d):
        """Standard monomials of degree ``d`` (a k-basis of R_d)."""
        out = self._basis.get(d)
        if out is None:
            leads = [e for _, e in self.gb.lead_terms()]
            out = [m for m in self.S.monomials(d) if not any(mono_divides(l, m) for l in leads)]
            self._basis[d] = out
        return out

    def free_basis(self, twists, d):
        """Index of a k-basis of F_d for the free module with generator degrees ``twists``."""
        key = (tuple(twists), d)
        idx = self._index.get(key)
        if idx is None:
            idx = {}
            for c, tw in enumerate(twists):
                for m in self.basis(d - tw):
                    idx[(c, m)] = len(idx)
            self._index[key] = idx
        return idx

    def coords(self, column, twists, d):
        """Coordinate vector of a reduced homogeneous vector of degree ``d``."""
        idx = self.free_basis(twists, d)
        out = np.zeros(len(idx), dtype=np.int64)
        for c, f in enumerate(column):
            for e, v in f.terms.items():
                out[idx[(c, e)]] = v
        return out

    def maximal_ideal(self):
        return Ideal(self, self.gens)


def make_ring(p, variables, order="grevlex", relations=()):
    """Build the graded quotient ring GF(p)[variables] / (relations)."""
    S = PolynomialRing(p, variables, order)
    rels = []
    for r in relations:
        f = S(r) if not isinstance(r, Polynomial) else r
        if f.ring != S:
            raise MalformedInput("relation lives in a different polynomial ring")
        if f.is_zero():
            continue
        if not f.is_homogeneous():
            raise NotHomogeneous(f"relation {f} is not homogeneous")
        if f.degree <= 1:
            raise MalformedInput(
                f"relation {f} has degree {f.degree}; relations must lie in m^2"
            )
        rels.append(f)
    gb = buchberger(rels, ring=S)
    return Ring(S, rels, gb)


def reduce(R, f):
    return R.reduce(f)


class Ideal:
    """Homogeneous ideal of R, with a Groebner basis of its preimage in S."""

    def __init__(self, ring, generators):
        gens = []
        for g in generators:
            g = ring.element(g)
            if not g.is_homogeneous():
                raise NotHomogeneous(f"ideal generator {g} is not homogeneous")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.gb = buchberger(list(ring.relation_polys) + gens, ring=ring.S)

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and set(self.gb.generators) == set(other.gb.generators)
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.gb.generators)))

    def is_unit(self):
        return self.gb.is_unit_ideal()

    def is_zero(self):
        return not self.generators

    def contains(self, f):
        return self.gb.contains(self.ring.element(f))

    def power(self, c):
        if c < 1:
            raise MalformedInput("ideal powers start at 1")
        gens = [self.ring.one()]
        for _ in range(c):
            gens = list({self.ring.reduce(a * g) for a in gens for g in self.generators})
        out = Ideal(self.ring, gens)
        return Ideal(self.ring, minimal_generators(out))

    def product_with_maximal(self):
        return Ideal(self.ring, [x * g for x in self.ring.gens for g in self.generators])


def ideal(R, gens):
    return Ideal(R, gens)


def beta(I):
    """Minimal number of generators, dim_k(I / mI), read from Hilbert series."""
    if I.is_unit():
        raise PreconditionError("unit ideal")
    if I.is_zero():
        return 0
    mI = I.product_with_maximal()
    diff = mI.gb.hilbert_series() - I.gb.hilbert_series()
    length = diff.length
    assert length != math.inf
    return length


def dim_quotient(I):
    """Krull dimension of R/I (-inf for the unit ideal)."""
    return krull_dim(I.gb)


def minimal_subset(R, twists, vectors, modulo=()):
    """Indices of a minimal generating subset of ``vectors`` modulo ``modulo``.

    Works degree by degree over k (graded Nakayama): a vector of degree d is
    kept iff it is independent of the degree-d part of the submodule spanned
    by the kept vectors and ``modulo``.
    """
    twists = tuple(twists)
    p = R.p

    def degree(v):
        return vec_degree(column_to_vec(v), twists)

    vectors = [tuple(R.reduce(f) for f in v) for v in vectors]
    modulo = [tuple(R.reduce(f) for f in v) for v in modulo]
    cands = []
    for i, v in enumerate(vectors):
        d = degree(v)
        if d is not None:
            cands.append((d, i))
    mods = [(degree(v), tuple(v)) for v in modulo]
    mods = [(d, v) for d, v in mods if d is not None]
    kept = []
    for d in sorted({d for d, _ in cands}):
        idx = R.free_basis(twists, d)
        if not idx:
            continue
        space = RowSpace(len(idx), p)
        lower = [(dv, vectors[i]) for dv, i in kept if dv < d]
        lower += [(dv, v) for dv, v in mods if dv < d]
        for dv, v in lower:
            for m in R.S.monomials(d - dv):
                w = tuple(R.reduce(f.mul_term(m, 1)) for f in v)
                space.add(R.coords(w, twists, d))
        for dv, v in mods:
            if dv == d:
                space.add(R.coords(v, twists, d))
        for dv, i in cands:
            if dv == d and space.add(R.coords(vectors[i], twists, d)):
                kept.append((d, i))
    return sorted(i for _, i in kept)


def minimal_generators(I):
    keep = minimal_subset(I.ring, (0,), [(g,) for g in I.generators])
    return [I.generators[i] for i in keep]
