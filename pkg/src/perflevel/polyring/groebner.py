"""Buchberger's algorithm for ideals and submodules of graded free modules.

Vectors of S^r are handled internally as dicts ``{(component, exponent): c}``.
Modules use a position-over-term order: a term in component ``i`` beats any
term in component ``j > i``; inside one component the ring order decides.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations

from ..errors import MalformedInput, NotHomogeneous
from .hilbert import NEG_INF, HilbertSeries
from .poly import (
    ORDERS,
    Polynomial,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quo,
)


def column_to_vec(column):
    vec = {}
    for c, f in enumerate(column):
        for e, v in f.terms.items():
            vec[(c, e)] = v
    return vec


def vec_to_column(vec, ring, rank):
    parts = [{} for _ in range(rank)]
    for (c, e), v in vec.items():
        parts[c][e] = v
    return tuple(Polynomial._raw(ring, t) for t in parts)


def poly_to_vec(f):
    return {(0, e): v for e, v in f.terms.items()}


def vec_degree(vec, twists):
    """Common degree of a homogeneous vector (None for the zero vector)."""
    degs = {sum(e) + twists[c] for (c, e) in vec}
    if not degs:
        return None
    if len(degs) > 1:
        raise NotHomogeneous(f"inhomogeneous vector with degrees {sorted(degs)}")
    return degs.pop()


class _Reducer:
    """Basis elements with cached leading data plus the reduction routine."""

    def __init__(self, ring, order, rank, twists):
        self.ring = ring
        self.p = ring.p
        self.order = order
        self.rank = rank
        self.twists = tuple(twists)
        ordered = ring.with_order(order)
        self._mkey = ordered.key
        self._tkeys = {}
        self.elems = []
        self.leads = []
        self.lcs = []
        self.from_relations = []
        self.by_comp = [[] for _ in range(rank)]

    def tkey(self, term):
        k = self._tkeys.get(term)
        if k is None:
            k = self._tkeys[term] = (-term[0], self._mkey(term[1]))
        return k

    def lead(self, vec):
        return max(vec, key=self.tkey)

    def divisor(self, term):
        comp, exp = term
        d = sum(exp)
        for idx in self.by_comp[comp]:
            lexp = self.leads[idx][1]
            if sum(lexp) <= d and mono_divides(lexp, exp):
                return idx
        return None

    def reduce(self, vec, skip=None):
        """Full normal form of ``vec`` by the current elements (except index ``skip``)."""
        p = self.p
        vec = dict(vec)
        result = {}
        tkey = self.tkey
        while vec:
            term = max(vec, key=tkey)
            c = vec[term]
            idx = self.divisor_skip(term, skip)
            if idx is None:
                result[term] = c
                del vec[term]
                continue
            lcomp, lexp = self.leads[idx]
            q = mono_quo(term[1], lexp)
            factor = (c * pow(self.lcs[idx], p - 2, p)) % p
            for (gc, ge), gv in self.elems[idx].items():
                t = (gc, mono_mul(ge, q))
                v = (vec.get(t, 0) - factor * gv) % p
                if v:
                    vec[t] = v
                else:
                    vec.pop(t, None)
        return result

    def divisor_skip(self, term, skip):
        if skip is None:
            return self.divisor(term)
        comp, exp = term
        d = sum(exp)
        for idx in self.by_comp[comp]:
            if idx == skip:
                continue
            lexp = self.leads[idx][1]
            if sum(lexp) <= d and mono_divides(lexp, exp):
                return idx
        return None

    def add(self, vec, from_relations=False):
        lt = self.lead(vec)
        self.elems.append(vec)
        self.leads.append(lt)
        self.lcs.append(vec[lt])
        self.from_relations.append(from_relations)
        idx = len(self.elems) - 1
        self.by_comp[lt[0]].append(idx)
        return idx


def _s_vector(red, i, j):
    p = red.p
    (_, ei), (_, ej) = red.leads[i], red.leads[j]
    lcm = mono_lcm(ei, ej)
    qi, qj = mono_quo(lcm, ei), mono_quo(lcm, ej)
    fi = pow(red.lcs[i], p - 2, p)
    fj = pow(red.lcs[j], p - 2, p)
    out = {}
    for (gc, ge), gv in red.elems[i].items():
        t = (gc, mono_mul(ge, qi))
        out[t] = (out.get(t, 0) + fi * gv) % p
    for (gc, ge), gv in red.elems[j].items():
        t = (gc, mono_mul(ge, qj))
        v = (out.get(t, 0) - fj * gv) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return {t: v for t, v in out.items() if v}


def _buchberger_run(red, gens, relation_gens=()):
    """Complete ``red`` to a Groebner basis of the module generated by all inputs.

    ``relation_gens`` must already form a Groebner basis componentwise (the
    multiples g*e_c of a Groebner basis of J); S-pairs among them are skipped.
    """
    heap = []
    pending = set()
    counter = 0
    single = red.rank == 1

    def push_pairs(n):
        nonlocal counter
        comp, en = red.leads[n]
        for j in red.by_comp[comp]:
            if j == n:
                continue
            if red.from_relations[j] and red.from_relations[n]:
                continue
            ej = red.leads[j][1]
            if single and all(a == 0 or b == 0 for a, b in zip(ej, en)):
                continue  # coprime leading monomials
            lcm = mono_lcm(ej, en)
            deg = sum(lcm) + red.twists[comp]
            key = (min(j, n), max(j, n))
            pending.add(key)
            heapq.heappush(heap, (deg, red.tkey((comp, lcm)), counter, key))
            counter += 1

    for vec in relation_gens:
        if vec:
            push_pairs(red.add(vec, from_relations=True))
    for vec in gens:
        r = red.reduce(vec)
        if r:
            push_pairs(red.add(r))

    while heap:
        _, _, _, (i, j) = heapq.heappop(heap)
        pending.discard((i, j))
        comp, ei = red.leads[i]
        lcm = mono_lcm(ei, red.leads[j][1])
        # chain criterion
        skip = False
        for k in red.by_comp[comp]:
            if k == i or k == j:
                continue
            if not mono_divides(red.leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            skip = True
            break
        if skip:
            continue
        r = red.reduce(_s_vector(red, i, j))
        if r:
            push_pairs(red.add(r))
    return red


def _interreduce(red):
    """Return the elements of a reduced Groebner basis built from ``red``."""
    p = red.p
    order_idx = sorted(range(len(red.elems)), key=lambda i: red.tkey(red.leads[i]))
    keep = []
    for i in order_idx:
        ci, ei = red.leads[i]
        if any(
            red.leads[j][0] == ci and mono_divides(red.leads[j][1], ei) for j in keep
        ):
            continue
        keep.append(i)
    final = _Reducer(red.ring, red.order, red.rank, red.twists)
    for i in keep:
        final.add(red.elems[i])
    out = []
    for idx in range(len(final.elems)):
        vec = final.elems[idx]
        lt = final.leads[idx]
        tail = {t: v for t, v in vec.items() if t != lt}
        tail = final.reduce(tail, skip=idx)
        inv = pow(final.lcs[idx], p - 2, p)
        new = {t: (v * inv) % p for t, v in tail.items()}
        new[lt] = 1
        out.append(new)
    out.sort(key=lambda v: red.tkey(max(v, key=red.tkey)), reverse=True)
    return out


@dataclass(eq=False)
class GroebnerBasis:
    """Reduced Groebner basis of a submodule of S^rank (rank 1 for ideals)."""

    ring: object
    order: str
    rank: int
    twists: tuple
    vectors: list = field(repr=False)
    reduced: bool = True

    def __post_init__(self):
        self._red = _Reducer(self.ring, self.order, self.rank, self.twists)
        for v in self.vectors:
            self._red.add(v)

    @property
    def generators(self):
        """Basis elements as polynomials (ideals) or column tuples (modules)."""
        if self.rank == 1:
            return [Polynomial._raw(self.ring, {e: c for (_, e), c in v.items()}) for v in self.vectors]
        return [vec_to_column(v, self.ring, self.rank) for v in self.vectors]

    def __len__(self):
        return len(self.vectors)

    def lead_terms(self):
        return list(self._red.leads)

    def lead_ideals(self):
        """Per-component lists of lead exponents."""
        out = [[] for _ in range(self.rank)]
        for c, e in self._red.leads:
            out[c].append(e)
        return out

    def reduce_vec(self, vec):
        return self._red.reduce(vec)

    def nf(self, f):
        if isinstance(f, Polynomial):
            if self.rank != 1:
                raise MalformedInput("polynomial given to a module basis")
            r = self._red.reduce(poly_to_vec(f))
            return Polynomial._raw(self.ring, {e: c for (_, e), c in r.items()})
        col = tuple(f)
        if len(col) != self.rank:
            raise MalformedInput("vector has the wrong length")
        return vec_to_column(self._red.reduce(column_to_vec(col)), self.ring, self.rank)

    def contains(self, f):
        if isinstance(f, Polynomial):
            return not self._red.reduce(poly_to_vec(f))
        return not self._red.reduce(column_to_vec(tuple(f)))

    def is_unit_ideal(self):
        zero = self.ring.zero_exp
        return any(e == zero for _, e in self._red.leads) and self.rank == 1

    def hilbert_series(self):
        """Hilbert series of S^rank / (this module)."""
        return HilbertSeries.of_module(self.lead_ideals(), self.twists, self.ring.nvars)

    def s_pairs_reduce_to_zero(self):
        """Buchberger criterion check over every same-component pair."""
        red = self._red
        for i, j in combinations(range(len(self.vectors)), 2):
            if red.leads[i][0] != red.leads[j][0]:
                continue
            if red.reduce(_s_vector(red, i, j)):
                return False
        return True


def _check_order(order):
    if order not in ORDERS:
        raise MalformedInput(f"unknown monomial order {order!r}")


def _module_gb(ring, order, twists, vectors, relation_vectors=()):
    red = _Reducer(ring, order, len(twists), twists)
    _buchberger_run(red, vectors, relation_vectors)
    return GroebnerBasis(ring, order, len(twists), tuple(twists), _interreduce(red))


def buchberger(gens, order=None, ring=None):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise MalformedInput("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if not isinstance(g, Polynomial) or g.ring != ring:
            raise MalformedInput("all generators must lie in one polynomial ring")
        if not g.is_homogeneous():
            raise NotHomogeneous(f"generator {g} is not homogeneous")
    order = order or ring.order
    _check_order(order)
    return _module_gb(ring, order, (0,), [poly_to_vec(g) for g in gens if g])


def nf(f, gb):
    """Normal form of ``f`` with respect to ``gb``; zero iff ``f`` is in the ideal."""
    return gb.nf(f)


def module_gb(columns, twists, ring, order=None, relations=()):
    """Groebner basis of the column module inside the graded free module S(twists).

    ``relations`` (a Groebner basis of an ideal J, as polynomials) adds J*S^r,
    which turns the computation into one over S/J.
    """
    twists = tuple(twists)
    order = order or ring.order
    _check_order(order)
    vecs = []
    for col in columns:
        col = tuple(col)
        if len(col) != len(twists):
            raise MalformedInput("column length does not match the number of rows")
        v = column_to_vec(col)
        vec_degree(v, twists)
        if v:
            vecs.append(v)
    rel_vecs = [
        {(c, e): v for e, v in g.terms.items()}
        for c in range(len(twists))
        for g in relations
        if g
    ]
    return _module_gb(ring, order, twists, vecs, rel_vecs)


@dataclass(eq=False)
class SyzygyData:
    matrix: list  # columns
    generators: list  # columns over S spanning the kernel (modulo relations, if any)
    gb: GroebnerBasis  # basis of the full preimage, relation multiples included
    source_twists: tuple


def syzygies(columns, target_twists, source_twists, ring, *, modulo=(), relations=(), order=None):
    """Generators of {v : sum v_k * column_k lies in span(modulo) + J * S^m}.

    With empty ``modulo`` and ``relations`` this is the ordinary syzygy
    module of the columns.  The computation uses the augmented module
    (column_k, e_k) under a position-over-term order that favours the
    matrix rows; basis elements living purely in the tag part give the kernel.
    """
    columns = [tuple(c) for c in columns]
    target_twists = tuple(target_twists)
    source_twists = tuple(source_twists)
    m, n = len(target_twists), len(source_twists)
    if len(columns) != n:
        raise MalformedInput("one source twist per column is required")
    order = order or ring.order
    _check_order(order)
    twists = target_twists + source_twists
    vecs = []
    for k, col in enumerate(columns):
        if len(col) != m:
            raise MalformedInput("inconsistent row counts")
        v = column_to_vec(col)
        d = vec_degree(v, target_twists)
        if d is not None and d != source_twists[k]:
            raise NotHomogeneous(
                f"column {k} has degree {d} but source twist {source_twists[k]}"
            )
        v[(m + k, ring.zero_exp)] = 1
        vecs.append(v)
    for col in modulo:
        v = column_to_vec(tuple(col))
        vec_degree(v, target_twists)
        if v:
            vecs.append(v)
    rel_vecs = [
        {(c, e): val for e, val in g.terms.items()}
        for c in range(m + n)
        for g in relations
        if g
    ]
    red = _Reducer(ring, order, m + n, twists)
    _buchberger_run(red, vecs, rel_vecs)
    full = _interreduce(red)
    kernel = [
        {(c - m, e): v for (c, e), v in vec.items()}
        for vec in full
        if max(vec, key=red.tkey)[0] >= m
    ]
    gb = GroebnerBasis(ring, order, n, source_twists, kernel)
    if relations:
        jgb = GroebnerBasis(ring, order, n, source_twists, [
            {(c, e): v for e, v in g.terms.items()} for c in range(n) for g in relations if g
        ])
        gens = []
        for vec in kernel:
            r = jgb.reduce_vec(vec)
            if r:
                gens.append(vec_to_column(r, ring, n))
    else:
        gens = [vec_to_column(v, ring, n) for v in kernel]
    return SyzygyData(columns, gens, gb, source_twists)


def hilbert_function(gb, degrees):
    """Values of the Hilbert function of S^r / M over ``degrees``.

    Returns ``(values, finite_length, length)``; ``length`` is ``math.inf``
    when the quotient has positive dimension.
    """
    hs = gb.hilbert_series()
    return [hs.value(d) for d in degrees], hs.is_finite_length(), hs.length


def krull_dim(gb):
    """Krull dimension of S/J from independent variable sets modulo in(J).

    The unit ideal gives ``-inf``.
    """
    if gb.rank != 1:
        raise MalformedInput("krull_dim expects an ideal")
    leads = [e for _, e in gb.lead_terms()]
    n = gb.ring.nvars
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    if any(not s for s in supports):
        return NEG_INF
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            u = frozenset(subset)
            if not any(s <= u for s in supports):
                return size
    return 0
