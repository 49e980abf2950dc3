"""Bounded complexes of graded free R-modules and chain maps between them.

Conventions: the differential ``d(i)`` maps degree i to degree i-1 and is a
``rank(i-1) x rank(i)`` matrix, so columns index the source.  Generator
degrees are called twists: R(-1) has twist 1.  Matrix entry (j, k) of a
degree-0 map has degree ``source.twists[k] - target.twists[j]``.

A complex may carry ``relations`` in some degrees: columns generating a
submodule that is divided out of that free module.  Only the ghost-map
witnesses of the level bounds use this; everything that needs genuinely
free terms (cone, minimize, tensor) rejects such complexes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .errors import ComplexError, LiftObstructed, MalformedInput, NotHomogeneous
from .polyring import HilbertSeries, Polynomial, module_gb, syzygies
from .rings import Ring, minimal_subset


@dataclass(frozen=True)
class FreeModule:
    ring: Ring
    twists: tuple

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))

    @property
    def rank(self):
        return len(self.twists)

    def __repr__(self):
        if not self.twists:
            return "0"
        return " + ".join(f"R({-t})" if t else "R" for t in self.twists)


class RMatrix:
    """Homogeneous degree-0 map between graded free modules over R."""

    __slots__ = ("source", "target", "entries")

    def __init__(self, source, target, entries, check=True):
        R = source.ring
        rows = []
        for row in entries:
            rows.append(tuple(R.element(f) for f in row))
        if not rows and target.rank == 0:
            rows = []
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise MalformedInput(
                f"matrix shape does not match {target.rank} x {source.rank}"
            )
        self.source = source
        self.target = target
        self.entries = tuple(rows)
        if check:
            bad = self.inhomogeneous_entry()
            if bad is not None:
                j, k = bad
                raise NotHomogeneous(
                    f"inhomogeneous entry at ({j}, {k}): {self.entries[j][k]} should have "
                    f"degree {source.twists[k] - target.twists[j]}"
                )

    def inhomogeneous_entry(self):
        for j, row in enumerate(self.entries):
            for k, f in enumerate(row):
                if not f.terms:
                    continue
                want = self.source.twists[k] - self.target.twists[j]
                if want < 0 or any(sum(e) != want for e in f.terms):
                    return j, k
        return None

    @classmethod
    def zero(cls, source, target):
        z = source.ring.zero()
        return cls(source, target, [[z] * source.rank for _ in range(target.rank)], check=False)

    @classmethod
    def identity(cls, module):
        R = module.ring
        n = module.rank
        return cls(
            module,
            module,
            [[R.one() if i == j else R.zero() for j in range(n)] for i in range(n)],
            check=False,
        )

    @classmethod
    def from_columns(cls, source, target, columns, check=True):
        columns = [tuple(c) for c in columns]
        rows = [[col[j] for col in columns] for j in range(target.rank)]
        return cls(source, target, rows, check=check)

    @property
    def nrows(self):
        return self.target.rank

    @property
    def ncols(self):
        return self.source.rank

    @property
    def ring(self):
        return self.source.ring

    def column(self, k):
        return tuple(row[k] for row in self.entries)

    def columns(self):
        return [self.column(k) for k in range(self.ncols)]

    def is_zero(self):
        return all(not f for row in self.entries for f in row)

    def unit_entries(self):
        """Positions holding a nonzero constant."""
        return [
            (j, k)
            for j, row in enumerate(self.entries)
            for k, f in enumerate(row)
            if f.constant_term()
        ]

    def is_minimal(self):
        """True iff every entry lies in the maximal ideal."""
        return not self.unit_entries()

    def __matmul__(self, other):
        if other.target != self.source:
            raise MalformedInput("composition of incompatible maps")
        R = self.ring
        out = []
        for row in self.entries:
            new = []
            for c in range(other.ncols):
                acc = R.zero()
                for j, a in enumerate(row):
                    if a:
                        b = other.entries[j][c]
                        if b:
                            acc = acc + a * b
                new.append(R.reduce(acc))
            out.append(new)
        return RMatrix(other.source, self.target, out, check=False)

    def _combine(self, other, sign):
        if other.source != self.source or other.target != self.target:
            raise MalformedInput("adding maps with different source or target")
        out = [
            [a + b if sign > 0 else a - b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ]
        return RMatrix(self.source, self.target, out, check=False)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        R = self.ring
        if isinstance(c, int):
            out = [[f * c for f in row] for row in self.entries]
            return RMatrix(self.source, self.target, out, check=False)
        out = [[R.reduce(f * c) for f in row] for row in self.entries]
        return RMatrix(self.source, self.target, out, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, RMatrix)
            and self.source == other.source
            and self.target == other.target
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.source, self.target, self.entries))

    def tolist(self):
        return [[str(f) for f in row] for row in self.entries]

    def __repr__(self):
        return f"RMatrix({self.tolist()})"


def _columns_degrees(ring, twists, columns):
    """Degrees of homogeneous columns (None for zero columns)."""
    out = []
    for col in columns:
        degs = {
            sum(e) + twists[j] for j, f in enumerate(col) for e in f.terms
        }
        if len(degs) > 1:
            raise NotHomogeneous(f"inhomogeneous column with degrees {sorted(degs)}")
        out.append(degs.pop() if degs else None)
    return out


def relation_matrix(module, columns):
    """RMatrix whose columns are the given (nonzero, homogeneous) vectors of ``module``."""
    R = module.ring
    columns = [tuple(R.element(f) for f in col) for col in columns]
    degs = _columns_degrees(R, module.twists, columns)
    keep = [(d, c) for d, c in zip(degs, columns) if d is not None]
    source = FreeModule(R, [d for d, _ in keep])
    return RMatrix.from_columns(source, module, [c for _, c in keep], check=False)


class ChainComplex:
    """Bounded complex of graded free modules, optionally with relations."""

    def __init__(self, ring, modules, differentials=None, relations=None, check=True):
        differentials = dict(differentials or {})
        relations = {i: r for i, r in (relations or {}).items() if r is not None and r.ncols}
        self.ring = ring
        if modules:
            lo, hi = min(modules), max(modules)
        else:
            lo, hi = 0, -1
        self.lo, self.hi = lo, hi
        self.modules = {
            i: modules.get(i, FreeModule(ring, ())) for i in range(lo, hi + 1)
        }
        for i, M in self.modules.items():
            if M.ring != ring:
                raise MalformedInput(f"module in degree {i} lives over another ring")
        self.differentials = {}
        for i in range(lo + 1, hi + 1):
            d = differentials.pop(i, None)
            src, tgt = self.modules[i], self.modules[i - 1]
            if d is None:
                d = RMatrix.zero(src, tgt)
            elif d.source != src or d.target != tgt:
                raise ComplexError(f"rank/twist mismatch for the differential at degree {i}")
            self.differentials[i] = d
        for i, d in differentials.items():
            if not d.is_zero():
                raise ComplexError(f"differential at degree {i} lies outside the window")
        for i, r in relations.items():
            if i not in self.modules or r.target != self.modules[i]:
                raise ComplexError(f"relations at degree {i} do not match the module")
        self.relations = relations
        self._cache = {}
        if check:
            self.validate()

    # -- accessors -------------------------------------------------------
    def module(self, i):
        return self.modules.get(i) or FreeModule(self.ring, ())

    def rank(self, i):
        return self.module(i).rank

    def d(self, i):
        if i in self.differentials:
            return self.differentials[i]
        return RMatrix.zero(self.module(i), self.module(i - 1))

    def rel(self, i):
        return self.relations.get(i)

    @property
    def is_free(self):
        return not self.relations

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def support(self):
        """(lowest, highest) degree with a nonzero module, or None."""
        nz = [i for i in self.degrees() if self.rank(i)]
        return (min(nz), max(nz)) if nz else None

    def is_zero(self):
        return self.support() is None

    def is_minimal(self):
        return all(self.d(i).is_minimal() for i in self.differentials)

    def ranks(self):
        return {i: self.rank(i) for i in self.degrees()}

    def __repr__(self):
        body = ", ".join(f"{i}: {self.module(i)!r}" for i in self.degrees())
        return f"ChainComplex({{{body}}})"

    def __eq__(self, other):
        if not isinstance(other, ChainComplex) or self.ring != other.ring:
            return False
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        for i in range(lo, hi + 1):
            if self.module(i) != other.module(i):
                return False
            if self.d(i) != other.d(i):
                return False
            if self.rel(i) != other.rel(i):
                return False
        return True

    __hash__ = object.__hash__

    # -- cached Groebner data -------------------------------------------
    def rel_gb(self, i):
        """Groebner basis (over S, with J) of the relations at degree i."""
        key = ("rel", i)
        if key not in self._cache:
            M = self.module(i)
            cols = self.rel(i).columns() if self.rel(i) else []
            self._cache[key] = module_gb(
                cols, M.twists, self.ring.S, relations=self.ring.relation_polys
            )
        return self._cache[key]

    def boundary_generators(self, i):
        cols = self.d(i + 1).columns() if self.rank(i + 1) else []
        if self.rel(i):
            cols += self.rel(i).columns()
        return [c for c in cols if any(c)]

    def boundary_gb(self, i):
        """Groebner basis of im d(i+1) + relations + J*F_i inside S^{rank i}."""
        key = ("bd", i)
        if key not in self._cache:
            self._cache[key] = module_gb(
                self.boundary_generators(i),
                self.module(i).twists,
                self.ring.S,
                relations=self.ring.relation_polys,
            )
        return self._cache[key]

    def cycles(self, i):
        """SyzygyData for Z_i: generators over R and a Groebner basis of its preimage in S."""
        key = ("cyc", i)
        if key not in self._cache:
            R = self.ring
            src = self.module(i)
            tgt = self.module(i - 1)
            modulo = self.rel(i - 1).columns() if self.rel(i - 1) else []
            self._cache[key] = syzygies(
                self.d(i).columns(),
                tgt.twists,
                src.twists,
                R.S,
                modulo=modulo,
                relations=R.relation_polys,
            )
        return self._cache[key]

    def validate(self):
        for i in self.degrees():
            for j, k in _bad_entries(self.d(i)):
                raise NotHomogeneous(f"inhomogeneous entry at ({i}, {j}, {k})")
        for i in range(self.lo + 2, self.hi + 1):
            comp = self.d(i - 1) @ self.d(i)
            if self.rel(i - 2) is None:
                if not comp.is_zero():
                    raise ComplexError(f"d-squared nonzero at degree {i}")
            else:
                gb = self.rel_gb(i - 2)
                if not all(gb.contains(c) for c in comp.columns()):
                    raise ComplexError(f"d-squared nonzero at degree {i}")
        for i, r in self.relations.items():
            if i - 1 < self.lo or not self.rank(i - 1):
                continue
            image = self.d(i) @ r
            if self.rel(i - 1) is None:
                ok = image.is_zero()
            else:
                gb = self.rel_gb(i - 1)
                ok = all(gb.contains(c) for c in image.columns())
            if not ok:
                raise ComplexError(f"differential at degree {i} does not respect relations")


def _bad_entries(m):
    bad = m.inhomogeneous_entry()
    return [bad] if bad is not None else []


def make_complex(ring, modules, differentials=None):
    """Build and validate a complex from twist lists and entry matrices.

    ``modules`` maps degree -> list of generator degrees; ``differentials``
    maps degree i -> rows of entries of d(i) (rows index degree i-1).
    Entries may be polynomials, ints or strings.
    """
    mods = {
        i: (m if isinstance(m, FreeModule) else FreeModule(ring, m))
        for i, m in modules.items()
    }
    diffs = {}
    for i, rows in (differentials or {}).items():
        if isinstance(rows, RMatrix):
            diffs[i] = rows
            continue
        src = mods.get(i, FreeModule(ring, ()))
        tgt = mods.get(i - 1, FreeModule(ring, ()))
        try:
            diffs[i] = RMatrix(src, tgt, rows if rows else [[] for _ in range(tgt.rank)], check=False)
        except MalformedInput as exc:
            raise ComplexError(f"rank/twist mismatch at degree {i}: {exc}") from None
    return ChainComplex(ring, mods, diffs)


def zero_complex(ring):
    return ChainComplex(ring, {})


def free_complex(ring, twists, degree=0):
    """A single free module R(twists) in one degree."""
    return ChainComplex(ring, {degree: FreeModule(ring, twists)})


# -- chain maps -------------------------------------------------------------


class ChainMap:
    """Degree-0 chain map; ``components[i]`` maps source_i to target_i."""

    def __init__(self, source, target, components=None, check=True):
        if source.ring != target.ring:
            raise MalformedInput("chain map between complexes over different rings")
        self.source = source
        self.target = target
        comps = {}
        for i, m in (components or {}).items():
            if m.source != source.module(i) or m.target != target.module(i):
                raise ComplexError(f"component at degree {i} has the wrong shape")
            if not m.is_zero():
                comps[i] = m
        self.components = comps
        if check:
            self.validate()

    def component(self, i):
        if i in self.components:
            return self.components[i]
        return RMatrix.zero(self.source.module(i), self.target.module(i))

    def degrees(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def validate(self):
        F, G = self.source, self.target
        for i in self.degrees():
            if not F.rank(i) or not G.rank(i - 1):
                continue
            diff = G.d(i) @ self.component(i) - self.component(i - 1) @ F.d(i)
            if G.rel(i - 1) is None:
                ok = diff.is_zero()
            else:
                ok = all(G.rel_gb(i - 1).contains(c) for c in diff.columns())
            if not ok:
                raise ComplexError(f"chain map does not commute at degree {i}")
        for i, r in F.relations.items():
            image = self.component(i) @ r
            if G.rel(i) is None:
                ok = image.is_zero()
            else:
                ok = all(G.rel_gb(i).contains(c) for c in image.columns())
            if not ok:
                raise ComplexError(f"chain map is not well defined at degree {i}")

    def __matmul__(self, other):
        """Composition ``self o other``."""
        if other.target != self.source:
            raise MalformedInput("composition of incompatible chain maps")
        comps = {i: self.component(i) @ other.component(i) for i in other.source.degrees()}
        return ChainMap(other.source, self.target, comps, check=False)

    def __add__(self, other):
        comps = {i: self.component(i) + other.component(i) for i in self.degrees()}
        return ChainMap(self.source, self.target, comps, check=False)

    def __sub__(self, other):
        comps = {i: self.component(i) - other.component(i) for i in self.degrees()}
        return ChainMap(self.source, self.target, comps, check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target, {i: -m for i, m in self.components.items()}, check=False)

    def is_zero(self):
        return not self.components


def identity_map(F):
    return ChainMap(F, F, {i: RMatrix.identity(F.module(i)) for i in F.degrees()}, check=False)


def zero_map(F, G):
    return ChainMap(F, G, {}, check=False)


def twist(F, d):
    """F(-d): every generator degree raised by ``d``."""
    R = F.ring
    mods = {i: FreeModule(R, [t + d for t in F.module(i).twists]) for i in F.degrees()}
    diffs = {
        i: RMatrix(mods[i], mods[i - 1], F.d(i).entries, check=False)
        for i in range(F.lo + 1, F.hi + 1)
    }
    rels = {}
    for i, r in F.relations.items():
        src = FreeModule(R, [t + d for t in r.source.twists])
        rels[i] = RMatrix(src, mods[i], r.entries, check=False)
    return ChainComplex(R, mods, diffs, rels, check=False)


def multiplication_map(F, r):
    """Multiplication by a homogeneous element ``r`` as a chain map F(-deg r) -> F."""
    R = F.ring
    r = R.element(r)
    if not r.is_homogeneous():
        raise NotHomogeneous(f"{r} is not homogeneous")
    deg = max(r.degree, 0)
    src = twist(F, deg)
    comps = {}
    for i in F.degrees():
        n = F.rank(i)
        comps[i] = RMatrix(
            src.module(i),
            F.module(i),
            [[r if a == b else R.zero() for b in range(n)] for a in range(n)],
            check=False,
        )
    return ChainMap(src, F, comps)


def nullhomotopic_map(F, G, homotopy):
    """The map d*h + h*d for a family ``homotopy[i]: F_i -> G_{i+1}``."""
    comps = {}
    for i in range(min(F.lo, G.lo), max(F.hi, G.hi) + 1):
        m = RMatrix.zero(F.module(i), G.module(i))
        if i in homotopy:
            m = m + G.d(i + 1) @ homotopy[i]
        if i - 1 in homotopy:
            m = m + homotopy[i - 1] @ F.d(i)
        comps[i] = m
    return ChainMap(F, G, comps)


# -- constructions ----------------------------------------------------------


def suspend(F, k):
    """(Sigma^k F)_n = F_{n-k} with differential (-1)^k d."""
    R = F.ring
    sign = -1 if k % 2 else 1
    mods = {i + k: F.module(i) for i in F.degrees()}
    diffs = {i + k: F.d(i).scale(sign) for i in range(F.lo + 1, F.hi + 1)}
    rels = {i + k: r for i, r in F.relations.items()}
    return ChainComplex(R, mods, diffs, rels, check=False)


def truncate_geq(F, i):
    """Hard truncation F_{>=i} together with the projection tau: F -> F_{>=i}."""
    R = F.ring
    mods = {n: F.module(n) for n in F.degrees() if n >= i}
    diffs = {n: F.d(n) for n in mods if n - 1 in mods}
    rels = {n: r for n, r in F.relations.items() if n >= i}
    G = ChainComplex(R, mods, diffs, rels, check=False)
    tau = ChainMap(F, G, {n: RMatrix.identity(F.module(n)) for n in mods}, check=False)
    return G, tau


def truncate_leq(F, i):
    """Hard truncation F_{<=i}."""
    R = F.ring
    mods = {n: F.module(n) for n in F.degrees() if n <= i}
    diffs = {n: F.d(n) for n in mods if n - 1 in mods}
    rels = {n: r for n, r in F.relations.items() if n <= i}
    return ChainComplex(R, mods, diffs, rels, check=False)


def _require_free(*complexes):
    for F in complexes:
        if not F.is_free:
            raise MalformedInput("operation needs a complex of free modules")


def _block(source, target, blocks):
    """Assemble an RMatrix from a 2x2 grid of RMatrix blocks (None = zero)."""
    rows = []
    for brow in blocks:
        nr = next(b.nrows for b in brow if b is not None)
        for r in range(nr):
            row = []
            for b in brow:
                row.extend(b.entries[r])
            rows.append(row)
    return RMatrix(source, target, rows, check=False)


def cone(phi, with_maps=False):
    """Mapping cone C_n = G_n + F_{n-1}, d = [[d^G, phi], [0, -d^F]].

    With ``with_maps`` also returns the inclusion G -> C and the projection
    C -> Sigma F.
    """
    F, G = phi.source, phi.target
    _require_free(F, G)
    R = F.ring
    lo = min(G.lo, F.lo + 1)
    hi = max(G.hi, F.hi + 1)
    mods = {
        n: FreeModule(R, G.module(n).twists + F.module(n - 1).twists)
        for n in range(lo, hi + 1)
    }
    diffs = {}
    for n in range(lo + 1, hi + 1):
        top = [G.d(n), phi.component(n - 1)]
        bottom = [
            RMatrix.zero(G.module(n), F.module(n - 2)),
            -F.d(n - 1),
        ]
        diffs[n] = _block(mods[n], mods[n - 1], [top, bottom])
    C = ChainComplex(R, mods, diffs)
    if not with_maps:
        return C
    SF = suspend(F, 1)
    inc, proj = {}, {}
    for n in range(lo, hi + 1):
        g, f = G.rank(n), F.rank(n - 1)
        one, zero = R.one(), R.zero()
        inc[n] = RMatrix(
            G.module(n),
            mods[n],
            [[one if a == b else zero for b in range(g)] for a in range(g + f)],
            check=False,
        )
        proj[n] = RMatrix(
            mods[n],
            SF.module(n),
            [[one if b == g + a else zero for b in range(g + f)] for a in range(f)],
            check=False,
        )
    return C, ChainMap(G, C, inc), ChainMap(C, SF, proj)


def direct_sum(F, G):
    _require_free(F, G)
    R = F.ring
    lo, hi = min(F.lo, G.lo), max(F.hi, G.hi)
    if F.is_zero():
        return G
    if G.is_zero():
        return F
    mods = {n: FreeModule(R, F.module(n).twists + G.module(n).twists) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        top = [F.d(n), RMatrix.zero(G.module(n), F.module(n - 1))]
        bottom = [RMatrix.zero(F.module(n), G.module(n - 1)), G.d(n)]
        diffs[n] = _block(mods[n], mods[n - 1], [top, bottom])
    return ChainComplex(R, mods, diffs)


def tensor_base_change(F, target_ring, images):
    """F tensor_R R' along the graded map R -> R' sending variable i to ``images[i]``."""
    _require_free(F)
    R = F.ring
    images = [target_ring.S(f) if not isinstance(f, Polynomial) else f for f in images]
    if len(images) != R.nvars:
        raise MalformedInput("need one image per variable")
    for f in images:
        if f.ring != target_ring.S:
            raise MalformedInput("images must lie in the target ring")
        if f.is_zero() or not f.is_homogeneous() or f.degree != 1:
            raise MalformedInput(f"image {f} is not a nonzero linear form")
    for g in R.relation_polys:
        if target_ring.reduce(g.subs(images)):
            raise MalformedInput(f"relation {g} does not map to zero")

    def push(f):
        return target_ring.reduce(f.subs(images)) if f else target_ring.zero()

    mods = {i: FreeModule(target_ring, F.module(i).twists) for i in F.degrees()}
    diffs = {
        i: RMatrix(mods[i], mods[i - 1], [[push(f) for f in row] for row in F.d(i).entries])
        for i in range(F.lo + 1, F.hi + 1)
    }
    return ChainComplex(target_ring, mods, diffs)


def minimize(F):
    """Split off contractible summands R -1-> R until every differential lies in m.

    Unit entries only occur between generators of equal degree; each one is
    removed by Gaussian elimination, which is a homotopy equivalence.
    """
    _require_free(F)
    R = F.ring
    p = R.p
    twists = {i: list(F.module(i).twists) for i in F.degrees()}
    mats = {i: [list(row) for row in F.d(i).entries] for i in range(F.lo + 1, F.hi + 1)}
    changed = True
    while changed:
        changed = False
        for i in sorted(mats):
            M = mats[i]
            pivot = None
            for j, row in enumerate(M):
                for k, f in enumerate(row):
                    if f and f.constant_term():
                        pivot = (j, k)
                        break
                if pivot:
                    break
            if pivot is None:
                continue
            j, k = pivot
            u_inv = pow(M[j][k].constant_term(), p - 2, p)
            newM = []
            for r, row in enumerate(M):
                if r == j:
                    continue
                gamma = row[k]
                new_row = []
                for c, f in enumerate(row):
                    if c == k:
                        continue
                    if gamma and M[j][c]:
                        f = R.reduce(f - gamma * M[j][c] * u_inv)
                    new_row.append(f)
                newM.append(new_row)
            mats[i] = newM
            if i + 1 in mats:
                mats[i + 1] = [row for r, row in enumerate(mats[i + 1]) if r != k]
            if i - 1 in mats:
                mats[i - 1] = [[f for c, f in enumerate(row) if c != j] for row in mats[i - 1]]
            del twists[i][k]
            del twists[i - 1][j]
            changed = True
            break
    nz = [i for i in twists if twists[i]]
    if not nz:
        return ChainComplex(R, {})
    lo, hi = min(nz), max(nz)
    mods = {i: FreeModule(R, twists[i]) for i in range(lo, hi + 1)}
    diffs = {
        i: RMatrix(mods[i], mods[i - 1], mats[i] if mats[i] else [[] for _ in range(mods[i - 1].rank)], check=False)
        for i in range(lo + 1, hi + 1)
    }
    return ChainComplex(R, mods, diffs)


# -- homology -------------------------------------------------------------


@dataclass(eq=False)
class ModulePresentation:
    """Graded module coker(relations: R(source) -> R(twists))."""

    ring: Ring
    twists: tuple
    relations: list = field(default_factory=list)  # columns of length len(twists)

    def __post_init__(self):
        R = self.ring
        self.twists = tuple(self.twists)
        cols = [tuple(R.element(f) for f in c) for c in self.relations]
        for c in cols:
            if len(c) != len(self.twists):
                raise MalformedInput("relation column has the wrong length")
        degs = _columns_degrees(R, self.twists, cols)
        self.relations = [c for c, d in zip(cols, degs) if d is not None]

    @property
    def free_module(self):
        return FreeModule(self.ring, self.twists)

    @cached_property
    def relation_matrix(self):
        return relation_matrix(self.free_module, self.relations)

    @cached_property
    def gb(self):
        return module_gb(self.relations, self.twists, self.ring.S, relations=self.ring.relation_polys)

    @cached_property
    def hilbert_series(self):
        return self.gb.hilbert_series()

    def is_zero(self):
        R = self.ring
        gb = self.gb
        for c in range(len(self.twists)):
            e = tuple(R.one() if i == c else R.zero() for i in range(len(self.twists)))
            if not gb.contains(e):
                return False
        return True

    def __repr__(self):
        rows = [[str(col[j]) for col in self.relations] for j in range(len(self.twists))]
        return f"ModulePresentation(twists={list(self.twists)}, relations={rows})"


def quotient_module(I):
    """R/I as a cyclic module."""
    return ModulePresentation(I.ring, (0,), [(g,) for g in I.generators])


def residue_field(R):
    return quotient_module(R.maximal_ideal())


def free_module(R, twists):
    return ModulePresentation(R, tuple(twists), [])


@dataclass(eq=False)
class HomologyData:
    degree: int
    twists: tuple
    cycles: list
    boundaries: list
    series: HilbertSeries
    is_zero: bool
    min_gens: int
    ring: Ring = field(repr=False)
    _gens: list = field(repr=False, default_factory=list)

    @property
    def finite_length(self):
        return self.series.is_finite_length()

    @property
    def length(self):
        return self.series.length

    @property
    def hilbert(self):
        """Hilbert function on a window covering the generator degrees."""
        lo, hi = self.window()
        return self.series.window(lo, hi)

    def window(self):
        if self.series.is_zero():
            return (min(self.twists, default=0), min(self.twists, default=0) - 1)
        if self.finite_length:
            return self.series.support()
        return (min(self.twists), max(self.twists) + self.ring.nvars + 1)

    @cached_property
    def presentation(self):
        """H_i as a graded module: minimal cycle generators modulo boundaries."""
        R = self.ring
        gens = [self.cycles[i] for i in self._gens]
        if not gens:
            return ModulePresentation(R, (), [])
        degs = _columns_degrees(R, self.twists, gens)
        sz = syzygies(
            gens,
            self.twists,
            degs,
            R.S,
            modulo=self.boundaries,
            relations=R.relation_polys,
        )
        return ModulePresentation(R, tuple(degs), sz.generators)

    @property
    def module(self):
        return self.presentation


def homology(F, i):
    """Exact graded homology H_i(F) = Z_i / B_i (relations respected)."""
    key = ("hom", i)
    if key in F._cache:
        return F._cache[key]
    R = F.ring
    n = R.nvars
    twists = F.module(i).twists
    if not twists:
        data = HomologyData(i, (), [], [], HilbertSeries((), n), True, 0, R)
        F._cache[key] = data
        return data
    cyc = F.cycles(i)
    bgb = F.boundary_gb(i)
    series = bgb.hilbert_series() - cyc.gb.hilbert_series()
    cycles = cyc.generators
    is_zero = all(bgb.contains(z) for z in cycles)
    boundaries = F.boundary_generators(i)
    kept = [] if is_zero else minimal_subset(R, twists, cycles, modulo=boundaries)
    data = HomologyData(i, twists, cycles, boundaries, series, is_zero, len(kept), R, kept)
    F._cache[key] = data
    return data


def homology_is_zero(F):
    return all(homology(F, i).is_zero for i in F.degrees())


# -- graded linear systems --------------------------------------------------


class _GradedSystem:
    """Linear equations over k whose unknowns are entries of degree-0 maps.

    An unknown map U : source -> target is expanded into one variable per
    (row, column, standard monomial of the entry degree).  Equations are
    matrix identities sum(L * U * M) = K; each is expanded coefficientwise
    after reduction modulo J.
    """

    def __init__(self, ring, should_stop=None):
        self.R = ring
        self.columns = []
        self.unknowns = {}
        self.rhs = {}
        self.should_stop = should_stop

    def unknown(self, name, target, source):
        R = self.R
        slots = []
        for j, tj in enumerate(target.twists):
            for k, sk in enumerate(source.twists):
                for m in R.basis(sk - tj):
                    slots.append((j, k, m, len(self.columns)))
                    self.columns.append({})
        self.unknowns[name] = (target, source, slots)

    def add_term(self, eq, name, left=None, right=None, sign=1):
        if name not in self.unknowns:
            return
        R = self.R
        p = R.p
        _, _, slots = self.unknowns[name]
        for j, k, m, vi in slots:
            col = self.columns[vi]
            if left is None:
                rows = [(j, None)]
            else:
                rows = [(r, left.entries[r][j]) for r in range(left.nrows) if left.entries[r][j]]
            if right is None:
                cols = [(k, None)]
            else:
                cols = [(c, right.entries[k][c]) for c in range(right.ncols) if right.entries[k][c]]
            for r, a in rows:
                am = R.S.monomial(m) if a is None else a.mul_term(m, 1)
                for c, b in cols:
                    f = am if b is None else am * b
                    f = R.reduce(f)
                    for e, v in f.terms.items():
                        key = (eq, r, c, e)
                        col[key] = (col.get(key, 0) + sign * v) % p

    def add_rhs(self, eq, matrix, sign=1):
        p = self.R.p
        for r, row in enumerate(matrix.entries):
            for c, f in enumerate(row):
                for e, v in f.terms.items():
                    key = (eq, r, c, e)
                    self.rhs[key] = (self.rhs.get(key, 0) + sign * v) % p

    def solve(self, rng=None):
        p = self.R.p
        keys = set(self.rhs)
        for col in self.columns:
            keys.update(k for k, v in col.items() if v)
        keys = sorted(keys, key=repr)
        index = {k: n for n, k in enumerate(keys)}
        A = np.zeros((len(keys), len(self.columns)), dtype=np.int64)
        for vi, col in enumerate(self.columns):
            for k, v in col.items():
                if v:
                    A[index[k], vi] = v
        b = np.zeros(len(keys), dtype=np.int64)
        for k, v in self.rhs.items():
            b[index[k]] = v
        x = linalg.solve(A, b, p, rng=rng, should_stop=self.should_stop)
        if x is None:
            return None
        R = self.R
        out = {}
        for name, (target, source, slots) in self.unknowns.items():
            rows = [[{} for _ in range(source.rank)] for _ in range(target.rank)]
            for j, k, m, vi in slots:
                if x[vi]:
                    rows[j][k][m] = int(x[vi])
            entries = [[Polynomial(R.S, t) for t in row] for row in rows]
            out[name] = RMatrix(source, target, entries, check=False)
        return out


def lift_map(F, G, bottom, degree=None, rng=None):
    """Extend ``bottom`` (F_start -> G_start) to a chain map F -> G.

    Each higher component is found by solving d^G eta_i = eta_{i-1} d^F over
    k.  ``rng`` picks a random solution instead of the canonical one.
    """
    _require_free(F, G)
    start = F.lo if degree is None else degree
    if bottom.source != F.module(start) or bottom.target != G.module(start):
        raise MalformedInput("bottom map has the wrong source or target")
    comps = {start: bottom}
    for i in range(start + 1, F.hi + 1):
        if not F.rank(i):
            continue
        rhs = comps.get(i - 1, RMatrix.zero(F.module(i - 1), G.module(i - 1))) @ F.d(i)
        sys = _GradedSystem(F.ring)
        sys.unknown("eta", G.module(i), F.module(i))
        sys.add_term(0, "eta", left=G.d(i))
        sys.add_rhs(0, rhs)
        sol = sys.solve(rng=rng)
        if sol is None:
            raise LiftObstructed(i)
        comps[i] = sol["eta"]
    return ChainMap(F, G, comps)


def find_null_homotopy(phi, should_stop=None):
    """A family alpha with phi = d alpha + alpha d (modulo target relations), or None.

    All unknown components are solved for in a single linear system.
    """
    F, X = phi.source, phi.target
    if not F.is_free:
        raise MalformedInput("null-homotopy test needs a free source complex")
    sys = _GradedSystem(F.ring, should_stop=should_stop)
    lo = min(F.lo, X.lo) - 1
    hi = max(F.hi, X.hi) + 1
    for i in range(lo, hi + 1):
        if F.rank(i) and X.rank(i + 1):
            sys.unknown(("a", i), X.module(i + 1), F.module(i))
        if F.rank(i) and X.rel(i) is not None:
            sys.unknown(("g", i), X.rel(i).source, F.module(i))
    for i in range(lo, hi + 1):
        if not (F.rank(i) and X.rank(i)):
            continue
        sys.add_term(i, ("a", i), left=X.d(i + 1))
        sys.add_term(i, ("a", i - 1), right=F.d(i))
        if X.rel(i) is not None:
            sys.add_term(i, ("g", i), left=X.rel(i))
        sys.add_rhs(i, phi.component(i))
    sol = sys.solve()
    if sol is None:
        return None
    return {name[1]: m for name, m in sol.items() if name[0] == "a"}


def is_null_homotopic(phi, should_stop=None):
    return find_null_homotopy(phi, should_stop=should_stop) is not None


def is_ghost(phi):
    """True iff phi induces zero on every homology module."""
    F, X = phi.source, phi.target
    for i in F.degrees():
        if not F.rank(i) or not X.rank(i):
            continue
        m = phi.component(i)
        if m.is_zero():
            continue
        bgb = X.boundary_gb(i)
        for z in F.cycles(i).generators:
            image = tuple(
                F.ring.reduce(sum((m.entries[r][c] * z[c] for c in range(len(z)) if z[c]), F.ring.zero()))
                for r in range(m.nrows)
            )
            if not bgb.contains(image):
                return False
    return True
