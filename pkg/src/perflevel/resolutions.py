"""Minimal graded free resolutions, syzygy complexes and projective dimension."""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainComplex,
    FreeModule,
    ModulePresentation,
    RMatrix,
    free_module,
    minimize,
    quotient_module,
    residue_field,
    suspend,
    truncate_geq,
    _columns_degrees,
)
from .polyring import syzygies
from .rings import minimal_subset

__all__ = [
    "ModulePresentation",
    "Resolution",
    "SyzygyComplex",
    "PdProbe",
    "free_module",
    "quotient_module",
    "residue_field",
    "resolve_module",
    "resolution_of_complex",
    "syzygy",
    "is_free",
    "pd_probe",
]


@dataclass(eq=False)
class Resolution:
    target: ModulePresentation
    complex: ChainComplex  # P_0 in degree 0
    cover: list  # images in M's free module of the chosen generators
    complete: bool

    @property
    def betti(self):
        return [self.complex.rank(i) for i in range(0, self.complex.hi + 1)] or [0]

    @property
    def steps(self):
        return [self.complex.d(i) for i in range(1, self.complex.hi + 1)]

    @property
    def length(self):
        return self.complex.hi


def _unit_columns(R, m):
    return [tuple(R.one() if i == j else R.zero() for i in range(m)) for j in range(m)]


def _prune(R, twists, vectors):
    keep = minimal_subset(R, twists, vectors)
    vecs = [vectors[i] for i in keep]
    return vecs, _columns_degrees(R, twists, vecs)


def resolve_module(M, steps=10, check_complete=True):
    """Minimal free resolution of ``M`` with at most ``steps`` differentials.

    ``complete`` is True when a zero kernel was reached.  With
    ``check_complete`` the kernel of the last differential is computed even
    when the step budget is exhausted, so that finite resolutions of length
    exactly ``steps`` are recognised.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    R = M.ring
    m = len(M.twists)
    J = R.relation_polys
    keep = minimal_subset(R, M.twists, _unit_columns(R, m), modulo=M.relations)
    cover = [_unit_columns(R, m)[j] for j in keep]
    twists = [M.twists[j] for j in keep]
    modules = {0: FreeModule(R, twists)}
    diffs = {}
    complete = False
    if not twists:
        return Resolution(M, ChainComplex(R, modules), cover, True)
    # kernel of the cover P_0 -> M
    sz = syzygies(cover, M.twists, twists, R.S, modulo=M.relations, relations=J)
    kernel = sz.generators
    i = 0
    while True:
        if not kernel:
            complete = True
            break
        if i == steps:
            break
        i += 1
        prev = modules[i - 1]
        cols, degs = _prune(R, prev.twists, kernel)
        modules[i] = FreeModule(R, degs)
        diffs[i] = RMatrix.from_columns(modules[i], prev, cols, check=False)
        if i == steps and not check_complete:
            break
        kernel = syzygies(cols, prev.twists, degs, R.S, relations=J).generators
    return Resolution(M, ChainComplex(R, modules, diffs, check=False), cover, complete)


def resolution_of_complex(F):
    """A bounded free complex is its own resolution; return its minimal model."""
    return minimize(F)


@dataclass(eq=False)
class SyzygyComplex:
    n: int
    complex: ChainComplex
    h0: ModulePresentation


def syzygy(F, n):
    """Omega_n(F) = Sigma^{-n}(P_{>=n}) for P the minimal model of F."""
    P = resolution_of_complex(F)
    top, _ = truncate_geq(P, n)
    C = suspend(top, -n)
    twists = P.module(n).twists
    cols = P.d(n + 1).columns() if P.rank(n + 1) else []
    return SyzygyComplex(n, C, ModulePresentation(F.ring, twists, cols))


def is_free(M):
    """True iff the minimal cover of ``M`` has zero kernel."""
    res = resolve_module(M, steps=0)
    return res.complete


@dataclass(eq=False)
class PdProbe:
    exact: int | None
    at_least: int | None
    resolution: Resolution

    def as_dict(self):
        return {"exact": self.exact} if self.exact is not None else {"at_least": self.at_least}


def pd_probe(M, bound):
    """Projective dimension if the minimal resolution stops within ``bound`` steps.

    The zero module reports ``exact = -1``.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    res = resolve_module(M, steps=bound)
    if res.complete:
        d = res.length if res.complex.rank(0) else -1
        return PdProbe(d, None, res)
    return PdProbe(None, bound + 1, res)
