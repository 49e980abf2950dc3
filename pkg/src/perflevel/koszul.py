"""Koszul complexes and the invariants read off from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .complexes import (
    ChainComplex,
    FreeModule,
    RMatrix,
    homology,
    lift_map,
    quotient_module,
    truncate_leq,
)
from .errors import MalformedInput, PreconditionError
from .resolutions import resolve_module
from .rings import Ideal, beta, minimal_generators, minimal_subset


@dataclass(eq=False)
class KoszulData:
    ring: object
    generators: tuple
    complex: ChainComplex
    base_ideal: Ideal | None = None  # set when built as K(I^c)
    power: int = 1

    @property
    def length(self):
        return len(self.generators)

    @property
    def ideal(self):
        return Ideal(self.ring, self.generators)


def koszul(R, gens, base_ideal=None, power=1):
    """Exterior Koszul complex on ``gens``.

    Basis of degree i: increasing index tuples J; the differential sends e_J
    to sum_t (-1)^t g_{J[t]} e_{J minus J[t]} (t counted from 0).
    """
    gens = tuple(R.element(g) for g in gens)
    for n, g in enumerate(gens):
        if not g:
            raise MalformedInput(f"generator {n} is zero in the ring")
        if not g.is_homogeneous():
            raise MalformedInput(f"generator {g} is not homogeneous")
    s = len(gens)
    degs = [g.degree for g in gens]
    bases = {i: list(combinations(range(s), i)) for i in range(s + 1)}
    mods = {i: FreeModule(R, [sum(degs[j] for j in J) for J in bases[i]]) for i in bases}
    diffs = {}
    for i in range(1, s + 1):
        index = {J: n for n, J in enumerate(bases[i - 1])}
        rows = [[R.zero()] * len(bases[i]) for _ in bases[i - 1]]
        for c, J in enumerate(bases[i]):
            for t, j in enumerate(J):
                face = J[:t] + J[t + 1:]
                rows[index[face]][c] = gens[j] if t % 2 == 0 else -gens[j]
        diffs[i] = RMatrix(mods[i], mods[i - 1], rows, check=False)
    return KoszulData(R, gens, ChainComplex(R, mods, diffs), base_ideal, power)


def koszul_of_ideal(I, power=1):
    """K on a minimal generating set of I^power (records I and the power)."""
    if power == 1:
        gens = minimal_generators(I)
    else:
        gens = list(I.power(power).generators)
    return koszul(I.ring, gens, base_ideal=I, power=power)


def depth_via_koszul(R, I):
    """depth(I, R) = s - max{i : H_i(K(g_1..g_s)) != 0}."""
    if I.is_unit():
        raise PreconditionError("unit ideal")
    K = koszul(R, I.generators).complex
    s = len(I.generators)
    top = max(i for i in range(s + 1) if not homology(K, i).is_zero)
    return s - top


def kappa_nonzero_degrees(R, I, max_b=None):
    """Degrees b where the lift K(I) -> G (G minimal resolution of R/I) is nonzero mod m.

    Uses a minimal generating set of I, so K(I) tensor k is the exterior
    algebra on Tor_1(R/I, k).
    """
    if I.is_unit():
        raise PreconditionError("unit ideal")
    gens = minimal_generators(I)
    s = len(gens)
    if max_b is None:
        max_b = s
    max_b = min(max_b, s)
    K = koszul(R, gens).complex
    data = kappa_lift(R, I, max_b, K)
    eta = data["lift"]
    out = set()
    for b in range(0, max_b + 1):
        if eta.component(b).unit_entries():
            out.add(b)
    return out


def kappa_lift(R, I, max_b, K=None):
    """Minimal resolution G of R/I to ``max_b`` steps and a lift K_{<=max_b} -> G."""
    if K is None:
        K = koszul(R, minimal_generators(I)).complex
    res = resolve_module(quotient_module(I), steps=max_b, check_complete=False)
    G = res.complex
    Kt = truncate_leq(K, max_b)
    bottom = RMatrix(Kt.module(0), G.module(0), [[R.one()]])
    eta = lift_map(Kt, G, bottom, degree=0)
    return {"resolution": res, "lift": eta, "source": Kt}


@dataclass
class WellDefinedReport:
    passed: bool
    rows: list = field(default_factory=list)  # (i, series of K(gens, y), expected series)


def check_well_defined(R, gens, y):
    """Compare H(K(gens, y)) with H(K(gens)) + H(K(gens))(-deg y) shifted by one."""
    I = Ideal(R, gens)
    y = R.element(y)
    if not y:
        raise PreconditionError("y is zero in the ring")
    if not I.contains(y):
        raise PreconditionError(f"{y} is not in the ideal generated by the list")
    small = koszul(R, gens).complex
    big = koszul(R, list(gens) + [y]).complex
    rows = []
    ok = True
    for i in range(0, len(gens) + 2):
        lhs = homology(big, i).series
        rhs = homology(small, i).series + homology(small, i - 1).series.shift(y.degree)
        rows.append((i, lhs, rhs))
        ok = ok and lhs == rhs
    return WellDefinedReport(ok, rows)


def cycles_in_mK(R, gens):
    """True iff all cycles of K(gens) in positive degrees lie in m K."""
    gens = [R.element(g) for g in gens]
    keep = minimal_subset(R, (0,), [(g,) for g in gens])
    if len(keep) != len(gens):
        bad = [i for i in range(len(gens)) if i not in keep]
        raise PreconditionError(
            f"generators {bad} are redundant: {', '.join(str(gens[i]) for i in bad)}"
        )
    K = koszul(R, gens).complex
    for i in range(1, len(gens) + 1):
        for z in K.cycles(i).generators:
            if any(f.constant_term() for f in z):
                return False
    return True


def is_koszul_minimal(data):
    return len(data.generators) == beta(data.ideal)
