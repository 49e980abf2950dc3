"""Certified and cited bounds for the level of a bounded free complex.

Lower bounds are certified by ghost-map witnesses: a chain map F -> X(0)
followed by n ghost maps X(0) -> ... -> X(n) whose composite out of F is
not null-homotopic gives level(F) >= n + 1.  Every witness can be replayed.
Cited bounds come from theorems whose proofs cannot be carried out here;
their hypotheses are checked and recorded but they never move ``lower``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complexes import (
    ChainComplex,
    ChainMap,
    ModulePresentation,
    RMatrix,
    homology,
    identity_map,
    is_ghost,
    is_null_homotopic,
    lift_map,
    minimize,
    relation_matrix,
    residue_field,
    truncate_geq,
    truncate_leq,
)
from .errors import PreconditionError
from .koszul import KoszulData, depth_via_koszul, kappa_lift
from .polyring import HilbertSeries, module_gb, syzygies
from .resolutions import is_free, pd_probe, resolve_module, syzygy
from .rings import beta, dim_quotient

CERTIFIED_KINDS = ("gap", "gapsmap", "kappa", "minimal_gap", "pd", "length_upper")
CITED_KINDS = ("cited_nit", "cited_dim_sop", "cited_power")


@dataclass(eq=False)
class GhostWitness:
    """F -> X(0) -> X(1) -> ... -> X(n) with every X(j) -> X(j+1) ghost."""

    source: ChainComplex
    first: ChainMap
    ghosts: list
    composite: ChainMap

    @property
    def length(self):
        return len(self.ghosts)

    def replay(self):
        comp = self.first
        for g in self.ghosts:
            if not is_ghost(g):
                return False
            comp = g @ comp
        return not is_null_homotopic(comp)

    def summary(self):
        return {
            "ghost_maps": len(self.ghosts),
            "source_ranks": [self.source.rank(i) for i in self.source.degrees()],
            "source_lo": self.source.lo,
        }


@dataclass(eq=False)
class BoundCertificate:
    kind: str
    value: int | None
    witness: dict = field(default_factory=dict)
    certified: bool = True
    direction: str = "lower"

    def replay(self):
        """Re-run the checks that justify this bound."""
        w = self.witness
        if not self.certified:
            return bool(w.get("hypotheses_ok"))
        ok = True
        if "ghost" in w:
            ok = ok and w["ghost"].replay()
        if "h0" in w:
            ok = ok and not is_free(w["h0"])
        if self.kind == "length_upper" and "complex" in w:
            ok = ok and upper_bound(w["complex"]).value == self.value
        return ok

    def to_dict(self):
        return {
            "kind": self.kind,
            "value": self.value,
            "certified": self.certified,
            "direction": self.direction,
            "witness": _jsonable(self.witness),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, set):
        return sorted(_jsonable(v) for v in obj)
    if isinstance(obj, GhostWitness):
        return obj.summary()
    if isinstance(obj, ChainComplex):
        return {
            "lo": obj.lo,
            "hi": obj.hi,
            "twists": {str(i): list(obj.module(i).twists) for i in obj.degrees()},
        }
    if isinstance(obj, ModulePresentation):
        return {
            "twists": list(obj.twists),
            "relations": [[str(f) for f in col] for col in obj.relations],
        }
    if isinstance(obj, RMatrix):
        return obj.tolist()
    if isinstance(obj, ChainMap):
        return {str(i): m.tolist() for i, m in obj.components.items()}
    if isinstance(obj, HilbertSeries):
        return {str(k): v for k, v in obj.numerator}
    if isinstance(obj, float) and math.isinf(obj):
        return None
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


@dataclass(eq=False)
class LevelReport:
    object: str
    lower: int
    upper: int | None  # None stands for infinity
    certificates: list = field(default_factory=list)
    cited: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    homology: dict | None = None
    betti: list | None = None

    @property
    def exact(self):
        return self.upper is not None and self.lower == self.upper

    def certificate(self, kind):
        for c in self.certificates + self.cited:
            if c.kind == kind:
                return c
        return None

    def to_dict(self, command="level"):
        return {
            "object": self.object,
            "command": command,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "certificates": [c.to_dict() for c in self.certificates],
            "cited": [c.to_dict() for c in self.cited],
            "homology": self.homology,
            "betti": self.betti,
            "notes": list(self.notes),
        }


# -- witnesses ----------------------------------------------------------------


def ghost_witness(F, eta, a, b):
    """Ghost sequence G' -> G'_{>=a+1} -> ... -> G'_{>=b} behind a gap bound.

    G' is G_{<=b} with the cycles Z_b(G) divided out of degree b, and the
    first map is eta followed by the quotient G -> G'.
    """
    G = eta.target
    R = G.ring
    cycles = G.cycles(b).generators if G.rank(b) else []
    mods = {i: G.module(i) for i in range(min(G.lo, b), b + 1)}
    diffs = {i: G.d(i) for i in mods if i - 1 in mods}
    rels = {}
    if cycles:
        rels[b] = relation_matrix(G.module(b), cycles)
    quotient = ChainComplex(R, mods, diffs, rels, check=False)
    first = ChainMap(F, quotient, {i: eta.component(i) for i in mods if F.rank(i)}, check=False)
    ghosts = []
    current = quotient
    for j in range(a + 1, b + 1):
        nxt, tau = truncate_geq(current, j)
        ghosts.append(tau)
        current = nxt
    comp = first
    for g in ghosts:
        comp = g @ comp
    return GhostWitness(F, first, ghosts, comp)


def _nonzero_homology(P):
    return {i: not homology(P, i).is_zero for i in P.degrees()}


def _trivial(kind, P, hom):
    if not any(hom.values()):
        return BoundCertificate(kind, 0, {"reason": "homology vanishes"})
    w = GhostWitness(P, identity_map(P), [], identity_map(P))
    return BoundCertificate(kind, 1, {"reason": "nonzero homology", "ghost": w})


# -- bounds -----------------------------------------------------------------


def upper_bound(F):
    """Length of the minimal model: top minus bottom nonzero degree, plus one."""
    P = minimize(F)
    sup = P.support()
    if sup is None:
        return BoundCertificate("length_upper", 0, {"complex": P}, direction="upper")
    lo, hi = sup
    return BoundCertificate(
        "length_upper", hi - lo + 1, {"complex": P, "lo": lo, "hi": hi}, direction="upper"
    )


def lower_bound_gap(F):
    """Best bound b - a + 1 over homology gaps whose syzygy H_0 is not free."""
    P = minimize(F)
    hom = _nonzero_homology(P)
    best = _trivial("gap", P, hom)
    if best.value == 0:
        return best
    for b in range(P.lo + 1, P.hi + 1):
        below = [i for i in range(P.lo, b) if hom[i]]
        if not below:
            continue
        a = max(below)
        if b - a + 1 <= best.value:
            continue
        h0 = syzygy(P, b - 1).h0
        if is_free(h0):
            continue
        w = ghost_witness(P, identity_map(P), a, b)
        best = BoundCertificate("gap", b - a + 1, {"a": a, "b": b, "h0": h0, "ghost": w})
    return best


def _submodule_gb(G, b, I):
    """Groebner basis of I*G_b + Z_b(G)."""
    R = G.ring
    M = G.module(b)
    cols = []
    for j in range(M.rank):
        for g in I.generators:
            cols.append(tuple(g if r == j else R.zero() for r in range(M.rank)))
    cols += list(G.cycles(b).generators)
    return module_gb(cols, M.twists, R.S, relations=R.relation_polys)


def lower_bound_gapsmap(F, eta, I, a, b, kind="gapsmap"):
    """Bound b - a + 1 from a chain map eta: F -> G with image not in I*G_b + Z_b(G)."""
    G = eta.target
    if eta.source is not F and eta.source != F:
        raise PreconditionError("chain map does not start at the complex")
    for i in range(F.lo + 1, F.hi + 1):
        for row in F.d(i).entries:
            for f in row:
                if f and not I.contains(f):
                    raise PreconditionError(f"differential at degree {i} has image outside I*F")
    for i in range(a + 1, b):
        if not homology(G, i).is_zero:
            raise PreconditionError(f"H_{i}(G) is nonzero")
    if not G.rank(b) or not F.rank(b):
        return BoundCertificate(kind, 0, {"a": a, "b": b, "contained": True})
    gb = _submodule_gb(G, b, I)
    columns = eta.component(b).columns()
    outside = [k for k, c in enumerate(columns) if not gb.contains(c)]
    if not outside:
        return BoundCertificate(kind, 0, {"a": a, "b": b, "contained": True})
    w = ghost_witness(F, eta, a, b)
    return BoundCertificate(
        kind,
        b - a + 1,
        {"a": a, "b": b, "column": outside[0], "ideal": [str(g) for g in I.generators], "ghost": w},
    )


def lower_bound_minimal_gap(F):
    """Gap bound on a minimal complex using eta = identity and I = m."""
    notes = []
    P = F
    if not F.is_minimal():
        P = minimize(F)
        notes.append("input minimized first")
    hom = _nonzero_homology(P)
    best = _trivial("minimal_gap", P, hom)
    if best.value == 0:
        best.witness["notes"] = notes
        return best
    m = P.ring.maximal_ideal()
    ident = identity_map(P)
    for b in range(P.lo + 1, P.hi + 1):
        if P.d(b).is_zero():
            continue
        below = [i for i in range(P.lo, b) if hom[i]]
        if not below:
            continue
        a = max(below)
        if b - a + 1 <= best.value:
            continue
        cert = lower_bound_gapsmap(P, ident, m, a, b, kind="minimal_gap")
        if cert.value and cert.value > best.value:
            best = cert
    best.witness["notes"] = notes
    return best


def nit_cited_bound(F, I):
    """dim R - dim R/I + 1 when H_{>=1} has finite length and I kills a minimal generator of H_0."""
    R = F.ring
    transcript = {}

    def fail(reason):
        transcript["hypotheses_ok"] = False
        transcript["failed"] = reason
        return BoundCertificate("cited_nit", None, transcript, certified=False)

    sup = F.support()
    if sup is None or sup[0] < 0:
        return fail("complex must live in degrees 0..n")
    h0 = homology(F, 0)
    if h0.is_zero:
        return fail("H_0 vanishes")
    transcript["H0_nonzero"] = True
    for i in range(1, sup[1] + 1):
        if not homology(F, i).finite_length:
            return fail(f"H_{i} has infinite length")
    transcript["higher_homology_finite_length"] = True
    if not _kills_minimal_generator(F, I):
        return fail("I annihilates no minimal generator of H_0")
    transcript["annihilates_minimal_generator"] = True
    value = R.krull_dim - dim_quotient(I) + 1
    transcript["hypotheses_ok"] = True
    transcript["dim_R"] = R.krull_dim
    transcript["dim_R_mod_I"] = dim_quotient(I)
    return BoundCertificate("cited_nit", value, transcript, certified=False)


def _kills_minimal_generator(F, I):
    """Decide (0 :_{H_0} I) not inside m H_0."""
    R = F.ring
    if I.is_unit():
        return False
    M = F.module(0)
    t = M.twists
    r = len(t)
    bounds = F.d(1).columns() if F.rank(1) else []
    gens = I.generators
    if not gens:
        colon = [tuple(R.one() if i == j else R.zero() for i in range(r)) for j in range(r)]
    else:
        target = [tj - g.degree for g in gens for tj in t]
        columns = []
        for j in range(r):
            col = []
            for g in gens:
                col += [g if i == j else R.zero() for i in range(r)]
            columns.append(tuple(col))
        modulo = []
        for l in range(len(gens)):
            for c in bounds:
                col = [R.zero()] * (r * len(gens))
                col[l * r:(l + 1) * r] = c
                modulo.append(tuple(col))
        colon = syzygies(columns, target, t, R.S, modulo=modulo, relations=R.relation_polys).generators
    small = [tuple(x if i == j else R.zero() for i in range(r)) for x in R.gens for j in range(r)]
    gb = module_gb(small + list(bounds), t, R.S, relations=R.relation_polys)
    return any(not gb.contains(c) for c in colon)


# -- modules and examples --------------------------------------------------


def level_of_module(M, bound=10, name="M"):
    """Level of a module through its minimal resolution (pd + 1 when finite)."""
    probe = pd_probe(M, bound)
    res = probe.resolution
    P = res.complex
    betti = res.betti
    if probe.exact is not None:
        d = probe.exact
        if d < 0:
            cert = BoundCertificate("pd", 0, {"pd": None})
            return LevelReport(name, 0, 0, [cert], notes=["zero module"], betti=betti)
        upper = upper_bound(P)
        lower = lower_bound_gap(P)
        pd = BoundCertificate("pd", d + 1, {"pd": d, "betti": betti, "complete": True})
        return LevelReport(name, max(lower.value, pd.value), upper.value, [pd, lower, upper], betti=betti)
    n = probe.at_least
    lower = lower_bound_gap(P)
    pd = BoundCertificate(
        "pd",
        lower.value,
        {"at_least": n, "betti": betti, "complete": False},
    )
    notes = [
        f"projective dimension at least {n}; level is infinite or beyond the step bound",
        "gap witness uses the resolution truncated at the step bound",
    ]
    return LevelReport(name, lower.value, None, [pd, lower], notes=notes, betti=betti)


@dataclass(eq=False)
class CertifiedComplex:
    complex: ChainComplex
    upper: BoundCertificate
    lower: BoundCertificate

    @property
    def level(self):
        return self.lower.value if self.lower.value == self.upper.value else None


def everyn_example(R, n):
    """Truncated minimal resolution of k with certified level n + 1."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    res = resolve_module(residue_field(R), steps=n, check_complete=False)
    if res.complex.hi < n:
        raise PreconditionError(
            f"the residue field has projective dimension {res.complex.hi} < {n}; "
            f"pick n <= {res.complex.hi} or a singular ring"
        )
    F = truncate_leq(res.complex, n)
    return CertifiedComplex(F, upper_bound(F), lower_bound_gap(F))


# -- aggregation -------------------------------------------------------------


def _homology_summary(P):
    out = {}
    for i in P.degrees():
        h = homology(P, i)
        out[str(i)] = {
            "zero": h.is_zero,
            "min_gens": h.min_gens,
            "length": None if h.length == math.inf else h.length,
            "hilbert": h.hilbert,
            "hilbert_from": h.window()[0],
        }
    return out


def koszul_certificates(data, steps=10):
    """Koszul-specific certified and cited bounds plus notes."""
    R = data.ring
    I = data.ideal
    certs, cited, notes = [], [], []
    if I.is_unit():
        notes.append("unit ideal: the Koszul complex is exact")
        return certs, cited, notes
    K = data.complex
    m = R.maximal_ideal()
    s = len(data.generators)
    minimal = s == beta(I)
    if minimal:
        lift = kappa_lift(R, I, s, K)
        eta = lift["lift"]
        degrees = [b for b in range(s + 1) if eta.component(b).unit_entries()]
        if degrees:
            b = max(degrees)
            c = lower_bound_gapsmap(lift["source"], eta, m, 0, b, kind="kappa")
            c.witness["kappa_degrees"] = degrees
            if c.value:
                certs.append(c)
    else:
        notes.append("generators are not minimal; kappa test skipped")
    depth = depth_via_koszul(R, I)
    notes.append(f"depth(I, R) = {depth}; certified in the sharper form depth + 1 by the minimal gap")
    dim = R.krull_dim
    if s == dim and dim_quotient(I) == 0:
        G = resolve_module(residue_field(R), steps=dim, check_complete=False).complex
        bottom = RMatrix(K.module(0), G.module(0), [[R.one()]])
        eta = lift_map(K, G, bottom, degree=0)
        c = lower_bound_gapsmap(K, eta, I, 0, dim)
        if c.value:
            certs.append(c)
        cited.append(
            BoundCertificate(
                "cited_dim_sop",
                dim + 1,
                {"hypotheses_ok": True, "system_of_parameters": True, "dim_R": dim},
                certified=False,
            )
        )
    if data.base_ideal is not None:
        base = data.base_ideal
        value = beta(base) + 1
        cited.append(
            BoundCertificate(
                "cited_power",
                value,
                {"hypotheses_ok": True, "power": data.power, "beta": value - 1},
                certified=False,
                direction="upper",
            )
        )
        if depth_via_koszul(R, base) == beta(base):
            notes.append(
                f"I is generated by a regular sequence: level of K(I^{data.power}) is pinned at {value}"
            )
    return certs, cited, notes


def level_report(F, ideals=(), steps=10, name="F"):
    """Run every applicable bound on F (a ChainComplex or KoszulData)."""
    data = F if isinstance(F, KoszulData) else None
    C = data.complex if data else F
    upper = upper_bound(C)
    P = upper.witness["complex"]
    certs = [upper, lower_bound_gap(C), lower_bound_minimal_gap(P)]
    cited, notes = [], []
    if data is not None:
        extra_c, extra_cited, extra_notes = koszul_certificates(data, steps)
        certs += extra_c
        cited += extra_cited
        notes += extra_notes
        ideals = [data.ideal] + [I for I in ideals if I != data.ideal]
    for I in ideals:
        c = nit_cited_bound(P if not P.is_zero() else C, I)
        c.witness["ideal"] = [str(g) for g in I.generators]
        if c.value is not None:
            cited.append(c)
        else:
            notes.append(f"cited_nit skipped for ({', '.join(map(str, I.generators))}): {c.witness['failed']}")
    lower = max(c.value for c in certs if c.direction == "lower" and c.value is not None)
    if upper.value < lower:
        raise AssertionError("lower bound exceeds upper bound")
    for c in cited:
        if c.direction == "upper" and c.value < upper.value:
            notes.append(f"{c.kind} suggests upper {c.value}; certified upper stays {upper.value}")
    return LevelReport(name, lower, upper.value, certs, cited, notes, _homology_summary(P))
