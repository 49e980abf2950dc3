"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion."""

import time

import numpy as np
import pytest

from perflevel.complexes import (
    RMatrix,
    cone,
    homology,
    identity_map,
    is_ghost,
    is_null_homotopic,
    minimize,
    multiplication_map,
    nullhomotopic_map,
    tensor_base_change,
    truncate_geq,
)
from perflevel.koszul import check_well_defined, koszul, koszul_of_ideal
from perflevel.level import everyn_example, level_of_module, level_report, nit_cited_bound, upper_bound
from perflevel.resolutions import free_module, quotient_module, residue_field, resolve_module
from perflevel.rings import Ideal, beta, make_ring

from conftest import ARTINIAN, ZOO, oracle, random_complex, random_element, ring
from oracle import homology_lengths, null_homotopic

P = 101


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line for the criterion and assert it."""

    def report(number, label, ok, elapsed, limit):
        ok = bool(ok) and elapsed < limit
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {label} ({elapsed:.2f}s, limit {limit}s)")
        assert ok, f"criterion {number} failed"

    return report


def test_criterion_1_koszul_of_maximal_ideal(verdict):
    rings = [
        make_ring(P, ["x"], relations=["x^2"]),
        make_ring(P, ["x", "y"], relations=["x^2", "x*y", "y^2"]),
        make_ring(P, ["x", "y", "z"], relations=["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"]),
    ]
    ok, worst = True, 0.0
    for R in rings:
        t = time.perf_counter()
        rep = level_report(koszul_of_ideal(R.maximal_ideal()))
        worst = max(worst, time.perf_counter() - t)
        ok = ok and rep.exact and rep.lower == R.edim + 1
    verdict(1, "level K(m) = edim + 1 on three rings, each run", ok, worst, 10)


def test_criterion_2_every_level_occurs(verdict):
    R = make_ring(P, ["x"], relations=["x^2"])
    t = time.perf_counter()
    ok = True
    for n in range(6):
        ex = everyn_example(R, n)
        ok = ok and ex.upper.value == n + 1 and ex.lower.value == n + 1
        if n:
            w = ex.lower.witness["ghost"]
            ok = ok and all(is_ghost(g) for g in w.ghosts) and not is_null_homotopic(w.composite)
        ok = ok and ex.lower.replay()
    verdict(2, "truncated resolutions of k have level n + 1 for n = 0..5", ok, time.perf_counter() - t, 30)


def test_criterion_3_module_levels(verdict):
    S = make_ring(P, ["x", "y", "z"])
    t = time.perf_counter()
    reps = [
        level_of_module(residue_field(S)),
        level_of_module(quotient_module(Ideal(S, ["x"]))),
        level_of_module(free_module(S, [0])),
    ]
    ok = [(r.lower, r.exact) for r in reps] == [(4, True), (2, True), (1, True)]
    verdict(3, "level of k, S/(x), S over k[x,y,z] is 4, 2, 1", ok, time.perf_counter() - t, 10)


def test_criterion_4_parameter_koszul(verdict):
    R = make_ring(P, ["x", "y"], relations=["x*y"])
    t = time.perf_counter()
    rep = level_report(koszul_of_ideal(Ideal(R, ["x+y"])))
    cert = rep.certificate("gapsmap")
    ok = rep.exact and rep.lower == 2 == R.krull_dim + 1 and cert is not None and cert.replay()
    verdict(4, "K(x+y) over k[x,y]/(xy) has level dim R + 1 = 2", ok, time.perf_counter() - t, 10)


def test_criterion_5_power_sandwich(verdict):
    S = make_ring(P, ["x", "y"])
    I = Ideal(S, ["x", "y"])
    t = time.perf_counter()
    rep = level_report(koszul_of_ideal(I, 2))
    cited = rep.certificate("cited_power")
    ok = (rep.lower, rep.upper) == (3, 4) and cited is not None and cited.value == 3
    ok = ok and rep.lower == beta(I) + 1
    verdict(5, "K(I^2) over k[x,y]: certified [3, 4], cited 3", ok, time.perf_counter() - t, 20)


def test_criterion_6_well_defined(verdict):
    A = make_ring(P, ["x"], relations=["x^2"])
    S = make_ring(P, ["x", "y"])
    t = time.perf_counter()
    ok = all([
        check_well_defined(A, ["x"], "x").passed,
        check_well_defined(S, ["x", "y"], "x+y").passed,
        check_well_defined(S, ["x"], "x").passed,
        check_well_defined(ring("m2_2"), ["x", "y"], "x").passed,
    ])
    verdict(6, "adding a redundant generator splits the Koszul homology", ok, time.perf_counter() - t, 10)


def _random_homotopy(F, rng):
    R = F.ring
    h = {}
    for i in range(F.lo, F.hi):
        src, tgt = F.module(i), F.module(i + 1)
        if not (src.rank and tgt.rank):
            continue
        rows = [[random_element(R, s - r, rng) if s >= r else R.zero() for s in src.twists]
                for r in tgt.twists]
        h[i] = RMatrix(src, tgt, rows)
    return h


def test_criterion_7_oracle_equivalence(verdict):
    rng = np.random.default_rng(2024)
    names = [n for n in ARTINIAN if ring(n).k_length <= 6]
    t = time.perf_counter()
    complexes = maps = 0
    ok = True
    while complexes < 60:
        name = names[complexes % len(names)]
        R = ring(name)
        ranks = [int(r) for r in rng.integers(1, 4, size=int(rng.integers(2, 5)))]
        F = random_complex(R, rng, ranks)
        expected = homology_lengths(oracle(name), F)
        ok = ok and all(homology(F, i).length == expected[i] for i in expected)
        candidates = [identity_map(F), multiplication_map(F, R.gens[0])]
        if F.hi > F.lo:
            candidates.append(nullhomotopic_map(F, F, _random_homotopy(F, rng)))
            candidates.append(truncate_geq(F, F.lo + 1)[1])
        for phi in candidates:
            ok = ok and is_null_homotopic(phi) == null_homotopic(oracle(name), phi)
            maps += 1
        complexes += 1
    label = f"{complexes} random complexes and {maps} maps agree with the expanded oracle"
    verdict(7, label, ok, time.perf_counter() - t, 60)


def _invariants_on(name, rng):
    R = ring(name)
    ok = True
    if R.artinian:
        F = random_complex(R, rng, [2, 3, 2])
        for G in (F, cone(identity_map(F)), minimize(F)):
            G.validate()
        M = minimize(F)
        ok = ok and M.is_minimal()
        ok = ok and all(homology(M, i).series == homology(F, i).series for i in F.degrees())
        for phi in (identity_map(F), multiplication_map(F, R.gens[0])):
            if is_null_homotopic(phi):
                ok = ok and is_ghost(phi)
    K = koszul(R, R.gens).complex
    K.validate()
    S = make_ring(P, list(R.S.variables))
    tensor_base_change(koszul(S, S.gens).complex, R, list(R.S.variables)).validate()
    res = resolve_module(residue_field(R), steps=2, check_complete=False)
    G = res.complex
    ok = ok and G.is_minimal()
    ok = ok and all(not f.constant_term() for i in range(1, G.hi + 1) for row in G.d(i).entries for f in row)
    ok = ok and res.betti[1] == R.edim
    return ok


def test_criterion_8_invariants_on_zoo(verdict):
    rng = np.random.default_rng(7)
    t = time.perf_counter()
    ok = all(_invariants_on(name, rng) for name in sorted(ZOO))
    verdict(8, f"structural invariants on all {len(ZOO)} zoo rings", ok, time.perf_counter() - t, 120)


def test_criterion_9_cited_bound_consistency(verdict):
    rng = np.random.default_rng(99)
    t = time.perf_counter()
    fired = 0
    ok = True
    for name in sorted(ZOO):
        R = ring(name)
        candidates = [koszul(R, R.gens).complex, koszul(R, [R.gens[0]]).complex]
        if R.artinian:
            candidates.append(random_complex(R, rng, [1, 2, 2]))
        ideals = [R.maximal_ideal(), Ideal(R, [R.gens[0]])]
        for F in candidates:
            up = upper_bound(F).value
            for I in ideals:
                c = nit_cited_bound(F, I)
                if c.value is not None:
                    fired += 1
                    ok = ok and c.value <= up
    ok = ok and fired > 0
    verdict(9, f"cited bound never exceeds the certified upper bound ({fired} firings)", ok,
            time.perf_counter() - t, 120)
