import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from perflevel.complexes import (
    ChainMap,
    RMatrix,
    cone,
    direct_sum,
    find_null_homotopy,
    homology,
    identity_map,
    is_ghost,
    is_null_homotopic,
    lift_map,
    make_complex,
    minimize,
    multiplication_map,
    nullhomotopic_map,
    suspend,
    tensor_base_change,
    truncate_geq,
    truncate_leq,
    zero_complex,
    zero_map,
)
from perflevel.errors import ComplexError, LiftObstructed, MalformedInput, NotHomogeneous
from perflevel.koszul import koszul
from perflevel.resolutions import residue_field, resolve_module
from perflevel.rings import make_ring

from conftest import ARTINIAN, oracle, random_complex, ring
from oracle import homology_lengths, null_homotopic

P = 101
A = make_ring(P, ["x"], relations=["x^2"])
S2 = make_ring(P, ["x", "y"])


def lengths(F):
    return [homology(F, i).length for i in range(F.lo, F.hi + 1)]


def series(F, i, top=8):
    return homology(F, i).series.window(0, top)


def three_term():
    return make_complex(A, {0: [0], 1: [1], 2: [2]}, {1: [["x"]], 2: [["x"]]})


def test_koszul_x_over_dual_numbers():
    K = make_complex(A, {0: [0], 1: [1]}, {1: [["x"]]})
    assert lengths(K) == [1, 1]
    assert not homology(K, 0).is_zero


def test_rejects_bad_differentials():
    with pytest.raises(NotHomogeneous, match="inhomogeneous entry at"):
        make_complex(A, {0: [0], 1: [0]}, {1: [["x"]]})
    with pytest.raises(ComplexError, match="d-squared nonzero at degree 2"):
        make_complex(S2, {0: [0], 1: [1], 2: [2]}, {1: [["x"]], 2: [["y"]]})
    with pytest.raises(ComplexError):
        make_complex(A, {0: [0], 1: [1]}, {1: [["x", "x"]]})


def test_zero_complex_has_no_homology():
    Z = zero_complex(A)
    assert Z.is_zero()
    assert homology(Z, 0).is_zero


def test_suspend_examples():
    K = make_complex(A, {0: [0], 1: [1]}, {1: [["x"]]})
    s = suspend(K, 1)
    assert s.module(2).twists == (1,) or list(s.module(2).twists) == [1]
    assert s.d(2).entries[0][0] == -A.element("x")
    assert suspend(K, 0) == K
    assert suspend(suspend(K, 1), -1) == K


def test_truncations():
    F = three_term()
    G, tau = truncate_geq(F, 1)
    assert (G.lo, G.hi) == (1, 2)
    assert tau.component(1) == RMatrix.identity(F.module(1))
    G0, tau0 = truncate_geq(F, 0)
    assert G0 == F
    assert tau0.component(0) == RMatrix.identity(F.module(0))
    assert truncate_leq(F, 2) == F


def test_cone_examples():
    R1 = make_complex(A, {0: [0]})
    C = cone(identity_map(R1))
    assert C.d(1).entries[0][0] == A.one()
    assert all(homology(C, i).is_zero for i in (0, 1))
    Z = cone(zero_map(R1, R1))
    F = make_ring(P, [])
    one = make_complex(F, {0: [0]})
    Cz = cone(zero_map(one, one))
    assert lengths(Cz) == [1, 1]
    assert lengths(Z) == [2, 2]


def test_cone_on_multiplication_is_koszul():
    Kx = koszul(S2, ["x"]).complex
    C = cone(multiplication_map(Kx, "y"))
    Kxy = koszul(S2, ["x", "y"]).complex
    assert C.is_minimal()
    assert minimize(C).ranks() == Kxy.ranks()
    for i in range(0, 3):
        assert series(C, i) == series(Kxy, i)


def test_three_term_homology():
    assert lengths(three_term()) == [1, 0, 1]


def test_base_change_to_quotient():
    Kx = koszul(make_ring(P, ["x"]), ["x"]).complex
    B = tensor_base_change(Kx, A, ["x"])
    assert lengths(B) == [1, 1]
    R = ring("m2_2")
    Km = tensor_base_change(koszul(S2, ["x", "y"]).complex, R, ["x", "y"])
    assert Km == koszul(R, ["x", "y"]).complex
    with pytest.raises(MalformedInput):
        tensor_base_change(Kx, A, ["x^2"])
    flat = make_complex(S2, {0: [0], 1: [1]}, {1: [["0"]]})
    assert tensor_base_change(flat, ring("m2_2"), ["x", "y"]).d(1).is_zero()


def test_minimize_examples():
    F = three_term()
    R1 = make_complex(A, {0: [0]})
    big = direct_sum(F, cone(identity_map(R1)))
    assert not big.is_minimal()
    small = minimize(big)
    assert small.is_minimal()
    assert small.ranks() == F.ranks()
    assert minimize(F) == F
    assert minimize(cone(identity_map(R1))).is_zero()


def test_lift_map_examples():
    R = ring("m2_2")
    K = koszul(R, ["x", "y"]).complex
    G = resolve_module(residue_field(R), steps=2).complex
    eta = lift_map(K, G, RMatrix.identity(K.module(0)))
    assert eta.component(0) == RMatrix.identity(K.module(0))
    F = three_term()
    assert lift_map(F, F, RMatrix.identity(F.module(0))).component(2) == RMatrix.identity(F.module(2))
    Kx = make_complex(A, {0: [0], 1: [1]}, {1: [["x"]]})
    mult = multiplication_map(Kx, "x")
    lifted = lift_map(mult.source, Kx, mult.component(0))
    assert ChainMap(mult.source, Kx, lifted.components)  # commutes


def test_lift_obstruction():
    # Target with H_1 != 0 blocks the identity lift from a resolution-like source.
    Kx = make_complex(A, {0: [0], 1: [1]}, {1: [["x"]]})
    res = resolve_module(residue_field(A), steps=3).complex
    with pytest.raises(LiftObstructed, match="lift obstructed at degree"):
        lift_map(res, Kx, RMatrix.identity(res.module(0)))


def test_null_homotopy_examples():
    F = three_term()
    assert is_null_homotopic(zero_map(F, F))
    R1 = make_complex(A, {0: [0]})
    C = cone(identity_map(R1))
    h = find_null_homotopy(identity_map(C))
    assert h is not None
    rebuilt = nullhomotopic_map(C, C, h)
    assert all(rebuilt.component(i) == identity_map(C).component(i) for i in C.degrees())
    assert not is_null_homotopic(identity_map(F))


def test_ghost_examples():
    Kx = make_complex(A, {0: [0], 1: [1]}, {1: [["x"]]})
    assert not is_ghost(identity_map(Kx))
    R1 = make_complex(A, {0: [0]})
    C = cone(identity_map(R1))
    assert is_ghost(identity_map(C))
    # projecting onto degrees >= 1 keeps the class in H_2, so it is not ghost
    assert not is_ghost(truncate_geq(three_term(), 1)[1])


def test_multiplication_by_variable_on_koszul_is_null():
    Kx = make_complex(A, {0: [0], 1: [1]}, {1: [["x"]]})
    phi = multiplication_map(Kx, "x")
    assert is_null_homotopic(phi)
    assert is_ghost(phi)


# -- properties against the brute-force oracle ----------------------------

ranks = st.lists(st.integers(0, 3), min_size=2, max_size=4)


@settings(max_examples=25)
@given(st.sampled_from(list(ARTINIAN)), ranks, st.integers(0, 10**6))
def test_homology_matches_oracle(name, rk, seed):
    R = ring(name)
    F = random_complex(R, np.random.default_rng(seed), rk)
    expected = homology_lengths(oracle(name), F)
    assert {i: homology(F, i).length for i in expected} == expected


@settings(max_examples=20)
@given(st.sampled_from(["x2", "m2_2", "x2y2", "x2y3"]), ranks, st.integers(0, 10**6))
def test_minimize_preserves_homology(name, rk, seed):
    R = ring(name)
    F = random_complex(R, np.random.default_rng(seed), rk)
    M = minimize(F)
    assert M.is_minimal()
    for i in range(F.lo, F.hi + 1):
        assert homology(M, i).series == homology(F, i).series


@settings(max_examples=15)
@given(st.sampled_from(["x2", "m2_2", "x2y3"]), ranks, st.integers(-2, 2), st.integers(0, 10**6))
def test_suspension_shifts_homology(name, rk, k, seed):
    F = random_complex(ring(name), np.random.default_rng(seed), rk)
    G = suspend(F, k)
    for i in range(F.lo, F.hi + 1):
        assert homology(G, i + k).series == homology(F, i).series


@settings(max_examples=15)
@given(st.sampled_from(["x2", "m2_2", "x2y2"]), ranks, st.integers(0, 10**6))
def test_null_homotopic_maps_are_ghosts(name, rk, seed):
    rng = np.random.default_rng(seed)
    R = ring(name)
    F = random_complex(R, rng, rk)
    for phi in (identity_map(F), multiplication_map(F, "x")):
        verdict = is_null_homotopic(phi)
        assert verdict == null_homotopic(oracle(name), phi)
        if verdict:
            assert is_ghost(phi)
