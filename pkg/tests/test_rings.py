import itertools

import pytest
from hypothesis import given, strategies as st

from perflevel.errors import MalformedInput, NotHomogeneous, PreconditionError
from perflevel.rings import Ideal, beta, dim_quotient, make_ring, minimal_generators

from conftest import ARTINIAN, ring


def test_make_ring_examples():
    R = make_ring(101, ["x"], relations=["x^2"])
    assert (R.edim, R.krull_dim, R.k_length, R.artinian) == (1, 0, 2, True)
    S = make_ring(101, ["x", "y"])
    assert (S.edim, S.krull_dim, S.artinian) == (2, 2, False)
    assert S.k_length == float("inf") or S.k_length == "infinite"
    T = make_ring(101, ["x", "y"], relations=["x*y"])
    assert (T.edim, T.krull_dim) == (2, 1)


@pytest.mark.parametrize("rels, exc", [
    (["x^2 + y"], NotHomogeneous),
    (["x"], MalformedInput),
    (["x + y"], MalformedInput),
])
def test_make_ring_rejects(rels, exc):
    with pytest.raises(exc):
        make_ring(101, ["x", "y"], relations=rels)


def test_make_ring_rejects_composite():
    with pytest.raises(MalformedInput):
        make_ring(91, ["x"])


def test_beta_examples():
    S = make_ring(101, ["x", "y"])
    assert beta(Ideal(S, ["x", "y"])) == 2
    assert beta(Ideal(S, ["x^2", "x*y", "y^2"])) == 3
    P = make_ring(101, ["x"])
    assert beta(Ideal(P, ["x", "x^2"])) == 1
    with pytest.raises(PreconditionError, match="unit ideal"):
        beta(Ideal(S, ["1"]))


def test_dim_quotient_examples():
    S = make_ring(101, ["x", "y"])
    assert dim_quotient(Ideal(S, ["x"])) == 1
    assert dim_quotient(Ideal(S, ["x", "y"])) == 0
    T = make_ring(101, ["x", "y"], relations=["x*y"])
    assert dim_quotient(Ideal(T, ["x+y"])) == 0


def test_reduce_examples():
    R = make_ring(101, ["x"], relations=["x^2"])
    assert R.element("x^2 + x") == R.element("x")
    T = make_ring(101, ["x", "y"], relations=["x*y"])
    assert T.reduce(T.S.parse("x*y") * T.S.parse("x+y")) == T.zero()
    assert R.reduce(R.zero()) == R.zero()


@pytest.mark.parametrize("name", list(ARTINIAN))
def test_artinian_length_and_order_ideal(name):
    R = ring(name)
    assert R.artinian and R.krull_dim == 0
    top = R.top_degree
    assert R.k_length == sum(len(R.basis(d)) for d in range(top + 1))
    assert not R.basis(top + 1)
    for m in (m for d in range(top + 1) for m in R.basis(d)):
        for n in itertools.product(*(range(e + 1) for e in m)):
            assert tuple(n) in R.basis(sum(n))


def _combos(R, gens, coeffs):
    """Append homogeneous combinations g_k + c * x^(deg g_k - deg g_j) * g_j."""
    out = list(gens)
    x = R.gens[0]
    for i, c in enumerate(coeffs):
        hi, lo = sorted((gens[i % len(gens)], gens[(i + 1) % len(gens)]), key=lambda g: -g.degree)
        out.append(R.reduce(hi + lo * x ** (hi.degree - lo.degree) * c))
    return [g for g in out if g]


@given(st.sampled_from(["x2y2", "m2_3", "poly2", "xy"]), st.lists(st.integers(1, 100), max_size=3))
def test_beta_ignores_redundant_generators(name, coeffs):
    R = ring(name)
    gens = [R.element("x^2"), R.element("x*y"), R.element("y^3")]
    gens = [g for g in gens if g]
    if len(gens) < 2:
        return
    I = Ideal(R, gens)
    J = Ideal(R, _combos(R, gens, coeffs))
    assert I == J
    assert beta(I) == beta(J) == len(minimal_generators(J))


@pytest.mark.parametrize("name", list(ARTINIAN) + ["poly2", "xy", "poly3"])
def test_edim_is_number_of_variables(name):
    R = ring(name)
    assert R.edim == len(R.S.variables)
    assert beta(R.maximal_ideal()) == R.edim
