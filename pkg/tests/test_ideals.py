import random
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conormal_lab.arith import ring_create
from conormal_lab.errors import InputError, NonHomogeneousError
from conormal_lab.groebner import Matrix
from conormal_lab.ideals import (
    INFINITE_HEIGHT,
    Ideal,
    dimension_and_height,
    fitting_ideal,
    ideal_intersection,
    ideal_quotient,
    minimal_generator_count,
    saturate,
)
from helpers import brute_monomial_dimension, twisted_cubic, random_poly

R2 = ring_create(("x", "y"))
R4 = ring_create(("u", "v", "t", "w"))
M4 = Ideal(R4, R4.gens)


def I2(*gens):
    return Ideal(R2, list(gens))


def test_quotient_and_intersection():
    assert ideal_quotient(I2("x^2"), I2("x")) == I2("x")
    assert ideal_intersection(I2("x"), I2("y")) == I2("x*y")
    with pytest.raises(InputError):
        ideal_quotient(I2("x"), I2())


def test_sum_with_maximal_ideal():
    _, p = twisted_cubic()
    assert p + M4 == M4


def test_product():
    assert (I2("x") * I2("x", "y")) == I2("x^2", "x*y")


def test_saturation_examples():
    assert saturate(I2("x*y"), I2("y")) == I2("x")
    I = I2("x^2", "x*y")
    assert saturate(I, I2("1")) == I
    assert saturate(I, I2("x", "y")) == I2("x")
    S = saturate(I, I2("x", "y"))
    assert saturate(S, I2("x", "y")) == S


def test_dimension_and_height_examples():
    _, p = twisted_cubic()
    assert dimension_and_height(p) == (2, 2)
    assert dimension_and_height(M4) == (0, 4)
    assert dimension_and_height(Ideal(R4, [])) == (4, 0)
    with pytest.raises(InputError):
        dimension_and_height(Ideal(R4, ["1"]))
    assert Ideal(R4, ["1"]).height() == INFINITE_HEIGHT


def test_fitting_ideals_of_twisted_cubic_syzygies():
    phi = Matrix.from_rows(R4, [["-t", "w"], ["v", "-t"], ["-u", "v"]])
    I1 = fitting_ideal(phi, 1)
    assert I1 == M4 and I1.height() == 4
    _, p = twisted_cubic()
    assert fitting_ideal(phi, 2) == Ideal(R4, [R4.convert(f) for f in p.gens])
    assert fitting_ideal(phi, 0).is_unit()
    assert fitting_ideal(phi, 3).is_zero()
    Z = Matrix.from_rows(R4, [["0", "0"], ["0", "0"]])
    assert fitting_ideal(Z, 1).is_zero()


def test_minimal_generator_counts():
    _, p = twisted_cubic()
    assert minimal_generator_count(p) == 3
    assert minimal_generator_count(Ideal(R4, ["u", "v", "u + v"])) == 2
    assert minimal_generator_count(M4) == 4
    with pytest.raises(NonHomogeneousError):
        minimal_generator_count(Ideal(R4, ["u + v^2"]))


def test_colon_by_element_of_prime_is_itself():
    _, p = twisted_cubic()
    assert ideal_quotient(p, Ideal(p.ring, ["u"])) == p


R5 = ring_create(("a", "b", "c", "d", "e"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_monomial_dimension_plus_height(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    R = ring_create(R5.names[:n])
    mons = [tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(rng.randint(1, 4))]
    mons = [m for m in mons if any(m)] or [(1,) + (0,) * (n - 1)]
    I = Ideal(R, [R.monomial(m) for m in mons])
    d, h = dimension_and_height(I)
    assert d + h == n
    assert d == brute_monomial_dimension(mons, n)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_fitting_chain_is_monotone(seed):
    rng = random.Random(seed)
    R = ring_create(("x", "y", "z"))
    A = Matrix.from_rows(R, [[random_poly(rng, R, 1, 2) for _ in range(3)] for _ in range(2)])
    I1, I2_, I3 = (fitting_ideal(A, t) for t in (1, 2, 3))
    assert I1.contains_ideal(I2_) and I2_.contains_ideal(I3)


def test_fitting_invariant_under_redundant_generator():
    R = ring_create(("x", "y", "z"))
    A = Matrix.from_rows(R, [["x", "y"], ["y", "z"]])
    # add a generator e3 = e1 (relation e3 - e1), presenting the same module
    B = Matrix.from_rows(R, [["x", "y", "-1"], ["y", "z", "0"], ["0", "0", "1"]])
    for t in (1, 2):
        # the same module has the same Fitting ideals after shifting the minor size
        assert fitting_ideal(A, t) == fitting_ideal(B, t + 1)
