import cmath

from hypothesis import given, settings
from hypothesis import strategies as st

from thompson_homfly.laurent import DELTA, ONE, ZERO, LaurentPoly

terms = st.dictionaries(
    st.tuples(st.integers(-4, 4), st.integers(-3, 3)), st.integers(-5, 5), max_size=6
)
polys = terms.map(LaurentPoly)

A0, Z0 = cmath.exp(0.41j) * 1.07, complex(0.3, 0.8)


def close(x, y):
    return abs(x - y) < 1e-9 * max(1.0, abs(x), abs(y))


@settings(max_examples=100)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO
    assert p * ONE == p


@settings(max_examples=100)
@given(polys, polys)
def test_evaluation_is_a_homomorphism(p, q):
    assert close((p * q).evaluate(A0, Z0), p.evaluate(A0, Z0) * q.evaluate(A0, Z0))
    assert close((p + q).evaluate(A0, Z0), p.evaluate(A0, Z0) + q.evaluate(A0, Z0))


@settings(max_examples=100)
@given(polys)
def test_mirror_is_an_involution(p):
    assert p.substitute_mirror().substitute_mirror() == p
    assert close(p.substitute_mirror().evaluate(A0, Z0), p.evaluate(1 / A0, -Z0))


@settings(max_examples=100)
@given(polys)
def test_json_round_trip(p):
    assert LaurentPoly.from_json(p.to_json()) == p


def test_no_zero_terms_stored():
    p = LaurentPoly({(1, 0): 2, (0, 0): 0})
    assert (p - p).terms == {}
    assert (p + LaurentPoly({(1, 0): -2})).is_zero()


def test_delta():
    assert DELTA == LaurentPoly({(1, -1): 1, (-1, -1): -1})
    assert close(DELTA.evaluate(A0, Z0), (A0 - 1 / A0) / Z0)


def test_big_coefficients_stay_exact():
    p = LaurentPoly({(0, 0): 3**60})
    assert (p * p).terms[(0, 0)] == 3**120


def test_text():
    assert str(ZERO) == "0"
    assert str(ONE) == "1"
    assert str(LaurentPoly({(-2, 0): 2, (-4, 0): -1, (-2, 2): 1})) == "-a^-4 + 2*a^-2 + a^-2*z^2"
