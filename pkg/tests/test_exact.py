from fractions import Fraction
from functools import reduce
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from hopfforms.exact.cyclotomic import (CycElem, cyc_arith, cyc_poly_divides, cyc_poly_mul, cyclotomic_polynomial,
                                        divisors, euler_phi, factor_cyclotomic_over, galois_conjugate, zeta)
from hopfforms.exact.factor import factor_squarefree_over_Q, is_irreducible, squarefree_decomposition
from hopfforms.exact.linalg import EchelonBasis, inverse, matmul, nullspace, rank
from hopfforms.exact.poly import Poly, X

sx = sympy.Symbol("x")


def to_sympy(p: Poly):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p.coeffs])), sx)


# --- cyclotomic polynomials ---

def test_phi_small_cases():
    assert cyclotomic_polynomial(1) == Poly([-1, 1])
    assert cyclotomic_polynomial(4) == Poly([1, 0, 1])
    p15 = cyclotomic_polynomial(15)
    assert p15.degree == 8 and p15.lc == 1


@pytest.mark.parametrize("n", range(1, 61))
def test_phi_degree_and_divisor_product(n):
    phi = cyclotomic_polynomial(n)
    assert phi.degree == euler_phi(n)
    prod = reduce(lambda a, b: a * b, (cyclotomic_polynomial(d) for d in divisors(n)))
    assert prod == X**n - Poly([1])


@pytest.mark.parametrize("n", [1, 2, 6, 12, 15, 21, 30, 36, 60])
def test_phi_matches_sympy(n):
    assert to_sympy(cyclotomic_polynomial(n)) == sympy.Poly(sympy.cyclotomic_poly(n, sx), sx)


# --- field arithmetic ---

def test_arith_examples():
    assert zeta(4) * zeta(4) == CycElem.rational(4, -1)
    assert zeta(3) + zeta(3, 2) == CycElem.rational(3, -1)
    a = CycElem(5, [1]) + zeta(5)
    assert a * cyc_arith(a, a, "inv") == CycElem.rational(5, 1)


def test_arith_errors():
    with pytest.raises(ValueError):
        zeta(4) + zeta(3)
    with pytest.raises(ZeroDivisionError):
        CycElem(5, []).inverse()
    with pytest.raises(ValueError):
        cyc_arith(zeta(4), zeta(4), "pow")


CONDUCTORS = [3, 4, 5, 7, 8, 9, 12, 15]
small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def cyc_triple(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    d = euler_phi(n)
    return [CycElem(n, draw(st.lists(small_q, min_size=d, max_size=d))) for _ in range(3)]


@given(cyc_triple())
def test_field_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == CycElem.rational(a.conductor, 1)


@given(cyc_triple(), st.data())
def test_galois_composition(t, data):
    a = t[0]
    n = a.conductor
    units = [k for k in range(1, n) if gcd(k, n) == 1]
    k = data.draw(st.sampled_from(units))
    k2 = data.draw(st.sampled_from(units))
    assert galois_conjugate(galois_conjugate(a, k2), k) == galois_conjugate(a, (k * k2) % n)
    assert galois_conjugate(a * t[1], k) == galois_conjugate(a, k) * galois_conjugate(t[1], k)


def test_galois_examples():
    assert galois_conjugate(zeta(4), 3) == -zeta(4)
    assert galois_conjugate(zeta(3), 2) == CycElem(3, [-1, -1])
    a = CycElem(7, [1, 2, 3])
    assert galois_conjugate(a, 1) == a
    with pytest.raises(ValueError):
        galois_conjugate(zeta(4), 2)


def test_json_roundtrips():
    a = CycElem(9, [Fraction(1, 3), -2, 0, 5])
    assert CycElem.from_json(a.to_json()) == a
    p = Poly([Fraction(-7, 2), 0, 3])
    assert Poly.from_json(p.to_json()) == p
    assert p.to_json() == ["-7/2", "0/1", "3/1"]


# --- factoring ---

def _phi_over(n, m):
    return [CycElem(m, [c]) for c in cyclotomic_polynomial(n).coeffs]


@pytest.mark.parametrize("n,m", [(15, 3), (15, 5), (12, 4), (12, 3), (8, 4), (9, 3), (20, 4), (7, 1), (4, 4), (24, 8)])
def test_factor_cyclotomic_over(n, m):
    facs = factor_cyclotomic_over(n, m)
    degs = {len(f) - 1 for f in facs}
    assert len(degs) == 1 and len(facs) * degs.pop() == euler_phi(n)
    prod = reduce(cyc_poly_mul, facs)
    assert prod == _phi_over(n, m)
    assert all(cyc_poly_divides(f, _phi_over(n, m)) for f in facs)


def test_factor_cyclotomic_examples():
    facs = factor_cyclotomic_over(15, 3)
    assert len(facs) == 2 and all(len(f) == 5 for f in facs)
    assert len(factor_cyclotomic_over(11, 1)) == 1
    lin = factor_cyclotomic_over(4, 4)
    assert {tuple(f) for f in lin} == {(-zeta(4), CycElem(4, [1])), (zeta(4), CycElem(4, [1]))}
    with pytest.raises(ValueError):
        factor_cyclotomic_over(15, 4)


def test_factor_over_Q_examples():
    one = Poly([1])
    assert [f for f, _ in factor_squarefree_over_Q(X**3 - one)] == [X - one, X * X + X + one]
    assert is_irreducible(Poly([1, 0, -10, 0, 1]))
    assert [f for f, _ in factor_squarefree_over_Q(X**8 - one)] == [X - one, X + one, X * X + one, X**4 + one]
    with pytest.raises(ValueError):
        factor_squarefree_over_Q(Poly())


int_poly = st.lists(st.integers(-6, 6), min_size=2, max_size=4).filter(lambda c: c[-1] != 0)


@given(st.lists(int_poly, min_size=1, max_size=3), st.integers(1, 5))
def test_factor_reproduces_and_matches_sympy(parts, scale):
    f = reduce(lambda a, b: a * b, (Poly(c) for c in parts)) * scale
    facs = factor_squarefree_over_Q(f)
    rebuilt = reduce(lambda a, b: a * b, (g**m for g, m in facs), Poly([f.lc]))
    assert rebuilt == f
    ref = sympy.factor_list(to_sympy(f).as_expr(), sx)[1]
    assert sorted((sympy.Poly(g, sx).degree(), m) for g, m in ref) == sorted((g.degree, m) for g, m in facs)


def test_squarefree_decomposition():
    one = Poly([1])
    f = (X - one) ** 3 * (X + one)
    assert sorted((m, g.coeffs) for g, m in squarefree_decomposition(f)) == [(1, (X + one).coeffs), (3, (X - one).coeffs)]


# --- linear algebra ---

small_int = st.integers(-3, 3)


@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_nullspace_and_rank_match_sympy(r, c, data):
    rows = [data.draw(st.lists(small_int, min_size=c, max_size=c)) for _ in range(r)]
    sparse_rows = [{j: Fraction(v) for j, v in enumerate(row) if v} for row in rows]
    M = sympy.Matrix(rows)
    assert rank(sparse_rows) == M.rank()
    ns = nullspace(sparse_rows, c)
    assert len(ns) == c - M.rank()
    for v in ns:
        assert all(sum(Fraction(row[j]) * v.get(j, 0) for j in range(c)) == 0 for row in rows)


def test_inverse_and_coordinates():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert matmul(m, inverse(m)) == [[1, 0], [0, 1]]
    eb = EchelonBasis(track=True)
    eb.insert({0: Fraction(1), 1: Fraction(1)})
    eb.insert({1: Fraction(2)})
    assert eb.coordinates({0: Fraction(1), 1: Fraction(3)}) == {0: 1, 1: 1}
