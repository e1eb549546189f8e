from fractions import Fraction

import pytest
import sympy

from hopfforms.etale import cyclotomic_field
from hopfforms.exact.cyclotomic import CycElem
from hopfforms.groups.finite import catalog, cyclic, is_isomorphic, parse_group, symmetric
from hopfforms.hopf import (CharacterTable, GroupRing, HopfError, HopfPresentation, character_iso, dual_cyclic,
                            dual_group_algebra, group_algebra, grouplike_group, grouplikes, kohl_checks,
                            kohl_idempotents)

GROUPS = catalog(8) + [symmetric(4)]


@pytest.mark.parametrize("N", GROUPS, ids=[g.name for g in GROUPS])
def test_group_algebra_axioms_and_grouplikes(N):
    H = group_algebra(N)
    assert all(H.check_axioms().values())
    gl = grouplikes(H)
    assert len(gl) == N.order
    assert is_isomorphic(grouplike_group(H, gl), N)


@pytest.mark.parametrize("N", [g for g in GROUPS if g.is_abelian()], ids=[g.name for g in GROUPS if g.is_abelian()])
def test_dual_axioms(N):
    D = dual_group_algebra(N)
    assert all(D.check_axioms().values())
    assert all(group_algebra(N).dual().check_axioms().values())


def test_antipode_involutive_for_abelian():
    H = group_algebra(parse_group("C2xC4"))
    for k in range(H.dim):
        assert H.S(H.S({k: Fraction(1)})) == {k: 1}


def test_group_algebra_small_examples():
    H = group_algebra(cyclic(2))
    assert H.dim == 2 and len(grouplikes(H)) == 2
    R = GroupRing(cyclotomic_field(3), cyclic(3))
    assert R.dim_over_base == 3


def test_dual_cyclic_examples():
    one = dual_cyclic(1)
    assert one.dim == 1 and one.is_hopf()
    d3 = dual_cyclic(3)
    assert d3.algebra().is_commutative() and all(d3.mult[i][j] == ({i: 1} if i == j else {}) for i in range(3) for j in range(3))
    d8 = dual_cyclic(8)
    assert d8.comult[0] == {(i, (-i) % 8): 1 for i in range(8)}
    with pytest.raises(HopfError):
        dual_cyclic(0)


def _rational_characters(n):
    """Rational solutions of x_{a+b} = x_a x_b, x_0 = 1, via sympy."""
    xs = sympy.symbols(f"x0:{n}")
    eqs = [xs[0] - 1] + [xs[(a + b) % n] - xs[a] * xs[b] for a in range(n) for b in range(n)]
    sols = sympy.solve(eqs, xs, dict=True)
    return [s for s in sols if all(v.is_rational for v in s.values())]


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 2), (5, 1), (6, 2)])
def test_dual_grouplikes_against_polynomial_solve(n, expected):
    oracle = _rational_characters(n)
    assert len(oracle) == expected
    gl = grouplikes(dual_cyclic(n))
    assert len(gl) == expected
    as_vectors = {tuple(Fraction(int(s[v].p), int(s[v].q)) for v in sorted(s, key=lambda v: int(str(v)[1:]))) for s in oracle}
    assert {tuple(x.get(i, 0) for i in range(n)) for x in gl} == as_vectors


def test_grouplikes_not_of_group_ring_dual():
    assert len(grouplikes(group_algebra(cyclic(4)))) == 4
    assert len(grouplikes(dual_cyclic(4))) == 2


@pytest.mark.parametrize("n", range(1, 13))
def test_character_iso(n):
    iso = character_iso(n)
    assert all(iso.flags.values())
    zero = CycElem(n, [0])
    total = [sum((iso.images[j][i] for j in range(n)), zero) for i in range(n)]
    assert total == [CycElem(n, [1])] + [zero] * (n - 1)
    assert CharacterTable(n).orthogonal()


def test_character_iso_n2_is_rational():
    iso = character_iso(2)
    half = Fraction(1, 2)
    assert [[c.coords[0] for c in row] for row in iso.images] == [[half, half], [half, -half]]


def test_character_iso_n3_idempotents():
    iso = character_iso(3)
    assert len({tuple(r) for r in iso.images}) == 3


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_kohl(p, m):
    assert all(kohl_checks(p, m).values())
    assert len(kohl_idempotents(p, m)) == p**m


def test_kohl_e0():
    e0 = kohl_idempotents(3, 1)[0]
    assert e0 == [CycElem(3, [Fraction(1, 3)])] * 3


def test_kohl_errors():
    with pytest.raises(HopfError):
        kohl_idempotents(2, 1)
    with pytest.raises(HopfError):
        kohl_idempotents(9, 1)


def test_json_roundtrip():
    H = group_algebra(parse_group("Q8"))
    back = HopfPresentation.from_json(H.to_json())
    assert back.mult == H.mult and back.comult == H.comult and back.antipode == H.antipode and back.counit == H.counit
