from fractions import Fraction

import pytest

from hopfforms.etale import (EtaleAlgebra, GaloisError, biquadratic_field, cyclotomic_field, pure_cubic_field,
                             trivial_extension)
from hopfforms.groups.finite import (automorphism_group, cyclic, dihedral, elementary_abelian, find_isomorphism,
                                     is_isomorphic, klein_four, quaternion, symmetric)
from hopfforms.groups.perm import PermSubgroup, enumerate_regular_subgroups, from_cycles, left_regular_rep
from hopfforms.hopf import dual_cyclic, group_algebra, grouplike_group, grouplikes
from hopfforms.presets import gl2f3_extension
from hopfforms.theta import (ThetaError, descend, find_hopf_isomorphism, hopf_action, hopf_invariants,
                             idempotent_group, is_hopf_isomorphism, q8_c8_preimage, theta, theta_preimage,
                             units_action)
from hopfforms.wedderburn import decompose

BIQ_N = PermSubgroup.generated(4, [from_cycles(4, [(1, 3, 2, 4)])])


def _aut_embedding(F, N):
    A = automorphism_group(N)
    iso = find_isomorphism(F, A.group)
    return [A.maps[iso[g]] for g in range(F.order)]


def _check_ring(fr, N_order):
    assert fr.dim == N_order
    assert all(fr.flags.values()), fr.flags
    for b in fr.basis:
        assert all(fr.action.act(g, b) == b for g in range(fr.action.F.order))
    assert fr.presentation.is_hopf()


# --- Theta ---

def test_trivial_form_on_C3():
    L = trivial_extension(cyclic(2))
    fr = theta(L, cyclic(3), [(0, 1, 2), (0, 2, 1)])
    _check_ring(fr, 3)
    R = fr.ring
    e1, eg = L.idempotent(0), L.idempotent(1)
    listed = [R.one(), R.eta(1, e1) + R.eta(2, eg), R.eta(1, eg) + R.eta(2, e1)]
    gl = grouplikes(fr.presentation)
    assert len(gl) == 3
    assert {tuple(sorted(x.items())) for x in gl} == {tuple(sorted(fr.coordinates(x).items())) for x in listed}
    assert is_isomorphic(grouplike_group(fr.presentation, gl), cyclic(3))


@pytest.mark.parametrize("N", [cyclic(3), cyclic(4), klein_four(), dihedral(3), dihedral(4)], ids=lambda g: g.name)
def test_trivial_extension_gives_group_ring(N):
    F = automorphism_group(N).group
    fr = theta(trivial_extension(F), N, _aut_embedding(F, N))
    _check_ring(fr, N.order)
    gl = grouplikes(fr.presentation)
    assert len(gl) == N.order and is_isomorphic(grouplike_group(fr.presentation, gl), N)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_cyclotomic_gives_dual(n):
    fr = theta(EtaleAlgebra.from_field(cyclotomic_field(n)), cyclic(n), units_action(n))
    _check_ring(fr, n)
    ig = idempotent_group(fr.presentation)
    assert ig is not None and is_isomorphic(ig[0], cyclic(n))
    assert find_hopf_isomorphism(fr.presentation, dual_cyclic(n)) is not None


def test_gl2f3_theta_is_split():
    N = elementary_abelian(3, 2)
    L = gl2f3_extension()
    fr = theta(L, N, list(automorphism_group(N).maps), check_galois=False)
    _check_ring(fr, 9)
    assert decompose(fr.presentation.algebra()).describe() == ["Q"] * 9


def test_theta_rejects_non_galois_and_bad_embedding():
    from hopfforms.etale import FieldDesc

    ident = [(1, 0), (0, 1)]
    QxQ = FieldDesc("QxQ", [[(1, 0), (0, 0)], [(0, 0), (0, 1)]], (1, 1), {0: ident, 1: ident}, cyclic(2))
    with pytest.raises(GaloisError):
        theta(EtaleAlgebra.from_field(QxQ), cyclic(3), [(0, 1, 2), (0, 2, 1)])
    with pytest.raises(ThetaError):
        theta(trivial_extension(cyclic(2)), cyclic(3), [(0, 2, 1), (0, 2, 1)])
    with pytest.raises(ThetaError):
        theta(trivial_extension(cyclic(2)), cyclic(3), [(0, 1, 2)])


# --- descent ---

def test_descend_classical_structure():
    E = biquadratic_field()
    G = klein_four()
    fr = descend(E, G, left_regular_rep(G))
    _check_ring(fr, 4)
    gl = grouplikes(fr.presentation)
    assert len(gl) == 4 and is_isomorphic(grouplike_group(fr.presentation, gl), G)


def test_descend_biquadratic_C4():
    fr = descend(biquadratic_field(), klein_four(), BIQ_N)
    _check_ring(fr, 4)
    ha = hopf_action(fr)
    assert ha.j_rank == 16 and ha.bijective and ha.counit_ok and ha.identity_ok


@pytest.mark.parametrize("E,G", [(biquadratic_field(), klein_four()), (pure_cubic_field(), symmetric(3))], ids=["biquadratic", "pure-cubic"])
def test_every_structure_is_hopf_galois(E, G):
    for N in enumerate_regular_subgroups(G):
        fr = descend(E, G, N)
        _check_ring(fr, G.order)
        ha = hopf_action(fr)
        assert ha.bijective and ha.counit_ok and ha.identity_ok


def test_S3_C6_descent_is_dual_C6():
    G = symmetric(3)
    for N in enumerate_regular_subgroups(G, cyclic(6)):
        fr = descend(pure_cubic_field(), G, N)
        assert decompose(fr.presentation.algebra()).describe() == ["Q"] * 6
        T = find_hopf_isomorphism(fr.presentation, dual_cyclic(6))
        assert T is not None and all(is_hopf_isomorphism(fr.presentation, dual_cyclic(6), T).values())
        assert len(grouplikes(fr.presentation)) == 2


def test_descend_rejects_unnormalized():
    G = symmetric(3)
    from hopfforms.groups.perm import conjugate

    lams = left_regular_rep(G)
    bad = PermSubgroup.of(6, [conjugate((1, 0, 2, 3, 4, 5), e) for e in lams.elements])
    assert not bad.normalized_by(lams.elements)
    with pytest.raises(ThetaError):
        descend(pure_cubic_field(), G, bad)


def test_hopf_action_pointwise():
    fr = descend(biquadratic_field(), klein_four(), BIQ_N)
    x = (Fraction(1), Fraction(2), Fraction(3), Fraction(4))
    assert hopf_action(fr, x, fr.ring.one()) == x


# --- preimages ---

def test_preimage_biquadratic():
    pre = theta_preimage(biquadratic_field(), klein_four(), BIQ_N)
    assert pre.W == [0, 1] and pre.surjective and pre.image_order == 2
    assert pre.L.field.describe() == "Q(sqrt(2))"
    assert all(pre.flags.values())
    assert all(is_hopf_isomorphism(pre.theta_ring.presentation, pre.descent_ring.presentation, pre.isomorphism).values())


def test_preimage_S3():
    G = symmetric(3)
    for N in enumerate_regular_subgroups(G, cyclic(6)):
        pre = theta_preimage(pure_cubic_field(), G, N)
        assert len(pre.W) == 3 and pre.surjective
        assert pre.L.field.describe() == "Q(z3)"
        assert all(pre.flags.values())


def test_preimage_complete_group():
    G = symmetric(4)
    pre = theta_preimage(trivial_extension(G), G, left_regular_rep(G))
    assert pre.W == [0] and pre.surjective and pre.L.n == 24
    assert all(pre.flags.values())


def test_preimage_Q8_is_proper_subgroup_certificate():
    from hopfforms.theta import c_st

    pre = theta_preimage(None, quaternion(), c_st("i", "k"))
    assert not pre.surjective and pre.image_order == 2 and pre.embedding.aut.group.order == 4
    assert pre.L is None and pre.reduced_ring is None and pre.flags == {"embedding_injective": True}


def test_preimage_reduced_ring_when_not_surjective():
    # Q(zeta_5) over Z_5^* = C4 with N = lambda(C4): W is everything, Aut(C4) = C2 is missed
    E = cyclotomic_field(5)
    G = E.group
    pre = theta_preimage(E, G, left_regular_rep(G))
    assert not pre.surjective and pre.image_order == 1 and len(pre.W) == 4
    assert pre.reduced_ring.dim == 4 and all(pre.flags.values())
    assert len(grouplikes(pre.reduced_ring.presentation)) == 4


# --- the Q8 / C8 family ---

@pytest.mark.parametrize("s,t", [(s, t) for t in "ijk" for s in "ijk" if s != t])
def test_q8_family(s, t):
    r = q8_c8_preimage(t, 2, s)
    assert all(r.flags.values()), [k for k, v in r.flags.items() if not v]
    assert r.discrepancies == []
    assert len(r.W) == 4


def test_q8_listed_elements():
    r = q8_c8_preimage("k", 2)
    eighth = Fraction(1, 8)
    first = r.listed_basis[0]
    assert all(c == r.L.scalar(eighth) for c in first.coeffs)
    half = r.listed_basis[4]
    assert half.coeffs[0] == r.L.scalar(Fraction(1, 2)) and half.coeffs[4] == r.L.scalar(Fraction(-1, 2))
    L = r.L
    u = L.sub(L.idempotent(1), L.idempotent(0))
    assert L.mul(u, u) == L.one()


def test_q8_invariants_separate_t_classes():
    rec = {(s, t): hopf_invariants(q8_c8_preimage(t, 2, s).descent_ring) for t in "ij" for s in "ijk" if s != t}
    assert rec[("j", "i")] == rec[("k", "i")]
    assert rec[("i", "j")] == rec[("k", "j")]
    r3 = hopf_invariants(q8_c8_preimage("k", 3).descent_ring)
    assert r3.quadratic_classes != rec[("j", "i")].quadratic_classes


def test_q8_invalid_inputs():
    with pytest.raises(ThetaError):
        q8_c8_preimage("x")
    with pytest.raises(ThetaError):
        q8_c8_preimage("k", 2, "k")
    with pytest.raises(ThetaError):
        q8_c8_preimage("k", 4)


# --- invariants ---

def test_invariants_group_ring_vs_dual():
    a = hopf_invariants(group_algebra(cyclic(4)))
    b = hopf_invariants(dual_cyclic(4))
    assert a.grouplike_count == 4 and b.grouplike_count == 2 and a != b
    assert find_hopf_isomorphism(group_algebra(cyclic(4)), dual_cyclic(4)) is None
    assert hopf_invariants(dual_cyclic(4)) == b


def test_identity_is_hopf_isomorphism():
    H = group_algebra(dihedral(3))
    T = [{i: Fraction(1)} for i in range(H.dim)]
    assert all(is_hopf_isomorphism(H, H, T).values())
