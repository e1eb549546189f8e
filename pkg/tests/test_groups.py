import itertools

import pytest

from hopfforms.groups.finite import (FiniteGroup, GroupError, automorphism_group, catalog, cyclic, dihedral,
                                     elementary_abelian, find_isomorphism, holomorph, is_isomorphic, klein_four,
                                     make_group, parse_group, quaternion, symmetric)
from hopfforms.groups.perm import (PermSubgroup, centralizer_opp, closure, compose, compute_W, conjugate,
                                   cycle_string, enumerate_regular_subgroups, from_cycles, invert, lam,
                                   left_regular_rep, quotient_embedding, right_regular_rep)
from hopfforms.theta import c_st, eta_st


def cycles_of(sub):
    return sorted(cycle_string(e) for e in sub.elements)


# --- presets ---

def test_make_group_examples():
    assert make_group("Cn", 3).order == 3 and make_group("Cn", 3).is_cyclic()
    q = make_group("Q8")
    i, j, k, mk = 2, 4, 6, 7
    assert q.order == 8 and q.mul(i, j) == k and q.mul(j, i) == mk and q.mul(j, k) == i
    e = make_group("Cp^m", 3, 2)
    assert e.order == 9 and all(e.element_order(a) in (1, 3) for a in range(9))


def test_make_group_errors():
    with pytest.raises(GroupError):
        make_group("X7")
    with pytest.raises(GroupError):
        make_group("Cn", 0)
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])


def test_group_json_roundtrip():
    g = dihedral(4)
    h = FiniteGroup.from_json(g.to_json())
    assert h.table == g.table and g.to_json()["order"] == 8


# --- automorphisms and holomorphs ---

def test_aut_examples():
    assert automorphism_group(cyclic(3)).group.order == 2
    assert is_isomorphic(automorphism_group(dihedral(3)).group, dihedral(3))
    assert is_isomorphic(automorphism_group(dihedral(4)).group, dihedral(4))
    aq = automorphism_group(quaternion()).group
    assert aq.order == 24 and is_isomorphic(aq, symmetric(4))
    assert automorphism_group(elementary_abelian(3, 2)).group.order == 48


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2)])
def test_aut_elementary_abelian_order(p, m):
    expected = 1
    for i in range(m):
        expected *= p**m - p**i
    assert automorphism_group(elementary_abelian(p, m)).group.order == expected


@pytest.mark.parametrize("name", ["C4", "C2xC2", "S3", "D4", "Q8"])
def test_aut_closed_under_composition_and_inverse(name):
    A = automorphism_group(parse_group(name))
    maps = {tuple(m) for m in A.maps}
    for a in maps:
        assert tuple(sorted(a)) == tuple(range(len(a)))
        assert tuple(invert(a)) in maps
        for b in maps:
            assert compose(a, b) in maps


def test_aut_bound():
    with pytest.raises(GroupError):
        automorphism_group(cyclic(25))


def test_holomorphs():
    assert is_isomorphic(holomorph(cyclic(3)), dihedral(3))
    assert is_isomorphic(holomorph(cyclic(4)), dihedral(4))
    assert is_isomorphic(holomorph(cyclic(2)), cyclic(2))
    with pytest.raises(GroupError):
        holomorph(klein_four())


def test_isomorphism_against_order_profiles():
    groups = catalog(8)
    for g, h in itertools.product(groups, repeat=2):
        same = g.order == h.order and g.order_profile() == h.order_profile() and g.is_abelian() == h.is_abelian()
        assert (find_isomorphism(g, h) is not None) == same


# --- regular representation ---

def test_left_regular_biquadratic_labeling():
    assert cycles_of(left_regular_rep(klein_four())) == ["(1)", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"]


def test_left_regular_small():
    assert cycles_of(left_regular_rep(cyclic(2))) == ["(1)", "(1,2)"]
    assert left_regular_rep(quaternion()).is_regular()


# --- enumeration, with a brute-force oracle ---

def _brute_regular(G, gens_pool):
    n = G.order
    lams = [lam(G, a) for a in range(n)]
    found = set()
    for a, b in itertools.combinations_with_replacement(gens_pool, 2):
        s = closure([a, b], n, limit=n)
        if s is None or len(s) != n:
            continue
        sub = PermSubgroup.of(n, s)
        if sub.is_regular() and sub.normalized_by(lams):
            found.add(sub.as_set())
    return found


def _fixed_point_free(n):
    return [p for p in itertools.permutations(range(n)) if all(p[i] != i for i in range(n))]


@pytest.mark.parametrize("name", ["C4", "C2xC2", "C6", "S3"])
def test_enumeration_matches_brute_force(name):
    G = parse_group(name)
    oracle = _brute_regular(G, _fixed_point_free(G.order))
    found = {s.as_set() for s in enumerate_regular_subgroups(G)}
    assert found == oracle


def test_enumeration_counts():
    c4 = enumerate_regular_subgroups(klein_four(), cyclic(4))
    assert len(c4) == 3
    shown = PermSubgroup.generated(4, [from_cycles(4, [(1, 3, 2, 4)])])
    assert shown in c4
    assert cycles_of(shown) == ["(1)", "(1,2)(3,4)", "(1,3,2,4)", "(1,4,2,3)"]
    assert len(enumerate_regular_subgroups(symmetric(3), cyclic(6))) == 3
    assert len(enumerate_regular_subgroups(quaternion(), cyclic(8))) == 6


@pytest.mark.parametrize("name", ["C2xC2", "S3", "D4", "Q8", "C2xC4"])
def test_enumerated_subgroups_regular_and_normalized(name):
    G = parse_group(name)
    lams = [lam(G, a) for a in range(G.order)]
    subs = enumerate_regular_subgroups(G)
    assert left_regular_rep(G) in subs
    for N in subs:
        assert N.is_closed() and N.is_regular() and N.normalized_by(lams)
        assert all(e == tuple(range(G.order)) or all(e[i] != i for i in range(G.order)) for e in N.elements)


def test_type_filter_contains_lambda():
    for name in ["C4", "S3", "D4", "Q8"]:
        G = parse_group(name)
        assert left_regular_rep(G) in enumerate_regular_subgroups(G, G)


def test_parallel_matches_serial():
    G = dihedral(4)
    assert enumerate_regular_subgroups(G, workers=1) == enumerate_regular_subgroups(G, workers=3)


def test_enumeration_bound():
    with pytest.raises(GroupError):
        enumerate_regular_subgroups(cyclic(9))


def test_eta_st_cycle_form():
    # labels 1..8 stand for 1, -1, i, -i, j, -j, k, -k
    assert cycle_string(eta_st("i", "k")) == "(1,3,7,5,2,4,8,6)"
    found = enumerate_regular_subgroups(quaternion(), cyclic(8))
    assert {c_st(s, t) for s in "ijk" for t in "ijk" if s != t} == set(found)


# --- W and the opposite group ---

def _brute_centralizer(N):
    n = N.degree
    return {p for p in itertools.permutations(range(n)) if all(compose(p, e) == compose(e, p) for e in N.elements)}


def test_centralizer_opp_brute_force_S4_degree():
    G = klein_four()
    for N in enumerate_regular_subgroups(G):
        opp = centralizer_opp(N)
        assert set(opp.elements) == _brute_centralizer(N)
        assert opp.order == N.order and opp.is_regular()


def test_centralizer_of_lambda_is_right_regular():
    for G in (symmetric(3), quaternion()):
        assert centralizer_opp(left_regular_rep(G)) == right_regular_rep(G)


def test_centralizer_requires_regular():
    with pytest.raises(GroupError):
        centralizer_opp(PermSubgroup.generated(4, [from_cycles(4, [(1, 2)])]))


def test_W_examples():
    G = klein_four()
    N = PermSubgroup.generated(4, [from_cycles(4, [(1, 3, 2, 4)])])
    W = compute_W(N, G)
    assert [cycle_string(lam(G, w)) for w in W] == ["(1)", "(1,2)(3,4)"]
    lam_set = {lam(G, a) for a in range(4)}
    assert {lam(G, w) for w in W} == lam_set & set(centralizer_opp(N).elements)
    Q = quaternion()
    for s, t in [("i", "k"), ("j", "i"), ("k", "j")]:
        W = compute_W(c_st(s, t), Q)
        tt = {"i": 2, "j": 4, "k": 6}[t]
        assert sorted(W) == sorted(Q.closure([tt]))
    S4 = symmetric(4)
    assert compute_W(left_regular_rep(S4), S4) == [0]


@pytest.mark.parametrize("name", ["C2xC2", "S3", "D4", "Q8"])
def test_W_is_intersection_and_normal(name):
    G = parse_group(name)
    lams = {a: lam(G, a) for a in range(G.order)}
    for N in enumerate_regular_subgroups(G):
        W = compute_W(N, G)
        opp = set(centralizer_opp(N).elements)
        assert W == [a for a in range(G.order) if lams[a] in opp]
        assert G.is_normal(W)


def test_W_requires_normalized():
    G = symmetric(3)
    lams = [lam(G, a) for a in range(6)]
    base = left_regular_rep(G)
    for g in itertools.permutations(range(6)):
        N = PermSubgroup.of(6, [conjugate(g, e) for e in base.elements])
        if not N.normalized_by(lams):
            break
    with pytest.raises(GroupError):
        compute_W(N, G)


def test_quotient_embedding_examples():
    G = klein_four()
    N = PermSubgroup.generated(4, [from_cycles(4, [(1, 3, 2, 4)])])
    emb = quotient_embedding(G, compute_W(N, G), N)
    assert emb.injective and emb.surjective and emb.quotient.order == 2
    Q = quaternion()
    N = c_st("i", "k")
    emb = quotient_embedding(Q, compute_W(N, Q), N)
    assert emb.injective and not emb.surjective and len(set(emb.images)) == 2 and emb.aut.group.order == 4
    S3 = symmetric(3)
    for N in enumerate_regular_subgroups(S3, cyclic(6)):
        emb = quotient_embedding(S3, compute_W(N, S3), N)
        assert emb.injective and emb.surjective and emb.quotient.order == 2
