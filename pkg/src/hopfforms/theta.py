"""Fixed rings of twisted actions on L[N]: the Theta map, Galois descent of
group rings, the induced Hopf action, and preimages of descended Hopf algebras."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .algebra import split_commutative
from .etale import (EtaleAlgebra, FieldDesc, GaloisError, Vec, fixed_subalgebra, quadratic_field,
                    subgroup_generators, verify_galois, build_F_galois)
from .exact.linalg import ONE, ZERO, EchelonBasis, SparseVec, axpy, nullspace, rank
from .groups.finite import (AutomorphismGroup, FiniteGroup, GroupError, GroupHom, automorphism_group,
                            cyclic, find_isomorphism, quaternion, units_group)
from .groups.perm import (Perm, PermSubgroup, compose, compute_W, conjugation_action, from_cycles, invert,
                          quotient_embedding)
from .hopf import AlgElem, GroupRing, HopfError, HopfPresentation, grouplikes, _outer

Matrix = List[List[Vec]]


class ThetaError(ValueError):
    pass


# --- twisted actions ---------------------------------------------------------------

class TwistedAction:
    """F acting on L[N] by ``g(x eta) = g(x) phi(g)(eta)``.

    ``n_action[g]`` is the permutation of N's element indices induced by g;
    it must be an automorphism of N and ``g -> n_action[g]`` a homomorphism.
    """

    def __init__(self, L: EtaleAlgebra, n: FiniteGroup, n_action: Sequence[Sequence[int]]):
        self.L = L
        self.F = L.group
        self.N = n
        self.n_action = [tuple(p) for p in n_action]
        if len(self.n_action) != self.F.order:
            raise ThetaError("need one automorphism of N per element of the acting group")
        self.ring = GroupRing(L, n)

    def check(self) -> Dict[str, bool]:
        F, N = self.F, self.N
        autos = all(
            sorted(p) == list(range(N.order)) and all(p[N.mul(a, b)] == N.mul(p[a], p[b]) for a in range(N.order) for b in range(N.order))
            for p in self.n_action
        )
        hom = all(
            self.n_action[F.mul(g, h)] == tuple(self.n_action[g][self.n_action[h][x]] for x in range(N.order))
            for g in range(F.order)
            for h in range(F.order)
        )
        return {"automorphisms_of_N": autos, "homomorphism": hom}

    def act(self, g: int, x: AlgElem) -> AlgElem:
        L = self.L
        out = [L.zero()] * self.N.order
        for eta, c in enumerate(x.coeffs):
            if any(c):
                out[self.n_action[g][eta]] = L.act(g, c)
        return AlgElem(self.ring, tuple(out))

    def is_fixed(self, x: AlgElem, elements: Optional[Sequence[int]] = None) -> bool:
        gs = range(self.F.order) if elements is None else elements
        return all(self.act(g, x) == x for g in gs)

    def generators(self) -> List[int]:
        return subgroup_generators(self.F, list(range(self.F.order)))


# --- linear algebra over a number field given by structure constants -----------------

def _field_inverse_matrix(M: FieldDesc, P: Matrix) -> Optional[Matrix]:
    n = len(P)
    A = [list(row) + [M.one if i == j else M.zero() for j in range(n)] for i, row in enumerate(P)]
    for col in range(n):
        piv = next((r for r in range(col, n) if any(A[r][col])), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = M.inv(A[col][col])
        A[col] = [M.mul(inv, v) for v in A[col]]
        for r in range(n):
            if r != col and any(A[r][col]):
                f = A[r][col]
                A[r] = [M.sub(a, M.mul(f, b)) for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def _rational(M: FieldDesc, x: Vec) -> Fraction:
    q = M.rational_value(x)
    if q is None:
        raise ThetaError("structure constant is not rational")
    return q


# --- fixed rings ---------------------------------------------------------------------------

@dataclass
class FixedRing:
    action: TwistedAction
    basis: List[AlgElem]
    presentation: HopfPresentation
    flags: Dict[str, bool]
    label: str = ""
    extra: Dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ring(self) -> GroupRing:
        return self.action.ring

    def coordinates(self, x: AlgElem) -> SparseVec:
        eb = EchelonBasis(track=True)
        for b in self.basis:
            eb.insert(b.sparse())
        return eb.coordinates(x.sparse())

    def element(self, coords: SparseVec) -> AlgElem:
        out = self.ring.zero()
        for k, c in coords.items():
            out = out + self.basis[k].scale(c)
        return out

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "dim": self.dim,
            "basis": [b.to_json() for b in self.basis],
            "presentation": self.presentation.to_json(),
            "flags": self.flags,
        }


def fixed_ring(action: TwistedAction, label: str = "", basis: Optional[Sequence[AlgElem]] = None) -> FixedRing:
    """(L[N])^F as an exact rational nullspace, with its Hopf structure over Q.

    Structure constants are read off after projecting to the first component
    field M of L: the projected basis is an M-basis of M[N].
    """
    L, N = action.L, action.N
    ring = action.ring
    m = L.dim
    gens = action.generators()
    if basis is None:
        rows: List[SparseVec] = []
        for g in gens:
            cols = L.action_columns(g)
            acc: Dict[int, SparseVec] = {}
            perm = action.n_action[g]
            for eta in range(N.order):
                for b, col in enumerate(cols):
                    src = eta * m + b
                    for k, c in col.items():
                        acc.setdefault(perm[eta] * m + k, {})[src] = c
            for i in range(ring.dim):
                row = dict(acc.get(i, {}))
                row[i] = row.get(i, ZERO) - ONE
                if not row[i]:
                    del row[i]
                if row:
                    rows.append(row)
        ns = nullspace(rows, ring.dim)
        basis = [ring.from_sparse(v) for v in ns]
    basis = list(basis)
    fixed_ok = all(action.is_fixed(b, gens) for b in basis)
    pres, form_ok = _presentation(action, basis, label)
    flags = {
        "fixed": fixed_ok,
        "dimension": len(basis) == N.order,
        "form_property": form_ok,
    }
    return FixedRing(action, basis, pres, flags, label)


def _component_rows(action: TwistedAction, basis: Sequence[AlgElem], comp: int) -> Matrix:
    L = action.L
    return [[L.component(b.coeffs[eta], comp) for eta in range(action.N.order)] for b in basis]


def _presentation(action: TwistedAction, basis: Sequence[AlgElem], label: str) -> Tuple[HopfPresentation, bool]:
    L, N = action.L, action.N
    M = L.field
    n = N.order
    if len(basis) != n:
        raise ThetaError(f"fixed ring has dimension {len(basis)}, expected {n}")
    form_ok = True
    Q = None
    for comp in range(L.n):
        P = _component_rows(action, basis, comp)
        inv = _field_inverse_matrix(M, P)
        if inv is None:
            form_ok = False
            break
        if comp == 0:
            Q, P0 = inv, P
    if Q is None:
        raise ThetaError("projected basis is not a basis of M[N] (form property fails)")

    def coords(v: Sequence[Vec]) -> SparseVec:
        out: SparseVec = {}
        for j in range(n):
            acc = M.zero()
            for eta in range(n):
                if any(v[eta]) and any(Q[eta][j]):
                    acc = M.add(acc, M.mul(v[eta], Q[eta][j]))
            c = _rational(M, acc)
            if c:
                out[j] = c
        return out

    mult: List[List[SparseVec]] = []
    for a in range(n):
        row = []
        for b in range(n):
            prod = [M.zero()] * n
            for e1, x in enumerate(P0[a]):
                if not any(x):
                    continue
                for e2, y in enumerate(P0[b]):
                    if any(y):
                        k = N.mul(e1, e2)
                        prod[k] = M.add(prod[k], M.mul(x, y))
            row.append(coords(prod))
        mult.append(row)
    unit = coords([M.one if eta == 0 else M.zero() for eta in range(n)])
    comult = []
    for k in range(n):
        t: Dict[Tuple[int, int], Fraction] = {}
        for eta in range(n):
            x = P0[k][eta]
            if not any(x):
                continue
            qa = [(a, M.mul(x, Q[eta][a])) for a in range(n) if any(Q[eta][a])]
            for a, xa in qa:
                for b in range(n):
                    if any(Q[eta][b]):
                        c = M.mul(xa, Q[eta][b])
                        t[(a, b)] = t.get((a, b), M.zero())
                        t[(a, b)] = M.add(t[(a, b)], c)
        comult.append({key: q for key, v in t.items() if (q := _rational(M, v))})
    counit = []
    for k in range(n):
        acc = M.zero()
        for eta in range(n):
            acc = M.add(acc, P0[k][eta])
        counit.append(_rational(M, acc))
    antipode = []
    for k in range(n):
        v = [M.zero()] * n
        for eta in range(n):
            v[N.inv(eta)] = P0[k][eta]
        antipode.append(coords(v))
    pres = HopfPresentation(mult, unit, comult, counit, antipode, name=label)
    return pres, form_ok


# --- Theta -----------------------------------------------------------------------------

def _embed_to_action(F: FiniteGroup, N: FiniteGroup, embed) -> List[Tuple[int, ...]]:
    if isinstance(embed, tuple) and len(embed) == 2 and isinstance(embed[0], GroupHom):
        hom, aut = embed
        if hom.source.order != F.order:
            raise ThetaError("embedding is not defined on the acting group")
        return [aut.maps[hom(g)] for g in range(F.order)]
    if callable(embed):
        return [tuple(embed(g)) for g in range(F.order)]
    return [tuple(p) for p in embed]


def theta(L: EtaleAlgebra, N: FiniteGroup, embed, label: str = "", check_galois: bool = True) -> FixedRing:
    """Theta(L) = (L[N])^F with F acting on N through ``embed``.

    ``embed`` is either ``(GroupHom F -> Aut(N).group, AutomorphismGroup)``,
    a callable ``g -> permutation of N``, or a list of such permutations.
    """
    if check_galois:
        chk = verify_galois(L)
        if not chk:
            raise GaloisError(f"L is not {L.group.name}-Galois: {chk.diagnostic}")
    action = TwistedAction(L, N, _embed_to_action(L.group, N, embed))
    chk = action.check()
    if not all(chk.values()):
        raise ThetaError("embedding is not a homomorphism into Aut(N)")
    fr = fixed_ring(action, label or f"Theta({L.name})")
    fr.flags.update(chk)
    return fr


def units_action(n: int) -> List[Tuple[int, ...]]:
    """Z_n^* acting on C_n by eta -> eta^k, indexed like units_group(n)."""
    from .exact.cyclotomic import units_mod

    ks = units_mod(n) if n > 2 else [1]
    return [tuple((k * i) % n for i in range(n)) for k in ks]


# --- Galois descent ----------------------------------------------------------------------

def _as_etale(E: Union[FieldDesc, EtaleAlgebra], G: FiniteGroup) -> EtaleAlgebra:
    if isinstance(E, EtaleAlgebra):
        if E.group.order != G.order:
            raise ThetaError("E is not acted on by G")
        return E
    return EtaleAlgebra.from_field(E, G)


def descend(E: Union[FieldDesc, EtaleAlgebra], G: FiniteGroup, N: PermSubgroup, label: str = "") -> FixedRing:
    """H = (E[N])^G where g acts on E by Galois and on N by conjugation with lambda(g)."""
    from .groups.perm import lam

    lams = [lam(G, a) for a in range(G.order)]
    if not N.is_regular():
        raise ThetaError("N is not regular")
    if not N.normalized_by(lams):
        raise ThetaError("N is not normalized by lambda(G)")
    EA = _as_etale(E, G)
    ng, elems, acts = conjugation_action(G, N)
    action = TwistedAction(EA, ng, acts)
    fr = fixed_ring(action, label or f"({EA.name}[N])^{G.name}")
    fr.flags["galois"] = bool(verify_galois(EA))
    fr.extra["n_elements"] = elems
    fr.extra["G"] = G
    return fr


@dataclass
class HopfActionData:
    matrices: List[List[List[Fraction]]]  # per basis element of H, matrix of h acting on E (columns)
    j_rank: int
    expected: int
    counit_ok: bool
    identity_ok: bool

    @property
    def bijective(self) -> bool:
        return self.j_rank == self.expected

    def to_json(self) -> dict:
        return {"j_rank": self.j_rank, "expected": self.expected, "bijective": self.bijective, "counit_compatible": self.counit_ok, "identity_acts_trivially": self.identity_ok}


def hopf_action(H: FixedRing, x: Optional[Vec] = None, h: Optional[AlgElem] = None):
    """Action of (E[N])^G on E: (sum r_eta eta) . x = sum r_eta eta^-1(1_G)(x).

    With ``x`` and ``h`` returns h . x; otherwise the full data including the
    rank of j: E (x) H -> End_Q(E).
    """
    elems: List[Perm] = H.extra["n_elements"]
    EA = H.action.L
    movers = [invert(e)[0] for e in elems]

    def apply(elem: AlgElem, v: Vec) -> Vec:
        out = EA.zero()
        for eta, r in enumerate(elem.coeffs):
            if any(r):
                out = EA.add(out, EA.mul(r, EA.act(movers[eta], v)))
        return out

    if x is not None and h is not None:
        return apply(h, x)
    d = EA.dim
    basisE = [tuple(ONE if i == k else ZERO for i in range(d)) for k in range(d)]
    mats = [[list(apply(hb, e)) for e in basisE] for hb in H.basis]
    cols: List[SparseVec] = []
    for a in basisE:
        for mat in mats:
            col: SparseVec = {}
            for j, img in enumerate(mat):
                prod = EA.mul(a, tuple(img))
                for i, c in enumerate(prod):
                    if c:
                        col[j * d + i] = c
            cols.append(col)
    r = rank(cols)
    one = EA.one()
    counit_ok = all(apply(hb, one) == EA.scale(eps, one) for hb, eps in zip(H.basis, H.presentation.counit))
    ident = H.ring.one()
    identity_ok = all(apply(ident, e) == e for e in basisE)
    return HopfActionData(mats, r, d * d, counit_ok, identity_ok)


# --- Hopf isomorphisms -----------------------------------------------------------------------

def is_hopf_isomorphism(P1: HopfPresentation, P2: HopfPresentation, T: Sequence[SparseVec]) -> Dict[str, bool]:
    """Checks for the linear map sending basis i of P1 to the vector T[i] of P2."""
    d = P1.dim

    def tmap(x: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, c in x.items():
            axpy(out, c, T[i])
        return out

    def tt(t) -> Dict:
        out: Dict = {}
        for (a, b), c in t.items():
            for i, u in T[a].items():
                for j, v in T[b].items():
                    key = (i, j)
                    nv = out.get(key, ZERO) + c * u * v
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return out

    flags = {
        "bijective": P1.dim == P2.dim and rank(T) == d,
        "unit": tmap(P1.unit) == P2.unit,
        "multiplicative": all(tmap(P1.mult[a][b]) == P2.mul(T[a], T[b]) for a in range(d) for b in range(d)),
        "comultiplicative": all(tt(P1.comult[k]) == P2.delta(T[k]) for k in range(d)),
        "counit": all(P2.eps(T[k]) == P1.counit[k] for k in range(d)),
        "antipode": all(tmap(P1.antipode[k]) == P2.S(T[k]) for k in range(d)),
    }
    return flags


def idempotent_group(H: HopfPresentation) -> Optional[Tuple[FiniteGroup, List[SparseVec]]]:
    """When H is Q^n as an algebra, the group structure on its primitive
    idempotents read off from the coproduct (H is then (Q[group])*)."""
    alg = H.algebra()
    if not alg.is_commutative():
        return None
    blocks = split_commutative(alg)
    if any(f.degree != 1 for _, f in blocks):
        return None
    ids = [e for e, _ in blocks]
    ident = next((i for i, e in enumerate(ids) if H.eps(e) == ONE), None)
    if ident is None:
        return None
    order = [ident] + [i for i in range(len(ids)) if i != ident]
    ids = [ids[i] for i in order]
    eb = EchelonBasis(track=True)
    for e in ids:
        eb.insert(e)
    n = len(ids)
    table = [[None] * n for _ in range(n)]
    for k, e in enumerate(ids):
        t = H.delta(e)
        # rewrite in the idempotent basis on both sides
        rows: Dict[int, SparseVec] = {}
        for (a, b), c in t.items():
            rows.setdefault(b, {})[a] = rows.get(b, {}).get(a, ZERO) + c
        half: Dict[int, SparseVec] = {b: eb.coordinates(v) for b, v in rows.items()}
        full: Dict[Tuple[int, int], Fraction] = {}
        for b, coeffs in half.items():
            for i, c in coeffs.items():
                for j, c2 in eb.coordinates({b: ONE}).items():
                    full[(i, j)] = full.get((i, j), ZERO) + c * c2
        for (i, j), c in full.items():
            if c == 0:
                continue
            if c != ONE or table[i][j] is not None:
                return None
            table[i][j] = k
    if any(v is None for row in table for v in row):
        return None
    try:
        return FiniteGroup(table, name="idempotents"), ids
    except GroupError:
        return None


def find_hopf_isomorphism(P1: HopfPresentation, P2: HopfPresentation) -> Optional[List[SparseVec]]:
    """Explicit isomorphism for group algebras and duals of group algebras."""
    if P1.dim != P2.dim:
        return None
    # both spanned by group-likes
    try:
        g1, g2 = grouplikes(P1), grouplikes(P2)
    except HopfError:
        g1 = g2 = []
    if len(g1) == len(g2) == P1.dim and rank(g1) == P1.dim == rank(g2):
        from .hopf import grouplike_group

        G1, G2 = grouplike_group(P1, g1), grouplike_group(P2, g2)
        iso = find_isomorphism(G1, G2)
        if iso is None:
            return None
        return _change_basis(P1, P2, g1, g2, iso)
    r1, r2 = idempotent_group(P1), idempotent_group(P2)
    if r1 and r2:
        (G1, i1), (G2, i2) = r1, r2
        iso = find_isomorphism(G1, G2)
        if iso is None:
            return None
        eb = EchelonBasis(track=True)
        for e in i1:
            eb.insert(e)
        T = []
        for k in range(P1.dim):
            c = eb.coordinates({k: ONE})
            img: SparseVec = {}
            for i, v in c.items():
                axpy(img, v, i2[iso[i]])
            T.append(img)
        return T if all(is_hopf_isomorphism(P1, P2, T).values()) else None
    return None


def _change_basis(P1, P2, g1, g2, iso) -> Optional[List[SparseVec]]:
    """Linear map P1 -> P2 sending the group-likes of P1 to those of P2 along ``iso``.

    Both group-like lists are ordered the way ``grouplike_group`` orders them:
    the unit first, then the rest in their original order.
    """
    def ordered(P, g):
        ident = next(i for i, x in enumerate(g) if x == P.unit)
        return [g[ident]] + [x for i, x in enumerate(g) if i != ident]

    vecs1, vecs2 = ordered(P1, g1), ordered(P2, g2)
    eb = EchelonBasis(track=True)
    for v in vecs1:
        eb.insert(v)
    T = []
    for k in range(P1.dim):
        c = eb.coordinates({k: ONE})
        img: SparseVec = {}
        for i, v in c.items():
            axpy(img, v, vecs2[iso[i]])
        T.append(img)
    return T if all(is_hopf_isomorphism(P1, P2, T).values()) else None


# --- preimages -------------------------------------------------------------------------------

def reindex(L: EtaleAlgebra, F: FiniteGroup, phi: Sequence[int]) -> EtaleAlgebra:
    """The same algebra with F acting through the group map ``phi: F -> L.group``."""
    out = copy.copy(L)
    out.group = F
    out.rho = [L.rho[phi[f]] for f in range(F.order)]
    out.comp_aut = [L.comp_aut[phi[f]] for f in range(F.order)]
    out._act_cache = {}
    return out


@dataclass
class Preimage:
    W: List[int]
    embedding: object  # QuotientEmbedding
    surjective: bool
    image_order: int
    L: Optional[EtaleAlgebra] = None
    theta_ring: Optional[FixedRing] = None
    descent_ring: Optional[FixedRing] = None
    reduced_ring: Optional[FixedRing] = None
    isomorphism: Optional[List[SparseVec]] = None
    flags: Dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        from .serialize import frac_str

        out = {
            "W": self.W,
            "embedding": self.embedding.to_json(),
            "surjective": self.surjective,
            "image_order": self.image_order,
            "flags": self.flags,
        }
        if self.L is not None:
            out["L"] = {"components": self.L.n, "field": self.L.field.name, "description": self.extra_description()}
        if self.theta_ring is not None:
            out["theta"] = self.theta_ring.to_json()
        if self.reduced_ring is not None:
            out["reduced"] = self.reduced_ring.to_json()
        if self.isomorphism is not None:
            out["isomorphism"] = [[frac_str(v.get(i, ZERO)) for i in range(len(self.isomorphism))] for v in self.isomorphism]
        return out

    def extra_description(self) -> str:
        L = self.L
        if L is None:
            return ""
        return L.field.describe() if L.n == 1 else L.name


def _fixed_field(EA: EtaleAlgebra, W: Sequence[int], group: FiniteGroup, reps: Sequence[int], name: str = "") -> EtaleAlgebra:
    fs = fixed_subalgebra(EA, W)
    if not fs.is_field():
        raise ThetaError("E^W is not a field")
    fd = fs.as_field(group, reps, name=name or fs.describe())
    return EtaleAlgebra.from_field(fd, group)


def _embed_in_E(EA: EtaleAlgebra, fs_basis: Sequence[Vec], L: EtaleAlgebra, x: AlgElem, ring: GroupRing) -> AlgElem:
    """Map an element of L[N] (L = E^W in its own basis) into E[N]."""
    coeffs = {}
    for eta, c in enumerate(x.coeffs):
        v = EA.zero()
        for i, q in enumerate(c):
            if q:
                v = EA.add(v, EA.scale(q, fs_basis[i]))
        coeffs[eta] = v
    return ring.element(coeffs)


def theta_preimage(E: Union[FieldDesc, EtaleAlgebra, None], G: FiniteGroup, N: PermSubgroup) -> Preimage:
    """Find L with Theta(L) = (E[N])^G when lambda(G)/W is all of Aut(N).

    Otherwise only the embedding of lambda(G)/W in Aut(N) is certified, and
    (given E) the reduced fixed ring ((E^W)[N])^{G/W} is returned.
    """
    W = compute_W(N, G)
    qe = quotient_embedding(G, W, N)
    res = Preimage(W, qe, qe.surjective, len(set(qe.images)))
    res.flags["embedding_injective"] = qe.injective
    if E is None:
        return res
    EA = _as_etale(E, G)
    ng = qe.n_group
    _, _, acts = conjugation_action(G, N)
    if not qe.surjective:
        Lq = _fixed_field(EA, W, qe.quotient, qe.reps)
        action = TwistedAction(Lq, ng, [acts[r] for r in qe.reps])
        res.reduced_ring = fixed_ring(action, "((E^W)[N])^(G/W)")
        res.flags.update({f"reduced_{k}": v for k, v in res.reduced_ring.flags.items()})
        return res
    F = qe.aut.group
    # rep in G for each automorphism of N
    rep_of = {}
    for q, img in enumerate(qe.images):
        rep_of.setdefault(img, qe.reps[q])
    reps = [rep_of[f] for f in range(F.order)]
    H = descend(EA, G, N)
    if len(W) == 1:
        L = reindex(EA, F, reps)
        embed_basis = None
    else:
        fs = fixed_subalgebra(EA, W)
        if not fs.is_field():
            raise ThetaError("E^W is not a field")
        L = EtaleAlgebra.from_field(fs.as_field(F, reps, name=fs.describe()), F)
        embed_basis = fs.basis
    th = theta(L, ng, qe.aut.maps, label=f"Theta({L.name})")
    T = []
    for b in th.basis:
        if embed_basis is None:
            img = H.ring.element({eta: c for eta, c in enumerate(b.coeffs)})
        else:
            img = _embed_in_E(EA, embed_basis, L, b, H.ring)
        T.append(H.coordinates(img))
    iso = is_hopf_isomorphism(th.presentation, H.presentation, T)
    res.L, res.theta_ring, res.descent_ring, res.isomorphism = L, th, H, T
    res.flags["galois"] = bool(verify_galois(L))
    res.flags.update({f"theta_{k}": v for k, v in th.flags.items()})
    res.flags.update({f"iso_{k}": v for k, v in iso.items()})
    return res


# --- the quaternion / cyclic-of-order-8 family -------------------------------------------------

Q8_NAMES = {"1": 0, "-1": 1, "i": 2, "-i": 3, "j": 4, "-j": 5, "k": 6, "-k": 7}


def eta_st(s: str, t: str) -> Perm:
    """The 8-cycle (1, s, t, t^-1 s^-1, s^2, s^-1, t^-1, st) on Q8's element indices."""
    if s not in "ijk" or t not in "ijk" or s == t or len(s) != 1 or len(t) != 1:
        raise ThetaError("s and t must be distinct elements of {i, j, k}")
    G = quaternion()
    si, ti = Q8_NAMES[s], Q8_NAMES[t]
    seq = [0, si, ti, G.mul(G.inv(ti), G.inv(si)), G.mul(si, si), G.inv(si), G.inv(ti), G.mul(si, ti)]
    return from_cycles(8, [seq], one_based=False)


def c_st(s: str, t: str) -> PermSubgroup:
    return PermSubgroup.generated(8, [eta_st(s, t)])


def c8_index_map(N: PermSubgroup, eta: Perm) -> List[int]:
    """pos[m] = index (in N.as_group()) of eta^m."""
    ng, elems = N.as_group()
    pos = {e: i for i, e in enumerate(elems)}
    out, p = [], tuple(range(N.degree))
    for _ in range(N.order):
        out.append(pos[p])
        p = compose(eta, p)
    return out


@dataclass
class Q8Preimage:
    s: str
    t: str
    d: int
    L: EtaleAlgebra
    theta_ring: FixedRing
    descent_ring: FixedRing
    listed_basis: List[AlgElem]
    psi_images: List[AlgElem]
    psi_matrix: List[SparseVec]
    W: List[int]
    quotient_action: Tuple[int, ...]
    flags: Dict[str, bool]
    discrepancies: List[str]

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "d": self.d,
            "W": self.W,
            "quotient_action_on_C8": list(self.quotient_action),
            "L": self.L.to_json(),
            "theta": self.theta_ring.to_json(),
            "descent": self.descent_ring.to_json(),
            "listed_basis": [b.to_json() for b in self.listed_basis],
            "flags": self.flags,
            "discrepancies": self.discrepancies,
        }


def q8_L(d: int = 2) -> EtaleAlgebra:
    """Q(beta) f1 + Q(beta) f2 over F = Z_8^*, U = <3>, transversal {1, 5}."""
    F = units_group(8)
    # units_group(8) lists 1, 3, 5, 7; U = {1, 3} = indices {0, 1}; 3 acts by beta -> -beta
    return build_F_galois(F, [0, 1], quadratic_field(d), transversal=[0, 2])


def q8_c8_preimage(t: str = "k", d: int = 2, s: Optional[str] = None) -> Q8Preimage:
    from .algebra import squarefree_part

    if t not in ("i", "j", "k"):
        raise ThetaError("t must be one of i, j, k")
    if s is None:
        s = next(x for x in "ijk" if x != t)
    if s == t or s not in ("i", "j", "k"):
        raise ThetaError("s must be one of i, j, k and differ from t")
    if d == 1 or d == 0 or squarefree_part(d) != d:
        raise ThetaError("d must be a squarefree integer other than 0, 1")
    G = quaternion()
    eta = eta_st(s, t)
    N = c_st(s, t)
    W = compute_W(N, G)
    qe = quotient_embedding(G, W, N)
    pos = c8_index_map(N, eta)
    back = {v: m for m, v in enumerate(pos)}
    _, _, acts = conjugation_action(G, N)
    # conjugation by lambda(s) as a map on exponents of eta
    s_act = tuple(back[acts[Q8_NAMES[s]][pos[m]]] for m in range(8))
    t_act = tuple(back[acts[Q8_NAMES[t]][pos[m]]] for m in range(8))
    C8 = cyclic(8)
    discrepancies: List[str] = []

    # Theta side
    L = q8_L(d)
    th = theta(L, C8, units_action(8), label=f"Theta(L) for C_{s}{t}")
    ring = th.ring
    f1, f2 = L.idempotent(0), L.idempotent(1)
    beta = L.diag((Fraction(0), ONE))
    one = L.one()

    def e(*terms) -> AlgElem:
        """Sum of (coefficient in L, exponent) pairs."""
        acc = ring.zero()
        for c, m in terms:
            acc = acc + ring.eta(m, c)
        return acc

    neg = lambda x: L.scale(-1, x)
    u = L.sub(f2, f1)
    half, quarter, eighth = Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)
    b_all = e(*[(one, m) for m in range(8)]).scale(eighth)
    b_alt = e(*[(one if m % 2 == 0 else neg(one), m) for m in range(8)]).scale(eighth)
    b_q = e((one, 0), (neg(one), 2), (one, 4), (neg(one), 6)).scale(quarter)
    b_qb = e((beta, 1), (neg(beta), 3), (beta, 5), (neg(beta), 7)).scale(quarter)
    b_h = e((one, 0), (neg(one), 4)).scale(half)
    b_hb = e((beta, 2), (neg(beta), 6)).scale(half)
    b_u = e((u, 3), (neg(u), 7), (u, 1), (neg(u), 5)).scale(half)
    ub = L.mul(u, beta)
    b_ub = e((ub, 3), (neg(ub), 7), (neg(ub), 1), (ub, 5)).scale(half)
    basis8 = [b_all, b_alt, b_q, b_qb, b_h, b_hb, b_u, b_ub]

    # quotient-descent side: G/W = C2 acting by beta -> -beta and eta -> eta^3
    Qg = qe.quotient
    rep_nontriv = next(r for r in qe.reps if r not in W)
    quot_act = tuple(back[acts[rep_nontriv][pos[m]]] for m in range(8))
    Ew = EtaleAlgebra.from_field(quadratic_field(d), cyclic(2))
    actions = [tuple(range(8)), quot_act]
    Hst = fixed_ring(TwistedAction(Ew, C8, actions), label=f"H_{s}{t}")

    # psi: projection onto the f2 component, read in Q(beta)[C8]
    def psi(x: AlgElem) -> AlgElem:
        return Hst.ring.element({m: L.component(c, 1) for m, c in enumerate(x.coeffs)})

    images = [psi(b) for b in basis8]
    # expected images of the listed basis
    E1 = Ew.one()
    Eb = (Fraction(0), ONE)
    R = Hst.ring

    def r(*terms) -> AlgElem:
        acc = R.zero()
        for c, m in terms:
            acc = acc + R.eta(m, c)
        return acc

    mE1, mEb = Ew.scale(-1, E1), Ew.scale(-1, Eb)
    listed = [
        r(*[(E1, m) for m in range(8)]).scale(eighth),
        r(*[(E1 if m % 2 == 0 else mE1, m) for m in range(8)]).scale(eighth),
        r((E1, 0), (mE1, 2), (E1, 4), (mE1, 6)).scale(quarter),
        r((Eb, 1), (mEb, 3), (Eb, 5), (mEb, 7)).scale(quarter),
        r((E1, 0), (mE1, 4)).scale(half),
        r((Eb, 2), (mEb, 6)).scale(half),
        r((E1, 3), (mE1, 7), (E1, 1), (mE1, 5)).scale(half),
        r((Eb, 3), (mEb, 7), (mEb, 1), (Eb, 5)).scale(half),
    ]
    span_th = EchelonBasis()
    for b in th.basis:
        span_th.insert(b.sparse())
    span_listed = EchelonBasis()
    for b in basis8:
        span_listed.insert(b.sparse())
    mult_ok = all(psi(x * y) == images[a] * images[b] for a, x in enumerate(basis8) for b, y in enumerate(basis8))
    # psi on the computed basis, as a matrix into the descent basis
    T = [Hst.coordinates(psi(b)) for b in th.basis]
    iso = is_hopf_isomorphism(th.presentation, Hst.presentation, T)
    for k, v in iso.items():
        if not v:
            discrepancies.append(f"psi fails {k}")
    flags = {
        "N_action_s_is_cube": s_act == tuple((3 * m) % 8 for m in range(8)),
        "N_action_t_trivial": t_act == tuple(range(8)),
        "W_is_t": sorted(W) == sorted(G.closure([Q8_NAMES[t]])),
        "image_proper": (not qe.surjective) and len(set(qe.images)) == 2 and qe.aut.group.order == 4,
        "quotient_acts_by_cube": quot_act == tuple((3 * m) % 8 for m in range(8)),
        "L_galois": bool(verify_galois(L)),
        "listed_basis_fixed": all(th.action.is_fixed(b) for b in basis8),
        "listed_basis_spans_fixed_ring": span_listed.rank == 8 and all(span_th.contains(b.sparse()) for b in basis8),
        "u_squared_is_one": L.mul(u, u) == L.add(f1, f2) == one,
        "psi_matches_listed_images": images == listed,
        "psi_multiplicative_64": mult_ok,
        "descent_in_fixed_ring": all(Hst.action.is_fixed(x) for x in images),
    }
    flags.update({f"psi_{k}": v for k, v in iso.items()})
    flags.update({f"theta_{k}": v for k, v in th.flags.items()})
    flags.update({f"descent_{k}": v for k, v in Hst.flags.items()})
    return Q8Preimage(s, t, d, L, th, Hst, basis8, images, T, sorted(W), quot_act, flags, discrepancies)


# --- invariants ------------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantRecord:
    blocks: Tuple[Tuple[int, str, bool], ...]
    grouplike_count: int
    primitive_idempotents: int
    dual_blocks: Tuple[Tuple[int, str, bool], ...]
    quadratic_classes: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "grouplike_count": self.grouplike_count,
            "primitive_idempotents": self.primitive_idempotents,
            "dual_blocks": [list(b) for b in self.dual_blocks],
            "quadratic_classes": list(self.quadratic_classes),
        }


def hopf_invariants(H: Union[FixedRing, HopfPresentation], bound: int = 16) -> InvariantRecord:
    """Isomorphism invariants; equal records are necessary for Hopf isomorphism."""
    from .algebra import quadratic_class
    from .wedderburn import decompose

    P = H.presentation if isinstance(H, FixedRing) else H
    if P.dim > bound:
        raise ThetaError(f"dimension {P.dim} exceeds the invariant bound {bound}")
    prof = decompose(P.algebra())
    dual = P.dual_algebra()
    dprof = decompose(dual)

    def shapes(pr):
        return tuple(sorted((b.k, b.center, bool(b.division)) for b in pr.blocks))

    quad = set()
    for pr, alg in ((prof, P.algebra()), (dprof, dual)):
        for b in pr.blocks:
            if b.center_degree == 2:
                sub, _ = alg.subalgebra([alg.mul(b.idempotent, z) for z in alg.center_basis()])
                q = quadratic_class(sub)
                if q is not None:
                    quad.add(q)
    return InvariantRecord(shapes(prof), len(grouplikes(P)), len(prof.blocks), shapes(dprof), tuple(sorted(quad)))
