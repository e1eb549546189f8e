"""Wedderburn decompositions of small semisimple Q-algebras.

Commutative parts are split with central idempotents; 4-dimensional central
simple blocks are presented as quaternion algebras (a, b) and classified by
local Hilbert symbols.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import Algebra, NotSemisimple, describe_field, split_commutative, squarefree_part
from .exact.factor import _is_prime
from .serialize import parse_frac
from .exact.linalg import ONE, ZERO, EchelonBasis, SparseVec, axpy, nullspace, rank
from .groups.finite import FiniteGroup, GroupError

DECOMPOSE_BOUND = 16
PROFILE_BOUND = 8
NILPOTENT_SEARCH = 12


class WedderburnError(ValueError):
    pass


INF = "inf"


# --- Hilbert symbols -------------------------------------------------------------

def _split_p(n: int, p: int) -> Tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def hilbert_symbol(a, b, place) -> int:
    """Local Hilbert symbol (a, b)_v for nonzero rationals at a prime or ``"inf"``."""
    a, b = Fraction(a), Fraction(b)
    if not a or not b:
        raise WedderburnError("Hilbert symbol needs nonzero arguments")
    if place == INF or place == float("inf"):
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or not _is_prime(place):
        raise WedderburnError(f"place {place!r} is neither a prime nor inf")
    p = place
    x = a.numerator * a.denominator
    y = b.numerator * b.denominator
    alpha, u = _split_p(x, p)
    beta, v = _split_p(y, p)
    if p != 2:
        sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
        return sign * (_legendre(u, p) ** beta) * (_legendre(v, p) ** alpha)

    def eps(z):
        return ((z - 1) // 2) % 2

    def omega(z):
        return ((z * z - 1) // 8) % 2

    e = (eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)) % 2
    return -1 if e else 1


def _prime_factors(n: int) -> List[int]:
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def relevant_places(a, b) -> List[Union[int, str]]:
    a, b = Fraction(a), Fraction(b)
    ps = {2}
    for q in (a.numerator, a.denominator, b.numerator, b.denominator):
        ps.update(_prime_factors(q))
    return [INF] + sorted(ps)


def hilbert_product(a, b) -> int:
    out = 1
    for v in relevant_places(a, b):
        out *= hilbert_symbol(a, b, v)
    return out


def quaternion_splits(a, b) -> Tuple[bool, Dict[str, int]]:
    symbols = {str(v): hilbert_symbol(a, b, v) for v in relevant_places(a, b)}
    return all(s == 1 for s in symbols.values()), symbols


# --- block profiles ------------------------------------------------------------------

@dataclass
class Block:
    k: int
    center: str
    center_degree: int
    idempotent: SparseVec
    division: Optional[bool] = None
    witness: Dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.k * self.k * self.center_degree

    def shape(self) -> Tuple[int, str]:
        return (self.k, self.center)

    def to_json(self) -> dict:
        from .serialize import frac_str

        out = {"k": self.k, "center": self.center, "idempotent": {str(i): frac_str(c) for i, c in sorted(self.idempotent.items())}}
        if self.k == 2:
            out["division"] = self.division
            out["witness"] = self.witness
        return out


@dataclass
class BlockProfile:
    blocks: List[Block]
    dim: int
    seed: int
    flags: Dict[str, bool]

    def shapes(self) -> List[Tuple[int, str]]:
        return sorted(b.shape() for b in self.blocks)

    def sizes(self) -> List[int]:
        return sorted(b.k for b in self.blocks)

    def describe(self) -> List[str]:
        out = []
        for b in sorted(self.blocks, key=lambda b: (b.k, b.center)):
            if b.k == 1:
                out.append(b.center)
            elif b.division:
                out.append(f"H({parse_frac(b.witness['a'])},{parse_frac(b.witness['b'])}) division")
            else:
                out.append(f"Mat{b.k}({b.center})")
        return out

    def to_json(self) -> dict:
        return {
            "blocks": [b.to_json() for b in sorted(self.blocks, key=lambda b: (b.k, b.center, sorted(b.idempotent.items())))],
            "witnesses": {"seed": self.seed},
            "verdict": self.describe(),
            "flags": self.flags,
        }


def _block_algebra(alg: Algebra, e: SparseVec) -> Tuple[Algebra, List[SparseVec]]:
    return alg.subalgebra([alg.mul(e, {i: ONE}) for i in range(alg.dim)])


def _scalar_of(sub: Algebra, x: SparseVec) -> Optional[Fraction]:
    """c if x = c * unit in ``sub``."""
    if not x:
        return ZERO
    i = next(iter(sub.unit))
    c = x.get(i, ZERO) / sub.unit[i]
    return c if {k: c * v for k, v in sub.unit.items() if c * v} == x else None


def _quaternion_witness(sub: Algebra) -> Dict:
    """Quaternion basis (1, u, v, uv) of a 4-dim central simple algebra."""
    d = sub.dim
    trace_row = {j: t for j in range(d) if (t := sub.trace({j: ONE}))}
    tz = nullspace([trace_row], d)
    nilpotent = None
    u, a = None, None
    for x in tz + [sub.add(tz[i], tz[j]) for i in range(len(tz)) for j in range(i + 1, len(tz))]:
        sq = _scalar_of(sub, sub.mul(x, x))
        if sq is None:
            raise WedderburnError("trace-zero element does not square to a scalar")
        if sq == 0:
            nilpotent = nilpotent or x
            continue
        u, a = x, sq
        break
    if u is None:
        raise WedderburnError("no invertible pure quaternion found")
    rows = []
    # v in tz with u v + v u = 0
    for k in range(d):
        row = {}
        for idx, t in enumerate(tz):
            ac = sub.add(sub.mul(u, t), sub.mul(t, u))
            c = ac.get(k, ZERO)
            if c:
                row[idx] = c
        if row:
            rows.append(row)
    coeffs = nullspace(rows, len(tz))
    cands = []
    for c in coeffs:
        vec: SparseVec = {}
        for idx, s in c.items():
            axpy(vec, s, tz[idx])
        cands.append(vec)
    v, b = None, None
    for x in cands + [sub.add(cands[0], cands[1])] if len(cands) > 1 else cands:
        sq = _scalar_of(sub, sub.mul(x, x))
        if sq:
            v, b = x, sq
            break
        if sq == 0 and x:
            nilpotent = nilpotent or x
    if v is None:
        raise WedderburnError("no anticommuting pure quaternion found")
    uv = sub.mul(u, v)
    if rank([sub.unit, u, v, uv]) != 4:
        raise WedderburnError("quaternion basis is degenerate")
    if nilpotent is None:
        ab = a * b
        for al, be, ga in itertools.product(range(-NILPOTENT_SEARCH, NILPOTENT_SEARCH + 1), repeat=3):
            if (al, be, ga) == (0, 0, 0):
                continue
            if a * al * al + b * be * be - ab * ga * ga == 0:
                nilpotent = {}
                axpy(nilpotent, Fraction(al), u)
                axpy(nilpotent, Fraction(be), v)
                axpy(nilpotent, Fraction(ga), uv)
                break
    return {"u": u, "v": v, "a": a, "b": b, "nilpotent": nilpotent}


def decompose(alg: Algebra, seed: int = 0, bound: int = DECOMPOSE_BOUND) -> BlockProfile:
    """Wedderburn blocks of a semisimple algebra with k <= 2 matrix blocks."""
    from .serialize import frac_str

    if alg.dim > bound:
        raise WedderburnError(f"dimension {alg.dim} exceeds the decomposition bound {bound}")
    if not alg.is_semisimple():
        raise NotSemisimple("algebra has a nonzero radical (degenerate trace form)")
    zb = alg.center_basis()
    center, zvecs = alg.subalgebra(zb)
    blocks: List[Block] = []
    for ez, f in split_commutative(center, seed):
        e: SparseVec = {}
        for i, c in ez.items():
            axpy(e, c, zvecs[i])
        sub, _basis = _block_algebra(alg, e)
        c = f.degree
        if sub.dim % c:
            raise WedderburnError("block dimension is not a multiple of its center degree")
        k2 = sub.dim // c
        k = int(round(k2 ** 0.5))
        if k * k != k2:
            raise WedderburnError("block dimension is not k^2 times the center degree")
        zsub, _ = center.subalgebra([center.mul(ez, {i: ONE}) for i in range(center.dim)])
        cname = describe_field(zsub, seed)
        if k == 1:
            blocks.append(Block(1, cname, c, e))
        elif k == 2 and c == 1:
            w = _quaternion_witness(sub)
            splits, symbols = quaternion_splits(w["a"], w["b"])
            if w["nilpotent"] is not None and not splits:
                raise WedderburnError("nilpotent found in a division algebra")
            witness = {
                "a": frac_str(w["a"]),
                "b": frac_str(w["b"]),
                "hilbert": symbols,
                "nilpotent": w["nilpotent"] is not None,
            }
            blocks.append(Block(2, cname, 1, e, division=not splits, witness=witness))
        else:
            raise WedderburnError(f"unsupported block: Mat{k} over a field of degree {c}")
    total: SparseVec = {}
    for b in blocks:
        axpy(total, ONE, b.idempotent)
    flags = {
        "dimension_sum": sum(b.dim for b in blocks) == alg.dim,
        "idempotents_sum_to_one": total == alg.unit,
        "orthogonal": all(not alg.mul(x.idempotent, y.idempotent) for x, y in itertools.permutations(blocks, 2)),
        "central": all(alg.mul(b.idempotent, {i: ONE}) == alg.mul({i: ONE}, b.idempotent) for b in blocks for i in range(alg.dim)),
    }
    return BlockProfile(blocks, alg.dim, seed, flags)


# --- complex profile and the absolute semisimplicity verdict -------------------------------

def complex_profile(n: FiniteGroup, bound: int = PROFILE_BOUND) -> List[int]:
    """Matrix sizes of C[N] from class count, abelianization and sum of squares.

    Abelian groups are always all ones; otherwise ``|N| <= bound``.
    """
    order = n.order
    if n.is_abelian():
        return [1] * order
    if order > bound:
        raise WedderburnError(f"order {order} exceeds the profile bound {bound}")
    r = len(n.conjugacy_classes())
    ones = n.abelianization_order()
    rest = order - ones
    slots = r - ones
    sols = []
    maxk = int(rest ** 0.5)
    for combo in itertools.combinations_with_replacement(range(2, maxk + 1), slots):
        if sum(c * c for c in combo) == rest:
            sols.append(combo)
    if len(sols) != 1:
        raise WedderburnError("class data does not determine the block sizes")
    return sorted([1] * ones + list(sols[0]))


@dataclass
class AbssVerdict:
    verdict: bool
    rational_profile: List[Tuple[int, str]]
    complex_profile: List[int]
    blocks: BlockProfile

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "rational_profile": [[k, c] for k, c in self.rational_profile],
            "complex_profile": self.complex_profile,
            "decomposition": self.blocks.to_json(),
        }


def is_absolutely_semisimple(h, n: FiniteGroup, seed: int = 0) -> AbssVerdict:
    """Rational block sizes agree with those of C[N] and every center is Q.

    A split quaternion block counts as Mat2(Q); a division one does not.
    """
    alg = h.algebra() if hasattr(h, "algebra") and not isinstance(h, Algebra) else h
    if alg.dim != n.order:
        raise WedderburnError(f"dimension {alg.dim} does not match |N| = {n.order}")
    prof = decompose(alg, seed)
    cprof = complex_profile(n)
    ok = all(b.center == "Q" and not b.division for b in prof.blocks) and prof.sizes() == cprof
    return AbssVerdict(ok, prof.shapes(), cprof, prof)


# --- the quaternion form H(theta) -------------------------------------------------------------

@dataclass
class GreitherForm:
    ring: object  # FixedRing
    quaternion_basis: list
    profile: BlockProfile
    verdict: AbssVerdict
    flags: Dict[str, bool]

    @property
    def presentation(self):
        return self.ring.presentation

    def to_json(self) -> dict:
        return {
            "fixed_ring": self.ring.to_json(),
            "quaternion_basis": [b.to_json() for b in self.quaternion_basis],
            "decomposition": self.profile.to_json(),
            "verdict": self.verdict.to_json(),
            "flags": self.flags,
        }


def _conj_by(G: FiniteGroup, g: int) -> Tuple[int, ...]:
    return tuple(G.conj(g, x) for x in range(G.order))


def greither_form(seed: int = 0) -> GreitherForm:
    """(Q(zeta_4)[Q8])^{C2}: the generator acts by complex conjugation on
    Q(zeta_4) and by conjugation with k on Q8."""
    from .etale import EtaleAlgebra, cyclotomic_field
    from .exact.linalg import EchelonBasis
    from .groups.finite import quaternion
    from .theta import TwistedAction, fixed_ring

    Q8 = quaternion()
    one_, minus1, i_, j_, k_ = 0, 1, 2, 4, 6
    L = EtaleAlgebra.from_field(cyclotomic_field(4))
    action = TwistedAction(L, Q8, [tuple(range(8)), _conj_by(Q8, k_)])
    fr = fixed_ring(action, "H(theta)")
    R = fr.ring
    half = Fraction(1, 2)
    e = (R.eta(one_) - R.eta(minus1)).scale(half)
    u, v, w = e * R.eta(i_), e * R.eta(j_), e * R.eta(k_)
    zeta = R.one().lmul((ZERO, ONE))
    zu, zv = zeta * u, zeta * v
    basis = [e, zv, zu, w]
    span_fixed = EchelonBasis()
    for b in fr.basis:
        span_fixed.insert(b.sparse())
    part = EchelonBasis()
    for b in fr.basis:
        part.insert((e * b).sparse())
    in_part = all(part.contains(b.sparse()) for b in basis)
    nil = zu - w
    profile = decompose(fr.presentation.algebra(), seed)
    verdict = is_absolutely_semisimple(fr.presentation, Q8, seed)
    flags = {
        "basis_fixed": all(action.is_fixed(b) for b in basis),
        "basis_in_fixed_ring": all(span_fixed.contains(b.sparse()) for b in basis),
        "basis_spans_quaternion_part": in_part and part.rank == 4 and rank([b.sparse() for b in basis]) == 4,
        "zv_squared_is_one": zv * zv == e,
        "zu_squared_is_one": zu * zu == e,
        "zv_zu_is_w": zv * zu == w,
        "nilpotent_nonzero": not nil.is_zero(),
        "nilpotent_square_zero": (nil * nil).is_zero(),
        "profile_Q4_Mat2": profile.describe() == ["Q", "Q", "Q", "Q", "Mat2(Q)"],
        "absolutely_semisimple": verdict.verdict,
    }
    flags.update(fr.flags)
    flags.update(profile.flags)
    return GreitherForm(fr, basis, profile, verdict, flags)


@dataclass
class GreitherPreimage:
    L: object
    ring: object
    form: GreitherForm
    isomorphism: list
    flags: Dict[str, bool]

    def to_json(self) -> dict:
        return {"components": self.L.n, "field": self.L.field.name, "theta": self.ring.to_json(), "flags": self.flags}


def theta_preimage_greither(form: Optional[GreitherForm] = None) -> GreitherPreimage:
    """The S4 = Aut(Q8)-Galois algebra induced from Q(zeta_4) along the
    subgroup generated by conjugation with k; its Theta is H(theta)."""
    from .etale import build_F_galois, cyclotomic_field, verify_galois
    from .groups.finite import automorphism_group, is_isomorphic, quaternion, symmetric
    from .theta import is_hopf_isomorphism, theta

    form = form or greither_form()
    Q8 = quaternion()
    A = automorphism_group(Q8)
    F = A.group
    ck = A.index(_conj_by(Q8, 6))
    M = cyclotomic_field(4).with_action(F, {0: 0, ck: 1})
    L = build_F_galois(F, [0, ck], M)
    gal = verify_galois(L)
    fr = theta(L, Q8, A.maps, label="Theta(L)", check_galois=False)
    H = form.ring
    T = []
    for b in fr.basis:
        img = H.ring.element({eta: L.component(c, 0) for eta, c in enumerate(b.coeffs)})
        T.append(H.coordinates(img))
    iso = is_hopf_isomorphism(fr.presentation, H.presentation, T)
    flags = {
        "F_is_S4": is_isomorphic(F, symmetric(4)),
        "components_12": L.n == 12,
        "transversal_starts_at_identity": L.transversal[0] == 0,
        "galois": bool(gal),
    }
    flags.update({f"theta_{k}": v for k, v in fr.flags.items()})
    flags.update({f"iso_{k}": v for k, v in iso.items()})
    return GreitherPreimage(L, fr, form, T, flags)
