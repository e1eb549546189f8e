"""Hopf algebras over Q by structure constants, group rings L[N], duals of
group rings, the cyclic character isomorphism, group-likes, and the
Galois-fixed idempotents of Q(zeta)[C_{p^m}]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Algebra, split_commutative
from .etale import EtaleAlgebra, FieldDesc, Vec
from .exact.cyclotomic import CycElem, galois_conjugate, units_mod, zeta
from .exact.factor import _is_prime
from .exact.linalg import ONE, ZERO, EchelonBasis, SparseVec, axpy, rank
from .groups.finite import FiniteGroup, cyclic

Pair = Tuple[int, int]
Tensor = Dict[Pair, Fraction]

GROUPLIKE_BOUND = 24


class HopfError(ValueError):
    pass


def _tensor_add(out: Tensor, c: Fraction, t: Tensor) -> None:
    for key, v in t.items():
        nv = out.get(key, ZERO) + c * v
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)


class HopfPresentation:
    """A Hopf algebra over Q on the basis ``h_0 .. h_{d-1}``.

    * ``mult[a][b]``: sparse vector of ``h_a h_b``
    * ``unit``: sparse vector of 1
    * ``comult[k]``: ``{(a, b): c}`` with ``Delta(h_k) = sum c h_a (x) h_b``
    * ``counit[k]``: ``epsilon(h_k)``
    * ``antipode[k]``: sparse vector of ``S(h_k)``
    """

    def __init__(self, mult, unit, comult, counit, antipode, labels: Optional[Sequence[str]] = None, name: str = ""):
        self.dim = len(mult)
        self.mult: List[List[SparseVec]] = [[{k: Fraction(c) for k, c in v.items() if c} for v in row] for row in mult]
        self.unit: SparseVec = {k: Fraction(c) for k, c in unit.items() if c}
        self.comult: List[Tensor] = [{k: Fraction(c) for k, c in t.items() if c} for t in comult]
        self.counit: List[Fraction] = [Fraction(c) for c in counit]
        self.antipode: List[SparseVec] = [{k: Fraction(c) for k, c in v.items() if c} for v in antipode]
        self.labels = list(labels) if labels else [f"h{i}" for i in range(self.dim)]
        self.name = name

    def __repr__(self) -> str:
        return f"HopfPresentation({self.name or '?'}, dim={self.dim})"

    # -- linear extensions --------------------------------------------------
    def algebra(self) -> Algebra:
        return Algebra(self.mult, self.unit, labels=self.labels, name=self.name)

    def mul(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.mult[i][j])
        return out

    def delta(self, x: SparseVec) -> Tensor:
        out: Tensor = {}
        for k, c in x.items():
            _tensor_add(out, c, self.comult[k])
        return out

    def eps(self, x: SparseVec) -> Fraction:
        return sum((c * self.counit[k] for k, c in x.items()), ZERO)

    def S(self, x: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for k, c in x.items():
            axpy(out, c, self.antipode[k])
        return out

    def tensor_mul(self, s: Tensor, t: Tensor) -> Tensor:
        out: Tensor = {}
        for (a, b), c in s.items():
            for (a2, b2), c2 in t.items():
                left = self.mult[a][a2]
                right = self.mult[b][b2]
                cc = c * c2
                for i, u in left.items():
                    for j, v in right.items():
                        key = (i, j)
                        nv = out.get(key, ZERO) + cc * u * v
                        if nv:
                            out[key] = nv
                        else:
                            out.pop(key, None)
        return out

    # -- axioms --------------------------------------------------------------
    def check_associative(self) -> bool:
        return self.algebra().is_associative()

    def check_unit(self) -> bool:
        d = self.dim
        return all(self.mul(self.unit, {j: ONE}) == {j: ONE} == self.mul({j: ONE}, self.unit) for j in range(d))

    def check_coassociative(self) -> bool:
        for k in range(self.dim):
            left: Dict[Tuple[int, int, int], Fraction] = {}
            right: Dict[Tuple[int, int, int], Fraction] = {}
            for (a, b), c in self.comult[k].items():
                for (x, y), c2 in self.comult[a].items():
                    key = (x, y, b)
                    left[key] = left.get(key, ZERO) + c * c2
                for (x, y), c2 in self.comult[b].items():
                    key = (a, x, y)
                    right[key] = right.get(key, ZERO) + c * c2
            if {k2: v for k2, v in left.items() if v} != {k2: v for k2, v in right.items() if v}:
                return False
        return True

    def check_counit(self) -> bool:
        for k in range(self.dim):
            left: SparseVec = {}
            right: SparseVec = {}
            for (a, b), c in self.comult[k].items():
                axpy(left, c * self.counit[a], {b: ONE})
                axpy(right, c * self.counit[b], {a: ONE})
            if left != {k: ONE} or right != {k: ONE}:
                return False
        return True

    def check_bialgebra(self) -> bool:
        """Delta and epsilon are unital algebra maps."""
        if self.delta(self.unit) != self.tensor_unit() or self.eps(self.unit) != ONE:
            return False
        for a in range(self.dim):
            for b in range(self.dim):
                prod = self.mult[a][b]
                if self.delta(prod) != self.tensor_mul(self.comult[a], self.comult[b]):
                    return False
                if self.eps(prod) != self.counit[a] * self.counit[b]:
                    return False
        return True

    def tensor_unit(self) -> Tensor:
        out: Tensor = {}
        for i, a in self.unit.items():
            for j, b in self.unit.items():
                out[(i, j)] = a * b
        return out

    def check_antipode(self) -> bool:
        for k in range(self.dim):
            target = {i: self.counit[k] * c for i, c in self.unit.items() if self.counit[k] * c}
            left: SparseVec = {}
            right: SparseVec = {}
            for (a, b), c in self.comult[k].items():
                axpy(left, c, self.mul(self.antipode[a], {b: ONE}))
                axpy(right, c, self.mul({a: ONE}, self.antipode[b]))
            if left != target or right != target:
                return False
        return True

    def check_axioms(self) -> Dict[str, bool]:
        return {
            "associative": self.check_associative(),
            "unit": self.check_unit(),
            "coassociative": self.check_coassociative(),
            "counit": self.check_counit(),
            "bialgebra": self.check_bialgebra(),
            "antipode": self.check_antipode(),
        }

    def is_hopf(self) -> bool:
        return all(self.check_axioms().values())

    # -- derived structures ---------------------------------------------------
    def dual_algebra(self) -> Algebra:
        """H* on the dual basis: h*_a h*_b = sum_k c^{ab}_k h*_k, unit epsilon."""
        d = self.dim
        mult: List[List[SparseVec]] = [[{} for _ in range(d)] for _ in range(d)]
        for k, t in enumerate(self.comult):
            for (a, b), c in t.items():
                mult[a][b][k] = mult[a][b].get(k, ZERO) + c
        unit = {k: c for k, c in enumerate(self.counit) if c}
        return Algebra(mult, unit, labels=[f"{l}*" for l in self.labels], name=f"{self.name}*")

    def dual(self) -> "HopfPresentation":
        d = self.dim
        mult: List[List[SparseVec]] = [[{} for _ in range(d)] for _ in range(d)]
        for k, t in enumerate(self.comult):
            for (a, b), c in t.items():
                mult[a][b][k] = mult[a][b].get(k, ZERO) + c
        comult: List[Tensor] = [{} for _ in range(d)]
        for a in range(d):
            for b in range(d):
                for k, c in self.mult[a][b].items():
                    comult[k][(a, b)] = comult[k].get((a, b), ZERO) + c
        unit = {k: c for k, c in enumerate(self.counit) if c}
        counit = [self.unit.get(k, ZERO) for k in range(d)]
        antipode: List[SparseVec] = [{} for _ in range(d)]
        for a in range(d):
            for k, c in self.antipode[a].items():
                antipode[k][a] = c
        return HopfPresentation(mult, unit, comult, counit, antipode, labels=[f"{l}*" for l in self.labels], name=f"({self.name})*")

    def to_json(self) -> dict:
        from .serialize import frac_str

        d = self.dim
        return {
            "name": self.name,
            "dim": d,
            "labels": self.labels,
            "mult": [[a, b, k, frac_str(c)] for a in range(d) for b in range(d) for k, c in sorted(self.mult[a][b].items())],
            "unit": [[k, frac_str(c)] for k, c in sorted(self.unit.items())],
            "comult": [[k, a, b, frac_str(c)] for k in range(d) for (a, b), c in sorted(self.comult[k].items())],
            "counit": [frac_str(c) for c in self.counit],
            "antipode": [[frac_str(self.antipode[k].get(i, ZERO)) for i in range(d)] for k in range(d)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HopfPresentation":
        from .serialize import parse_frac

        d = data["dim"]
        mult: List[List[SparseVec]] = [[{} for _ in range(d)] for _ in range(d)]
        for a, b, k, c in data["mult"]:
            mult[a][b][k] = parse_frac(c)
        comult: List[Tensor] = [{} for _ in range(d)]
        for k, a, b, c in data["comult"]:
            comult[k][(a, b)] = parse_frac(c)
        unit = {k: parse_frac(c) for k, c in data["unit"]}
        counit = [parse_frac(c) for c in data["counit"]]
        antipode = [{i: parse_frac(c) for i, c in enumerate(row) if parse_frac(c)} for row in data["antipode"]]
        return cls(mult, unit, comult, counit, antipode, labels=data.get("labels"), name=data.get("name", ""))


# --- standard examples --------------------------------------------------------

def group_algebra(n: FiniteGroup, name: str = "") -> HopfPresentation:
    """Q[N]: Delta(eta) = eta (x) eta, epsilon(eta) = 1, S(eta) = eta^-1."""
    d = n.order
    mult = [[{n.mul(a, b): ONE} for b in range(d)] for a in range(d)]
    comult = [{(k, k): ONE} for k in range(d)]
    labels = n.labels if n.labels else None
    return HopfPresentation(mult, {0: ONE}, comult, [ONE] * d, [{n.inv(k): ONE} for k in range(d)], labels=labels, name=name or f"Q[{n.name}]")


def dual_group_algebra(n: FiniteGroup, name: str = "") -> HopfPresentation:
    """(Q[N])* on the dual basis p_g: orthogonal idempotents with
    Delta(p_k) = sum_{ab = k} p_a (x) p_b and epsilon(p_k) = [k = 1]."""
    d = n.order
    mult = [[({a: ONE} if a == b else {}) for b in range(d)] for a in range(d)]
    comult: List[Tensor] = [{} for _ in range(d)]
    for a in range(d):
        for b in range(d):
            comult[n.mul(a, b)][(a, b)] = ONE
    counit = [ONE if k == 0 else ZERO for k in range(d)]
    antipode = [{n.inv(k): ONE} for k in range(d)]
    return HopfPresentation(mult, {k: ONE for k in range(d)}, comult, counit, antipode, labels=[f"p{k}" for k in range(d)], name=name or f"(Q[{n.name}])*")


def dual_cyclic(n: int) -> HopfPresentation:
    """(Q[C_n])*: p_i p_j = [i = j] p_i, Delta(p_k) = sum_{i+j = k mod n} p_i (x) p_j."""
    if n < 1:
        raise HopfError("n must be positive")
    return dual_group_algebra(cyclic(n), name=f"(Q[C{n}])*")


# --- group rings over etale algebras ----------------------------------------------

class GroupRing:
    """``L[N]`` for an etale algebra (or field) ``L``; elements are tuples of
    L-coordinate tuples indexed by the elements of N."""

    def __init__(self, base, group: FiniteGroup):
        if isinstance(base, FieldDesc):
            base = EtaleAlgebra(base, cyclic(1), [0], [0]) if base.group is None else EtaleAlgebra.from_field(base)
        self.base: EtaleAlgebra = base
        self.group = group
        self.dim_over_base = group.order
        self.dim = group.order * base.dim

    def element(self, coeffs: Dict[int, Vec]) -> "AlgElem":
        zero = self.base.zero()
        return AlgElem(self, tuple(tuple(coeffs.get(g, zero)) for g in range(self.group.order)))

    def zero(self) -> "AlgElem":
        return self.element({})

    def one(self) -> "AlgElem":
        return self.element({0: self.base.one()})

    def eta(self, g: int, coeff: Optional[Vec] = None) -> "AlgElem":
        return self.element({g: coeff if coeff is not None else self.base.one()})

    def from_flat(self, v: Sequence[Fraction]) -> "AlgElem":
        m = self.base.dim
        return AlgElem(self, tuple(tuple(v[g * m:(g + 1) * m]) for g in range(self.group.order)))

    def from_sparse(self, v: SparseVec) -> "AlgElem":
        flat = [ZERO] * self.dim
        for i, c in v.items():
            flat[i] = c
        return self.from_flat(flat)


@dataclass(frozen=True)
class AlgElem:
    ring: GroupRing
    coeffs: Tuple[Vec, ...]

    def __add__(self, other: "AlgElem") -> "AlgElem":
        L = self.ring.base
        return AlgElem(self.ring, tuple(L.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        L = self.ring.base
        return AlgElem(self.ring, tuple(L.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.ring, tuple(tuple(-c for c in a) for a in self.coeffs))

    def scale(self, q) -> "AlgElem":
        L = self.ring.base
        return AlgElem(self.ring, tuple(L.scale(q, a) for a in self.coeffs))

    def lmul(self, x: Vec) -> "AlgElem":
        """Left multiplication by a coefficient x in L."""
        L = self.ring.base
        return AlgElem(self.ring, tuple(L.mul(x, a) for a in self.coeffs))

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        L = self.ring.base
        N = self.ring.group
        out = [L.zero()] * N.order
        for g, a in enumerate(self.coeffs):
            if not any(a):
                continue
            for h, b in enumerate(other.coeffs):
                if any(b):
                    k = N.mul(g, h)
                    out[k] = L.add(out[k], L.mul(a, b))
        return AlgElem(self.ring, tuple(out))

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgElem) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(any(a) for a in self.coeffs)

    def flat(self) -> Tuple[Fraction, ...]:
        return tuple(c for a in self.coeffs for c in a)

    def sparse(self) -> SparseVec:
        return {i: c for i, c in enumerate(self.flat()) if c}

    def support(self) -> List[int]:
        return [g for g, a in enumerate(self.coeffs) if any(a)]

    def to_json(self) -> dict:
        from .serialize import frac_str

        return {str(g): [frac_str(c) for c in a] for g, a in enumerate(self.coeffs) if any(a)}


# --- character isomorphism for cyclic groups --------------------------------------

@dataclass
class CharacterTable:
    n: int

    def value(self, j: int, i: int) -> CycElem:
        """chi_j(sigma^i) = zeta_n^{ij}."""
        return zeta(self.n, (i * j) % self.n)

    def orthogonal(self) -> bool:
        n = self.n
        for j in range(n):
            for k in range(n):
                s = CycElem(n, [0])
                for i in range(n):
                    s = s + self.value(j, i) * self.value(k, (-i) % n)
                if s != CycElem(n, [n if j == k else 0]):
                    return False
        return True


@dataclass
class CharacterIso:
    n: int
    images: List[List[CycElem]]  # images[j][i]: coefficient of sigma^i in the image of p_j
    flags: Dict[str, bool]

    def to_json(self) -> dict:
        return {"n": self.n, "images": [[c.to_json() for c in row] for row in self.images], "flags": self.flags}


def _cyc_group_mul(n: int, x: List[CycElem], y: List[CycElem]) -> List[CycElem]:
    out = [CycElem(n, [0]) for _ in range(n)]
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if b:
                out[(i + j) % n] = out[(i + j) % n] + a * b
    return out


def character_iso(n: int) -> CharacterIso:
    """p_j -> (1/n) sum_i chi_j(sigma^-i) sigma^i from (Q[C_n])* (x) Q(zeta_n)
    to Q(zeta_n)[C_n], checked to preserve products, unit, coproducts and counit."""
    if n < 1:
        raise HopfError("n must be positive")
    table = CharacterTable(n)
    inv_n = Fraction(1, n)
    images = [[table.value(j, (-i) % n) * CycElem(n, [inv_n]) for i in range(n)] for j in range(n)]
    zero = CycElem(n, [0])
    one = CycElem(n, [1])
    mult_ok = True
    for a in range(n):
        for b in range(n):
            prod = _cyc_group_mul(n, images[a], images[b])
            want = images[a] if a == b else [zero] * n
            if prod != want:
                mult_ok = False
    total = [sum((images[j][i] for j in range(n)), zero) for i in range(n)]
    unit_ok = total == [one] + [zero] * (n - 1)
    # Delta(sigma^i) = sigma^i (x) sigma^i, so Delta(image p_k) is diagonal
    comult_ok = True
    for k in range(n):
        lhs = {(i, i): images[k][i] for i in range(n) if images[k][i]}
        rhs: Dict[Pair, CycElem] = {}
        for a in range(n):
            b = (k - a) % n
            for i in range(n):
                for l in range(n):
                    c = images[a][i] * images[b][l]
                    if c:
                        rhs[(i, l)] = rhs.get((i, l), zero) + c
        rhs = {key: v for key, v in rhs.items() if v}
        if lhs != rhs:
            comult_ok = False
    counit_ok = all(sum((images[k][i] for i in range(n)), zero) == (one if k == 0 else zero) for k in range(n))
    flags = {"multiplicative": mult_ok, "unital": unit_ok, "comultiplicative": comult_ok, "counital": counit_ok, "orthogonality": table.orthogonal()}
    return CharacterIso(n, images, flags)


# --- group-likes ---------------------------------------------------------------------

def characters_of(alg: Algebra, seed: int = 0) -> List[SparseVec]:
    """Algebra maps alg -> Q, each as its list of values on the basis."""
    out = []
    for e, f in split_commutative(alg, seed):
        if f.degree != 1:
            continue
        vals: SparseVec = {}
        pivot = min(e)
        for k in range(alg.dim):
            y = alg.mul({k: ONE}, e)
            v = y.get(pivot, ZERO) / e[pivot]
            if v:
                vals[k] = v
        out.append(vals)
    return out


def grouplikes(h: HopfPresentation, bound: int = GROUPLIKE_BOUND, seed: int = 0) -> List[SparseVec]:
    """All x with Delta(x) = x (x) x and epsilon(x) = 1.

    Such x are exactly the algebra maps H* -> Q, i.e. the one-dimensional
    rational blocks of the commutative algebra H*.
    """
    if h.dim > bound:
        raise HopfError(f"dimension {h.dim} exceeds the group-like solver bound {bound}")
    dual = h.dual_algebra()
    if not dual.is_commutative():
        raise HopfError("group-like solver needs a cocommutative Hopf algebra")
    found = characters_of(dual, seed)
    for x in found:
        if h.delta(x) != _outer(x, x) or h.eps(x) != ONE:
            raise HopfError("internal error: character does not give a group-like")
    found.sort(key=lambda v: sorted(v.items()))
    return found


def _outer(x: SparseVec, y: SparseVec) -> Tensor:
    return {(a, b): c * d for a, c in x.items() for b, d in y.items() if c * d}


def grouplike_group(h: HopfPresentation, gl: Optional[List[SparseVec]] = None) -> FiniteGroup:
    """The group formed by the group-likes under multiplication."""
    gl = grouplikes(h) if gl is None else gl
    ident = next(i for i, x in enumerate(gl) if x == h.unit)
    order = [ident] + [i for i in range(len(gl)) if i != ident]
    keys = {tuple(sorted(gl[i].items())): pos for pos, i in enumerate(order)}
    table = []
    for i in order:
        row = []
        for j in order:
            prod = tuple(sorted(h.mul(gl[i], gl[j]).items()))
            if prod not in keys:
                raise HopfError("group-likes are not closed under multiplication")
            row.append(keys[prod])
        table.append(row)
    return FiniteGroup(table, name="G(H)")


# --- Galois-fixed idempotents ------------------------------------------------------------

def kohl_idempotents(p: int, m: int) -> List[List[CycElem]]:
    """e_j = p^-m sum_i zeta^{-ij} sigma^i in Q(zeta_{p^m})[C_{p^m}], j = 0 .. p^m - 1.

    Each e_j is a list of coefficients of sigma^0 .. sigma^{p^m - 1}.
    """
    if p < 3 or not _is_prime(p):
        raise HopfError("p must be an odd prime")
    if m < 1:
        raise HopfError("m must be at least 1")
    n = p**m
    scale = CycElem(n, [Fraction(1, n)])
    return [[zeta(n, (-i * j) % n) * scale for i in range(n)] for j in range(n)]


def kohl_checks(p: int, m: int) -> Dict[str, bool]:
    n = p**m
    es = kohl_idempotents(p, m)
    zero = CycElem(n, [0])
    orth = all(_cyc_group_mul(n, es[a], es[b]) == (es[a] if a == b else [zero] * n) for a in range(n) for b in range(n))
    total = [sum((e[i] for e in es), zero) for i in range(n)]
    complete = total == [CycElem(n, [1])] + [zero] * (n - 1)
    fixed = True
    for k in units_mod(n):
        for e in es:
            # k acts by zeta -> zeta^k on coefficients and sigma -> sigma^k on the group
            moved = [zero] * n
            for i, c in enumerate(e):
                moved[(k * i) % n] = galois_conjugate(c, k)
            if moved != e:
                fixed = False
    return {"orthogonal": orth, "complete": complete, "fixed": fixed, "count": len(es) == n}
