"""Fields with group actions and F-Galois extensions of Q.

A ``FieldDesc`` is a number field given by structure constants on an explicit
basis together with automorphism matrices keyed by elements of some acting
group.  An ``EtaleAlgebra`` is a product ``M x ... x M`` of copies of one such
field with the F-action induced from a U-action on M along a left transversal
(``g(m f_i) = (g_j^-1 g g_i)(m) f_j`` where ``g g_i U = g_j U``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Algebra, describe_field, is_field, quadratic_class
from .exact.cyclotomic import CycElem, euler_phi, galois_conjugate, units_mod, zeta
from .exact.linalg import ONE, ZERO, EchelonBasis, SparseVec, nullspace, rank, sparse, dense
from .groups.finite import FiniteGroup, GroupError, cyclic, klein_four, symmetric, units_group

Vec = Tuple[Fraction, ...]
Matrix = Tuple[Vec, ...]  # tuple of columns: images of the basis vectors


class GaloisError(ValueError):
    pass


class FieldDesc:
    """Number field of degree ``degree`` with basis ``labels``.

    ``mult[i][j]`` is the dense coordinate tuple of ``b_i * b_j``; ``auts``
    maps an acting-group element index to the matrix (tuple of columns) of the
    corresponding field automorphism.
    """

    def __init__(self, name: str, mult, one: Sequence, auts: Optional[Dict[int, Sequence[Sequence]]] = None,
                 group: Optional[FiniteGroup] = None, labels: Optional[Sequence[str]] = None, kind: str = ""):
        self.name = name
        self.kind = kind or name
        self.degree = len(mult)
        self.mult = tuple(tuple(tuple(Fraction(c) for c in v) for v in row) for row in mult)
        self._sparse_mult = [[[(k, c) for k, c in enumerate(v) if c] for v in row] for row in self.mult]
        self.one = tuple(Fraction(c) for c in one)
        self.auts: Dict[int, Matrix] = {k: tuple(tuple(Fraction(c) for c in col) for col in m) for k, m in (auts or {}).items()}
        self.group = group
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.degree)]

    def __repr__(self) -> str:
        return f"FieldDesc({self.name}, degree={self.degree})"

    # -- arithmetic on coordinate tuples -----------------------------------
    def zero(self) -> Vec:
        return (ZERO,) * self.degree

    def scalar(self, q) -> Vec:
        return tuple(Fraction(q) * c for c in self.one)

    def basis(self, i: int) -> Vec:
        return tuple(ONE if j == i else ZERO for j in range(self.degree))

    def add(self, x: Vec, y: Vec) -> Vec:
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x: Vec, y: Vec) -> Vec:
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x: Vec) -> Vec:
        return tuple(-a for a in x)

    def scale(self, q, x: Vec) -> Vec:
        q = Fraction(q)
        return tuple(q * a for a in x)

    def mul(self, x: Vec, y: Vec) -> Vec:
        if self.degree == 1:
            return (x[0] * y[0],)
        out = [ZERO] * self.degree
        sm = self._sparse_mult
        for i, a in enumerate(x):
            if a:
                row = sm[i]
                for j, b in enumerate(y):
                    if b:
                        ab = a * b
                        for k, c in row[j]:
                            out[k] += ab * c
        return tuple(out)

    def inv(self, x: Vec) -> Vec:
        if self.degree == 1:
            return (ONE / x[0],)
        d = self.degree
        # columns of left multiplication by x
        cols = [self.mul(x, self.basis(j)) for j in range(d)]
        rows = [{j: cols[j][i] for j in range(d) if cols[j][i]} for i in range(d)]
        for i in range(d):
            if self.one[i]:
                rows[i][d] = -self.one[i]
        for v in nullspace(rows, d + 1):
            if v.get(d):
                t = v[d]
                return tuple(v.get(i, ZERO) / t for i in range(d))
        raise ZeroDivisionError("zero has no inverse")

    def is_zero(self, x: Vec) -> bool:
        return not any(x)

    def rational_value(self, x: Vec) -> Optional[Fraction]:
        """q if x = q*1, else None."""
        i = next(i for i, c in enumerate(self.one) if c)
        q = x[i] / self.one[i]
        return q if self.scalar(q) == tuple(x) else None

    def apply(self, key: int, x: Vec) -> Vec:
        m = self.auts[key]
        out = [ZERO] * self.degree
        for j, a in enumerate(x):
            if a:
                for i, c in enumerate(m[j]):
                    if c:
                        out[i] += a * c
        return tuple(out)

    # -- structure ----------------------------------------------------------
    def algebra(self) -> Algebra:
        mult = [[sparse(v) for v in row] for row in self.mult]
        return Algebra(mult, sparse(self.one), labels=self.labels, name=self.name)

    def is_field(self) -> bool:
        return is_field(self.algebra())

    def describe(self) -> str:
        return describe_field(self.algebra())

    def quadratic_class(self) -> Optional[int]:
        return quadratic_class(self.algebra())

    def fixed_dimension(self, keys: Sequence[int]) -> int:
        rows = []
        for k in keys:
            m = self.auts[k]
            for i in range(self.degree):
                row = {j: m[j][i] - (ONE if i == j else ZERO) for j in range(self.degree)}
                rows.append({j: c for j, c in row.items() if c})
        return len(nullspace(rows, self.degree))

    def check_automorphisms(self) -> bool:
        for k, m in self.auts.items():
            if self.apply(k, self.one) != self.one:
                return False
            for i in range(self.degree):
                for j in range(self.degree):
                    lhs = self.apply(k, self.mult[i][j])
                    rhs = self.mul(m[i], m[j])
                    if lhs != rhs:
                        return False
            if rank(sparse(col) for col in m) != self.degree:
                return False
        return True

    def with_action(self, group: FiniteGroup, keymap: Dict[int, int]) -> "FieldDesc":
        """Re-key the automorphisms: new key ``g`` acts as old key ``keymap[g]``."""
        auts = {g: self.auts[old] for g, old in keymap.items()}
        return FieldDesc(self.name, self.mult, self.one, auts, group, self.labels, self.kind)

    def to_json(self) -> dict:
        from .serialize import frac_str

        return {
            "name": self.name,
            "kind": self.kind,
            "degree": self.degree,
            "labels": self.labels,
            "mult": [[[frac_str(c) for c in v] for v in row] for row in self.mult],
            "auts": {str(k): [[frac_str(c) for c in col] for col in m] for k, m in sorted(self.auts.items())},
        }


# --- field presets ----------------------------------------------------------

def rationals(key: int = 0) -> FieldDesc:
    return FieldDesc("Q", [[[1]]], [1], {key: [[1]]}, labels=["1"], kind="rationals")


def cyclotomic_field(n: int) -> FieldDesc:
    """Q(zeta_n) in the power basis, acted on by Z_n^* (keys index units_mod(n))."""
    d = euler_phi(n)
    powers = [zeta(n, i) for i in range(d)]
    mult = [[(powers[i] * powers[j]).coords for j in range(d)] for i in range(d)]
    grp = units_group(n)
    auts = {}
    for idx, k in enumerate(units_mod(n) if n > 2 else [1]):
        auts[idx] = [galois_conjugate(powers[j], k).coords if n > 2 else powers[j].coords for j in range(d)]
    return FieldDesc(f"Q(z{n})", mult, powers[0].coords, auts, grp, labels=[f"z^{i}" for i in range(d)], kind=f"cyclotomic({n})")


def quadratic_field(d: int) -> FieldDesc:
    """Q(sqrt d) with basis 1, beta (beta^2 = d); C2 acts by beta -> -beta."""
    mult = [[[1, 0], [0, 1]], [[0, 1], [d, 0]]]
    auts = {0: [[1, 0], [0, 1]], 1: [[1, 0], [0, -1]]}
    return FieldDesc(f"Q(sqrt({d}))", mult, [1, 0], auts, cyclic(2), labels=["1", "beta"], kind=f"quadratic({d})")


def _product_basis_field(name, labels, mult_fn, gens_images, group, kind):
    d = len(labels)
    mult = [[mult_fn(i, j) for j in range(d)] for i in range(d)]
    fd = FieldDesc(name, mult, [1] + [0] * (d - 1), {}, group, labels, kind)
    fd.auts = {g: tuple(tuple(Fraction(c) for c in col) for col in cols) for g, cols in gens_images.items()}
    return fd


def biquadratic_field() -> FieldDesc:
    """Q(sqrt2, sqrt3) with basis 1, sqrt2, sqrt3, sqrt6 and the C2xC2 action
    sigma: sqrt3 -> -sqrt3, tau: sqrt2 -> -sqrt2 (group labels 1, sigma, tau, tau*sigma)."""
    # basis index bits: bit0 = sqrt2, bit1 = sqrt3
    sq = {0: 1, 1: 2, 2: 3, 3: 6}

    def mult(i, j):
        k = i ^ j
        common = i & j
        c = 1
        if common & 1:
            c *= 2
        if common & 2:
            c *= 3
        v = [0] * 4
        v[k] = c
        return v

    signs = {0: (1, 1), 1: (1, -1), 2: (-1, 1), 3: (-1, -1)}  # (sqrt2, sqrt3) signs
    auts = {}
    for g, (s2, s3) in signs.items():
        cols = []
        for i in range(4):
            s = (s2 if i & 1 else 1) * (s3 if i & 2 else 1)
            cols.append([s if j == i else 0 for j in range(4)])
        auts[g] = cols
    return _product_basis_field("Q(sqrt2,sqrt3)", ["1", "sqrt2", "sqrt3", "sqrt6"], mult, auts, klein_four(), "radical-tower(sqrt2,sqrt3)")


def pure_cubic_field() -> FieldDesc:
    """Q(zeta3, 2^(1/3)) with basis z^a c^b (index a + 2b), S3 acting on the
    roots c, z c, z^2 c of x^3 - 2 (root k is z^k c)."""
    from .exact.poly import Poly

    z = [zeta(3, a) for a in range(3)]

    def elem(a, b):
        return (a % 3, b)

    # element = dict (b -> CycElem) representing sum_b coeff_b c^b
    def to_vec(e):
        v = [Fraction(0)] * 6
        for b, ce in e.items():
            v[0 + 2 * b] += ce.coords[0]
            v[1 + 2 * b] += ce.coords[1]
        return v

    def mul_elems(x, y):
        out = {0: CycElem(3, [0]), 1: CycElem(3, [0]), 2: CycElem(3, [0])}
        for b1, c1 in x.items():
            for b2, c2 in y.items():
                b = b1 + b2
                c = c1 * c2
                if b >= 3:
                    b -= 3
                    c = c * 2
                out[b] = out[b] + c
        return out

    def basis_elem(i):
        a, b = i % 2, i // 2
        return {b: z[a]}

    def mult(i, j):
        return to_vec(mul_elems(basis_elem(i), basis_elem(j)))

    s3 = symmetric(3)
    perms = sorted(__import__("itertools").permutations(range(3)))
    auts = {}
    for g, p in enumerate(perms):
        img_c = {1: z[p[0]]}  # c -> z^{p(0)} c
        k = (p[1] - p[0]) % 3  # z -> z^k
        img_z = {0: zeta(3, k)}
        cols = []
        for i in range(6):
            a, b = i % 2, i // 2
            e = {0: CycElem(3, [1])}
            for _ in range(a):
                e = mul_elems(e, img_z)
            for _ in range(b):
                e = mul_elems(e, img_c)
            cols.append(to_vec(e))
        auts[g] = cols
    return _product_basis_field("Q(z3,cbrt2)", ["1", "z", "c", "zc", "c^2", "zc^2"], mult, auts, s3, "radical-tower(z3,cbrt2)")


# --- etale algebras ------------------------------------------------------------

class EtaleAlgebra:
    """``L = M f_1 + ... + M f_n`` with the F-action induced from U acting on M.

    Elements are flat coordinate tuples of length ``n * deg M``; component i
    occupies slots ``i*deg .. (i+1)*deg - 1``.
    """

    def __init__(self, field_: FieldDesc, group: FiniteGroup, subgroup: Sequence[int], transversal: Sequence[int], name: str = ""):
        self.field = field_
        self.group = group
        self.subgroup = sorted(subgroup)
        self.transversal = list(transversal)
        self.n = len(self.transversal)
        self.deg = field_.degree
        self.dim = self.n * self.deg
        self.name = name or (field_.name if self.n == 1 else f"{field_.name}^{self.n}")
        uset = set(self.subgroup)
        coset = {}
        for i, gi in enumerate(self.transversal):
            for u in self.subgroup:
                coset[group.mul(gi, u)] = i
        if len(coset) != group.order:
            raise GaloisError("transversal does not cover the group")
        self.rho: List[List[int]] = []
        self.comp_aut: List[List[int]] = []
        for g in range(group.order):
            r, c = [], []
            for i, gi in enumerate(self.transversal):
                j = coset[group.mul(g, gi)]
                u = group.mul(group.inv(self.transversal[j]), group.mul(g, gi))
                assert u in uset
                r.append(j)
                c.append(u)
            self.rho.append(r)
            self.comp_aut.append(c)
        self._act_cache: Dict[int, List[SparseVec]] = {}

    def __repr__(self) -> str:
        return f"EtaleAlgebra({self.name}, n={self.n}, group={self.group.name}, dim={self.dim})"

    @classmethod
    def from_field(cls, field_: FieldDesc, group: Optional[FiniteGroup] = None) -> "EtaleAlgebra":
        """A field viewed as a one-component algebra; its automorphism keys
        must be exactly the group's elements."""
        group = group or field_.group
        if group is None:
            raise GaloisError("field has no acting group")
        return cls(field_, group, list(range(group.order)), [0])

    # -- elements ----------------------------------------------------------------
    def zero(self) -> Vec:
        return (ZERO,) * self.dim

    def one(self) -> Vec:
        return self.field.one * self.n

    def scalar(self, q) -> Vec:
        return self.field.scalar(q) * self.n

    def idempotent(self, i: int) -> Vec:
        """f_{i+1} (0-based component index)."""
        return self.embed(self.field.one, i)

    def embed(self, m: Vec, i: int) -> Vec:
        out = [ZERO] * self.dim
        out[i * self.deg:(i + 1) * self.deg] = m
        return tuple(out)

    def diag(self, m: Vec) -> Vec:
        """m * 1 = sum_i m f_i."""
        return tuple(m) * self.n

    def component(self, x: Vec, i: int) -> Vec:
        return tuple(x[i * self.deg:(i + 1) * self.deg])

    def add(self, x: Vec, y: Vec) -> Vec:
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x: Vec, y: Vec) -> Vec:
        return tuple(a - b for a, b in zip(x, y))

    def scale(self, q, x: Vec) -> Vec:
        q = Fraction(q)
        return tuple(q * a for a in x)

    def mul(self, x: Vec, y: Vec) -> Vec:
        if self.deg == 1:
            return tuple(a * b for a, b in zip(x, y))
        out: List[Fraction] = []
        for i in range(self.n):
            out.extend(self.field.mul(self.component(x, i), self.component(y, i)))
        return tuple(out)

    def act(self, g: int, x: Vec) -> Vec:
        out = [ZERO] * self.dim
        for i in range(self.n):
            xi = self.component(x, i)
            if not any(xi):
                continue
            j = self.rho[g][i]
            out[j * self.deg:(j + 1) * self.deg] = self.field.apply(self.comp_aut[g][i], xi)
        return tuple(out)

    def action_columns(self, g: int) -> List[SparseVec]:
        """Sparse images of the basis vectors under g."""
        if g not in self._act_cache:
            cols = []
            for b in range(self.dim):
                i, a = divmod(b, self.deg)
                j = self.rho[g][i]
                img = self.field.auts[self.comp_aut[g][i]][a]
                cols.append({j * self.deg + k: c for k, c in enumerate(img) if c})
            self._act_cache[g] = cols
        return self._act_cache[g]

    def algebra(self) -> Algebra:
        mult = []
        for a in range(self.dim):
            row = []
            ia, ka = divmod(a, self.deg)
            for b in range(self.dim):
                ib, kb = divmod(b, self.deg)
                if ia != ib:
                    row.append({})
                else:
                    row.append({ia * self.deg + k: c for k, c in enumerate(self.field.mult[ka][kb]) if c})
            mult.append(row)
        return Algebra(mult, sparse(self.one()), name=self.name)

    def check_action(self) -> bool:
        """(gh)x = g(hx) and g(xy) = g(x)g(y) on basis vectors."""
        basis = [tuple(ONE if k == b else ZERO for k in range(self.dim)) for b in range(self.dim)]
        G = self.group
        for g in range(G.order):
            for h in range(G.order):
                for x in basis:
                    if self.act(G.mul(g, h), x) != self.act(g, self.act(h, x)):
                        return False
            for x in basis:
                for y in basis:
                    if self.act(g, self.mul(x, y)) != self.mul(self.act(g, x), self.act(g, y)):
                        return False
            if self.act(g, self.one()) != self.one():
                return False
        return True

    def check_idempotents(self) -> bool:
        fs = [self.idempotent(i) for i in range(self.n)]
        total = self.zero()
        for i, fi in enumerate(fs):
            total = self.add(total, fi)
            for j, fj in enumerate(fs):
                if self.mul(fi, fj) != (fi if i == j else self.zero()):
                    return False
        return total == self.one()

    def to_json(self) -> dict:
        return {
            "components": self.n,
            "field": self.field.to_json(),
            "group": self.group.to_json(),
            "subgroup": self.subgroup,
            "transversal": self.transversal,
            "action": [{"rho": self.rho[g], "component_automorphism": self.comp_aut[g]} for g in range(self.group.order)],
        }


def trivial_extension(group: FiniteGroup) -> EtaleAlgebra:
    """Map(F, Q) with g.e_h = e_{gh}; component i is e_{g_i} with g_i = i."""
    return EtaleAlgebra(rationals(0), group, [0], list(range(group.order)), name=f"Map({group.name},Q)")


def _left_transversal(group: FiniteGroup, subgroup: Sequence[int]) -> List[int]:
    seen, reps = set(), []
    for g in range(group.order):
        if g in seen:
            continue
        reps.append(g)
        seen.update(group.mul(g, u) for u in subgroup)
    return reps


def build_F_galois(group: FiniteGroup, subgroup: Sequence[int], field_: FieldDesc,
                   transversal: Optional[Sequence[int]] = None) -> EtaleAlgebra:
    """``M^n`` with the F-action induced from a U-Galois field M, n = [F:U].

    ``field_.auts`` must be keyed by the elements of ``subgroup`` (F indices).
    """
    u = sorted(set(subgroup))
    if not group.is_subgroup(u):
        raise GaloisError("U is not a subgroup of F")
    if set(field_.auts) != set(u):
        raise GaloisError("field automorphisms are not keyed by the elements of U")
    for a in u:
        for b in u:
            ab = group.mul(a, b)
            for j in range(field_.degree):
                if field_.apply(ab, field_.basis(j)) != field_.apply(a, field_.apply(b, field_.basis(j))):
                    raise GaloisError("U-action on M is not a homomorphism")
    if not field_.check_automorphisms():
        raise GaloisError("U does not act by field automorphisms")
    if not field_.is_field():
        raise GaloisError("M is not a field")
    if len(u) != field_.degree or field_.fixed_dimension(u) != 1:
        raise GaloisError("M is not U-Galois (fixed field is not Q or action not faithful)")
    if transversal is None:
        transversal = _left_transversal(group, u)
    else:
        transversal = list(transversal)
        if len(transversal) * len(u) != group.order:
            raise GaloisError("transversal has the wrong size")
    return EtaleAlgebra(field_, group, u, transversal)


@dataclass
class GaloisCheck:
    ok: bool
    rank: int
    expected: int
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"galois": self.ok, "rank": self.rank, "expected": self.expected, "diagnostic": self.diagnostic}


def verify_galois(L: EtaleAlgebra) -> GaloisCheck:
    """Bijectivity of ``L (x) L -> prod_{g in F} L, x (x) y -> (x g(y))_g``.

    The map is L-linear in x, so it splits into one block per component of
    x; each block is a square rational matrix when dim L = |F|.
    """
    F = L.group
    expected = L.dim * L.dim
    if L.dim != F.order:
        return GaloisCheck(False, -1, expected, f"dim L = {L.dim} differs from |F| = {F.order}")
    images = [[L.action_columns(g)[b] for b in range(L.dim)] for g in range(F.order)]
    total = 0
    for i in range(L.n):
        lo, hi = i * L.deg, (i + 1) * L.deg
        cols = []
        for a in range(L.deg):
            xa = L.field.basis(a)
            for b in range(L.dim):
                col: SparseVec = {}
                for g in range(F.order):
                    img = images[g][b]
                    part = tuple(img.get(k, ZERO) for k in range(lo, hi))
                    if not any(part):
                        continue
                    prod = L.field.mul(xa, part)
                    for k, c in enumerate(prod):
                        if c:
                            col[g * L.deg + k] = c
                cols.append(col)
        total += rank(cols)
    ok = total == expected
    return GaloisCheck(ok, total, expected, "" if ok else f"rank deficiency {expected - total}")


# --- fixed subalgebras -------------------------------------------------------------

@dataclass
class FixedSubalgebra:
    ambient: EtaleAlgebra
    subgroup: List[int]
    basis: List[Vec]
    algebra: Algebra = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_field(self) -> bool:
        return is_field(self.algebra)

    def describe(self) -> str:
        return describe_field(self.algebra)

    def coordinates(self, x: Vec) -> Vec:
        eb = EchelonBasis(track=True)
        for b in self.basis:
            eb.insert(sparse(b))
        c = eb.coordinates(sparse(x))
        return tuple(c.get(i, ZERO) for i in range(self.dim))

    def restricted_action(self, g: int) -> Matrix:
        """Matrix of g on the fixed subalgebra (g must normalize the subgroup)."""
        return tuple(self.coordinates(self.ambient.act(g, b)) for b in self.basis)

    def as_field(self, group: FiniteGroup, reps: Sequence[int], name: str = "") -> FieldDesc:
        """FieldDesc of the fixed field with ``group`` (a quotient of the
        ambient group) acting through the representatives ``reps``."""
        alg = self.algebra
        d = self.dim
        mult = [[dense(alg.mult[i][j], d) for j in range(d)] for i in range(d)]
        auts = {q: self.restricted_action(r) for q, r in enumerate(reps)}
        fd = FieldDesc(name or self.describe(), mult, dense(alg.unit, d), auts, group, kind="fixed-field")
        return fd


def fixed_subalgebra(L: EtaleAlgebra, subgroup: Sequence[int]) -> FixedSubalgebra:
    """Q-basis of the elements fixed by every element of ``subgroup``."""
    G = L.group
    elems = G.closure(subgroup)
    sub_group_gens = _subgroup_generators(G, elems)
    rows: List[SparseVec] = []
    for g in sub_group_gens:
        cols = L.action_columns(g)
        acc: Dict[int, SparseVec] = {}
        for b, col in enumerate(cols):
            for k, c in col.items():
                acc.setdefault(k, {})[b] = c
        for k in range(L.dim):
            row = dict(acc.get(k, {}))
            row[k] = row.get(k, ZERO) - ONE
            if not row[k]:
                del row[k]
            if row:
                rows.append(row)
    ns = nullspace(rows, L.dim)
    basis = [tuple(v.get(i, ZERO) for i in range(L.dim)) for v in ns]
    # put the unit first when it is in the span
    alg, sub_basis = L.algebra().subalgebra([sparse(L.one())] + [sparse(b) for b in basis])
    basis = [tuple(v.get(i, ZERO) for i in range(L.dim)) for v in sub_basis]
    return FixedSubalgebra(L, sorted(elems), basis, alg)


def _subgroup_generators(G: FiniteGroup, elems: Sequence[int]) -> List[int]:
    gens: List[int] = []
    span = {0}
    for a in sorted(elems, key=lambda a: (-G.element_order(a), a)):
        if a not in span:
            gens.append(a)
            span = set(G.closure(gens))
    return gens


def subgroup_generators(G: FiniteGroup, elems: Sequence[int]) -> List[int]:
    return _subgroup_generators(G, elems)
