"""Finite-dimensional associative Q-algebras given by structure constants.

Elements are sparse coordinate vectors (``dict[int, Fraction]``).  This is the
common currency between the etale algebras, the Hopf presentations and the
Wedderburn certifier.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact.linalg import ONE, ZERO, EchelonBasis, SparseVec, axpy, nullspace, rank
from .exact.poly import Poly


class Algebra:
    """Unital associative algebra over Q with basis ``b_0 .. b_{d-1}``.

    ``mult[i][j]`` is the sparse vector of ``b_i * b_j``.
    """

    def __init__(self, mult: Sequence[Sequence[SparseVec]], unit: SparseVec, labels: Optional[Sequence[str]] = None, name: str = ""):
        self.dim = len(mult)
        self.mult = [[dict(v) for v in row] for row in mult]
        self.unit = dict(unit)
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]
        self.name = name

    # -- arithmetic ---------------------------------------------------------
    def mul(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in x.items():
            row = self.mult[i]
            for j, b in y.items():
                axpy(out, a * b, row[j])
        return out

    def add(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out = dict(x)
        axpy(out, ONE, y)
        return out

    def sub(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out = dict(x)
        axpy(out, -ONE, y)
        return out

    def scale(self, c, x: SparseVec) -> SparseVec:
        c = Fraction(c)
        return {i: c * v for i, v in x.items()} if c else {}

    def power(self, x: SparseVec, k: int) -> SparseVec:
        out = dict(self.unit)
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def basis_vector(self, i: int) -> SparseVec:
        return {i: ONE}

    def left_matrix_rows(self, x: SparseVec) -> List[SparseVec]:
        """Rows of the matrix of ``y -> x*y``."""
        cols = [self.mul(x, {j: ONE}) for j in range(self.dim)]
        rows: List[SparseVec] = [dict() for _ in range(self.dim)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def trace(self, x: SparseVec) -> Fraction:
        """Trace of left multiplication by x."""
        t = ZERO
        for i, a in x.items():
            row = self.mult[i]
            for j in range(self.dim):
                t += a * row[j].get(j, ZERO)
        return t

    # -- structure checks ---------------------------------------------------
    def is_associative(self) -> bool:
        d = self.dim
        for i in range(d):
            for j in range(d):
                ij = self.mult[i][j]
                for k in range(d):
                    if self.mul(ij, {k: ONE}) != self.mul({i: ONE}, self.mult[j][k]):
                        return False
        return True

    def is_unital(self) -> bool:
        return all(self.mul(self.unit, {i: ONE}) == {i: ONE} == self.mul({i: ONE}, self.unit) for i in range(self.dim))

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))

    def trace_form_rank(self) -> int:
        rows = []
        for i in range(self.dim):
            rows.append({j: t for j in range(self.dim) if (t := self.trace(self.mult[i][j]))})
        return rank(rows)

    def is_semisimple(self) -> bool:
        # char 0: the radical is the kernel of the trace form
        return self.trace_form_rank() == self.dim

    # -- derived algebras ---------------------------------------------------
    def center_basis(self) -> List[SparseVec]:
        rows = []
        for j in range(self.dim):
            # sum_i z_i (b_i b_j - b_j b_i) = 0, one row per output coordinate
            acc: Dict[int, SparseVec] = {}
            for i in range(self.dim):
                diff = dict(self.mult[i][j])
                axpy(diff, -ONE, self.mult[j][i])
                for k, v in diff.items():
                    acc.setdefault(k, {})[i] = v
            rows.extend(acc.values())
        return nullspace(rows, self.dim)

    def subalgebra(self, vectors: Iterable[SparseVec], name: str = "") -> Tuple["Algebra", List[SparseVec]]:
        """Structure constants of the subalgebra spanned by ``vectors``.

        Returns the new algebra and its basis expressed in this algebra.  The
        span must be closed under multiplication and contain a unit for
        itself (which need not be this algebra's unit).
        """
        span = EchelonBasis(track=True)
        basis: List[SparseVec] = []
        for v in vectors:
            if span.insert(v) is not None:
                basis.append(dict(v))
        # rebuild tracking over the independent vectors only
        span = EchelonBasis(track=True)
        for v in basis:
            span.insert(v)
        mult = [[span.coordinates(self.mul(a, b)) for b in basis] for a in basis]
        sub = Algebra(mult, {}, name=name)
        sub.unit = _find_unit(sub)
        return sub, basis

    def minimal_polynomial(self, x: SparseVec) -> Poly:
        span = EchelonBasis(track=True)
        p = dict(self.unit)
        powers = []
        while True:
            if powers and span.contains(p):
                c = span.coordinates(p)
                return Poly([-c.get(i, ZERO) for i in range(len(powers))] + [1])
            span.insert(p)
            powers.append(p)
            p = self.mul(p, x)

    def evaluate(self, poly: Poly, x: SparseVec) -> SparseVec:
        acc: SparseVec = {}
        for c in reversed(poly.coeffs):
            acc = self.mul(acc, x)
            axpy(acc, c, self.unit)
        return acc

    def inverse(self, x: SparseVec) -> SparseVec:
        rows = self.left_matrix_rows(x)
        # solve x*y = 1 via nullspace of [L_x | -1]
        aug = [dict(r) for r in rows]
        for i in range(self.dim):
            v = self.unit.get(i, ZERO)
            if v:
                aug[i][self.dim] = -v
        ns = nullspace(aug, self.dim + 1)
        for v in ns:
            if v.get(self.dim):
                t = v[self.dim]
                return {i: c / t for i, c in v.items() if i != self.dim}
        raise ZeroDivisionError("element is not invertible")

    def to_json(self) -> dict:
        from .serialize import frac_str

        return {
            "dim": self.dim,
            "mult": [[i, j, k, frac_str(c)] for i in range(self.dim) for j in range(self.dim) for k, c in sorted(self.mult[i][j].items())],
            "unit": {str(k): frac_str(v) for k, v in sorted(self.unit.items())},
        }


def _find_unit(alg: Algebra) -> SparseVec:
    """Solve e*b_j = b_j = b_j*e for all j."""
    d = alg.dim
    rows: List[SparseVec] = []
    for j in range(d):
        for side in (0, 1):
            acc: Dict[int, SparseVec] = {}
            for i in range(d):
                prod = alg.mult[i][j] if side == 0 else alg.mult[j][i]
                for k, v in prod.items():
                    acc.setdefault(k, {})[i] = v
            for k in range(d):
                row = acc.get(k, {})
                if k == j:
                    row = dict(row)
                    row[d] = -ONE
                rows.append(row)
    ns = nullspace(rows, d + 1)
    for v in ns:
        if v.get(d):
            t = v[d]
            return {i: c / t for i, c in v.items() if i != d}
    raise ValueError("subalgebra has no unit")


def algebra_from_table(table: Sequence[Sequence[int]], identity: int = 0, labels=None, name: str = "") -> Algebra:
    """Group algebra Q[N] from a Cayley table."""
    n = len(table)
    mult = [[{table[i][j]: ONE} for j in range(n)] for i in range(n)]
    return Algebra(mult, {identity: ONE}, labels=labels, name=name)


# --- commutative splitting -------------------------------------------------

SPLIT_FACTOR_DEGREE = 48


class NotSemisimple(ValueError):
    pass


def primitive_element(alg: Algebra, seed: int = 0, tries: int = 200) -> Tuple[SparseVec, Poly]:
    """A seeded random small-integer combination generating ``alg`` as an algebra.

    Only meaningful for commutative semisimple algebras, where such an
    element exists; raises if none is found.
    """
    import random

    rng = random.Random(seed)
    for attempt in range(tries):
        r = 2 + attempt // 4
        z = {i: Fraction(c) for i in range(alg.dim) if (c := rng.randint(-r, r))}
        mu = alg.minimal_polynomial(z)
        if mu.degree == alg.dim:
            return z, mu
    raise NotSemisimple("no primitive element found (algebra not commutative semisimple?)")


def _relative_minpoly(alg: Algebra, x: SparseVec, e: SparseVec) -> Poly:
    """Minimal polynomial of x inside the ideal e*alg, whose unit is e."""
    span = EchelonBasis(track=True)
    p = dict(e)
    n = 0
    while True:
        if n and span.contains(p):
            c = span.coordinates(p)
            return Poly([-c.get(i, ZERO) for i in range(n)] + [1])
        span.insert(p)
        n += 1
        p = alg.mul(p, x)


def _relative_eval(alg: Algebra, poly: Poly, x: SparseVec, e: SparseVec) -> SparseVec:
    acc: SparseVec = {}
    for c in reversed(poly.coeffs):
        acc = alg.mul(acc, x)
        axpy(acc, c, e)
    return acc


def split_commutative(alg: Algebra, seed: int = 0) -> List[Tuple[SparseVec, Poly]]:
    """Primitive idempotents of a commutative semisimple algebra.

    Returns ``[(e_i, f_i)]`` where ``e_i * alg`` is the field Q[x]/(f_i).
    Blocks are refined one element at a time (basis vectors first, then
    seeded random combinations), which keeps the polynomials to factor small.
    Ordered by (deg f_i, coefficients of f_i, idempotent coordinates).
    """
    import random

    from .exact.factor import factor_squarefree_over_Q

    if alg.dim == 0:
        return []
    if not alg.is_commutative():
        raise ValueError("algebra is not commutative")
    rng = random.Random(seed)

    def candidates():
        for i in range(alg.dim):
            yield {i: ONE}
        for attempt in range(200):
            r = 2 + attempt // 4
            yield {i: Fraction(c) for i in range(alg.dim) if (c := rng.randint(-r, r))}

    done: List[Tuple[SparseVec, Poly]] = []
    pending = [dict(alg.unit)]
    for z in candidates():
        if not pending:
            break
        nxt = []
        for e in pending:
            dim_e = rank(alg.mul(e, {i: ONE}) for i in range(alg.dim))
            w = alg.mul(z, e)
            mu = _relative_minpoly(alg, w, e)
            facs = factor_squarefree_over_Q(mu, seed=seed, max_degree=SPLIT_FACTOR_DEGREE)
            if any(m > 1 for _, m in facs):
                raise NotSemisimple("minimal polynomial is not squarefree")
            if len(facs) == 1:
                if mu.degree == dim_e:
                    done.append((e, facs[0][0]))
                else:
                    nxt.append(e)
                continue
            for f, _ in facs:
                cof = mu.exact_div(f)
                _g, s, _t = cof.xgcd(f)
                sub = _relative_eval(alg, (s * cof) % mu, w, e)
                sub_dim = rank(alg.mul(sub, {i: ONE}) for i in range(alg.dim))
                if f.degree == sub_dim:
                    done.append((sub, f))
                else:
                    nxt.append(sub)
        pending = nxt
    if pending:
        raise NotSemisimple("could not split the algebra into fields")
    done.sort(key=lambda t: (t[1].degree, t[1].coeffs, sorted(t[0].items())))
    return done


def is_field(alg: Algebra, seed: int = 0) -> bool:
    """Certified by a primitive element with irreducible minimal polynomial."""
    try:
        blocks = split_commutative(alg, seed)
    except (ValueError, NotSemisimple):
        return False
    return len(blocks) == 1


def squarefree_part(q: Fraction) -> int:
    """Squarefree integer in the square class of a nonzero rational."""
    q = Fraction(q)
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return sign * out * n


def quadratic_class(alg: Algebra) -> Optional[int]:
    """For a 2-dimensional field, the squarefree d with alg = Q(sqrt d)."""
    if alg.dim != 2:
        return None
    for i in range(2):
        x = {i: ONE}
        mu = alg.minimal_polynomial(x)
        if mu.degree == 2:
            b, c = mu[1], mu[0]
            disc = b * b - 4 * c
            return squarefree_part(disc) if disc else None
    return None


def describe_field(alg: Algebra, seed: int = 0) -> str:
    if alg.dim == 1:
        return "Q"
    if alg.dim == 2:
        d = quadratic_class(alg)
        return {-3: "Q(z3)", -1: "Q(z4)"}.get(d, f"Q(sqrt({d}))")
    z, mu = primitive_element(alg, seed)
    return "Q[x]/(" + repr(mu)[5:-1] + ")"
