"""Cyclotomic polynomials and arithmetic in Q(zeta_n)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Sequence, Tuple

from .linalg import EchelonBasis, solve_square, sparse
from .poly import Poly, X

__all__ = [
    "euler_phi",
    "divisors",
    "cyclotomic_polynomial",
    "CycElem",
    "zeta",
    "galois_conjugate",
    "cyc_arith",
    "factor_cyclotomic_over",
    "units_mod",
]


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def units_mod(n: int) -> List[int]:
    """Residues coprime to n, in increasing order (1 first)."""
    if n == 1:
        return [0]
    return [k for k in range(1, n) if gcd(k, n) == 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    """Phi_n, by dividing x^n - 1 by Phi_d for the proper divisors d."""
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    p = Poly.monomial(n) - 1
    for d in divisors(n)[:-1]:
        p = p.exact_div(cyclotomic_polynomial(d))
    return p


class CycElem:
    """Element of Q(zeta_n) in the power basis modulo Phi_n."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords: Sequence = ()):
        deg = euler_phi(conductor)
        c = [Fraction(x) for x in coords]
        if len(c) > deg:
            c = list((Poly(c) % cyclotomic_polynomial(conductor)).coeffs)
        c = c + [Fraction(0)] * (deg - len(c))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coords", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("CycElem is immutable")

    @classmethod
    def from_poly(cls, n: int, p: Poly) -> "CycElem":
        return cls(n, (p % cyclotomic_polynomial(n)).coeffs)

    @classmethod
    def rational(cls, n: int, q) -> "CycElem":
        return cls(n, [q])

    def to_poly(self) -> Poly:
        return Poly(self.coords)

    def _check(self, other: "CycElem") -> None:
        if self.conductor != other.conductor:
            raise ValueError(f"conductor mismatch: {self.conductor} vs {other.conductor}")

    def _lift(self, other) -> "CycElem":
        if isinstance(other, CycElem):
            self._check(other)
            return other
        return CycElem.rational(self.conductor, other)

    def __add__(self, other) -> "CycElem":
        other = self._lift(other)
        return CycElem(self.conductor, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self) -> "CycElem":
        return CycElem(self.conductor, [-a for a in self.coords])

    def __sub__(self, other) -> "CycElem":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "CycElem":
        return self._lift(other) - self

    def __mul__(self, other) -> "CycElem":
        if isinstance(other, (int, Fraction)):
            return CycElem(self.conductor, [a * other for a in self.coords])
        other = self._lift(other)
        return CycElem.from_poly(self.conductor, self.to_poly() * other.to_poly())

    __rmul__ = __mul__

    def inverse(self) -> "CycElem":
        if not any(self.coords):
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        g, s, _ = self.to_poly().xgcd(cyclotomic_polynomial(self.conductor))
        if g.degree != 0:
            raise ArithmeticError("element not invertible")
        return CycElem.from_poly(self.conductor, s)

    def __truediv__(self, other) -> "CycElem":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * self._lift(other).inverse()

    def __pow__(self, k: int) -> "CycElem":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = CycElem.rational(self.conductor, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycElem.rational(self.conductor, other)
        return isinstance(other, CycElem) and self.conductor == other.conductor and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.conductor, self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __repr__(self) -> str:
        return f"CycElem({self.conductor}, {[str(c) for c in self.coords]})"

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coords": [f"{c.numerator}/{c.denominator}" for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "CycElem":
        return cls(int(data["conductor"]), [Fraction(s) for s in data["coords"]])


def zeta(n: int, power: int = 1) -> CycElem:
    """zeta_n ** power, reduced."""
    return CycElem.from_poly(n, Poly.monomial(power % n if n > 1 else 0))


def cyc_arith(a: CycElem, b: CycElem, op: str) -> CycElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


def galois_conjugate(a: CycElem, k: int) -> CycElem:
    """Apply zeta -> zeta**k."""
    n = a.conductor
    if gcd(k, n) != 1:
        raise ValueError(f"{k} is not coprime to {n}")
    out = Poly()
    for i, c in enumerate(a.coords):
        if c:
            out = out + Poly.monomial((i * k) % n, c)
    return CycElem.from_poly(n, out)


def _descend_to_subfield(a: CycElem, m: int) -> CycElem:
    """Rewrite an element of Q(zeta_n) lying in Q(zeta_m) in the zeta_m power basis."""
    n = a.conductor
    step = n // m
    dm = euler_phi(m)
    dn = euler_phi(n)
    cols = [zeta(n, step * j).coords for j in range(dm)]
    # square subsystem: dm independent rows of the dn x dm system
    chosen = []
    eb = EchelonBasis()
    for r in range(dn):
        vec = sparse([cols[j][r] for j in range(dm)])
        if vec and eb.insert(vec) is not None:
            chosen.append(r)
        if len(chosen) == dm:
            break
    mat = [[cols[j][r] for j in range(dm)] for r in chosen]
    sol = solve_square(mat, [[a.coords[r] for r in chosen]])[0]
    out = CycElem(m, sol)
    back = CycElem(n, [0])
    for j, c in enumerate(sol):
        back = back + zeta(n, step * j) * c
    if back != a:
        raise ArithmeticError("element does not lie in the subfield")
    return out


def factor_cyclotomic_over(n: int, m: int) -> List[List[CycElem]]:
    """Irreducible factors of Phi_n over Q(zeta_m), zeta_m = zeta_n**(n/m).

    Each factor is the orbit product of (x - zeta_n**k) over a coset of the
    kernel of Z_n^* -> Z_m^*; coefficients are CycElem of conductor m, lowest
    degree first.  Factors are ordered by their smallest exponent k.
    """
    if m < 1 or n % m:
        raise ValueError(f"{m} does not divide {n}")
    units = units_mod(n)
    kernel = [k for k in units if (k - 1) % m == 0] if n > 1 else [0]
    seen, cosets = set(), []
    for k in units:
        if k in seen:
            continue
        coset = sorted((k * h) % n for h in kernel) if n > 1 else [0]
        seen.update(coset)
        cosets.append(coset)
    factors = []
    for coset in cosets:
        poly = [CycElem.rational(n, 1)]
        for k in coset:
            root = zeta(n, k)
            nxt = [CycElem.rational(n, 0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * root
            poly = nxt
        factors.append([_descend_to_subfield(c, m) for c in poly])
    return factors


def cyc_poly_mul(f: List[CycElem], g: List[CycElem]) -> List[CycElem]:
    m = f[0].conductor
    out = [CycElem.rational(m, 0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def cyc_poly_divides(f: List[CycElem], g: List[CycElem]) -> bool:
    """Whether f divides g in Q(zeta_m)[x] (f monic)."""
    rem = list(g)
    df = len(f) - 1
    for k in range(len(rem) - 1 - df, -1, -1):
        c = rem[k + df] / f[-1]
        for j, b in enumerate(f):
            rem[k + j] = rem[k + j] - c * b
    return not any(bool(c) for c in rem[:df])
