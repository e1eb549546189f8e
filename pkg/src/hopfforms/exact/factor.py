"""Factorization of rational polynomials of small degree.

Squarefree decomposition (Yun), then for each squarefree part a modular
factorization over a prime larger than twice the Mignotte coefficient bound,
followed by exhaustive recombination of the modular factors.  With a prime
that large no Hensel lifting is needed; the search is exponential only in the
number of modular factors, which stays tiny at the degrees used here.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import List, Tuple

from .poly import Poly

__all__ = ["factor_squarefree_over_Q", "squarefree_decomposition", "is_irreducible", "MAX_FACTOR_DEGREE"]

MAX_FACTOR_DEGREE = 16

IntPoly = List[int]


def squarefree_decomposition(f: Poly) -> List[Tuple[Poly, int]]:
    """Yun's algorithm; returns monic squarefree parts with multiplicities."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    if f.degree < 1:
        return []
    df = f.derivative()
    a = f.gcd(df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out, i = [], 1
    while b.degree > 0:
        a = b.gcd(d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --- polynomials over Z/p, lowest degree first ---------------------------

def _trim(a: IntPoly) -> IntPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub(a: IntPoly, b: IntPoly, p: int) -> IntPoly:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _mul(a: IntPoly, b: IntPoly, p: int) -> IntPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _divmod(a: IntPoly, b: IntPoly, p: int) -> Tuple[IntPoly, IntPoly]:
    a = list(a)
    if len(a) < len(b):
        return [], a
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = (a[k + j] - c * y) % p
    return _trim(q), _trim(a[: len(b) - 1])


def _monic(a: IntPoly, p: int) -> IntPoly:
    inv = pow(a[-1], p - 2, p)
    return [x * inv % p for x in a]


def _gcd(a: IntPoly, b: IntPoly, p: int) -> IntPoly:
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p) if a else a


def _powmod(base: IntPoly, e: int, mod: IntPoly, p: int) -> IntPoly:
    out = [1]
    base = _divmod(base, mod, p)[1]
    while e:
        if e & 1:
            out = _divmod(_mul(out, base, p), mod, p)[1]
        base = _divmod(_mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def _distinct_degree(f: IntPoly, p: int) -> List[Tuple[IntPoly, int]]:
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, p)[0]
            h = _divmod(h, f, p)[1]
    if len(f) > 1:
        out.append((_monic(f, p), len(f) - 1))
    return out


def _equal_degree(f: IntPoly, d: int, p: int, rng: random.Random) -> List[IntPoly]:
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = _sub(_powmod(a, (p**d - 1) // 2, f, p), [1], p)
        g = _gcd(f, b, p)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, p, rng) + _equal_degree(_divmod(f, g, p)[0], d, p, rng)


def _factor_mod_p(f: IntPoly, p: int, rng: random.Random) -> List[IntPoly]:
    out = []
    for g, d in _distinct_degree(_monic(f, p), p):
        out.extend(_equal_degree(g, d, p, rng))
    return out


# --- integer side --------------------------------------------------------

def _int_divides(h: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient g / h over Z, or [] if h does not divide g."""
    q, r = divmod(Poly(g), Poly(h))
    if r or any(c.denominator != 1 for c in q.coeffs):
        return []
    return [int(c) for c in q.coeffs]


def _primitive(a: IntPoly) -> IntPoly:
    g = 0
    for v in a:
        g = math.gcd(g, v)
    a = [v // g for v in a]
    return [-v for v in a] if a[-1] < 0 else a


def _factor_squarefree_int(g: IntPoly, seed: int) -> List[IntPoly]:
    n = len(g) - 1
    if n <= 1:
        return [g]
    lc = g[-1]
    norm2 = math.isqrt(sum(v * v for v in g)) + 1
    bound = 2 * abs(lc) * (2**n) * norm2 + 1
    p = max(bound, 3)
    gp = Poly(g)
    dgp = gp.derivative()
    while True:
        p += 1
        if not _is_prime(p) or lc % p == 0:
            continue
        gm = _trim([v % p for v in g])
        dgm = _trim([v % p for v in (int(c) for c in dgp.coeffs)])
        if len(_gcd(gm, dgm, p)) == 1:
            break
    rng = random.Random(seed)
    mods = _factor_mod_p(gm, p, rng)
    mods.sort()
    found: List[IntPoly] = []
    rest = list(g)
    s = 1
    while 2 * s <= len(mods):
        hit = False
        for combo in itertools.combinations(range(len(mods)), s):
            prod = [rest[-1] % p]
            for idx in combo:
                prod = _mul(prod, mods[idx], p)
            cand = _primitive([v - p if v > p // 2 else v for v in prod])
            q = _int_divides(cand, rest)
            if q:
                found.append(cand)
                rest = q
                mods = [m for i, m in enumerate(mods) if i not in combo]
                hit = True
                break
        if not hit:
            s += 1
    found.append(_primitive(rest))
    return found


def factor_squarefree_over_Q(f: Poly, seed: int = 0, max_degree: int = MAX_FACTOR_DEGREE) -> List[Tuple[Poly, int]]:
    """Complete factorization of ``f`` into monic irreducibles over Q.

    Returns ``[(factor, multiplicity), ...]`` sorted by (degree, coefficients);
    ``f == f.lc * prod(factor**mult)``.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.degree > max_degree:
        raise ValueError(f"degree {f.degree} exceeds the factoring bound {max_degree}")
    out = []
    for part, mult in squarefree_decomposition(f):
        _, ints = part.content_primitive()
        for h in _factor_squarefree_int(ints, seed):
            out.append((Poly(h).monic(), mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def is_irreducible(f: Poly) -> bool:
    fac = factor_squarefree_over_Q(f)
    return len(fac) == 1 and fac[0][1] == 1
