"""Finite groups given by Cayley tables."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..exact.cyclotomic import units_mod

AUT_SEARCH_BOUND = 24


class GroupError(ValueError):
    pass


class FiniteGroup:
    """Group on ``{0..n-1}`` with identity 0 and ``table[a][b] = a*b``.

    The table is checked to be a Latin square with identity 0 and to be
    associative when the group is built.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "", labels: Optional[Sequence[str]] = None, check: bool = True):
        self.table: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.name = name
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(self.order))
        if check:
            self._verify()
        self._inv = [0] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0:
                    self._inv[a] = b
                    break

    def _verify(self) -> None:
        n = self.order
        if n == 0:
            raise GroupError("empty table")
        full = set(range(n))
        for row in self.table:
            if len(row) != n or set(row) != full:
                raise GroupError("table is not a Latin square")
        for col in zip(*self.table):
            if set(col) != full:
                raise GroupError("table is not a Latin square")
        if list(self.table[0]) != list(range(n)) or [r[0] for r in self.table] != list(range(n)):
            raise GroupError("element 0 is not the identity")
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError("table is not associative")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    identity = 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k):
            out = self.table[out][a]
        return out

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self._inv[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def order_profile(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(Counter(self.element_order(a) for a in range(self.order)).items()))

    def closure(self, gens: Iterable[int]) -> List[int]:
        gens = list(gens)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def generators(self) -> List[int]:
        """Small generating set, greedily preferring elements of large order."""
        by_order = sorted(range(1, self.order), key=lambda a: (-self.element_order(a), a))
        gens: List[int] = []
        span = {0}
        for a in by_order:
            if a not in span:
                gens.append(a)
                span = set(self.closure(gens))
                if len(span) == self.order:
                    break
        return gens

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in range(self.order))

    def center(self) -> List[int]:
        return [z for z in range(self.order) if all(self.table[z][a] == self.table[a][z] for a in range(self.order))]

    def conjugacy_classes(self) -> List[List[int]]:
        seen, classes = set(), []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.conj(g, x) for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def commutator_subgroup(self) -> List[int]:
        comms = {self.table[self.table[a][b]][self.inv(self.table[b][a])] for a in range(self.order) for b in range(self.order)}
        return self.closure(comms)

    def abelianization_order(self) -> int:
        return self.order // len(self.commutator_subgroup())

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return 0 in s and all(self.table[a][self.inv(b)] in s for a in s for b in s)

    def is_normal(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return self.is_subgroup(s) and all(self.conj(g, x) in s for g in range(self.order) for x in s)

    def invariants(self) -> tuple:
        return (self.order, self.order_profile(), len(self.center()), self.abelianization_order(), len(self.conjugacy_classes()))

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table], "preset": self.name}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        return cls(data["table"], name=data.get("preset", ""))


@dataclass
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: Tuple[int, ...]

    def __post_init__(self):
        self.images = tuple(self.images)
        if len(self.images) != self.source.order:
            raise GroupError("image list has wrong length")
        s, t = self.source, self.target
        for a in range(s.order):
            for b in range(s.order):
                if self.images[s.mul(a, b)] != t.mul(self.images[a], self.images[b]):
                    raise GroupError("map is not a homomorphism")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def kernel(self) -> List[int]:
        return [a for a in range(self.source.order) if self.images[a] == 0]


# --- isomorphisms and automorphisms ---------------------------------------

def _extend(src: FiniteGroup, dst: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> Optional[List[int]]:
    """Extend generator images to a homomorphism if consistent."""
    m: Dict[int, int] = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, imgs):
                y = src.mul(x, s)
                v = dst.mul(m[x], t)
                if y in m:
                    if m[y] != v:
                        return None
                else:
                    m[y] = v
                    nxt.append(y)
        frontier = nxt
    if len(m) != src.order:
        return None
    out = [m[a] for a in range(src.order)]
    for a in range(src.order):
        oa = out[a]
        row = src.table[a]
        drow = dst.table[oa]
        for b in range(src.order):
            if out[row[b]] != drow[out[b]]:
                return None
    return out


def _hom_search(src: FiniteGroup, dst: FiniteGroup, bijective: bool, first_only: bool) -> List[List[int]]:
    gens = src.generators()
    orders = [src.element_order(g) for g in gens]
    cands = [[b for b in range(dst.order) if dst.element_order(b) == o] if bijective else [b for b in range(dst.order) if o % dst.element_order(b) == 0] for o in orders]
    found = []
    for imgs in itertools.product(*cands):
        if bijective and len(set(dst.closure(imgs))) != dst.order:
            continue
        m = _extend(src, dst, gens, imgs)
        if m is None:
            continue
        if bijective and len(set(m)) != dst.order:
            continue
        found.append(m)
        if first_only:
            break
    return found


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> Optional[List[int]]:
    """Explicit isomorphism g -> h (image list), or None."""
    if g.order != h.order or g.invariants() != h.invariants():
        return None
    found = _hom_search(g, h, bijective=True, first_only=True)
    return found[0] if found else None


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None


@dataclass
class AutomorphismGroup:
    """``Aut(N)`` as a group; element ``a`` acts on N through ``maps[a]``."""

    base: FiniteGroup
    maps: List[Tuple[int, ...]]
    group: FiniteGroup = field(repr=False)

    def index(self, perm: Sequence[int]) -> int:
        return self.maps.index(tuple(perm))

    def apply(self, a: int, x: int) -> int:
        return self.maps[a][x]


def automorphism_group(n: FiniteGroup, bound: int = AUT_SEARCH_BOUND) -> AutomorphismGroup:
    """All automorphisms of ``n`` by generator-image search.

    Automorphisms are listed in lexicographic order of their image tuples, so
    the identity comes first; the group law is composition ``(a*b)(x) = a(b(x))``.
    """
    if n.order > bound:
        raise GroupError(f"order {n.order} exceeds the automorphism search bound {bound}")
    maps = sorted(tuple(m) for m in _hom_search(n, n, bijective=True, first_only=False))
    pos = {m: i for i, m in enumerate(maps)}
    table = [[pos[tuple(a[x] for x in b)] for b in maps] for a in maps]
    grp = FiniteGroup(table, name=f"Aut({n.name})")
    return AutomorphismGroup(base=n, maps=maps, group=grp)


# --- constructions ---------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}", labels=[f"s^{i}" for i in range(n)], check=False)


def elementary_abelian(p: int, m: int) -> FiniteGroup:
    """C_p^m with element index sum v_i p^i."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)) or m < 1:
        raise GroupError("Cp^m needs p prime and m >= 1")
    n = p**m

    def vec(a):
        return [(a // p**i) % p for i in range(m)]

    def idx(v):
        return sum(x * p**i for i, x in enumerate(v))

    table = [[idx([(x + y) % p for x, y in zip(vec(a), vec(b))]) for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"C{p}^{m}", labels=[",".join(map(str, vec(a))) for a in range(n)])


def klein_four() -> FiniteGroup:
    """C2 x C2 labeled 0:1, 1:sigma, 2:tau, 3:tau*sigma."""
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return FiniteGroup(table, name="C2xC2", labels=["1", "sigma", "tau", "tau*sigma"])


def dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n; element a + n*b is r^a s^b."""
    if n < 2:
        raise GroupError("dihedral group needs n >= 2")

    def mul(x, y):
        a, b = x % n, x // n
        c, d = y % n, y // n
        return ((a + (c if b == 0 else -c)) % n) + n * ((b + d) % 2)

    labels = [f"r^{x % n}" + ("s" if x >= n else "") for x in range(2 * n)]
    return FiniteGroup([[mul(x, y) for y in range(2 * n)] for x in range(2 * n)], name=f"D{n}", labels=labels)


Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def quaternion() -> FiniteGroup:
    """Q8 with elements ordered 1, -1, i, -i, j, -j, k, -k."""
    # unit products among 1,i,j,k as (sign, unit)
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(x, y):
        ux, sx = x // 2, -1 if x % 2 else 1
        uy, sy = y // 2, -1 if y % 2 else 1
        s, u = unit[(ux, uy)]
        s *= sx * sy
        return 2 * u + (1 if s < 0 else 0)

    return FiniteGroup([[mul(x, y) for y in range(8)] for x in range(8)], name="Q8", labels=Q8_LABELS)


def symmetric(k: int) -> FiniteGroup:
    """S_k on {0..k-1}; elements in lexicographic order, product = composition."""
    perms = sorted(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return FiniteGroup(table, name=f"S{k}", labels=["".join(map(str, p)) for p in perms])


def symmetric_perms(k: int) -> List[Tuple[int, ...]]:
    return sorted(itertools.permutations(range(k)))


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    n, m = g.order, h.order
    table = [[g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(n * m)] for a in range(n * m)]
    return FiniteGroup(table, name=name or f"{g.name}x{h.name}", labels=[f"({g.labels[a // m]},{h.labels[a % m]})" for a in range(n * m)])


def units_group(n: int) -> FiniteGroup:
    """Z_n^* under multiplication; index i is the i-th unit in increasing order."""
    us = units_mod(n)
    if n <= 2:
        return FiniteGroup([[0]], name=f"Z{n}*", labels=[str(us[0])])
    pos = {u: i for i, u in enumerate(us)}
    table = [[pos[(a * b) % n] for b in us] for a in us]
    return FiniteGroup(table, name=f"Z{n}*", labels=[str(u) for u in us])


def holomorph(c: FiniteGroup) -> FiniteGroup:
    """C_n x| Aut(C_n), elements (a, k) with product (a,k)(b,l) = (a + k b, k l)."""
    gen = next((a for a in range(c.order) if c.element_order(a) == c.order), None)
    if gen is None:
        raise GroupError("holomorph needs a cyclic group")
    n = c.order
    us = units_mod(n) if n > 2 else [1]
    pos = {u: i for i, u in enumerate(us)}
    m = len(us)

    def mul(x, y):
        a, k = x // m, us[x % m]
        b, l = y // m, us[y % m]
        return ((a + k * b) % n) * m + pos[(k * l) % n]

    return FiniteGroup([[mul(x, y) for y in range(n * m)] for x in range(n * m)], name=f"Hol(C{n})", labels=[f"({x // m},{us[x % m]})" for x in range(n * m)])


def quotient(g: FiniteGroup, normal: Iterable[int], name: str = "") -> Tuple[FiniteGroup, List[int], List[int]]:
    """``g / normal``; returns the quotient, the projection, and coset representatives."""
    w = sorted(set(normal))
    if not g.is_normal(w):
        raise GroupError("subgroup is not normal")
    coset_of: Dict[int, int] = {}
    reps: List[int] = []
    for x in range(g.order):
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for y in w:
            coset_of[g.mul(x, y)] = idx
    proj = [coset_of[x] for x in range(g.order)]
    table = [[proj[g.mul(a, b)] for b in reps] for a in reps]
    return FiniteGroup(table, name=name or f"{g.name}/W"), proj, reps


PRESETS = ("Cn", "Cp^m", "D3", "D4", "Q8", "S3", "S4", "C2xC2", "C2xC4", "C2^3", "Dn")


def make_group(preset: str, *params: int) -> FiniteGroup:
    """Instantiate a catalog group.

    ``make_group("Cn", 3)``, ``make_group("Cp^m", 3, 2)``, ``make_group("Q8")``,
    or a compact string such as ``"C3"``, ``"C3^2"``, ``"D4"``, ``"C2xC2"``.
    """
    key = preset.strip()
    if key == "Cn":
        (n,) = params
        return cyclic(n)
    if key == "Cp^m":
        p, m = params
        return elementary_abelian(p, m)
    if key == "Dn":
        (n,) = params
        return dihedral(n)
    if params:
        raise GroupError(f"preset {preset!r} takes no parameters")
    return parse_group(key)


def parse_group(spec: str) -> FiniteGroup:
    s = spec.strip()
    if s == "C2xC2":
        return klein_four()
    if s == "C2xC4":
        return direct_product(cyclic(2), cyclic(4), name="C2xC4")
    if s == "Q8":
        return quaternion()
    if s in ("S3", "S4", "S2", "S1"):
        return symmetric(int(s[1]))
    if s.startswith("D") and s[1:].isdigit():
        return dihedral(int(s[1:]))
    if s.startswith("C") and "^" in s:
        p, m = s[1:].split("^")
        return elementary_abelian(int(p), int(m))
    if s.startswith("C") and s[1:].isdigit():
        return cyclic(int(s[1:]))
    if s.startswith("Hol(C") and s.endswith(")"):
        return holomorph(cyclic(int(s[5:-1])))
    raise GroupError(f"unknown group preset {spec!r}")


def catalog(max_order: int) -> List[FiniteGroup]:
    """Catalog presets of order at most ``max_order`` (one per isomorphism class)."""
    names = [f"C{n}" for n in range(1, max_order + 1)]
    names += ["C2xC2", "S3", "C2xC4", "C2^3", "D4", "Q8", "C3^2", "S4"]
    out, seen = [], []
    for nm in names:
        g = parse_group(nm)
        if g.order > max_order:
            continue
        if any(h.order == g.order and is_isomorphic(g, h) for h in seen):
            continue
        seen.append(g)
        out.append(g)
    return out
