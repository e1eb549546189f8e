"""Permutation machinery inside Perm(G): regular subgroups normalized by
lambda(G), their opposites, and the kernel W of the conjugation action."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .finite import AutomorphismGroup, FiniteGroup, GroupError, automorphism_group, find_isomorphism, quotient

Perm = Tuple[int, ...]

REGULAR_SEARCH_BOUND = 8


def compose(p: Perm, q: Perm) -> Perm:
    """``p o q``: apply q first."""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def conjugate(g: Perm, p: Perm) -> Perm:
    """``g p g^-1``."""
    return compose(compose(g, p), invert(g))


def cycles(p: Perm, one_based: bool = True) -> List[Tuple[int, ...]]:
    """Non-trivial cycles, each starting at its smallest point."""
    seen, out = set(), []
    for s in range(len(p)):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        x = p[s]
        while x != s:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        if len(cyc) > 1:
            out.append(tuple(c + 1 for c in cyc) if one_based else tuple(cyc))
    return out


def cycle_string(p: Perm) -> str:
    cs = cycles(p)
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cs) or "(1)"


def from_cycles(n: int, cycs: Iterable[Sequence[int]], one_based: bool = True) -> Perm:
    img = list(range(n))
    for c in cycs:
        c = [x - 1 for x in c] if one_based else list(c)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return tuple(img)


def perm_order(p: Perm) -> int:
    k, q = 1, p
    ident = identity_perm(len(p))
    while q != ident:
        q = compose(q, p)
        k += 1
    return k


def is_fixed_point_free(p: Perm) -> bool:
    return all(p[i] != i for i in range(len(p)))


def is_semiregular_perm(p: Perm) -> bool:
    """All cycles have equal length (so every non-trivial power is fixed point free)."""
    lengths = {len(c) for c in cycles(p, one_based=False)}
    if not lengths:
        return True
    return len(lengths) == 1 and sum(len(c) for c in cycles(p, one_based=False)) == len(p)


def closure(gens: Iterable[Perm], n: int, limit: Optional[int] = None) -> Optional[FrozenSet[Perm]]:
    """Group generated by ``gens``; None as soon as it exceeds ``limit``."""
    gens = list(gens)
    ident = identity_perm(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = compose(x, s)
                if y not in seen:
                    seen.add(y)
                    if limit is not None and len(seen) > limit:
                        return None
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class PermSubgroup:
    """Subgroup of Perm({0..degree-1}); elements sorted for canonical order."""

    degree: int
    elements: Tuple[Perm, ...]

    @classmethod
    def of(cls, degree: int, elems: Iterable[Perm]) -> "PermSubgroup":
        return cls(degree, tuple(sorted(set(tuple(e) for e in elems))))

    @classmethod
    def generated(cls, degree: int, gens: Iterable[Perm]) -> "PermSubgroup":
        return cls.of(degree, closure(gens, degree))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_set(self) -> FrozenSet[Perm]:
        return frozenset(self.elements)

    def is_closed(self) -> bool:
        s = self.as_set()
        return identity_perm(self.degree) in s and all(compose(a, invert(b)) in s for a in s for b in s)

    def is_regular(self) -> bool:
        if len(self.elements) != self.degree:
            return False
        ident = identity_perm(self.degree)
        return all(is_fixed_point_free(e) for e in self.elements if e != ident)

    def regular_order(self) -> List[Perm]:
        """Elements listed so that index g holds the element sending 0 to g."""
        if not self.is_regular():
            raise GroupError("subgroup is not regular")
        out = [None] * self.degree
        for e in self.elements:
            out[e[0]] = e
        return out

    def as_group(self, name: str = "") -> Tuple[FiniteGroup, List[Perm]]:
        """Abstract group on this subgroup.

        For regular subgroups the element sending 0 to g gets index g;
        otherwise identity first then sorted order.
        """
        if self.is_regular():
            elems = self.regular_order()
        else:
            ident = identity_perm(self.degree)
            elems = [ident] + [e for e in self.elements if e != ident]
        pos = {e: i for i, e in enumerate(elems)}
        table = [[pos[compose(a, b)] for b in elems] for a in elems]
        return FiniteGroup(table, name=name, check=False), elems

    def normalized_by(self, other: Iterable[Perm]) -> bool:
        s = self.as_set()
        return all(conjugate(g, e) in s for g in other for e in self.elements)

    def to_json(self) -> dict:
        return {"degree": self.degree, "elements": [list(e) for e in self.elements], "cycles": [cycle_string(e) for e in self.elements]}


def left_regular_rep(g: FiniteGroup) -> PermSubgroup:
    """lambda(G): lambda(a)(h) = a h."""
    return PermSubgroup.of(g.order, (lam(g, a) for a in range(g.order)))


def lam(g: FiniteGroup, a: int) -> Perm:
    return tuple(g.table[a])


def rho(g: FiniteGroup, a: int) -> Perm:
    """Right regular action h -> h a^-1 (a left action, commuting with lambda)."""
    ai = g.inv(a)
    return tuple(g.table[h][ai] for h in range(g.order))


def right_regular_rep(g: FiniteGroup) -> PermSubgroup:
    return PermSubgroup.of(g.order, (rho(g, a) for a in range(g.order)))


# --- regular subgroup enumeration -----------------------------------------

def _semiregular_candidates(n: int, orders: Optional[Set[int]]) -> List[Perm]:
    out = []
    ident = identity_perm(n)
    for p in itertools.permutations(range(n)):
        if p == ident or not is_semiregular_perm(p):
            continue
        if orders is not None and perm_order(p) not in orders:
            continue
        out.append(p)
    return out


def _is_semiregular_group(s: Iterable[Perm], n: int) -> bool:
    ident = identity_perm(n)
    return all(e == ident or is_fixed_point_free(e) for e in s)


class _Search:
    def __init__(self, g: FiniteGroup, orders: Optional[Set[int]]):
        self.n = g.order
        self.lams = [lam(g, a) for a in range(g.order)]
        self.orders = orders
        self.seeds: Dict[Perm, FrozenSet[Perm]] = {}
        for p in _semiregular_candidates(self.n, orders):
            orbit = {conjugate(l, p) for l in self.lams}
            grp = closure(orbit, self.n, limit=self.n)
            if grp is None or self.n % len(grp) or not _is_semiregular_group(grp, self.n):
                continue
            if orders is not None and any(perm_order(e) not in orders for e in grp):
                continue
            self.seeds[p] = grp
        self.by_image: Dict[int, List[Perm]] = {}
        for p in sorted(self.seeds):
            self.by_image.setdefault(p[0], []).append(p)

    def _join(self, s: FrozenSet[Perm], p: Perm) -> Optional[FrozenSet[Perm]]:
        grp = closure(list(s) + list(self.seeds[p]), self.n, limit=self.n)
        if grp is None or self.n % len(grp) or not _is_semiregular_group(grp, self.n):
            return None
        if self.orders is not None and any(perm_order(e) not in self.orders for e in grp):
            return None
        return grp

    def run(self, start: FrozenSet[Perm], first: Optional[List[Perm]] = None) -> Set[FrozenSet[Perm]]:
        found: Set[FrozenSet[Perm]] = set()
        visited: Set[FrozenSet[Perm]] = set()

        def dfs(s: FrozenSet[Perm], choices: Optional[List[Perm]]):
            if s in visited:
                return
            visited.add(s)
            if len(s) == self.n:
                found.add(s)
                return
            covered = {e[0] for e in s}
            x = min(set(range(self.n)) - covered)
            for p in (choices if choices is not None else self.by_image.get(x, [])):
                t = self._join(s, p)
                if t is not None:
                    dfs(t, None)

        dfs(start, first)
        return found


def _worker(args):
    table, orders, first = args
    g = FiniteGroup(table, check=False)
    search = _Search(g, orders)
    ident = identity_perm(g.order)
    return search.run(frozenset([ident]), first)


def enumerate_regular_subgroups(
    g: FiniteGroup,
    type_filter: Optional[FiniteGroup] = None,
    bound: int = REGULAR_SEARCH_BOUND,
    workers: int = 1,
) -> List[PermSubgroup]:
    """Regular subgroups of Perm(G) normalized by lambda(G).

    Generator-first search: a candidate element is kept only if the group
    generated by its lambda(G)-conjugates is semiregular and of order dividing
    |G|; subgroups are grown one generator at a time, each new generator
    chosen to reach the smallest point not yet in the orbit of 0.  The result
    is sorted canonically and is identical for any worker count.
    """
    n = g.order
    if n > bound:
        raise GroupError(f"order {n} exceeds the regular-subgroup search bound {bound}")
    orders = None
    if type_filter is not None:
        if type_filter.order != n:
            return []
        orders = {type_filter.element_order(a) for a in range(n)}
    ident = identity_perm(n)
    if n == 1:
        found = {frozenset([ident])}
    else:
        search = _Search(g, orders)
        firsts = search.by_image.get(1, [])
        if workers > 1 and len(firsts) > 1:
            chunks = [firsts[i::workers] for i in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                parts = ex.map(_worker, [(g.table, orders, c) for c in chunks if c])
            found = set().union(*parts)
        else:
            found = search.run(frozenset([ident]), firsts)
    subs = [PermSubgroup.of(n, s) for s in found]
    if type_filter is not None:
        subs = [s for s in subs if find_isomorphism(s.as_group()[0], type_filter) is not None]
    subs.sort(key=lambda s: s.elements)
    return subs


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("HOPFFORMS_WORKERS", "1")))
    except ValueError:
        return 1


# --- opposite, W, and the quotient embedding ------------------------------

def centralizer_opp(n_sub: PermSubgroup) -> PermSubgroup:
    """Centralizer of a regular N in Perm(G).

    A centralizing c is fixed by c(0): c(eta(0)) = eta(c(0)) for every eta.
    """
    if not n_sub.is_regular():
        raise GroupError("N is not regular")
    elems = n_sub.regular_order()
    out = []
    for x in range(n_sub.degree):
        c = [0] * n_sub.degree
        for eta in elems:
            c[eta[0]] = eta[x]
        c = tuple(c)
        if all(compose(c, e) == compose(e, c) for e in elems):
            out.append(c)
    return PermSubgroup.of(n_sub.degree, out)


def compute_W(n_sub: PermSubgroup, g: FiniteGroup) -> List[int]:
    """Elements a of G with lambda(a) centralizing N (the kernel of conjugation)."""
    lams = [lam(g, a) for a in range(g.order)]
    if not n_sub.normalized_by(lams):
        raise GroupError("N is not normalized by lambda(G)")
    elems = n_sub.elements
    w = [a for a in range(g.order) if all(conjugate(lams[a], e) == e for e in elems)]
    if not g.is_normal(w):
        raise GroupError("W is not normal in lambda(G)")
    return w


def conjugation_action(g: FiniteGroup, n_sub: PermSubgroup) -> Tuple[FiniteGroup, List[Perm], List[Tuple[int, ...]]]:
    """N as an abstract group, its element list, and for each a in G the
    automorphism eta -> lambda(a) eta lambda(a)^-1 as an index permutation."""
    ng, elems = n_sub.as_group()
    pos = {e: i for i, e in enumerate(elems)}
    acts = []
    for a in range(g.order):
        l = lam(g, a)
        acts.append(tuple(pos[conjugate(l, e)] for e in elems))
    return ng, elems, acts


@dataclass
class QuotientEmbedding:
    quotient: FiniteGroup
    projection: List[int]
    reps: List[int]
    aut: AutomorphismGroup
    images: List[int]
    injective: bool
    surjective: bool
    n_group: FiniteGroup
    n_elements: List[Perm]

    def to_json(self) -> dict:
        return {
            "quotient_order": self.quotient.order,
            "aut_order": self.aut.group.order,
            "image_order": len(set(self.images)),
            "injective": self.injective,
            "surjective": self.surjective,
        }


def quotient_embedding(g: FiniteGroup, w: Sequence[int], n_sub: PermSubgroup) -> QuotientEmbedding:
    """lambda(G)/W -> Aut(N) induced by conjugation."""
    ng, elems, acts = conjugation_action(g, n_sub)
    q, proj, reps = quotient(g, w, name=f"{g.name}/W")
    aut = automorphism_group(ng)
    images = [aut.index(acts[r]) for r in reps]
    for a in range(g.order):
        if aut.index(acts[a]) != images[proj[a]]:
            raise GroupError("conjugation action does not factor through G/W")
    return QuotientEmbedding(
        quotient=q,
        projection=proj,
        reps=reps,
        aut=aut,
        images=images,
        injective=len(set(images)) == q.order,
        surjective=len(set(images)) == aut.group.order,
        n_group=ng,
        n_elements=elems,
    )
