"""Named inputs for the command line: extensions, Hopf algebras, subgroups."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .algebra import Algebra
from .etale import (EtaleAlgebra, FieldDesc, GaloisError, biquadratic_field, build_F_galois, cyclotomic_field,
                    pure_cubic_field, quadratic_field, trivial_extension)
from .groups.finite import (FiniteGroup, GroupError, automorphism_group, elementary_abelian, find_isomorphism,
                            parse_group, quaternion, units_group)
from .groups.perm import PermSubgroup, enumerate_regular_subgroups, from_cycles, left_regular_rep
from .hopf import HopfPresentation, dual_group_algebra, group_algebra


class PresetError(ValueError):
    pass


EXTENSION_HELP = (
    "trivial:<group> | cyclotomic:<n> | quadratic:<d> | biquadratic | pure-cubic | "
    "q8:<d> | gl2f3 | greither"
)


@dataclass
class Extension:
    """An F-Galois algebra with its default action of F on a group N."""

    L: EtaleAlgebra
    spec: str

    def default_embedding(self, N: FiniteGroup) -> List[Tuple[int, ...]]:
        from .theta import units_action

        F = self.L.group
        kind = self.spec.split(":")[0]
        if kind in ("cyclotomic", "q8"):
            n = int(self.spec.split(":")[1]) if kind == "cyclotomic" else 8
            if not (N.is_cyclic() and N.order == n):
                raise PresetError(f"{self.spec} acts on C{n} only")
            return units_action(n)
        aut = automorphism_group(N)
        if kind in ("gl2f3", "greither"):
            if aut.group.table != F.table:
                raise PresetError(f"{self.spec} acts on {'C3^2' if kind == 'gl2f3' else 'Q8'} only")
            return list(aut.maps)
        if F.order == 1:
            return [tuple(range(N.order))]
        iso = find_isomorphism(F, aut.group)
        if iso is None:
            raise PresetError(f"{F.name} is not isomorphic to Aut({N.name}); pass an explicit embedding")
        return [aut.maps[iso[g]] for g in range(F.order)]


def extension(spec: str) -> Extension:
    kind, _, arg = spec.partition(":")
    try:
        if kind == "trivial":
            return Extension(trivial_extension(parse_group(arg)), spec)
        if kind == "cyclotomic":
            return Extension(EtaleAlgebra.from_field(cyclotomic_field(int(arg))), spec)
        if kind == "quadratic":
            return Extension(EtaleAlgebra.from_field(quadratic_field(int(arg))), spec)
        if kind == "biquadratic":
            return Extension(EtaleAlgebra.from_field(biquadratic_field()), spec)
        if kind == "pure-cubic":
            return Extension(EtaleAlgebra.from_field(pure_cubic_field()), spec)
        if kind == "q8":
            from .theta import q8_L

            return Extension(q8_L(int(arg or 2)), spec)
        if kind == "gl2f3":
            return Extension(gl2f3_extension(), spec)
        if kind == "greither":
            return Extension(greither_extension(), spec)
    except (ValueError, GroupError) as exc:
        raise PresetError(f"bad extension {spec!r}: {exc}") from exc
    raise PresetError(f"unknown extension {spec!r}; expected {EXTENSION_HELP}")


def gl2f3_extension() -> EtaleAlgebra:
    """Q(zeta_3)^24 over Aut(C3^2) = GL2(F3), induced from U = {+-I}."""
    N = elementary_abelian(3, 2)
    A = automorphism_group(N)
    minus = A.index([N.inv(x) for x in range(N.order)])
    M = cyclotomic_field(3).with_action(A.group, {0: 0, minus: 1})
    return build_F_galois(A.group, [0, minus], M)


def greither_extension() -> EtaleAlgebra:
    Q8 = quaternion()
    A = automorphism_group(Q8)
    ck = A.index([Q8.conj(6, x) for x in range(8)])
    M = cyclotomic_field(4).with_action(A.group, {0: 0, ck: 1})
    return build_F_galois(A.group, [0, ck], M)


FIELD_HELP = "biquadratic | pure-cubic | cyclotomic:<n> | quadratic:<d> | trivial:<group>"


def galois_field(spec: str) -> Tuple[EtaleAlgebra, FiniteGroup]:
    """E with its Galois group G for descent."""
    ext = extension(spec)
    if spec.split(":")[0] in ("q8", "gl2f3", "greither"):
        raise PresetError(f"{spec} is not a descent input; expected {FIELD_HELP}")
    return ext.L, ext.L.group


def regular_subgroup(G: FiniteGroup, spec: str, type_name: Optional[str] = None, workers: int = 1) -> PermSubgroup:
    """``lambda``, ``cycles:(1,3,2,4)[(..)]`` (one-based generators) or ``index:<k>``."""
    if spec == "lambda":
        return left_regular_rep(G)
    if spec.startswith("cycles:"):
        gens = []
        for gen in spec[len("cycles:"):].split(";"):
            cyc = [tuple(int(x) for x in c.split(",")) for c in re.findall(r"\(([^()]*)\)", gen) if c.strip()]
            gens.append(from_cycles(G.order, cyc))
        return PermSubgroup.generated(G.order, gens)
    if spec.startswith("index:"):
        k = int(spec[len("index:"):])
        subs = enumerate_regular_subgroups(G, parse_group(type_name) if type_name else None, workers=workers)
        if not 0 <= k < len(subs):
            raise PresetError(f"index {k} out of range (found {len(subs)} subgroups)")
        return subs[k]
    raise PresetError(f"unknown subgroup spec {spec!r}")


HOPF_HELP = "Q<group> (group ring) | dual:<group> | greither | <file.json>"


def hopf_algebra(spec: str) -> HopfPresentation:
    if spec == "greither":
        from .wedderburn import greither_form

        return greither_form().presentation
    if spec.startswith("dual:"):
        return dual_group_algebra(parse_group(spec[5:]))
    if spec.endswith(".json"):
        return HopfPresentation.from_json(_find_presentation(json.loads(Path(spec).read_text())))
    if spec.startswith("Q") and len(spec) > 1:
        g = spec[1:]
        if g.startswith("[") and g.endswith("]"):
            g = g[1:-1]
        return group_algebra(parse_group(g))
    raise PresetError(f"unknown Hopf algebra {spec!r}; expected {HOPF_HELP}")


def _search_presentation(data):
    if not isinstance(data, dict):
        return None
    if {"dim", "mult", "comult", "counit", "antipode"} <= data.keys():
        return data
    for key in ("presentation", "result", "ring", "theta", "descent", "fixed_ring"):
        found = _search_presentation(data.get(key))
        if found is not None:
            return found
    return None


def _find_presentation(data):
    """The first Hopf presentation inside a JSON document (bare or in a certificate)."""
    found = _search_presentation(data)
    if found is None:
        raise PresetError("no Hopf presentation found in the file")
    return found
