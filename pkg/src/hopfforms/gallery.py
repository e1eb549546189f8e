"""Regression gallery: every worked example, re-verified from scratch."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .exact.cyclotomic import cyclotomic_polynomial, factor_cyclotomic_over
from .exact.factor import factor_squarefree_over_Q, is_irreducible
from .exact.linalg import ONE, ZERO, rank
from .exact.poly import Poly, X

Result = Tuple[Dict[str, bool], Dict]


def trivial_form() -> Result:
    from .etale import trivial_extension
    from .groups.finite import cyclic, is_isomorphic
    from .hopf import grouplike_group, grouplikes
    from .theta import theta

    L = trivial_extension(cyclic(2))
    fr = theta(L, cyclic(3), [(0, 1, 2), (0, 2, 1)])
    gl = grouplikes(fr.presentation)
    R = fr.ring
    e1, eg = L.idempotent(0), L.idempotent(1)
    listed = [R.one(), R.eta(1, e1) + R.eta(2, eg), R.eta(1, eg) + R.eta(2, e1)]
    listed_coords = sorted(sorted(fr.coordinates(x).items()) for x in listed)
    checks = {
        "three_grouplikes": len(gl) == 3,
        "grouplikes_match_listed": sorted(sorted(x.items()) for x in gl) == listed_coords,
        "group_is_C3": is_isomorphic(grouplike_group(fr.presentation, gl), cyclic(3)),
        "hopf_axioms": fr.presentation.is_hopf(),
    }
    checks.update(fr.flags)
    return checks, {"grouplikes": len(gl)}


def kohl() -> Result:
    from .etale import EtaleAlgebra, cyclotomic_field
    from .groups.finite import cyclic, is_isomorphic
    from .hopf import kohl_checks
    from .theta import idempotent_group, theta, units_action

    checks: Dict[str, bool] = {}
    for p, m in ((3, 1), (5, 1), (7, 1), (3, 2)):
        n = p**m
        for k, v in kohl_checks(p, m).items():
            checks[f"{n}_{k}"] = v
        fr = theta(EtaleAlgebra.from_field(cyclotomic_field(n)), cyclic(n), units_action(n))
        ig = idempotent_group(fr.presentation)
        checks[f"{n}_theta_is_Q^{n}"] = ig is not None and ig[0].order == n
        checks[f"{n}_idempotent_group_is_C{n}"] = ig is not None and is_isomorphic(ig[0], cyclic(n))
    return checks, {}


def characters() -> Result:
    from .hopf import character_iso

    checks = {}
    for n in range(1, 13):
        checks[f"n{n}"] = all(character_iso(n).flags.values())
    return checks, {}


def cyclotomic_factoring() -> Result:
    facs = factor_cyclotomic_over(15, 3)
    x8 = factor_squarefree_over_Q(X**8 - Poly([1]))
    checks = {
        "phi15_over_Q(z3)_two_quartics": len(facs) == 2 and all(len(f) - 1 == 4 for f in facs),
        "x4-10x2+1_irreducible": is_irreducible(Poly([1, 0, -10, 0, 1])),
        "x8-1_four_factors": [f.degree for f, _ in x8] == [1, 1, 2, 4],
        "phi15_degree_8": cyclotomic_polynomial(15).degree == 8,
    }
    return checks, {}


def enumeration() -> Result:
    from .groups.finite import cyclic, klein_four, quaternion, symmetric
    from .groups.perm import cycle_string, enumerate_regular_subgroups, from_cycles, left_regular_rep, PermSubgroup
    from .theta import c_st, eta_st

    G = klein_four()
    c4 = enumerate_regular_subgroups(G, cyclic(4))
    c6 = enumerate_regular_subgroups(symmetric(3), cyclic(6))
    c8 = enumerate_regular_subgroups(quaternion(), cyclic(8))
    shown = PermSubgroup.generated(4, [from_cycles(4, [(1, 3, 2, 4)])])
    lam = sorted(cycle_string(e) for e in left_regular_rep(G).elements)
    family = {c_st(s, t) for s in "ijk" for t in "ijk" if s != t}
    checks = {
        "C2xC2_C4_count_3": len(c4) == 3,
        "S3_C6_count_3": len(c6) == 3,
        "Q8_C8_count_6": len(c8) == 6,
        "displayed_N_found": shown in c4 and sorted(cycle_string(e) for e in shown.elements) == ["(1)", "(1,2)(3,4)", "(1,3,2,4)", "(1,4,2,3)"],
        "lambda_cycles": lam == ["(1)", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"],
        "eta_st_family_is_the_six": family == set(c8),
    }
    return checks, {"counts": {"C2xC2/C4": len(c4), "S3/C6": len(c6), "Q8/C8": len(c8)}}


def biquadratic() -> Result:
    from .etale import biquadratic_field
    from .groups.finite import klein_four
    from .groups.perm import PermSubgroup, from_cycles
    from .theta import hopf_action, theta_preimage

    G = klein_four()
    N = PermSubgroup.generated(4, [from_cycles(4, [(1, 3, 2, 4)])])
    pre = theta_preimage(biquadratic_field(), G, N)
    ha = hopf_action(pre.descent_ring)
    checks = {
        "W_is_(1),(12)(34)": pre.W == [0, 1],
        "quotient_is_Aut(C4)": pre.surjective and pre.image_order == 2,
        "E^W_is_Q(sqrt2)": pre.L.field.describe() == "Q(sqrt(2))",
        "j_rank_16": ha.j_rank == 16,
        "counit_compatible": ha.counit_ok,
        "hopf_axioms": pre.descent_ring.presentation.is_hopf(),
    }
    checks.update(pre.flags)
    return checks, {"W": pre.W, "L": pre.L.field.describe(), "j_rank": ha.j_rank}


def s3_case() -> Result:
    from .etale import pure_cubic_field
    from .groups.finite import cyclic, symmetric
    from .groups.perm import enumerate_regular_subgroups
    from .hopf import dual_cyclic, grouplikes
    from .theta import find_hopf_isomorphism, hopf_action, theta_preimage
    from .wedderburn import decompose

    G = symmetric(3)
    checks: Dict[str, bool] = {}
    gl_counts = []
    for idx, N in enumerate(enumerate_regular_subgroups(G, cyclic(6))):
        pre = theta_preimage(pure_cubic_field(), G, N)
        H = pre.descent_ring.presentation
        gl_counts.append(len(grouplikes(H)))
        checks[f"N{idx}_W_order_3"] = len(pre.W) == 3
        checks[f"N{idx}_E^W_is_Q(z3)"] = pre.L.field.describe() == "Q(z3)"
        checks[f"N{idx}_six_Q_blocks"] = decompose(H.algebra()).describe() == ["Q"] * 6
        checks[f"N{idx}_iso_to_dual_C6"] = find_hopf_isomorphism(H, dual_cyclic(6)) is not None
        checks[f"N{idx}_j_bijective"] = hopf_action(pre.descent_ring).bijective
        checks.update({f"N{idx}_{k}": v for k, v in pre.flags.items()})
    return checks, {"grouplike_counts": gl_counts}


def complete_group() -> Result:
    from .etale import trivial_extension
    from .groups.finite import is_isomorphic, symmetric
    from .groups.perm import left_regular_rep
    from .hopf import grouplike_group, grouplikes
    from .theta import theta_preimage

    G = symmetric(4)
    pre = theta_preimage(trivial_extension(G), G, left_regular_rep(G))
    gl = grouplikes(pre.theta_ring.presentation)
    checks = {
        "W_trivial": pre.W == [0],
        "quotient_is_Aut(S4)": pre.surjective,
        "L_is_E": pre.L.n == 24,
        "grouplike_group_is_S4": len(gl) == 24 and is_isomorphic(grouplike_group(pre.theta_ring.presentation, gl), G),
    }
    checks.update(pre.flags)
    return checks, {"W": pre.W}


def q8_family() -> Result:
    from .theta import hopf_invariants, q8_c8_preimage

    checks: Dict[str, bool] = {}
    records = {}
    for t in "ijk":
        for s in "ijk":
            if s == t:
                continue
            r = q8_c8_preimage(t, 2, s)
            checks[f"{s}{t}"] = all(r.flags.values()) and not r.discrepancies
            records[(s, t)] = hopf_invariants(r.descent_ring)
    d3 = hopf_invariants(q8_c8_preimage("k", 3).descent_ring)
    checks["same_t_equal_records"] = all(records[(s, t)] == records[(s2, t)] for (s, t) in records for (s2, t2) in records if t == t2)
    checks["d2_vs_d3_differ_in_square_class"] = records[("i", "k")].quadratic_classes != d3.quadratic_classes and 2 in records[("i", "k")].quadratic_classes and 3 in d3.quadratic_classes
    return checks, {"d2_classes": list(records[("i", "k")].quadratic_classes), "d3_classes": list(d3.quadratic_classes)}


def greither() -> Result:
    from .wedderburn import greither_form, theta_preimage_greither

    form = greither_form()
    pre = theta_preimage_greither(form)
    checks = dict(form.flags)
    checks.update({f"preimage_{k}": v for k, v in pre.flags.items()})
    return checks, {"profile": form.profile.describe()}


def abss_table() -> Result:
    from .groups.finite import cyclic, dihedral, elementary_abelian, quaternion
    from .hopf import dual_cyclic, group_algebra
    from .presets import extension
    from .theta import theta
    from .wedderburn import is_absolutely_semisimple

    checks = {
        "Q[D3]_true": is_absolutely_semisimple(group_algebra(dihedral(3)), dihedral(3)).verdict,
        "Q[D4]_true": is_absolutely_semisimple(group_algebra(dihedral(4)), dihedral(4)).verdict,
        "Q[Q8]_false": not is_absolutely_semisimple(group_algebra(quaternion()), quaternion()).verdict,
    }
    for n in range(1, 13):
        checks[f"dual_C{n}_true"] = is_absolutely_semisimple(dual_cyclic(n), cyclic(n)).verdict
    ext = extension("gl2f3")
    N = elementary_abelian(3, 2)
    fr = theta(ext.L, N, ext.default_embedding(N), check_galois=False)
    v = is_absolutely_semisimple(fr.presentation, N)
    checks["gl2f3_Q^9_true"] = v.verdict and v.blocks.describe() == ["Q"] * 9
    return checks, {}


def automorphisms() -> Result:
    from .groups.finite import (automorphism_group, cyclic, dihedral, elementary_abelian, holomorph, is_isomorphic,
                                quaternion, symmetric)

    aq = automorphism_group(quaternion()).group
    checks = {
        "Aut(C3)_order_2": automorphism_group(cyclic(3)).group.order == 2,
        "Aut(D3)=D3": is_isomorphic(automorphism_group(dihedral(3)).group, dihedral(3)),
        "Aut(D4)=D4": is_isomorphic(automorphism_group(dihedral(4)).group, dihedral(4)),
        "Aut(Q8)=S4": aq.order == 24 and is_isomorphic(aq, symmetric(4)),
        "Aut(C3^2)_order_48": automorphism_group(elementary_abelian(3, 2)).group.order == 48,
        "Hol(C3)=D3": is_isomorphic(holomorph(cyclic(3)), dihedral(3)),
        "Hol(C4)=D4": is_isomorphic(holomorph(cyclic(4)), dihedral(4)),
    }
    return checks, {}


def wedderburn_examples() -> Result:
    from .groups.finite import cyclic, dihedral, quaternion
    from .hopf import group_algebra
    from .wedderburn import complex_profile, decompose

    q8 = decompose(group_algebra(quaternion()).algebra())
    checks = {
        "Q[C3]": decompose(group_algebra(cyclic(3)).algebra()).describe() == ["Q", "Q(z3)"],
        "Q[D3]": decompose(group_algebra(dihedral(3)).algebra()).describe() == ["Q", "Q", "Mat2(Q)"],
        "Q[Q8]": [b.division for b in q8.blocks if b.k == 2] == [True] and q8.sizes() == [1, 1, 1, 1, 2],
        "C[D3]": complex_profile(dihedral(3)) == [1, 1, 2],
        "C[Q8]": complex_profile(quaternion()) == [1, 1, 1, 1, 2],
    }
    return checks, {"Q[Q8]": q8.describe()}


EXAMPLES: List[Tuple[str, Callable[[], Result]]] = [
    ("trivial-form-C3", trivial_form),
    ("kohl-idempotents", kohl),
    ("character-isomorphism", characters),
    ("cyclotomic-factoring", cyclotomic_factoring),
    ("regular-subgroup-counts", enumeration),
    ("biquadratic-C4", biquadratic),
    ("S3-C6", s3_case),
    ("complete-group-S4", complete_group),
    ("Q8-C8-family", q8_family),
    ("quaternion-form-H(theta)", greither),
    ("absolute-semisimplicity-table", abss_table),
    ("automorphism-groups", automorphisms),
    ("wedderburn-blocks", wedderburn_examples),
]


def run_gallery(names=None) -> Dict:
    out = []
    for name, fn in EXAMPLES:
        if names and name not in names:
            continue
        try:
            checks, summary = fn()
            error = ""
        except Exception as exc:  # reported, not raised: the gallery is a test report
            checks, summary, error = {}, {}, f"{type(exc).__name__}: {exc}"
        entry = {"name": name, "pass": bool(checks) and all(checks.values()) and not error, "checks": checks, "summary": summary}
        if error:
            entry["error"] = error
        out.append(entry)
    return {"examples": out, "passed": sum(e["pass"] for e in out), "failed": sum(not e["pass"] for e in out)}
