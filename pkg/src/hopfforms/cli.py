"""``hopfforms`` command line.

Every command prints one JSON certificate on standard output.  Exit status is
0 when all verification flags hold, 1 when some flag fails and 2 on invalid
input (diagnostics go to standard error).
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .groups.finite import FiniteGroup, automorphism_group, catalog, find_isomorphism, is_isomorphic, parse_group
from .groups.perm import compute_W, cycle_string, default_workers, enumerate_regular_subgroups, quotient_embedding
from .presets import (EXTENSION_HELP, FIELD_HELP, HOPF_HELP, PresetError, extension, galois_field, hopf_algebra,
                      regular_subgroup)
from .serialize import certificate, dumps, frac_str, parse_frac

CENSUS_MAX_ORDER = 8

Outcome = Tuple[dict, dict, dict, str]  # inputs, result, flags, example name


def _group_name(g: FiniteGroup) -> str:
    for h in catalog(min(g.order, 24)) if g.order <= 24 else []:
        if h.order == g.order and is_isomorphic(g, h):
            return h.name
    return g.name or f"order {g.order}"


def _sparse(v) -> Dict[str, str]:
    return {str(k): frac_str(c) for k, c in sorted(v.items())}


def _hopf_summary(P, grouplike_bound: Optional[int] = None) -> Tuple[dict, dict]:
    from .hopf import HopfError, grouplike_group, grouplikes

    axioms = P.check_axioms()
    out = {"presentation": P.to_json(), "axioms": axioms}
    if not all(axioms.values()):
        out["grouplikes"] = {"skipped": "Hopf axioms fail"}
        return out, axioms
    try:
        gl = grouplikes(P) if grouplike_bound is None else grouplikes(P, bound=grouplike_bound)
    except HopfError as exc:
        out["grouplikes"] = {"skipped": str(exc)}
        return out, axioms
    gg = grouplike_group(P, gl)
    out["grouplikes"] = {"count": len(gl), "elements": [_sparse(x) for x in gl], "group": _group_name(gg)}
    return out, axioms


# --- groups ---------------------------------------------------------------------------------

def cmd_groups_make(a) -> Outcome:
    G = parse_group(a.group)
    return {"group": a.group}, {"group": G.to_json(), "is_cyclic": G.is_cyclic(), "iso_class": _group_name(G)}, {}, ""


def cmd_groups_aut(a) -> Outcome:
    G = parse_group(a.group)
    A = automorphism_group(G)
    result = {"order": A.group.order, "iso_class": _group_name(A.group), "maps": [list(m) for m in A.maps], "group": A.group.to_json()}
    flags = {"identity_first": list(A.maps[0]) == list(range(G.order))}
    return {"group": a.group}, result, flags, ""


def cmd_groups_regular(a) -> Outcome:
    G = parse_group(a.group)
    T = parse_group(a.type) if a.type else None
    subs = enumerate_regular_subgroups(G, T, workers=a.workers)
    result = {"count": len(subs), "subgroups": [{"index": i, "type": _group_name(N.as_group()[0]), **N.to_json()} for i, N in enumerate(subs)]}
    flags = {"regular": all(N.order == G.order and N.is_regular() for N in subs)}
    return {"group": a.group, "type": a.type}, result, flags, ""


def cmd_groups_w(a) -> Outcome:
    G = parse_group(a.group)
    N = regular_subgroup(G, a.N, a.type, a.workers)
    W = compute_W(N, G)
    emb = quotient_embedding(G, W, N)
    result = {"N": N.to_json(), "W": W, "W_cycles": [cycle_string(tuple(G.table[w])) for w in W], "quotient": emb.to_json()}
    return {"group": a.group, "N": a.N}, result, {"injective": emb.injective}, ""


# --- etale ----------------------------------------------------------------------------------

def cmd_etale_build(a) -> Outcome:
    from .etale import verify_galois

    L = extension(a.L).L
    gc = verify_galois(L)
    flags = {"action": L.check_action(), "idempotents": L.check_idempotents(), "galois": gc.ok}
    return {"L": a.L}, {"algebra": L.to_json(), "galois": gc.to_json()}, flags, ""


def cmd_etale_verify(a) -> Outcome:
    from .etale import verify_galois

    L = extension(a.L).L
    gc = verify_galois(L)
    return {"L": a.L}, gc.to_json(), {"galois": gc.ok}, ""


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise PresetError(f"expected comma-separated integers, got {text!r}") from exc


def cmd_etale_fix(a) -> Outcome:
    from .etale import fixed_subalgebra

    L = extension(a.L).L
    H = _int_list(a.subgroup)
    fs = fixed_subalgebra(L, H)
    result = {"dim": len(fs.basis), "basis": [[frac_str(c) for c in v] for v in fs.basis], "algebra": fs.algebra.to_json()}
    if len(fs.basis) and fs.algebra.dim:
        from .algebra import describe_field, is_field

        if is_field(fs.algebra):
            result["field"] = describe_field(fs.algebra, a.seed)
    expected = L.dim * len(H) and L.dim // len(H)
    return {"L": a.L, "subgroup": H}, result, {"dimension_is_index": len(fs.basis) == expected}, ""


# --- hopf -----------------------------------------------------------------------------------

def cmd_hopf_dual(a) -> Outcome:
    from .hopf import dual_cyclic

    P = dual_cyclic(a.n)
    result, axioms = _hopf_summary(P)
    return {"n": a.n}, result, axioms, ""


def cmd_hopf_grouplikes(a) -> Outcome:
    from .hopf import grouplike_group, grouplikes

    P = hopf_algebra(a.algebra)
    gl = grouplikes(P)
    gg = grouplike_group(P, gl)
    result = {"count": len(gl), "elements": [_sparse(x) for x in gl], "group": _group_name(gg), "table": gg.to_json()}
    return {"algebra": a.algebra}, result, {"closed_under_product": gg.order == len(gl)}, ""


def cmd_hopf_axioms(a) -> Outcome:
    P = hopf_algebra(a.algebra)
    result, axioms = _hopf_summary(P)
    return {"algebra": a.algebra}, result, axioms, ""


def cmd_hopf_kohl(a) -> Outcome:
    from .hopf import kohl_checks, kohl_idempotents

    es = kohl_idempotents(a.p, a.m)
    result = {"idempotents": [[str(c) for c in e] for e in es]}
    return {"p": a.p, "m": a.m}, result, kohl_checks(a.p, a.m), "Kohl idempotents"


# --- theta ----------------------------------------------------------------------------------

def _parse_embedding(text: str, F: FiniteGroup, N: FiniteGroup):
    """``a0,a1,...;b0,...``: one image table of N per element of F."""
    rows = [tuple(_int_list(r)) for r in text.split(";") if r.strip()]
    if len(rows) != F.order or any(sorted(r) != list(range(N.order)) for r in rows):
        raise PresetError(f"embedding needs {F.order} permutations of 0..{N.order - 1}")
    return rows


def cmd_theta_compute(a) -> Outcome:
    from .theta import theta

    ext = extension(a.L)
    N = parse_group(a.N)
    embed = _parse_embedding(a.embedding, ext.L.group, N) if a.embedding else ext.default_embedding(N)
    fr = theta(ext.L, N, embed, label=f"Theta({a.L}; {a.N})", check_galois=not a.skip_galois_check)
    summary, axioms = _hopf_summary(fr.presentation)
    result = {"ring": fr.to_json(), **{k: v for k, v in summary.items() if k != "presentation"}}
    flags = {**fr.flags, **{f"hopf_{k}": v for k, v in axioms.items()}}
    example = "trivial form on C3" if (a.L, a.N) == ("trivial:C2", "C3") else ""
    return {"L": a.L, "N": a.N, "embedding": [list(r) for r in embed]}, result, flags, example


def cmd_theta_descend(a) -> Outcome:
    from .theta import descend, hopf_action

    E, G = galois_field(a.E)
    N = regular_subgroup(G, a.N, a.type, a.workers)
    fr = descend(E, G, N, label=f"descent({a.E}; {a.N})")
    summary, axioms = _hopf_summary(fr.presentation)
    ha = hopf_action(fr)
    result = {"ring": fr.to_json(), "N": N.to_json(), "hopf_galois": ha.to_json(),
              **{k: v for k, v in summary.items() if k != "presentation"}}
    flags = {**fr.flags, **{f"hopf_{k}": v for k, v in axioms.items()}, "j_bijective": ha.bijective,
             "counit_compatible": ha.counit_ok}
    return {"E": a.E, "N": a.N, "type": a.type}, result, flags, ""


def cmd_theta_preimage(a) -> Outcome:
    from .theta import theta_preimage

    E, G = galois_field(a.E)
    N = regular_subgroup(G, a.N, a.type, a.workers)
    pre = theta_preimage(E, G, N)
    return {"E": a.E, "N": a.N, "type": a.type}, pre.to_json(), pre.flags, ""


def cmd_theta_q8(a) -> Outcome:
    from .theta import hopf_invariants, q8_c8_preimage

    r = q8_c8_preimage(a.t, a.d, a.s)
    result = {**r.to_json(), "invariants": hopf_invariants(r.descent_ring).to_json()}
    flags = {**r.flags, "no_discrepancies": not r.discrepancies}
    return {"s": r.s, "t": a.t, "d": a.d}, result, flags, "Q8 acting on C8"


# --- wedderburn -----------------------------------------------------------------------------

def _algebra_from_spec(spec: str):
    return hopf_algebra(spec).algebra()


def cmd_wedderburn_decompose(a) -> Outcome:
    from .wedderburn import decompose

    prof = decompose(_algebra_from_spec(a.algebra), a.seed)
    example = "rational group ring of Q8" if a.algebra in ("QQ8", "Q[Q8]") else ""
    return {"algebra": a.algebra, "seed": a.seed}, prof.to_json(), prof.flags, example


def cmd_wedderburn_abss(a) -> Outcome:
    from .wedderburn import is_absolutely_semisimple

    N = parse_group(a.group)
    form = a.form or f"Q{a.group}"
    v = is_absolutely_semisimple(hopf_algebra(form), N, a.seed)
    # the verdict itself is the answer, not a verification flag
    return {"group": a.group, "form": form}, v.to_json(), v.blocks.flags, ""


def cmd_wedderburn_greither(a) -> Outcome:
    from .wedderburn import greither_form, theta_preimage_greither

    form = greither_form(a.seed)
    result = form.to_json()
    flags = dict(form.flags)
    if not a.skip_preimage:
        pre = theta_preimage_greither(form)
        result["preimage"] = pre.to_json()
        flags.update({f"preimage_{k}": v for k, v in pre.flags.items()})
    return {"seed": a.seed}, result, flags, "quaternion form H(theta)"


def cmd_wedderburn_hilbert(a) -> Outcome:
    from .wedderburn import quaternion_splits

    x, y = parse_frac(a.a), parse_frac(a.b)
    if x == 0 or y == 0:
        raise PresetError("Hilbert symbol arguments must be nonzero")
    splits, symbols = quaternion_splits(x, y)
    prod = 1
    for s in symbols.values():
        prod *= s
    result = {"a": frac_str(x), "b": frac_str(y), "symbols": symbols, "splits": splits}
    return {"a": a.a, "b": a.b}, result, {"reciprocity": prod == 1}, ""


# --- gallery and census ---------------------------------------------------------------------

def cmd_gallery(a) -> Outcome:
    from .gallery import EXAMPLES, run_gallery

    names = a.example or None
    known = {n for n, _ in EXAMPLES}
    if names and not set(names) <= known:
        raise PresetError(f"unknown example(s) {sorted(set(names) - known)}; known: {sorted(known)}")
    report = run_gallery(names)
    flags = {e["name"]: e["pass"] for e in report["examples"]}
    return {"examples": names or "all"}, report, flags, ""


def census(max_order: int, workers: int = 1) -> List[dict]:
    """Regular lambda(G)-normalized subgroups of Perm(G) for every catalog G, by type."""
    if max_order > CENSUS_MAX_ORDER:
        raise PresetError(f"census is limited to order {CENSUS_MAX_ORDER}")
    groups = catalog(max_order)
    rows = []
    for G in groups:
        types = [T for T in groups if T.order == G.order]
        entries = {T.name: [] for T in types}
        for N in enumerate_regular_subgroups(G, workers=workers):
            NG = N.as_group()[0]
            T = next(T for T in types if find_isomorphism(NG, T) is not None)
            W = compute_W(N, G)
            emb = quotient_embedding(G, W, N)
            entries[T.name].append({"W": W, "W_order": len(W), "surjective": emb.surjective, "cycles": [cycle_string(e) for e in N.elements]})
        rows.append({"G": G.name, "order": G.order,
                     "types": [{"N": name, "count": len(v), "structures": v} for name, v in entries.items()]})
    return rows


def cmd_census(a) -> Outcome:
    rows = census(a.max_order, a.workers)
    flags = {"counts_sum_over_types": all(sum(t["count"] for t in r["types"]) >= 1 for r in rows)}
    return {"max_order": a.max_order}, {"rows": rows}, flags, ""


# --- parser ---------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", "-o", help="also write the certificate to this file")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: $HOPFFORMS_WORKERS or 1)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized splitting (results do not depend on it)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hopfforms", description="Hopf forms of group rings over Q, with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(parent, name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        p = parent.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    g = sub.add_parser("groups", help="finite groups and regular subgroups").add_subparsers(dest="action", required=True)
    p = leaf(g, "make", cmd_groups_make, "build a preset group")
    p.add_argument("--group", required=True)
    p = leaf(g, "aut", cmd_groups_aut, "automorphism group")
    p.add_argument("--group", required=True)
    p = leaf(g, "regular", cmd_groups_regular, "regular subgroups normalized by lambda(G)")
    p.add_argument("--group", required=True)
    p.add_argument("--type")
    p = leaf(g, "w", cmd_groups_w, "W and the map lambda(G)/W -> Aut(N)")
    p.add_argument("--group", required=True)
    p.add_argument("--N", required=True, help="lambda | cycles:(1,3,2,4)[;...] | index:<k>")
    p.add_argument("--type")

    e = sub.add_parser("etale", help="F-Galois etale algebras").add_subparsers(dest="action", required=True)
    for name, fn, h in (("build", cmd_etale_build, "build and check"), ("verify", cmd_etale_verify, "Galois map rank")):
        p = leaf(e, name, fn, h)
        p.add_argument("--L", required=True, help=EXTENSION_HELP)
    p = leaf(e, "fix", cmd_etale_fix, "fixed subalgebra of a subgroup")
    p.add_argument("--L", required=True, help=EXTENSION_HELP)
    p.add_argument("--subgroup", required=True, help="comma-separated element indices")

    h = sub.add_parser("hopf", help="Hopf algebras").add_subparsers(dest="action", required=True)
    p = leaf(h, "dual", cmd_hopf_dual, "(Q[Cn])*")
    p.add_argument("n", type=int)
    p = leaf(h, "grouplikes", cmd_hopf_grouplikes, "group-like elements")
    p.add_argument("--algebra", required=True, help=HOPF_HELP)
    p = leaf(h, "axioms", cmd_hopf_axioms, "re-verify the Hopf axioms (accepts certificates)")
    p.add_argument("--algebra", required=True, help=HOPF_HELP)
    p = leaf(h, "kohl", cmd_hopf_kohl, "Kohl idempotents in Q(zeta)[C_{p^m}]")
    p.add_argument("p", type=int)
    p.add_argument("m", type=int)

    def theta_args(p):
        p.add_argument("--L", required=True, help=EXTENSION_HELP)
        p.add_argument("--N", required=True, help="group preset")
        p.add_argument("--embedding", help="F -> Aut(N) as image tables 'a0,a1,..;b0,..'")
        p.add_argument("--skip-galois-check", action="store_true")

    def descent_args(p):
        p.add_argument("--E", required=True, help=FIELD_HELP)
        p.add_argument("--N", required=True, help="lambda | cycles:(1,3,2,4)[;...] | index:<k>")
        p.add_argument("--type", help="type of N, used with index:<k>")

    t_parser = sub.add_parser("theta", parents=[common], help="fixed rings (L[N])^F")
    theta_args_defaults = t_parser.add_argument_group("compute (default)")
    theta_args_defaults.add_argument("--L", help=EXTENSION_HELP)
    theta_args_defaults.add_argument("--N")
    theta_args_defaults.add_argument("--embedding")
    theta_args_defaults.add_argument("--skip-galois-check", action="store_true")
    t_parser.set_defaults(fn=cmd_theta_compute)
    t = t_parser.add_subparsers(dest="action")
    theta_args(leaf(t, "compute", cmd_theta_compute, "Theta(L) for an F-Galois L"))
    descent_args(leaf(t, "descend", cmd_theta_descend, "(E[N])^G"))
    descent_args(leaf(t, "preimage", cmd_theta_preimage, "an F-Galois L with Theta(L) = (E[N])^G"))
    p = leaf(t, "q8", cmd_theta_q8, "the Q8 acting on C8 family")
    p.add_argument("--t", default="k", choices="ijk")
    p.add_argument("--s", choices="ijk")
    p.add_argument("--d", type=int, default=2)

    descent_args(leaf(sub, "descend", cmd_theta_descend, "alias of theta descend"))
    descent_args(leaf(sub, "preimage", cmd_theta_preimage, "alias of theta preimage"))

    w = sub.add_parser("wedderburn", help="Wedderburn decompositions").add_subparsers(dest="action", required=True)
    p = leaf(w, "decompose", cmd_wedderburn_decompose, "block decomposition over Q")
    p.add_argument("--algebra", required=True, help=HOPF_HELP)
    p = leaf(w, "abss", cmd_wedderburn_abss, "absolute semisimplicity of a form of Q[N]")
    p.add_argument("--group", required=True)
    p.add_argument("--form", help=HOPF_HELP + " (default Q<group>)")
    p = leaf(w, "greither", cmd_wedderburn_greither, "the quaternion form H(theta)")
    p.add_argument("--skip-preimage", action="store_true")
    p = leaf(w, "hilbert", cmd_wedderburn_hilbert, "Hilbert symbols of (a,b)")
    p.add_argument("a")
    p.add_argument("b")

    p = leaf(sub, "gallery", cmd_gallery, "re-verify every worked example")
    p.add_argument("--example", action="append", help="restrict to this example (repeatable)")
    p = leaf(sub, "census", cmd_census, "Hopf-Galois structure counts per group and type")
    p.add_argument("--max-order", type=int, default=CENSUS_MAX_ORDER)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if a.workers is None:
        a.workers = default_workers()
    if a.workers < 1:
        print("error: --workers must be positive", file=stderr)
        return 2
    if a.fn is cmd_theta_compute and not (a.L and a.N):
        print("error: theta needs --L and --N", file=stderr)
        return 2
    command = " ".join(x for x in (a.command, getattr(a, "action", None)) if x)
    try:
        inputs, result, flags, example = a.fn(a)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    cert = certificate(command, inputs, result, flags, example)
    text = dumps(cert)
    if a.output:
        Path(a.output).write_text(text + "\n")
    print(text, file=stdout)
    if not cert["verified"]:
        failed = sorted(k for k, v in flags.items() if not v)
        print(f"verification failed: {', '.join(failed)}", file=stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
