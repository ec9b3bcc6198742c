"""Verification suites and JSON-ready reports."""

from __future__ import annotations

import json
from typing import Optional

from .errors import TheoremViolation
from .graph import Graph, Modulus

SUITES = ("abel", "abel-m", "diagrams", "sheaf", "sheaf-m", "ext-duality", "abstract", "functoriality")
NEEDS_MODULUS = {"abel-m", "sheaf-m", "ext-duality", "abstract"}


def group_entry(name: str, g) -> dict:
    return {
        "name": name,
        "free_rank": g.free_rank,
        "invariant_factors": list(g.invariant_factors),
        "string": str(g),
    }


def groups_report(g: Graph, m: Optional[Modulus]) -> list:
    from .jacobian import JacobianContext
    from .modulus import ModulusContext
    from .sheaves import ModulusSheaves, StandardSheaves

    ctx = JacobianContext(g)
    out = [
        group_entry("J", ctx.jac),
        group_entry("Cl0", ctx.cl0),
        group_entry("P", ctx.pic),
        group_entry("Clhat0", ctx.clhat0),
    ]
    if m is not None:
        mc = ModulusContext(g, m, base=ctx)
        out += [group_entry("J_m", mc.jm), group_entry("Cl0_m", mc.cl0m), group_entry("P_m", mc.pm)]
        if not g.isolated_vertices():
            out.append(group_entry("Pic_m", ModulusSheaves(g, m, StandardSheaves(g)).picm))
    return out


def _verdicts(prefix: str, checks: dict) -> list:
    return [{"name": f"{prefix}: {k}", "passed": bool(ok), "detail": _jsonable(d)} for k, (ok, d) in checks.items() if ok is not None]


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return str(x)


def run_suite(suite: str, g: Graph, m: Optional[Modulus] = None, morphism=None, target_modulus=None) -> list:
    """Run one suite; returns verdict dicts or raises :class:`TheoremViolation`."""
    from . import jacobian as jac
    from . import modulus as mod

    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if suite in NEEDS_MODULUS and m is None:
        raise ValueError(f"suite {suite!r} needs a modulus")
    if suite == "functoriality":
        return _functoriality(morphism, m, target_modulus)
    ctx = jac.JacobianContext(g)
    out = []
    if suite == "abel":
        jac.verify_abel(ctx)
        out.append({"name": "AJ: Cl0 ≅ J", "passed": True, "detail": str(ctx.jac)})
        ok = jac.pairing_is_perfect(ctx)
        out.append({"name": "J × P pairing perfect", "passed": ok, "detail": None})
        jac.harmonic_discriminant_iso(ctx)
        out.append({"name": "Ha1#/Ha1 ≅ J", "passed": True, "detail": None})
        from .complexes import hodge_checks

        out += _verdicts("hodge", hodge_checks(ctx.complex))
    elif suite == "abel-m":
        mc = mod.ModulusContext(g, m, base=ctx)
        mod.verify_abel_m(mc)
        out.append({"name": "AJ_m: Cl0_m ≅ J_m", "passed": True, "detail": str(mc.jm)})
        out.append({"name": "free rank J_m = |I| - 1", "passed": True, "detail": mc.jm.free_rank})
        out += _verdicts("extension", mod.extension_sequences(mc))
    elif suite == "diagrams":
        jac.verify_diagram(ctx)
        out.append({"name": "iota = chi^-1 ∘ zeta ∘ AJ", "passed": True, "detail": None})
        if m is not None:
            mod.verify_diagram_m(mod.ModulusContext(g, m, base=ctx))
            out.append({"name": "iota_m = chi_m ∘ zeta_m ∘ AJ_m", "passed": True, "detail": None})
    elif suite == "sheaf":
        from .sheaves import StandardSheaves, picard_geometric, sheaf_checks, verify_sign_law

        s = StandardSheaves(g)
        out += _verdicts("sheaf", sheaf_checks(g, s))
        pd = picard_geometric(g, s)
        out.append({"name": "δ̄: Clhat ≅ H1(Harm)", "passed": True, "detail": str(pd.pic)})
        out += _verdicts("sign law", verify_sign_law(g, s))
    elif suite == "sheaf-m":
        from .sheaves import StandardSheaves, rigidified_picard, verify_sign_law_m

        s = StandardSheaves(g)
        pd = rigidified_picard(g, m, s)
        out += _verdicts("rigidified", pd.extras["report"])
        out += _verdicts("sign law m", verify_sign_law_m(g, m, s))
    elif suite == "ext-duality":
        if m.size < 2:
            out.append({"name": "connecting map = ε·pairing", "passed": True, "detail": "Z[I]0 = 0"})
        else:
            r = mod.ext_class_vs_aj(ctx, m)
            out.append({
                "name": "connecting map = ε·pairing",
                "passed": True,
                "detail": {"epsilon": r["epsilon"], "sign_forced": r["sign_forced"]},
            })
    elif suite == "abstract":
        from .abstract import abstract_engine, compare_with_direct, graph_system

        res = abstract_engine(graph_system(g, m))
        out += _verdicts("abstract", compare_with_direct(res, mod.ModulusContext(g, m, base=ctx)))
    failed = [v["name"] for v in out if not v["passed"]]
    if failed:
        raise TheoremViolation(f"suite {suite} failed: {failed}", witness=failed)
    return out


def _functoriality(f, m, mt) -> list:
    from .morphisms import functoriality_checks, modulus_functoriality

    if f is None:
        raise ValueError("suite 'functoriality' needs a morphism")
    out = _verdicts("unmodded", functoriality_checks(f))
    if m is not None and mt is not None:
        out += _verdicts("pushforward", modulus_functoriality(f, m, mt, "pushforward"))
        out += _verdicts("pullback", modulus_functoriality(f, m, mt, "pullback"))
    failed = [v["name"] for v in out if not v["passed"]]
    if failed:
        raise TheoremViolation(f"functoriality failed: {failed}", witness=failed)
    return out


def dumps(report: dict) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
