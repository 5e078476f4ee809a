"""Command-line front end: reproducible runs emitting JSON reports.

Every subcommand builds a payload that is a pure function of its options
(and the seed, where randomness is involved); the report wraps the payload
with a command echo, the parsed configuration, wall time and budget
counters.  Human-readable lines, where printed, are rendered from the same
payload.  Exit codes: 0 success, 1 check failure, 2 configuration error,
3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from . import commvar, grmodel, polyalg, rootsys, specseq, verify
from .errors import BudgetError, CheckFailure, ConfigError, DomainError, FrobkernError

ENV_BUDGET = "FROBKERN_BUDGET"


@dataclass
class RunConfig:
    family: str = "A"
    rank: int = 2
    J: tuple[str, ...] = ()
    i: int = 1
    v: int | None = None  # quotient stage; None means the full group
    r: int = 1
    p: int = 3
    q_list: tuple[int, ...] = ()
    degree_bound: int | None = None
    enumeration_budget: int | None = None
    output: str | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        doc = asdict(self)
        doc["J"] = sorted(self.J)
        doc["q_list"] = list(self.q_list)
        return doc


def _parse_J(text: str) -> tuple[str, ...]:
    if not text:
        return ()
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        out.append(token if token.startswith("a") else f"a{int(token)}")
    return tuple(sorted(set(out)))


def _budget(config: RunConfig) -> int | None:
    if config.enumeration_budget is not None:
        return config.enumeration_budget
    env = os.environ.get(ENV_BUDGET)
    return int(env) if env else None


def _model_ctx(config: RunConfig) -> grmodel.ModelContext:
    return grmodel.model_context(
        config.family,
        config.rank,
        J=config.J,
        i=config.i,
        stage=config.v,
        r=config.r,
        p=config.p,
    )


def _root(config: RunConfig, text: str) -> rootsys.Root:
    return rootsys.parse_root(text, config.rank)


# -- payload builders -------------------------------------------------------------


def payload_rootsys_info(config: RunConfig) -> dict:
    ctx = rootsys.context(config.family, config.rank, frozenset(config.J))
    radical = ctx.radical_roots()
    histogram: dict[str, int] = {}
    for beta in radical:
        histogram[str(ctx.level(beta))] = histogram.get(str(ctx.level(beta)), 0) + 1
    return {
        "family": config.family,
        "rank": config.rank,
        "J": sorted(config.J),
        "positive_roots": [b.label() for b in ctx.system.positive_roots],
        "radical_roots": [
            {
                "root": b.label(),
                "height": b.height,
                "level": ctx.level(b),
                "shape": ctx.shape(b).label(),
            }
            for b in radical
        ],
        "level_histogram": histogram,
        "pairing_hypothesis": rootsys.check_pairing_hypothesis(ctx, config.p).to_json_dict(),
    }


def payload_model_build(config: RunConfig, what: str) -> dict:
    ctx = _model_ctx(config)
    if what == "sstar":
        return grmodel.build_S_star(ctx).to_json_dict()
    if what == "sbar":
        return grmodel.build_Sbar(ctx).to_json_dict()
    if what == "q":
        return grmodel.build_Q(ctx).to_json_dict()
    if what == "coord":
        return grmodel.vr_coordinate_algebra(ctx).to_json_dict()
    raise ConfigError(f"unknown build target {what!r}")


def payload_model_hilbert(config: RunConfig, degree: int, weight: str | None) -> dict:
    ctx = _model_ctx(config)
    sbar = grmodel.build_Sbar(ctx)
    w = tuple(int(t) for t in weight.split(",")) if weight else None
    dims = {
        str(d): sbar.graded_dimension(d, weight=w, degree_bound=config.degree_bound)
        for d in range(degree + 1)
    }
    return {
        "context": ctx.label(),
        "weight": list(w) if w else None,
        "by_degree": dims,
    }


def payload_model_theta_check(config: RunConfig) -> dict:
    ctx = _model_ctx(config)
    theta = grmodel.theta_substitution(ctx)  # raises CheckFailure on failure
    identities = grmodel.theta_power_identities(ctx, theta)
    return {
        "context": ctx.label(),
        "well_defined": True,
        "relations_checked": len(theta.source.relations),
        "power_identities": [
            {
                "beta": ident.beta.label(),
                "twists": [ident.twist, ident.twist2],
                "power_exponent": ident.power,
                "sign": ident.sign,
            }
            for ident in identities
        ],
    }


def payload_model_bracket_check(config: RunConfig, pairs: int) -> dict:
    import random

    ctx = _model_ctx(config)
    model = grmodel.build_Sbar(ctx)
    bracket = grmodel.bracket_p(model)  # validates relation images
    rng = random.Random(config.seed)
    gens = [model.ring.var(v.name) for v in model.ring.variables]
    for _ in range(pairs):
        f = model.ring.one()
        g = model.ring.zero()
        for _ in range(2):
            f = f * rng.choice(gens) ** rng.randint(0, 2)
            g = g + rng.choice(gens) ** rng.randint(0, 2) * rng.randint(1, 2)
        if bracket.apply(f * g) != bracket.apply(f) * bracket.apply(g):
            raise CheckFailure("bracket map failed a multiplicativity probe")
    membership = []
    for s in (1, 2):
        for name in model.top_generators():
            degree = model.ring.descriptor(name).degree
            if degree < ctx.p**s:
                membership.append(
                    {
                        "generator": name,
                        "degree": degree,
                        "s": s,
                        "in_image": grmodel.in_bracket_image(
                            model, model.ring.var(name), s
                        ),
                    }
                )
    if any(entry["in_image"] for entry in membership):
        raise CheckFailure("a low-degree top generator appeared in the image")
    return {
        "context": ctx.label(),
        "relation_images_in_target_ideal": True,
        "random_pairs_checked": pairs,
        "collapse_probes": membership,
    }


def payload_variety_count(config: RunConfig, group: str, q: int) -> dict:
    group = group.upper().strip()
    if not group.startswith("U"):
        raise ConfigError("expected a group of the form U<N>")
    N = int(group[1:])
    budget = _budget(config)
    x_system = commvar.x_variety_system(N, config.r)
    y_system = commvar.y_variety_system(N, config.r)
    y_count = y_system.count(q, budget)
    product = y_count * q**x_system.free_rank
    total_space = q ** len(x_system.variables)
    method = "direct"
    try:
        direct = x_system.count(q, budget)
    except BudgetError:
        direct = None
        method = "product"
    if direct is not None and direct != product:
        raise CheckFailure("direct count disagrees with the product law")
    count = direct if direct is not None else product
    assignments = total_space if method == "direct" else q ** len(y_system.variables)
    return {
        "group": group,
        "quotient_stage": 3,
        "r": config.r,
        "q": q,
        "y_count": y_count,
        "free_rank": x_system.free_rank,
        "count": count,
        "method": method,
        "assignments_enumerated": assignments,
        "dim_estimate": round(commvar.dim_estimate(count, q), 4),
    }


def payload_variety_components(config: RunConfig, N: int) -> dict:
    budget = _budget(config)
    q_list = config.q_list or (3,)
    systems = commvar.component_candidates_U4(config.r) if N == 4 else None
    out: dict = {"N": N, "r": config.r, "q_list": list(q_list)}
    if systems is not None:
        y = commvar.y_variety_system(4, config.r)
        per_q = {}
        for q in q_list:
            counts = {label: s.count(q, budget) for label, s in systems.items()}
            total = y.count(q, budget)
            per_q[str(q)] = {
                "Y": total,
                **counts,
                "residual": total - (counts["V1"] + counts["V2"] - counts["V1&V2"]),
            }
        out["counts"] = per_q
        out["claimed_dims"] = {"V1": 2 * config.r, "V2": config.r + 2}
    else:
        report = commvar.conjecture_check(N, config.r, q_list, budget)
        out["report"] = report.to_json_dict()
    return out


def payload_specseq(config: RunConfig, action: str, ns) -> dict:
    ctx = _model_ctx(config)
    if action in ("d2", "transgression", "steenrod"):
        page = specseq.lhs_page(ctx)
        if action == "d2":
            beta = _root(config, ns.beta)
            value = specseq.d2_on_y(page, beta, ns.twist)
            return {
                "class": f"y[{beta.label()}]({ns.twist})",
                "page": 2,
                "value": value.to_json_dict(),
            }
        if action == "transgression":
            beta = _root(config, ns.beta)
            value = specseq.transgression_power(page, beta, ns.twist, ns.j)
            return {
                "class": f"(x[{beta.label()}]({ns.twist}))^{config.p}^{ns.j}",
                "page": 2 * config.p**ns.j + 1,
                "value": value.to_json_dict(),
                "zero": value.is_zero(),
            }
        beta = _root(config, ns.beta)
        if ns.kind == "y":
            target = page.y(beta, ns.twist)
        else:
            target = page.x(beta, ns.twist) ** ns.exponent
        value = specseq.steenrod_apply(page, ns.op, target)
        return {
            "operation": ns.op,
            "argument": target.to_json_dict(),
            "value": value.to_json_dict(),
        }
    if action == "aj-enumerate":
        roots = tuple(
            root for v in ctx.levels() for root in ctx.roots_of_level(v)
        )
        weight = tuple(int(t) for t in ns.weight.split(","))
        monomials = specseq.aj_E1_enumerate(
            roots, config.r, config.p, ns.degree, weight
        )
        return {
            "degree": ns.degree,
            "weight": list(weight),
            "dimension": len(monomials),
            "monomials": [
                {"name": m.name, **specseq.aj_summand_index(m)} for m in monomials
            ],
        }
    if action == "uniqueness":
        beta = _root(config, ns.beta)
        return specseq.uniqueness_witness(ctx, beta).to_json_dict()
    raise ConfigError(f"unknown specseq action {action!r}")


def payload_conjecture(config: RunConfig, N: int, count: bool) -> dict:
    family = commvar.subdiagram_components(N, config.r)
    payload = {
        "N": N,
        "r": config.r,
        "members": [
            {
                "label": d.label(),
                "nodes": sorted(d.nodes),
                "components": d.components,
                "predicted_dim": d.predicted_dim(config.r),
            }
            for d in family.members
        ],
    }
    if count:
        q_list = config.q_list or (3,)
        report = commvar.conjecture_check(N, config.r, q_list, _budget(config))
        payload["evidence"] = report.to_json_dict()
    return payload


def payload_verify_all(config: RunConfig) -> tuple[dict, bool]:
    results = verify.verify_all(seed=config.seed)
    for res in results:
        print(res.line(), file=sys.stderr)
    all_passed = all(r.passed for r in results)
    return (
        {
            "criteria": [r.to_json_dict() for r in results],
            "passed": sum(r.passed for r in results),
            "failed": sum(not r.passed for r in results),
            "known_discrepancies": sorted(
                r.key
                for r in results
                if not r.passed and r.key in verify.KNOWN_DISCREPANCIES
            ),
        },
        all_passed,
    )


# -- argument parsing ---------------------------------------------------------------


def _add_common(parser, model=False):
    parser.add_argument("--family", default="A")
    parser.add_argument("--rank", type=int, default=2)
    parser.add_argument("--J", default="", help="comma list of simple roots (a2,a3)")
    parser.add_argument("--p", type=int, default=3)
    parser.add_argument("--r", type=int, default=1)
    if model:
        parser.add_argument("--i", type=int, default=1, help="central-series start")
        parser.add_argument(
            "--v",
            type=int,
            default=None,
            help="quotient stage m (model Gamma_i/Gamma_m); default: full group",
        )
    parser.add_argument("--output", default=None, help="also write the report here")
    parser.add_argument("--budget", type=int, default=None, dest="budget")
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobkern",
        description="models, varieties and spectral data for unipotent Frobenius kernels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_root = sub.add_parser("rootsys", help="root-system information")
    root_sub = p_root.add_subparsers(dest="action", required=True)
    p_info = root_sub.add_parser("info")
    _add_common(p_info)

    p_model = sub.add_parser("model", help="model algebras and their maps")
    model_sub = p_model.add_subparsers(dest="action", required=True)
    p_build = model_sub.add_parser("build")
    _add_common(p_build, model=True)
    p_build.add_argument("--what", default="sbar", choices=["sstar", "sbar", "q", "coord"])
    p_hilb = model_sub.add_parser("hilbert")
    _add_common(p_hilb, model=True)
    p_hilb.add_argument("--degree", type=int, required=True)
    p_hilb.add_argument("--weight", default=None)
    p_hilb.add_argument("--degree-bound", type=int, default=None)
    p_theta = model_sub.add_parser("theta-check")
    _add_common(p_theta, model=True)
    p_brk = model_sub.add_parser("bracket-check")
    _add_common(p_brk, model=True)
    p_brk.add_argument("--pairs", type=int, default=100)

    p_var = sub.add_parser("variety", help="point counts of the quotient varieties")
    var_sub = p_var.add_subparsers(dest="action", required=True)
    p_count = var_sub.add_parser("count")
    _add_common(p_count)
    p_count.add_argument("--group", required=True, help="U3, U4, ...")
    p_count.add_argument("--q", type=int, required=True)
    p_comp = var_sub.add_parser("components")
    _add_common(p_comp)
    p_comp.add_argument("--N", type=int, default=4)
    p_comp.add_argument("--q", default="3", help="comma list of prime powers")

    p_ss = sub.add_parser("specseq", help="differentials, Steenrod fragment, enumerators")
    ss_sub = p_ss.add_subparsers(dest="action", required=True)
    for name in ("d2", "transgression", "steenrod", "aj-enumerate", "uniqueness"):
        p_act = ss_sub.add_parser(name)
        _add_common(p_act, model=True)
        if name in ("d2", "transgression", "steenrod", "uniqueness"):
            p_act.add_argument("--beta", required=True, help="root label or coeff list")
        if name in ("d2", "transgression", "steenrod"):
            p_act.add_argument("--l", dest="twist", type=int, default=0)
        if name == "transgression":
            p_act.add_argument("--j", type=int, default=0)
        if name == "steenrod":
            p_act.add_argument("--op", required=True, help="P0, bP0, P3, bP9, ...")
            p_act.add_argument("--kind", choices=["y", "x"], default="y")
            p_act.add_argument("--exponent", type=int, default=1)
        if name == "aj-enumerate":
            p_act.add_argument("--degree", type=int, required=True)
            p_act.add_argument("--weight", required=True)

    p_conj = sub.add_parser("conjecture", help="sub-diagram component combinatorics")
    conj_sub = p_conj.add_subparsers(dest="action", required=True)
    p_sd = conj_sub.add_parser("subdiagrams")
    _add_common(p_sd)
    p_sd.add_argument("--N", type=int, required=True)
    p_sd.add_argument("--count", action="store_true", help="also run the point counts")
    p_sd.add_argument("--q", default="3")

    p_verify = sub.add_parser("verify-all", help="run the acceptance criteria")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--output", default=None)

    return parser


def _config_from(ns) -> RunConfig:
    q_list: tuple[int, ...] = ()
    if getattr(ns, "q", None) is not None and isinstance(ns.q, str):
        q_list = tuple(int(t) for t in ns.q.split(",") if t.strip())
    return RunConfig(
        family=getattr(ns, "family", "A"),
        rank=getattr(ns, "rank", 2),
        J=_parse_J(getattr(ns, "J", "")),
        i=getattr(ns, "i", 1),
        v=getattr(ns, "v", None),
        r=getattr(ns, "r", 1),
        p=getattr(ns, "p", 3),
        q_list=q_list,
        degree_bound=getattr(ns, "degree_bound", None),
        enumeration_budget=getattr(ns, "budget", None),
        output=getattr(ns, "output", None),
        seed=getattr(ns, "seed", 0),
    )


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    config = _config_from(ns)
    command = ns.command + (f" {ns.action}" if getattr(ns, "action", None) else "")
    start = time.perf_counter()
    exit_code = 0
    try:
        if ns.command == "rootsys":
            payload = payload_rootsys_info(config)
        elif ns.command == "model":
            if ns.action == "build":
                payload = payload_model_build(config, ns.what)
            elif ns.action == "hilbert":
                payload = payload_model_hilbert(config, ns.degree, ns.weight)
            elif ns.action == "theta-check":
                payload = payload_model_theta_check(config)
            else:
                payload = payload_model_bracket_check(config, ns.pairs)
        elif ns.command == "variety":
            if ns.action == "count":
                payload = payload_variety_count(config, ns.group, ns.q)
            else:
                payload = payload_variety_components(config, ns.N)
        elif ns.command == "specseq":
            payload = payload_specseq(config, ns.action, ns)
        elif ns.command == "conjecture":
            payload = payload_conjecture(config, ns.N, ns.count)
        elif ns.command == "verify-all":
            payload, all_passed = payload_verify_all(config)
            if not all_passed:
                exit_code = 1
        else:  # pragma: no cover - argparse guards this
            raise ConfigError(f"unknown command {ns.command!r}")
    except BudgetError as exc:
        _emit_error(command, config, exc)
        return 3
    except (ConfigError, DomainError) as exc:
        _emit_error(command, config, exc)
        return 2
    except CheckFailure as exc:
        _emit_error(command, config, exc)
        return 1
    except FrobkernError as exc:  # unsupported operations and the rest
        _emit_error(command, config, exc)
        return 2
    report = {
        "schema_version": 1,
        "command": command,
        "config": config.to_json_dict(),
        "payload": payload,
        "wall_time_s": round(time.perf_counter() - start, 4),
        "budget": {
            "enumeration_budget": _budget(config),
            "env_override": os.environ.get(ENV_BUDGET),
        },
    }
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text + "\n")
    return exit_code


def _emit_error(command: str, config: RunConfig, exc: FrobkernError) -> None:
    report = {
        "schema_version": 1,
        "command": command,
        "config": config.to_json_dict(),
        "error": {"code": exc.code, "message": str(exc)},
    }
    print(json.dumps(report, sort_keys=True, indent=2))


def main() -> None:  # console entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
