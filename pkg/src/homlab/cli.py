"""Command line front end.

Every command prints one JSON report on stdout with sorted keys:
``{"command", "inputs", "result", "witness", "elapsed_ms"}``. Exit codes:
0 computed (whatever the verdict), 2 input error, 3 budget exceeded,
4 a theorem guard failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import choice, cycles, duality, experiments, gadgets, power
from .core import complete_graph
from .errors import BudgetExceeded, InputError, TheoremGuardError
from .filters import (
    FiniteFilter,
    extend_to_ultrafilter,
    filter_from_generators,
    parse_generators,
    parse_indices,
    trivial_filter,
)
from .io import dump_structure, load_assignment, load_structure, structure_to_json
from .solver import arc_consistency, hom_enumerate, hom_exists

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_GUARD = 0, 2, 3, 4

DEFAULT_CONFIG = {
    "max_power_size": power.DEFAULT_POWER_BUDGET,
    "max_subgroup_degree": choice.DEFAULT_SUBGROUP_DEGREE,
    "max_pset_universe": duality.DEFAULT_PSET_BUDGET,
}


def load_config(path) -> dict:
    """Read ``key = value`` lines with integer values; '#' starts a comment."""
    config = dict(DEFAULT_CONFIG)
    if path is None:
        return config
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or key not in DEFAULT_CONFIG:
            raise InputError(f"{path}:{n}: expected one of {sorted(DEFAULT_CONFIG)} = <int>")
        try:
            config[key] = int(value)
        except ValueError as exc:
            raise InputError(f"{path}:{n}: {key} must be an integer") from exc
    return config


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.result = None
        self.witness = None

    def render(self, elapsed_ms: int) -> str:
        body = {"command": self.command, "inputs": self.inputs, "result": self.result,
                "witness": self.witness, "elapsed_ms": elapsed_ms}
        return json.dumps(body, sort_keys=True, indent=2)


def _filter_from_args(args) -> FiniteFilter:
    size = args.index_size
    if size is None or size < 1:
        raise InputError("--index-size must be a positive integer")
    if args.filter_base is not None and args.filter_gens is not None:
        raise InputError("give --filter-base or --filter-gens, not both")
    if args.filter_base is not None:
        return filter_from_generators(size, [parse_indices(args.filter_base)])
    if args.filter_gens is not None:
        return filter_from_generators(size, parse_generators(args.filter_gens))
    return trivial_filter(size)


def _filter_json(f: FiniteFilter) -> dict:
    return {"index_size": f.size, "base": sorted(f.base)}


def _assignment(h) -> dict | None:
    return None if h is None else h.to_json()["assignment"]


# Handlers fill in report.result / report.witness.

def cmd_hom(args, cfg, report):
    b, a = load_structure(args.source), load_structure(args.target)
    if args.all:
        homs = hom_enumerate(b, a, args.limit)
        report.result = {"count": len(homs), "truncated": homs.truncated}
        report.witness = [_assignment(h) for h in homs]
    else:
        h = hom_exists(b, a)
        report.witness = _assignment(h)
        report.result = {"exists": h is not None, "witness": report.witness}


def cmd_ac(args, cfg, report):
    state = arc_consistency(load_structure(args.source), load_structure(args.target))
    report.result = {"wiped_out": state.wiped_out}
    report.witness = state.to_json()


def cmd_width1(args, cfg, report):
    a = load_structure(args.structure)
    verdict = duality.width_one(a, cfg["max_pset_universe"])
    report.result = {"width_one": verdict.holds, "pset_elements": verdict.pset.derived.size}
    report.witness = _assignment(verdict.witness)


def cmd_power(args, cfg, report):
    a = load_structure(args.structure)
    f = _filter_from_args(args)
    report.inputs["filter"] = _filter_json(f)
    size = power.power_size(a, f.size)
    report.inputs["would_be_size"] = size
    p = power.tolerant_power(a, f, cfg["max_power_size"])
    result = {"elements": p.carrier.size,
              "tuples": {n: len(t) for n, t in sorted(p.carrier.relations.items())},
              "lex_sum": power.lex_sum_check(p)}
    witness = {}
    q = None
    if args.quotient:
        q = power.quotient_by_agreement(p)
        result["classes"] = q.quotient.size
    if args.out:
        dump_structure(p.carrier, args.out)
        result["carrier_file"] = str(args.out)
        if q is not None:
            qpath = Path(args.out).with_suffix(".quotient.json")
            dump_structure(q.quotient, qpath)
            result["quotient_file"] = str(qpath)
    else:
        witness["carrier"] = structure_to_json(p.carrier)
        if q is not None:
            witness["quotient"] = structure_to_json(q.quotient)
    report.result = result
    report.witness = witness or None


def cmd_ppdef(args, cfg, report):
    g = gadgets.Gadget(load_structure(args.gadget), args.x, args.y)
    a = load_structure(args.target)
    rel = gadgets.pp_relation(g, a)
    report.result = {"relation": sorted(list(pair) for pair in rel)}
    if args.check_clique:
        report.result["defines_clique"] = rel == gadgets.inequality(a)


def cmd_extract(args, cfg, report):
    f = _filter_from_args(args)
    report.inputs["filter"] = _filter_json(f)
    kn = complete_graph(args.n)
    p = power.tolerant_power(kn, f, cfg["max_power_size"])
    if args.hom:
        phi = load_assignment(args.hom)
    else:
        phi = hom_exists(p.carrier, kn)
        if phi is None:
            raise TheoremGuardError("clique power has no coloring")
    w = gadgets.extract_ultrafilter(p, phi)
    report.result = w.to_json()
    report.witness = {"ultrafilter": _filter_json(w.extracted)}


def cmd_crt(args, cfg, report):
    h = cycles.crt_isomorphism(args.p, args.q)
    report.result = {"isomorphism": True, "order": args.p * args.q}
    report.witness = _assignment(h)


def cmd_census(args, cfg, report):
    f = _filter_from_args(args)
    report.inputs["filter"] = _filter_json(f)
    p = power.tolerant_power(cycles.directed_cycle(args.n), f, cfg["max_power_size"])
    c = cycles.component_census(power.quotient_by_agreement(p))
    report.result = {"components": c.count, "expected": args.n ** (len(f.base) - 1)}
    report.witness = c.to_json()


def cmd_kw(args, cfg, report):
    family = [part.split(",") for part in args.sets.split(";")]
    inst = cycles.choice_filter(family, cfg["max_power_size"])
    if inst.p != args.p:
        raise InputError(f"sets have size {inst.p}, not {args.p}")
    out = []
    for u in extend_to_ultrafilter(inst.filter):
        (i0,) = u.base
        res = cycles.distinguished_subset(inst, cycles.evaluation_coloring(i0))
        out.append({"ultrafilter_at": inst.describe(i0), "subsets": res.to_json(inst)})
    report.result = {"index_size": len(inst.index), "total_choice_functions": len(inst.filter.base),
                     "colorings": len(out)}
    report.witness = out


def cmd_orderhom(args, cfg, report):
    f = _filter_from_args(args)
    report.inputs["filter"] = _filter_json(f)
    oh = cycles.order_structure_hom(f, cfg["max_power_size"])
    report.result = {"valid": True, "classes": oh.quotient.quotient.size}
    report.witness = oh.to_json()


def cmd_gauntt(args, cfg, report):
    allowed = sorted({int(v) for s in args.set for v in s.split(",") if v.strip()})
    report.inputs["set"] = allowed
    res = choice.gauntt_check(args.m, allowed, cfg["max_subgroup_degree"])
    report.result = {"holds": res.holds}
    report.witness = res.to_json()


def cmd_primesum(args, cfg, report):
    report.result = {"holds": choice.prime_sum_criterion(args.m, args.n)}
    report.witness = [list(parts) for parts in choice.prime_partitions(args.m)]


def cmd_experiment(args, cfg, report):
    name = args.name
    if name == "lauchli-roundtrip":
        report.result = experiments.lauchli_roundtrip(args.n, args.index_size or 2)
    elif name == "com-ft-roundtrip":
        report.result = experiments.com_ft_roundtrip(args.count, args.seed)
    elif name == "pp-lift":
        report.result = experiments.pp_lift(args.index_size or 2)
    elif name == "pk-induction":
        base = None if args.filter_base is None else sorted(parse_indices(args.filter_base))
        report.result = experiments.pk_induction(args.p, args.k, args.index_size or 2, base)


def _add_filter_args(p, required=True):
    p.add_argument("--index-size", type=int, required=required)
    p.add_argument("--filter-base", help="base of the filter, e.g. 0,2")
    p.add_argument("--filter-gens", help="generators, e.g. '0,1;1,2'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homlab", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="budget file of key = value lines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", help="find (or enumerate) homomorphisms B -> A")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--all", action="store_true")
    p.add_argument("--limit", type=int, default=1000)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("ac", help="arc-consistency fixpoint of B against A")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_ac)

    p = sub.add_parser("width1", help="decide width one via P(A) -> A")
    p.add_argument("structure")
    p.set_defaults(func=cmd_width1)

    p = sub.add_parser("power", help="build a filter-tolerant power")
    p.add_argument("structure")
    _add_filter_args(p)
    p.add_argument("--quotient", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("ppdef", help="relation defined by a gadget")
    p.add_argument("gadget")
    p.add_argument("target")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--check-clique", action="store_true")
    p.set_defaults(func=cmd_ppdef)

    p = sub.add_parser("extract", help="ultrafilter from a coloring of (K_n)^I_F")
    p.add_argument("--n", type=int, default=3)
    _add_filter_args(p)
    p.add_argument("--hom", help="coloring file; defaults to the solver's first coloring")
    p.set_defaults(func=cmd_extract)

    cyc = sub.add_parser("cycles", help="directed-cycle constructions")
    csub = cyc.add_subparsers(dest="cycles_command", required=True)
    p = csub.add_parser("crt")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_crt)
    p = csub.add_parser("census")
    p.add_argument("--n", type=int, required=True)
    _add_filter_args(p)
    p.set_defaults(func=cmd_census)
    p = csub.add_parser("kw")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--sets", required=True, help="e.g. 'a,b;c,d'")
    p.set_defaults(func=cmd_kw)
    p = csub.add_parser("orderhom")
    _add_filter_args(p)
    p.set_defaults(func=cmd_orderhom)

    ch = sub.add_parser("choice", help="choice-axiom criteria")
    chsub = ch.add_subparsers(dest="choice_command", required=True)
    p = chsub.add_parser("gauntt")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--set", action="append", required=True, help="member(s) of S; repeatable")
    p.set_defaults(func=cmd_gauntt)
    p = chsub.add_parser("primesum")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_primesum)

    p = sub.add_parser("experiment", help="scripted experiments")
    p.add_argument("name", choices=["lauchli-roundtrip", "com-ft-roundtrip", "pp-lift",
                                    "pk-induction"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--index-size", type=int)
    p.add_argument("--filter-base")
    p.add_argument("--count", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_experiment)
    return parser


def _inputs(args) -> dict:
    skip = {"func", "config", "command", "cycles_command", "choice_command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join(x for x in (args.command, getattr(args, "cycles_command", None),
                                   getattr(args, "choice_command", None)) if x)
    report = Report(command, _inputs(args))
    start = time.perf_counter()
    code = EXIT_OK
    try:
        cfg = load_config(args.config)
        args.func(args, cfg, report)
    except BudgetExceeded as exc:
        code = EXIT_BUDGET
        report.result = {"error": str(exc), "kind": "budget", "size": exc.size,
                         "budget": exc.budget}
    except TheoremGuardError as exc:
        code = EXIT_GUARD
        report.result = {"error": str(exc), "kind": "guard"}
    except InputError as exc:
        code = EXIT_INPUT
        report.result = {"error": str(exc), "kind": "input"}
    if code:
        print(f"homlab: {report.result['error']}", file=sys.stderr)
    elapsed = int((time.perf_counter() - start) * 1000)
    print(report.render(elapsed))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
