"""Command-line entry point.

One binary, subcommand style.  Every report has a ``--json`` twin with a
stable, versioned schema.  Exit codes: 0 success/verified, 1 verification
failure or negative verdict, 2 usage error, 3 budget-inconclusive or
undecided.

Default search budgets can be overridden with the environment variables
STSKIT_BUDGET_NODES and STSKIT_BUDGET_SECONDS, and per-call with the
``--budget-nodes`` / ``--budget-seconds`` flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    COMPLETE,
    SearchBudget,
    chromatic_index_exact,
    chromatic_index_heuristic,
    enumerate_parallel_classes,
    max_disjoint_pcs,
    pc_bound_mod3,
    pc_bound_ws,
    theorem1_pipeline,
)
from .constructions import (
    bose,
    conjugate_square,
    half_sum_square,
    random_permutation,
    sts33_fixture,
    wilson_schreiber,
)
from .core import (
    format_colouring,
    format_sts,
    parse_colouring,
    parse_sts,
    verify_colouring,
    verify_sts,
)
from .factorisation import factorise_G, format_factorisation
from .generator import GenerationError, batch_seed, colouring_survey, random_sts
from .numtheory import number_profile, scan_profiles
from .rng import substream

SCHEMA = "stskit-report/1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _budget(args: argparse.Namespace) -> SearchBudget:
    nodes = getattr(args, "budget_nodes", None)
    seconds = getattr(args, "budget_seconds", None)
    if nodes is None:
        nodes = int(os.environ.get("STSKIT_BUDGET_NODES", 100_000_000))
    if seconds is None:
        seconds = float(os.environ.get("STSKIT_BUDGET_SECONDS", 60.0))
    return SearchBudget(max_nodes=nodes, max_seconds=float(seconds))


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e.strerror}") from None


def _read_system(path: str):
    return parse_sts(_read_text(path))


def _write(path: str | None, text: str) -> None:
    if path is not None:
        Path(path).write_text(text)


def _emit(args: argparse.Namespace, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------
# handlers


def _cmd_numtheory_profile(args) -> int:
    p = number_profile(args.n)
    payload = {
        "command": "numtheory profile", "n": p.n, "phi": p.phi,
        "sub_order": p.sub_order, "g": p.g, "f": p.f, "psi": p.psi,
        "psi_star": p.psi_star, "divisors_gt1": list(p.divisors_gt1),
    }
    lines = [f"n={p.n}", f"phi={p.phi}", f"sub_order={p.sub_order}",
             f"g={p.g}", f"f={p.f}", f"psi={p.psi}", f"psi_star={p.psi_star}",
             "divisors_gt1=" + ",".join(str(d) for d in p.divisors_gt1)]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_numtheory_scan(args) -> int:
    rows = scan_profiles(args.limit, threads=args.threads)
    if args.all:
        picked = rows
        kind = "all"
    elif args.negative_psi:
        picked = [r for r in rows if r.psi < 0]
        kind = "negative-psi"
    else:
        picked = [r for r in rows if r.psi_star <= 0]
        kind = "exceptions"
    payload = {
        "command": "numtheory scan", "limit": args.limit, "kind": kind,
        "rows": [list(r) for r in picked],
        "exceptions": [r.n for r in rows if r.psi_star <= 0],
    }
    lines = ["n\tphi\tf\tpsi\tpsi_star"]
    lines.extend(f"{r.n}\t{r.phi}\t{r.f}\t{r.psi}\t{r.psi_star}" for r in picked)
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_factorise(args) -> int:
    fact = factorise_G(args.n)
    text = format_factorisation(fact)
    _write(args.out, text)
    payload = {
        "command": "factorise", "n": args.n,
        "edges": len(fact.graph.edges),
        "factor_sizes": [len(f) for f in fact.factors],
        "out": args.out,
    }
    lines = [f"G({args.n}): {len(fact.graph.edges)} edges in 3 factors of "
             f"{len(fact.factors[0])}"]
    if args.out:
        lines.append(f"wrote {args.out}")
    else:
        lines.append(text.rstrip("\n"))
    _emit(args, payload, lines)
    return EXIT_OK


def _construct_payload(args, labelled, what: str) -> int:
    system = labelled.system
    report = verify_sts(system)
    _write(args.out, format_sts(system))
    payload = {
        "command": what, "v": system.v, "triples": system.b,
        "verified": report.ok, "out": args.out,
        "families": {name: len(idx) for name, idx in labelled.families.items()},
    }
    lines = [f"{labelled.tag}: order {system.v}, {system.b} triples, "
             f"verify {'ok' if report.ok else 'FAILED: ' + str(report.first_violation)}"]
    if args.out:
        lines.append(f"wrote {args.out}")
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_construct_ws(args) -> int:
    return _construct_payload(args, wilson_schreiber(args.n), "construct wilson-schreiber")


def _cmd_construct_bose(args) -> int:
    base = half_sum_square(args.n)
    if args.square == "half-sum":
        squares = (base, base, base)
    else:
        squares = tuple(
            conjugate_square(base, random_permutation(args.n, substream(args.seed, "bose", i)))
            for i in range(3)
        )
    return _construct_payload(args, bose(*squares), "construct bose")


def _cmd_fixture(args) -> int:
    labelled, colouring = sts33_fixture()
    report = verify_sts(labelled.system)
    creport = verify_colouring(labelled.system, colouring)
    _write(args.out, format_sts(labelled.system))
    _write(args.colouring_out, format_colouring(colouring))
    ok = report.ok and creport.ok
    payload = {
        "command": "fixture sts33", "v": 33, "triples": labelled.system.b,
        "classes": creport.n_classes, "verified": ok,
        "out": args.out, "colouring_out": args.colouring_out,
    }
    lines = [f"sts33 fixture: 176 triples, colouring with {creport.n_classes} classes, "
             f"verify {'ok' if ok else 'FAILED'}"]
    for path in (args.out, args.colouring_out):
        if path:
            lines.append(f"wrote {path}")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args) -> int:
    system = _read_system(args.infile)
    report = verify_sts(system)
    payload = {
        "command": "verify", "v": system.v, "triples": system.b,
        "ok": report.ok, "first_violation": report.first_violation,
        "violations": report.violation_count,
    }
    lines = [f"order {system.v}, {system.b} triples: "
             f"{'ok' if report.ok else 'FAILED: ' + str(report.first_violation)}"]
    ok = report.ok
    if args.colouring is not None:
        colouring = parse_colouring(_read_text(args.colouring), system)
        creport = verify_colouring(system, colouring)
        payload["colouring_ok"] = creport.ok
        payload["classes"] = creport.n_classes
        lines.append(f"colouring with {creport.n_classes} classes: "
                     f"{'ok' if creport.ok else 'FAILED: ' + str(creport.first_violation)}")
        ok = ok and creport.ok
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_analyze_pcs(args) -> int:
    system = _read_system(args.infile)
    budget = _budget(args)
    if args.max_disjoint:
        result = max_disjoint_pcs(system, budget)
        payload = {
            "command": "analyze pcs", "v": system.v,
            "parallel_classes": result.n_parallel_classes,
            "max_disjoint": result.size, "upper_bound": result.upper_bound,
            "status": result.status, "nodes": result.nodes,
            "witness": [list(c.indices) for c in result.witness],
        }
        lines = [f"{result.n_parallel_classes} parallel classes; max disjoint "
                 f"{result.size} (upper bound {result.upper_bound}, {result.status})"]
        status = result.status
    else:
        enum = enumerate_parallel_classes(system, budget)
        payload = {
            "command": "analyze pcs", "v": system.v,
            "parallel_classes": len(enum.classes), "status": enum.status,
            "nodes": enum.nodes,
            "classes": [list(c.indices) for c in enum.classes],
        }
        lines = [f"{len(enum.classes)} parallel classes ({enum.status})"]
        status = enum.status
    _emit(args, payload, lines)
    return EXIT_OK if status == COMPLETE else EXIT_INCONCLUSIVE


def _cmd_analyze_chi(args) -> int:
    system = _read_system(args.infile)
    if args.heuristic:
        if args.target is None:
            raise ValueError("--heuristic requires --target")
        colouring = chromatic_index_heuristic(system, args.target, seed=args.seed,
                                              restarts=args.restarts)
        ok = colouring is not None
        payload = {
            "command": "analyze chi", "mode": "heuristic", "v": system.v,
            "target": args.target, "success": ok,
            "classes": colouring.n_classes if ok else None,
        }
        lines = [f"heuristic target {args.target}: "
                 f"{'success with ' + str(colouring.n_classes) + ' classes' if ok else 'failure'}"]
        _emit(args, payload, lines)
        return EXIT_OK if ok else EXIT_FAIL

    witness = None
    if args.witness_colouring is not None:
        witness = parse_colouring(_read_text(args.witness_colouring), system)
    cert = None
    if args.mod3_lower:
        cert = pc_bound_mod3(system, [p % 3 for p in range(system.v)])
    result = chromatic_index_exact(system, _budget(args), pc_certificate=cert,
                                   upper_witness=witness)
    payload = {
        "command": "analyze chi", "mode": "exact", "v": system.v,
        "lower": result.lower, "upper": result.upper,
        "status": result.status, "nodes": result.nodes,
        "value": result.lower if result.status == COMPLETE else None,
    }
    if result.status == COMPLETE:
        lines = [f"chromatic index {result.value}"]
    else:
        lines = [f"chromatic index in [{result.lower}, {result.upper}] (inconclusive)"]
    _emit(args, payload, lines)
    return EXIT_OK if result.status == COMPLETE else EXIT_INCONCLUSIVE


def _mod3_bound_auto(system):
    # Candidate weightings: the point mod 3 (cyclic layouts) and the point's
    # third of the range (layered layouts).  Either, when admissible, proves
    # a correct bound.
    candidates = [[p % 3 for p in range(system.v)]]
    if system.v % 3 == 0:
        candidates.append([p // (system.v // 3) for p in range(system.v)])
    last_error: Exception | None = None
    for weights in candidates:
        try:
            return pc_bound_mod3(system, weights)
        except ValueError as e:
            last_error = e
    raise ValueError(f"no admissible mod-3 weighting found: {last_error}")


def _cmd_analyze_bound(args) -> int:
    system = _read_system(args.infile)
    if args.method == "mod3":
        cert = _mod3_bound_auto(system)
    else:
        n = system.v - 2
        if n % 6 != 1:
            raise ValueError(f"ws bound needs order v with v-2 = 1 mod 6, got v={system.v}")
        fact = factorise_G(n)
        canonical = wilson_schreiber(n, fact)
        if canonical.system != system:
            raise ValueError("input system is not the canonical construction "
                             f"of order {system.v}; the ws bound does not apply")
        cert = pc_bound_ws(n, fact)
    payload = {
        "command": "analyze bound", "v": system.v, "method": cert.method,
        "bound": cert.bound,
        "witness": {k: (list(v) if isinstance(v, tuple) else v)
                    for k, v in cert.witness.items()},
    }
    lines = [f"at most {cert.bound} disjoint parallel classes ({cert.method})"]
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_theorem1(args) -> int:
    report = theorem1_pipeline(args.v)
    payload = {
        "command": "theorem1", "v": report.v, "route": report.route,
        "holds": report.holds, "chi_lower": report.chi_lower,
        "chi_exact": report.chi_exact, "pc_bound": report.pc_bound,
        "f": report.f_value, "message": report.message,
    }
    lines = [f"v={report.v} [{report.route}] {report.message}"]
    _emit(args, payload, lines)
    if report.holds is None:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if report.holds else EXIT_FAIL


def _cmd_generate(args) -> int:
    written = []
    orders = []
    for idx in range(args.count):
        system = random_sts(args.v, batch_seed(args.seed, idx))
        orders.append(system.b)
        if args.out_dir:
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"sts-v{args.v}-{idx}.sts"
            path.write_text(format_sts(system))
            written.append(str(path))
    payload = {
        "command": "generate", "v": args.v, "count": args.count,
        "seed": args.seed, "triples": orders, "files": written,
    }
    lines = [f"generated {args.count} system(s) of order {args.v}"]
    lines.extend(f"wrote {p}" for p in written)
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_survey(args) -> int:
    result = colouring_survey(args.v, args.count, args.seed, restarts=args.restarts)
    payload = {
        "command": "survey colouring", "v": result.v, "m": result.m,
        "count": args.count, "seed": args.seed, "counts": result.counts,
        "generator_failures": result.generator_failures,
    }
    lines = [f"order {args.v} (m={result.m}), {args.count} systems:"]
    lines.extend(f"  {label}: {result.counts[label]}"
                 for label in ("m", "m+1", "m+2", "fail"))
    if result.generator_failures:
        lines.append(f"  generator failures: {result.generator_failures}")
    _emit(args, payload, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-nodes", type=int, default=None,
                   help="search node cap (env STSKIT_BUDGET_NODES)")
    p.add_argument("--budget-seconds", type=float, default=None,
                   help="search time cap (env STSKIT_BUDGET_SECONDS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stskit",
        description="Steiner triple systems with few parallel classes: "
                    "construct, verify, bound, colour.")
    parser.add_argument("--version", action="version", version=f"stskit {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def new(name: str, handler, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(handler=handler)
        return p

    p = new("numtheory", None, help="profiles and scans of the bound arithmetic")
    nsub = p.add_subparsers(dest="subcommand", metavar="subcommand", required=True)
    q = nsub.add_parser("profile", help="arithmetic profile of one n")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_numtheory_profile)
    q = nsub.add_parser("scan", help="scan n <= limit (TSV: n phi f psi psi_star)")
    q.add_argument("--limit", type=int, required=True)
    q.add_argument("--negative-psi", action="store_true",
                   help="rows with psi(n) < 0 instead of the psi* <= 0 exceptions")
    q.add_argument("--all", action="store_true", help="every scanned n")
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_numtheory_scan)

    p = new("factorise", _cmd_factorise, help="1-factorisation of G(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)

    p = new("construct", None, help="build a triple system")
    csub = p.add_subparsers(dest="subcommand", metavar="subcommand", required=True)
    q = csub.add_parser("wilson-schreiber", help="order n+2 from G(n)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--out", default=None)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_construct_ws)
    q = csub.add_parser("bose", help="order 3n from idempotent symmetric squares")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--square", choices=("half-sum", "conjugate"), default="half-sum")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", default=None)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_construct_bose)

    p = new("fixture", None, help="embedded example systems")
    fsub = p.add_subparsers(dest="subcommand", metavar="subcommand", required=True)
    q = fsub.add_parser("sts33", help="the order-33 system and its 18-class colouring")
    q.add_argument("--out", default=None)
    q.add_argument("--colouring-out", default=None)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_fixture)

    p = new("verify", _cmd_verify, help="verify an STS file (and optional colouring)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--colouring", default=None)

    p = new("analyze", None, help="parallel classes, bounds, chromatic index")
    asub = p.add_subparsers(dest="subcommand", metavar="subcommand", required=True)
    q = asub.add_parser("pcs", help="enumerate parallel classes / max disjoint set")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--max-disjoint", action="store_true")
    _add_budget_flags(q)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_analyze_pcs)
    q = asub.add_parser("chi", help="chromatic index, exact or heuristic")
    q.add_argument("--in", dest="infile", required=True)
    mode = q.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    q.add_argument("--target", type=int, default=None)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--restarts", type=int, default=12)
    q.add_argument("--witness-colouring", default=None,
                   help="colouring file used as an upper-bound witness (exact mode)")
    q.add_argument("--mod3-lower", action="store_true",
                   help="raise the lower bound via the p mod 3 weighting (exact mode)")
    _add_budget_flags(q)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_analyze_chi)
    q = asub.add_parser("bound", help="disjoint parallel-class upper-bound certificate")
    q.add_argument("--in", dest="infile", required=True)
    q.add_argument("--method", choices=("mod3", "ws"), required=True)
    q.add_argument("--weighting", choices=("auto",), default="auto")
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_analyze_bound)

    p = new("theorem1", _cmd_theorem1, help="high-chromatic-index verdict for order v")
    p.add_argument("--v", type=int, required=True)

    p = new("generate", _cmd_generate, help="random systems by hill climbing")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=None)

    p = new("survey", None, help="colouring-difficulty survey over random systems")
    ssub = p.add_subparsers(dest="subcommand", metavar="subcommand", required=True)
    q = ssub.add_parser("colouring", help="least reachable target per random system")
    q.add_argument("--v", type=int, required=True)
    q.add_argument("--count", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--restarts", type=int, default=6)
    q.add_argument("--json", action="store_true")
    q.set_defaults(handler=_cmd_survey)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = getattr(args, "handler", None)
    if handler is None:
        parser.print_help()
        return EXIT_USAGE
    try:
        return handler(args)
    except (ValueError, GenerationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
