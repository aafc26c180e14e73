"""Command line interface.

Every command prints one JSON document on stdout.  Exit codes: 0 success
or positive verdict, 1 negative verdict or failed validation, 2
inconclusive, 64 usage error, 65 malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import complex as cx
from .deciders import decide_bounded_star_preserving, decide_rotation_commuting
from .dynamics import RunConfig, run, write_history
from .io import MalformedInput, graph_to_json, load_graph, save_graph, witness_to_json
from .names import from_json, to_json
from .paths import geometric_distance, graph_distance, is_bounded_star, max_monotonous_length
from .portgraph import GraphError, PortGraph, rotation_equivalent, validate
from .rules import NoConjugateError, RuleError, load_rule, materialize, rule_to_json, symmetrize

EX_OK, EX_NEGATIVE, EX_INCONCLUSIVE, EX_USAGE, EX_DATAERR = 0, 1, 2, 64, 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EX_USAGE)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=False)
    sys.stdout.write("\n")


def _vertex(text: str):
    if text.startswith("["):
        return from_json(json.loads(text))
    return text


def _distance_json(d):
    return None if d == math.inf else d


def cmd_validate(args) -> int:
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
        g = PortGraph({from_json(v["name"]): v.get("label") for v in obj["vertices"]},
                      [tuple((from_json(n), p) for n, p in e) for e in obj.get("edges", [])])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise MalformedInput(str(exc)) from exc
    problems = validate(g, obj.get("sigma"))
    if len(g.edges) != len(obj.get("edges", [])):
        problems.append("duplicate edge")
    _emit({"ok": not problems, "violations": problems})
    return EX_OK if not problems else EX_NEGATIVE


def cmd_run(args) -> int:
    rule = load_rule(args.rule)
    g = load_graph(args.input)
    cfg = RunConfig(rule, args.steps, canonicalize_names=not args.keep_names,
                    record_history=args.history is not None)
    out, history = run(cfg, g)
    if args.history:
        write_history(args.history, cfg, history)
    if args.output:
        save_graph(out, args.output, rule.sigma)
        _emit({"rule": rule.name, "steps": args.steps, "vertices": len(out),
               "edges": len(out.edges), "output": args.output})
    else:
        _emit(graph_to_json(out, rule.sigma))
    return EX_OK


def cmd_complex(args) -> int:
    g = load_graph(args.input)
    _emit(cx.report(cx.interpret(g, literal_segments=args.literal_def2)))
    return EX_OK


def cmd_distance(args) -> int:
    g = load_graph(args.input)
    u, v = _vertex(args.source), _vertex(args.target)
    _emit({"graph_distance": _distance_json(graph_distance(g, u, v)),
           "geometric_distance": _distance_json(geometric_distance(g, u, v))})
    return EX_OK


def cmd_bounded_star(args) -> int:
    g = load_graph(args.input)
    ok, witness = is_bounded_star(g, args.bound)
    longest = max_monotonous_length(g)
    out = {"bounded_star": ok, "bound": args.bound,
           "max_monotonous_length": longest.length, "cyclic": longest.cyclic}
    if witness is not None:
        out["witness"] = witness_to_json(witness)
    _emit(out)
    return EX_OK if ok else EX_NEGATIVE


def cmd_equiv(args) -> int:
    g, h = load_graph(args.input), load_graph(args.other)
    m = rotation_equivalent(g, h)
    if m is None:
        _emit({"equivalent": False})
        return EX_NEGATIVE
    _emit({"equivalent": True, "rotations": [[to_json(v), t] for v, t in sorted(m.items(), key=lambda i: repr(i[0]))]})
    return EX_OK


def cmd_decide_rc(args) -> int:
    verdict = decide_rotation_commuting(load_rule(args.rule))
    _emit(verdict.to_json())
    return verdict.exit_code


def cmd_decide_bsp(args) -> int:
    verdict = decide_bounded_star_preserving(load_rule(args.rule), args.bound, mode=args.mode,
                                             seed=args.seed)
    _emit(verdict.to_json())
    return verdict.exit_code


def cmd_symmetrize(args) -> int:
    rule = load_rule(args.rule)
    try:
        table = materialize(symmetrize(rule))
    except NoConjugateError as exc:
        out = graph_to_json(exc.disk.graph, rule.sigma)
        out["center"] = to_json(exc.disk.center)
        _emit({"error": "NoConjugate", "disk": out,
               "rotation": [[to_json(v), t] for v, t in sorted(exc.rotation.items())]})
        return EX_NEGATIVE
    doc = rule_to_json(table)
    with open(args.output, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")
    _emit({"rule": table.name, "entries": len(doc["table"]), "output": args.output})
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ccd", description="Causal complexes dynamics toolkit")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled modes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a graph file")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="iterate a rule on a graph")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--rule", required=True, help="built-in name or rule JSON path")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("-o", "--output")
    p.add_argument("--history")
    p.add_argument("--keep-names", action="store_true", help="do not flatten derived names between steps")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("complex", help="interpret a graph as a complex")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--literal-def2", action="store_true",
                   help="segments from self-edges only, as the definition is literally worded")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("distance", help="graph and geometric distance between two vertices")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("bounded-star", help="check the bounded-star property")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_bounded_star)

    p = sub.add_parser("equiv", help="rotation equivalence of two graphs")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-j", "--other", required=True)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("decide-rc", help="is the rule rotation-commuting?")
    p.add_argument("--rule", required=True)
    p.set_defaults(func=cmd_decide_rc)

    p = sub.add_parser("decide-bsp", help="is the rule bounded-star preserving?")
    p.add_argument("--rule", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--mode", default="exhaustive", help="exhaustive or sampled:N")
    p.set_defaults(func=cmd_decide_bsp)

    p = sub.add_parser("symmetrize", help="write the rotation-symmetrized rule table")
    p.add_argument("--rule", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_symmetrize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "mode", "exhaustive") != "exhaustive" and not str(args.mode).startswith("sampled"):
        print(f"ccd: error: unknown mode {args.mode!r}", file=sys.stderr)
        return EX_USAGE
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"ccd: malformed input: {exc}", file=sys.stderr)
        _emit({"error": "malformed input", "message": str(exc)})
        return EX_DATAERR
    except (RuleError, GraphError, OSError) as exc:
        print(f"ccd: {exc}", file=sys.stderr)
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
