"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 validation failure, 4 numeric-mode
conflict, 5 I/O error. Failures also print ``{"error": ..., "message": ...}``
on standard error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, io
from . import numeric as num
from .errors import KmsflowError, NumericModeConflict, SpecParseError
from .flow import classify_vertices, vertex_partition
from .graph import validate_graph
from .harmonic import check_harmonic, extend_down
from .links import link_matrix
from .paths import PathSampler, ergodic_experiment, make_rng
from .realize import parse_style, realize_link, verify_realization

EXIT_PARSE, EXIT_VALIDATION, EXIT_MODE, EXIT_IO = 2, 3, 4, 5


class ValidationFailure(Exception):
    def __init__(self, payload: str):
        super().__init__("validation failed")
        self.payload = payload


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError:
        raise
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path}: {exc}") from exc


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _mode(args) -> str:
    return "auto" if args.mode is None else args.mode


def _load_flow(args):
    return io.flow_from_dict(_read_json(args.input), _mode(args))


def cmd_validate(args) -> int:
    g = io.graph_from_dict(_read_json(args.input))
    report = [{"axiom": v.axiom, "message": v.message} for v in validate_graph(g)]
    out = io.dumps({"valid": not report, "violations": report}, indent=2)
    if report:
        raise ValidationFailure(out)
    _emit(args, out)
    return 0


def cmd_partition(args) -> int:
    f = _load_flow(args)
    table = vertex_partition(f)
    levels = []
    for n in range(f.graph.depth + 1):
        fin, inf = classify_vertices(f, n)
        levels.append({"level": n, "finite": [z.label for z in fin], "infinite": [z.label for z in inf]})
    out = {"mode": f.mode, "beta": num.json_number(f.beta),
           "vertex_Z": io.values_to_dict(table.vertex_z), "levels": levels}
    _emit(args, io.dumps(out, indent=2))
    return 0


def cmd_link(args) -> int:
    f = _load_flow(args)
    upper = f.graph.depth if args.upper is None else args.upper
    lower = upper - 1 if args.lower is None else args.lower
    mat = link_matrix(f, upper, lower)
    if args.format == "json":
        _emit(args, io.dumps(io.link_matrix_to_dict(mat), indent=2))
    else:
        _emit(args, io.link_matrix_to_csv(mat))
    return 0


def cmd_harmonic(args) -> int:
    f = _load_flow(args)
    if args.action == "check":
        nu = io.system_from_dict(_read_json(args.system), f.graph, f.mode)
        rep = check_harmonic(f, nu, args.tol)
        worst = rep.worst if rep.max_residual else None
        out = io.dumps({"passed": rep.passed, "mode": f.mode, "max_residual": rep.max_residual,
                        "worst_vertex": None if worst is None else [worst.level, worst.label],
                        "level_masses": nu.level_masses()}, indent=2)
        if not rep.passed:
            raise ValidationFailure(out)
        _emit(args, out)
    else:
        mu = io.measure_from_dict(_read_json(args.measure), f.graph, f.mode)
        _emit(args, io.dumps(io.system_to_dict(extend_down(f, mu)), indent=2))
    return 0


def cmd_sample(args) -> int:
    f = _load_flow(args)
    nu = io.system_from_dict(_read_json(args.system), f.graph, f.mode)
    sampler = PathSampler(f, nu)
    gen, seed = make_rng(args.seed)
    draw = sampler.down if args.direction == "down" else sampler.up
    lines = []
    for i in range(args.count):
        p = draw(args.level, gen)
        lines.append(io.dumps({"seed": seed, "index": i, "direction": args.direction,
                               "path": [[z.level, z.label] for z in p.vertices]}))
    _emit(args, "\n".join(lines))
    return 0


def cmd_converge(args) -> int:
    f = _load_flow(args)
    nu = io.system_from_dict(_read_json(args.system), f.graph, f.mode) if args.system else None
    targets = [io.parse_vertex(t) for t in json.loads(args.targets)]
    for t in targets:
        f.graph.require(t)
    path = None
    if args.path:
        raw = _read_json(args.path)
        raw = raw["path"] if isinstance(raw, dict) else raw
        path = [io.parse_vertex(v) for v in raw]
    top = args.max_level or (max(v.level for v in path) if path else f.graph.depth)
    table = ergodic_experiment(f, nu, targets, top, rng=args.seed, path=path)
    header = ["m"] + [io.csv_vertex(t) for t in targets]
    if table.deviations is not None:
        header.append("deviation")
    rows = []
    for i, m in enumerate(table.levels):
        row = [str(m), *table.rows[i]]
        if table.deviations is not None:
            row.append(table.deviations[i])
        rows.append(row)
    _emit(args, io.write_csv(header, rows))
    return 0


def cmd_realize(args) -> int:
    mode = num.EXACT if _mode(args) in ("auto", num.EXACT) else num.FLOAT
    beta = num.parse_number(args.beta)
    k = io.link_from_dict(_read_json(args.linkspec), mode)
    try:
        style = parse_style(args.style)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from exc
    f = realize_link(k, beta, style, mode)
    rep = verify_realization(f, k, args.tol)
    if not rep.passed:
        raise ValidationFailure(io.dumps({"passed": False, "max_z_deviation": rep.max_z_deviation,
                                          "max_link_deviation": rep.max_link_deviation}))
    _emit(args, io.dumps(io.flow_to_dict(f), indent=2))
    return 0


def cmd_catalog(args) -> int:
    mode = num.FLOAT if args.mode == num.FLOAT else num.EXACT
    beta = num.parse_number(args.beta) if args.beta is not None else 0
    name = args.name.replace("-", "_")
    if name == "pascal":
        out = io.flow_to_dict(catalog.pascal_flow(args.depth, beta, mode))
    elif name == "young":
        out = io.flow_to_dict(catalog.young_flow(args.depth, beta, mode))
    elif name == "q_pascal":
        q = args.q if args.q is not None else "1/2"
        b = beta if args.beta is not None else 1
        out = io.flow_to_dict(catalog.q_pascal(args.depth, q, b, None if args.mode is None else mode))
    elif name == "bernoulli":
        p = args.p if args.p is not None else "1/2"
        out = io.system_to_dict(catalog.bernoulli_system(args.depth, p, mode))
    elif name == "plancherel":
        out = io.system_to_dict(catalog.plancherel_system(args.depth, mode))
    else:
        raise SpecParseError(f"unknown catalog entry {args.name!r}")
    _emit(args, io.dumps(out, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None, help="output path (default: stdout)")
    common.add_argument("--mode", choices=[num.EXACT, num.FLOAT], default=None,
                        help="arithmetic mode (default: exact when possible)")
    common.add_argument("--tol", type=float, default=num.DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="kmsflow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the graded-graph axioms")
    s.add_argument("--input", "-i", required=True)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("partition", parents=[common], help="edge/vertex partition functions")
    s.add_argument("--input", "-i", required=True)
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("link", parents=[common], help="Markov link between two levels")
    s.add_argument("--input", "-i", required=True)
    s.add_argument("--upper", type=int)
    s.add_argument("--lower", type=int)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_link)

    s = sub.add_parser("harmonic", parents=[common], help="check or build coherent systems")
    s.add_argument("action", choices=["check", "extend"])
    s.add_argument("--input", "-i", required=True)
    s.add_argument("--system")
    s.add_argument("--measure")
    s.set_defaults(func=cmd_harmonic)

    s = sub.add_parser("sample", parents=[common], help="sample central-measure paths (JSON lines)")
    s.add_argument("--input", "-i", required=True)
    s.add_argument("--system", required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--direction", choices=["down", "up"], default="down")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("converge", parents=[common], help="ergodic-method convergence table (CSV)")
    s.add_argument("--input", "-i", required=True)
    s.add_argument("--system")
    s.add_argument("--targets", required=True, help='JSON list, e.g. \'[[1, "1"]]\'')
    s.add_argument("--path", help="JSON file with an explicit growing path")
    s.add_argument("--max-level", type=int)
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("realize", parents=[common], help="flow realizing a prescribed link")
    s.add_argument("linkspec")
    s.add_argument("--beta", required=True)
    s.add_argument("--style", default="uniform", help="uniform | geometric:R")
    s.set_defaults(func=cmd_realize, tol=1e-12)

    s = sub.add_parser("catalog", parents=[common], help="emit a catalog graph, flow or system")
    s.add_argument("name", help="pascal | q-pascal | young | bernoulli | plancherel")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--q")
    s.add_argument("--p")
    s.add_argument("--beta")
    s.set_defaults(func=cmd_catalog)
    return p


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "harmonic":
        need = "system" if args.action == "check" else "measure"
        if getattr(args, need) is None:
            return _fail(EXIT_PARSE, "parse-error", f"harmonic {args.action} needs --{need}")
    try:
        return args.func(args)
    except ValidationFailure as exc:
        sys.stdout.write(exc.payload + "\n")
        return _fail(EXIT_VALIDATION, "validation-failure", "validation failed")
    except SpecParseError as exc:
        return _fail(EXIT_PARSE, exc.code, str(exc))
    except json.JSONDecodeError as exc:
        return _fail(EXIT_PARSE, "parse-error", str(exc))
    except NumericModeConflict as exc:
        return _fail(EXIT_MODE, exc.code, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, "io-error", str(exc))
    except KmsflowError as exc:
        return _fail(EXIT_VALIDATION, exc.code, str(exc))


if __name__ == "__main__":
    sys.exit(main())
