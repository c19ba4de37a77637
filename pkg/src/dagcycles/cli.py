"""Command-line entry point: ``dagcyc generate|analyze|ensemble|stability``.

Exit codes: 0 ok, 1 usage error, 2 bad input, 3 internal invariant violation.
The seed comes from ``--seed``, else the ``DAGCYC_SEED`` environment
variable, else 0, so every run is reproducible.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import jsonschema

from . import __version__
from .basis import BasisInvariantError
from .errors import DagCycError
from .generators import MODEL_KINDS, ModelSpec
from .io import dump_json, format_edge_list, matrix_to_csv, parse_edge_list, rows_to_csv
from .pipeline import (
    ENSEMBLE_COLUMNS,
    REPORT_SCHEMA,
    analyze,
    check_report,
    ensemble,
    report_dict,
    stability,
)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

CYCLE_COLUMNS = ("index", "size", "class", "n_sources", "balance", "height", "stretch", "path_lengths", "nodes")
STABILITY_COLUMNS = ("metric", "mean", "std", "rel_std", "runs")

# model -> (flag, type, required)
MODEL_PARAMS = {
    "lattice": (("L", int, True),),
    "doll": (("d", int, True),),
    "er": (("n", int, True), ("p", float, True)),
    "price": (("n", int, True), ("m", int, True), ("delta", float, False), ("c", float, False)),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("DAGCYC_SEED")
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"DAGCYC_SEED must be an integer, got {env!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _add_model_parsers(sub, list_values: bool, common) -> None:
    for kind in MODEL_KINDS:
        p = sub.add_parser(kind, parents=[common], help=f"{kind} model")
        for name, typ, required in MODEL_PARAMS[kind]:
            if list_values:
                p.add_argument(f"--{name}", type=str, required=required,
                               help=f"{name}, or a comma-separated list to sweep")
            else:
                p.add_argument(f"--{name}", type=typ, required=required)
        p.set_defaults(model=kind)


def _model_params(args, list_values: bool = False) -> dict:
    params = {}
    for name, typ, _ in MODEL_PARAMS[args.model]:
        raw = getattr(args, name)
        if raw is None:
            continue
        if list_values:
            try:
                params[name] = [typ(x) for x in raw.split(",") if x.strip()]
            except ValueError:
                raise UsageError(f"--{name}: cannot parse {raw!r}") from None
        else:
            params[name] = raw
    if args.model == "price" and params.get("delta") is not None and params.get("c") is not None:
        raise UsageError("give at most one of --delta and --c")
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dagcyc", description="Cycle-basis analysis of directed acyclic graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    seed = _Parser(add_help=False)
    seed.add_argument("--seed", type=int, default=None, help="base seed (default: $DAGCYC_SEED or 0)")
    seed.add_argument("-o", "--out", default=None, help="output file (default: stdout)")

    gen = sub.add_parser("generate", help="write a model DAG as an edge list")
    gsub = gen.add_subparsers(dest="model", required=True, parser_class=_Parser)
    gen_common = _Parser(add_help=False, parents=[seed])
    gen_common.add_argument("--realization", type=int, default=0, help="realisation index for random models")
    _add_model_parsers(gsub, False, gen_common)

    an = sub.add_parser("analyze", parents=[seed], help="analyse an edge-list file")
    an.add_argument("input", help="edge-list file, or - for stdin")
    an.add_argument("--no-tr", action="store_true", help="skip the transitive reduction")
    an.add_argument("--diamond-basis", action="store_true", help="use the minimum diamond basis")
    an.add_argument("--virtual-root", action="store_true",
                    help="with --diamond-basis, join several sources to a virtual root")
    an.add_argument("--shuffle-ties", action="store_true",
                    help="let the seed randomise ties between equally short cycles")
    an.add_argument("--format", choices=("json", "csv"), default="json",
                    help="json report or per-cycle csv table")
    an.add_argument("--cycles-csv", default=None, help="also write the per-cycle table here")
    an.add_argument("--dump-overlap", default=None, help="write the overlap matrix M as integer csv")

    ens = sub.add_parser("ensemble", help="metric means over random realisations on a parameter grid")
    esub = ens.add_subparsers(dest="model", required=True, parser_class=_Parser)
    ens_common = _Parser(add_help=False, parents=[seed])
    ens_common.add_argument("--realizations", type=int, default=20)
    ens_common.add_argument("--jobs", type=int, default=1)
    ens_common.add_argument("--no-tr", action="store_true")
    ens_common.add_argument("--format", choices=("json", "csv"), default="csv")
    _add_model_parsers(esub, True, ens_common)

    st = sub.add_parser("stability", help="spread of basis statistics over repeated extractions")
    ssub = st.add_subparsers(dest="model", required=True, parser_class=_Parser)
    st_common = _Parser(add_help=False, parents=[seed])
    st_common.add_argument("--runs", type=int, default=10)
    st_common.add_argument("--realization", type=int, default=0)
    st_common.add_argument("--jobs", type=int, default=1)
    st_common.add_argument("--no-tr", action="store_true")
    st_common.add_argument("--shuffle-ties", action="store_true",
                           help="let each basis seed randomise ties between equally short cycles")
    st_common.add_argument("--format", choices=("json", "csv"), default="csv")
    _add_model_parsers(ssub, False, st_common)
    return parser


def cmd_generate(args) -> int:
    seed = _resolve_seed(args.seed)
    spec = ModelSpec(args.model, _model_params(args), seed)
    dag = spec.build(args.realization)
    comments = [f"model: {spec.describe()}"]
    if spec.is_random:
        comments.append(f"realization: {args.realization}")
    _emit(format_edge_list(dag, comments), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.virtual_root and not args.diamond_basis:
        raise UsageError("--virtual-root only applies with --diamond-basis")
    seed = _resolve_seed(args.seed)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise _InputError(f"cannot read {args.input}: {exc.strerror}") from None
    dag = parse_edge_list(text)
    a = analyze(dag, reduce=not args.no_tr, diamond_basis=args.diamond_basis,
                virtual_root=args.virtual_root, seed=seed, shuffle_ties=args.shuffle_ties)
    problems = check_report(a)
    report = report_dict(a, {"input": Path(args.input).name if args.input != "-" else "-"})
    try:
        jsonschema.validate(report, REPORT_SCHEMA)
    except jsonschema.ValidationError as exc:
        problems.append(f"report schema: {exc.message}")
    if problems:
        for p in problems:
            print(f"dagcyc: invariant violated: {p}", file=sys.stderr)
        return EXIT_INVARIANT
    rows = report["cycles"]
    if args.format == "json":
        _emit(dump_json(report), args.out)
    else:
        _emit(rows_to_csv(rows, CYCLE_COLUMNS), args.out)
    if args.cycles_csv:
        Path(args.cycles_csv).write_text(rows_to_csv(rows, CYCLE_COLUMNS), encoding="utf-8")
    if args.dump_overlap:
        Path(args.dump_overlap).write_text(matrix_to_csv(a.overlap), encoding="utf-8")
    return EXIT_OK


def cmd_ensemble(args) -> int:
    seed = _resolve_seed(args.seed)
    grid = _model_params(args, list_values=True)
    sweep = [k for k, v in grid.items() if len(v) > 1]
    if len(sweep) > 1:
        raise UsageError(f"only one parameter may be swept, got {sweep}")
    if any(len(v) == 0 for v in grid.values()):
        raise UsageError("empty parameter list")
    param = sweep[0] if sweep else MODEL_PARAMS[args.model][0][0]
    base = {k: v[0] for k, v in grid.items() if k != param}
    if args.realizations < 1 or args.jobs < 1:
        raise UsageError("--realizations and --jobs must be positive")
    rows = ensemble(args.model, base, param, grid[param], args.realizations, seed,
                    reduce=not args.no_tr, jobs=args.jobs)
    if args.format == "csv":
        _emit(rows_to_csv(rows, ENSEMBLE_COLUMNS), args.out)
    else:
        _emit(dump_json({"model": args.model, "seed": seed, "base": base, "rows": rows}), args.out)
    return EXIT_OK


def cmd_stability(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.runs < 1 or args.jobs < 1:
        raise UsageError("--runs and --jobs must be positive")
    spec = ModelSpec(args.model, _model_params(args), seed)
    rows = stability(spec, args.runs, seed, realization=args.realization,
                     reduce=not args.no_tr, jobs=args.jobs, shuffle_ties=args.shuffle_ties)
    if args.format == "csv":
        _emit(rows_to_csv(rows, STABILITY_COLUMNS), args.out)
    else:
        _emit(dump_json({"model": spec.describe(), "seed": seed, "rows": rows}), args.out)
    return EXIT_OK


class _InputError(Exception):
    pass


COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "ensemble": cmd_ensemble,
    "stability": cmd_stability,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dagcyc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BasisInvariantError as exc:
        print(f"dagcyc: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (_InputError, DagCycError) as exc:
        print(f"dagcyc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"dagcyc: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
