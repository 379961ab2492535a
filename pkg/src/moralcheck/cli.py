"""Command line front end.

Exit codes: 0 moral / consistent / satisfiable, 1 not, 2 unknown (budget
exhausted), 3 input error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import formats
from .errors import MoralityError
from .moralize import Consistency, blanket_family_from_dag, check_consistency, moralize
from .pek import Status, immoralize
from .poly import check
from .reduction import parse_dimacs, reduce, sat_solve

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

_STATUS_EXIT = {
    Status.MORAL: EXIT_OK,
    Status.NOT_MORAL: EXIT_NO,
    Status.UNKNOWN: EXIT_UNKNOWN,
    Consistency.CONSISTENT: EXIT_OK,
    Consistency.ASYMMETRIC: EXIT_NO,
    Consistency.INCONSISTENT: EXIT_NO,
    Consistency.UNKNOWN: EXIT_UNKNOWN,
}


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from None


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt_edge(e, labels):
    a, b = e
    if labels:
        return f"{labels.get(a, a)}-{labels.get(b, b)}"
    return f"{a}-{b}"


# -- per-file workers (module level so they pickle) ---------------------------

def _check_one(path, budget, certificate, trace):
    try:
        g = formats.parse_graph(_read(path))
        verdict = check(g, budget=budget)
    except (MoralityError, _InputError) as exc:
        return EXIT_INPUT, "", f"{path}: {exc}\n"
    lines = [f"verdict: {verdict.status.value}\n"]
    if verdict.status is Status.NOT_MORAL and verdict.stuck_witness is not None:
        lines.append("stuck: " + " ".join(map(str, verdict.stuck_witness.vertices)) + "\n")
    if certificate and verdict.certificate is not None:
        lines.append(formats.format_kit(verdict.certificate))
    if trace:
        lines.append(formats.format_trace(verdict.trace))
    return _STATUS_EXIT[verdict.status], "".join(lines), ""


def _consistent_one(path, budget, out):
    try:
        family = formats.parse_blankets(_read(path))
        verdict = check_consistency(family, budget=budget)
    except (MoralityError, _InputError) as exc:
        return EXIT_INPUT, "", f"{path}: {exc}\n"
    lines = [f"verdict: {verdict.status.value}\n"]
    if verdict.status is Consistency.ASYMMETRIC:
        lines += [f"asymmetric: {u} {v}\n" for u, v in verdict.violations]
    elif verdict.status is Consistency.INCONSISTENT and verdict.evidence is not None:
        lines.append("stuck: " + " ".join(map(str, verdict.evidence.vertices)) + "\n")
    elif verdict.status is Consistency.CONSISTENT:
        dag_text = formats.format_dag(verdict.witness_dag)
        if out is None:
            lines.append(dag_text)
        else:
            Path(out).write_text(dag_text)
    return _STATUS_EXIT[verdict.status], "".join(lines), ""


def _run_many(paths, jobs, worker, *args):
    """Run ``worker`` per file, printing each file's buffered output in order."""
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, paths, *[[a] * len(paths) for a in args]))
    else:
        results = [worker(p, *args) for p in paths]
    code = EXIT_OK
    for path, (rc, out, err) in zip(paths, results):
        if len(paths) > 1:
            sys.stdout.write(f"== {path}\n")
        sys.stdout.write(out)
        sys.stderr.write(err)
        code = max(code, rc)
    return code


# -- subcommands ---------------------------------------------------------------

def cmd_check(args):
    return _run_many(args.graphs, args.jobs, _check_one, args.budget, args.certificate, args.trace)


def cmd_consistent(args):
    if args.output and len(args.families) > 1:
        raise _InputError("--output takes a single input file")
    return _run_many(args.families, args.jobs, _consistent_one, args.budget, args.output)


def cmd_moralize(args):
    dag = formats.parse_dag(_read(args.dag))
    labels = formats.parse_labels(_read(args.labels)) if args.labels else None
    result = moralize(dag)
    graph_text = formats.format_graph(result.moral_graph)
    fills = "".join(f"fill: {_fmt_edge(e, labels)}\n" for e in sorted(result.fill_edges))
    if args.output:
        Path(args.output).write_text(graph_text)
        sys.stdout.write(fills)
    else:
        sys.stdout.write(graph_text + fills)
    return EXIT_OK


def cmd_blankets(args):
    dag = formats.parse_dag(_read(args.dag))
    _emit(formats.format_blankets(blanket_family_from_dag(dag)), args.output)
    return EXIT_OK


def cmd_immoralize(args):
    g = formats.parse_graph(_read(args.graph))
    kit = formats.parse_kit(_read(args.kit))
    _emit(formats.format_dag(immoralize(g, kit)), args.output)
    return EXIT_OK


def cmd_reduce(args):
    layout = reduce(parse_dimacs(_read(args.cnf)))
    _emit(formats.format_graph(layout.graph), args.output)
    if args.labels_out:
        Path(args.labels_out).write_text(formats.format_labels(layout.label_of))
    return EXIT_OK


def cmd_sat(args):
    ok, assignment = sat_solve(parse_dimacs(_read(args.cnf)))
    if not ok:
        sys.stdout.write("s UNSATISFIABLE\n")
        return EXIT_NO
    lits = [str(v if val else -v) for v, val in sorted(assignment.items())]
    sys.stdout.write("s SATISFIABLE\n")
    sys.stdout.write("v " + " ".join(lits + ["0"]) + "\n")
    return EXIT_OK


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's own code 2 means "unknown" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="moralcheck", description="Graph morality and Markov-blanket consistency checks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide whether graphs are moral")
    c.add_argument("graphs", nargs="+", help="graph files ('-' for stdin)")
    c.add_argument("--budget", type=_positive, help="expansion limit for the exact search")
    c.add_argument("--certificate", action="store_true", help="print the elimination kit")
    c.add_argument("--trace", action="store_true", help="print the rule trace")
    c.add_argument("--jobs", type=_positive, default=1, help="files processed in parallel")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("consistent", help="decide whether blanket families come from a DAG")
    c.add_argument("families", nargs="+", help="blanket files")
    c.add_argument("--budget", type=_positive)
    c.add_argument("--jobs", type=_positive, default=1)
    c.add_argument("-o", "--output", help="write the witness DAG here instead of stdout")
    c.set_defaults(func=cmd_consistent)

    c = sub.add_parser("moralize", help="moral graph of a DAG, plus its fill edges")
    c.add_argument("dag")
    c.add_argument("-o", "--output", help="write the moral graph here; fills still go to stdout")
    c.add_argument("--labels", help="label sidecar used to name fill edges")
    c.set_defaults(func=cmd_moralize)

    c = sub.add_parser("blankets", help="Markov blanket family of a DAG")
    c.add_argument("dag")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_blankets)

    c = sub.add_parser("immoralize", help="orient a graph into a DAG using an elimination kit")
    c.add_argument("graph")
    c.add_argument("kit")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_immoralize)

    c = sub.add_parser("reduce", help="build the degree-5 morality instance of a 3-CNF")
    c.add_argument("cnf")
    c.add_argument("-o", "--output")
    c.add_argument("--labels-out", help="write the '<id> <label>' sidecar here")
    c.set_defaults(func=cmd_reduce)

    c = sub.add_parser("sat", help="solve a 3-CNF with the bundled DPLL solver")
    c.add_argument("cnf")
    c.set_defaults(func=cmd_sat)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MoralityError, _InputError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
