"""Line-based text formats used by the command line tool.

Graph files::

    # comment
    n 5
    e 0 1          undirected edge
    a 0 1          arc 0 -> 1 (a file holds either e or a lines, never both)

Blanket files hold ``b <v> : <u1> <u2> ...`` lines (omitted vertices have an
empty blanket; ``n <count>`` is optional).  Kit files hold an ``order:`` line
and one ``excess <v>: <a>-<b> ...`` line per vertex with a nonempty excess.
Label sidecars hold ``<id> <label>`` lines.  Vertex ids are 0-based.
"""
from __future__ import annotations

from typing import Iterable

from .errors import MoralityError, ParseError
from .graph import Dag, UndirectedGraph, build_graph, edge
from .moralize import BlanketFamily
from .pek import EliminationKit, TraceStep


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(tok: str, lineno: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None
    if value < 0:
        raise ParseError(f"negative vertex id {value}", lineno)
    return value


def _parse_pairs(text: str):
    n = None
    kind = None
    pairs = []
    for lineno, line in _lines(text):
        parts = line.split()
        tag = parts[0]
        if tag == "n":
            if len(parts) != 2 or n is not None:
                raise ParseError("expected a single 'n <count>' header", lineno)
            n = _int(parts[1], lineno)
        elif tag in ("e", "a"):
            if n is None:
                raise ParseError("'n <count>' must come before edges", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected '{tag} <u> <v>'", lineno)
            if kind is not None and kind != tag:
                raise ParseError("file mixes undirected 'e' and directed 'a' lines", lineno)
            kind = tag
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if u >= n or v >= n:
                raise ParseError(f"vertex out of range for n={n}", lineno)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", lineno)
            pairs.append((u, v))
        else:
            raise ParseError(f"unknown line tag {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return n, kind, pairs


def parse_graph(text: str) -> UndirectedGraph:
    n, kind, pairs = _parse_pairs(text)
    if kind == "a":
        raise ParseError("expected an undirected graph ('e' lines), found arcs")
    return build_graph(n, pairs)


def parse_dag(text: str) -> Dag:
    n, kind, pairs = _parse_pairs(text)
    if kind == "e":
        raise ParseError("expected a DAG ('a' lines), found undirected edges")
    try:
        return Dag(n, pairs)
    except MoralityError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: UndirectedGraph) -> str:
    lines = [f"n {g.n}"] + [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def format_dag(dag: Dag) -> str:
    lines = [f"n {dag.n}"] + [f"a {u} {v}" for u, v in dag.arcs()]
    return "\n".join(lines) + "\n"


def parse_blankets(text: str) -> BlanketFamily:
    n = None
    mapping: dict[int, set[int]] = {}
    for lineno, line in _lines(text):
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or n is not None:
                raise ParseError("expected a single 'n <count>' header", lineno)
            n = _int(parts[1], lineno)
            continue
        if parts[0] != "b":
            raise ParseError(f"unknown line tag {parts[0]!r}", lineno)
        head, sep, tail = line[1:].partition(":")
        if not sep:
            raise ParseError("expected 'b <v> : <u1> <u2> ...'", lineno)
        head = head.split()
        if len(head) != 1:
            raise ParseError("expected one vertex before ':'", lineno)
        v = _int(head[0], lineno)
        if v in mapping:
            raise ParseError(f"blanket of {v} given twice", lineno)
        members = {_int(tok, lineno) for tok in tail.split()}
        if v in members:
            raise ParseError(f"vertex {v} is in its own blanket", lineno)
        mapping[v] = members
    ids = set(mapping) | set().union(*mapping.values()) if mapping else set()
    if n is None:
        n = max(ids) + 1 if ids else 0
    if any(v >= n for v in ids):
        raise ParseError(f"vertex id out of range for n={n}")
    return BlanketFamily.from_mapping(n, mapping)


def format_blankets(family: BlanketFamily) -> str:
    lines = [f"n {family.n}"]
    for v in range(family.n):
        members = " ".join(str(u) for u in sorted(family[v]))
        lines.append(f"b {v} : {members}".rstrip())
    return "\n".join(lines) + "\n"


def format_kit(kit: EliminationKit) -> str:
    lines = ["order: " + " ".join(map(str, kit.ordering))]
    for x in kit.ordering:
        exc = kit.excess(x)
        if exc:
            lines.append(f"excess {x}: " + " ".join(f"{a}-{b}" for a, b in sorted(exc)))
    return "\n".join(lines) + "\n"


def parse_kit(text: str) -> EliminationKit:
    order = None
    excesses: dict[int, frozenset] = {}
    for lineno, line in _lines(text):
        if line.startswith("order:"):
            if order is not None:
                raise ParseError("duplicate 'order:' line", lineno)
            order = tuple(_int(tok, lineno) for tok in line[len("order:"):].split())
        elif line.startswith("excess"):
            head, sep, tail = line[len("excess"):].partition(":")
            if not sep:
                raise ParseError("expected 'excess <v>: <a>-<b> ...'", lineno)
            v = _int(head.strip(), lineno)
            es = set()
            for tok in tail.split():
                a, dash, b = tok.partition("-")
                if not dash:
                    raise ParseError(f"bad edge {tok!r}", lineno)
                a, b = _int(a, lineno), _int(b, lineno)
                if a == b:
                    raise ParseError(f"bad edge {tok!r}", lineno)
                es.add(edge(a, b))
            excesses[v] = frozenset(es)
        else:
            raise ParseError(f"unexpected line {line!r}", lineno)
    if order is None:
        raise ParseError("missing 'order:' line")
    return EliminationKit(order, {v: e for v, e in excesses.items() if e})


def format_labels(label_of: dict[int, str]) -> str:
    return "".join(f"{v} {label_of[v]}\n" for v in sorted(label_of))


def parse_labels(text: str) -> dict[int, str]:
    out = {}
    for lineno, line in _lines(text):
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ParseError("expected '<id> <label>'", lineno)
        out[_int(parts[0], lineno)] = parts[1]
    return out


def format_trace(trace: Iterable[TraceStep]) -> str:
    lines = []
    for step in trace:
        removed = " ".join(map(str, step.removed))
        es = " ".join(f"{a}-{b}" for a, b in step.edges)
        lines.append(f"rule={step.rule} remove={removed} edges={es}".rstrip())
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> list[TraceStep]:
    steps = []
    for lineno, line in _lines(text):
        fields = {}
        key = None
        for tok in line.split():
            if "=" in tok:
                key, _, val = tok.partition("=")
                fields[key] = [val] if val else []
            elif key is not None:
                fields[key].append(tok)
            else:
                raise ParseError(f"bad trace line {line!r}", lineno)
        try:
            rule = fields["rule"][0]
            removed = tuple(int(v) for v in fields["remove"])
            es = tuple(edge(*map(int, e.split("-"))) for e in fields.get("edges", []))
        except (KeyError, IndexError, ValueError):
            raise ParseError(f"bad trace line {line!r}", lineno) from None
        steps.append(TraceStep(rule, removed, es))
    return steps
