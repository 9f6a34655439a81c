"""Line-oriented structure files, JSON factor documents, canonical printing.

Hypergraph files carry ``vertices:`` and ``edge: tail -> head`` lines;
chain-graph files carry ``arc: a -> b`` and ``line: a - b``.  ``#`` starts
a comment.  Labels are printable, contain no whitespace and none of the
reserved tokens.  Canonical printing sorts everything, so parse-print is a
fixpoint after one round trip.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Mapping

from .chain_graph import ChainGraph, build_chain_graph
from .dah import DAH, Hyperedge, _sorted, build_dah
from .errors import BayhgError, ParseError
from .factorization import (
    DiscreteDomain,
    Domains,
    Factor,
    JointTable,
    make_domains,
    make_factor,
)

_TOKEN = re.compile(r"\S+")
_BAD_CHARS = set(":#")


@dataclass(frozen=True)
class Document:
    kind: str  # dah | chain_graph | domains | factors | intervention | report
    body: object


def _check_label(token: str, line_no: int, col: int) -> str:
    if token in ("->", "-") or any(ch in _BAD_CHARS for ch in token):
        raise ParseError(f"invalid label {token!r}", line_no, col)
    if not token.isprintable():
        raise ParseError("labels must be printable", line_no, col)
    return token


def _logical_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield i, line


def _tokens(line: str):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _split_directive(line_no: int, line: str):
    stripped = line.strip()
    head, sep, rest = stripped.partition(":")
    if not sep or " " in head or not head:
        col = line.index(stripped) + 1
        raise ParseError("expected '<directive>: ...'", line_no, col)
    offset = line.index(head) + len(head) + 1
    return head, rest, offset


def parse_dah(text: str, require_acyclic: bool = True) -> DAH:
    """Parse a hypergraph file; semantic validation is left to build_dah."""
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[Hyperedge] = []
    for line_no, line in _logical_lines(text):
        head, rest, offset = _split_directive(line_no, line)
        toks = [(t, offset + c) for (t, c) in _tokens(rest)]
        if head == "vertices":
            for t, c in toks:
                v = _check_label(t, line_no, c)
                if v not in seen:
                    seen.add(v)
                    vertices.append(v)
        elif head == "edge":
            arrows = [i for i, (t, _) in enumerate(toks) if t == "->"]
            if len(arrows) != 1:
                raise ParseError(
                    "edge line needs exactly one '->'",
                    line_no,
                    toks[0][1] if toks else offset,
                )
            cut = arrows[0]
            tail = [_check_label(t, line_no, c) for t, c in toks[:cut]]
            head_vs = [_check_label(t, line_no, c) for t, c in toks[cut + 1:]]
            for v in tail + head_vs:
                if v not in seen:
                    seen.add(v)
                    vertices.append(v)
            try:
                edges.append(Hyperedge(tail, head_vs))
            except BayhgError as exc:
                raise type(exc)(f"line {line_no}: {exc}") from None
        else:
            raise ParseError(f"unknown directive {head!r} in a hypergraph file", line_no, 1)
    return build_dah(vertices, edges, require_acyclic=require_acyclic)


def parse_chain_graph(text: str) -> ChainGraph:
    """Parse a chain-graph file of arc/line statements."""
    vertices: list[str] = []
    seen: set[str] = set()
    directed: list[tuple[str, str]] = []
    undirected: list[tuple[str, str]] = []

    def note(v: str) -> None:
        if v not in seen:
            seen.add(v)
            vertices.append(v)

    for line_no, line in _logical_lines(text):
        head, rest, offset = _split_directive(line_no, line)
        toks = [(t, offset + c) for (t, c) in _tokens(rest)]
        if head == "vertices":
            for t, c in toks:
                note(_check_label(t, line_no, c))
        elif head == "arc":
            if len(toks) != 3 or toks[1][0] != "->":
                raise ParseError("expected 'arc: a -> b'", line_no, offset)
            u = _check_label(toks[0][0], line_no, toks[0][1])
            w = _check_label(toks[2][0], line_no, toks[2][1])
            note(u)
            note(w)
            directed.append((u, w))
        elif head == "line":
            if len(toks) != 3 or toks[1][0] != "-":
                raise ParseError("expected 'line: a - b'", line_no, offset)
            u = _check_label(toks[0][0], line_no, toks[0][1])
            w = _check_label(toks[2][0], line_no, toks[2][1])
            note(u)
            note(w)
            undirected.append((u, w))
        else:
            raise ParseError(
                f"unknown directive {head!r} in a chain-graph file", line_no, 1
            )
    return build_chain_graph(vertices, directed, undirected)


def sniff_kind(text: str) -> str:
    """Classify a structure file by its directives."""
    has_edge = False
    has_cg = False
    for line_no, line in _logical_lines(text):
        head, _, _ = _split_directive(line_no, line)
        if head == "edge":
            has_edge = True
        elif head in ("arc", "line"):
            has_cg = True
    if has_edge and has_cg:
        raise ParseError("file mixes hypergraph and chain-graph directives", 1, 1)
    return "chain_graph" if has_cg else "dah"


def parse_structure(text: str):
    """Parse either kind of structure file, by sniffing."""
    if sniff_kind(text) == "chain_graph":
        return parse_chain_graph(text)
    return parse_dah(text)


def print_dah(h: DAH) -> str:
    lines = ["vertices: " + " ".join(_sorted(h.vertices))]
    for e in sorted(h.edges, key=Hyperedge.sort_key):
        parts = ["edge:", *_sorted(e.tail), "->", *_sorted(e.head)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def print_chain_graph(g: ChainGraph) -> str:
    lines = ["vertices: " + " ".join(_sorted(g.vertices))]
    for (u, w) in sorted(g.directed):
        lines.append(f"arc: {u} -> {w}")
    for pair in sorted(g.undirected, key=_sorted):
        u, w = _sorted(pair)
        lines.append(f"line: {u} - {w}")
    return "\n".join(lines) + "\n"


def print_canonical(doc) -> str:
    """Deterministic canonical text for a document or bare structure."""
    if isinstance(doc, Document):
        doc = doc.body
    if isinstance(doc, DAH):
        return print_dah(doc)
    if isinstance(doc, ChainGraph):
        return print_chain_graph(doc)
    raise TypeError(f"cannot print {type(doc).__name__}")


def load_domains(payload: str | Mapping) -> dict[str, DiscreteDomain]:
    """Read the ``domains`` key of a JSON document."""
    data = json.loads(payload) if isinstance(payload, str) else payload
    if "domains" not in data:
        raise ParseError("document has no 'domains' key", 1, 1)
    return make_domains(data["domains"])


def load_factors(payload: str | Mapping, domains: Domains) -> dict[frozenset[str], Factor]:
    """Read the ``factors`` key of a JSON document; tables are row-major
    in scope order with the last variable varying fastest."""
    data = json.loads(payload) if isinstance(payload, str) else payload
    if "factors" not in data:
        raise ParseError("document has no 'factors' key", 1, 1)
    out: dict[frozenset[str], Factor] = {}
    for item in data["factors"]:
        factor = make_factor(tuple(item["scope"]), item["table"], domains)
        out[frozenset(factor.scope)] = factor
    return out


def joint_to_json(j: JointTable) -> str:
    doc = {
        "scope": list(j.scope),
        "states": {v: list(j.domains[v].states) for v in j.scope},
        "table": j.flat(),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
