"""Command-line interface.

Exit codes: 0 on success (including negative query answers), 1 on semantic
failures such as validation or zero normalizers, 2 on parse and usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .chain_graph import ChainGraph
from .dah import DAH, canonical_dag, chain_components
from .errors import BayhgError, ParseError
from .factorization import assemble_joint, factor_scopes
from .intervention import (
    InterventionSpec,
    cg_redirect,
    dah_redirect,
    factorization_equivalent_cg,
    factorization_equivalent_dah,
    intervened_joint,
)
from .markov import cg_global_separates, hg_separates, local_statements, pairwise_statements
from .oracle import verify_global_markov
from .projection import hypermoralize, shadow


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 1, 1) from None


def _load_structure(path: str):
    return formats.parse_structure(_read(path))


def _load_dah(path: str) -> DAH:
    text = _read(path)
    if formats.sniff_kind(text) != "dah":
        raise ParseError(f"{path} is not a hypergraph file", 1, 1)
    return formats.parse_dah(text)


def _split_set(arg: str | None) -> frozenset[str]:
    if not arg:
        return frozenset()
    return frozenset(arg.replace(",", " ").split())


def _load_tables(domains_path: str, factors_path: str):
    domains = formats.load_domains(_read(domains_path))
    factors = formats.load_factors(_read(factors_path), domains)
    return domains, factors


def _parse_do(items: list[str]) -> InterventionSpec:
    values: dict[str, str] = {}
    for item in items:
        var, sep, state = item.partition("=")
        if not sep or not var or not state:
            raise ParseError(f"--do expects var=state, got {item!r}", 1, 1)
        values[var] = state
    return InterventionSpec(values)


def _cmd_validate(args) -> int:
    structure = _load_structure(args.file)
    kind = "dah" if isinstance(structure, DAH) else "chain-graph"
    edges = (
        len(structure.edges)
        if isinstance(structure, DAH)
        else len(structure.directed) + len(structure.undirected)
    )
    print(f"ok: {kind}, {len(structure.vertices)} vertices, {edges} edges")
    return 0


def _cmd_components(args) -> int:
    structure = _load_structure(args.file)
    if isinstance(structure, DAH):
        part = chain_components(structure)
    else:
        from .chain_graph import cg_chain_components

        part = cg_chain_components(structure)
    for comp in part:
        print("component: " + " ".join(comp))
    return 0


def _cmd_shadow(args) -> int:
    h = _load_dah(args.file)
    sys.stdout.write(formats.print_chain_graph(shadow(h)))
    return 0


def _cmd_hypermoralize(args) -> int:
    text = _read(args.file)
    if formats.sniff_kind(text) != "chain_graph":
        raise ParseError(f"{args.file} is not a chain-graph file", 1, 1)
    g = formats.parse_chain_graph(text)
    sys.stdout.write(formats.print_dah(hypermoralize(g)))
    return 0


def _cmd_canonical_dag(args) -> int:
    h = _load_dah(args.file)
    dag = canonical_dag(h)
    for comp in dag.components:
        print("component: " + " ".join(comp))
    for (i, j) in sorted(dag.arcs):
        print(f"arc: {i} -> {j}")
    return 0


def _cmd_separate(args) -> int:
    structure = _load_structure(args.file)
    a, b, c = _split_set(args.a), _split_set(args.b), _split_set(args.c)
    if isinstance(structure, DAH):
        answer = hg_separates(structure, a, b, c)
    else:
        answer = cg_global_separates(structure, a, b, c)
    print(f"separated: {str(answer).lower()}")
    return 0


def _cmd_statements(args) -> int:
    h = _load_dah(args.file)
    fn = pairwise_statements if args.kind == "pairwise" else local_statements
    for s in fn(h):
        print(s.render())
    return 0


def _cmd_scopes(args) -> int:
    h = _load_dah(args.file)
    for comp, scopes in factor_scopes(h).items():
        rendered = " | ".join(" ".join(s) for s in scopes)
        print(f"component {' '.join(comp)}: {rendered}")
    return 0


def _cmd_factorize(args) -> int:
    h = _load_dah(args.file)
    domains, factors = _load_tables(args.domains, args.factors)
    joint = assemble_joint(h, domains, factors)
    sys.stdout.write(formats.joint_to_json(joint))
    return 0


def _cmd_intervene(args) -> int:
    structure = _load_structure(args.file)
    spec = _parse_do(args.do or [])
    if args.graph_only:
        if isinstance(structure, DAH):
            out = dah_redirect(structure, spec.targets)
            sys.stdout.write(formats.print_dah(out))
        else:
            out = cg_redirect(structure, spec.targets)
            sys.stdout.write(formats.print_chain_graph(out))
        return 0
    if not args.domains or not args.factors:
        raise ParseError("intervene needs --domains and --factors unless --graph-only", 1, 1)
    if not isinstance(structure, DAH):
        raise ParseError("joint intervention expects a hypergraph file", 1, 1)
    domains, factors = _load_tables(args.domains, args.factors)
    joint = intervened_joint(structure, domains, factors, spec)
    sys.stdout.write(formats.joint_to_json(joint))
    return 0


def _cmd_equivalent(args) -> int:
    s1 = _load_structure(args.file1)
    s2 = _load_structure(args.file2)
    targets = _split_set(args.targets)
    if isinstance(s1, DAH) and isinstance(s2, DAH):
        answer = factorization_equivalent_dah(s1, targets, s2, targets)
    elif isinstance(s1, ChainGraph) and isinstance(s2, ChainGraph):
        answer = factorization_equivalent_cg(s1, targets, s2, targets)
    else:
        raise ParseError("cannot compare a hypergraph with a chain graph", 1, 1)
    print(f"equivalent: {str(answer).lower()}")
    return 0


def _cmd_ci_check(args) -> int:
    h = _load_dah(args.file)
    domains, factors = _load_tables(args.domains, args.factors)
    joint = assemble_joint(h, domains, factors)
    report = verify_global_markov(h, joint, tol=args.tol)
    if args.json:
        print(report.to_json())
    else:
        print(report.render())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bayhg",
        description="Directed acyclic hypergraph graphical models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a structure file")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("components", help="print chain components")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_components)

    p = sub.add_parser("shadow", help="chain-graph projection of a hypergraph")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_shadow)

    p = sub.add_parser("hypermoralize", help="canonical hypergraph of a chain graph")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_hypermoralize)

    p = sub.add_parser("canonical-dag", help="component quotient of a hypergraph")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_canonical_dag)

    p = sub.add_parser("separate", help="global separation query")
    p.add_argument("file")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", default="")
    p.set_defaults(fn=_cmd_separate)

    p = sub.add_parser("statements", help="pairwise or local independence statements")
    p.add_argument("file")
    p.add_argument("--kind", choices=("pairwise", "local"), required=True)
    p.set_defaults(fn=_cmd_statements)

    p = sub.add_parser("scopes", help="required factor scopes per component")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_scopes)

    p = sub.add_parser("factorize", help="assemble the joint table")
    p.add_argument("file")
    p.add_argument("--domains", required=True)
    p.add_argument("--factors", required=True)
    p.set_defaults(fn=_cmd_factorize)

    p = sub.add_parser("intervene", help="graph surgery or intervened joint")
    p.add_argument("file")
    p.add_argument("--do", action="append", metavar="VAR=STATE")
    p.add_argument("--graph-only", action="store_true")
    p.add_argument("--domains")
    p.add_argument("--factors")
    p.set_defaults(fn=_cmd_intervene)

    p = sub.add_parser("equivalent", help="factorization equivalence of two structures")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--targets", default="")
    p.set_defaults(fn=_cmd_equivalent)

    p = sub.add_parser("ci-check", help="verify separations against the assembled joint")
    p.add_argument("file")
    p.add_argument("--domains", required=True)
    p.add_argument("--factors", required=True)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_ci_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 2
    except BayhgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
