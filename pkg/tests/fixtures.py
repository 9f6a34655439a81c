"""Shared example structures used across the suite.

Named by shape: the cascade DAH fans two roots into a co-head pair and on
into a second pair; the two-row chain graph feeds three roots into an
undirected path; the fan chain graph pulls three roots into one middle
vertex; the wide pair exercises intervention surgery.
"""

from __future__ import annotations

from bayhg.chain_graph import ChainGraph, build_chain_graph
from bayhg.dah import DAH, build_dah


def dah_cascade() -> DAH:
    return build_dah(
        "abcdef",
        [
            (("a", "b"), ("c",)),
            (("a",), ("c", "d")),
            (("d",), ("e", "f")),
            (("c",), ("e",)),
        ],
    )


def cg_two_row() -> ChainGraph:
    return build_chain_graph(
        "abcdef",
        [("a", "d"), ("a", "e"), ("b", "e"), ("b", "f"), ("c", "f")],
        [("d", "e"), ("e", "f")],
    )


def dah_two_row() -> DAH:
    # canonical lift of cg_two_row
    return build_dah(
        "abcdef",
        [
            (("a",), ("d", "e")),
            (("a", "b"), ("e",)),
            (("b",), ("e", "f")),
            (("b", "c"), ("f",)),
        ],
    )


def cg_fan() -> ChainGraph:
    return build_chain_graph(
        "abcdef",
        [("a", "d"), ("a", "e"), ("b", "e"), ("c", "e"), ("c", "f")],
        [("d", "e"), ("e", "f")],
    )


def cg_square() -> ChainGraph:
    return build_chain_graph(
        "abcd",
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        [("c", "d")],
    )


def dah_square_merged() -> DAH:
    return build_dah("abcd", [(("a", "b"), ("c", "d"))])


def dah_square_split() -> DAH:
    return build_dah(
        "abcd",
        [(("a", "b"), ("c",)), (("a", "b"), ("d",)), ((), ("c", "d"))],
    )


def cg_wide() -> ChainGraph:
    return build_chain_graph(
        "abcde",
        [("a", "c"), ("a", "d"), ("a", "e"), ("b", "d"), ("b", "e")],
        [("c", "d"), ("d", "e")],
    )


def dah_wide() -> DAH:
    # the two fully directed hyperedges of cg_wide's canonical lift
    return build_dah("abcde", [(("a",), ("c", "d")), (("a", "b"), ("d", "e"))])


def dah_collider_merged() -> DAH:
    return build_dah("abc", [(("a", "b"), ("c",))])


def dah_collider_split() -> DAH:
    return build_dah("abc", [(("a",), ("c",)), (("b",), ("c",))])


def table_rows():
    """Three-variable factorization shapes: (dah, expected scopes per
    component), covering all twelve table cells."""
    rows = []

    def row(edges, expected):
        rows.append(
            (
                build_dah("abc", edges),
                {tuple(comp): [tuple(s) for s in scopes] for comp, scopes in expected.items()},
            )
        )

    # f(a) f(b) psi_abc
    row([(("a", "b"), ("c",))], {("a",): [("a",)], ("b",): [("b",)], ("c",): [("a", "b", "c")]})
    # f(ab) psi_abc
    row(
        [((), ("a", "b")), (("a", "b"), ("c",))],
        {("a", "b"): [("a", "b")], ("c",): [("a", "b", "c")]},
    )
    # f(a) f(b) psi_ac psi_bc
    row(
        [(("a",), ("c",)), (("b",), ("c",))],
        {("a",): [("a",)], ("b",): [("b",)], ("c",): [("a", "c"), ("b", "c")]},
    )
    # f(ab) psi_ac psi_bc
    row(
        [((), ("a", "b")), (("a",), ("c",)), (("b",), ("c",))],
        {("a", "b"): [("a", "b")], ("c",): [("a", "c"), ("b", "c")]},
    )
    # f(a) f(b) psi_ac
    row(
        [(("a",), ("c",))],
        {("a",): [("a",)], ("b",): [("b",)], ("c",): [("a", "c")]},
    )
    # f(ab) psi_ac
    row(
        [((), ("a", "b")), (("a",), ("c",))],
        {("a", "b"): [("a", "b")], ("c",): [("a", "c")]},
    )
    # f(a) f(b) f(c)
    row([], {("a",): [("a",)], ("b",): [("b",)], ("c",): [("c",)]})
    # f(ab) f(c)
    row([((), ("a", "b"))], {("a", "b"): [("a", "b")], ("c",): [("c",)]})
    # psi_ac psi_bc (one three-vertex component)
    row(
        [((), ("a", "c")), ((), ("b", "c"))],
        {("a", "b", "c"): [("a", "c"), ("b", "c")]},
    )
    # f(c) psi_ac psi_ab
    row(
        [((), ("a", "b")), (("c",), ("a",))],
        {("a", "b"): [("a", "b"), ("a", "c")], ("c",): [("c",)]},
    )
    # f(c) psi_ac psi_bc (fork)
    row(
        [(("c",), ("a",)), (("c",), ("b",))],
        {("a",): [("a", "c")], ("b",): [("b", "c")], ("c",): [("c",)]},
    )
    # f(c) psi_ab psi_ac psi_bc
    row(
        [((), ("a", "b")), (("c",), ("a",)), (("c",), ("b",))],
        {("a", "b"): [("a", "b"), ("a", "c"), ("b", "c")], ("c",): [("c",)]},
    )
    return rows


PAPER_DAHS = [
    dah_cascade,
    dah_two_row,
    dah_square_merged,
    dah_square_split,
    dah_wide,
    dah_collider_merged,
    dah_collider_split,
]

PAPER_CGS = [cg_two_row, cg_fan, cg_square, cg_wide]
