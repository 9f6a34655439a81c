"""Directed acyclic hypergraph graphical models.

Structures (hypergraphs, chain graphs), the shadow/hypermoralize bridges
between them, moral-separation Markov queries, discrete factorization,
causal interventions, and an exact conditional-independence oracle.
"""

from .chain_graph import (
    ChainGraph,
    Complex,
    UndirectedGraph,
    build_chain_graph,
    cg_anterior_set,
    cg_chain_components,
    maximal_cliques,
    minimal_complexes,
    moral_graph,
    ug_separates,
)
from .dah import (
    DAH,
    CanonicalDag,
    ComponentPartition,
    Hyperedge,
    VertexRelations,
    anterior_set,
    build_dah,
    canonical_dag,
    chain_components,
    induced_subhypergraph,
    is_acyclic,
    relations,
)
from .factorization import (
    DiscreteDomain,
    Factor,
    JointTable,
    assemble_joint,
    cg_assemble_joint,
    cg_factor_scopes,
    factor_scopes,
    h_star,
    make_domains,
    make_factor,
    maximal_edges,
    noisy_or_cpt,
    noisy_or_factors,
)
from .intervention import (
    InterventionSpec,
    cg_delete,
    cg_intervened_joint,
    cg_intervened_joint_via_redirect,
    cg_redirect,
    dah_normalize,
    dah_redirect,
    factorization_equivalent_cg,
    factorization_equivalent_dah,
    intervened_joint,
    intervened_joint_via_normal_form,
    intervened_joint_via_redirect,
)
from .markov import (
    CIStatement,
    cg_global_separates,
    hg_separates,
    local_statements,
    markov_equivalent,
    pairwise_statements,
)
from .oracle import (
    AxiomViolation,
    VerificationReport,
    check_semigraphoid,
    enumerate_ci,
    holds_ci,
    verify_global_markov,
)
from .projection import hypermoralize, is_lwf_dah, shadow
from .separation import backend_name

__version__ = "0.1.0"

__all__ = [
    "DAH",
    "Hyperedge",
    "ComponentPartition",
    "CanonicalDag",
    "VertexRelations",
    "ChainGraph",
    "UndirectedGraph",
    "Complex",
    "CIStatement",
    "DiscreteDomain",
    "Factor",
    "JointTable",
    "InterventionSpec",
    "AxiomViolation",
    "VerificationReport",
    "build_dah",
    "is_acyclic",
    "chain_components",
    "canonical_dag",
    "relations",
    "anterior_set",
    "induced_subhypergraph",
    "build_chain_graph",
    "cg_chain_components",
    "cg_anterior_set",
    "moral_graph",
    "maximal_cliques",
    "minimal_complexes",
    "ug_separates",
    "shadow",
    "hypermoralize",
    "is_lwf_dah",
    "hg_separates",
    "cg_global_separates",
    "pairwise_statements",
    "local_statements",
    "markov_equivalent",
    "h_star",
    "maximal_edges",
    "factor_scopes",
    "cg_factor_scopes",
    "assemble_joint",
    "cg_assemble_joint",
    "noisy_or_factors",
    "noisy_or_cpt",
    "make_domains",
    "make_factor",
    "cg_redirect",
    "cg_delete",
    "dah_redirect",
    "dah_normalize",
    "factorization_equivalent_cg",
    "factorization_equivalent_dah",
    "intervened_joint",
    "cg_intervened_joint",
    "intervened_joint_via_redirect",
    "cg_intervened_joint_via_redirect",
    "intervened_joint_via_normal_form",
    "holds_ci",
    "enumerate_ci",
    "check_semigraphoid",
    "verify_global_markov",
    "backend_name",
]
