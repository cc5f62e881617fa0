"""srskit: finite string-rewriting systems, their classification and
normalization, bounded searches for three dual-unification problems, and
encodings of correspondence problems into dwindling convergent systems.
"""

from ._kernel import BACKEND as KERNEL_BACKEND
from .core import (
    EPSILON,
    Alphabet,
    ClassReport,
    ConvergenceReport,
    CriticalPair,
    Rule,
    Srs,
    Symbol,
    SymbolString,
    check_convergent,
    classify,
    critical_pairs,
    parse_srs,
)
from .decision import (
    CeQuery,
    CtQuery,
    SearchOutcome,
    bounded_convertible,
    ce_search,
    ct_search,
    enumerate_candidates,
    fp_search,
    render_outcome,
)
from .engine import (
    IrrAutomaton,
    RewriteStep,
    irr_automaton,
    is_irreducible,
    joinable,
    normalize,
    rewrite_step,
    rewrite_trace,
)
from .errors import (
    BudgetExhaustedError,
    GpcpError,
    NotConvergentError,
    NotTerminatingError,
    ParseError,
    SrskitError,
)
from .gpcp import (
    CtEncoding,
    CtWitness,
    GpcpInstance,
    GpcpSolution,
    binarization_table,
    binarize,
    encode,
    encode_auto,
    format_encoding,
    format_gpcp,
    gpcp_brute_force,
    instance_from_words,
    is_tail_form,
    parse_gpcp,
    solution_from_witness,
    solution_matches,
    verify_witness,
    witness_from_solution,
)
from .terms import (
    App,
    Substitution,
    Term,
    TrsLite,
    Var,
    apply_subst,
    ct_check_terms,
    groundify,
    normalize_term,
    parse_term,
    parse_trs,
    render_term,
    srs_to_unary_trs,
    term_vars,
    unary_trs_to_srs,
)

__version__ = "0.1.0"
