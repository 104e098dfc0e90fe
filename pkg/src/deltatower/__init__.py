"""deltatower: exact differential-field towers and a finite pregeometry checker.

The package has two halves that check each other:

* an exact symbolic side: the constant field Q(c[i][j]), tower elements
  with the eigen-derivation, factored linear operators, Wronskians and a
  term-minimization independence prover;
* a numerical side: truncated power series interpreting the derivation
  as d/dt, used as an independent oracle for the symbolic identities;

plus a finite combinatorial grid model in which closure, rank,
internality, analyses, reductions and coreductions are all computed by
exhaustive search.
"""

from .constants import (
    ConstExpr,
    ConstSymbol,
    Rational,
    arith,
    qlinear_dot,
    qlinear_independent,
    scale_symbol,
)
from .elements import Element, ONE_ELEMENT, ZERO_ELEMENT
from .errors import (
    BudgetExceeded,
    DeltaTowerError,
    DivisionByZero,
    DomainViolation,
    LengthMismatch,
    LevelOutOfRange,
    LogOfZero,
    NonInvertibleSeries,
    NotLinear,
    NotMonotone,
    NotNormalForm,
    ParseError,
    SupportTooSmall,
    TruncationTooShort,
    ZeroInitialValue,
)
from .grid import (
    Analysis,
    CellSet,
    GridModel,
    analysis_by_coreductions,
    analysis_by_reductions,
    build_seqred_a,
    build_seqred_b,
    closure,
    coreduction,
    internal,
    is_canonical,
    is_incompressible,
    is_minimal,
    reduction,
    urank,
)
from .operators import (
    EigenDecomposition,
    ExpandedOperator,
    FactoredOperator,
    LinearFactor,
    ProlongedSystem,
    apply_operator,
    build_E,
    decompose,
    expand,
    is_generic,
    logd_system,
    solve_prolonged,
    wronskian,
)
from .relations import (
    MonomialRelation,
    RankReport,
    ReductionTrace,
    Verdict,
    certify_independence,
    invariant_monomial,
    reduce_step,
    run_reduction,
    series_rank_check,
)
from .series import Series
from .textio import parse_element
from .tower import (
    SeriesContext,
    TowerElement,
    TowerSpec,
    build_spec,
    d_twist,
    derive,
    eval_series,
    logd,
    logd_iter,
)

__version__ = "0.1.0"
