"""zdlab: zero divisors and topological divisors of zero, computed exactly.

Symbols (self-maps of the positive integers, bounded rational weight
sequences) are finite descriptions with exactly decidable predicates; the
operators they induce are classified by constructive rules, every positive
verdict is backed by a finite-rank annihilator whose product is exactly
zero, and an independent elimination oracle cross-checks the classifications
at truncation level.
"""

from .divisors import (
    SynthesisError,
    UnboundedOperatorError,
    Verdict,
    VerificationResult,
    Witness,
    classify_left_zd,
    classify_right_zd,
    classify_zd,
    faithful_col_window,
    faithful_row_window,
    oracle_annihilator,
    synth_left_witness,
    synth_right_witness,
    verify_witness,
)
from .operators import (
    Boundedness,
    NormInterval,
    OperatorSpec,
    PowerIterationError,
    TruncatedOperator,
    assemble,
    is_bounded,
    operator_norm,
    vector_norm,
)
from .report import Report, emit_report, parse_report, run
from .scenario import Scenario, ScenarioParseError, SchemaError, parse_scenario
from .sequences import (
    C0Sequence,
    ConvergenceTable,
    OperatorSequenceRule,
    check_tdz_implies_strong,
    default_probes,
    diagonal_operator,
    diagonal_tdz_demo,
    single_hole,
    strongly_tdz_demo,
    tail_projection,
)
from .spaces import (
    Affine,
    AtomicMeasureSpace,
    AtomMap,
    ConstFn,
    GridFunction,
    GridRefinementError,
    Monomial,
    SimpleFunction,
    cx_is_tdz,
    ess_range,
    l2_comp_surjective,
    linf_is_tdz,
    lp_comp_left_zd,
    mult_op_tdz,
    poly_tdz_witness,
    radon_nikodym,
    urysohn_sequence,
)
from .symbols import (
    Block,
    ConstMap,
    ConstWeight,
    CPlusInv,
    FiberDescriptor,
    Geom,
    Inv,
    Power,
    SelfMap,
    Shift,
    WeightSeq,
    ZeroSet,
)

__version__ = "0.1.0"
