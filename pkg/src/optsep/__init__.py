"""Optimistic linear separation: solvers, bound verification, data, CLI."""

from optsep.core import (
    Dataset,
    LabeledExample,
    MarginVector,
    OpCounter,
    SimplexWeights,
    Vector,
    as_vector,
    axpy,
    inner,
    margin_of,
    margin_vector,
    pseudoexample,
)
from optsep.datagen import (
    DatasetSpec,
    gen_eq2,
    gen_random_separable,
    generate,
    read_csv,
    write_csv,
)
from optsep.optimistic import (
    RunConfig,
    RunResult,
    RunTrace,
    SolverState,
    TraceRecord,
    closed_form_w,
    init,
    md_update_reference,
    run,
    step,
    step_size,
)
from optsep.perceptron import (
    PerceptronState,
    pass_bound,
    perceptron_run,
    perceptron_run_reference,
)
from optsep.regret import (
    BoundReport,
    annotate_trace,
    best_unit_comparator,
    brute_force_margin,
    check_data_bound,
    check_gap_bound,
    check_learner_bound,
    entropy_ceiling,
    round_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Dataset",
    "DatasetSpec",
    "LabeledExample",
    "MarginVector",
    "OpCounter",
    "PerceptronState",
    "RunConfig",
    "RunResult",
    "RunTrace",
    "SimplexWeights",
    "SolverState",
    "TraceRecord",
    "Vector",
    "annotate_trace",
    "as_vector",
    "axpy",
    "best_unit_comparator",
    "brute_force_margin",
    "check_data_bound",
    "check_gap_bound",
    "check_learner_bound",
    "closed_form_w",
    "entropy_ceiling",
    "gen_eq2",
    "gen_random_separable",
    "generate",
    "init",
    "inner",
    "margin_of",
    "margin_vector",
    "md_update_reference",
    "pass_bound",
    "perceptron_run",
    "perceptron_run_reference",
    "pseudoexample",
    "read_csv",
    "round_bound",
    "run",
    "step",
    "step_size",
    "write_csv",
]
