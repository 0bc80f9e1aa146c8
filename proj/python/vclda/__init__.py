"""Varying-coefficient linear discriminant analysis.

Thin wrapper over the compiled extension; see the project README for the
full API and the command-line interface.
"""

from vclda._core import (  # noqa: F401
    ClassifierModel,
    CvCell,
    CvPlan,
    CvResult,
    Dataset,
    DegenerateScaleError,
    DesignSystem,
    DimensionError,
    ExperimentSpec,
    FitOptions,
    GammaCoefficients,
    GeneratedScenario,
    InfeasibleGridError,
    IstaOptions,
    IstaResult,
    MeanModel,
    ParseError,
    PriorMode,
    Regime,
    ScenarioConfig,
    ScenarioOracle,
    SingularError,
    SplineBasis,
    StaticLda,
    ZeroDirectionError,
    __version__,
    assemble,
    bayes_risk,
    conditional_risk,
    covariance_value,
    cross_validate,
    direction_value,
    fit_mean_model,
    fit_vclda,
    fold_assignment,
    generate,
    group_soft_threshold,
    ista_solve,
    kkt_residual,
    lambda_max,
    normal_cdf,
    objective,
    oracle_predict,
    pseudo_response,
    read_dataset_csv,
    run_benchmark_json,
    smooth_gradient,
    solve_closed_form,
    support,
    write_dataset_csv,
)
