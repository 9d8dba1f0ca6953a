"""dqkit: decision-modelling toolkit.

Discrete influence diagrams solved exactly for optimal policies and expected
values, value-of-information queries, and utility-driven ROC analysis for
choosing among candidate classifiers (including investment costs and the
status-quo option of deploying nothing).
"""

from .diagram import (
    ChanceNode,
    DecisionNode,
    InfluenceDiagram,
    InvalidDiagramError,
    ModelFormatError,
    TreeSizeError,
    ValueNode,
    Violation,
    close_no_forgetting,
    closed_informs,
    diagram_to_dict,
    diagram_to_json,
    load_diagram,
    parent_configurations,
    parse_diagram,
    validate,
)
from .ingest import (
    CsvFormatError,
    WidgetLineConfig,
    generate_widget_line,
    load_scored_csv,
    parse_scored_csv,
    write_scored_csv,
)
from .roc import (
    OperatingPoint,
    RocCurve,
    RocPoint,
    ScoredDataset,
    UtilityModel,
    analysis_report,
    auc,
    baseline_value,
    build_roc,
    empirical_prevalence,
    evaluate_option,
    expected_utility,
    indifference_line,
    iso_utility_slope,
    optimal_operating_point,
    upper_convex_hull,
    utility_field,
)
from .solver import (
    InvestmentChoice,
    Policy,
    SolveResult,
    choose_model,
    evaluate_policy,
    prepend_model_choice,
    solve,
    value_of_information,
)
from .tree import ChanceBranch, DecisionBranch, Leaf, count_leaves, unroll

__version__ = "0.1.0"
