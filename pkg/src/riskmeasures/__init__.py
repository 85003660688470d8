"""Exact risk-measure vectors (VaR, TCE, Maximum Loss), coherence checks,
indistinguishable tail families and Basel I/II capital ratios."""

from .basel import (
    Accord,
    AssetCategory,
    CapitalStructure,
    Exposure,
    SovereignRating,
    capital_ratio,
    eligible_capital,
    market_risk_charge,
    risk_weight,
    risk_weighted_assets,
    sovereign_weight,
)
from .coherence import Axiom, AxiomReport, coherence_report, is_coherent_on_family
from .distributions import (
    LossDistribution,
    Position,
    QuantileConvention,
    Segment,
    canonicalize,
    cdf,
    independent_sum,
    mean,
    partial_expectation,
    quantile,
    scale,
    shift,
    l1_distance,
    to_loss,
)
from .documents import emit_plot_data, parse_spec, serialize
from .errors import ComputationError, RiskError, ValidationError
from .family import TailSpec, discriminate, indistinguishable_family, triangular_tail, uniform_tail
from .measures import (
    MeasureVector,
    ScenarioMeasure,
    is_var_acceptable,
    max_loss,
    measure_vector,
    scenario_measure_eval,
    tce,
    var,
)

__version__ = "0.1.0"
