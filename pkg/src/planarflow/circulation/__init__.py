"""Cost-scaling min-cost circulation over proximity sources."""

from planarflow.circulation.problem import CirculationProblem, FlowState, lambda_stats
from planarflow.circulation.refine import (
    AugResidual,
    adjust_prices,
    refine,
    saturate_negative,
    step_distances,
    step_send_flow,
)
from planarflow.circulation.scaling import CirculationResult, min_cost_circulation, refine_count

__all__ = [
    "AugResidual",
    "CirculationProblem",
    "CirculationResult",
    "FlowState",
    "adjust_prices",
    "lambda_stats",
    "min_cost_circulation",
    "refine",
    "refine_count",
    "saturate_negative",
    "step_distances",
    "step_send_flow",
]
