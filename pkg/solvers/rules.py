"""Per-task tier rule and transmit-power regime classification."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict

from models import Placement, RadioLink, Tier
from schedule_evaluator import EvaluationContext, candidate_times

logger = logging.getLogger(__name__)


def decision_rule(tf_local: float, tf_fog: float, tf_cloud: float) -> Tier:
    """Tier with the earliest finish time; ties prefer Local, then Fog."""
    return min((tf_local, Tier.LOCAL), (tf_fog, Tier.FOG), (tf_cloud, Tier.CLOUD))[1]


class PowerRegime(str, Enum):
    FOG_CASE_I = 'FogCaseI'
    FOG_CASE_II = 'FogCaseII'
    FOG_CASE_III = 'FogCaseIII'
    CLOUD_CASE_I = 'CloudCaseI'
    CLOUD_CASE_II = 'CloudCaseII'
    CLOUD_CASE_III = 'CloudCaseIII'


@dataclass(frozen=True)
class PowerCaseInputs:
    finish_tx: float
    pred_fog_max: float
    pred_cloud_max: float
    fog_cloud_time: float
    finish_fwd: float


@dataclass(frozen=True)
class PowerCase:
    regime: PowerRegime
    recommended_power: float


def classify_power_case(times: PowerCaseInputs, target: Tier, link: RadioLink) -> PowerCase:
    """Which term sets the ready time of an offloaded task.

    Only in the upload-bound cases does transmit power shorten the schedule,
    and even then the best choice is full power, so every case recommends
    tx_power_max. Exact ties resolve to the lowest-numbered case.
    """
    if target == Tier.FOG:
        terms = ((PowerRegime.FOG_CASE_I, times.finish_tx),
                 (PowerRegime.FOG_CASE_II, times.pred_fog_max),
                 (PowerRegime.FOG_CASE_III, times.pred_cloud_max))
    elif target == Tier.CLOUD:
        terms = ((PowerRegime.CLOUD_CASE_I, times.finish_tx + times.fog_cloud_time),
                 (PowerRegime.CLOUD_CASE_II, times.pred_cloud_max),
                 (PowerRegime.CLOUD_CASE_III, times.finish_fwd))
    else:
        raise ValueError(f"Power regimes apply to offloaded tasks only, got {target}")

    top = max(value for _, value in terms)
    regime = next(regime for regime, value in terms if value == top)
    return PowerCase(regime=regime, recommended_power=link.tx_power_max)


def power_cases(ctx: EvaluationContext, placement: Placement) -> Dict[int, PowerCase]:
    """Power regime of every offloaded task under a placement."""
    tiers = ctx.tiers_from_placement(placement)
    finish = [0.0] * ctx.n_tasks
    cases = {}
    for pos, task_id in enumerate(ctx.order):
        times = candidate_times(ctx, pos, tiers, finish)
        finish[pos] = times.finish_at(tiers[pos])
        if tiers[pos] == Tier.LOCAL:
            continue
        inputs = PowerCaseInputs(
            finish_tx=times.finish_tx,
            pred_fog_max=times.pred_fog,
            pred_cloud_max=times.pred_cloud,
            fog_cloud_time=ctx.costs[pos].fog_cloud_time,
            finish_fwd=times.finish_fwd,
        )
        cases[task_id] = classify_power_case(inputs, tiers[pos], ctx.platform.radio)
    regimes = {task_id: case.regime.value for task_id, case in sorted(cases.items())}
    logger.debug(f"Power regimes: {regimes}")
    return dict(sorted(cases.items()))
