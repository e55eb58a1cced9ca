"""
Run Families

The numerical eps -> 0 Cauchy study and the modified / classic comparison.
Members are independent runs and may execute in parallel.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..exceptions import EpsilonListError, MemberRunError
from ..models.config_models import EquationVariant, SolverConfig
from ..models.report_models import EpsilonFamilyRow, EpsilonFamilyTable, VariantComparison
from ..models.run_models import RunRecord
from ..spectral.field import SpectralField
from ..utils.parallel import map_members
from .solver import grid_for, run

logger = logging.getLogger(__name__)

MIN_FAMILY_SIZE = 3


def validate_epsilon_list(eps_list: Sequence[float]) -> List[float]:
    """
    Raises:
        EpsilonListError: Unless the list is positive, strictly decreasing and has >= 3 entries
    """
    values = [float(e) for e in eps_list]
    if len(values) < MIN_FAMILY_SIZE:
        raise EpsilonListError(f"need at least {MIN_FAMILY_SIZE} epsilons, got {len(values)}")
    if any(not math.isfinite(e) or e <= 0 for e in values):
        raise EpsilonListError(f"epsilons must be positive and finite: {values}")
    if any(b >= a for a, b in zip(values, values[1:])):
        raise EpsilonListError(f"epsilons must be strictly decreasing: {values}")
    return values


def sup_state_distance(a: RunRecord, b: RunRecord) -> float:
    """sup over shared sample times of the L2 distance between two runs"""
    if len(a.states) != len(b.states) or not np.allclose(a.times, b.times, rtol=0.0, atol=1e-12):
        raise MemberRunError("runs were not sampled at the same times")
    dx = grid_for(a.config).dx
    diff = np.vstack(a.states) - np.vstack(b.states)
    return math.sqrt(dx * float(np.max(np.sum(np.abs(diff) ** 2, axis=1))))


def run_members(configs: Sequence[SolverConfig], u0: SpectralField, jobs: int = 1) -> List[RunRecord]:
    """
    Run every configuration from the same data

    Raises:
        MemberRunError: If a member raises or does not complete
    """
    outcomes = map_members(lambda cfg: run(cfg, u0), list(configs), jobs)
    records = []
    for cfg, outcome in zip(configs, outcomes):
        label = f"{cfg.variant.value} eps={cfg.epsilon:g}"
        if isinstance(outcome, BaseException):
            raise MemberRunError(f"member {label} failed: {outcome}") from outcome
        if not outcome.completed:
            raise MemberRunError(f"member {label} ended with {outcome.status.value}: {outcome.error}")
        records.append(outcome)
    return records


def cauchy_table(
    eps_values: Sequence[float],
    records: Sequence[RunRecord],
    reference: Optional[RunRecord],
) -> EpsilonFamilyTable:
    """
    Distances, monotonicity and observed rates for runs ordered by decreasing epsilon

    Without an eps = 0 reference the distances to zero are NaN and no rates are reported.
    """
    to_next: List[float] = [sup_state_distance(a, b) for a, b in zip(records[:-1], records[1:])]
    to_zero: List[float] = [
        sup_state_distance(r, reference) if reference is not None else math.nan for r in records
    ]

    rows = [
        EpsilonFamilyRow(
            epsilon=eps,
            distance_to_next=to_next[i] if i < len(to_next) else None,
            distance_to_zero=to_zero[i],
        )
        for i, eps in enumerate(eps_values)
    ]
    monotone = all(b <= a for a, b in zip(to_next, to_next[1:])) and all(
        b <= a for a, b in zip(to_zero, to_zero[1:])
    )
    rates = [
        math.log(to_zero[i] / to_zero[i + 1]) / math.log(eps_values[i] / eps_values[i + 1])
        for i in range(len(eps_values) - 1)
        if to_zero[i] > 0 and to_zero[i + 1] > 0
    ]
    logger.info(f"epsilon family {list(eps_values)}: distances to eps=0 {to_zero}, observed rates {rates}")
    return EpsilonFamilyTable(rows=rows, monotone=monotone, observed_rates=rates)


def epsilon_family_study(
    base: SolverConfig,
    eps_list: Sequence[float],
    u0: SpectralField,
    jobs: int = 1,
) -> EpsilonFamilyTable:
    """
    Sup-in-time L2 distances along a decreasing epsilon family

    Args:
        base: Configuration shared by every member
        eps_list: Positive strictly decreasing epsilons, at least three
        u0: Initial data
        jobs: Members run concurrently

    Returns:
        EpsilonFamilyTable with distances to the next member and to the eps = 0 run

    Raises:
        EpsilonListError: If eps_list is malformed
        MemberRunError: If any member run fails
    """
    eps_values = validate_epsilon_list(eps_list)
    configs = [base.updated(equation={"epsilon": e}) for e in eps_values + [0.0]]
    records = run_members(configs, u0, jobs)
    return cauchy_table(eps_values, records[:-1], records[-1])


def compare_variants(cfg: SolverConfig, u0: SpectralField, jobs: int = 1) -> VariantComparison:
    """
    Run the modified and classic laws from the same data

    The classic member is advisory: a classic run that stops early is
    reported with its status and compared up to its last sample.
    """
    members = [cfg.updated(equation={"variant": v.value}) for v in EquationVariant]
    outcomes = map_members(lambda c: run(c, u0), members, jobs)
    records: Dict[EquationVariant, RunRecord] = {}
    for member, outcome in zip(members, outcomes):
        if isinstance(outcome, BaseException):
            raise MemberRunError(f"{member.variant.value} run failed: {outcome}") from outcome
        records[member.variant] = outcome

    modified = records[EquationVariant.MODIFIED]
    classic = records[EquationVariant.WHITHAM_CLASSIC]
    shared = min(len(modified.samples), len(classic.samples))
    dx = grid_for(cfg).dx
    distance = [
        math.sqrt(dx * float(np.sum(np.abs(modified.states[i] - classic.states[i]) ** 2)))
        for i in range(shared)
    ]
    return VariantComparison(
        times=list(modified.times[:shared]),
        l2_modified=list(modified.series("l2")[:shared]),
        l2_classic=list(classic.series("l2")[:shared]),
        dx_linf_modified=list(modified.series("dx_linf")[:shared]),
        dx_linf_classic=list(classic.series("dx_linf")[:shared]),
        distance=distance,
        status_modified=modified.status.value,
        status_classic=classic.status.value,
    )
