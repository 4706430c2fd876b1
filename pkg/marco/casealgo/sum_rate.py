# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import namedtuple
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from marco.fading.ensemble import FadingEnsemble
from marco.fading.geometry import Budget
from marco.setfn.case_label import BoundFamily, CaseLabel, case_sequence
from marco.setfn.intersection import intersect_max_sum
from marco.setfn.set_function import check_user_count
from marco.utils.exception.solver_exception import (
    CaseInfeasibleError, NoCaseSatisfiedError, SolverNonConvergenceError
)
from marco.utils.logger import DummyLogger
from marco.wfsolve.boundary import case_weighted_pieces, solve_boundary_weights
from marco.wfsolve.config import SolverConfig
from marco.wfsolve.mixture import MAX_CUTSET_USERS, MixtureEngine, MixtureSolution, kkt_residuals

from .conditions import CaseCheck, ConditionRecord, check_case_conditions
from .report import SolverReport

CaseOutcome = namedtuple("CaseOutcome", ["label", "solution", "check"])

# Boundary weights of accepted or solved cases, keyed by CaseLabel.case_key.
WeightHints = Dict[tuple, Tuple[float, ...]]


def solve_case(
    engine: MixtureEngine, label: CaseLabel, logger=DummyLogger(), weight_hints: Optional[WeightHints] = None
) -> MixtureSolution:
    """Optimal policy of one case's objective.

    Inactive, 3a and 3b objectives are single split sums. 3c and boundary cases
    carry equality conditions whose weights are searched first, starting from
    the weights in ``weight_hints`` when the case has been solved before; the
    found weights are written back.

    Raises:
        CaseInfeasibleError: The case's equality cannot be met by any weight.
        SolverNonConvergenceError: An inner solver hit its iteration cap.
    """
    if not label.needs_weights:
        return engine.solve(case_weighted_pieces(label, engine.k))
    hint = None if weight_hints is None else weight_hints.get(label.case_key)
    result = solve_boundary_weights(engine.ens, engine.budget, label, engine.cfg, engine, logger, hint)
    if weight_hints is not None:
        weight_hints[label.case_key] = tuple(result.weights)
    return result.solution


def _plausible(label: CaseLabel, bands: Dict[int, FrozenSet[int]], k: int) -> bool:
    # Each support set's own maximizer must leave another support set binding.
    support = label.support(k)
    return all(not bands[mask].isdisjoint(support - {mask}) for mask in support if mask in bands)


def candidate_order(
    cases: Sequence[CaseLabel], bands: Dict[int, FrozenSet[int]], k: int
) -> List[CaseLabel]:
    """Weighted cases, those consistent with the single-set policies first.

    ``bands`` maps a split set T to the binding sets of the policy that maximizes
    g_T alone. A case leads when, for every set of its support with a known band,
    that band holds another set of the support; leading cases go by support size.
    The rest follow in their given order.
    """
    weighted = [label for label in cases if label.needs_weights]
    leading = [label for label in weighted if _plausible(label, bands, k)]
    leading.sort(key=lambda label: len(label.support(k)))
    return leading + [label for label in weighted if label not in leading]


def _try_case(
    engine: MixtureEngine, label: CaseLabel, logger, weight_hints: Optional[WeightHints]
) -> Tuple[Optional[CaseOutcome], ConditionRecord, Optional[CaseCheck]]:
    try:
        solution = solve_case(engine, label, logger, weight_hints)
    except CaseInfeasibleError as e:
        logger.debug(f"case {label} skipped: {e}")
        return None, ConditionRecord(label, False, {}, f"infeasible weights {e.residuals}"), None
    except SolverNonConvergenceError as e:
        logger.warn(f"case {label} skipped, solver did not converge: {e}")
        return None, ConditionRecord(label, False, dict(e.residuals), "no convergence"), None

    check = check_case_conditions(engine.pair(solution.policy), label, engine.cfg.condition_tol)
    note = f"classified {check.classification.label}"
    if check.classification.degenerate:
        note += " (degenerate)"
    record = ConditionRecord(label, check.satisfied, dict(check.residuals), note)
    if check.satisfied:
        logger.info(f"case {label} accepted")
        return CaseOutcome(label, solution, check), record, check
    logger.debug(f"case {label} rejected, {note}")
    return None, record, check


def sweep_cases(
    engine: MixtureEngine, cases: Sequence[CaseLabel], logger=DummyLogger(),
    weight_hints: Optional[WeightHints] = None
) -> Tuple[CaseOutcome, List[ConditionRecord]]:
    """Solve cases until one's policy meets its own conditions.

    Single-set cases (inactive, 3a, 3b) are cheap and go first, in their given
    order. Their policies' binding bands then rank the weighted cases (boundary
    and 3c) with :func:`candidate_order`; every case is still tried before giving
    up. Acceptance certifies optimality, so the order only decides which case is
    reported when several hold at once.

    Raises:
        NoCaseSatisfiedError: Every case was rejected; the error carries all records.
    """
    k = engine.k
    records = []
    bands = {}
    for label in (label for label in cases if not label.needs_weights):
        outcome, record, check = _try_case(engine, label, logger, weight_hints)
        records.append(record)
        if outcome is not None:
            return outcome, records
        if check is not None:
            bands[next(iter(label.support(k)))] = frozenset(check.classification.band)

    for label in candidate_order(cases, bands, k):
        outcome, record, _ = _try_case(engine, label, logger, weight_hints)
        records.append(record)
        if outcome is not None:
            return outcome, records

    raise NoCaseSatisfiedError(
        f"No case met its conditions among {len(records)}; check condition_tol.", records=records
    )


def _sum_rate_report(
    ens: FadingEnsemble, budget: Budget, cfg: SolverConfig, family: BoundFamily, logger,
    weight_hints: Optional[WeightHints] = None
) -> SolverReport:
    engine = MixtureEngine(ens, budget, cfg, family, logger)
    outcome, records = sweep_cases(engine, case_sequence(ens.k, family), logger, weight_hints)
    solution = outcome.solution
    pair = engine.pair(solution.policy)
    verdict = intersect_max_sum(pair.f_relay, pair.f_dest, cfg.condition_tol, family)
    residuals = kkt_residuals(solution, budget)

    notes = [f"kkt stationarity {residuals['stationarity']:.3g}, power {residuals['power']:.3g}"]
    if solution.channel_zero_users:
        notes.append(f"zero channel: {', '.join(str(u) for u in solution.channel_zero_users)}")
    return SolverReport(
        policy=solution.policy,
        label=outcome.label,
        sum_rate=verdict.max_sum,
        duals=solution.duals,
        conditions_checked=records,
        iterations={"cases": len(records), "accepted_solver": solution.iterations},
        degenerate=outcome.check.classification.degenerate,
        objective=solution.objective,
        budget=budget,
        notes=notes
    )


def optimal_df_sum_rate(
    ens: FadingEnsemble, budget: Budget, cfg: SolverConfig = SolverConfig(), logger=DummyLogger(),
    weight_hints: Optional[WeightHints] = None
) -> SolverReport:
    """Sum-rate optimal DF policy.

    The single-set cases (inactive, 3a, 3b) are tried first, then the boundary
    and 3c cases ranked by the single-set policies. Each case's objective is
    maximized and the first policy that realizes its own case is returned; a
    policy at which the case's split sums tie at the minimum maximizes the
    minimum split sum, which is the DF sum rate.

    Args:
        ens (FadingEnsemble): Channel ensemble, K <= 6.
        budget (Budget): Average power limits and bandwidth split.
        cfg (SolverConfig): Tolerances and caps.
        logger: Logger for case decisions and solver diagnostics.
        weight_hints (dict): Boundary weights from a nearby instance, e.g. the previous
            sweep point; updated in place.

    Returns:
        SolverReport: Accepted policy, its case, sum rate, duals and every case tried.
    """
    check_user_count(ens.k)
    return _sum_rate_report(ens, budget, cfg, BoundFamily.DF, logger, weight_hints)


def optimal_cutset_sum_rate(
    ens: FadingEnsemble, budget: Budget, cfg: SolverConfig = SolverConfig(), logger=DummyLogger(),
    weight_hints: Optional[WeightHints] = None
) -> SolverReport:
    """Policy maximizing the cutset sum-rate bound, by the same case sweep.

    Relay-side bounds are SIMO rates with relay and destination as one
    two-antenna receiver; destination-side bounds match DF.
    """
    check_user_count(ens.k, MAX_CUTSET_USERS)
    return _sum_rate_report(ens, budget, cfg, BoundFamily.CUTSET, logger, weight_hints)
