# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

"""Weighted-sum points of the two-user DF rate region.

With weights mu_l < mu_h the higher-weight user h is decoded last, and the
weighted sum at a policy is the smallest of six concave pieces:

    A_rd = mu_l f_r({l}) + mu_h f_d({h})      (l at the relay, h at the destination)
    A_dr = mu_l f_d({l}) + mu_h f_r({h})
    B_zy = mu_l f_z(K) + (mu_h - mu_l) f_y({h}),   z, y in {r, d}

A case is a set of pieces that tie at the minimum. Each case is solved as a
weighted mixture of its pieces with the weights at which they tie, and the first
policy whose binding pieces are exactly the case's own is optimal.
"""

from collections import OrderedDict, namedtuple
from itertools import chain, combinations
from typing import List, Tuple

import numpy as np

from marco.fading.ensemble import FadingEnsemble
from marco.fading.geometry import DESTINATION, RELAY, Budget
from marco.setfn.case_label import BoundFamily, CaseKind, CaseLabel
from marco.setfn.intersection import intersect_max_sum, two_user_weighted_optimum
from marco.utils.exception.setfn_exception import NonPositiveWeightError, UserCountError
from marco.utils.exception.solver_exception import (
    CaseInfeasibleError, NoCaseSatisfiedError, SolverNonConvergenceError
)
from marco.utils.logger import DummyLogger
from marco.wfsolve.boundary import solve_tied_pieces
from marco.wfsolve.config import SolverConfig
from marco.wfsolve.mixture import MixtureEngine, Piece

from .conditions import ConditionRecord
from .report import SolverReport
from .sum_rate import optimal_df_sum_rate

WeightedCase = namedtuple("WeightedCase", ["label", "support"])

EXPERIMENTAL_SUB_CASE = "eq"


def weighted_pieces(mu: Tuple[float, float]) -> "OrderedDict[str, Piece]":
    """The six pieces for weights with mu[0] != mu[1], keyed A_rd, A_dr, B_rr, B_rd, B_dr, B_dd."""
    low, high = (1, 2) if mu[1] > mu[0] else (2, 1)
    mu_l, mu_h = min(mu), max(mu)
    pieces = OrderedDict()
    pieces["A_rd"] = ((mu_l, RELAY, low), (mu_h, DESTINATION, high))
    pieces["A_dr"] = ((mu_l, DESTINATION, low), (mu_h, RELAY, high))
    for z in (RELAY, DESTINATION):
        for y in (RELAY, DESTINATION):
            pieces[f"B_{z}{y}"] = ((mu_l, z, 3), (mu_h - mu_l, y, high))
    return pieces


def weighted_cases(mu: Tuple[float, float]) -> List[WeightedCase]:
    """Cases in acceptance order: inactive, boundary, then active.

    A_rd is the inactive case with the lower-weight user at the relay, A_dr the
    one with the higher-weight user there. B_ry alone is 3a and B_dy alone 3b, with
    sub-case y; the pair {B_zr, B_zd} is the equality sub-case of z and {B_ry, B_dy}
    is 3c. Boundary cases join one A piece to the active supports.
    """
    low, high = (1, 2) if mu[1] > mu[0] else (2, 1)
    relay_side = {"A_rd": low, "A_dr": high}
    active_of = {RELAY: CaseKind.ACTIVE_3A, DESTINATION: CaseKind.ACTIVE_3B}
    sides = (RELAY, DESTINATION)

    cases = [WeightedCase(CaseLabel.inactive(mask), (name,)) for name, mask in relay_side.items()]
    for name, mask in relay_side.items():
        for z in sides:
            for y in sides:
                label = CaseLabel(CaseKind.BOUNDARY, mask, active_of[z], sub_case=y)
                cases.append(WeightedCase(label, (name, f"B_{z}{y}")))
        for y in sides:
            label = CaseLabel(CaseKind.BOUNDARY, mask, CaseKind.ACTIVE_3C, sub_case=y)
            cases.append(WeightedCase(label, (name, f"B_r{y}", f"B_d{y}")))
    for z in sides:
        for y in sides:
            cases.append(WeightedCase(CaseLabel.active_case(active_of[z], sub_case=y), (f"B_{z}{y}",)))
    for z in sides:
        label = CaseLabel.active_case(active_of[z], sub_case=EXPERIMENTAL_SUB_CASE)
        cases.append(WeightedCase(label, (f"B_{z}r", f"B_{z}d")))
    for y in sides:
        cases.append(WeightedCase(CaseLabel.active_case(CaseKind.ACTIVE_3C, sub_case=y), (f"B_r{y}", f"B_d{y}")))
    return cases


def fallback_label(support: Tuple[str, ...], mu: Tuple[float, float]) -> CaseLabel:
    """Label for a tie outside the case list: the inactive case of its first A piece, else 3c."""
    low, high = (1, 2) if mu[1] > mu[0] else (2, 1)
    relay_side = {"A_rd": low, "A_dr": high}
    for name in support:
        if name in relay_side:
            return CaseLabel.inactive(relay_side[name])
    return CaseLabel.active_case(CaseKind.ACTIVE_3C)


def binding_pieces(values: "OrderedDict[str, float]", tol: float) -> Tuple[str, ...]:
    v = np.array(list(values.values()))
    width = tol * max(1.0, float(np.max(v)))
    return tuple(name for name, value in values.items() if value - np.min(v) <= width)


def _check_weights(ens: FadingEnsemble, mu1: float, mu2: float):
    if ens.k != 2:
        raise UserCountError(f"Weighted rate-region solver handles K = 2, got {ens.k}.")
    if mu1 <= 0 or mu2 <= 0:
        raise NonPositiveWeightError(f"Weights must be positive, got {(mu1, mu2)}.")


def _vertex_rates(engine: MixtureEngine, policy, mu: Tuple[float, float]) -> Tuple[float, float]:
    pair = engine.pair(policy)
    single = [min(pair.relay(mask), pair.destination(mask)) for mask in (1, 2)]
    both = intersect_max_sum(pair.f_relay, pair.f_dest).max_sum
    r1, r2, _ = two_user_weighted_optimum(single[0], single[1], both, mu)
    return float(r1), float(r2)


def optimal_df_weighted_region_2user(
    ens: FadingEnsemble, budget: Budget, mu1: float, mu2: float,
    cfg: SolverConfig = SolverConfig(), logger=DummyLogger()
) -> Tuple[Tuple[float, float], SolverReport]:
    """Maximize mu1 R1 + mu2 R2 over the two-user DF region.

    Equal weights reduce to the sum-rate solver. Otherwise the cases of the six-piece
    minimum are swept in order. If none realizes its own support, the remaining pairs
    and triples of pieces are tried, then the solved policy with the largest weighted
    sum is kept; either way the report is flagged degenerate.

    Args:
        ens (FadingEnsemble): Two-user ensemble.
        budget (Budget): Average power limits and bandwidth split.
        mu1 (float): Weight of user 1, positive.
        mu2 (float): Weight of user 2, positive.
        cfg (SolverConfig): Tolerances and caps.
        logger: Logger for case decisions.

    Returns:
        tuple: ((R1, R2), SolverReport); the report's objective is the weighted sum.
    """
    _check_weights(ens, mu1, mu2)
    mu = (float(mu1), float(mu2))
    engine = MixtureEngine(ens, budget, cfg, BoundFamily.DF, logger)

    if mu1 == mu2:
        report = optimal_df_sum_rate(ens, budget, cfg, logger)
        rates = _vertex_rates(engine, report.policy, mu)
        report.rates = rates
        report.objective = mu1 * sum(rates)
        return rates, report

    pieces = weighted_pieces(mu)
    records = []
    fallback = None
    accepted = None

    def _try(case: WeightedCase):
        nonlocal fallback
        try:
            result = solve_tied_pieces(engine, [pieces[name] for name in case.support], cfg, logger)
        except (CaseInfeasibleError, SolverNonConvergenceError) as e:
            logger.debug(f"weighted case {case.label} skipped: {e}")
            records.append(ConditionRecord(case.label, False, {}, f"skipped: {e}"))
            return None

        solution = result.solution
        values = OrderedDict(zip(pieces, engine.piece_values(solution.policy, list(pieces.values()))))
        binding = binding_pieces(values, cfg.condition_tol)
        reference = values[case.support[0]]
        residuals = OrderedDict((name, float(value - reference)) for name, value in values.items())
        satisfied = set(binding) == set(case.support)
        records.append(ConditionRecord(case.label, satisfied, residuals, f"binding {', '.join(binding)}"))

        weighted_sum = float(min(values.values()))
        if fallback is None or weighted_sum > fallback[1]:
            fallback = (case, weighted_sum, solution)
        return (case, weighted_sum, solution) if satisfied else None

    cases = weighted_cases(mu)
    for case in cases:
        accepted = _try(case)
        if accepted is not None:
            if case.label.sub_case == EXPERIMENTAL_SUB_CASE:
                logger.warn(f"weighted case {case.label} accepted; the equality sub-case is experimental")
            break

    # Ties outside the case list, e.g. {A_rd, A_dr}; accepted ones are flagged degenerate.
    extra_found = False
    if accepted is None:
        listed = {frozenset(case.support) for case in cases}
        for support in chain(combinations(pieces, 2), combinations(pieces, 3)):
            if frozenset(support) in listed:
                continue
            accepted = _try(WeightedCase(fallback_label(support, mu), support))
            if accepted is not None:
                logger.info(f"weighted optimum ties {', '.join(support)}, outside the case list")
                extra_found = True
                break

    degenerate = accepted is None or extra_found
    if accepted is None:
        if fallback is None:
            raise NoCaseSatisfiedError("Every weighted case failed to solve.", records=records)
        logger.warn(f"no weighted case met its conditions, keeping the best solved policy ({fallback[0].label})")
        accepted = fallback

    case, weighted_sum, solution = accepted
    rates = _vertex_rates(engine, solution.policy, mu)
    pair = engine.pair(solution.policy)
    report = SolverReport(
        policy=solution.policy,
        label=case.label,
        sum_rate=intersect_max_sum(pair.f_relay, pair.f_dest).max_sum,
        duals=solution.duals,
        conditions_checked=records,
        iterations={"cases": len(records), "accepted_solver": solution.iterations},
        degenerate=degenerate,
        objective=weighted_sum,
        budget=budget,
        rates=rates
    )
    return rates, report
