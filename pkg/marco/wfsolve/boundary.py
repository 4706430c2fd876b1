# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

from collections import namedtuple
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from marco.fading.ensemble import FadingEnsemble
from marco.fading.geometry import Budget
from marco.setfn.case_label import CaseKind, CaseLabel
from marco.setfn.set_function import full_mask
from marco.utils.exception.solver_exception import CaseInfeasibleError, InvalidCaseError
from marco.utils.logger import DummyLogger

from .config import SolverConfig
from .mixture import MixtureEngine, MixtureSolution, Piece, split_piece

BoundaryResult = namedtuple("BoundaryResult", ["weights", "solution", "residual"])

WEIGHT_XTOL = 1e-13
# First step of a bracket grown around a previous root.
WARM_STEP = 1e-3
# Half-width of the bracket used to time-share the optimizers around a residual jump.
JUMP_BRACKET = 1e-9


def case_pieces(case: CaseLabel, k: int) -> List[Piece]:
    """Split-sum pieces of a case; the first piece takes the weight left over by the others.

    Inactive and the single active cases have one piece. 3c is (destination
    K-sum, relay K-sum). (S, 3a) and (S, 3b) are (S split, active K-sum); (S, 3c)
    is (S split, relay K-sum, destination K-sum).
    """
    everyone = full_mask(k)
    if case.kind == CaseKind.INACTIVE:
        return [split_piece(k, case.subset)]
    if case.kind == CaseKind.ACTIVE_3A:
        return [split_piece(k, everyone)]
    if case.kind == CaseKind.ACTIVE_3B:
        return [split_piece(k, 0)]
    if case.kind == CaseKind.ACTIVE_3C:
        return [split_piece(k, 0), split_piece(k, everyone)]
    subset = split_piece(k, case.subset)
    if case.active == CaseKind.ACTIVE_3A:
        return [subset, split_piece(k, everyone)]
    if case.active == CaseKind.ACTIVE_3B:
        return [subset, split_piece(k, 0)]
    return [subset, split_piece(k, everyone), split_piece(k, 0)]


def tied_weighted_pieces(pieces: Sequence[Piece], weights: Tuple[float, ...] = ()) -> List[Tuple[float, Piece]]:
    """Weights for pieces[1:], with 1 - sum(weights) on pieces[0]; zero weights are dropped."""
    mix = [1.0 - sum(weights)] + list(weights)
    return [(float(w), piece) for w, piece in zip(mix, pieces) if w > 0]


def case_weighted_pieces(case: CaseLabel, k: int, weights: Tuple[float, ...] = ()) -> List[Tuple[float, Piece]]:
    """Pieces of a case with their mixture weights.

    The weight alpha multiplies the case's K-sum term: 3c puts alpha on the relay
    sum and 1 - alpha on the destination sum, (S, 3a) and (S, 3b) give 1 - alpha
    to the S split, and (S, 3c) takes (alpha1, alpha2) on the relay and
    destination sums with the rest on the S split.
    """
    pieces = case_pieces(case, k)
    if not case.needs_weights:
        return [(1.0, pieces[0])]
    return tied_weighted_pieces(pieces, weights)


def _normalize_weights(case: CaseLabel, weights: Union[float, Sequence[float]]) -> Tuple[float, ...]:
    if not case.needs_weights:
        raise InvalidCaseError(f"Case {case} has no equality condition to weight.")
    weights = (float(weights),) if np.isscalar(weights) else tuple(float(w) for w in weights)
    expected = 2 if case.kind == CaseKind.BOUNDARY and case.active == CaseKind.ACTIVE_3C else 1
    if len(weights) != expected:
        raise InvalidCaseError(f"Case {case} takes {expected} weights, got {weights}.")
    if any(w < 0 or w > 1 for w in weights) or sum(weights) > 1 + 1e-12:
        raise InvalidCaseError(f"Weights {weights} must lie in [0, 1] and sum to at most 1.")
    return weights


def iterative_nonwf(
    ens: FadingEnsemble, budget: Budget, weights: Union[float, Sequence[float]], case: CaseLabel,
    cfg: SolverConfig = SolverConfig(), engine: Optional[MixtureEngine] = None, logger=DummyLogger()
) -> MixtureSolution:
    """Optimal policy of a 3c or boundary case mixture at fixed weights.

    Users are updated in turn: with the others fixed, every sample solves the
    ratio-sum KKT equation of the mixture, and the user's multiplier is set by its
    power limit. With a weight at 0 or 1 only one piece is left and the solve is
    opportunistic water-filling toward one receiver.

    Args:
        ens (FadingEnsemble): Channel ensemble.
        budget (Budget): Power limits and bandwidth split.
        weights (float | Sequence[float]): alpha, or (alpha1, alpha2) for (S, 3c).
        case (CaseLabel): A 3c or boundary case.
        cfg (SolverConfig): Tolerances and caps.
        engine (MixtureEngine): Engine to reuse; one is built for the case's family if None.
        logger: Logger for diagnostics.

    Returns:
        MixtureSolution: Policy, duals carrying the weights, objective and its trace.
    """
    weights = _normalize_weights(case, weights)
    engine = engine or MixtureEngine(ens, budget, cfg, case.family, logger)
    return engine.solve(case_weighted_pieces(case, ens.k, weights), alpha=weights)


def _warm_bracket(evaluate: Callable[[float], tuple], guess: float, tol: float) -> Optional[Tuple[float, float]]:
    """Sign-change bracket grown from a previous root by doubling steps.

    Returns (w, w) when a probed weight already meets the tolerance, and None when
    the walk reaches 0 or 1 without a sign change.
    """
    if not 0.0 < guess < 1.0:
        return None
    _, r, scale = evaluate(guess)
    if abs(r) <= tol * scale:
        return guess, guess
    direction = 1.0 if r < 0 else -1.0
    near, step = guess, WARM_STEP
    while 0.0 < near < 1.0:
        far = min(max(near + direction * step, 0.0), 1.0)
        _, r_far, scale = evaluate(far)
        if abs(r_far) <= tol * scale:
            return far, far
        if r_far * direction > 0:
            return (near, far) if direction > 0 else (far, near)
        near, step = far, 2.0 * step
    return None


def _search_weight(
    solve: Callable[[float], MixtureSolution], residual: Callable[[MixtureSolution], Tuple[float, float]],
    tol: float, clamp: bool, logger, guess: Optional[float] = None
) -> Tuple[float, MixtureSolution, float]:
    """Root of a residual that is nondecreasing in a weight on [0, 1].

    With a ``guess`` the bracket is grown around it first; the endpoints are only
    solved when that walk runs off [0, 1].
    """
    cache = {}

    def _evaluate(w: float):
        if w not in cache:
            solution = solve(w)
            cache[w] = (solution, *residual(solution))
        return cache[w]

    bracket = None if guess is None else _warm_bracket(_evaluate, guess, tol)
    if bracket is not None and bracket[0] == bracket[1]:
        solution, r, _ = _evaluate(bracket[0])
        logger.debug(f"weight {bracket[0]:.12g} taken from the previous root")
        return bracket[0], solution, r
    if bracket is None:
        s0, r0, c0 = _evaluate(0.0)
        if abs(r0) <= tol * c0:
            return 0.0, s0, r0
        s1, r1, c1 = _evaluate(1.0)
        if abs(r1) <= tol * c1:
            return 1.0, s1, r1
        if not r0 < 0 < r1:
            if clamp:
                return (0.0, s0, r0) if r0 > 0 else (1.0, s1, r1)
            raise CaseInfeasibleError(
                f"Residual keeps one sign on [0, 1]: {r0:.6g}, {r1:.6g}.", residuals=(r0, r1)
            )
        bracket = (0.0, 1.0)

    root = brentq(lambda w: _evaluate(w)[1], bracket[0], bracket[1], xtol=WEIGHT_XTOL)
    solution, r, scale = _evaluate(root)
    logger.debug(f"weight root {root:.12g}, residual {r:.3g}")
    if abs(r) <= tol * scale:
        return root, solution, r

    # The optimizer jumps at the root; time-sharing the two sides is optimal there too.
    s_lo, r_lo, _ = _evaluate(max(root - JUMP_BRACKET, 0.0))
    s_hi, r_hi, _ = _evaluate(min(root + JUMP_BRACKET, 1.0))
    if not r_lo < 0 < r_hi:
        logger.warn(f"residual {r:.3g} at weight {root:.12g} is above tolerance")
        return root, solution, r

    def _mixed(weight: float) -> MixtureSolution:
        return solution._replace(policy=s_lo.policy.mix(s_hi.policy, weight))

    share = brentq(lambda t: residual(_mixed(t))[0], 0.0, 1.0, xtol=WEIGHT_XTOL)
    mixed = _mixed(share)
    return root, mixed, residual(mixed)[0]


def _difference(engine: MixtureEngine, low: Piece, high: Piece) -> Callable[[MixtureSolution], Tuple[float, float]]:
    def _residual(solution: MixtureSolution) -> Tuple[float, float]:
        v_low, v_high = engine.piece_values(solution.policy, [low, high])
        return float(v_high - v_low), max(1.0, abs(float(v_low)), abs(float(v_high)))
    return _residual


def solve_tied_pieces(
    engine: MixtureEngine, pieces: Sequence[Piece], cfg: SolverConfig, logger=DummyLogger(),
    hint: Optional[Sequence[float]] = None
) -> BoundaryResult:
    """Weights of one to three pieces at which their values tie, and the mixture optimum there.

    Two pieces (a, b) put weight w on b; the residual V_b - V_a is nondecreasing in
    w and is solved by Brent's method after an endpoint sign check. Three pieces
    (a, b, c) nest two searches: the share beta of b in the weight t on {b, c} ties
    V_b and V_c, and for each beta the total t ties their beta-mix to V_a,
    clamped to [0, 1]. A ``hint`` of weights from an earlier solve seeds the
    brackets.

    Raises:
        CaseInfeasibleError: The outer residual keeps its sign over [0, 1].

    Returns:
        BoundaryResult: Weights on pieces[1:], the solution and the residual(s).
    """
    def _solve(weights: Tuple[float, ...]) -> MixtureSolution:
        return engine.solve(tied_weighted_pieces(pieces, weights), alpha=weights)

    if len(pieces) == 1:
        return BoundaryResult((), _solve(()), 0.0)
    hint = tuple(hint or ())
    if len(pieces) == 2:
        w, solution, r = _search_weight(
            lambda w: _solve((w,)), _difference(engine, pieces[0], pieces[1]), cfg.alpha_tol, False, logger,
            guess=hint[0] if len(hint) == 1 else None
        )
        return BoundaryResult((w,), solution, r)

    inner = {}
    total = sum(hint) if len(hint) == 2 else 0.0
    last_total = [total if total > 0 else None]

    def _inner(beta: float) -> MixtureSolution:
        if beta not in inner:
            def _residual(solution: MixtureSolution) -> Tuple[float, float]:
                v_a, v_b, v_c = engine.piece_values(solution.policy, pieces)
                mix = beta * v_b + (1.0 - beta) * v_c
                return float(mix - v_a), max(1.0, abs(float(v_a)), abs(float(mix)))

            last_total[0], inner[beta], _ = _search_weight(
                lambda t: _solve((t * beta, t * (1.0 - beta))), _residual, 0.5 * cfg.alpha_tol, True, logger,
                guess=last_total[0]
            )
        return inner[beta]

    beta, solution, r_outer = _search_weight(
        _inner, _difference(engine, pieces[2], pieces[1]), cfg.alpha_tol, False, logger,
        guess=hint[0] / total if total > 0 else None
    )
    v_a, v_b, v_c = engine.piece_values(solution.policy, pieces)
    r_inner = float(beta * v_b + (1.0 - beta) * v_c - v_a)
    return BoundaryResult(solution.duals.alpha, solution, (r_outer, r_inner))


def solve_boundary_weights(
    ens: FadingEnsemble, budget: Budget, case: CaseLabel, cfg: SolverConfig = SolverConfig(),
    engine: Optional[MixtureEngine] = None, logger=DummyLogger(), hint: Optional[Sequence[float]] = None
) -> BoundaryResult:
    """Find the weights at which a case's binding split sums tie.

    For 3c the residual is relay K-sum minus destination K-sum; for (S, 3a) and
    (S, 3b) it is the K-sum minus the S split; (S, 3c) ties all three.

    Raises:
        InvalidCaseError: The case has no equality condition.
        CaseInfeasibleError: A residual keeps its sign over the whole weight range.

    Returns:
        BoundaryResult: Weights, the mixture solution at them and the residual(s).
    """
    if not case.needs_weights:
        raise InvalidCaseError(f"Case {case} has no boundary weight to search.")
    engine = engine or MixtureEngine(ens, budget, cfg, case.family, logger)
    return solve_tied_pieces(engine, case_pieces(case, ens.k), cfg, logger, hint)
