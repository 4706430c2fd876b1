# Copyright (c) Microsoft Corporation.
# Licensed under the MIT license.

import functools
import operator
from collections import namedtuple
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from marco.fading.ensemble import FadingEnsemble
from marco.fading.geometry import DESTINATION, RELAY, Budget
from marco.ratebounds.bounds import RateRegionPair, bounds_for
from marco.ratebounds.policy import PowerPolicy, check_policy
from marco.setfn.case_label import BoundFamily
from marco.setfn.set_function import full_mask, subset_users
from marco.utils.exception.setfn_exception import UserCountError
from marco.utils.exception.solver_exception import SolverNonConvergenceError
from marco.utils.logger import DummyLogger

from .block_ascent import block_coordinate_ascent, block_kkt_residual
from .config import DualVariables, SolverConfig
from .projected_gradient import projected_gradient_concave
from .terms import RateTerm, SimoTerm, SisoTerm, objective_gradient, objective_value
from .waterfilling import waterfill_mac_opportunistic, waterfill_single

MAX_CUTSET_USERS = 4

# A piece is a sum of bounds, each a (coefficient, receiver, bitmask) triple.
Piece = Tuple[Tuple[float, str, int], ...]

MixtureSolution = namedtuple(
    "MixtureSolution", ["policy", "duals", "objective", "trace", "iterations", "channel_zero_users", "kkt_residual"]
)


def split_piece(k: int, relay_side: int) -> Piece:
    """The split sum f_relay(T) + f_dest(K \\ T) as a piece."""
    terms = []
    if relay_side:
        terms.append((1.0, RELAY, relay_side))
    if relay_side != full_mask(k):
        terms.append((1.0, DESTINATION, full_mask(k) ^ relay_side))
    return tuple(terms)


def piece_value(pair: RateRegionPair, piece: Piece) -> float:
    return float(sum(coefficient * pair.bound(receiver, mask) for coefficient, receiver, mask in piece))


class MixtureEngine:
    """Maximizes weighted sums of rate-bound pieces for one ensemble, budget and bound family.

    The relay only enters the destination bounds, through a term that does not
    depend on the sources, so its column is always water-filled on the
    relay-to-destination link. The sources' part is solved by opportunistic
    water-filling when the terms involve disjoint user sets on single-antenna
    receivers, and by block coordinate ascent otherwise. Cutset relay-side terms
    are SIMO log-det rates; their block ascent result is polished by projected
    gradient ascent, which also takes over if the block ascent fails.

    Solutions are cached per weighting and the last one warm-starts the next solve.
    """

    def __init__(
        self, ens: FadingEnsemble, budget: Budget, cfg: SolverConfig = SolverConfig(),
        family: BoundFamily = BoundFamily.DF, logger=DummyLogger()
    ):
        if budget.k != ens.k:
            raise UserCountError(f"Budget covers {budget.k} sources, ensemble has {ens.k}.")
        if family == BoundFamily.CUTSET and ens.k > MAX_CUTSET_USERS:
            raise UserCountError(f"Cutset solver supports K <= {MAX_CUTSET_USERS}, got {ens.k}.")
        self.ens = ens
        self.budget = budget
        self.cfg = cfg
        self.family = family
        self._logger = logger
        relay = waterfill_single(ens.relay_link_power_gain, budget.theta_bar, budget.relay_budget)
        self._relay_powers = relay.powers
        self._relay_nu = relay.nu
        self._relay_channel_zero = relay.channel_zero
        self._cache: Dict[tuple, MixtureSolution] = {}
        self._last: Optional[MixtureSolution] = None

    @property
    def k(self) -> int:
        return self.ens.k

    def pair(self, policy: PowerPolicy) -> RateRegionPair:
        return bounds_for(self.family, self.ens, policy, self.budget)

    def piece_values(self, policy: PowerPolicy, pieces: Sequence[Piece]) -> np.ndarray:
        check_policy(self.ens, policy, self.budget)
        pair = self.pair(policy)
        return np.array([piece_value(pair, piece) for piece in pieces])

    def _terms(self, weighted_pieces: Sequence[Tuple[float, Piece]]) -> List[RateTerm]:
        coefficients: Dict[Tuple[str, int], float] = {}
        for weight, piece in weighted_pieces:
            for coefficient, receiver, mask in piece:
                if mask and weight * coefficient != 0:
                    key = (receiver, mask)
                    coefficients[key] = coefficients.get(key, 0.0) + weight * coefficient
        theta = self.budget.theta
        terms = []
        for (receiver, mask), coefficient in sorted(coefficients.items()):
            if receiver == DESTINATION:
                terms.append(SisoTerm(coefficient, self.ens.destination_power_gains, mask, theta))
            elif self.family == BoundFamily.CUTSET:
                terms.append(SimoTerm(coefficient, self.ens.relay_gains, self.ens.destination_gains, mask, theta))
            else:
                terms.append(SisoTerm(coefficient, self.ens.relay_power_gains, mask, theta))
        return terms

    def solve(self, weighted_pieces: Sequence[Tuple[float, Piece]], alpha: Tuple[float, ...] = ()) -> MixtureSolution:
        """Maximize sum_i w_i * piece_i over feasible policies.

        Args:
            weighted_pieces (Sequence[Tuple[float, Piece]]): Non-negative weights and their pieces.
            alpha (tuple): Boundary weights recorded in the returned duals.

        Returns:
            MixtureSolution: Policy, duals, objective (the weighted pieces at the policy),
                source-objective trace, iterations, zero-channel users and KKT residual.
        """
        key = tuple((round(float(w), 15), piece) for w, piece in weighted_pieces) + (tuple(alpha),)
        if key in self._cache:
            return self._cache[key]

        terms = self._terms(weighted_pieces)
        sources, nu, trace, iterations, zero, residual = self._solve_sources(terms)
        policy = PowerPolicy.from_columns(sources, self._relay_powers)
        values = self.piece_values(policy, [piece for _, piece in weighted_pieces])
        objective = float(sum(w * v for (w, _), v in zip(weighted_pieces, values)))
        zero_users = tuple(user + 1 for user in range(self.k) if zero[user])
        if self._relay_channel_zero:
            zero_users += ("r",)
        solution = MixtureSolution(
            policy=policy,
            duals=DualVariables(nu=tuple(nu) + (self._relay_nu,), alpha=tuple(alpha)),
            objective=objective,
            trace=trace,
            iterations=iterations,
            channel_zero_users=zero_users,
            kkt_residual=residual
        )
        self._cache[key] = solution
        self._last = solution
        return solution

    def _solve_sources(self, terms: List[RateTerm]):
        k, n = self.k, self.ens.n
        p_bars = self.budget.source_budgets
        if not terms:
            return np.zeros((n, k)), [0.0] * k, [0.0], 0, [False] * k, 0.0

        union = functools.reduce(operator.or_, (term.mask for term in terms))
        disjoint = sum(bin(term.mask).count("1") for term in terms) == bin(union).count("1")
        if disjoint and all(isinstance(term, SisoTerm) for term in terms):
            return self._solve_disjoint(terms)

        initial = None
        if self._last is not None:
            initial = self._last.policy.sources.copy()
        try:
            result = block_coordinate_ascent(terms, p_bars, self.cfg, initial=initial, logger=self._logger)
            sources, nu, trace, iterations, zero = (
                result.powers, list(result.nu), list(result.trace), result.iterations, list(result.channel_zero)
            )
        except SolverNonConvergenceError as e:
            if self.family != BoundFamily.CUTSET:
                raise
            self._logger.warn(f"block ascent failed on a SIMO objective, switching to projected gradient: {e}")
            sources = initial if initial is not None else np.tile(p_bars, (n, 1))
            nu, iterations, zero = [0.0] * k, self.cfg.max_iters, [False] * k
            trace = [objective_value(terms, sources)]

        if self.family == BoundFamily.CUTSET and any(isinstance(term, SimoTerm) for term in terms):
            polished = projected_gradient_concave(
                lambda x: (objective_value(terms, x), objective_gradient(terms, x)),
                p_bars, n, self.cfg, initial=sources, logger=self._logger
            )
            if polished.objective >= trace[-1]:
                sources = polished.powers
                trace = trace + list(polished.trace[1:])
            iterations += polished.iterations
            nu = self._implied_nu(terms, sources)

        return sources, nu, trace, iterations, zero, block_kkt_residual(terms, sources, nu)

    def _solve_disjoint(self, terms: List[RateTerm]):
        k, n = self.k, self.ens.n
        p_bars = self.budget.source_budgets
        sources = np.zeros((n, k))
        nu = [0.0] * k
        zero = [False] * k
        trace_start = objective_value(terms, np.tile(p_bars, (n, 1)))
        iterations = 0
        for term in terms:
            columns = [user - 1 for user in subset_users(term.mask)]
            result = waterfill_mac_opportunistic(
                term.power_gains[:, columns], term.theta, p_bars[columns], self.cfg, self._logger
            )
            sources[:, columns] = result.powers
            for position, user in enumerate(columns):
                nu[user] = term.coefficient * result.nu[position]
                zero[user] = result.channel_zero[position]
            iterations += result.iterations
        objective = objective_value(terms, sources)
        return sources, nu, [trace_start, objective], iterations, zero, block_kkt_residual(terms, sources, nu)

    def _implied_nu(self, terms: List[RateTerm], sources: np.ndarray) -> List[float]:
        """Multipliers read off the marginal utilities at the powered samples."""
        gradient = objective_gradient(terms, sources) * sources.shape[0]
        nu = []
        for user in range(self.k):
            powered = sources[:, user] > 0
            nu.append(float(np.mean(gradient[powered, user])) if np.any(powered) else 0.0)
        return nu


def kkt_residuals(solution: MixtureSolution, budget: Budget) -> dict:
    """Stationarity and relative power-limit residuals of a solution."""
    nu = np.array(solution.duals.nu)
    means = solution.policy.mean_powers()
    limits = budget.limits
    power = np.where(nu > 0, np.abs(means - limits), np.maximum(means - limits, 0.0)) / np.maximum(1.0, limits)
    return {"stationarity": float(solution.kkt_residual), "power": float(np.max(power))}
