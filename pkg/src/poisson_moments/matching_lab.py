"""Bicolored matching experiments on the line.

Samples pairs of Poisson point sets, computes the index-sorted matching
cost sum |X_k - Y_k|^b, verifies optimality against a brute-force
permutation oracle at small n, and fits the empirical cost-versus-n
scaling law with the rate coupled as lambda = n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .closed_forms import sum_moments
from .exact_arith import Rat
from .oracles import ArrivalSequence, MCEstimate, sample_arrivals
from .prng import uniform_block

__all__ = [
    "MatchingRun",
    "ScalingFit",
    "sorted_matching_cost",
    "optimal_matching_cost_bruteforce",
    "expected_sorted_cost_exact",
    "sample_matching_run",
    "mc_sorted_cost",
    "scaling_experiment",
]

_BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class MatchingRun:
    """One sampled bicolored configuration and its per-policy costs."""

    n: int
    b: float
    xs: ArrivalSequence
    ys: ArrivalSequence
    sorted_cost: float
    optimal_cost: float | None = None


@dataclass(frozen=True)
class ScalingFit:
    b: float
    n_grid: list
    mean_costs: list
    slope: float
    intercept: float
    r_squared: float


def sorted_matching_cost(xs: ArrivalSequence, ys: ArrivalSequence,
                         b: float) -> float:
    """sum_k |X_k - Y_k|^b for the index-to-index (sorted) matching."""
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    return float(np.sum(np.abs(xs.times - ys.times) ** b))


def optimal_matching_cost_bruteforce(xs, ys, b: float) -> float:
    """Minimum of sum |x_k - y_sigma(k)|^b over all bijections sigma.

    Enumerates all n! permutations, so n is capped at 8.
    """
    xs = list(xs)
    ys = list(ys)
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n > _BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force capped at n <= {_BRUTE_FORCE_LIMIT}, got {n}")
    return min(sum(abs(x - y) ** b for x, y in zip(xs, perm))
               for perm in permutations(ys))


def expected_sorted_cost_exact(n: int, a: int) -> Rat:
    """Exact E[sum_k |X_k - Y_k|^a] at the coupled rate lambda = n."""
    return sum_moments(n, a, Rat(n)).value


def sample_matching_run(n: int, b: float, seed: int, stream_pair: int = 0,
                        lam: float | None = None,
                        brute_force: bool = False) -> MatchingRun:
    """Sample one bicolored instance; lam defaults to the n-coupling."""
    rate = float(n) if lam is None else lam
    xs = sample_arrivals(n, rate, seed, 2 * stream_pair)
    ys = sample_arrivals(n, rate, seed, 2 * stream_pair + 1)
    cost = sorted_matching_cost(xs, ys, b)
    optimal = (optimal_matching_cost_bruteforce(xs.times, ys.times, b)
               if brute_force else None)
    return MatchingRun(n=n, b=b, xs=xs, ys=ys,
                       sorted_cost=cost, optimal_cost=optimal)


def _sorted_costs(n: int, b: float, lam: float, trials: int, seed: int,
                  stream_offset: int) -> np.ndarray:
    """Sorted costs for trials instances; pair t uses streams
    2(stream_offset+t) and 2(stream_offset+t)+1."""
    pairs = stream_offset + np.arange(trials, dtype=np.uint64)
    ux = uniform_block(seed, 2 * pairs, n)
    uy = uniform_block(seed, 2 * pairs + 1, n)
    x = np.cumsum(-np.log1p(-ux), axis=1) / lam
    y = np.cumsum(-np.log1p(-uy), axis=1) / lam
    return np.sum(np.abs(x - y) ** b, axis=1)


def mc_sorted_cost(n: int, b: float, trials: int, seed: int,
                   lam: float | None = None,
                   stream_offset: int = 0) -> MCEstimate:
    """Monte Carlo mean of the sorted matching cost (lambda = n by default)."""
    if trials < 2:
        raise ValueError(f"need at least 2 trials, got {trials}")
    rate = float(n) if lam is None else lam
    costs = _sorted_costs(n, b, rate, trials, seed, stream_offset)
    mean = float(np.mean(costs))
    stderr = float(np.std(costs, ddof=1) / math.sqrt(trials))
    return MCEstimate(mean=mean, stderr=stderr, samples=trials, seed=seed)


def scaling_experiment(b: float, n_grid: list, trials: int,
                       seed: int) -> ScalingFit:
    """Mean sorted cost at lambda = n over n_grid, with a log-log OLS fit.

    Grid point g uses stream pairs g*trials .. (g+1)*trials - 1, so every
    instance across the whole experiment has a distinct stream address.
    """
    n_grid = list(n_grid)
    if any(m >= n for m, n in zip(n_grid, n_grid[1:])) or n_grid[0] < 1:
        raise ValueError("n_grid must be strictly increasing with n >= 1")
    if trials < 2:
        raise ValueError(f"need at least 2 trials, got {trials}")
    means = []
    for g, n in enumerate(n_grid):
        costs = _sorted_costs(n, b, float(n), trials, seed, g * trials)
        means.append(float(np.mean(costs)))
    log_n = np.log(np.array(n_grid, dtype=float))
    log_c = np.log(np.array(means))
    slope, intercept = np.polyfit(log_n, log_c, 1)
    fitted = slope * log_n + intercept
    ss_res = float(np.sum((log_c - fitted) ** 2))
    ss_tot = float(np.sum((log_c - np.mean(log_c)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ScalingFit(b=b, n_grid=n_grid, mean_costs=means,
                      slope=float(slope), intercept=float(intercept),
                      r_squared=r_squared)
