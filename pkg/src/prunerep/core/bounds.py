"""Closed-form guarantees for the explore/exploit pruner.

All horizons T are finite and 1-based; probabilities live in (0, 1].
``s_star_size`` is the size of the smallest sufficient subset for the
whole instance sequence, ``universe_size`` the size of the full search
space.
"""

from __future__ import annotations

import math

from prunerep.errors import DomainError

from .schedule import Schedule


def _check_counts(s_star_size, universe_size=None, T=None):
    if s_star_size < 0:
        raise DomainError(f"s_star_size must be >= 0, got {s_star_size}")
    if universe_size is not None and universe_size < s_star_size:
        raise DomainError(
            f"universe_size {universe_size} smaller than s_star_size {s_star_size}"
        )
    if T is not None and T < 1:
        raise DomainError(f"horizon must be >= 1, got {T}")


def _check_prob(p):
    p = float(p)
    if not (0.0 < p <= 1.0) or math.isnan(p):
        raise DomainError(f"probability must lie in (0, 1], got {p}")
    return p


def mistake_bound(s_star_size: int, p, T: int) -> float:
    """Expected-mistake upper bound over T rounds.

    For a constant exploration probability p the bound is
    ``s* (1-p) (1 - (1-p)^T) / p``, which is at most ``s*/p``. ``p`` may
    also be a :class:`Schedule`: a constant schedule uses its p, the
    inverse-sqrt schedule dispatches to :func:`corollary_mistake_bound`
    (``s* sqrt(T)``), and a custom schedule uses its smallest value over
    the first T rounds (the constant-p bound holds for any schedule with
    p_i >= p throughout).
    """
    _check_counts(s_star_size, T=T)
    if isinstance(p, Schedule):
        if p.kind == "inverse-sqrt":
            return corollary_mistake_bound(s_star_size, T)
        if p.kind == "constant":
            p = p.p
        else:
            p = p.min_probability(T)
    p = _check_prob(p)
    return s_star_size * (1.0 - p) * (1.0 - (1.0 - p) ** T) / p


def corollary_mistake_bound(s_star_size: int, T: int) -> float:
    """Mistake bound ``s* sqrt(T)`` for the p_i = 1/sqrt(i) schedule."""
    _check_counts(s_star_size, T=T)
    return s_star_size * math.sqrt(T)


def pruned_size_bound(s_star_size: int, universe_size: int, schedule, T: int) -> float:
    """Bound on the average emitted set size over T rounds.

    ``s* + (1/T) sum_i p_i (|U| - s*)``. ``schedule`` may be a
    :class:`Schedule` or a bare constant probability.
    """
    _check_counts(s_star_size, universe_size, T)
    if isinstance(schedule, Schedule):
        total = schedule.prob_sum(T)
    else:
        total = _check_prob(schedule) * T
    return s_star_size + (total / T) * (universe_size - s_star_size)


def corollary_pruned_size_bound(s_star_size: int, universe_size: int, T: int) -> float:
    """Average-set-size bound ``s* + 2(|U| - s*)/sqrt(T)`` for p_i = 1/sqrt(i)."""
    _check_counts(s_star_size, universe_size, T)
    return s_star_size + 2.0 * (universe_size - s_star_size) / math.sqrt(T)


def tight_construction_expectations(k: int, p, T: int) -> tuple:
    """Exact expectations for the k-parallel-edge worst case.

    Returns ``(expected s* size, expected mistakes)`` for the
    construction whose rounds draw one of k single-zero-weight vectors
    uniformly at random, run with a constant exploration probability p:

    * ``E|S*| = k (1 - (1 - 1/k)^T)``
    * ``E[mistakes] = k (1-p) (1 - (1 - p/k)^T) / p``
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _check_counts(0, T=T)
    p = _check_prob(p)
    exp_s_star = k * (1.0 - (1.0 - 1.0 / k) ** T)
    exp_mistakes = k * (1.0 - p) * (1.0 - (1.0 - p / k) ** T) / p
    return exp_s_star, exp_mistakes


def lower_bound_product(m: float, T: int) -> float:
    """Mistake-work product floor ``m T / 8`` for oblivious strategies.

    ``m`` is the adversary's mistake budget; any strategy whose expected
    mistakes stay below m on the hard distribution must pay at least
    ``m T / 8`` expected total work.
    """
    if m < 0:
        raise DomainError(f"mistake budget must be >= 0, got {m}")
    _check_counts(0, T=T)
    return m * T / 8.0
