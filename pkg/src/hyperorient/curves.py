"""Closed-form susceptibility curves and running-time bounds.

``theta`` is the number of rounds divided by ``n``.  The curves have a pole at
``theta = 1/(k(k-1))``, the orientability threshold, and are only defined
strictly below it.  All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def critical_theta(k: int) -> float:
    return 1.0 / (k * (k - 1))


def _check_theta(theta: float, k: int) -> float:
    if theta < 0:
        raise ValueError(f"theta={theta} must be non-negative")
    gap = 1.0 - k * (k - 1) * theta
    if gap <= 0:
        raise ValueError(f"theta={theta} is at or beyond the pole 1/(k(k-1)) for k={k}")
    return gap


def x_curve(theta: float, k: int) -> float:
    """Solution of x' = k(k-1) x^2 with x(0) = 1: the mean-field susceptibility."""
    return 1.0 / _check_theta(theta, k)


def f_curve(theta: float, k: int) -> float:
    """Solution of f' = 3k(k-1) x f with f(0) = 1."""
    return 1.0 / _check_theta(theta, k) ** 3


def _check_eps(eps: float) -> None:
    if not 0.0 < eps <= 0.5:
        raise ValueError(f"eps={eps} must lie in (0, 1/2]")


def delta_term(n: int, k: int, eps: float) -> float:
    _check_eps(eps)
    return 199 * k**3 * math.log(n) ** 3 / (eps**4 * math.sqrt(n))


def susceptibility_bound(n: int, k: int, eps: float) -> float:
    """Upper bound on susceptibility at m = (1-eps) n/(k(k-1)) edges."""
    _check_eps(eps)
    return 1.0 / eps + 200 * k**3 * math.log(n) ** 3 / (eps**7 * math.sqrt(n))


def iteration_bound(n: int, k: int, eps: float) -> float:
    """Total while-condition evaluations allowed when orienting (1-eps) n/(k(k-1)) edges."""
    return 2 * k**2 * susceptibility_bound(n, k, eps) * n


@dataclass(frozen=True)
class ReferenceCurves:
    n: int
    k: int
    eps: float
    theta: float
    x: float
    f: float
    delta: float
    susceptibility_bound: float
    iteration_bound: float


def reference(n: int, k: int, eps: float) -> ReferenceCurves:
    """All reference quantities evaluated at theta = (1-eps)/(k(k-1))."""
    _check_eps(eps)
    theta = (1 - eps) * critical_theta(k)
    return ReferenceCurves(
        n=n,
        k=k,
        eps=eps,
        theta=theta,
        x=x_curve(theta, k),
        f=f_curve(theta, k),
        delta=delta_term(n, k, eps),
        susceptibility_bound=susceptibility_bound(n, k, eps),
        iteration_bound=iteration_bound(n, k, eps),
    )
