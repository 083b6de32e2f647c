"""Choosing measurement parameters from the prior.

Averaging the success probability over independent uniform program qubits
turns the trade-off between the two scale factors into a one-dimensional
problem along the positivity boundary.  The optimum is interior only when
the prior eta1 lies inside a closed validity window around 1/2; outside it,
one scale factor saturates and the measurement degenerates to the projective
strategy aimed at the likelier preparation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .spectral import constraint_c2
from .symmetric import _check_copies


class Regime(str, Enum):
    """Which strategy the prior selects."""

    VON_NEUMANN_1 = "vn1"
    POVM = "povm"
    VON_NEUMANN_2 = "vn2"


@dataclass(frozen=True)
class DiscriminatorConfig:
    """Problem instance: copy count and prior of the first preparation."""

    n: int
    eta1: float

    def __post_init__(self) -> None:
        _check_copies(self.n)
        eta1 = float(self.eta1)
        if not 0.0 <= eta1 <= 1.0 or math.isnan(eta1):
            raise ValueError(f"eta1 must lie in [0, 1], got {self.eta1!r}")
        object.__setattr__(self, "eta1", eta1)


@dataclass(frozen=True)
class StrategyDecision:
    """Chosen regime, scale factors, and the resulting average success."""

    n: int
    eta1: float
    regime: Regime
    c1_opt: float
    c2_opt: float
    avg_success: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "eta1": self.eta1,
            "regime": self.regime.value,
            "c1": self.c1_opt,
            "c2": self.c2_opt,
            "avg_success": self.avg_success,
        }


def validity_range(n: int) -> tuple[float, float]:
    """Closed prior window where the interior optimum keeps both scale
    factors in [0, 1]: [n^2 / D, (n+1)^2 / D] with D = n^2 + (n+1)^2."""
    _check_copies(n)
    denom = n**2 + (n + 1) ** 2
    return n**2 / denom, (n + 1) ** 2 / denom


def optimal_c(n: int, eta1: float) -> tuple[float, float]:
    """Scale factors maximizing the average success inside the validity window.

    c1 = (n+1)^2/(2n+1) * (1 - n/(n+1) * sqrt((1-eta1)/eta1)); c2 swaps the
    priors.  The pair saturates the positivity boundary.  Values are clamped
    to [0, 1] against roundoff at the window edges.
    """
    low, high = validity_range(n)
    if not low <= eta1 <= high:
        raise ValueError(
            f"eta1={eta1} outside the validity window [{low}, {high}] for n={n}"
        )
    front = (n + 1) ** 2 / (2 * n + 1)
    ratio = n / (n + 1)
    c1 = front * (1.0 - ratio * math.sqrt((1.0 - eta1) / eta1))
    c2 = front * (1.0 - ratio * math.sqrt(eta1 / (1.0 - eta1)))
    clamp = lambda c: min(1.0, max(0.0, c))
    return clamp(c1), clamp(c2)


def avg_success_povm(n: int, eta1: float) -> float:
    """Average success of the optimal interior measurement,
    n/(4n+2) * (n + 1 - 2n sqrt(eta1 (1 - eta1)))."""
    _check_copies(n)
    if not 0.0 <= eta1 <= 1.0 or math.isnan(eta1):
        raise ValueError(f"eta1 must lie in [0, 1], got {eta1!r}")
    return n / (4 * n + 2) * (n + 1 - 2 * n * math.sqrt(eta1 * (1.0 - eta1)))


def avg_success_projective(n: int, eta1: float, which: int) -> float:
    """Average success of the projective strategy aimed at preparation
    `which`: the aimed-at prior times n/(2(n+1))."""
    _check_copies(n)
    if not 0.0 <= eta1 <= 1.0 or math.isnan(eta1):
        raise ValueError(f"eta1 must lie in [0, 1], got {eta1!r}")
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    prior = eta1 if which == 1 else 1.0 - eta1
    return prior * n / (2 * (n + 1))


def avg_success_expression(n: int, eta1: float, c1: float) -> float:
    """Average success along the positivity boundary as a function of c1
    alone, with c2 = constraint_c2(c1)."""
    if not 0.0 <= eta1 <= 1.0 or math.isnan(eta1):
        raise ValueError(f"eta1 must lie in [0, 1], got {eta1!r}")
    c2 = constraint_c2(c1, n)
    return (eta1 * c1 + (1.0 - eta1) * c2) * n / (2 * (n + 1))


def decide(config: DiscriminatorConfig) -> StrategyDecision:
    """Pick the best strategy for the prior: the interior measurement inside
    the validity window (boundaries included), else the projective strategy
    aimed at the likelier preparation."""
    n, eta1 = config.n, config.eta1
    low, high = validity_range(n)
    if eta1 < low:
        return StrategyDecision(
            n=n,
            eta1=eta1,
            regime=Regime.VON_NEUMANN_2,
            c1_opt=0.0,
            c2_opt=1.0,
            avg_success=avg_success_projective(n, eta1, 2),
        )
    if eta1 > high:
        return StrategyDecision(
            n=n,
            eta1=eta1,
            regime=Regime.VON_NEUMANN_1,
            c1_opt=1.0,
            c2_opt=0.0,
            avg_success=avg_success_projective(n, eta1, 1),
        )
    c1, c2 = optimal_c(n, eta1)
    return StrategyDecision(
        n=n,
        eta1=eta1,
        regime=Regime.POVM,
        c1_opt=c1,
        c2_opt=c2,
        avg_success=avg_success_povm(n, eta1),
    )
