"""Douglas-Rachford feasibility solver with an optional periodic B-projection.

The engine is generic over a pair of projection operators, so convex toy
problems and the EDM completion problem share one loop. Toy vector
problems embed vectors as 1 x n matrices; nothing here assumes square
input.

One iteration is one pass of

    p_n = P_A(x_n)
    r_n = P_B(2 p_n - x_n)        refreshed when n mod period == 0
    x_{n+1} = x_n + r_n - p_n

recording one trace row per pass and stopping once the pass index is at
least 1 and ||r_n - p_n||_F <= epsilon * ||p_n||_F. The output of
interest is the shadow p_n, not the iterate x_n, which can wander (and
for infeasible problems diverges while the gap norm tends to the
inter-set distance).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import InvalidInput, NumericalFailure
from .linalg import frobenius_norm


class Termination(str, enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"


@dataclass(frozen=True)
class FeasibilityPair:
    """Projection operators onto the two constraint sets."""

    proj_a: Callable[[np.ndarray], np.ndarray]
    proj_b: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SolverConfig:
    """Stopping tolerance, iteration cap, B-projection period, base RNG seed.

    The seed is carried for the pipeline's replicated initializations; the
    solver itself is deterministic given x0.
    """

    epsilon: float = 1e-5
    max_iters: int = 200000
    period: int = 1
    seed: int = 0

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise InvalidInput("SolverConfig: epsilon must be positive")
        if self.max_iters < 1:
            raise InvalidInput("SolverConfig: max_iters must be at least 1")
        if self.period < 1:
            raise InvalidInput("SolverConfig: period must be at least 1")


class TraceRecord(NamedTuple):
    iteration: int
    relative_error: float
    relative_error_db: float
    gap_norm: float


@dataclass(eq=False)
class SolverResult:
    """Final shadow and iterate, trace, and bookkeeping counts."""

    shadow: np.ndarray
    iterate: np.ndarray
    iterations: int
    terminated: Termination
    trace: list
    b_projection_count: int


def relative_error_db(r, p) -> float:
    """Relative gap between r and p in decibels: 20 log10(||r - p|| / ||p||).

    Returns the -inf sentinel when the gap is zero or when ||p|| is zero
    (where the ratio is undefined).
    """
    rr = np.asarray(r, dtype=np.float64)
    pp = np.asarray(p, dtype=np.float64)
    if rr.shape != pp.shape:
        raise InvalidInput("relative_error_db: shape mismatch")
    gap = frobenius_norm(rr - pp)
    pn = frobenius_norm(pp)
    if gap == 0.0 or pn == 0.0:
        return float("-inf")
    return 20.0 * math.log10(gap / pn)


def _db_of(rel: float) -> float:
    # Decibel form of an already-computed relative error; infinities pass through.
    if rel == 0.0:
        return float("-inf")
    if math.isinf(rel):
        return float("inf")
    return 20.0 * math.log10(rel)


# Iterates beyond this magnitude are declared divergent. The margin keeps
# every norm and projection downstream free of overflow, so blowups are
# reported once, as a NumericalFailure, instead of as overflow artifacts.
ITERATE_GUARD = 1e100


def _check_magnitude(arr, n: int, what: str) -> None:
    # The inverted comparison also catches NaN, which fails every <=.
    if not float(np.max(np.abs(arr))) <= ITERATE_GUARD:
        raise NumericalFailure(
            f"{what} non-finite or diverging at iteration {n}", iteration=n
        )


def _iterate(pair: FeasibilityPair, x0, cfg: SolverConfig) -> SolverResult:
    x = np.array(x0, dtype=np.float64)
    if not np.isfinite(x).all():
        raise InvalidInput("douglas_rachford: x0 must be finite")
    period = cfg.period
    p = np.asarray(pair.proj_a(x), dtype=np.float64)
    r = p
    trace = []
    b_count = 0
    n = 0
    while True:
        _check_magnitude(x, n, "iterate")
        _check_magnitude(p, n, "shadow")
        if n % period == 0:
            r = np.asarray(pair.proj_b(2.0 * p - x), dtype=np.float64)
            b_count += 1
            _check_magnitude(r, n, "reflected projection")
        gap = frobenius_norm(r - p)
        pn = frobenius_norm(p)
        if gap == 0.0:
            rel = 0.0
        elif pn == 0.0:
            rel = float("inf")
        else:
            rel = gap / pn
        trace.append(TraceRecord(n, rel, _db_of(rel), gap))
        n += 1
        # The stopping test is evaluated on the recorded value so the
        # converged-implies-within-tolerance invariant holds bitwise.
        if n > 1 and rel <= cfg.epsilon:
            terminated = Termination.CONVERGED
            break
        if n >= cfg.max_iters:
            terminated = Termination.MAX_ITERS
            break
        x = x + (r - p)
        p = np.asarray(pair.proj_a(x), dtype=np.float64)
    return SolverResult(
        shadow=p,
        iterate=x,
        iterations=n,
        terminated=terminated,
        trace=trace,
        b_projection_count=b_count,
    )


def douglas_rachford(pair: FeasibilityPair, x0, cfg: SolverConfig = SolverConfig()) -> SolverResult:
    """Basic two-set Douglas-Rachford iteration.

    Parameters
    ----------
    pair : FeasibilityPair
        Projections onto the sets A and B. Place the expensive projection
        on B; the periodic variant can then skip it.
    x0 : array_like
        Finite starting point.
    cfg : SolverConfig
        Must have period 1; use douglas_rachford_periodic otherwise.

    Returns
    -------
    SolverResult
        Shadow sequence endpoint, final iterate, one trace row per
        iteration, and the number of B-projection evaluations.

    Raises
    ------
    NumericalFailure
        An iterate went non-finite or diverged beyond recovery; carries
        the iteration index.
    """
    if cfg.period != 1:
        raise InvalidInput("douglas_rachford: period must be 1; use douglas_rachford_periodic")
    return _iterate(pair, x0, cfg)


def douglas_rachford_periodic(pair: FeasibilityPair, x0, cfg: SolverConfig) -> SolverResult:
    """Douglas-Rachford with the B-projection refreshed every cfg.period passes.

    Between refreshes the stored r_n is reused, in the update and in the
    stopping test alike. Period 1 reproduces douglas_rachford bitwise.
    b_projection_count equals ceil(iterations / period) on exit.
    """
    return _iterate(pair, x0, cfg)
