"""Closed-form bound calculators: tail bounds, degree equations, exponents.

Everything here is a pure double-precision evaluation. The verified margins
(for example -0.02 for the pairing exponent and the 2257 edge objective)
dwarf floating-point error, so no interval arithmetic is used; residual
checks in the test suite guard the root finders instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

_LOG2 = math.log(2.0)


def xlogx(x: float) -> float:
    """x * log(x) with the entropy convention 0 * log 0 = 0."""
    if x < 0:
        raise ValueError(f"x*log(x) undefined for negative x = {x}")
    return 0.0 if x == 0 else x * math.log(x)


def chernoff_phi(x: float) -> float:
    """phi(x) = (1 + x) log(1 + x) - x, the lower-tail exponent kernel."""
    if x <= -1:
        raise ValueError(f"phi undefined at x = {x} <= -1")
    return (1 + x) * math.log1p(x) - x


@dataclass(frozen=True)
class TailBound:
    """Lower-tail bound exp(-mean * phi(-deviation/mean)) for a binomial."""

    mean: float
    deviation: float
    bound: float

    def __post_init__(self):
        if not 0 < self.bound <= 1:
            raise ValueError("tail bound must lie in (0, 1]")


def chernoff_lower_tail(mean: float, deviation: float) -> TailBound:
    """P(X <= mean - deviation) bound; at most exp(-deviation^2 / (2 mean))."""
    if mean <= 0:
        raise ValueError("mean must be positive")
    if not 0 <= deviation < mean:
        raise ValueError("deviation must lie in [0, mean)")
    return TailBound(mean, deviation,
                     math.exp(-mean * chernoff_phi(-deviation / mean)))


# -- log-gamma counting primitives -----------------------------------------

def log_factorial(x: float) -> float:
    if x < 0:
        raise ValueError("factorial argument must be nonnegative")
    return math.lgamma(x + 1)


def log_binomial(n: float, k: float) -> float:
    """log C(n, k) with real arguments via log-gamma."""
    if k < 0 or k > n:
        raise ValueError(f"binomial ({n}, {k}) out of range")
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k)


def log_matchings(i: int) -> float:
    """log of the number of perfect matchings on i points: i! / ((i/2)! 2^(i/2))."""
    if i < 0 or i % 2 != 0:
        raise ValueError(f"matchings need an even nonnegative point count, got {i}")
    return log_factorial(i) - log_factorial(i // 2) - (i // 2) * _LOG2


# -- binomial-model expansion: degree equation and edge bounds --------------

def expansion_equation(c: float, d: float) -> float:
    """LHS of the defining equation for the expansion degree.

    (c+1)log(c+1) + c log(d/2) - c^2 d / 4 + c, strictly decreasing in d
    past 4/c.
    """
    return (c + 1) * math.log(c + 1) + c * math.log(d / 2) - c * c * d / 4 + c


def expansion_degree(c: float, tol: float = 1e-9) -> float:
    """Unique root d > 4/c of expansion_equation, by bisection."""
    if c <= 0:
        raise ValueError("c must be positive")
    lo = 4.0 / c + 1e-9
    hi = 4.0 / c + 1e4
    if expansion_equation(c, lo) <= 0:
        raise ValueError(f"no root bracket for c = {c}")
    while expansion_equation(c, hi) > 0:
        hi *= 2
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if expansion_equation(c, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def expansion_edge_bound(c: float) -> int:
    """Per-n edge coefficient ceil(d(c) (c+1)^2 / 2) of the expanding binomial model."""
    return math.ceil(expansion_degree(c) * (c + 1) ** 2 / 2)


def explicit_edge_bound(c: float) -> int:
    """Closed-form per-n edge coefficient ceil(80 log(e/c) / c) for c in (0, 1].

    Also asserts the inequality the closed form rests on: the expansion
    degree stays below 40 log(e/c) / c.
    """
    if not 0 < c <= 1:
        raise ValueError("explicit bound defined for c in (0, 1]")
    d_hat = 40 * (1 - math.log(c)) / c
    assert expansion_degree(c) < d_hat, "degree must stay below the explicit cap"
    return math.ceil(80 * (1 - math.log(c)) / c)


# -- nonzero-crossing route: degree and edge bound --------------------------

def crossing_degree(c: float) -> float:
    """Degree coefficient that kills empty crossings between half-sized sets.

    4/(c-1)^2 * (2c log(2c) - (c-1) log((c-1)/2) - (c+1) log(c+1)), c > 1.
    Diverges as c -> 1+.
    """
    if c <= 1:
        raise ValueError("crossing degree defined for c > 1")
    return 4 / (c - 1) ** 2 * (2 * c * math.log(2 * c)
                               - (c - 1) * math.log((c - 1) / 2)
                               - (c + 1) * math.log(c + 1))


def crossing_edge_bound(c: float) -> float:
    """Per-n edge coefficient 2 c^2 d(c) of the nonzero-crossing model."""
    return 2 * c * c * crossing_degree(c)


# -- pairing-model exponent for sparse-pair counting ------------------------

def pairing_exponent(a: float, b: float, d: float) -> float:
    """Exponential growth rate of the expected sparse-pair count.

    The count is over ordered disjoint half/half vertex-set pairs of a
    2n-bucket degree-d pairing with crossing count a*n and outward count
    b*n; this is its log divided by n, in the large-n limit. Log arguments
    must be nonnegative (0 log 0 = 0); violations raise per term.
    """
    return ((3 - 3 * d + a + b) * _LOG2
            + xlogx(d) - xlogx(a) - xlogx(b)
            - xlogx(d / 2 - a) - xlogx(d - b)
            - xlogx(d / 4 - a / 2 - b / 2)
            - xlogx(3 * d / 4 - a / 2 - b / 2)
            + xlogx(3 * d / 2 - a - b))


def pairing_exponent_peak_b(a: float, d: float) -> float:
    """The b maximizing pairing_exponent(a, ., d): d - a - sqrt(2d^2 - 4ad + 4a^2)/2."""
    return d - a - math.sqrt(2 * d * d - 4 * a * d + 4 * a * a) / 2


def pairing_exponent_profile(a: float, d: float) -> float:
    """Worst case over b: pairing_exponent at its peak b."""
    return pairing_exponent(a, pairing_exponent_peak_b(a, d), d)


def log_expected_pair_count(n: int, d: int, crossing: int, outward: int) -> float:
    """Exact log of the expected sparse-pair count at finite n.

    Expected number (over uniform pairings of 2n buckets, d points each) of
    ordered disjoint vertex-set pairs (S, T), |S| = |T| = n/2, with exactly
    `crossing` matching pairs between S and T and `outward` between S and
    the rest. Evaluated exactly via log-gamma; divided by n it approaches
    pairing_exponent(crossing/n, outward/n, d) as n grows.
    """
    if n <= 0 or n % 2 != 0:
        raise ValueError("bucket parameter n must be positive and even")
    if crossing < 0 or outward < 0:
        raise ValueError("pair counts must be nonnegative")
    half_points = d * n // 2  # points in S (n/2 buckets of d points)
    rest_points = d * n       # points outside S and T (n buckets)
    if crossing > half_points or crossing + outward > half_points:
        raise ValueError("more crossing/outward pairs than S has points")
    if outward > rest_points:
        raise ValueError("more outward pairs than the rest has points")
    inner = half_points - crossing - outward        # S points matched inside S
    remainder = (half_points - crossing) + (rest_points - outward)
    if inner % 2 != 0:
        raise ValueError(f"S-internal point count {inner} must be even")
    if remainder % 2 != 0:
        raise ValueError(f"leftover point count {remainder} must be even")
    return (log_binomial(2 * n, n) + log_binomial(n, n // 2)
            + 2 * log_binomial(half_points, crossing) + log_factorial(crossing)
            + log_binomial(half_points - crossing, outward)
            + log_binomial(rest_points, outward) + log_factorial(outward)
            + log_matchings(inner) + log_matchings(remainder)
            - log_matchings(2 * d * n))


# -- first-moment evaluators at finite n ------------------------------------

def log_low_crossing_bound(c: float, d: float, n: float) -> float:
    """log of the union bound on pairs of cn/2-sets with crossing <= cn.

    Binomial model of order (c+1)n at density d/n: two binomials choose the
    sets, the Chernoff factor exp((c log(cd/4) - c^2 d/4 + c) n) bounds one
    pair's lower tail.
    """
    if c <= 0 or d <= 0 or n <= 0:
        raise ValueError("c, d, n must be positive")
    big = (c + 1) * n
    k = c * n / 2
    return (log_binomial(big, k) + log_binomial(big - k, k)
            + (c * math.log(c * d / 4) - c * c * d / 4 + c) * n)


def log_empty_crossing_bound(c: float, d: float, n: float) -> float:
    """log of the expected count of half-sized set pairs with no crossing edge.

    Bipartite binomial model of order 2cn at density d/n; set sizes
    (c-1)n/2; exact (1 - d/n) powering via log1p.
    """
    if c <= 1:
        raise ValueError("defined for c > 1")
    if d < 0 or d >= n:
        raise ValueError("need 0 <= d < n")
    k = (c - 1) * n / 2
    return (log_binomial(2 * c * n, k) + log_binomial(2 * c * n - k, k)
            + k * k * math.log1p(-d / n))


def first_n_below_one(bound: Callable[[float], float],
                      n_grid: Iterable[float]) -> Optional[float]:
    """Smallest grid n whose log-scale bound drops below 0 (bound < 1)."""
    for n in n_grid:
        if bound(n) < 0:
            return n
    return None


# -- two-case lower-bound coefficients and two-round feasibility ------------

def two_case_lower_coefficients(a: float, b: float, d: int) -> tuple[float, float]:
    """Per-n edge coefficients certified by the two-case adversary strategy.

    Case 1 (few high-degree vertices): 1 + (1 - (1-b)(1 - 2a/(d+1))/(d^2+1))^-1.
    Case 2: 2 + ((1 - 2a/(d+1))/(d^2+1)) (b(d-3)/2 - 1).
    """
    if d < 4:
        raise ValueError("degree threshold must be at least 4")
    share = (1 - 2 * a / (d + 1)) / (d * d + 1)
    denom = 1 - (1 - b) * share
    if denom == 0:
        raise ValueError("degenerate case-1 denominator")
    return 1 + 1 / denom, 2 + share * (b * (d - 3) / 2 - 1)


@dataclass(frozen=True)
class FeasibilityReport:
    """Signs of the two-round cycle-construction constraints plus the objective."""

    path_constraint: float     # long-red-path failure exponent, must be <= 0
    closing_constraint: float  # chord-closing failure exponent, must be <= 0
    edge_objective: float      # per-n edge count (2c+1)^2 (d1+d2) / 2

    @property
    def feasible(self) -> bool:
        return self.path_constraint <= 0 and self.closing_constraint <= 0


def two_round_cycle_feasibility(c: float, d1: float, d2: float) -> FeasibilityReport:
    """Evaluate the constraint system of the two-round cycle construction.

    First constraint: the union-bound exponent for finding the long path in
    round one stays nonpositive. Second: the chord-closing failure exponent
    in round two stays nonpositive. Objective: edges per n of the union.
    """
    if c <= 1.5:
        raise ValueError("need c > 3/2")
    entropy = (2 * c + 1) * math.log(2 * c + 1)
    path_constraint = (entropy
                       - (c - 1.5) * math.log((c - 1.5) / 2)
                       - (c + 1.5) * math.log((c + 1.5) / 2)
                       - (c - 1.5) ** 2 * d1 / 4)
    closing_constraint = entropy - 2 * c * math.log(c) + _LOG2 / 4 - d2 / 16
    objective = (2 * c + 1) ** 2 * (d1 + d2) / 2
    return FeasibilityReport(path_constraint, closing_constraint, objective)


# -- parameter bag with per-claim domain validation --------------------------

_CLAIM_DOMAINS = {
    "expansion-binomial": "d > 4/c and c > 0",
    "crossing-binomial": "c > 1",
    "pairing-regular": "0 <= a <= 1 and d >= 1",
    "two-case-lower": "d >= 4",
    "two-round-cycle": "c > 3/2 and d1, d2 > 0",
}


@dataclass(frozen=True)
class BoundParams:
    """Scalar constants of one bound claim, tagged with the claim they instantiate."""

    claim: str
    c: Optional[float] = None
    d: Optional[float] = None
    d1: Optional[float] = None
    d2: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    eps: Optional[float] = None

    def validate(self) -> None:
        if self.claim not in _CLAIM_DOMAINS:
            raise ValueError(f"unknown claim tag {self.claim!r}")
        ok = True
        if self.claim == "expansion-binomial":
            ok = self.c is not None and self.c > 0 and (
                self.d is None or self.d > 4 / self.c)
        elif self.claim == "crossing-binomial":
            ok = self.c is not None and self.c > 1
        elif self.claim == "pairing-regular":
            ok = (self.a is not None and 0 <= self.a <= 1
                  and self.d is not None and self.d >= 1)
        elif self.claim == "two-case-lower":
            ok = self.d is not None and self.d >= 4
        elif self.claim == "two-round-cycle":
            ok = (self.c is not None and self.c > 1.5
                  and self.d1 is not None and self.d1 > 0
                  and self.d2 is not None and self.d2 > 0)
        if not ok:
            raise ValueError(
                f"parameters violate the domain of {self.claim}: {_CLAIM_DOMAINS[self.claim]}")


def grid_minimize(fn: Callable[[float], float], lo: float, hi: float,
                  step: float = 1e-2, refine: float = 1e-4) -> tuple[float, float]:
    """Coarse grid scan plus one refinement pass around the argmin."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    count = int(round((hi - lo) / step))
    xs = [lo + i * step for i in range(count + 1) if lo + i * step <= hi + 1e-12]
    best_x = min(xs, key=fn)
    fine_lo = max(lo, best_x - step)
    fine_hi = min(hi, best_x + step)
    fine_count = int(round((fine_hi - fine_lo) / refine))
    fine = [fine_lo + i * refine for i in range(fine_count + 1)]
    best_x = min(fine, key=fn)
    return best_x, fn(best_x)
