"""The Cohesion family of multivariate dependence measures.

Cohesion-k sums the entropies of all k-variable marginals and subtracts
C(n-1, k-1) times the joint entropy. Order k=1 is the total correlation,
order k=n-1 the dual total correlation. Two families of bounds are
checked here: the linear inequalities relating adjacent orders
((n-k) C^(k) >= k C^(k+1)) and the constant ceiling k*C(n-1,k) in
base-q units, plus the three extra inequalities specific to n=4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .dist import JointDistribution, entropy_table, indices_to_mask, subset_entropy
from .errors import DistributionError

BOUND_TOL = 1e-9


def _base_factor(q: int, base: float | None) -> float:
    """Multiplier converting base-q units into the requested base."""
    if base is None or base == q:
        return 1.0
    return math.log(q) / math.log(base)


def constant_bound(n: int, k: int) -> float:
    """Ceiling k * C(n-1, k) on Cohesion-k, in base-q units."""
    if not 1 <= k <= n - 1:
        raise DistributionError(f"interaction order k={k} outside 1..{n - 1}")
    return float(k * comb(n - 1, k))


def cohesion_k(p: JointDistribution, k: int, base: float | None = None) -> float:
    """Cohesion-k of p: sum of k-subset entropies minus C(n-1,k-1) H(X)."""
    if not 1 <= k <= p.n - 1:
        raise DistributionError(f"interaction order k={k} outside 1..{p.n - 1}")
    total = 0.0
    for idx in combinations(range(p.n), k):
        total += subset_entropy(p, indices_to_mask(idx), base)
    full = (1 << p.n) - 1
    return total - comb(p.n - 1, k - 1) * subset_entropy(p, full, base)


def cohesion_k_conditional_form(
    p: JointDistribution, k: int, base: float | None = None
) -> float:
    """Independent rewriting: C(n-1,k) H(X) - sum over (n-k)-subsets of
    H(X_B | X_A), with A the complement of B. Used to cross-check
    `cohesion_k`."""
    if not 1 <= k <= p.n - 1:
        raise DistributionError(f"interaction order k={k} outside 1..{p.n - 1}")
    full = (1 << p.n) - 1
    h_joint = subset_entropy(p, full, base)
    total = comb(p.n - 1, k) * h_joint
    for idx in combinations(range(p.n), p.n - k):
        b_mask = indices_to_mask(idx)
        a_mask = full ^ b_mask
        cond = h_joint - subset_entropy(p, a_mask, base)
        total -= cond
    return total


@dataclass(frozen=True)
class CohesionProfile:
    """All Cohesion orders for one distribution, with bound diagnostics.

    values[k-1] holds C^(k) in the profile's base; constant_bounds and
    slack are in the same base.
    """

    n: int
    q: int
    base: float
    values: tuple
    constant_bounds: tuple
    slack: tuple

    def value(self, k: int) -> float:
        return self.values[k - 1]


def cohesion_profile(p: JointDistribution, base: float | None = None) -> CohesionProfile:
    """Evaluate every Cohesion order from a single subset-entropy pass."""
    if p.n < 2:
        raise DistributionError("cohesion profile needs at least two variables")
    b = float(p.q if base is None else base)
    table = entropy_table(p, b)
    full = (1 << p.n) - 1
    h_joint = table[full]
    sums = [0.0] * (p.n + 1)
    for mask in range(1, full + 1):
        sums[mask.bit_count()] += table[mask]
    factor = _base_factor(p.q, b)
    values = []
    bounds = []
    for k in range(1, p.n):
        values.append(sums[k] - comb(p.n - 1, k - 1) * h_joint)
        bounds.append(constant_bound(p.n, k) * factor)
    slack = tuple(bd - v for bd, v in zip(bounds, values))
    return CohesionProfile(p.n, p.q, b, tuple(values), tuple(bounds), slack)


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool


def check_polymatroid_bounds(
    profile: CohesionProfile, tol: float = BOUND_TOL
) -> list[BoundCheck]:
    """Check (n-k) C^(k) >= k C^(k+1) for each adjacent pair of orders.

    A violation beyond `tol` indicates an implementation bug; the
    inequality is a theorem.
    """
    checks = []
    n = profile.n
    for k in range(1, n - 1):
        lhs = (n - k) * profile.value(k)
        rhs = k * profile.value(k + 1)
        slack = lhs - rhs
        checks.append(
            BoundCheck(f"({n - k})*C{k} >= {k}*C{k + 1}", lhs, rhs, slack, slack >= -tol)
        )
    return checks


def check_constant_bounds(
    profile: CohesionProfile, tol: float = BOUND_TOL
) -> list[BoundCheck]:
    checks = []
    for k in range(1, profile.n):
        v = profile.value(k)
        bd = profile.constant_bounds[k - 1]
        checks.append(BoundCheck(f"C{k} <= {bd:g}", v, bd, bd - v, bd - v >= -tol))
    return checks


def check_quad_inequalities(
    p: JointDistribution, tol: float = BOUND_TOL
) -> list[BoundCheck]:
    """The three extra inequalities for exactly four variables, in base-q
    units: C1 + C3 <= 4, C2 + 3 C1 <= 12, C2 + 3 C3 <= 12."""
    if p.n != 4:
        raise DistributionError(f"quad inequalities require n=4, got n={p.n}")
    prof = cohesion_profile(p, p.q)
    c1, c2, c3 = prof.values
    rows = [
        ("C1 + C3 <= 4", c1 + c3, 4.0),
        ("C2 + 3*C1 <= 12", c2 + 3.0 * c1, 12.0),
        ("C2 + 3*C3 <= 12", c2 + 3.0 * c3, 12.0),
    ]
    return [
        BoundCheck(name, lhs, bound, bound - lhs, bound - lhs >= -tol)
        for name, lhs, bound in rows
    ]


def profile_report(p: JointDistribution, base: float | None = None) -> dict:
    """JSON-ready report: values, constant bounds, adjacent-order slack,
    and (for n=4) the quad-inequality slacks."""
    prof = cohesion_profile(p, base)
    eq1 = check_polymatroid_bounds(prof)
    report = {
        "n": prof.n,
        "q": prof.q,
        "base": prof.base,
        "values": list(prof.values),
        "constant_bounds": list(prof.constant_bounds),
        "eq1_slack": [c.slack for c in eq1],
    }
    if p.n == 4:
        report["quad_slack"] = [c.slack for c in check_quad_inequalities(p)]
    return report
