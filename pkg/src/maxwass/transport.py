"""Wasserstein distances between discrete measures under the maximum metric.

The p-Wasserstein distance of two finitely supported measures is a
transportation LP over the coupling polytope with ground cost dm^p.
Two independent routes compute it:

* `wasserstein` runs the network simplex (exact Fractions whenever both
  measures are exact and p is a whole number, floats otherwise);
* `brute_force_wasserstein` enumerates every vertex of the coupling
  polytope and takes the minimum, which also yields the full set of
  optimal vertex plans and hence uniqueness of the optimal coupling.

The two never share code paths, so agreement between them is a real
check and is enforced wholesale by the acceptance suite.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .geometry import dm
from .measure import DiscreteMeasure
from .netsimplex import solve_transportation
from .scalars import (
    ConstraintError,
    Scalar,
    is_exact,
    is_integer_exponent,
    pow_p,
    root_p,
    scalar_to_json,
)

try:  # compiled float kernel; never required
    from . import _netsimplex as _compiled
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None

_PURE_ONLY = os.environ.get("MAXWASS_PURE", "").lower() in ("1", "true", "yes")


def active_kernel() -> str:
    """Which engine float-mode solves will use: 'compiled' or 'pure'."""
    if _compiled is not None and not _PURE_ONLY:
        return "compiled"
    return "pure"


def _require_valid_p(p):
    if isinstance(p, bool) or p < 1:
        raise ConstraintError(f"exponent p must be >= 1, got {p!r}")


def _is_exact_problem(mu: DiscreteMeasure, nu: DiscreteMeasure, p) -> bool:
    return mu.exact and nu.exact and is_integer_exponent(p)


def _cost_matrix(mu: DiscreteMeasure, nu: DiscreteMeasure, p, exact: bool):
    xs, ys = mu.points(), nu.points()
    if exact:
        q = int(p)
        return [[dm(x, y) ** q for y in ys] for x in xs]
    fp = float(p)
    return [[float(dm(x, y)) ** fp for y in ys] for x in xs]


@dataclass(frozen=True)
class TransportPlan:
    """A coupling of source and target, stored as positive (i, j, weight)
    entries sorted by index pair; zero-weight entries are pruned."""

    source: DiscreteMeasure
    target: DiscreteMeasure
    entries: tuple[tuple[int, int, Scalar], ...]

    def __init__(self, source, target, entries):
        cells = {}
        for i, j, w in entries:
            if w < 0:
                raise ConstraintError(f"negative plan weight at ({i}, {j})")
            if not (0 <= i < source.support_size and 0 <= j < target.support_size):
                raise ConstraintError(f"plan entry ({i}, {j}) out of range")
            cells[i, j] = cells.get((i, j), 0) + w
        kept = [
            (i, j, w)
            for (i, j), w in cells.items()
            if not (w == 0 or (isinstance(w, float) and w <= 1e-14))
        ]
        kept.sort(key=lambda e: (e[0], e[1]))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "entries", tuple(kept))
        self._check_marginals()

    def _check_marginals(self):
        row = [0] * self.source.support_size
        col = [0] * self.target.support_size
        for i, j, w in self.entries:
            row[i] += w
            col[j] += w
        exact = self.source.exact and self.target.exact and all(
            is_exact(w) for _, _, w in self.entries
        )
        for got, want, side in (
            (row, self.source.weights(), "source"),
            (col, self.target.weights(), "target"),
        ):
            for k, (g, t) in enumerate(zip(got, want)):
                if exact:
                    ok = g == t
                else:
                    ok = abs(float(g) - float(t)) <= 1e-9
                if not ok:
                    raise ConstraintError(
                        f"{side} marginal mismatch at atom {k}: {g} != {t}"
                    )

    def weight_matrix(self):
        mat = [
            [0] * self.target.support_size for _ in range(self.source.support_size)
        ]
        for i, j, w in self.entries:
            mat[i][j] = w
        return mat

    def cost_pow(self, p) -> Scalar:
        """Transport cost sum dm(x_i, y_j)^p * w, without the 1/p root."""
        _require_valid_p(p)
        xs, ys = self.source.points(), self.target.points()
        exact = _is_exact_problem(self.source, self.target, p) and all(
            is_exact(w) for _, _, w in self.entries
        )
        total = 0
        for i, j, w in self.entries:
            d = dm(xs[i], ys[j])
            total += (pow_p(d, p) if exact else float(d) ** float(p)) * w
        return total

    def to_csv(self, fileobj, p=2):
        """Rows (i, j, x_i, y_j, weight, cost) with cost = dm(x_i, y_j)^p."""
        _require_valid_p(p)
        writer = csv.writer(fileobj)
        writer.writerow(["i", "j", "x_i", "y_j", "weight", "cost"])
        xs, ys = self.source.points(), self.target.points()
        exact = _is_exact_problem(self.source, self.target, p)
        for i, j, w in self.entries:
            d = dm(xs[i], ys[j])
            c = pow_p(d, p) if exact and is_exact(w) else float(d) ** float(p)
            writer.writerow(
                [
                    i,
                    j,
                    "[%s, %s]" % tuple(scalar_to_json(s) for s in xs[i]),
                    "[%s, %s]" % tuple(scalar_to_json(s) for s in ys[j]),
                    scalar_to_json(w),
                    scalar_to_json(c),
                ]
            )


def product_plan(mu: DiscreteMeasure, nu: DiscreteMeasure) -> TransportPlan:
    """The independent coupling; optimal whenever one side is a Dirac."""
    entries = [
        (i, j, wi * wj)
        for i, (_, wi) in enumerate(mu.atoms)
        for j, (_, wj) in enumerate(nu.atoms)
    ]
    return TransportPlan(mu, nu, entries)


def identity_plan(mu: DiscreteMeasure) -> TransportPlan:
    return TransportPlan(mu, mu, [(i, i, w) for i, (_, w) in enumerate(mu.atoms)])


def wasserstein(mu: DiscreteMeasure, nu: DiscreteMeasure, p=2):
    """d_{W_p}(mu, nu) along with one optimal plan.

    Returns (distance, plan).  The distance is exact for p == 1 on exact
    inputs; for p > 1 it is the float 1/p-th root of the exact power
    (use wasserstein_pow for the exact powered value).
    """
    _require_valid_p(p)
    exact = _is_exact_problem(mu, nu, p)
    if mu.support_size == 1 or nu.support_size == 1:
        plan = product_plan(mu, nu)  # the only coupling there is
        return root_p(plan.cost_pow(p) if exact else _float_cost(plan, p), p), plan

    cost = _cost_matrix(mu, nu, p, exact)
    supply = list(mu.weights())
    demand = list(nu.weights())
    if exact:
        total, flows = solve_transportation(cost, supply, demand, tol=0)
    elif _compiled is not None and not _PURE_ONLY:
        total, flow_list = _compiled.solve_transportation_f64(
            [[float(c) for c in row] for row in cost],
            [float(s) for s in supply],
            [float(d) for d in demand],
        )
        flows = {(i, j): q for i, j, q in flow_list}
    else:
        scale = max(max(abs(c) for c in row) for row in cost)
        total, flows = solve_transportation(
            [[float(c) for c in row] for row in cost],
            [float(s) for s in supply],
            [float(d) for d in demand],
            tol=1e-11 * max(1.0, float(scale)),
        )
    plan = TransportPlan(mu, nu, [(i, j, q) for (i, j), q in flows.items()])
    return root_p(total, p), plan


def _float_cost(plan: TransportPlan, p) -> float:
    xs, ys = plan.source.points(), plan.target.points()
    return sum(
        float(dm(xs[i], ys[j])) ** float(p) * float(w) for i, j, w in plan.entries
    )


def wasserstein_pow(mu: DiscreteMeasure, nu: DiscreteMeasure, p=2) -> Scalar:
    """The p-th power of d_{W_p}; exact on exact inputs with integer p."""
    distance, plan = wasserstein(mu, nu, p)
    if _is_exact_problem(mu, nu, p):
        return plan.cost_pow(p)
    return float(distance) ** float(p)


def plan_cost(plan: TransportPlan, p=2) -> Scalar:
    """(sum dm^p * w)^(1/p) for an arbitrary coupling; >= the distance."""
    return root_p(plan.cost_pow(p), p)


def plan_cost_pow(plan: TransportPlan, p=2) -> Scalar:
    return plan.cost_pow(p)


# ---------------------------------------------------------------------------
# exhaustive oracle

_BRUTE_LIMIT = 36


def _lcm_denominator(measures):
    lcm = 1
    for mu in measures:
        for w in mu.weights():
            lcm = math.lcm(lcm, Fraction(w).denominator)
    return lcm


def _enumerate_optimal_vertices(cost, supply, demand):
    """All minimum-cost vertices of an integer-margin transportation polytope.

    Every vertex arises by repeatedly picking a cell, sending
    min(supply, demand) through it and retiring whichever line is
    exhausted (both on a tie), so a memoized recursion over residual
    states visits each vertex exactly once and the additive cost lets
    the minimum be folded into the same recursion.
    """
    memo = {}

    def solve(rows, cols):
        if not rows:
            return 0, (frozenset(),)
        key = (rows, cols)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best_cost = None
        best = set()
        for a, (i, s) in enumerate(rows):
            crow = cost[i]
            for b, (j, d) in enumerate(cols):
                if s < d:
                    q = s
                    nrows = rows[:a] + rows[a + 1:]
                    ncols = cols[:b] + ((j, d - s),) + cols[b + 1:]
                elif d < s:
                    q = d
                    nrows = rows[:a] + ((i, s - d),) + rows[a + 1:]
                    ncols = cols[:b] + cols[b + 1:]
                else:
                    q = s
                    nrows = rows[:a] + rows[a + 1:]
                    ncols = cols[:b] + cols[b + 1:]
                tail_cost, tails = solve(nrows, ncols)
                c = crow[j] * q + tail_cost
                if best_cost is None or c < best_cost:
                    best_cost = c
                    best = set()
                if c == best_cost:
                    for t in tails:
                        best.add(t | {(i, j, q)})
        result = (best_cost, tuple(best))
        memo[key] = result
        return result

    rows = tuple((i, s) for i, s in enumerate(supply))
    cols = tuple((j, d) for j, d in enumerate(demand))
    return solve(rows, cols)


def brute_force_wasserstein(mu: DiscreteMeasure, nu: DiscreteMeasure, p=2):
    """Exact minimum over all coupling-polytope vertices, plus every
    minimizing vertex as a TransportPlan.

    Only defined for exact measures with integer p and support product
    at most 36; meant as the independent check of `wasserstein`.
    """
    _require_valid_p(p)
    if not _is_exact_problem(mu, nu, p):
        raise ConstraintError("the exhaustive oracle needs exact weights and integer p")
    if mu.support_size * nu.support_size > _BRUTE_LIMIT:
        raise ConstraintError(
            f"support product {mu.support_size * nu.support_size} exceeds "
            f"the oracle bound {_BRUTE_LIMIT}"
        )
    lcm = _lcm_denominator([mu, nu])
    supply = [int(Fraction(w) * lcm) for w in mu.weights()]
    demand = [int(Fraction(w) * lcm) for w in nu.weights()]
    cost = _cost_matrix(mu, nu, p, exact=True)
    best_scaled, vertices = _enumerate_optimal_vertices(cost, supply, demand)
    plans = tuple(
        TransportPlan(mu, nu, [(i, j, Fraction(q, lcm)) for i, j, q in sorted(v)])
        for v in vertices
    )
    return root_p(Fraction(best_scaled, lcm), p), plans


def is_unique_optimal_plan(mu: DiscreteMeasure, nu: DiscreteMeasure, p=2) -> bool:
    """True iff exactly one vertex of the coupling polytope is optimal.

    A second optimal vertex would make every convex mix optimal too, so
    this is exactly uniqueness of the optimal coupling.
    """
    if not is_integer_exponent(p):
        raise ConstraintError("uniqueness detection needs an integer exponent")
    _, plans = brute_force_wasserstein(mu, nu, p)
    return len(plans) == 1


# ---------------------------------------------------------------------------
# gluing

@dataclass(frozen=True)
class GluedPlan:
    """A three-way coupling built from plans sharing a middle measure."""

    source: DiscreteMeasure
    middle: DiscreteMeasure
    target: DiscreteMeasure
    entries: tuple[tuple[int, int, int, Scalar], ...]

    def marginal_12(self) -> TransportPlan:
        return TransportPlan(
            self.source,
            self.middle,
            [(i, j, w) for i, j, _, w in self.entries],
        )

    def marginal_23(self) -> TransportPlan:
        return TransportPlan(
            self.middle,
            self.target,
            [(j, k, w) for _, j, k, w in self.entries],
        )

    def marginal_13(self) -> TransportPlan:
        return TransportPlan(
            self.source,
            self.target,
            [(i, k, w) for i, _, k, w in self.entries],
        )


def glue(p12: TransportPlan, p23: TransportPlan) -> GluedPlan:
    """Compose two plans through their common middle marginal.

    Conditional independence given the middle atom: each unit of mass in
    atom j splits towards the targets proportionally to p23's row j.
    """
    if p12.target != p23.source:
        raise ConstraintError("plans do not share their middle measure")
    middle_w = p12.target.weights()
    by_row = {}
    for j, k, w in p23.entries:
        by_row.setdefault(j, []).append((k, w))
    entries = []
    for i, j, w12 in p12.entries:
        for k, w23 in by_row.get(j, ()):
            entries.append((i, j, k, w12 * w23 / middle_w[j]))
    return GluedPlan(p12.source, p12.target, p23.target, tuple(entries))
