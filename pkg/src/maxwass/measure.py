"""Finitely supported probability measures and their constructions.

A DiscreteMeasure is a canonical list of (point, weight) atoms: sorted
lexicographically by coordinates, duplicate points merged (exact
equality in exact mode, tolerance 1e-12 in float mode), weights
strictly positive and summing to one.  Canonical form makes equality of
measures plain tuple equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .geometry import (
    L_MINUS,
    L_PLUS,
    DiagonalLine,
    Point2,
    in_square,
    project_point,
)
from .scalars import (
    ConstraintError,
    MERGE_TOL,
    ParseError,
    Scalar,
    halve,
    is_exact,
    parse_scalar,
    scalar_to_json,
)

Atom = tuple[Point2, Scalar]


def _merge_atoms(atoms: Iterable[Atom]) -> tuple[Atom, ...]:
    kept: list[list] = []
    for x, w in sorted(atoms, key=lambda a: (a[0].x1, a[0].x2)):
        if w < 0:
            raise ConstraintError(f"negative weight {w!r} at {tuple(x)!r}")
        if w == 0:
            continue
        if kept:
            px, pw = kept[-1]
            exact_pair = px.exact and x.exact
            if exact_pair:
                same = px == x
            else:
                same = (
                    abs(float(x.x1) - float(px.x1)) <= MERGE_TOL
                    and abs(float(x.x2) - float(px.x2)) <= MERGE_TOL
                )
            if same:
                kept[-1][1] = pw + w
                continue
        kept.append([x, w])
    return tuple((x, w) for x, w in kept)


@dataclass(frozen=True)
class DiscreteMeasure:
    atoms: tuple[Atom, ...]

    def __init__(self, atoms: Iterable[Atom], square_mode: bool = False):
        merged = _merge_atoms(atoms)
        if not merged:
            raise ConstraintError("a measure needs at least one atom of positive mass")
        total = sum(w for _, w in merged)
        if all(is_exact(w) for _, w in merged):
            if total != 1:
                raise ConstraintError(f"weights sum to {total}, expected 1")
        elif abs(float(total) - 1.0) > 1e-12:
            raise ConstraintError(f"weights sum to {float(total)!r}, expected 1")
        if square_mode:
            for x, _ in merged:
                if not in_square(x):
                    raise ConstraintError(
                        f"atom ({x.x1}, {x.x2}) lies outside [-1,1]^2"
                    )
        object.__setattr__(self, "atoms", merged)

    @classmethod
    def dirac(cls, x: Point2, square_mode: bool = False) -> "DiscreteMeasure":
        return cls([(x, Fraction(1))], square_mode=square_mode)

    def points(self) -> tuple[Point2, ...]:
        return tuple(x for x, _ in self.atoms)

    def weights(self) -> tuple[Scalar, ...]:
        return tuple(w for _, w in self.atoms)

    @property
    def support_size(self) -> int:
        return len(self.atoms)

    @property
    def is_dirac(self) -> bool:
        return len(self.atoms) == 1

    @property
    def exact(self) -> bool:
        return all(x.exact and is_exact(w) for x, w in self.atoms)

    def supported_on(self, line: DiagonalLine) -> bool:
        return all(line.contains(x) for x, _ in self.atoms)

    def diagonal_line(self):
        """The diagonal line carrying the whole support, or None."""
        for eps in (1, -1):
            x0 = self.atoms[0][0]
            line = DiagonalLine(eps, x0.x2 - eps * x0.x1)
            if self.supported_on(line):
                return line
        return None

    def to_json_dict(self) -> dict:
        return {
            "atoms": [
                {"x": x.to_json(), "w": scalar_to_json(w)} for x, w in self.atoms
            ]
        }

    @classmethod
    def from_json_dict(cls, data, square_mode: bool = False) -> "DiscreteMeasure":
        if not isinstance(data, dict) or "atoms" not in data:
            raise ParseError("measure JSON must be an object with an 'atoms' array")
        atoms = []
        for entry in data["atoms"]:
            try:
                x = Point2.from_json(entry["x"])
                w = parse_scalar(entry["w"])
            except (KeyError, TypeError) as exc:
                raise ParseError(f"bad atom entry {entry!r}") from exc
            atoms.append((x, w))
        return cls(atoms, square_mode=square_mode)


def push_forward(
    transform: Callable[[Point2], Point2], mu: DiscreteMeasure
) -> DiscreteMeasure:
    """Image measure: mass of each atom moves to its transformed point.

    Collisions merge, so the support can shrink but total mass cannot.
    """
    return DiscreteMeasure([(transform(x), w) for x, w in mu.atoms])


# ---------------------------------------------------------------------------
# the two-atom family on the main diagonal

@dataclass(frozen=True)
class KloecknerParam:
    """Coordinates (m, sigma, r) for a measure with at most two atoms on
    the main diagonal: mean position m, spread sigma >= 0 and shape r.

    sigma == 0 is the Dirac at (m, m), with r fixed at 0 by convention.
    """

    m: Scalar
    sigma: Scalar
    r: Scalar

    def __post_init__(self):
        if self.sigma < 0:
            raise ConstraintError(f"sigma must be >= 0, got {self.sigma!r}")
        if self.sigma == 0 and self.r != 0:
            raise ConstraintError("a Dirac (sigma == 0) must carry r == 0")


def kloeckner_measure(param: KloecknerParam, exp_r: Scalar | None = None) -> DiscreteMeasure:
    """The measure with shape parameters (m, sigma, r).

    With u = e^r the two atoms sit at m - sigma*u and m + sigma/u on the
    main diagonal, carrying weights 1/(u^2+1) and u^2/(u^2+1).  Passing
    exp_r supplies u directly (e.g. an exact Fraction when e^r is
    rational), keeping the whole measure exact; otherwise u = math.exp(r)
    in float.
    """
    m, sigma = param.m, param.sigma
    if sigma == 0:
        return DiscreteMeasure.dirac(Point2(m, m))
    u = math.exp(param.r) if exp_r is None else exp_r
    if u <= 0:
        raise ConstraintError(f"exp_r must be positive, got {u!r}")
    den = u * u + 1
    if is_exact(u):
        w_low = Fraction(1, 1) / den
        w_high = Fraction(u * u) / den
    else:
        w_low = 1.0 / den
        w_high = (u * u) / den
    low = m - sigma * u
    high = m + sigma / u
    return DiscreteMeasure([(Point2(low, low), w_low), (Point2(high, high), w_high)])


def kloeckner_recover(mu: DiscreteMeasure) -> KloecknerParam:
    """Back out (m, sigma, r) from a 1- or 2-atom measure on the diagonal.

    r comes from the weight ratio, so it is a float except in the
    balanced case; m and sigma keep the arithmetic of the input where
    the algebra allows.
    """
    if not mu.supported_on(L_PLUS):
        raise ConstraintError("parametrized measures live on the main diagonal")
    if mu.is_dirac:
        (x, _), = mu.atoms
        return KloecknerParam(x.x1, 0, 0)
    if mu.support_size != 2:
        raise ConstraintError("parametrization covers at most two atoms")
    (xl, wl), (xh, wh) = mu.atoms
    # wl = 1/(u^2+1), wh = u^2/(u^2+1)  =>  u = sqrt(wh/wl)
    u = math.sqrt(float(wh) / float(wl))
    if u == 1.0:
        sigma = halve(xh.x1 - xl.x1)
        return KloecknerParam(xl.x1 + sigma, sigma, 0)
    r = math.log(u)
    sigma = (float(xh.x1) - float(xl.x1)) / (u + 1.0 / u)
    m = float(xl.x1) + sigma * u
    return KloecknerParam(m, sigma, r)


def phi_star(param: KloecknerParam) -> KloecknerParam:
    """The exchange involution (m, sigma, r) -> (m, sigma, -r)."""
    return KloecknerParam(param.m, param.sigma, -param.r)


def phi_t(param: KloecknerParam, t: Scalar) -> KloecknerParam:
    """The shear flow (m, sigma, r) -> (m, sigma, r + t); sigma == 0 is fixed."""
    if param.sigma == 0:
        return param
    return KloecknerParam(param.m, param.sigma, param.r + t)


def in_family_F(mu: DiscreteMeasure) -> bool:
    """General position for Radon inversion: pairwise-distinct weights
    and pairwise-distinct projections on both diagonal axes."""
    ws = mu.weights()
    if len(set(ws)) != len(ws):
        return False
    for line in (L_PLUS, L_MINUS):
        projs = [project_point(line, x) for x in mu.points()]
        if len(set(projs)) != len(projs):
            return False
    return True


# ---------------------------------------------------------------------------
# measures on the projection grid of a general-position measure

def family_grid(mu: DiscreteMeasure) -> tuple[tuple[Point2, ...], ...]:
    """The N x N grid z[i][j] cut out by the projection preimages of mu.

    z[i][j] is the unique point sharing its slope-+1 projection with
    atom i and its slope--1 projection with atom j; in particular
    z[i][i] is atom i itself.
    """
    if not in_family_F(mu):
        raise ConstraintError("grid construction needs a general-position measure")
    pts = mu.points()
    ts = [project_point(L_PLUS, x).x1 for x in pts]
    ss = [project_point(L_MINUS, x).x1 for x in pts]
    return tuple(
        tuple(Point2(t + s, t - s) for s in ss) for t in ts
    )


@dataclass(frozen=True)
class GridMeasure:
    """A measure on the projection grid of mu with the same Radon image.

    weights[i][j] is the mass at grid point z[i][j]; row sums and column
    sums both reproduce mu's weight vector, which is exactly the
    condition that both diagonal projections agree with mu's.
    """

    base: DiscreteMeasure
    weights: tuple[tuple[Scalar, ...], ...]

    def __init__(self, base: DiscreteMeasure, weights):
        n = base.support_size
        rows = tuple(tuple(row) for row in weights)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ConstraintError(f"weight matrix must be {n}x{n}")
        target = base.weights()
        for i, row in enumerate(rows):
            if any(w < 0 for w in row):
                raise ConstraintError("grid weights must be nonnegative")
            if sum(row) != target[i]:
                raise ConstraintError(f"row {i} sums to {sum(row)}, expected {target[i]}")
        for j in range(n):
            col = sum(rows[i][j] for i in range(n))
            if col != target[j]:
                raise ConstraintError(f"column {j} sums to {col}, expected {target[j]}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "weights", rows)

    def grid_points(self):
        return family_grid(self.base)

    def to_measure(self) -> DiscreteMeasure:
        z = self.grid_points()
        n = self.base.support_size
        return DiscreteMeasure(
            [(z[i][j], self.weights[i][j]) for i in range(n) for j in range(n)]
        )

    def min_grid_gap(self) -> Scalar:
        """Smallest pairwise distance between grid points."""
        z = self.grid_points()
        flat = [p for row in z for p in row]
        from .geometry import dm

        gaps = [
            dm(a, b)
            for k, a in enumerate(flat)
            for b in flat[k + 1:]
            if a != b
        ]
        return min(gaps)

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.to_json_dict(),
            "weights": [[scalar_to_json(w) for w in row] for row in self.weights],
        }

    @classmethod
    def from_json_dict(cls, data) -> "GridMeasure":
        try:
            base = DiscreteMeasure.from_json_dict(data["base"])
            weights = [[parse_scalar(w) for w in row] for row in data["weights"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad grid measure JSON") from exc
        return cls(base, weights)
