"""Numerically estimated limits with honest at-cut verdicts.

Every mean-value in this package has the shape lim_x (1/x) sum_{n<=x}(...).
We never assert the asymptotic statement: a LimitEstimate records the grid,
the per-point estimates and their successive differences, and declares
"converged" only when the last delta is below tolerance (optionally also
requiring a minimum grid span in decades and closeness to a known target).
"""

from dataclasses import dataclass
import math


@dataclass
class LimitEstimate:
    grid: list
    estimates: list                 # floats, one per grid point
    deltas: list                    # successive differences, len(grid)-1
    verdict: str                    # "converged" | "undetermined"
    tol: float
    value: float | None = None      # final estimate when converged
    target: float | None = None     # exact limit when known
    exact: list | None = None       # per-point Fractions when the path is exact

    @property
    def final(self) -> float:
        return self.estimates[-1]

    @property
    def converged(self) -> bool:
        return self.verdict == "converged"


def build_estimate(grid, estimates, tol, target=None, exact=None,
                   min_decades: float = 0.0) -> LimitEstimate:
    grid = list(grid)
    if not grid:
        raise ValueError("empty evaluation grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("evaluation grid must be strictly increasing")
    estimates = [float(e) for e in estimates]
    deltas = [b - a for a, b in zip(estimates, estimates[1:])]
    ok = True
    if deltas:
        ok = abs(deltas[-1]) < tol
    if target is not None:
        ok = ok and abs(estimates[-1] - target) < tol
    if min_decades > 0 and len(grid) > 1:
        ok = ok and math.log10(grid[-1] / grid[0]) >= min_decades - 1e-12
    return LimitEstimate(grid=grid, estimates=estimates, deltas=deltas,
                         verdict="converged" if ok and deltas else "undetermined",
                         tol=tol, value=estimates[-1] if ok else None,
                         target=target, exact=exact)


def check_grid(xgrid) -> list:
    xs = [int(x) for x in xgrid]
    if not xs:
        raise ValueError("empty evaluation grid")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("evaluation grid must be strictly increasing")
    return xs
