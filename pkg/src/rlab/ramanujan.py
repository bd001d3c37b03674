"""Ramanujan sums c_q(n) and their fundamental identities.

The canonical evaluation is the closed form c_q(n) = phi(q) mu(q/g) / phi(q/g)
with g = gcd(q, n): one factorization of q and one gcd.  The divisor form
sum_{d|q, d|n} d mu(q/d) and the defining cosine sum exist as independent
cross-checking routes.  c_q(0) = phi(q) and c_q(-n) = c_q(n).
"""

from dataclasses import dataclass
from functools import lru_cache
from math import cos, gcd, lcm, pi

import numpy as np

from .arith import divisors, factor, mu, omega, phi
from .limits import build_estimate, check_grid
from . import kernels


def csum(q: int, n: int) -> int:
    """c_q(n) by the closed form; exact integer, any integer n."""
    if q < 1:
        raise ValueError(f"modulus q >= 1 required, got {q}")
    g = gcd(q, abs(n))  # gcd(q, 0) = q, so c_q(0) = phi(q)
    m = mu(q // g)
    if m == 0:
        return 0
    return phi(q) * m // phi(q // g)


def csum_divisor_form(q: int, n: int) -> int:
    """c_q(n) = sum_{d | gcd(q,n)} d * mu(q/d)."""
    if q < 1:
        raise ValueError(f"modulus q >= 1 required, got {q}")
    g = gcd(q, abs(n))
    if g == 0:
        g = q
    return sum(d * mu(q // d) for d in divisors(g))


def csum_trig_form(q: int, n: int) -> float:
    """Defining cosine sum over residues coprime to q (float accumulation)."""
    if q < 1:
        raise ValueError(f"modulus q >= 1 required, got {q}")
    j = np.arange(1, q + 1, dtype=np.int64)
    coprime = j[np.gcd(j, q) == 1]
    return float(np.cos(2.0 * pi * ((coprime * (abs(n) % q)) % q) / q).sum())


def csum_trig_row(q: int, nmax: int) -> np.ndarray:
    """Cosine-sum values c_q(n) for n = 0..nmax, vectorized over n."""
    j = np.arange(1, q + 1, dtype=np.int64)
    coprime = j[np.gcd(j, q) == 1]
    n = np.arange(nmax + 1, dtype=np.int64)
    angles = 2.0 * pi * ((coprime[:, None] * (n[None, :] % q)) % q) / q
    return np.cos(angles).sum(axis=0)


@lru_cache(maxsize=4096)
def csum_period(q: int) -> np.ndarray:
    """One-period table t[r] = c_q(r) for residues r = 0..q-1."""
    row = np.empty(q, dtype=np.int64)
    for r in range(q):
        row[r] = csum(q, r)
    row.setflags(write=False)
    return row


@dataclass
class RamanujanSumTable:
    """Dense integer table values[q][n], 1 <= q <= qmax, 0 <= n <= nmax."""
    qmax: int
    nmax: int
    values: np.ndarray

    @classmethod
    def build(cls, qmax: int, nmax: int) -> "RamanujanSumTable":
        return cls(qmax, nmax, kernels.csum_block(qmax, nmax))

    def __getitem__(self, qn):
        q, n = qn
        return int(self.values[q, n % q if n >= q else n])


def divisibility_indicator_check(q: int, n: int) -> bool:
    """q * 1_{q|n} == sum_{d|q} c_d(n); holds exactly for all inputs."""
    if q < 1 or n < 0:
        raise ValueError("q >= 1 and n >= 0 required")
    s = sum(csum(d, n) for d in divisors(q))
    return s == (q if n % q == 0 else 0)


def delange_bound_check(d: int, n: int):
    """(lhs, rhs, holds) for sum_{l|d} |c_l(n)| <= n * 2^omega(d)."""
    if d < 1 or n < 1:
        raise ValueError("d >= 1 and n >= 1 required")
    lhs = sum(abs(csum(l, n)) for l in divisors(d))
    rhs = n * 2 ** omega(d)
    return lhs, rhs, lhs <= rhs


# ---------------------------------------------------------------------------
# exact periodic summation helpers
# ---------------------------------------------------------------------------

def cross_sum(q: int, l: int, n: int, x: int) -> int:
    """Exact sum_{a<=x} c_q(n+a) c_l(a) by summing one lcm(q,l)-period block.

    The integrand has period P = lcm(q, l) in a, so the total is
    (x // P) * (full-period sum) + (partial-period prefix).  Falls back to
    the direct kernel when the period exceeds the range.
    """
    p = lcm(q, l)
    cq = csum_period(q)
    cl = csum_period(l)
    if p > x:
        return kernels.cross_sum_direct(cq, cl, n, x)
    a = np.arange(1, p + 1, dtype=np.int64)
    prods = cq[(n + a) % q] * cl[a % l]
    block = int(prods.sum())
    rem = x % p
    return (x // p) * block + int(prods[:rem].sum())


def csum_multiple_sum(q: int, d: int, x: int) -> int:
    """Exact T = sum_{m <= x/d} c_q(d*m), by periodicity of m -> c_q(dm)."""
    kmax = x // d
    if kmax <= 0:
        return 0
    p = q // gcd(q, d)
    cq = csum_period(q)
    m = np.arange(1, p + 1, dtype=np.int64)
    vals = cq[(d * m) % q]
    block = int(vals.sum())
    return (kmax // p) * block + int(vals[: kmax % p].sum())


def csum_prefix_sum(q: int, a_max: int) -> int:
    """Exact sum_{a<=A} c_q(a) = sum_{d|q} d mu(q/d) floor(A/d) (divisor form)."""
    return sum(d * mu(q // d) * (a_max // d) for d in divisors(q))


# ---------------------------------------------------------------------------
# orthogonality of Ramanujan sums
# ---------------------------------------------------------------------------

def orthogonality_estimate(q: int, l: int, n: int, xgrid, tol: float = 1e-2):
    """Estimate lim (1/x) sum_{a<=x} c_q(n+a) c_l(a) against 1_{q=l} c_l(n).

    Per-x sums are exact integers; the verdict requires the last two grid
    estimates to agree within tol and the final one to sit within tol of the
    exact target.
    """
    if q < 1 or l < 1 or n < 1:
        raise ValueError("q, l, n >= 1 required")
    xs = check_grid(xgrid)
    if xs[0] < lcm(q, l):
        raise ValueError(f"grid values must be >= lcm(q,l) = {lcm(q, l)}")
    target = float(csum(l, n)) if q == l else 0.0
    sums = [cross_sum(q, l, n, x) for x in xs]
    estimates = [s / x for s, x in zip(sums, xs)]
    return build_estimate(xs, estimates, tol, target=target)


def abs_csum_over_q_partial(n: int, cuts) -> list:
    """Partial sums S(X) = sum_{q<=X} |c_q(n)| / q at each cut (float).

    These partials grow without bound in X; the per-cut values feed the
    divergence-trend checks.
    """
    cuts = check_grid(cuts)
    xmax = cuts[-1]
    row = kernels.csum_row(n, xmax)
    absrow = np.abs(row[1:]).astype(np.float64)
    weights = absrow / np.arange(1, xmax + 1, dtype=np.float64)
    out = []
    prev = 0.0
    prev_cut = 0
    for c in cuts:
        prev += float(weights[prev_cut: c].sum())
        out.append(prev)
        prev_cut = c
    return out
