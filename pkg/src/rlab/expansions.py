"""Evaluation and reconstruction of Ramanujan expansions.

Covers partial sums of coefficient sequences against c_q(n), the two-parameter
zero-expansion family alpha/q + beta/phi(q), Wintner-Delange reconstruction,
Lucht's resummation identity, inversion of pure coefficients back to the
transform, Carmichael's formula for pure finite expansions, the standard
n-dependent finite expansion, and the K-divisor coefficient formula.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, log

import numpy as np

from .arith import ArithmeticFunction, divisors, mu, phi
from .finite import FiniteExpansion, fre_to_tds
from .limits import LimitEstimate, build_estimate, check_grid
from .rational import exact_dot, exact_sum
from .ramanujan import csum, cross_sum
from .transforms import CoefficientSeq, eratosthenes, wintner_scaled_table
from . import kernels


@dataclass
class RamanujanExpansion:
    """A coefficient sequence tagged with purity and provenance.

    Pure expansions have point-independent coefficients by construction; the
    standard finite expansion is the one n-dependent citizen and carries its
    own evaluation path.
    """
    coefficients: CoefficientSeq
    purity: str = "pure"                # "pure" | "standard-fre"
    provenance: str = "user"

    @classmethod
    def from_list(cls, values, provenance="user"):
        return cls(CoefficientSeq.from_list(values), "pure", provenance)


@dataclass
class ZeroCloudElement:
    """Coefficients q -> alpha/q + beta/phi(q); expansions of the zero function."""
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        self.alpha = Fraction(self.alpha)
        self.beta = Fraction(self.beta)

    def coefficient(self, q: int) -> Fraction:
        return self.alpha / q + Fraction(self.beta, phi(q))

    def as_expansion(self) -> RamanujanExpansion:
        prov = "zero-ram" if self.beta == 0 else (
            "zero-har" if self.alpha == 0 else "zero-plane")
        seq = CoefficientSeq.from_func(self.coefficient, label="user")
        return RamanujanExpansion(seq, "pure", prov)

    def float_weights(self, qmax: int) -> np.ndarray:
        q = np.arange(qmax + 1, dtype=np.float64)
        q[0] = 1.0
        ph = kernels.totient_sieve(qmax).astype(np.float64)
        ph[0] = 1.0
        w = float(self.alpha) / q + float(self.beta) / ph
        w[0] = 0.0
        return w


def _seq_of(expansion) -> CoefficientSeq:
    if isinstance(expansion, RamanujanExpansion):
        return expansion.coefficients
    if isinstance(expansion, CoefficientSeq):
        return expansion
    raise TypeError("expected RamanujanExpansion or CoefficientSeq")


def evaluate_partial(expansion, n: int, q_cut: int, exact=None):
    """Partial sum over q <= q_cut of fhat(q) c_q(n).

    Exact (Fraction) when the coefficients are stored exactly and the cut is
    modest; functional sequences over deep cuts go through the vectorized
    float path.  No limit claim is attached to the value.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    seq = _seq_of(expansion)
    if seq.support is not None and seq.entries is not None:
        top = min(q_cut, seq.support)
        missing = [q for q in seq.entries if q <= q_cut and q > seq.support]
        if missing:
            raise ValueError(f"coefficients missing below cut at q={missing[0]}")
        total = exact_sum(Fraction(seq.entries[q]) * csum(q, n)
                          for q in seq.entries if q <= top)
        return total
    if exact is True:
        return exact_sum(Fraction(seq.get(q)) * csum(q, n)
                         for q in range(1, q_cut + 1))
    row = kernels.csum_row(n, q_cut).astype(np.float64)
    weights = seq.float_array(q_cut)
    return float(np.dot(row[1:], weights[1:]))


def zero_cloud_partial(alpha, beta, n: int, q_cut: int) -> float:
    """Partial sum of the zero-expansion with weights alpha/q + beta/phi(q)."""
    el = ZeroCloudElement(alpha, beta)
    row = kernels.csum_row(n, q_cut).astype(np.float64)
    return float(np.dot(row[1:], el.float_weights(q_cut)[1:]))


# ---------------------------------------------------------------------------
# Wintner-Delange reconstruction
# ---------------------------------------------------------------------------

@dataclass
class Reconstruction:
    value: Fraction
    reference: Fraction      # F(n) evaluated directly
    gap: Fraction            # value - reference

    @property
    def abs_gap(self) -> float:
        return abs(float(self.gap))


def _fprime_of(f, cut: int) -> list:
    if isinstance(f, ArithmeticFunction) and f.kind == "tds":
        fpv = list(f.tds.fprime) + [Fraction(0)] * max(0, cut - f.tds.range)
        return fpv[:cut]
    return eratosthenes(f, cut).values


def wintner_delange_table(f, cut: int):
    """Scaled coefficient table (numerators, den) for reconstruction at cut.

    The table does not depend on the evaluation point; hoist it when
    reconstructing at many points.
    """
    return wintner_scaled_table(_fprime_of(f, cut), cut)


def wintner_delange_reconstruct(f, n: int, cut: int, table=None) -> Reconstruction:
    """sum_{l<=cut} (sum_{d<=cut, l|d} fprime(d)/d) c_l(n), exactly.

    The double sum is assembled over one shared denominator; the report
    carries the gap against the direct evaluation F(n).
    """
    nums, den = table if table is not None else wintner_delange_table(f, cut)
    row = kernels.csum_row(n, cut)
    total = 0
    for l in range(1, cut + 1):
        nl = nums[l - 1]
        if nl:
            total += nl * int(row[l])
    value = Fraction(total, den)
    ref = Fraction(f(n))
    return Reconstruction(value, ref, value - ref)


# ---------------------------------------------------------------------------
# Lucht's resummation identity (exact at every finite cut)
# ---------------------------------------------------------------------------

def lucht_evaluate(fhat, a: int, cut: int):
    """(lhs, rhs): sum_{q<=cut} fhat(q) c_q(a)  versus
    sum_{d|a} d sum_{K<=cut/d} fhat(dK) mu(K).  Equal at every finite cut."""
    seq = fhat if isinstance(fhat, CoefficientSeq) else CoefficientSeq.from_list(fhat)
    lhs = exact_sum(Fraction(seq.get(q)) * csum(q, a) for q in range(1, cut + 1))
    rhs_terms = []
    for d in divisors(a):
        if d > cut:
            break
        inner = exact_sum(Fraction(seq.get(d * k)) * mu(k)
                          for k in range(1, cut // d + 1))
        rhs_terms.append(d * inner)
    rhs = exact_sum(rhs_terms)
    return lhs, rhs


# ---------------------------------------------------------------------------
# inversion of pure finite-support coefficients
# ---------------------------------------------------------------------------

@dataclass
class PureInversion:
    fprime: list             # 1-based, length = support
    win_check: bool          # Wintner partials reproduce the coefficients


def invert_pure_coefficients(fhat) -> PureInversion:
    """fprime(d) = d sum_{K<=Q/d} mu(K) fhat(dK) for finite-support pure
    coefficients; verifies the Wintner partials recover fhat exactly.

    Unbounded supports are not handled here (the dual summability condition
    cannot be certified from finite data) and raise.
    """
    seq = fhat if isinstance(fhat, CoefficientSeq) else CoefficientSeq.from_list(fhat)
    if seq.support is None:
        raise ValueError("finite coefficient support required")
    q_max = seq.support
    e = FiniteExpansion(q_max, [Fraction(seq.get(q)) for q in range(1, q_max + 1)])
    t = fre_to_tds(e)
    nums, den = wintner_scaled_table(t.fprime, q_max)
    ok = all(Fraction(nums[q - 1], den) == Fraction(seq.get(q))
             for q in range(1, q_max + 1))
    return PureInversion(list(t.fprime), ok)


# ---------------------------------------------------------------------------
# Carmichael's formula for pure finite expansions
# ---------------------------------------------------------------------------

def carmichael_formula_check(expansion, l: int, xgrid,
                             tol: float = 1e-2) -> LimitEstimate:
    """Estimate (1/(phi(l) x)) sum_{h<=x} F(h) c_l(h) against the stored
    coefficient of a pure finite expansion (uniform convergence is trivial).

    Per-x sums are exact: F(h) is expanded through its coefficients and each
    cross sum of Ramanujan sums is an exact integer.
    """
    if isinstance(expansion, RamanujanExpansion) and expansion.purity != "pure":
        raise ValueError("Carmichael's formula needs a pure expansion")
    seq = _seq_of(expansion)
    if seq.support is None:
        raise ValueError("finite coefficient support required")
    xs = check_grid(xgrid)
    fl = phi(l)
    target = Fraction(seq.get(l))
    exact = []
    for x in xs:
        inner = [cross_sum(q, l, 0, x) for q in range(1, seq.support + 1)]
        s = exact_dot((Fraction(seq.get(q)) for q in range(1, seq.support + 1)),
                      inner)
        exact.append(s / (fl * x))
    ests = [float(e) for e in exact]
    return build_estimate(xs, ests, tol, target=float(target), exact=exact)


# ---------------------------------------------------------------------------
# standard finite expansion (coefficients depend on the evaluation point)
# ---------------------------------------------------------------------------

@dataclass
class StandardFiniteExpansion:
    n: int
    coefficients: list        # fhat(l, n) for l = 1..n
    reconstruction: Fraction  # sum_l fhat(l, n) c_l(n); equals F(n) exactly


def standard_finite_expansion(f, n: int) -> StandardFiniteExpansion:
    """Coefficients fhat(l, n) = sum_{d<=n, l|d} fprime(d)/d and their exact
    reconstruction at the point n.  Works for every arithmetic function; the
    price is the n-dependence of the coefficients."""
    if isinstance(f, ArithmeticFunction) and f.kind == "tds":
        fpv = list(f.tds.fprime) + [Fraction(0)] * max(0, n - f.tds.range)
        fpv = fpv[:n]
    else:
        fpv = eratosthenes(f, n).values
    nums, den = wintner_scaled_table(fpv, n)
    row = kernels.csum_row(n, n)
    total = sum(nums[l - 1] * int(row[l]) for l in range(1, n + 1))
    coeffs = [Fraction(v, den) for v in nums]
    return StandardFiniteExpansion(n, coeffs, Fraction(total, den))


# ---------------------------------------------------------------------------
# K-divisor coefficients
# ---------------------------------------------------------------------------

def dk_local_series(p: int, l: int, k: int) -> Fraction:
    """Exact closed form of sum_{lam>=l} C(k+lam-1, k-1) p^(l-lam).

    The full series from lam = 0 is (1-1/p)^-k; subtracting the first l terms
    and rescaling by p^l gives the tail.  Absolutely convergent (ratio 1/p).
    """
    x = Fraction(1, p)
    full = (1 - x) ** -k
    head = sum(comb(k + lam - 1, k - 1) * x ** lam for lam in range(l))
    return Fraction(p) ** l * (full - head)


@dataclass
class DivisorPowerCoefficient:
    """Structured d-hat_{K+1}(n): exact rational part times log(n)^K."""
    n: int
    k: int
    rational: Fraction
    log_power: int

    @property
    def value(self) -> float:
        if self.n == 1:
            return 0.0
        return float(self.rational) * log(self.n) ** self.log_power


def divisor_power_coefficient(n: int, k: int) -> DivisorPowerCoefficient:
    """Ramanujan coefficient of d_{K+1} at modulus n:
    ((-1)^K / K!) (log^K n / n) prod over p^l || n of
    ((1 - 1/p)^K * local tail series)^-1, with the series in closed form."""
    if n < 1 or k < 1:
        raise ValueError("n >= 1 and k >= 1 required")
    from .arith import factor
    rational = Fraction((-1) ** k, factorial(k)) * Fraction(1, n)
    for p, e in factor(n):
        local = (1 - Fraction(1, p)) ** k * dk_local_series(p, e, k)
        rational /= local
    return DivisorPowerCoefficient(n, k, rational, k)


def dk_expansion(k: int) -> RamanujanExpansion:
    """Coefficient sequence n -> d-hat_{K+1}(n) as a float-valued expansion."""
    seq = CoefficientSeq.from_func(
        lambda q: divisor_power_coefficient(q, k).value, label="user",
        meta={"family": "dK", "k": k})
    return RamanujanExpansion(seq, "pure", "dK-lucht")
