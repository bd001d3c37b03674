"""Truncated divisor sums and pure finite Ramanujan expansions.

The two representations are dual: coefficients come from the transform via
fhat(q) = sum_{d<=Q, q|d} fprime(d)/d, and the transform comes back via
fprime(d) = d * sum_{K<=Q/d} fhat(d*K) mu(K).  Both directions are exact and
roundtrip exactly; evaluation of either side agrees pointwise everywhere.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import mu, divisors
from .rational import exact_sum
from . import kernels


def _as_exact(values):
    return [v if isinstance(v, int) else Fraction(v) for v in values]


@dataclass
class TruncatedDivisorSum:
    """F(n) = sum_{d|n, d<=Q} fprime(d); fprime is 1-based of length Q."""
    range: int
    fprime: list

    def __post_init__(self):
        if self.range < 1:
            raise ValueError("range Q >= 1 required")
        if len(self.fprime) != self.range:
            raise ValueError("fprime must have exactly Q entries")
        self.fprime = _as_exact(self.fprime)

    @property
    def normalized_range(self) -> int:
        # Q is not unique (trailing zeros); the normalized range is canonical
        for d in range(self.range, 0, -1):
            if self.fprime[d - 1] != 0:
                return d
        return 0

    def __eq__(self, other):
        if not isinstance(other, TruncatedDivisorSum):
            return NotImplemented
        r = self.normalized_range
        if r != other.normalized_range:
            return False
        return self.fprime[:r] == other.fprime[:r]

    def eval(self, n: int):
        if n < 1:
            raise ValueError("t.d.s. evaluation is 1-based")
        total = Fraction(0)
        for d in divisors(n):
            if d > self.range:
                break
            total += self.fprime[d - 1]
        return int(total) if total.denominator == 1 else total

    def eval_range(self, nmax: int):
        """Values on 1..nmax via divisor scatter; int64 array when integral."""
        if all(isinstance(v, int) or v.denominator == 1 for v in self.fprime):
            w = np.zeros(nmax + 1, dtype=np.int64)
            for d in range(1, min(self.range, nmax) + 1):
                w[d] = int(self.fprime[d - 1])
            return kernels.divisor_scatter_int(w)[1:]
        out = [Fraction(0)] * nmax
        for d in range(1, min(self.range, nmax) + 1):
            v = self.fprime[d - 1]
            if v:
                for m in range(d, nmax + 1, d):
                    out[m - 1] += v
        return out


@dataclass
class FiniteExpansion:
    """F(n) = sum_{q<=Q} fhat(q) c_q(n); fhat is 1-based of length Q."""
    range: int
    fhat: list

    def __post_init__(self):
        if self.range < 1:
            raise ValueError("range Q >= 1 required")
        if len(self.fhat) != self.range:
            raise ValueError("fhat must have exactly Q entries")
        self.fhat = _as_exact(self.fhat)

    @property
    def normalized_range(self) -> int:
        for q in range(self.range, 0, -1):
            if self.fhat[q - 1] != 0:
                return q
        return 0

    def eval(self, n: int):
        from .ramanujan import csum
        total = Fraction(0)
        for q in range(1, self.range + 1):
            c = self.fhat[q - 1]
            if c:
                total += c * csum(q, n)
        return int(total) if total.denominator == 1 else total


def tds_to_fre(t: TruncatedDivisorSum) -> FiniteExpansion:
    """Finite Ramanujan coefficients of a truncated divisor sum (exact)."""
    q_max = t.range
    fhat = []
    for q in range(1, q_max + 1):
        fhat.append(exact_sum(Fraction(t.fprime[d - 1], d)
                              for d in range(q, q_max + 1, q)))
    return FiniteExpansion(q_max, fhat)


def fre_to_tds(e: FiniteExpansion) -> TruncatedDivisorSum:
    """Truncated Eratosthenes transform of a finite expansion (exact inverse)."""
    q_max = e.range
    fprime = []
    for d in range(1, q_max + 1):
        s = Fraction(0)
        for k in range(1, q_max // d + 1):
            m = mu(k)
            if m:
                s += m * e.fhat[d * k - 1]
        fprime.append(d * s)
    return TruncatedDivisorSum(q_max, fprime)


def truncate(f, q: int) -> TruncatedDivisorSum:
    """Q-truncated counterpart of an arithmetic function: keep fprime(1..Q)."""
    from .transforms import eratosthenes
    return TruncatedDivisorSum(q, eratosthenes(f, q).values)


@dataclass
class HighCoefficientReport:
    range: int
    checked: list = field(default_factory=list)   # (q, fhat_q, fprime_q_over_q)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def high_coefficient_check(f, q_range: int) -> HighCoefficientReport:
    """For q in (Q/2, Q]: the truncation's coefficient equals fprime(q)/q.

    The only multiple of such q below Q is q itself, so the identity is exact
    for every arithmetic function; any violation reported here is a fault.
    """
    from .transforms import eratosthenes
    fprime = eratosthenes(f, q_range).values
    t = TruncatedDivisorSum(q_range, fprime)
    e = tds_to_fre(t)
    report = HighCoefficientReport(q_range)
    for q in range(q_range // 2 + 1, q_range + 1):
        expected = Fraction(fprime[q - 1], q)
        got = e.fhat[q - 1]
        report.checked.append((q, got, expected))
        if got != expected:
            report.violations.append((q, got, expected))
    return report


@dataclass
class LowCoefficientReport:
    rows: list          # (q, coeff_at_cut, deep_partial, tail_bound, rel_diff)
    verdict: str        # "consistent" | "inconsistent" | "no-hint"


def low_coefficient_report(f, q_range: int, q0: int, decay_hint=None,
                           deep_cut: int | None = None) -> LowCoefficientReport:
    """Compare low truncation coefficients (q <= q0) against deeper partials.

    The two sides coincide identically at equal cuts, so the deeper partial
    uses deep_cut (default 4*Q).  With a decay hint |fprime(d)| <= C*d^-s the
    gap is bounded by the tail beyond Q; verdict "consistent" means every gap
    sits inside that bound.  Without a hint only raw rows are reported.
    """
    from .transforms import decay_tail_bound, eratosthenes
    if deep_cut is None:
        deep_cut = 4 * q_range
    fhat_q = tds_to_fre(TruncatedDivisorSum(q_range, eratosthenes(f, q_range).values))
    deep = np.array([float(v) for v in eratosthenes(f, deep_cut).values])
    d = np.arange(1, deep_cut + 1, dtype=np.float64)
    rows = []
    consistent = True
    for q in range(1, q0 + 1):
        # deep reference partial in float: the property is heuristic, only the
        # at-cut coefficient needs exactness
        partial = float((deep[q - 1:: q] / d[q - 1:: q]).sum())
        at_cut = fhat_q.fhat[q - 1]
        gap = abs(float(at_cut) - float(partial))
        # the gap between the Q-cut and deep-cut partials is a tail beyond Q
        bound = decay_tail_bound(decay_hint, q, q_range)
        rel = gap / abs(float(partial)) if partial != 0 else (0.0 if gap == 0 else float("inf"))
        rows.append((q, at_cut, partial, bound, rel))
        if bound is not None and gap > bound * (1 + 1e-9):
            consistent = False
    if decay_hint is None:
        verdict = "no-hint"
    else:
        verdict = "consistent" if consistent else "inconsistent"
    return LowCoefficientReport(rows, verdict)
