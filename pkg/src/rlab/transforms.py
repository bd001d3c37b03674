"""Eratosthenes transform, Wintner and Carmichael coefficients, condition checks.

Identity-grade computations stay in exact rationals (with integer fast paths);
limit estimates destined for tolerance verdicts may accumulate in floats with
compensated summation.  Convergence is never asserted: every verdict is
"at-cut", tied to the evaluation grid that produced it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
import random

import numpy as np

from .arith import ArithmeticFunction, phi
from .limits import LimitEstimate, build_estimate, check_grid
from .rational import exact_dot, exact_sum
from .ramanujan import csum_multiple_sum, csum_period
from . import kernels


# ---------------------------------------------------------------------------
# Eratosthenes transform
# ---------------------------------------------------------------------------

@dataclass
class EratosthenesTransform:
    """Exact table fprime(d) = sum_{t|d} F(t) mu(d/t) on 1..bound."""
    source: object
    bound: int
    values: list

    def __call__(self, d: int):
        if not 1 <= d <= self.bound:
            raise IndexError(f"transform computed to {self.bound}, asked for d={d}")
        return self.values[d - 1]

    def abs_partial(self, cut: int) -> float:
        return float(sum(abs(float(v)) for v in self.values[:cut]))


def eratosthenes(f, bound: int) -> EratosthenesTransform:
    """Moebius inversion of f on 1..bound; exact for exact inputs."""
    if isinstance(f, ArithmeticFunction) and f.kind == "tds":
        # the transform of a divisor sum is its own fprime, zero past the range
        vals = list(f.tds.fprime[:bound])
        vals += [0] * (bound - len(vals))
        return EratosthenesTransform(f, bound, vals)
    if isinstance(f, ArithmeticFunction) and f.is_integer:
        vals = np.zeros(bound + 1, dtype=np.int64)
        vals[1:] = f.int_range(bound)
        out = kernels.mobius_transform_int(vals)
        return EratosthenesTransform(f, bound, [int(v) for v in out[1:]])
    mu = kernels.mobius_sieve(bound)
    fv = [f(n) for n in range(1, bound + 1)] if not isinstance(f, ArithmeticFunction) \
        else list(f.eval_range(bound))
    out = [Fraction(0)] * (bound + 1)
    for t in range(1, bound + 1):
        ft = fv[t - 1]
        if not ft:
            continue
        for k in range(1, bound // t + 1):
            m = int(mu[k])
            if m:
                out[t * k] += m * ft
    vals = [int(v) if isinstance(v, Fraction) and v.denominator == 1 else v
            for v in out[1:]]
    return EratosthenesTransform(f, bound, vals)


def _fprime_values(fprime, cut: int) -> list:
    """Normalize the many shapes an F' source can take into a 1-based list.

    Numpy integers are coerced to Python ints: a numpy int smuggled into a
    Fraction keeps fixed-width arithmetic inside and can silently overflow.
    """
    if isinstance(fprime, EratosthenesTransform):
        if fprime.bound < cut:
            raise IndexError(f"transform bound {fprime.bound} < cut {cut}")
        vals = fprime.values[:cut]
    elif isinstance(fprime, ArithmeticFunction):
        vals = list(fprime.eval_range(cut))
    elif callable(fprime):
        vals = [fprime(d) for d in range(1, cut + 1)]
    else:
        vals = list(fprime)[:cut]
    if len(vals) < cut:
        raise IndexError(f"fprime source provides {len(vals)} values, cut is {cut}")
    return [int(v) if isinstance(v, np.integer) else v for v in vals]


# ---------------------------------------------------------------------------
# Wintner coefficients
# ---------------------------------------------------------------------------

def decay_tail_bound(decay_hint, q: int, cut: int) -> float | None:
    """Closed-form majorant of sum_{d>cut, q|d} |fprime(d)|/d under
    |fprime(d)| <= C d^-s: integral bound C q^-(s+1) (cut//q)^-s / s."""
    if decay_hint is None:
        return None
    c, s = decay_hint
    m = cut // q
    if m < 1 or s <= 0:
        return None
    return float(c) * q ** -(s + 1.0) * m ** (-float(s)) / float(s)


def wintner_coefficient(fprime, q: int, cut: int, decay_hint=None):
    """(partial, tail_bound): partial = sum_{d<=cut, q|d} fprime(d)/d, exact
    when fprime is exact; tail_bound requires a polynomial decay hint and is
    None otherwise (silent truncation would fabricate convergence)."""
    if q < 1 or cut < q:
        raise ValueError("need q >= 1 and cut >= q")
    vals = _fprime_values(fprime, cut)
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    if exact:
        partial = exact_sum(Fraction(vals[d - 1], d) for d in range(q, cut + 1, q))
    else:
        partial = float(np.sum([float(vals[d - 1]) / d for d in range(q, cut + 1, q)]))
    return partial, decay_tail_bound(decay_hint, q, cut)


def wintner_scaled_table(fprime, cut: int):
    """(numerators, den): exact partials sum_{d<=cut, q|d} fprime(d)/d for
    q = 1..cut as integer numerators over one shared denominator.

    Sharing a denominator keeps the bignum work linear instead of re-reducing
    per coefficient; callers doing further exact dot products can stay in
    integers until a single final reduction.
    """
    vals = _fprime_values(fprime, cut)
    terms = [Fraction(v, d) for d, v in enumerate(vals, start=1)]
    pairs = [(int(t.numerator), int(t.denominator)) for t in terms]
    den = 1
    for _, d in pairs:
        den = lcm(den, d)
    scaled = [n * (den // d) for n, d in pairs]
    nums = [sum(scaled[q - 1:: q]) for q in range(1, cut + 1)]
    return nums, den


def wintner_table(fprime, cut: int) -> list:
    """All partials sum_{d<=cut, q|d} fprime(d)/d for q = 1..cut at once."""
    vals = _fprime_values(fprime, cut)
    if not all(isinstance(v, (int, Fraction)) for v in vals):
        w = np.array([float(v) / d for d, v in enumerate(vals, start=1)])
        return [float(w[q - 1:: q].sum()) for q in range(1, cut + 1)]
    nums, den = wintner_scaled_table(fprime, cut)
    return [Fraction(n, den) for n in nums]


def is_completely_multiplicative(values: list, bound: int) -> bool:
    """Check f(ab) = f(a) f(b) for every product ab <= bound (1-based list)."""
    if not values or values[0] != 1:
        # f(1) = f(1)^2 forces f(1) in {0,1}; f(1)=0 collapses f to 0
        if not values or values[0] != 0 or any(values[:bound]):
            return values[0] == 1 if values else False
        return True
    for a in range(2, bound + 1):
        fa = values[a - 1]
        for b in range(a, bound // a + 1):
            if values[a * b - 1] != fa * values[b - 1]:
                return False
    return True


def wintner_cm_shortcut(fprime, q: int, cut: int):
    """For completely multiplicative fprime: (fprime(q)/q) * (q=1 partial).

    The multiplicativity precondition is verified on 1..cut before use.
    """
    vals = _fprime_values(fprime, cut)
    if not is_completely_multiplicative(vals, cut):
        raise ValueError("fprime is not completely multiplicative on 1..cut")
    if q < 1 or q > cut:
        raise ValueError("need 1 <= q <= cut")
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    if exact:
        w1 = exact_sum(Fraction(v, d) for d, v in enumerate(vals, start=1))
        return Fraction(vals[q - 1], q) * w1
    w1 = float(np.sum([float(v) / d for d, v in enumerate(vals, start=1)]))
    return float(vals[q - 1]) / q * w1


# ---------------------------------------------------------------------------
# Carmichael coefficients (finite-x averages)
# ---------------------------------------------------------------------------

def _csum_weighted_sums(f, q: int, xs: list):
    """Exact S(x) = sum_{n<=x} f(n) c_q(n) per grid point; Fractions list.

    Integer-valued f goes through the int64 kernel; an exact t.d.s. is summed
    by divisor (sum_d fprime(d) * sum_{m<=x/d} c_q(dm), each inner sum an
    exact integer), which sidesteps per-n rational accumulation entirely.
    """
    xmax = xs[-1]
    tab = csum_period(q)
    if isinstance(f, ArithmeticFunction) and f.is_integer:
        w = f.int_range(xmax)
        return [Fraction(kernels.weighted_periodic_int(w, tab, x)) for x in xs]
    if isinstance(f, ArithmeticFunction) and f.kind == "tds" and f.is_exact:
        t = f.tds
        out = []
        for x in xs:
            ts = [csum_multiple_sum(q, d, x) for d in range(1, t.range + 1)]
            out.append(exact_dot(map(Fraction, t.fprime), ts))
        return out
    if isinstance(f, ArithmeticFunction) and f.is_exact:
        vals = [Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v)
                for v in f.eval_range(xmax)]
        out = []
        for x in xs:
            out.append(exact_dot(vals[:x], (int(tab[n % q]) for n in range(1, x + 1))))
        return out
    return None   # float path handled by caller


def carmichael_estimate(f, q: int, xgrid, tol: float = 1e-3) -> LimitEstimate:
    """Per-x averages (1/(phi(q) x)) sum_{n<=x} f(n) c_q(n).

    Exact accumulation whenever f is exact (folded to float only in the
    report); float Kahan accumulation otherwise.  "Converged" additionally
    requires the grid to span at least two decades.
    """
    xs = check_grid(xgrid)
    fq = phi(q)
    sums = _csum_weighted_sums(f, q, xs)
    if sums is not None:
        exact = [s / (fq * x) for s, x in zip(sums, xs)]
        ests = [float(e) for e in exact]
        return build_estimate(xs, ests, tol, exact=exact, min_decades=2.0)
    w = np.asarray(f.eval_range(xs[-1]), dtype=np.float64)
    tab = csum_period(q).astype(np.float64)
    ests = [kernels.weighted_periodic_float(w, tab, x) / (fq * x) for x in xs]
    return build_estimate(xs, ests, tol, min_decades=2.0)


# ---------------------------------------------------------------------------
# coefficient sequences
# ---------------------------------------------------------------------------

@dataclass
class CoefficientSeq:
    """Indexed sequence q -> coefficient with explicit support metadata.

    Finite sequences carry a support bound and vanish beyond it; unbounded
    ones carry a generator plus truncation metadata describing any cut used.
    """
    label: str
    support: int | None
    entries: dict | None = None
    func: object = None
    truncation_meta: dict = field(default_factory=dict)

    @classmethod
    def from_list(cls, values, label="user"):
        entries = {q: v for q, v in enumerate(values, start=1) if v != 0}
        return cls(label=label, support=len(values), entries=entries)

    @classmethod
    def from_func(cls, func, label="user", meta=None):
        return cls(label=label, support=None, func=func,
                   truncation_meta=meta or {})

    def get(self, q: int):
        if q < 1:
            raise ValueError("coefficient index q >= 1 required")
        if self.support is not None and q > self.support:
            return Fraction(0)
        if self.entries is not None:
            return self.entries.get(q, Fraction(0))
        return self.func(q)

    def float_array(self, qmax: int) -> np.ndarray:
        out = np.zeros(qmax + 1, dtype=np.float64)
        top = qmax if self.support is None else min(qmax, self.support)
        for q in range(1, top + 1):
            out[q] = float(self.get(q))
        return out


# ---------------------------------------------------------------------------
# condition checks (always at-cut)
# ---------------------------------------------------------------------------

_SERIES_CONDITIONS = ("WA", "DH", "DD7")

# trend thresholds: ratio of the last per-decade increment to the previous one
_SERIES_DECAY_OK = 0.55      # below: increments die off, series looks summable
_SERIES_DECAY_BAD = 0.75     # above: harmonic-or-worse growth
_RATIO_FLAT_OK = 0.95        # SD: per-decade ratio shrinking at least this much
_DI_GROWTH_BAD = 1.08        # DI: per-decade mean growing by more than this


@dataclass
class ConditionReport:
    condition: str
    cut: int
    partial: float
    trend: list                 # per-decade cuts and values
    verdict: str                # satisfied-at-cut | violated-at-cut | undetermined


def _decade_cuts(cut: int):
    """(full, all): powers of ten up to cut, then the cut itself.

    Trend verdicts only compare full decades; a trailing partial decade would
    bias the increment ratios.
    """
    full = []
    c = 10
    while c <= cut:
        full.append(c)
        c *= 10
    cuts = list(full)
    if not cuts or cuts[-1] != cut:
        cuts.append(cut)
    return full, cuts


def condition_check(kind: str, source, cut: int) -> ConditionReport:
    """At-cut checks of the summability/decay conditions.

    WA:  sum |fprime(d)|/d           (source: fprime)
    DH:  sum 2^omega(d) |fprime(d)|/d (source: fprime)
    DD7: sum 2^omega(q) |fhat(q)|     (source: coefficient sequence)
    SD:  (1/x) sum_{d<=x} |fprime(d)| -> 0   (source: fprime)
    DI:  (1/x) sum_{n<=x} |F(n)| bounded     (source: F itself)

    Partial sums per decade feed a trend verdict; the infinite statement is
    never asserted.
    """
    if kind not in ("WA", "DH", "DD7", "SD", "DI"):
        raise ValueError(f"unknown condition {kind!r}")
    full, cuts = _decade_cuts(cut)
    if kind == "DD7" and isinstance(source, CoefficientSeq):
        vals = [source.get(q) for q in range(1, cut + 1)]
    else:
        vals = _fprime_values(source, cut)
    absv = np.array([abs(float(v)) for v in vals])
    d = np.arange(1, cut + 1, dtype=np.float64)
    if kind == "WA":
        terms = absv / d
    elif kind == "DH":
        terms = absv * (2.0 ** kernels.omega_sieve(cut)[1:]) / d
    elif kind == "DD7":
        terms = absv * (2.0 ** kernels.omega_sieve(cut)[1:])
    else:
        terms = absv
    csums = np.cumsum(terms)
    if kind in _SERIES_CONDITIONS:
        partials = [float(csums[c - 1]) for c in cuts]
        trend = list(zip(cuts, partials))
        decade = [float(csums[c - 1]) for c in full]
        incs = [decade[0]] + [b - a for a, b in zip(decade, decade[1:])]
        verdict = "undetermined"
        if len(incs) >= 2:
            prev, last = incs[-2], incs[-1]
            if last == 0 or (prev > 0 and last / prev < _SERIES_DECAY_OK):
                verdict = "satisfied-at-cut"
            elif prev > 0 and last / prev > _SERIES_DECAY_BAD:
                verdict = "violated-at-cut"
            elif prev == 0 and last == 0:
                verdict = "satisfied-at-cut"
        return ConditionReport(kind, cut, partials[-1], trend, verdict)
    # SD / DI: per-decade means
    means = [float(csums[c - 1]) / c for c in cuts]
    trend = list(zip(cuts, means))
    decade = [float(csums[c - 1]) / c for c in full]
    verdict = "undetermined"
    if len(decade) >= 2:
        ratios = [b / a for a, b in zip(decade, decade[1:]) if a > 0]
        if kind == "SD":
            if means[-1] == 0 or (ratios and max(ratios) < _RATIO_FLAT_OK):
                verdict = "satisfied-at-cut"
            elif ratios and ratios[-1] >= 0.99:
                verdict = "violated-at-cut"
        else:  # DI
            if not ratios or max(ratios[-2:]) <= 1.02:
                verdict = "satisfied-at-cut"
            elif ratios[-1] >= _DI_GROWTH_BAD:
                verdict = "violated-at-cut"
    return ConditionReport(kind, cut, means[-1], trend, verdict)


# ---------------------------------------------------------------------------
# approximate Carmichael-Wintner formula
# ---------------------------------------------------------------------------

@dataclass
class CwRow:
    x: int
    lhs: float
    rhs: float
    normalizer: float
    ratio: float | None       # None when the normalizer vanishes (skipped)


@dataclass
class CwReport:
    q: int
    rows: list
    max_ratio: float


def cw_formula_check(f, q: int, xgrid) -> CwReport:
    """Ratio x * |LHS - RHS| / sum_{d<=x} |fprime(d)| per grid point.

    LHS is the Carmichael average (1/(phi(q) x)) sum f(n) c_q(n), RHS the
    Wintner partial at cut x.  The ratio should stay bounded by a q-dependent
    constant; this is a report, so float accumulation is fine.
    """
    if not (isinstance(f, ArithmeticFunction) and f.is_exact):
        raise ValueError("exact arithmetic function required")
    xs = check_grid(xgrid)
    xmax = xs[-1]
    ft = eratosthenes(f, xmax)
    fpv = np.array([float(v) for v in ft.values])
    d = np.arange(1, xmax + 1, dtype=np.float64)
    abs_cum = np.cumsum(np.abs(fpv))
    win_terms = np.zeros(xmax + 1)
    win_terms[q::q] = fpv[q - 1:: q] / d[q - 1:: q]
    win_cum = np.cumsum(win_terms[1:])
    sums = _csum_weighted_sums(f, q, xs)
    fq = phi(q)
    rows = []
    max_ratio = 0.0
    for i, x in enumerate(xs):
        lhs = float(sums[i]) / (fq * x)
        rhs = float(win_cum[x - 1])
        normalizer = float(abs_cum[x - 1])
        if normalizer == 0:
            rows.append(CwRow(x, lhs, rhs, normalizer, None))
            continue
        ratio = x * abs(lhs - rhs) / normalizer
        max_ratio = max(max_ratio, ratio)
        rows.append(CwRow(x, lhs, rhs, normalizer, ratio))
    return CwReport(q, rows, max_ratio)


# ---------------------------------------------------------------------------
# nonnegative-function mean dominance (exact inequality per grid point)
# ---------------------------------------------------------------------------

@dataclass
class MeanDominanceReport:
    qmax: int
    rows: list                 # (q, x, |S_q|, phi(q)*S_1)
    ok: bool


def nonneg_carmichael_bound(f, xgrid, qmax: int = 10) -> MeanDominanceReport:
    """For F >= 0: |sum F(n) c_q(n)| / phi(q) <= sum F(n), exactly, per x.

    In particular a vanishing mean forces every Carmichael coefficient to
    vanish.  Negativity in F is a precondition error naming the offender.
    """
    xs = check_grid(xgrid)
    xmax = xs[-1]
    vals = f.eval_range(xmax)
    if isinstance(vals, np.ndarray):
        bad = np.nonzero(vals < 0)[0]
        if bad.size:
            raise ValueError(f"F({int(bad[0]) + 1}) < 0 violates nonnegativity")
    else:
        for n, v in enumerate(vals, start=1):
            if v < 0:
                raise ValueError(f"F({n}) < 0 violates nonnegativity")
    rows = []
    ok = True
    for q in range(1, qmax + 1):
        sums = _csum_weighted_sums(f, q, xs)
        if q == 1:
            s1 = [Fraction(s) for s in sums]
        for x, s in zip(xs, sums):
            lhs = abs(Fraction(s))
            rhs = phi(q) * s1[xs.index(x)]
            rows.append((q, x, lhs, rhs))
            if lhs > rhs:
                ok = False
    return MeanDominanceReport(qmax, rows, ok)


# ---------------------------------------------------------------------------
# search for functions with vanishing Wintner tail but surviving transform
# ---------------------------------------------------------------------------

def rational_nullspace(rows: list, ncols: int) -> list:
    """Exact nullspace basis by Gaussian elimination over Fractions.

    Pivot choice: largest absolute numerator in the column (ties by order).
    """
    m = [[Fraction(v) for v in row] for row in rows]
    pivot_cols = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(m)):
            if m[i][c] != 0 and (best is None or
                                 abs(m[i][c].numerator) > abs(m[best][c].numerator)):
                best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivot_cols):
            v[pc] = -m[ri][fc]
        basis.append(v)
    return basis


@dataclass
class TailSearchReport:
    family: str
    q_cut: int
    depth: int
    trials: int
    nullspace_dim: int | None    # free family only
    candidates: list             # nonzero fprime vectors with vanishing tail
    faults: list                 # constrained-family hits (none expected)

    @property
    def verdict(self) -> str:
        if self.candidates or self.faults:
            return "counterexample-candidate-found"
        return "no-counterexample"


def _win_partials_above(fprime_vals: list, q_cut: int, depth: int) -> bool:
    """True iff every partial sum_{d<=depth, q|d} fprime(d)/d vanishes for
    q in (q_cut, depth]."""
    for q in range(q_cut + 1, depth + 1):
        if exact_sum(Fraction(fprime_vals[d - 1], d)
                     for d in range(q, depth + 1, q)) != 0:
            return False
    return True


def vanishing_tail_search(family: str, q_cut: int, depth: int,
                          trials: int = 50, seed: int = 0) -> TailSearchReport:
    """Hunt for fprime with all Wintner partials beyond q_cut vanishing while
    fprime itself survives beyond q_cut.

    free: solve the exact linear system over unknowns fprime(q_cut+1..depth);
          any nonzero nullspace vector is reported verbatim, never suppressed.
    completely-multiplicative / nonnegative: randomized draws with exact
          verification; a hit in these families contradicts their structure
          theory and is flagged as a fault.
    """
    if family not in ("free", "completely-multiplicative", "nonnegative"):
        raise ValueError(f"unknown family {family!r}")
    if not depth > q_cut >= 1:
        raise ValueError("need depth > q_cut >= 1")
    rng = random.Random(seed)
    if family == "free":
        cols = list(range(q_cut + 1, depth + 1))
        rows = []
        for q in cols:
            rows.append([Fraction(1, d) if d % q == 0 else Fraction(0)
                         for d in cols])
        basis = rational_nullspace(rows, len(cols))
        candidates = []
        for vec in basis:
            fprime = [Fraction(0)] * depth
            for c, d in enumerate(cols):
                fprime[d - 1] = vec[c]
            if any(vec) and _win_partials_above(fprime, q_cut, depth):
                candidates.append(fprime)
        return TailSearchReport(family, q_cut, depth, 0, len(basis),
                                candidates, [])
    faults = []
    primes = [int(p) for p in kernels.prime_sieve(depth)]
    for _ in range(trials):
        if family == "completely-multiplicative":
            pv = {p: Fraction(rng.randint(-9, 9), rng.randint(1, 8))
                  for p in primes}
            fprime = [Fraction(1)]
            for n in range(2, depth + 1):
                val = Fraction(1)
                m = n
                for p in primes:
                    while m % p == 0:
                        val *= pv[p]
                        m //= p
                    if m == 1:
                        break
                fprime.append(val)
        else:
            fprime = [Fraction(rng.randint(0, 9) if rng.random() < 0.5 else 0,
                               rng.randint(1, 8)) for _ in range(depth)]
        has_tail = any(fprime[d - 1] != 0 for d in range(q_cut + 1, depth + 1))
        win1 = exact_sum(Fraction(v, d) for d, v in enumerate(fprime, start=1))
        if has_tail and win1 != 0 and _win_partials_above(fprime, q_cut, depth):
            faults.append(fprime)
    return TailSearchReport(family, q_cut, depth, trials, None, [], faults)
