"""Shifted convolution sums and their expansions in the shift.

C(N, a) = sum_{n<=N} f(n) g(n+a) is an arithmetic function of the shift a.
Cutting g at N makes the correlation a fair object whose finite expansion in
a obeys an exact split identity: the Q-truncated coefficients against c_q(a)
plus a divisor tail over d | a, d > N.  The Carmichael coefficients of a fair
cut correlation factor exactly through the coefficients of g_N; the gap
between those and the truncated coefficients is the limit L(q), estimated
here on finite grids.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import ArithmeticFunction, divisors, phi
from .finite import TruncatedDivisorSum, tds_to_fre
from .limits import LimitEstimate, build_estimate, check_grid
from .rational import exact_dot, exact_sum
from .ramanujan import csum, csum_period, csum_prefix_sum
from .transforms import eratosthenes
from . import kernels

DEPTH_CAP = 10 ** 6     # transform depth never exceeds this without a flag


class FairnessError(ValueError):
    """Raised when an operation requires the fair flag and it is unset."""


@dataclass
class Correlation:
    """Cached values of C(N, a) with a lazily deepened Moebius transform.

    Fairness is declared, not inferred: functions built from point-independent
    specs (builtin / table / t.d.s.) produce fair correlations; shift-dependent
    families must be flagged unfair by their constructor.
    """
    f: ArithmeticFunction
    g: ArithmeticFunction
    length: int                      # N
    amax: int
    values: object                   # int64 array or list of Fractions, index a-1
    fair: bool = True
    _transform: object = field(default=None, repr=False)

    @property
    def is_integer(self) -> bool:
        return isinstance(self.values, np.ndarray)

    def value(self, a: int):
        if not 1 <= a <= self.amax:
            raise IndexError(f"correlation cached to a={self.amax}, asked for {a}")
        v = self.values[a - 1]
        return int(v) if isinstance(v, np.integer) else v

    def ensure_depth(self, amax: int, cap: int = DEPTH_CAP):
        """Extend the shift cache; refuses past the cap rather than silently
        grinding through arbitrarily deep transforms."""
        if amax <= self.amax:
            return self
        if amax > cap:
            raise ValueError(
                f"requested correlation depth {amax} exceeds cap {cap}")
        deeper = correlate(self.f, self.g, self.length, amax, fair=self.fair)
        self.amax = amax
        self.values = deeper.values
        self._transform = None
        return self

    def transform(self, depth: int):
        """C'(N, d) = sum_{t|d} C(N, t) mu(d/t) for d = 1..depth (1-based
        entry d at index d; index 0 unused)."""
        self.ensure_depth(depth)
        if self._transform is not None and len(self._transform) - 1 >= depth:
            return self._transform
        if self.is_integer:
            c = np.zeros(depth + 1, dtype=np.int64)
            c[1:] = self.values[:depth]
            self._transform = kernels.mobius_transform_int(c)
        else:
            mu_arr = kernels.mobius_sieve(depth)
            out = [Fraction(0)] * (depth + 1)
            for t in range(1, depth + 1):
                ct = Fraction(self.values[t - 1])
                if not ct:
                    continue
                for k in range(1, depth // t + 1):
                    m = int(mu_arr[k])
                    if m:
                        out[t * k] += m * ct
            self._transform = out
        return self._transform


def correlate(f, g, length: int, amax: int, fair=None) -> Correlation:
    """Exact C(N, a) for 1 <= a <= amax; integer kernel when both exact-integer."""
    if length < 1 or amax < 1:
        raise ValueError("N >= 1 and amax >= 1 required")
    if fair is None:
        fair = True   # point-independent specs only; override for shift-dependent families
    if f.is_integer and g.is_integer:
        fv = f.int_range(length)
        gv = g.int_range(length + amax)
        vals = kernels.correlate_int(fv, gv, amax)
        return Correlation(f, g, length, amax, vals, fair)
    fv = [Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v)
          for v in f.eval_range(length)]
    gv = [Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v)
          for v in g.eval_range(length + amax)]
    vals = []
    for a in range(1, amax + 1):
        vals.append(exact_sum(fv[n - 1] * gv[n + a - 1]
                              for n in range(1, length + 1) if fv[n - 1]))
    return Correlation(f, g, length, amax, vals, fair)


@dataclass
class CutCorrelation:
    """Correlation of f against the N-truncated g, plus the exact remainder."""
    base: Correlation                 # C_{f, g_N}
    g_truncated: TruncatedDivisorSum  # g_N
    remainder: list                   # C_{f,g}(N,a) - C_{f,g_N}(N,a), per a
    fair: bool = True
    _ghat: list = field(default=None, repr=False)

    @property
    def length(self) -> int:
        return self.base.length

    def ghat(self) -> list:
        """Finite Ramanujan coefficients of g_N (1-based, length N)."""
        if self._ghat is None:
            self._ghat = tds_to_fre(self.g_truncated).fhat
        return self._ghat


def cut_correlation(f, g, length: int, amax: int, fair=None) -> CutCorrelation:
    """Split C_{f,g} = C_{f,g_N} + remainder by truncating g at N.

    The remainder is returned exactly per shift; no asymptotic bound is
    claimed, only observed magnitudes.
    """
    gprime = eratosthenes(g, length + amax).values
    g_n = TruncatedDivisorSum(length, gprime[:length])
    gn_fun = ArithmeticFunction.from_tds(g_n)
    base = correlate(f, gn_fun, length, amax, fair=fair)
    full = correlate(f, g, length, amax, fair=fair)
    if base.is_integer and full.is_integer:
        remainder = [int(v) for v in (full.values - base.values)]
    else:
        remainder = [Fraction(full.values[i]) - Fraction(base.values[i])
                     for i in range(amax)]
    return CutCorrelation(base, g_n, remainder, fair=base.fair)


@dataclass
class ShiftCoefficients:
    """Q-truncated shift coefficients sum_{d<=Q, q|d} C'(N,d)/d; zero past Q."""
    length: int
    q_cut: int
    entries: list        # 1-based, length q_cut

    def get(self, q: int) -> Fraction:
        if q < 1:
            raise ValueError("q >= 1 required")
        if q > self.q_cut:
            return Fraction(0)
        return self.entries[q - 1]


def _tr_val(tr, d) -> Fraction:
    v = tr[d]
    return Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v)


def qrc(cut: CutCorrelation, q_cut: int) -> ShiftCoefficients:
    """Exact truncated shift coefficients of the cut correlation."""
    tr = cut.base.transform(q_cut)
    entries = []
    for q in range(1, q_cut + 1):
        entries.append(exact_sum(_tr_val(tr, d) / d
                                 for d in range(q, q_cut + 1, q)))
    return ShiftCoefficients(cut.length, q_cut, entries)


def shift_expansion_check(cut: CutCorrelation, a: int):
    """(lhs, rhs, equal): the exact split identity at the shift a.

    lhs = C_{f,g_N}(N,a); rhs = sum_{q<=N} qrc(q) c_q(a) + sum_{d|a, d>N} C'(N,d).
    A finite Moebius-inversion identity: equal must hold for every exact input.
    """
    n = cut.length
    coeffs = qrc(cut, n)
    tr = cut.base.transform(max(a, n))
    lhs = Fraction(cut.base.value(a))
    main = exact_dot((coeffs.get(q) for q in range(1, n + 1)),
                     (csum(q, a) for q in range(1, n + 1)))
    tail = exact_sum(_tr_val(tr, d) for d in divisors(a) if d > n)
    rhs = main + tail
    return lhs, rhs, lhs == rhs


def divisor_tail(cut: CutCorrelation, a: int) -> Fraction:
    """sum_{d|a, d>N} C'(N, d), exact."""
    n = cut.length
    tr = cut.base.transform(max(a, n))
    return exact_sum(_tr_val(tr, d) for d in divisors(a) if d > n)


# ---------------------------------------------------------------------------
# Carmichael coefficients of a fair cut correlation
# ---------------------------------------------------------------------------

def cc_coefficients(cut: CutCorrelation, lmax: int | None = None) -> list:
    """Exact table l -> (ghat_N(l)/phi(l)) sum_{n<=N} f(n) c_l(n), 1-based.

    Vanishes for l > N since ghat_N does.  Requires the fair flag: with shift
    dependence hiding anywhere but in the g argument, the sum exchange behind
    this formula is unsound.
    """
    if not cut.fair:
        raise FairnessError(
            "correlation is not fair: the shift must enter only through the "
            "g argument for the Carmichael computation to factor")
    n = cut.length
    if lmax is None:
        lmax = n
    ghat = cut.ghat()
    f = cut.base.f
    fv = [Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v)
          for v in f.eval_range(n)]
    out = []
    for l in range(1, lmax + 1):
        gl = ghat[l - 1] if l <= n else Fraction(0)
        if gl == 0:
            out.append(Fraction(0))
            continue
        s = exact_dot(fv, (csum(l, m) for m in range(1, n + 1)))
        out.append(gl * s / phi(l))
    return out


def carmichael_vs_cc(cut: CutCorrelation, l: int, xgrid,
                     tol: float = 1e-2) -> LimitEstimate:
    """Numerical Carmichael average over shifts against the exact CC value."""
    xs = check_grid(xgrid)
    target = cc_coefficients(cut, l)[l - 1]
    cut.base.ensure_depth(xs[-1])
    fl = phi(l)
    tab = csum_period(l)
    if cut.base.is_integer:
        ests, exact = [], []
        for x in xs:
            s = kernels.weighted_periodic_int(cut.base.values, tab, x)
            exact.append(Fraction(s, fl * x))
            ests.append(float(exact[-1]))
        return build_estimate(xs, ests, tol, target=float(target), exact=exact)
    ests = []
    for x in xs:
        s = exact_dot((Fraction(v) for v in cut.base.values[:x]),
                      (int(tab[a % l]) for a in range(1, x + 1)))
        ests.append(float(s / (fl * x)))
    return build_estimate(xs, ests, tol, target=float(target))


# ---------------------------------------------------------------------------
# the correction limits L(q)
# ---------------------------------------------------------------------------

def _tail_divisor_array(cut: CutCorrelation, xmax: int, split: int) -> np.ndarray:
    """T(m) = sum_{d|m, d>split} C'(N,d) for m = 1..xmax (integer path)."""
    tr = cut.base.transform(xmax)
    w = np.zeros(xmax + 1, dtype=np.int64)
    w[split + 1:] = tr[split + 1: xmax + 1]
    return kernels.divisor_scatter_int(w)


def l_estimate(cut: CutCorrelation, q: int, xgrid, split: int | None = None,
               tol: float = 1e-2) -> LimitEstimate:
    """Estimate L(q) = (1/phi(q)) lim (1/x) sum_{m<=x} c_q(m) T(m), where
    T(m) collects the transform values past the split (default N) on divisors
    of m.  Exact integer per-x sums; estimates vanish for q > N in the limit.
    """
    xs = check_grid(xgrid)
    n = cut.length
    if split is None:
        split = n
    xmax = xs[-1]
    if not cut.base.is_integer:
        # rational path: direct divisor tail per m (small grids only)
        tr = cut.base.transform(xmax)
        fl = phi(q)
        tab = csum_period(q)
        ests = []
        for x in xs:
            total = Fraction(0)
            for m in range(1, x + 1):
                t = exact_sum(_tr_val(tr, d) for d in divisors(m) if d > split)
                if t:
                    total += int(tab[m % q]) * t
            ests.append(float(total / (fl * x)))
        return build_estimate(xs, ests, tol)
    td = _tail_divisor_array(cut, xmax, split)
    tab = csum_period(q)
    fl = phi(q)
    exact, ests = [], []
    for x in xs:
        s = kernels.weighted_periodic_int(td[1:], tab, x)
        exact.append(Fraction(s, fl * x))
        ests.append(float(exact[-1]))
    return build_estimate(xs, ests, tol, exact=exact)


def is_tail_free(cut: CutCorrelation, depth: int) -> bool:
    """True when C'(N, d) = 0 for N < d <= depth (an at-cut statement)."""
    tr = cut.base.transform(depth)
    n = cut.length
    if cut.base.is_integer:
        return not np.any(tr[n + 1: depth + 1])
    return all(v == 0 for v in tr[n + 1: depth + 1])


# ---------------------------------------------------------------------------
# Reef and Weak Reef
# ---------------------------------------------------------------------------

@dataclass
class WeakReefReport:
    a: int
    lhs: Fraction
    rows: list              # (x, rhs, residual) per L-grid point
    tail: Fraction
    tail_free: bool         # no transform mass past N up to the checked depth
    exact_reef: bool        # residual identically zero with L = 0

    @property
    def residuals(self) -> list:
        return [abs(float(r[2])) for r in self.rows]


def weak_reef_check(cut: CutCorrelation, a: int, lgrid) -> WeakReefReport:
    """Evaluate C = sum_{q<=N} (cc(q) - L_x(q)) c_q(a) + divisor tail.

    L enters as its finite-x estimate, so the residual is a trend that should
    shrink as the grid deepens.  When the transform carries no mass past N the
    L-estimates vanish identically, the tail is computable exactly, and the
    identity degenerates to the exact explicit formula (residual = 0).
    """
    xs = check_grid(lgrid)
    n = cut.length
    cc = cc_coefficients(cut)
    lhs = Fraction(cut.base.value(a))
    tail = divisor_tail(cut, a)
    tail_free = is_tail_free(cut, xs[-1])
    c_row = [csum(q, a) for q in range(1, n + 1)]
    l_ests = {q: l_estimate(cut, q, xs) for q in range(1, n + 1)}
    rows = []
    for i, x in enumerate(xs):
        rhs = tail
        for q in range(1, n + 1):
            lx = l_ests[q].exact[i] if l_ests[q].exact is not None \
                else Fraction(l_ests[q].estimates[i])
            rhs += (cc[q - 1] - lx) * c_row[q - 1]
        rows.append((x, rhs, lhs - rhs))
    exact_reef = tail_free and all(r[2] == 0 for r in rows)
    return WeakReefReport(a, lhs, rows, tail, tail_free, exact_reef)


@dataclass
class ShortAverageReport:
    a_cut: int
    lhs: Fraction
    rhs: Fraction
    residual: Fraction
    rows: list              # (q, cc_q, L_q, sum_{a<=A} c_q(a))


def short_average(cut: CutCorrelation, a_cut: int, lgrid=None) -> ShortAverageReport:
    """sum_{a<=A} C(N,a) against sum_{q<=N} (cc(q) - L(q)) sum_{a<=A} c_q(a).

    Valid for A <= N, where the divisor tail contributes nothing (divisors of
    a <= N cannot exceed N).  Exact agreement whenever the transform is
    tail-free; otherwise the residual reflects the finite-grid L estimates.
    """
    n = cut.length
    if a_cut > n:
        raise ValueError(f"short averages need A <= N, got A={a_cut}, N={n}")
    if lgrid is None:
        lgrid = [10 ** 3, 10 ** 4]
    xs = check_grid(lgrid)
    cc = cc_coefficients(cut)
    lhs = exact_sum(Fraction(cut.base.value(a)) for a in range(1, a_cut + 1))
    rows = []
    rhs = Fraction(0)
    for q in range(1, n + 1):
        est = l_estimate(cut, q, xs)
        lq = est.exact[-1] if est.exact is not None else Fraction(est.estimates[-1])
        w = csum_prefix_sum(q, a_cut)
        rows.append((q, cc[q - 1], lq, w))
        rhs += (cc[q - 1] - lq) * w
    return ShortAverageReport(a_cut, lhs, rhs, lhs - rhs, rows)
