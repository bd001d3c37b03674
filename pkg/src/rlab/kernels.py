"""Hot numeric kernels: numba-jitted inner loops with pure-numpy fallbacks.

The backend is chosen once at import time.  Set RLAB_BACKEND=numpy to force
the fallback path even when numba is installed (RLAB_BACKEND=numba is the
default whenever numba imports).  All integer kernels accumulate in int64 and
are exact at desk scale (x <= 1e7, |values| bounded as documented per call
site); both backends therefore return bit-identical integers.
"""

import os
from functools import lru_cache

import numpy as np

_requested = os.environ.get("RLAB_BACKEND", "").strip().lower()

if _requested in ("", "numba"):
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

if not HAVE_NUMBA:
    def njit(*args, **kwargs):  # no-op decorator, keeps signatures identical
        def wrap(func):
            return func
        if args and callable(args[0]):
            return args[0]
        return wrap

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# sieves (plain numpy: slice arithmetic is already the fast path)
#
# Cached and returned read-only; callers needing a mutable copy must .copy().
# ---------------------------------------------------------------------------

def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=8)
def prime_sieve(n: int) -> np.ndarray:
    """Primes <= n as an int64 array."""
    if n < 2:
        return _frozen(np.empty(0, dtype=np.int64))
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if is_p[p]:
            is_p[p * p:: p] = False
    return _frozen(np.nonzero(is_p)[0].astype(np.int64))


@lru_cache(maxsize=8)
def mobius_sieve(n: int) -> np.ndarray:
    """mu(k) for k = 0..n (index 0 unused, set to 0)."""
    mu = np.ones(n + 1, dtype=np.int64)
    mu[0] = 0
    for p in prime_sieve(n):
        mu[p::p] *= -1
        sq = p * p
        if sq <= n:
            mu[sq::sq] = 0
    return _frozen(mu)


@lru_cache(maxsize=8)
def totient_sieve(n: int) -> np.ndarray:
    """phi(k) for k = 0..n (index 0 unused, set to 0)."""
    phi = np.arange(n + 1, dtype=np.int64)
    for p in prime_sieve(n):
        phi[p::p] -= phi[p::p] // p
    phi[0] = 0
    return _frozen(phi)


@lru_cache(maxsize=8)
def omega_sieve(n: int) -> np.ndarray:
    """Number of distinct prime factors of k, k = 0..n."""
    om = np.zeros(n + 1, dtype=np.int64)
    for p in prime_sieve(n):
        om[p::p] += 1
    return _frozen(om)


@lru_cache(maxsize=8)
def liouville_sieve(n: int) -> np.ndarray:
    """Liouville lambda(k) = (-1)^Omega(k) for k = 0..n (index 0 set to 0)."""
    big_omega = np.zeros(n + 1, dtype=np.int64)
    for p in prime_sieve(n):
        pk = p
        while pk <= n:
            big_omega[pk::pk] += 1
            pk *= p
    lam = np.where(big_omega & 1, -1, 1).astype(np.int64)
    lam[0] = 0
    return _frozen(lam)


# ---------------------------------------------------------------------------
# Ramanujan sum rows and tables (divisor-form sieve)
# ---------------------------------------------------------------------------

def csum_row(n: int, qmax: int, mu: np.ndarray | None = None) -> np.ndarray:
    """c_q(n) for q = 0..qmax (entry 0 unused) via the divisor form.

    c_q(n) = sum over d | gcd(q,n) of d*mu(q/d): for each divisor d of n we
    scatter d*mu(q/d) onto the multiples q of d.  n = 0 means every d <= qmax
    divides n.
    """
    if mu is None:
        mu = mobius_sieve(qmax)
    out = np.zeros(qmax + 1, dtype=np.int64)
    if n == 0:
        divs = range(1, qmax + 1)
    else:
        n = abs(n)
        divs = [d for d in range(1, min(n, qmax) + 1) if n % d == 0]
    for d in divs:
        k = qmax // d
        out[d:: d] += d * mu[1: k + 1]
    return out


def csum_block(qmax: int, nmax: int, mu: np.ndarray | None = None) -> np.ndarray:
    """Dense table t[q, n] = c_q(n) for 1 <= q <= qmax, 0 <= n <= nmax.

    Row 0 is unused.  Built by scattering d*mu(q/d) over q multiples of d and
    n multiples of d; the n = 0 column picks up every d, giving c_q(0) = phi(q).
    """
    if mu is None:
        mu = mobius_sieve(qmax)
    t = np.zeros((qmax + 1, nmax + 1), dtype=np.int64)
    for d in range(1, qmax + 1):
        md = mu[1: qmax // d + 1]
        rows = np.arange(d, qmax + 1, d)
        contrib = d * md
        for i, q in enumerate(rows):
            if contrib[i]:
                t[q, ::d] += contrib[i]
    return t


# ---------------------------------------------------------------------------
# cross-correlation of periodic integer tables (orthogonality oracle)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _cross_sum_nb(cq: np.ndarray, cl: np.ndarray, n: int, x: int) -> int:
    q = cq.shape[0]
    l = cl.shape[0]
    total = np.int64(0)
    for a in range(1, x + 1):
        total += cq[(n + a) % q] * cl[a % l]
    return total


def _cross_sum_np(cq: np.ndarray, cl: np.ndarray, n: int, x: int) -> int:
    q = cq.shape[0]
    l = cl.shape[0]
    total = 0
    step = 1 << 20
    for start in range(1, x + 1, step):
        a = np.arange(start, min(start + step, x + 1), dtype=np.int64)
        total += int(np.dot(cq[(n + a) % q], cl[a % l]))
    return total


def cross_sum_direct(cq: np.ndarray, cl: np.ndarray, n: int, x: int) -> int:
    """sum_{a<=x} c_q(n+a)*c_l(a) given one-period tables indexed by residue."""
    if HAVE_NUMBA:
        return int(_cross_sum_nb(cq, cl, n, x))
    return _cross_sum_np(cq, cl, n, x)


# ---------------------------------------------------------------------------
# weighted periodic sums: sum_{n<=x} w(n) * c_tab[n mod q]
# ---------------------------------------------------------------------------

@njit(cache=True)
def _weighted_periodic_int_nb(w: np.ndarray, tab: np.ndarray, x: int) -> int:
    q = tab.shape[0]
    total = np.int64(0)
    for n in range(1, x + 1):
        total += w[n - 1] * tab[n % q]
    return total


def _weighted_periodic_int_np(w: np.ndarray, tab: np.ndarray, x: int) -> int:
    q = tab.shape[0]
    total = 0
    step = 1 << 20
    for start in range(1, x + 1, step):
        n = np.arange(start, min(start + step, x + 1), dtype=np.int64)
        total += int(np.dot(w[start - 1: start - 1 + n.shape[0]], tab[n % q]))
    return total


def weighted_periodic_int(w: np.ndarray, tab: np.ndarray, x: int) -> int:
    """Exact sum_{n<=x} w[n-1] * tab[n mod len(tab)] over int64 inputs."""
    if HAVE_NUMBA:
        return int(_weighted_periodic_int_nb(w, tab, x))
    return _weighted_periodic_int_np(w, tab, x)


@njit(cache=True)
def _weighted_periodic_float_nb(w: np.ndarray, tab: np.ndarray, x: int) -> float:
    # Kahan-compensated accumulation
    q = tab.shape[0]
    total = 0.0
    c = 0.0
    for n in range(1, x + 1):
        y = w[n - 1] * tab[n % q] - c
        t = total + y
        c = (t - total) - y
        total = t
    return total


def _weighted_periodic_float_np(w: np.ndarray, tab: np.ndarray, x: int) -> float:
    q = tab.shape[0]
    n = np.arange(1, x + 1, dtype=np.int64)
    return float(np.dot(w[:x], tab[n % q].astype(np.float64)))


def weighted_periodic_float(w: np.ndarray, tab: np.ndarray, x: int) -> float:
    if HAVE_NUMBA:
        return float(_weighted_periodic_float_nb(w, tab, x))
    return _weighted_periodic_float_np(w, tab, x)


# ---------------------------------------------------------------------------
# shifted convolution C(N, a) = sum_{n<=N} f(n) g(n+a)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _correlate_int_nb(f: np.ndarray, g: np.ndarray, amax: int) -> np.ndarray:
    n_len = f.shape[0]
    out = np.zeros(amax, dtype=np.int64)
    for a in range(1, amax + 1):
        s = np.int64(0)
        for i in range(n_len):
            s += f[i] * g[i + a]
        out[a - 1] = s
    return out


def _correlate_int_np(f: np.ndarray, g: np.ndarray, amax: int) -> np.ndarray:
    n_len = f.shape[0]
    out = np.zeros(amax, dtype=np.int64)
    # chunk over the shift to bound the strided matrix size
    step = max(1, (1 << 22) // max(n_len, 1))
    for start in range(1, amax + 1, step):
        stop = min(start + step, amax + 1)
        idx = np.arange(start, stop)[:, None] + np.arange(n_len)[None, :]
        out[start - 1: stop - 1] = (g[idx] * f[None, :]).sum(axis=1)
    return out


def correlate_int(f: np.ndarray, g: np.ndarray, amax: int) -> np.ndarray:
    """C(a) = sum_i f[i]*g[i+a] for a = 1..amax; f is g-aligned from index 0."""
    if HAVE_NUMBA:
        return _correlate_int_nb(f, g, amax)
    return _correlate_int_np(f, g, amax)


# ---------------------------------------------------------------------------
# Mobius transform of an integer sequence: C'(d) = sum_{t|d} C(t) mu(d/t)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _mobius_transform_nb(c: np.ndarray, mu: np.ndarray) -> np.ndarray:
    dmax = c.shape[0] - 1
    out = np.zeros(dmax + 1, dtype=np.int64)
    for t in range(1, dmax + 1):
        ct = c[t]
        if ct == 0:
            continue
        k = 1
        while t * k <= dmax:
            m = mu[k]
            if m:
                out[t * k] += ct * m
            k += 1
    return out


def _mobius_transform_np(c: np.ndarray, mu: np.ndarray) -> np.ndarray:
    dmax = c.shape[0] - 1
    out = np.zeros(dmax + 1, dtype=np.int64)
    for t in range(1, dmax + 1):
        ct = int(c[t])
        if ct == 0:
            continue
        k = dmax // t
        out[t:: t] += ct * mu[1: k + 1]
    return out


def mobius_transform_int(c: np.ndarray, mu: np.ndarray | None = None) -> np.ndarray:
    """Eratosthenes transform of an int64 sequence indexed 1..dmax (slot 0 unused)."""
    if mu is None:
        mu = mobius_sieve(c.shape[0] - 1)
    if HAVE_NUMBA:
        return _mobius_transform_nb(c, mu)
    return _mobius_transform_np(c, mu)


# ---------------------------------------------------------------------------
# divisor-sum scatter: out[m] += w[d] for every multiple m of d
# ---------------------------------------------------------------------------

@njit(cache=True)
def _divisor_scatter_nb(w: np.ndarray) -> np.ndarray:
    nmax = w.shape[0] - 1
    out = np.zeros(nmax + 1, dtype=np.int64)
    for d in range(1, nmax + 1):
        wd = w[d]
        if wd == 0:
            continue
        m = d
        while m <= nmax:
            out[m] += wd
            m += d
    return out


def _divisor_scatter_np(w: np.ndarray) -> np.ndarray:
    nmax = w.shape[0] - 1
    out = np.zeros(nmax + 1, dtype=np.int64)
    for d in range(1, nmax + 1):
        wd = int(w[d])
        if wd:
            out[d:: d] += wd
    return out


def divisor_scatter_int(w: np.ndarray) -> np.ndarray:
    """out[m] = sum_{d|m} w[d] for m = 1..len(w)-1 (inverse of mobius_transform_int)."""
    if HAVE_NUMBA:
        return _divisor_scatter_nb(w)
    return _divisor_scatter_np(w)
