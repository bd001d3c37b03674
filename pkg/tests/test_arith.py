"""Integer primitives against brute-force oracles."""

import math
from fractions import Fraction

import pytest

from rlab.arith import (ArithmeticFunction, d_k, dirichlet_convolve, divisors,
                        factor, function_from_spec, function_to_spec, mu,
                        omega, phi)
from conftest import rand_table


def trial_division(n):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime_brute(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def test_factor_examples():
    assert factor(1).factors == ()
    assert factor(12).factors == ((2, 2), (3, 1))
    assert factor(97).factors == ((97, 1),)


def test_factor_rejects_nonpositive():
    with pytest.raises(ValueError):
        factor(0)
    with pytest.raises(ValueError):
        factor(-5)


def test_factor_matches_trial_division_grid():
    for n in range(1, 10001):
        fs = factor(n)
        assert list(fs.factors) == trial_division(n)
        prod = 1
        for p, e in fs:
            assert is_prime_brute(p)
            assert e >= 1
            prod *= p ** e
        assert prod == n


def test_factor_large_semiprime():
    n = 999983 * 999979          # both prime, just below the sieve bound
    assert factor(n).factors == ((999979, 1), (999983, 1))


def test_mu_phi_omega_conventions():
    assert (mu(1), phi(1), omega(1)) == (1, 1, 0)
    assert (mu(6), phi(6), omega(6)) == (1, 2, 2)
    assert mu(12) == 0


def test_phi_against_gcd_count():
    for n in range(1, 300):
        assert phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_mu_against_definition():
    for n in range(1, 500):
        fs = trial_division(n)
        want = 0 if any(e > 1 for _, e in fs) else (-1) ** len(fs)
        assert mu(n) == want


def test_squarefree_divisor_count():
    for n in range(1, 200):
        squarefree = sum(1 for d in divisors(n)
                         if all(e == 1 for _, e in trial_division(d)) or d == 1)
        assert 2 ** omega(n) == squarefree


def test_multiplicativity_spot(rng):
    for _ in range(200):
        a = rng.randint(1, 500)
        b = rng.randint(1, 500)
        if math.gcd(a, b) != 1:
            continue
        assert phi(a * b) == phi(a) * phi(b)
        assert mu(a * b) == mu(a) * mu(b)
        k = rng.randint(1, 5)
        assert d_k(a * b, k) == d_k(a, k) * d_k(b, k)


def test_dk_examples():
    for n in (1, 7, 12, 60):
        assert d_k(n, 1) == 1
    assert d_k(12, 2) == len(divisors(12)) == 6
    # ordered triples with product 4
    count = sum(1 for a in range(1, 5) for b in range(1, 5) for c in range(1, 5)
                if a * b * c == 4)
    assert d_k(4, 3) == count == 6


def test_divisors_sorted():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    assert divisors(97) == [1, 97]


def test_exact_rational_arithmetic(rng):
    for _ in range(200):
        a = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        b = Fraction(rng.randint(-999, 999), rng.randint(1, 999))
        assert (a + b) - b == a
        if b:
            assert (a / b) * b == a


def test_dirichlet_mobius_inversion():
    one = ArithmeticFunction.builtin("one")
    conv = dirichlet_convolve(ArithmeticFunction.builtin("mu"), one, 100)
    for n in range(1, 101):
        assert conv(n) == (1 if n == 1 else 0)


def test_dirichlet_phi_identity():
    one = ArithmeticFunction.builtin("one")
    conv = dirichlet_convolve(ArithmeticFunction.builtin("phi"), one, 100)
    for n in range(1, 101):
        assert conv(n) == sum(phi(d) for d in divisors(n)) == n


def test_dirichlet_one_one_is_divisor_count():
    one = ArithmeticFunction.builtin("one")
    conv = dirichlet_convolve(one, one, 100)
    for n in range(1, 101):
        assert conv(n) == len(divisors(n)) == d_k(n, 2)


def test_dirichlet_assoc_comm(rng):
    n = 200
    f = ArithmeticFunction.table(rand_table(rng, n))
    g = ArithmeticFunction.table(rand_table(rng, n))
    h = ArithmeticFunction.table(rand_table(rng, n))
    fg = dirichlet_convolve(f, g, n)
    gf = dirichlet_convolve(g, f, n)
    assert [fg(k) for k in range(1, n + 1)] == [gf(k) for k in range(1, n + 1)]
    left = dirichlet_convolve(fg, h, n)
    right = dirichlet_convolve(f, dirichlet_convolve(g, h, n), n)
    assert [left(k) for k in range(1, n + 1)] == [right(k) for k in range(1, n + 1)]


def test_table_after_policies():
    t = ArithmeticFunction.table([1, 2, 3], after="zero")
    assert t(5) == 0
    t_err = ArithmeticFunction.table([1, 2, 3], after="error")
    with pytest.raises(IndexError):
        t_err(4)
    with pytest.raises(ValueError):
        t_err(0)


def test_von_mangoldt_is_float_only():
    vm = ArithmeticFunction.builtin("vonMangoldt")
    assert not vm.is_exact
    assert vm(8) == pytest.approx(math.log(2))
    assert vm(6) == 0.0


def test_closed_registry():
    with pytest.raises(ValueError):
        ArithmeticFunction.builtin("sigma")


def test_registry_roundtrip(rng):
    specs = [
        {"kind": "builtin", "name": "mu"},
        {"kind": "table", "values": ["3/2", 1, "-2/7"], "after": "zero"},
        {"kind": "tds", "range": 4,
         "fprime": {"kind": "table", "values": [1, 0, "1/3", 2], "after": "zero"}},
    ]
    for spec in specs:
        f = function_from_spec(spec)
        again = function_from_spec(function_to_spec(f))
        for n in range(1, 20):
            assert f(n) == again(n)


def test_builtin_eval_range_matches_pointwise():
    for name in ("one", "id", "mu", "phi", "lambda", "indicator-squares", "d_3"):
        f = ArithmeticFunction.builtin(name)
        arr = f.eval_range(200)
        for n in range(1, 201):
            assert int(arr[n - 1]) == f(n), (name, n)
