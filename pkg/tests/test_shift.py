"""Shifted convolution sums, the exact split identity, and the Reef machinery."""

from fractions import Fraction

import pytest

from rlab.arith import ArithmeticFunction, divisors, mu, phi
from rlab.finite import TruncatedDivisorSum, truncate
from rlab.ramanujan import csum
from rlab.shift import (FairnessError, cc_coefficients, carmichael_vs_cc,
                        correlate, cut_correlation, divisor_tail, is_tail_free,
                        l_estimate, qrc, shift_expansion_check, short_average,
                        weak_reef_check)
from conftest import rand_table


def even_indicator():
    return ArithmeticFunction.from_tds(TruncatedDivisorSum(2, [0, 1]))


def brute_correlation(f, g, n_len, a):
    return sum(Fraction(f(n)) * Fraction(g(n + a)) for n in range(1, n_len + 1))


def test_constant_correlation():
    one = ArithmeticFunction.builtin("one")
    c = correlate(one, one, 25, 40)
    assert all(c.value(a) == 25 for a in range(1, 41))


def test_even_indicator_correlation():
    f = even_indicator()
    c = correlate(f, f, 20, 30)
    for a in range(1, 31):
        want = sum(1 for n in range(1, 21) if n % 2 == 0 and (n + a) % 2 == 0)
        assert c.value(a) == want == (10 if a % 2 == 0 else 0)


def test_mobius_against_one():
    f = ArithmeticFunction.table([mu(n) for n in range(1, 12)])
    one = ArithmeticFunction.builtin("one")
    c = correlate(f, one, 10, 5)
    assert c.value(1) == sum(mu(n) for n in range(1, 11)) == -1


def test_cache_matches_recomputation(rng):
    q = rng.randint(1, 8)
    f = ArithmeticFunction.from_tds(TruncatedDivisorSum(q, rand_table(rng, q)))
    g = ArithmeticFunction.from_tds(TruncatedDivisorSum(q, rand_table(rng, q)))
    c = correlate(f, g, 15, 20)
    for a in (1, 7, 20):
        assert Fraction(c.value(a)) == brute_correlation(f, g, 15, a)


def test_truncation_is_invisible(rng):
    # replacing f by its N-truncation and g by its (N+a)-truncation changes
    # nothing: divisors of n <= N (resp. n+a) never exceed those bounds
    f = ArithmeticFunction.builtin("d_2")
    g = ArithmeticFunction.builtin("phi")
    n_len = 12
    for a in (1, 5, 9):
        full = brute_correlation(f, g, n_len, a)
        ft = ArithmeticFunction.from_tds(truncate(f, n_len))
        gt = ArithmeticFunction.from_tds(truncate(g, n_len + a))
        assert brute_correlation(ft, gt, n_len, a) == full


def test_cut_correlation_remainder_zero_for_short_tds():
    g = even_indicator()   # range 2 <= N
    one = ArithmeticFunction.builtin("one")
    cut = cut_correlation(one, g, 10, 12)
    assert all(r == 0 for r in cut.remainder)


def test_cut_correlation_remainder_oracle():
    one = ArithmeticFunction.builtin("one")
    d2 = ArithmeticFunction.builtin("d_2")
    n_len = 20
    cut = cut_correlation(one, d2, n_len, 8)
    # direct double-sum oracle: divisors of n+a beyond the cut
    for a in range(1, 9):
        want = sum(1 for n in range(1, n_len + 1)
                   for q in divisors(n + a) if q > n_len)
        assert cut.remainder[a - 1] == want


def test_qrc_constant():
    one = ArithmeticFunction.builtin("one")
    cut = cut_correlation(one, one, 9, 16)
    coeffs = qrc(cut, 9)
    assert coeffs.get(1) == 9
    assert all(coeffs.get(q) == 0 for q in range(2, 10))
    assert coeffs.get(15) == 0    # support law past the cut


def test_qrc_even_indicator():
    f = even_indicator()
    n_len = 10
    cut = cut_correlation(f, f, n_len, 8)
    coeffs = qrc(cut, 4)
    assert coeffs.get(1) == Fraction(5, 2)
    assert coeffs.get(2) == Fraction(5, 2)
    assert coeffs.get(3) == 0 and coeffs.get(4) == 0


def test_split_identity_trivial():
    one = ArithmeticFunction.builtin("one")
    cut = cut_correlation(one, one, 8, 40)
    for a in (1, 8, 16, 33):
        lhs, rhs, equal = shift_expansion_check(cut, a)
        assert equal and lhs == 8


def test_split_identity_randomized(rng):
    for _ in range(8):
        n_len = rng.randint(8, 64)
        qf, qg = rng.randint(1, 16), rng.randint(1, 16)
        f = ArithmeticFunction.from_tds(TruncatedDivisorSum(qf, rand_table(rng, qf)))
        g = ArithmeticFunction.from_tds(TruncatedDivisorSum(qg, rand_table(rng, qg)))
        cut = cut_correlation(f, g, n_len, 256)
        for a in {rng.randint(1, 256) for _ in range(4)} | {2 * n_len}:
            lhs, rhs, equal = shift_expansion_check(cut, a)
            assert equal, (n_len, a)


def test_cc_even_indicator_hand_value():
    f = even_indicator()
    cut = cut_correlation(f, f, 10, 10)
    table = cc_coefficients(cut, 4)
    # ghat(2) = 1/2, phi(2) = 1, sum over even n <= 10 of c_2(n) = 5
    assert table[1] == Fraction(5, 2)
    assert table[2] == 0 and table[3] == 0


def test_cc_requires_fair_flag():
    f = even_indicator()
    cut = cut_correlation(f, f, 10, 10, fair=False)
    with pytest.raises(FairnessError):
        cc_coefficients(cut, 2)


def test_cc_vanishes_past_length():
    one = ArithmeticFunction.builtin("one")
    cut = cut_correlation(one, one, 6, 6)
    table = cc_coefficients(cut, 10)
    assert all(v == 0 for v in table[6:])


def test_carmichael_vs_cc_constant():
    one = ArithmeticFunction.builtin("one")
    n_len = 7
    cut = cut_correlation(one, one, n_len, n_len)
    est = carmichael_vs_cc(cut, 1, [100, 1000])
    assert est.exact == [Fraction(7), Fraction(7)]


def test_carmichael_vs_cc_even_indicator():
    f = even_indicator()
    n_len = 10
    cut = cut_correlation(f, f, n_len, n_len)
    x = 10 ** 4
    est = carmichael_vs_cc(cut, 2, [x // 4, x // 2, x])
    assert est.target == 2.5
    assert abs(est.final - est.target) < 1e-2 * n_len
    est_big = carmichael_vs_cc(cut, 12, [x // 4, x // 2, x])
    assert abs(est_big.final) < 1e-2 * n_len


def test_l_estimate_zero_for_tail_free():
    f = even_indicator()
    cut = cut_correlation(f, f, 10, 10)
    assert is_tail_free(cut, 5000)
    for q in (1, 2, 3):
        est = l_estimate(cut, q, [1000, 5000])
        assert est.exact == [Fraction(0), Fraction(0)]


def _tail_instance():
    # C(4, a) = 1_{a = 1 mod 3}: transform carries mass past N = 4
    f = ArithmeticFunction.table([0, 1], after="zero")
    g = ArithmeticFunction.from_tds(TruncatedDivisorSum(3, [0, 0, 1]))
    return cut_correlation(f, g, 4, 64)


def test_tail_instance_shape():
    cut = _tail_instance()
    for a in range(1, 20):
        assert cut.base.value(a) == (1 if a % 3 == 1 else 0)
    assert not is_tail_free(cut, 64)
    assert divisor_tail(cut, 5) == -1


def test_l_estimate_direct_oracle():
    cut = _tail_instance()
    x = 2000
    for q in (1, 2, 3, 5):
        est = l_estimate(cut, q, [x // 2, x])
        tr = cut.base.transform(x)
        brute = sum(csum(q, m) * sum(int(tr[d]) for d in divisors(m) if d > 4)
                    for m in range(1, x + 1))
        assert est.exact[-1] == Fraction(brute, phi(q) * x)


def test_l_estimate_limits():
    # exact limits by inclusion-exclusion: L(1) = -1/12, L(2) = 1/4,
    # L(3) = 1/6, L(4) = -1/4 for the periodic tail instance
    cut = _tail_instance()
    want = {1: Fraction(-1, 12), 2: Fraction(1, 4),
            3: Fraction(1, 6), 4: Fraction(-1, 4)}
    for q, target in want.items():
        est = l_estimate(cut, q, [10 ** 4, 10 ** 5])
        assert abs(est.final - float(target)) < 5e-3
    est5 = l_estimate(cut, 5, [10 ** 4, 10 ** 5])
    assert abs(est5.final) < 5e-3      # vanishes past N


def test_weak_reef_tail_free_is_exact():
    f = even_indicator()
    cut = cut_correlation(f, f, 10, 12)
    rep = weak_reef_check(cut, 6, [100, 1000])
    assert rep.tail_free and rep.exact_reef
    assert all(r[2] == 0 for r in rep.rows)


def test_weak_reef_residual_shrinks():
    cut = _tail_instance()
    rep = weak_reef_check(cut, 7, [10 ** 3, 10 ** 4, 10 ** 5])
    res = rep.residuals
    assert res[-1] < res[0]


def test_reef_deviation_equals_tail():
    cut = _tail_instance()
    n_len = cut.length
    coeffs = qrc(cut, n_len)
    for a in (5, 7, 10, 25):
        lhs = Fraction(cut.base.value(a))
        main = sum(coeffs.get(q) * csum(q, a) for q in range(1, n_len + 1))
        assert lhs - main == divisor_tail(cut, a)


def test_short_average_tail_free_exact():
    f = even_indicator()
    cut = cut_correlation(f, f, 10, 10)
    rep = short_average(cut, 10, [100, 1000])
    assert rep.residual == 0
    assert rep.lhs == 5 * 5   # C(10, a) = 5 for even a <= 10


def test_short_average_trivial():
    one = ArithmeticFunction.builtin("one")
    n_len = 9
    cut = cut_correlation(one, one, n_len, n_len)
    rep = short_average(cut, n_len, [100, 1000])
    assert rep.lhs == rep.rhs == n_len * n_len


def test_short_average_depth_guard():
    one = ArithmeticFunction.builtin("one")
    cut = cut_correlation(one, one, 5, 5)
    with pytest.raises(ValueError):
        short_average(cut, 6)


def test_short_average_matches_pointwise_residuals():
    cut = _tail_instance()
    grid = [500, 1500]
    rep = short_average(cut, 4, grid)
    summed = sum(weak_reef_check(cut, a, grid).rows[-1][2] for a in range(1, 5))
    assert rep.residual == summed


def test_depth_cap():
    one = ArithmeticFunction.builtin("one")
    cut = cut_correlation(one, one, 4, 4)
    with pytest.raises(ValueError):
        cut.base.ensure_depth(10 ** 7)
