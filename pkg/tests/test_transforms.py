"""Transform and coefficient machinery against direct-summation oracles."""

from fractions import Fraction

import numpy as np
import pytest

from rlab.arith import ArithmeticFunction, divisors, phi
from rlab.finite import TruncatedDivisorSum
from rlab.ramanujan import csum
from rlab.transforms import (CoefficientSeq, carmichael_estimate,
                             condition_check, cw_formula_check, eratosthenes,
                             is_completely_multiplicative,
                             nonneg_carmichael_bound, rational_nullspace,
                             vanishing_tail_search, wintner_cm_shortcut,
                             wintner_coefficient, wintner_table)
from conftest import rand_table


def test_eratosthenes_examples():
    one = ArithmeticFunction.builtin("one")
    assert eratosthenes(one, 50).values == [1] + [0] * 49
    tr = eratosthenes(ArithmeticFunction.builtin("id"), 100)
    assert tr.values == [phi(d) for d in range(1, 101)]
    tr2 = eratosthenes(ArithmeticFunction.builtin("d_2"), 100)
    assert tr2.values == [1] * 100


def test_eratosthenes_roundtrip(rng):
    n = 500
    f = ArithmeticFunction.table(rand_table(rng, n))
    tr = eratosthenes(f, n)
    for m in range(1, n + 1):
        assert sum(tr.values[d - 1] for d in divisors(m)) == f(m)


def test_eratosthenes_domain_error():
    f = ArithmeticFunction.table([1, 2, 3], after="error")
    with pytest.raises(IndexError):
        eratosthenes(f, 10)


def test_wintner_delta():
    fp = [1] + [0] * 99
    for q in (1, 2, 7):
        partial, tail = wintner_coefficient(fp, q, 100)
        assert partial == (1 if q == 1 else 0)
        assert tail is None


def test_wintner_inverse_square_reference():
    cut = 10 ** 4
    fp = [Fraction(1, d * d) for d in range(1, cut + 1)]
    partial, tail = wintner_coefficient(fp, 2, cut, decay_hint=(1.0, 2.0))
    # high-cut direct summation oracle for 2^-3 * zeta(3)
    m = np.arange(1, 10 ** 7 + 1, dtype=np.float64)
    reference = float(((2 * m) ** -3.0).sum())
    assert abs(float(partial) - reference) < 1e-8
    assert tail is not None and tail > 0
    # the tail bound must dominate the actual remainder
    actual_tail = reference - float(partial)
    assert actual_tail <= tail


def test_wintner_table_matches_single():
    fp = [Fraction(1, d) for d in range(1, 201)]
    tab = wintner_table(fp, 200)
    for q in (1, 2, 3, 50, 199):
        partial, _ = wintner_coefficient(fp, q, 200)
        assert tab[q - 1] == partial


def test_cm_check():
    assert is_completely_multiplicative([1, 2, 3, 4, 6, 6, 7, 8][:4], 4)
    lam = list(ArithmeticFunction.builtin("lambda").int_range(200))
    assert is_completely_multiplicative(lam, 200)
    d2 = list(ArithmeticFunction.builtin("d_2").int_range(50))
    assert not is_completely_multiplicative(d2, 50)   # d_2(4) = 3 != d_2(2)^2


def test_cm_shortcut_exact_on_inverse():
    cut = 200
    fp = [Fraction(1, d) for d in range(1, cut + 1)]
    got = wintner_cm_shortcut(fp, 3, cut)
    want = Fraction(1, 9) * sum(Fraction(1, m * m) for m in range(1, cut + 1))
    assert got == want


def test_cm_shortcut_vs_deep_partial():
    # for completely multiplicative fprime the q-partial at cut q*D equals
    # (fprime(q)/q) times the 1-partial at cut D, exactly
    d = 60
    q = 4
    lam = [int(v) for v in ArithmeticFunction.builtin("lambda").int_range(q * d)]
    shortcut = wintner_cm_shortcut(lam[:d], q, d)
    # oracle: direct summation on both sides
    direct = sum(Fraction(lam[q * m - 1], q * m) for m in range(1, d + 1))
    assert shortcut == Fraction(lam[q - 1], q) * \
        sum(Fraction(lam[m - 1], m) for m in range(1, d + 1))
    partial, _ = wintner_coefficient(lam, q, q * d)
    assert partial == direct
    assert shortcut == partial


def test_cm_shortcut_rejects_non_cm():
    with pytest.raises(ValueError):
        wintner_cm_shortcut([1, 1, 1, 3], 2, 4)


def test_carmichael_constant_function():
    one = ArithmeticFunction.builtin("one")
    est = carmichael_estimate(one, 1, [100, 1000, 10000])
    assert est.exact == [Fraction(1), Fraction(1), Fraction(1)]
    for q in range(2, 11):
        est = carmichael_estimate(one, q, [1000, 10000, 100000])
        assert abs(est.final) < 0.01


def test_carmichael_square_indicator():
    f = ArithmeticFunction.builtin("indicator-squares")
    est = carmichael_estimate(f, 1, [10 ** 4, 10 ** 5, 10 ** 6])
    assert est.final == pytest.approx(10 ** -3, rel=0.1)
    assert est.final < 0.01


def test_carmichael_picks_out_own_modulus():
    # the un-normalized average of c_3^2 tends to c_3(0) = phi(3) = 2; the
    # coefficient carries the extra 1/phi(q), so the estimate tends to 1
    x = 10 ** 5
    vals = [csum(3, n) for n in range(1, x + 1)]
    f = ArithmeticFunction.table(vals)
    est = carmichael_estimate(f, 3, [x // 4, x // 2, x])
    assert abs(est.final * phi(3) - phi(3)) < 0.01
    assert abs(est.final - 1) < 0.01


def test_carmichael_exact_tds_path_matches_int_path():
    # same function represented as t.d.s. and as integer table: identical sums
    t = TruncatedDivisorSum(6, [2, 0, 1, 0, 0, 3])
    f_tds = ArithmeticFunction.from_tds(t)
    f_tab = ArithmeticFunction.table([t.eval(n) for n in range(1, 2001)])
    for q in (1, 2, 5):
        a = carmichael_estimate(f_tds, q, [500, 2000])
        b = carmichael_estimate(f_tab, q, [500, 2000])
        assert a.exact == b.exact


def test_carmichael_grid_validation():
    one = ArithmeticFunction.builtin("one")
    with pytest.raises(ValueError):
        carmichael_estimate(one, 1, [])
    with pytest.raises(ValueError):
        carmichael_estimate(one, 1, [100, 100])


def test_condition_verdicts():
    fp_sq = [Fraction(1, d * d) for d in range(1, 10 ** 4 + 1)]
    assert condition_check("DH", fp_sq, 10 ** 4).verdict == "satisfied-at-cut"
    fp_log = [1.0 / np.log(d + 1.0) for d in range(1, 10 ** 5 + 1)]
    assert condition_check("SD", fp_log, 10 ** 5).verdict == "satisfied-at-cut"
    assert condition_check("WA", fp_log, 10 ** 5).verdict == "violated-at-cut"
    assert condition_check("SD", [1] * 10 ** 4, 10 ** 4).verdict == "violated-at-cut"
    with pytest.raises(ValueError):
        condition_check("XX", fp_sq, 100)


def test_condition_partials_monotone():
    fp = [Fraction(1, d) for d in range(1, 5001)]
    for kind in ("WA", "DH"):
        rep = condition_check(kind, fp, 5000)
        vals = [v for _, v in rep.trend]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
    seq = CoefficientSeq.from_list([Fraction(1, q * q) for q in range(1, 2001)])
    rep = condition_check("DD7", seq, 2000)
    vals = [v for _, v in rep.trend]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_cw_formula_one():
    one = ArithmeticFunction.builtin("one")
    rep = cw_formula_check(one, 1, [100, 1000, 10000])
    assert rep.max_ratio == 0.0          # exact identity at q = 1
    rep2 = cw_formula_check(one, 3, [100, 1000, 10000])
    assert rep2.max_ratio <= 3.0


def test_cw_formula_d2_bounded():
    rep = cw_formula_check(ArithmeticFunction.builtin("d_2"), 2,
                           [10 ** 3, 10 ** 4, 10 ** 5])
    assert all(r.ratio is not None for r in rep.rows)
    assert rep.max_ratio <= 50


def test_cw_formula_squares():
    rep = cw_formula_check(ArithmeticFunction.builtin("indicator-squares"), 1,
                           [10 ** 3, 10 ** 4])
    assert all(r.ratio is not None and np.isfinite(r.ratio) for r in rep.rows)


def test_nonneg_bound_squares_and_zero():
    f = ArithmeticFunction.builtin("indicator-squares")
    rep = nonneg_carmichael_bound(f, [10 ** 3, 10 ** 4], qmax=8)
    assert rep.ok
    z = ArithmeticFunction.table([0] * 100)
    rep0 = nonneg_carmichael_bound(z, [50, 100], qmax=4)
    assert rep0.ok and all(r[2] == 0 and r[3] == 0 for r in rep0.rows)
    # constant function: |avg . c_q| / phi(q) <= avg reads as |S_q| <= phi(q) x
    one = ArithmeticFunction.builtin("one")
    rep1 = nonneg_carmichael_bound(one, [100, 1000], qmax=6)
    assert rep1.ok
    for q, x, lhs, rhs in rep1.rows:
        assert lhs <= phi(q) * x


def test_nonneg_bound_rejects_negative():
    f = ArithmeticFunction.table([1, -2, 3])
    with pytest.raises(ValueError, match="F\\(2\\)"):
        nonneg_carmichael_bound(f, [3])


def test_nullspace_hand_cases():
    # x + y = 0 over two unknowns: one-dimensional nullspace
    basis = rational_nullspace([[Fraction(1), Fraction(1)]], 2)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and any(v)
    # full-rank 2x2: trivial nullspace
    basis2 = rational_nullspace([[Fraction(1, 3), Fraction(0)],
                                 [Fraction(0), Fraction(1, 4)]], 2)
    assert basis2 == []


def test_free_family_search_trivial():
    # unknowns fprime(3), fprime(4); equations fprime(3)/3 = fprime(4)/4 = 0
    rep = vanishing_tail_search("free", 2, 4)
    assert rep.nullspace_dim == 0
    assert rep.candidates == [] and rep.verdict == "no-counterexample"
    for q_cut in range(2, 9):
        rep = vanishing_tail_search("free", q_cut, 32)
        assert rep.nullspace_dim == 0


def test_constrained_family_searches():
    for family in ("completely-multiplicative", "nonnegative"):
        rep = vanishing_tail_search(family, 3, 24, trials=20, seed=5)
        assert rep.faults == [] and rep.verdict == "no-counterexample"
    with pytest.raises(ValueError):
        vanishing_tail_search("weird", 2, 4)
    with pytest.raises(ValueError):
        vanishing_tail_search("free", 4, 4)
