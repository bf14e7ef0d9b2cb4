"""Smoke tests for the python bindings: a thin pass over the main operations
with frozen exact values."""

from fractions import Fraction

import qwg


def test_order_and_primes():
    assert qwg.mult_order2(15015) == 60
    assert qwg.mult_order2(7) == 3
    assert qwg.nth_prime(5000) == 48611
    assert qwg.primes_up_to(10) == [2, 3, 5, 7]


def test_jacobi_ramanujan():
    assert qwg.jacobi(2, 5) == -1
    assert qwg.ramanujan(5, 10) == 4
    assert qwg.ramanujan(6, 3) == -2


def test_local_sums():
    assert qwg.b_of(1, 5) == -176
    assert qwg.a_of(4, 3) == Fraction(2)
    assert qwg.a_of(1, 5) == Fraction(-11, 16)
    exact, closed = qwg.bbold(5, 5)
    assert exact == closed == 224
    assert qwg.dyadic_factor(40) == Fraction(4)
    omega, degenerate = qwg.omega_local(3, 6)
    assert omega == 0 and not degenerate


def test_series_and_weights():
    assert qwg.kappa(15) == Fraction(3, 2)
    assert qwg.kappa(3) == Fraction(5, 16)
    a, b, c = qwg.abc_weights(7)
    assert (a, b, c) == (-64, 384, Fraction(11, 4))
    lo, hi = qwg.singular_series(28, 2000)
    assert 0 < lo <= hi
    assert qwg.sbold(1, 1000) == (0.0, 0.0)


def test_powers2():
    hist = qwg.r_t_histogram(1, 10)
    assert hist[0] == 7 and hist[16] == 1
    rho, n = qwg.power_congruence_count(3, 7)
    assert (rho, n) == (2, 5462)
    assert qwg.beta(1) == Fraction(16384, 5462)
    assert qwg.m_ratio_check(40)


def test_lemma51():
    rho, (lo, hi), j = qwg.maxexp(15015)
    assert rho == 60 and 34.5 < lo <= hi < 34.6
    head, tail, c1 = qwg.prime_product_51()
    assert head[0] >= 0.904923 and c1[0] >= 0.904811
    assert qwg.sum_A_identity(97)
    m44, m43, kmin = qwg.final_margin(0.887167, 0.69)
    assert kmin == 44 and m44[0] > 0 > m43[1]


def test_statistical_surface():
    ratio, kept, total = qwg.avg_singular_series(1000004, 2, 2000)
    assert 0 < kept < total and ratio[0] > 0.5
    tot, diag, _ = qwg.rieger_sum(1000000, Fraction(1, 20))
    assert tot >= diag > 0


def test_analysis():
    lo, hi = qwg.singular_integral("I", 1, Fraction(1, 100), 400)
    oracle = (2 / 3) * 0.02**3
    assert 0.95 * oracle < lo <= hi < 1.05 * oracle
    count, _ = qwg.count4_full_range(36)
    assert count == 1
    j, jd, jo = qwg.lemma_j(2)
    assert (j, jd, jo) == (33, 25, 8)
