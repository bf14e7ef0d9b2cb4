#include "qwg/series.hpp"

#include <algorithm>

#include "qwg/powers2.hpp"

namespace qwg {

WeightTriple abc_weights(u64 p) {
    if (p <= 5 || !is_prime(p)) throw domain_error("abc_weights: p must be a prime > 5");
    WeightTriple w;
    w.p = p;
    w.a_val = a_weight(p);
    w.b_val = b_weight(p);
    mpz_class pm1 = static_cast<long>(p - 1);
    mpz_class pm1_4 = pm1 * pm1 * pm1 * pm1;
    w.c_val = mpq_class(pm1_4 + w.a_val, mpz_class(w.b_val) - w.a_val);
    w.c_val.canonicalize();
    return w;
}

mpq_class c_of_squarefree(const std::vector<u64>& primes) {
    mpq_class c = 1;
    for (u64 p : primes) c *= abc_weights(p).c_val;
    c.canonicalize();
    return c;
}

mpq_class kappa(i64 h) {
    if (h == 0) throw domain_error("kappa: h must be nonzero");
    if (h % 5 == 0) return mpq_class(3, 2);
    mpq_class k(25 + 15 * jacobi(h, 5), 32);
    k.canonicalize();
    return k;
}

mpq_class a_factor_envelope(u64 p) {
    mpz_class pm1 = static_cast<long>(p - 1);
    mpz_class num = 5 * mpz_class(static_cast<long>(p)) * static_cast<long>(p) +
                    10 * mpz_class(static_cast<long>(p)) + 1;
    mpq_class r(num, pm1 * pm1 * pm1 * pm1);
    r.canonicalize();
    return r;
}

namespace {

// |log prod_{p > P}(1 + A)| <= T/(1 - env(P+1)) with
// T = int_{P-1}^inf (5u^2+20u+16)/u^4 du = 5/U + 10/U^2 + 16/(3U^3).
RInterval series_tail_log(u64 pmax) {
    RInterval U = RInterval::from_int(static_cast<i64>(pmax - 1));
    RInterval T = RInterval::from_int(5) / U +
                  RInterval::from_int(10) / pow_int(U, 2) +
                  RInterval::from_int(16) / (RInterval::from_int(3) * pow_int(U, 3));
    RInterval env = rat_interval(a_factor_envelope(pmax + 1));
    return T / (RInterval::point(1.0) - env);
}

// |log prod_{p > P} f_p| <= (C/(P-1)) / (1 - C/(P-1)^2) when |f_p - 1| <= C/(p-1)^2.
RInterval quadratic_tail_log(double c, u64 pmax) {
    RInterval C = RInterval::point(c);
    RInterval Pm1 = RInterval::from_int(static_cast<i64>(pmax - 1));
    RInterval sum = C / Pm1;
    RInterval u0 = C / (Pm1 * Pm1);
    return sum / (RInterval::point(1.0) - u0);
}

RInterval tail_interval(const RInterval& log_bound) {
    RInterval e = exp(log_bound);
    RInterval einv = exp(-log_bound);
    return {std::min(einv.lo, e.lo), std::max(einv.hi, e.hi)};
}

}  // namespace

SeriesValue singular_series(i64 n, u64 pmax) {
    if (n < 2) throw domain_error("singular_series: n must be >= 2");
    if (pmax < 13) throw domain_error("singular_series: pmax must be >= 13");
    SeriesValue sv;
    sv.pmax = pmax;

    RInterval prod = RInterval::point(24.0);
    const auto& ps = primes_up_to(pmax);
    for (u32 p : ps) {
        if (p <= 3 || p > pmax) continue;
        RInterval pm14 = pow_int(RInterval::from_int(static_cast<i64>(p) - 1), 4);
        RInterval factor = (pm14 + RInterval::from_int(b_of_prime_closed(n, p))) / pm14;
        prod *= factor;
    }
    // prime factors of n above pmax get exact factors too
    for (auto [p, e] : factorize(static_cast<u64>(n))) {
        (void)e;
        if (p <= pmax || p <= 3) continue;
        RInterval pm14 = pow_int(RInterval::from_int(static_cast<i64>(p) - 1), 4);
        prod *= (pm14 + RInterval::from_int(b_of_prime_closed(n, p))) / pm14;
        sv.exact_part += " p|n:" + std::to_string(p);
    }
    sv.tail_log_bound = series_tail_log(pmax);
    sv.value = prod * tail_interval(sv.tail_log_bound);
    sv.exact_part = "all p <= " + std::to_string(pmax) + sv.exact_part;
    return sv;
}

SeriesValue sbold(i64 h, u64 pmax) {
    if (h == 0) throw domain_error("sbold: h must be nonzero");
    if (pmax < 13) throw domain_error("sbold: pmax must be >= 13");
    SeriesValue sv;
    sv.pmax = pmax;
    if (h % 3 != 0) {
        // p = 3 factor is 1 + (-16)/16 = 0
        sv.exact_zero = true;
        sv.value = RInterval::point(0.0);
        sv.tail_log_bound = RInterval::point(0.0);
        sv.exact_part = "p=3 factor vanishes";
        return sv;
    }
    RInterval prod = RInterval::point(1.0);
    const auto& ps = primes_up_to(pmax);
    for (u32 p : ps) {
        if (p == 2 || p > pmax) continue;
        RInterval pm14 = pow_int(RInterval::from_int(static_cast<i64>(p) - 1), 4);
        prod *= (pm14 + RInterval::from_int(bbold(p, h).closed_form)) / pm14;
    }
    u64 ha = static_cast<u64>(h < 0 ? -h : h);
    for (auto [p, e] : factorize(ha)) {
        (void)e;
        if (p <= pmax || p == 2) continue;
        RInterval pm14 = pow_int(RInterval::from_int(static_cast<i64>(p) - 1), 4);
        prod *= (pm14 + RInterval::from_int(bbold(p, h).closed_form)) / pm14;
        sv.exact_part += " p|h:" + std::to_string(p);
    }
    sv.tail_log_bound = series_tail_log(pmax);
    sv.value = prod * tail_interval(sv.tail_log_bound);
    sv.exact_part = "all p <= " + std::to_string(pmax) + sv.exact_part;

    // comparison form: 3 c4 kappa~(h) prod over p | h, p > 5 of (1 + 1/c(p))
    mpq_class w = kappa(h);
    for (auto [p, e] : factorize(ha)) {
        (void)e;
        if (p <= 5) continue;
        auto cw = abc_weights(p).c_val;
        w *= (cw + 1) / cw;
    }
    w.canonicalize();
    sv.bound_form = RInterval::from_int(3) * c3_c4(200'000).c4 * rat_interval(w);
    return sv;
}

C3C4 c3_c4(u64 pmax) {
    if (pmax < 100) throw domain_error("c3_c4: pmax too small");
    C3C4 out;
    out.pmax = pmax;
    RInterval p3 = RInterval::point(1.0);
    RInterval p4 = RInterval::point(1.0);
    const auto& ps = primes_up_to(pmax);
    for (u32 p : ps) {
        if (p <= 5 || p > pmax) continue;
        RInterval pi = RInterval::from_int(p);
        RInterval one = RInterval::point(1.0);
        RInterval pm1 = pi - one;
        RInterval pm14 = pow_int(pm1, 4);
        // a, b recomputed in interval arithmetic (b ~ p^3 overflows i64 for
        // p beyond ~2e6)
        RInterval a = (p % 4 == 3) ? -pow_int(pi + one, 2)
                                   : RInterval::from_int(3) * pi * pi - pi - pi - one;
        RInterval b = (p % 4 == 3) ? pm1 * pow_int(pi + one, 2)
                                   : pm1 * (pi * pi + RInterval::from_int(6) * pi + one);
        // c3 factor: ((p-1)^4 + b) / ((p-1)^4 + a) * (p-1)/p
        p3 *= (pm14 + b) / (pm14 + a) * (pm1 / pi);
        p4 *= (pm14 + a) / pm14;
    }
    // |factor - 1| <= 7/(p-1)^2 for c3, <= 5/(p-1)^2 for c4 (p >= 11;
    // machine-checked in the test suite for p <= 10^4)
    out.c3 = p3 * tail_interval(quadratic_tail_log(7.0, pmax));
    out.c4 = p4 * tail_interval(quadratic_tail_log(5.0, pmax));
    return out;
}

SumR7Report sum_r7_weighted(int L, R7Mode mode, const RInterval& c0_reference) {
    if (L < 10 || L > 18) throw domain_error("sum_r7_weighted: L must be in [10, 18]");
    SumR7Report rep;
    rep.L = L;
    rep.mode = mode;

    Histogram hist = r_t_histogram(7, L);
    RInterval c4 = c3_c4(200'000).c4;

    // smallest-prime-factor sieve over the support
    u64 hmax = static_cast<u64>(hist.offset);
    std::vector<u32> spf(hmax + 1, 0);
    for (u64 i = 2; i <= hmax; ++i)
        if (spf[i] == 0)
            for (u64 j = i; j <= hmax; j += i)
                if (spf[j] == 0) spf[j] = static_cast<u32>(i);

    RInterval lhs = RInterval::point(0.0);
    bool symmetric = true;
    for (i64 h = 16; h <= hist.offset; h += 16) {
        u64 r = hist.value(h);
        if (r == 0) continue;
        if (hist.value(-h) != r) symmetric = false;
        if (h % 3 != 0) continue;  // kappa~ = 0 / the 3|h condition
        // factor h, collect primes > 5
        mpq_class prod = kappa(h);
        u64 m = static_cast<u64>(h);
        while (m > 1) {
            u64 p = spf[m];
            while (m % p == 0) m /= p;
            if (p > 5) {
                auto w = abc_weights(p);
                prod *= (w.c_val + 1) / w.c_val;
            }
        }
        prod.canonicalize();
        RInterval weight = rat_interval(prod);
        if (mode == R7Mode::lemma43) weight = weight * RInterval::point(3.0) * c4;
        // r_7 is even in h; count both signs (kappa(-h) = kappa(h) since (-1/5) = 1)
        lhs += RInterval::from_int(static_cast<i64>(r)) * weight * RInterval::point(2.0);
    }
    rep.symmetric = symmetric;
    rep.lhs = lhs;
    RInterval l14 = pow_int(RInterval::from_int(L), 14);
    RInterval box14 = pow_int(RInterval::from_int(L - 3), 14);
    rep.lhs_over_l14 = lhs / l14;
    rep.lhs_over_box14 = lhs / box14;
    rep.rhs_constant = (mode == R7Mode::lemma42) ? c0_reference
                                                 : RInterval::point(3.0) * c0_reference;
    rep.ratio = rep.lhs_over_l14 / rep.rhs_constant;
    return rep;
}

}  // namespace qwg
