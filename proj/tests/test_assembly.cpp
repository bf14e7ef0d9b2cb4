#include <doctest.h>

#include <cmath>

#include "qwg/assembly.hpp"
#include "qwg/localsums.hpp"

using namespace qwg;

TEST_CASE("prime_product_51: bounds, width, reversal, tail discrepancy") {
    auto pp = prime_product_51();
    CHECK(pp.head.lo >= 0.904923);
    CHECK(pp.c1.lo >= 0.904811);
    CHECK(pp.head.width() < 1e-6);
    CHECK(pp.c1.width() < 1e-6);
    // computed tail is (48609/48610)^6 = 0.99987657..., not the printed value
    CHECK(std::abs(pp.tail.mid() - std::pow(48609.0 / 48610.0, 6)) < 1e-12);
    CHECK_FALSE(pp.tail_matches_print);

    // deterministic: identical runs are bit-identical; the reversed-order
    // product is a different rounding path but must enclose the same value
    auto again = prime_product_51();
    CHECK(again.head.lo == pp.head.lo);
    CHECK(again.head.hi == pp.head.hi);
    auto rev = prime_product_51(true);
    CHECK(rev.head.intersects(pp.head));
    CHECK(rev.head.width() < 1e-6);
}

TEST_CASE("maxexp: hand values") {
    auto m5 = maxexp(5, {});
    CHECK(m5.rho == 4);
    CHECK(m5.max_abs.contains(1.0));  // full-period sum is c_5(j) = -1
    CHECK(m5.max_abs.width() < 1e-9);

    auto m9 = maxexp(9, {});
    CHECK(m9.rho == 6);
    CHECK(m9.max_abs.contains(3.0));  // attained at j = 3: c_9(3) = -3
    CHECK(m9.attaining_j == 3);

    auto m3 = maxexp(3, {});
    CHECK(m3.max_abs.contains(1.0));

    auto m7 = maxexp(7, {});
    CHECK(m7.max_abs.contains(std::sqrt(2.0)));  // |(-1 + i sqrt 7)/2|

    auto m15 = maxexp(15, {});
    CHECK(m15.rho == 4);

    // strict max < rho for a spread of moduli
    for (u64 q : {3ULL, 5ULL, 7ULL, 9ULL, 15ULL, 21ULL, 105ULL, 1155ULL}) {
        auto m = maxexp(q, {});
        CHECK(m.max_abs.hi < static_cast<double>(m.rho));
    }
}

TEST_CASE("maxexp dominates every per-j sum (sampled)") {
    u64 q = 105;
    auto m = maxexp(q, {});
    u64 rho = m.rho;
    for (u64 j : {1ULL, 2ULL, 3ULL, 5ULL, 7ULL, 35ULL, 52ULL, 104ULL}) {
        CInterval s;
        u64 pw = 1;
        for (u64 e = 0; e < rho; ++e) {
            pw = (pw * 2) % q;
            s += unit_phase(static_cast<i64>(j * pw), static_cast<i64>(q));
        }
        CHECK(m.max_abs.hi >= s.abs().lo);
    }
}

TEST_CASE("maxexp(15015) enclosure and slack") {
    auto m = maxexp(15015, {35, 44});
    CHECK(m.rho == 60);
    CHECK(m.max_abs.lo > 34.5);
    CHECK(m.max_abs.hi < 34.6);
    CHECK(m.max_abs.width() < 1e-3);
    // the published "< 1e-7" at k = 35 does not reproduce; value is ~6.4e-5
    CHECK(m.slack.at(35).lo > 1e-7);
    CHECK(m.slack.at(35).hi < 1e-3);
    CHECK(m.slack.at(44).hi < 1e-6);
}

TEST_CASE("residue_count: hand case and brute force") {
    auto r = residue_count(9, 2, 2);
    CHECK(r.count == 3);

    // brute force: q3 <= 99, k <= 4
    for (u64 q : {9ULL, 15ULL, 63ULL, 99ULL}) {
        u64 rho = mult_order2(q);
        std::vector<u64> cycle;
        u64 pw = 1;
        for (u64 s = 0; s < rho; ++s) {
            pw = (pw * 2) % q;
            cycle.push_back(pw);
        }
        for (int k : {1, 2, 3, 4}) {
            std::vector<u64> counts(q, 0);
            std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
            while (true) {
                u64 s = 0;
                for (int j = 0; j < k; ++j) s += cycle[idx[static_cast<std::size_t>(j)]];
                counts[s % q] += 1;
                std::size_t t = 0;
                while (t < idx.size() && ++idx[t] == cycle.size()) idx[t++] = 0;
                if (t == idx.size()) break;
            }
            auto dist = power_sum_distribution(q, k);
            for (u64 a = 0; a < q; ++a)
                CHECK(dist.counts[a] == mpz_class(static_cast<unsigned long>(counts[a])));
        }
    }
}

TEST_CASE("residue totals: sum over a of count = rho^k") {
    auto dist = power_sum_distribution(105, 5);
    mpz_class total = 0;
    for (const auto& c : dist.counts) total += c;
    mpz_class expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(dist.rho), 5);
    CHECK(total == expect);
}

TEST_CASE("sum_A_identity: hand values and sweep") {
    auto r5 = sum_A_identity(5);
    CHECK(r5.exact_equal);
    CHECK(r5.sum == mpq_class(5));
    CHECK(sum_A_identity(3).exact_equal);
    CHECK(sum_A_identity(13).exact_equal);
    for (u32 p : primes_up_to(100)) CHECK(sum_A_identity(p).exact_equal);
}

TEST_CASE("final_margin: frozen arithmetic at the certified constant") {
    MarginInput in;
    in.lambda = 0.887167;
    in.c0 = RInterval::around(0.69);
    in.ji_ratio = RInterval::point(1.0);
    auto r = final_margin(in);
    // 0.9 - 0.887167^30 * 45 * 0.69 = 0.04494...
    CHECK(r.margin44.contains(0.9 - std::pow(0.887167, 30) * 45.0 * 0.69));
    CHECK(r.margin44.lo > 0.044);
    CHECK(r.margin44.hi < 0.046);
    CHECK(r.margin43.hi < 0.0);
    CHECK(r.margin43.lo > -0.07);
    CHECK(r.minimal_k == 44);

    // monotone increasing in k
    for (int k = 16; k <= 60; ++k)
        CHECK(final_margin_at(k, in).lo > final_margin_at(k - 1, in).lo);

    // decreasing in c0
    MarginInput lower = in;
    lower.c0 = RInterval::around(0.5);
    CHECK(final_margin_at(44, lower).lo > final_margin_at(44, in).hi);
    auto rl = final_margin(lower);
    CHECK(rl.minimal_k < 44);
}

TEST_CASE("avg_singular_series at desk scale") {
    auto rep = avg_singular_series(1'000'004, 3, 2000);
    CHECK(rep.L_int == 16);
    CHECK(rep.tuples_total == 13ULL * 13 * 13);
    CHECK(rep.all_n_4_mod8);
    CHECK(rep.tuples_kept > 0);
    CHECK(rep.tuples_kept < rep.tuples_total);
    CHECK(rep.ratio.lo >= 0.5);  // smoke floor; the asymptotic target is 0.9
    CHECK(rep.ratio.hi < 2.0);
    CHECK_THROWS_AS(avg_singular_series(1'000'002, 3, 2000), domain_error);
}
