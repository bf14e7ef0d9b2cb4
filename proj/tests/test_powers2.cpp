#include <doctest.h>

#include <algorithm>
#include <map>

#include "qwg/powers2.hpp"
#include "qwg/series.hpp"

using namespace qwg;

namespace {

// brute-force r_t by direct tuple enumeration (t <= 2, small L)
std::map<i64, u64> r_t_brute(int t, int L) {
    std::vector<i64> pows;
    for (int v = 4; v <= L; ++v) pows.push_back(1LL << v);
    std::map<i64, u64> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(2 * t), 0);
    const std::size_t base = pows.size();
    while (true) {
        i64 h = 0;
        for (int j = 0; j < t; ++j) h += pows[idx[static_cast<std::size_t>(j)]];
        for (int j = t; j < 2 * t; ++j) h -= pows[idx[static_cast<std::size_t>(j)]];
        out[h] += 1;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == base) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

}  // namespace

TEST_CASE("r_1 histogram identities") {
    auto h = r_t_histogram(1, 10);
    CHECK(h.value(0) == 7);        // u = v, L - 3 choices
    CHECK(h.value(16) == 1);       // only 2^5 - 2^4
    CHECK(h.value(-16) == 1);
    CHECK(h.value(8) == 0);        // off the 16-stride
    CHECK(h.total() == mpz_class(49));  // (L-3)^2

    for (int L : {6, 8, 12}) {
        auto h1 = r_t_histogram(1, L);
        CHECK(h1.value(16) == 1);
        CHECK(h1.total() == mpz_class(static_cast<long>((L - 3) * (L - 3))));
    }

    // degenerate box: a single exponent choice
    auto h4 = r_t_histogram(1, 4);
    CHECK(h4.value(0) == 1);
    CHECK(h4.total() == 1);
}

TEST_CASE("r_t equals brute force for t <= 2, L <= 8") {
    for (int t : {1, 2})
        for (int L : {5, 6, 7, 8}) {
            auto hist = r_t_histogram(t, L);
            auto brute = r_t_brute(t, L);
            mpz_class total = 0;
            for (auto [h, c] : brute) {
                CHECK(hist.value(h) == c);
                total += static_cast<long>(c);
            }
            CHECK(hist.total() == total);
            // evenness
            for (auto [h, c] : brute) CHECK(hist.value(-h) == c);
        }
}

TEST_CASE("r_t via conv-then-correlate route agrees at t = 3, L = 10") {
    auto hist = r_t_histogram(3, 10);
    // independent route: U = 3-fold sum distribution, r(h) = sum_s U[s] U[s-h]
    std::vector<i64> pows;
    for (int v = 4; v <= 10; ++v) pows.push_back(1LL << v);
    std::map<i64, u64> u3;
    for (i64 a : pows)
        for (i64 b : pows)
            for (i64 c : pows) u3[a + b + c] += 1;
    std::map<i64, u64> r3;
    for (auto [s1, c1] : u3)
        for (auto [s2, c2] : u3) r3[s1 - s2] += c1 * c2;
    for (auto [h, c] : r3) CHECK(hist.value(h) == c);
}

TEST_CASE("power_congruence_count: hand values") {
    auto r31 = power_congruence_count(3, 1);
    CHECK(r31.n == 2);
    auto r37 = power_congruence_count(3, 7);
    CHECK(r37.n == 5462);
    // residue classes mod 3 of 7-fold sums: 42^2 + 43^2 + 43^2
    std::vector<mpz_class> sorted = r37.dist.counts;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[0] == 42);
    CHECK(sorted[1] == 43);
    CHECK(sorted[2] == 43);

    auto r51 = power_congruence_count(5, 1);
    CHECK(r51.n == 4);
    CHECK(r51.dist.counts[0] == 0);
    for (u64 r = 1; r <= 4; ++r) CHECK(r51.dist.counts[r] == 1);
}

TEST_CASE("power_congruence_count vs brute enumeration (q = 3, t = 7)") {
    // 2^s mod 3 cycles {2, 1}; enumerate all 2^14 exponent pairs directly
    u64 n_brute = 0;
    for (u64 u = 0; u < (1 << 7); ++u)
        for (u64 v = 0; v < (1 << 7); ++v) {
            int su = 0, sv = 0;
            for (int j = 0; j < 7; ++j) {
                su += (u >> j & 1) ? 2 : 1;
                sv += (v >> j & 1) ? 2 : 1;
            }
            if (su % 3 == sv % 3) ++n_brute;
        }
    CHECK(power_congruence_count(3, 7).n == n_brute);
}

TEST_CASE("distribution totals and shift invariance") {
    for (u64 q : {3ULL, 9ULL, 15ULL, 21ULL, 105ULL}) {
        auto d = power_sum_distribution(q, 3);
        mpz_class total = 0;
        for (const auto& c : d.counts) total += c;
        mpz_class rho_t;
        mpz_ui_pow_ui(rho_t.get_mpz_t(), static_cast<unsigned long>(d.rho), 3);
        CHECK(total == rho_t);
        // counts invariant under r -> 2r mod q
        for (u64 r = 0; r < q; ++r) CHECK(d.counts[r] == d.counts[(2 * r) % q]);
    }
}

TEST_CASE("DFT identity: n_q(t) = (1/q) sum_j |S_q(j)|^{2t}") {
    for (u64 q : {3ULL, 5ULL, 9ULL, 15ULL, 21ULL, 51ULL, 105ULL, 255ULL}) {
        for (int t : {1, 2, 3}) {
            auto r = power_congruence_count(q, t);
            u64 rho = r.dist.rho;
            RInterval acc = RInterval::point(0.0);
            for (u64 j = 0; j < q; ++j) {
                CInterval s;
                u64 pw = 1;
                for (u64 e = 0; e < rho; ++e) {
                    pw = (pw * 2) % q;
                    s += unit_phase(static_cast<i64>(j * pw), static_cast<i64>(q));
                }
                acc += pow_int(s.abs2(), static_cast<unsigned>(t));
            }
            acc = acc / RInterval::from_int(static_cast<i64>(q));
            double nval = r.n.get_d();
            CHECK(acc.lo <= nval + 0.4);
            CHECK(acc.hi >= nval - 0.4);
            CHECK(acc.width() < 0.4);
        }
    }
}

TEST_CASE("beta: hand value and identities") {
    mpq_class b1 = beta(1);
    mpq_class expect_b1(16384, 5462);
    expect_b1.canonicalize();
    CHECK(b1 == expect_b1);
    CHECK(b1.get_num() == 8192);  // canonical form
    CHECK(b1.get_den() == 2731);

    for (u64 d : {1ULL, 7ULL, 11ULL, 13ULL}) {
        mpq_class b = beta(d);
        u64 rho = mult_order2(3 * d);
        // beta * n = rho^14 exactly
        mpz_class rho14;
        mpz_ui_pow_ui(rho14.get_mpz_t(), static_cast<unsigned long>(rho), 14);
        auto pcc = power_congruence_count(3 * d, 7);
        CHECK(b * mpq_class(pcc.n) == mpq_class(rho14));
        // rho <= beta <= rho^7 (diagonal tuples give n >= rho^7)
        CHECK(b >= mpq_class(static_cast<unsigned long>(rho)));
        mpz_class rho7;
        mpz_ui_pow_ui(rho7.get_mpz_t(), static_cast<unsigned long>(rho), 7);
        CHECK(b <= mpq_class(rho7));
    }
    CHECK_THROWS_AS(beta(9), domain_error);   // not squarefree
    CHECK_THROWS_AS(beta(10), domain_error);  // gcd(30, d) != 1
}

TEST_CASE("candidate_d_enum: structure") {
    auto cands = candidate_d_enum(40, 3);
    REQUIRE(!cands.empty());
    CHECK(cands.front().d == 1);
    bool has127 = false;
    for (const auto& c : cands) {
        CHECK(c.rho < 40);
        CHECK(c.d % 2 != 0);
        CHECK(c.d % 3 != 0);
        CHECK(c.d % 5 != 0);
        if (c.d == 127) has127 = true;
        if (c.d > 1) CHECK(multiplicative_stats(c.d).mu != 0);
    }
    CHECK(has127);
    // 337 has order 21: lcm(2, 21) = 42 >= 40, excluded
    for (const auto& c : cands) CHECK(c.d % 337 != 0);
    // deterministic order by (rho, d)
    for (std::size_t i = 1; i < cands.size(); ++i)
        CHECK(std::tie(cands[i - 1].rho, cands[i - 1].d) < std::tie(cands[i].rho, cands[i].d));
}

TEST_CASE("candidate rho values are true orders") {
    for (const auto& c : candidate_d_enum(30, 3))
        if (c.d <= 100'000) CHECK(c.rho == mult_order2(3 * c.d));
    for (const auto& c : candidate_d_enum(30, 15))
        if (c.d <= 100'000) CHECK(c.rho == mult_order2(15 * c.d));
}

TEST_CASE("c1_c2: exact d = 1 terms and degraded-M behaviour") {
    auto r = c1_c2(40, 1'000'000);
    // d = 1 term of c1: 5462/16384 - 1/40 exactly
    REQUIRE(!r.rows1.empty());
    CHECK(r.rows1.front().d == 1);
    mpq_class expect = mpq_class(5462, 16384) - mpq_class(1, 40);
    CHECK(r.rows1.front().term.contains(rat_interval(expect).lo));
    CHECK(r.rows1.front().inv_beta == "2731/8192");
    // d = 1 term of c2: n_15(7)/4^14 - 1/40
    CHECK(r.rows2.front().d == 1);
    auto pcc15 = power_congruence_count(15, 7);
    mpq_class inv_beta2(pcc15.n, mpz_class(1) << 28);
    inv_beta2.canonicalize();
    mpq_class expect2 = inv_beta2 - mpq_class(1, 40);
    CHECK(r.rows2.front().term.contains(rat_interval(expect2).mid()));

    CHECK(r.c0.hi < 0.69);
    CHECK(r.c0.lo > 0.3);

    // degraded parameters still give a well-formed, weaker bound
    auto r20 = c1_c2(20, 1'000'000);
    CHECK(r20.c1.hi > 0.0);
    CHECK(r20.c1.hi < 10.0);

    // monotonicity: a larger DP cap can only lower (or keep) the bound
    auto r_small_cap = c1_c2(40, 50'000);
    CHECK(r.c1.hi <= r_small_cap.c1.hi + 1e-12);
    CHECK(r.c2.hi <= r_small_cap.c2.hi + 1e-12);
}

TEST_CASE("powers2 caps raise resource errors") {
    CHECK_THROWS_AS(r_t_histogram(7, 24), resource_error);     // t * 2^L over the memory cap
    CHECK_THROWS_AS(beta(333'667, 1'000'000), resource_error); // 3d above the DP cap
}

TEST_CASE("m_ratio_check: informational small x and the claimed range") {
    auto r = m_ratio_check(40);
    CHECK(r.all_pass);
    // x = 3: m(3) = 1*3*7 = 21, phi = 12, ratio = 7/4 (informational)
    const auto& row3 = r.rows[2];
    CHECK(row3.x == 3);
    mpq_class expect_ratio(21, 12);
    expect_ratio.canonicalize();
    CHECK(row3.ratio == expect_ratio);
    CHECK_FALSE(row3.checked);
    const auto& row9 = r.rows[8];
    CHECK(row9.x == 9);
    CHECK(row9.checked);
    CHECK(row9.pass);
    for (const auto& row : r.rows)
        if (row.checked) CHECK(row.pass);
}
