// powers2.hpp
//
// Everything counting powers of 2:
//
//   r_t(h)  = #{ 4 <= nu_j, mu_j <= L : sum_j (2^{nu_j} - 2^{mu_j}) = h }
//   n_q(t)  = #{ (u,v) in [1,rho(q)]^{2t} : sum 2^{u_j} = sum 2^{v_j} mod q }
//   beta(d) = rho(3d)^14 / n_{3d}(7)
//   c1 <= sum_{beta(d)<M} mu^2(d)/c(d) (1/beta(d) - 1/M) + (8 c3/15) e^gamma (1+log M)/M
//   c2 analogous with modulus 15d;  c0 = (25/32) c1 + (23/32) c2 < 0.69
//   m(x) = prod_{e<=x} (2^e - 1),  m(x)/phi(m(x)) <= e^gamma log x  (x >= 9)
//
// All counts are exact integers (64/128-bit fast paths, GMP beyond).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qwg/arith.hpp"
#include "qwg/interval.hpp"

namespace qwg {

inline constexpr u64 kRtMemoryCap = 1ULL << 25;   // t * 2^L cap
inline constexpr u64 kDpModulusCap = 1'000'000;   // q * rho DP cap (per level)

struct Histogram {
    int t = 0;
    int L = 0;
    i64 offset = 0;            // support = multiples of 16 in [-offset, offset]
    std::vector<u64> data;     // index (h + offset) / 16

    u64 value(i64 h) const {
        if (h < -offset || h > offset || ((h % 16) != 0)) return 0;
        return data[static_cast<std::size_t>((h + offset) / 16)];
    }
    mpz_class total() const;
};

Histogram r_t_histogram(int t, int L);

struct PowerSumDistribution {
    u64 q = 0;
    u64 rho = 0;
    int t = 0;
    std::vector<mpz_class> counts;  // counts[r] = #{ (nu_1..nu_t) : sum 2^{nu_j} = r mod q }
    mpz_class pair_count() const;   // n_q(t) = sum_r counts[r]^2
};

// t-fold DP over the cycle {2^s mod q : 1 <= s <= rho(q)}.
PowerSumDistribution power_sum_distribution(u64 q, int t);

struct PccResult {
    PowerSumDistribution dist;
    mpz_class n;
};

PccResult power_congruence_count(u64 q, int t);

// beta(d) = rho(3d)^14 / n_{3d}(7), exact. d squarefree with gcd(30, d) = 1.
mpq_class beta(u64 d, u64 dp_cap = kDpModulusCap);

struct CandidateD {
    u64 d = 1;
    u64 rho = 1;               // rho(base * d)
    std::vector<u64> primes;   // prime factors of d (all > 5)
};

// All squarefree d (p | d => p > 5) with rho(base*d) < M, ordered by (rho, d).
// base = 3 for c1, 15 for c2.
std::vector<CandidateD> candidate_d_enum(u64 M, u64 base = 3);

struct C1C2Row {
    u64 d = 1;
    u64 rho = 1;
    bool exact = false;        // DP ran; false = fallback bound 1/beta <= 1/rho
    bool dropped = false;      // exact beta >= M, term omitted per the formula
    std::string inv_beta;      // exact n/rho^14 or the bound used
    RInterval term;
};

struct C1C2Report {
    u64 M = 40;
    RInterval c1, c2, c0;
    RInterval tail_term;       // (8 c3 / 15) e^gamma (1 + log M) / M
    std::vector<C1C2Row> rows1, rows2;
    int skipped1 = 0, skipped2 = 0;
};

C1C2Report c1_c2(u64 M = 40, u64 dp_cap = kDpModulusCap);

struct MRatioRow {
    unsigned x = 0;
    mpq_class ratio;           // m(x)/phi(m(x))
    RInterval rhs;             // e^gamma log x
    bool checked = false;      // claim applies (x >= 9)
    bool pass = false;
};

struct MRatioReport {
    std::vector<MRatioRow> rows;
    bool all_pass = false;     // over the checked range 9 <= x <= xmax
};

MRatioReport m_ratio_check(unsigned xmax = 40);

}  // namespace qwg
