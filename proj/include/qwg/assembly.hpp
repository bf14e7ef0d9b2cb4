// assembly.hpp
//
// The desk numerics feeding the final assembly of the main bound:
//
//   head = prod_{17 <= p < p_5000} (1 - (5p^2+10p+1)/(p-1)^4)   [p = 1 mod 4]
//                                  (1 - (5p^2-2p+1)/(p-1)^4)    [p = 3 mod 4]
//   tail = (1 - 1/(p_5000 - 1))^6,  C1 = head * tail            (>= 0.904811)
//
//   maxexp(q): max over 1 <= j <= q-1 of |sum_{s=1}^{rho(q)} e(j 2^s / q)|
//              (q = 15015: rho = 60, max in (34.5, 34.6))
//
//   residue counts #{(nu_1..nu_k) in [1,rho]^k : sum 2^{nu_j} = a mod q}
//   with the DFT band  rho^k/q (1 +- (q-1)(max/rho)^k)
//
//   sum_{j=1}^{p} (1 + A(j,p)) = p    (exact rational identity)
//
//   margin(k) = 0.9 - lambda^{k-14} * 45 * c0 * (J(0)/I(1)),  minimal k = 44
//   at the certified constant c0 = 0.69 and lambda = 0.887167.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qwg/interval.hpp"
#include "qwg/powers2.hpp"

namespace qwg {

struct PrimeProduct51 {
    RInterval head;
    RInterval tail;            // computed (1 - 1/48610)^6
    RInterval c1;              // head * tail
    double printed_tail = 0.99994271;  // published print; inconsistent with the formula
    bool tail_matches_print = false;
};

PrimeProduct51 prime_product_51(bool reversed_order = false);

struct MaxExpResult {
    u64 q = 0;
    u64 rho = 0;
    RInterval max_abs;
    u64 attaining_j = 0;
    std::map<int, RInterval> slack;  // k -> (q-1)(max/rho)^k
};

MaxExpResult maxexp(u64 q, const std::vector<int>& k_list = {35, 44});

struct ResidueCountResult {
    u64 q = 0;
    int k = 0;
    u64 a = 0;
    mpz_class count;
    bool lower_bound_pass = false;   // count >= rho^k/q (1 - slack_hi)
    bool band_pass = false;          // |count - rho^k/q| <= rho^k/q * slack_hi
};

ResidueCountResult residue_count(u64 q3, int k, u64 a);
// Same verdicts against a precomputed distribution (one DP, many residues).
ResidueCountResult residue_count_from(const PowerSumDistribution& dist, u64 a,
                                      const RInterval& max_abs);

struct SumAIdentity {
    u64 p = 0;
    mpq_class sum;             // sum_{j=1}^p (1 + A(j,p))
    bool exact_equal = false;  // sum == p
};

SumAIdentity sum_A_identity(u64 p);

struct AvgSeriesReport {
    u64 N = 0;
    int k = 0;
    double L_real = 0.0;       // (log(N/log N))/log 2
    int L_int = 0;             // floor; exponents run over [4, L_int]
    u64 tuples_total = 0;
    u64 tuples_kept = 0;       // n >= 2 and n = 4 mod 24
    RInterval sum_ss;          // sum of SS(n) over kept tuples (with multiplicity)
    RInterval ratio;           // sum_ss / (8 (L_int - 3)^k), target 0.9
    bool all_n_4_mod8 = true;
};

AvgSeriesReport avg_singular_series(u64 N, int k, u64 pmax);

struct MarginInput {
    double lambda = 0.887167;
    RInterval c0;              // certified constant (0.69)
    RInterval ji_ratio;        // J(0)/I(1) enclosure, >= 1
    double major_floor = 0.9;
};

struct MarginResult {
    RInterval margin44;
    RInterval margin43;
    int minimal_k = 0;         // least k with margin(k).lo > 0
    std::map<int, RInterval> margins;
};

// margin(k) = major_floor - lambda^{k-14} * 45 * c0 * ji_ratio (units of I(1)).
RInterval final_margin_at(int k, const MarginInput& in);
MarginResult final_margin(const MarginInput& in);

}  // namespace qwg
