// series.hpp
//
// Singular series with rigorous truncation tails:
//
//   SS(n) = 24 prod_{p>3} (1 + A(n,p))          (n = 4 mod 24: 1 << SS(n))
//   SB(h) = prod_{p>2} (1 + BB(p,h)/(p-1)^4)    (0 exactly unless 3 | h)
//
// plus the weight functions a(p), b(p), c(d), kappa(h) and the constants
//
//   c3 = prod_{p>5} (1 + 1/c(p)) / (1 + 1/(p-1)) <= 1.3904
//   c4 = prod_{p>5} (1 + a(p)/(p-1)^4)           <= 0.9743
//
// Tail policy: for p not dividing n, |A(n,p)| <= (5p^2+10p+1)/(p-1)^4
// (machine-checked for p <= 10^4), and the log-tail beyond pmax is bounded
// by the integral of that envelope. c3/c4 tails use |factor - 1| <= C/(p-1)^2
// with C = 7 resp. 5 (also machine-checked).

#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "qwg/interval.hpp"
#include "qwg/localsums.hpp"

namespace qwg {

struct WeightTriple {
    u64 p = 0;
    i64 a_val = 0;
    i64 b_val = 0;
    mpq_class c_val;  // defined for p > 5
};

// a(p), b(p) for odd p; c(p) from 1 + 1/c(p) = (1+b/(p-1)^4)/(1+a/(p-1)^4),
// i.e. c(p) = ((p-1)^4 + a(p)) / (b(p) - a(p)). Requires p > 5.
WeightTriple abc_weights(u64 p);

// c(d) = prod c(p) over the (distinct) primes of squarefree d, gcd(30,d)=1;
// c(1) = 1. `primes` must be the prime factors of d.
mpq_class c_of_squarefree(const std::vector<u64>& primes);

// kappa(h) = (25 + 15(h/5))/32 if 5 does not divide h, 3/2 otherwise. h != 0.
mpq_class kappa(i64 h);

struct SeriesValue {
    RInterval value;           // encloses the infinite product
    u64 pmax = 0;              // exact factors for all p <= pmax (and all p | n)
    RInterval tail_log_bound;  // |log tail| enclosure used
    bool exact_zero = false;   // SB(h) with 3 not dividing h
    std::string exact_part;
    // SB only: the 3 c4 kappa~(h) prod_{p|h, p>5}(1 + 1/c(p)) comparison form.
    // Recorded for cross-checking; it bounds SB(h) on average over h, not
    // pointwise (the kappa display swaps the (h/5) cases against the exact
    // p = 5 factor).
    RInterval bound_form;
};

// The 24 prefactor bakes in the 2- and 3-adic factors of the full q-sum for
// n = 4 mod 24 (where the product form is the series); for other n the
// product is still well defined but is not the q-sum.
SeriesValue singular_series(i64 n, u64 pmax);
SeriesValue sbold(i64 h, u64 pmax);

struct C3C4 {
    RInterval c3;
    RInterval c4;
    u64 pmax = 0;
};

C3C4 c3_c4(u64 pmax = 20'000'000);

// Envelope used by the singular-series tail; exposed so tests can
// machine-verify |A(n,p)| <= env for p <= 10^4, p ∤ n.
mpq_class a_factor_envelope(u64 p);  // (5p^2+10p+1)/(p-1)^4

enum class R7Mode { lemma42, lemma43 };

struct SumR7Report {
    int L = 0;
    R7Mode mode = R7Mode::lemma42;
    RInterval lhs;            // exact weighted sum (interval only via c4/kappa arithmetic)
    RInterval lhs_over_l14;   // lhs / L^14
    RInterval lhs_over_box14; // lhs / (L-3)^14
    RInterval rhs_constant;   // lemma42: c0; lemma43: 3 c0
    RInterval ratio;          // lhs / (rhs * L^14)
    bool symmetric = false;   // term(h) == term(-h) held exactly
};

// Weighted r_7 sums over the exact histogram at integer L; per-h weights:
//   lemma42: [3|h] kappa(h) prod_{p|h, p>5} (1 + 1/c(p))
//   lemma43: 3 c4 kappa~(h) prod_{p|h, p>5} (1 + 1/c(p)),  kappa~ = [3|h] kappa
// c0_reference is the certified constant the report compares against (0.69).
SumR7Report sum_r7_weighted(int L, R7Mode mode, const RInterval& c0_reference);

}  // namespace qwg
