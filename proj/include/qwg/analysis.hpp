// analysis.hpp
//
// Archimedean and empirical side.
//
//   g(beta)  = int_{sqrt(1/4-eta)}^{sqrt(1/4+eta)} e(x^2 beta) dx
//   I(h)     = int (int e(x^2 b) dx)^4 e(-h b) db
//            = density of {x in window^4 : x1^2+..+x4^2 = h}
//   J(h)     = int |g|^4 e(-h b) db  (two factors reflected), J+ with g+
//
// The singular integrals are evaluated with no oscillatory quadrature: the
// pushforward density of x^2 (the 1/(2 sqrt t) weight) is bracketed by
// piecewise-constant interval functions on an exact rational grid, convolved
// exactly, and paired; enclosures are rigorous by construction.
//
// Counting: meet-in-the-middle over prime pairs p1^2 + p2^2 in the window
// B = [sqrt((1/4-eta)N), sqrt((1/4+eta)N)], checked against the main-term
// prediction SS(n) * I(n/N) * N; the fourth-moment collision weight and the
// divisor-weighted quantity J run on the same tables.

#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "qwg/arith.hpp"
#include "qwg/interval.hpp"

namespace qwg {

enum class GVariant { plain, plus };

// Enclosure of g(beta) (or g+) by composite midpoint quadrature with a
// second-derivative remainder bound.
CInterval g_eval(double beta, const mpq_class& eta, GVariant variant = GVariant::plain);

enum class IntegralKind { I, J, Jplus };

// Precomputes the pair-sum densities for one (eta, grid); eval is O(cells).
class SingularIntegralEvaluator {
  public:
    SingularIntegralEvaluator(const mpq_class& eta, int cells = 2000);
    ~SingularIntegralEvaluator();
    SingularIntegralEvaluator(SingularIntegralEvaluator&&) noexcept;

    RInterval eval(IntegralKind kind, const mpq_class& h) const;
    int cells() const;

  private:
    struct Impl;
    Impl* impl_;
};

RInterval singular_integral(IntegralKind kind, const mpq_class& h, const mpq_class& eta,
                            int cells = 2000);

struct WindowRow {
    u64 n = 0;
    u64 count = 0;         // ordered prime quadruples with sum of squares = n
    double weighted = 0;   // sum of prod log p_j
    RInterval prediction;  // SS(n) * I(n/N) * N
    double ratio = 0;      // weighted / mid(prediction)
};

struct WindowStats {
    u64 N = 0;
    mpq_class eta;
    u64 primes_in_window = 0;
    std::vector<WindowRow> rows;
    double mean_ratio = 0;
    double ratio_stddev = 0;
};

// Windowed counts vs predictions. pmax feeds the singular series.
WindowStats count4_window(u64 N, const mpq_class& eta, const std::vector<u64>& targets,
                          u64 pmax = 10'000);

// Exhaustive full-range mode (no window): counts over all primes p^2 <= n.
struct FullRangeCount {
    u64 n = 0;
    u64 count = 0;
    double weighted = 0;
};
FullRangeCount count4_full_range(u64 n);

struct RiegerResult {
    double total = 0;      // sum over p1^2+p2^2 = p3^2+p4^2 in B^4 of prod log p
    double diagonal = 0;   // (sum_p log^2 p)^2
    double ratio_to_nlogsq = 0;
    u64 primes_in_window = 0;
};

RiegerResult rieger_sum(u64 N, const mpq_class& eta);

struct QuadCount {
    u64 P = 0;
    mpz_class j_total, j_diag, j_offdiag;
};

// J = sum_{x1^2+x2^2=x3^2+x4^2, xi <= P} tau(x1)..tau(x4); the diagonal
// part is split off as J_d = (sum tau^2)^2.
QuadCount lemma_j(u64 P, u64 cap = 8192);

struct MertensResult {
    u64 z = 0;
    RInterval product;    // prod_{2 <= p < z} (1 - 1/p)
    RInterval reference;  // e^{-gamma} / log z
    RInterval ratio;
};

MertensResult mertens_check(u64 z);

}  // namespace qwg
