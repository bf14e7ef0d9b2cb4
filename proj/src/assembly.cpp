#include "qwg/assembly.hpp"

#include <algorithm>

#include "qwg/localsums.hpp"
#include "qwg/series.hpp"

namespace qwg {

PrimeProduct51 prime_product_51(bool reversed_order) {
    PrimeProduct51 out;
    const u64 p5000 = nth_prime(5000);  // 48611
    std::vector<u32> ps;
    for (u32 p : primes_up_to(p5000 - 1))
        if (p >= 17 && p < p5000) ps.push_back(p);
    if (reversed_order) std::reverse(ps.begin(), ps.end());

    RInterval head = RInterval::point(1.0);
    for (u32 p : ps) {
        RInterval pi = RInterval::from_int(p);
        RInterval pm14 = pow_int(pi - RInterval::point(1.0), 4);
        i64 pp = static_cast<i64>(p);
        i64 num = (p % 4 == 1) ? 5 * pp * pp + 10 * pp + 1 : 5 * pp * pp - 2 * pp + 1;
        head *= (pm14 - RInterval::from_int(num)) / pm14;
    }
    out.head = head;

    mpq_class t(static_cast<unsigned long>(p5000 - 2), static_cast<unsigned long>(p5000 - 1));
    mpq_class t6 = t * t * t * t * t * t;
    out.tail = rat_interval(t6);
    out.c1 = out.head * out.tail;
    out.tail_matches_print = out.tail.lo > out.printed_tail;
    return out;
}

MaxExpResult maxexp(u64 q, const std::vector<int>& k_list) {
    if (q < 3 || q % 2 == 0) throw domain_error("maxexp: q must be odd >= 3");
    u64 rho = mult_order2(q);
    if (q * rho > 10'000'000'000ULL / rho)
        throw resource_error("maxexp: q * rho above scan cap");

    // phases e(r/q) for all residues, reused across j
    std::vector<CInterval> phase(q);
    for (u64 r = 0; r < q; ++r) phase[r] = unit_phase(static_cast<i64>(r), static_cast<i64>(q));
    std::vector<u64> cycle(rho);
    u64 pw = 1;
    for (u64 s = 0; s < rho; ++s) {
        pw = (pw * 2) % q;
        cycle[s] = pw;
    }

    MaxExpResult out;
    out.q = q;
    out.rho = rho;
    RInterval best{0.0, 0.0};
    double best_mid = -1.0;
    for (u64 j = 1; j < q; ++j) {
        CInterval s;
        for (u64 sdx = 0; sdx < rho; ++sdx) s += phase[(j * cycle[sdx]) % q];
        RInterval mag = s.abs();
        if (mag.mid() > best_mid) {
            best_mid = mag.mid();
            out.attaining_j = j;
        }
        best = {std::max(best.lo, mag.lo), std::max(best.hi, mag.hi)};
    }
    out.max_abs = best;

    RInterval ratio = out.max_abs / RInterval::from_int(static_cast<i64>(rho));
    for (int k : k_list)
        out.slack[k] = RInterval::from_int(static_cast<i64>(q - 1)) * pow_int(ratio, static_cast<unsigned>(k));
    return out;
}

namespace {

ResidueCountResult residue_verdicts(const PowerSumDistribution& dist, u64 a,
                                    const RInterval& max_abs) {
    ResidueCountResult r;
    r.q = dist.q;
    r.k = dist.t;
    r.a = a % dist.q;
    r.count = dist.counts[r.a];

    // exact main term rho^k / q, slack from the interval upper endpoint
    mpz_class rho_k;
    mpz_ui_pow_ui(rho_k.get_mpz_t(), static_cast<unsigned long>(dist.rho),
                  static_cast<unsigned long>(dist.t));
    mpq_class main(rho_k, mpz_class(static_cast<unsigned long>(dist.q)));
    main.canonicalize();
    RInterval ratio = max_abs / RInterval::from_int(static_cast<i64>(dist.rho));
    RInterval slack = RInterval::from_int(static_cast<i64>(dist.q - 1)) *
                      pow_int(ratio, static_cast<unsigned>(dist.t));
    mpq_class slack_hi(slack.hi);  // doubles are dyadic rationals: exact
    mpq_class lower = main * (1 - slack_hi);
    mpq_class upper = main * (1 + slack_hi);
    mpq_class cnt(r.count);
    r.lower_bound_pass = cnt >= lower;
    r.band_pass = cnt >= lower && cnt <= upper;
    return r;
}

}  // namespace

ResidueCountResult residue_count(u64 q3, int k, u64 a) {
    auto dist = power_sum_distribution(q3, k);
    auto mx = maxexp(q3, {});
    return residue_verdicts(dist, a, mx.max_abs);
}

ResidueCountResult residue_count_from(const PowerSumDistribution& dist, u64 a,
                                      const RInterval& max_abs) {
    return residue_verdicts(dist, a, max_abs);
}

SumAIdentity sum_A_identity(u64 p) {
    if (!is_prime(p)) throw domain_error("sum_A_identity: p must be prime");
    SumAIdentity r;
    r.p = p;
    mpq_class sum = 0;
    for (u64 j = 1; j <= p; ++j) sum += a_of(static_cast<i64>(j), p) + 1;
    sum.canonicalize();
    r.sum = sum;
    r.exact_equal = (sum == mpq_class(static_cast<unsigned long>(p)));
    return r;
}

AvgSeriesReport avg_singular_series(u64 N, int k, u64 pmax) {
    if (N % 8 != 4) throw domain_error("avg_singular_series: N must be 4 mod 8");
    if (k < 1 || k > 4) throw domain_error("avg_singular_series: k must be in [1, 4]");
    if (N > 10'000'000) throw resource_error("avg_singular_series: N above desk-scale cap");

    AvgSeriesReport rep;
    rep.N = N;
    rep.k = k;
    double nd = static_cast<double>(N);
    rep.L_real = std::log(nd / std::log(nd)) / std::log(2.0);
    rep.L_int = static_cast<int>(rep.L_real);
    if (rep.L_int < 5) throw domain_error("avg_singular_series: N too small");

    int nexp = rep.L_int - 3;  // choices of nu in [4, L]
    std::vector<u64> pows;
    for (int v = 4; v <= rep.L_int; ++v) pows.push_back(1ULL << v);

    // distinct sums of k exponent choices -> multiplicity
    std::map<u64, u64> sums;
    sums[0] = 1;
    for (int j = 0; j < k; ++j) {
        std::map<u64, u64> next;
        for (auto [s, m] : sums)
            for (u64 p2 : pows) next[s + p2] += m;
        sums = std::move(next);
    }
    RInterval total = RInterval::point(0.0);
    std::map<u64, RInterval> cache;
    for (auto [s, m] : sums) {
        rep.tuples_total += m;
        if (s + 2 > N) continue;
        u64 n = N - s;
        if (n % 8 != 4) rep.all_n_4_mod8 = false;
        if (n % 24 != 4) continue;
        rep.tuples_kept += m;
        auto it = cache.find(n);
        if (it == cache.end())
            it = cache.emplace(n, singular_series(static_cast<i64>(n), pmax).value).first;
        total += RInterval::from_int(static_cast<i64>(m)) * it->second;
    }
    rep.sum_ss = total;
    RInterval denom = RInterval::from_int(8) * pow_int(RInterval::from_int(nexp), static_cast<unsigned>(k));
    rep.ratio = total / denom;
    return rep;
}

RInterval final_margin_at(int k, const MarginInput& in) {
    if (k < 15) throw domain_error("final_margin: k must be >= 15");
    RInterval lam = RInterval::around(in.lambda);
    RInterval osc = pow_int(lam, static_cast<unsigned>(k - 14)) * RInterval::from_int(45) *
                    in.c0 * in.ji_ratio;
    return RInterval::around(in.major_floor) - osc;
}

MarginResult final_margin(const MarginInput& in) {
    MarginResult r;
    r.margin43 = final_margin_at(43, in);
    r.margin44 = final_margin_at(44, in);
    r.minimal_k = 0;
    for (int k = 15; k <= 120; ++k) {
        RInterval m = final_margin_at(k, in);
        if (k >= 40 && k <= 48) r.margins[k] = m;
        if (r.minimal_k == 0 && m.lo > 0.0) r.minimal_k = k;
    }
    return r;
}

}  // namespace qwg
