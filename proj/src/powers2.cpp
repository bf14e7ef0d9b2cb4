#include "qwg/powers2.hpp"

#include <algorithm>
#include <set>

#include "qwg/series.hpp"

namespace qwg {

mpz_class Histogram::total() const {
    mpz_class s = 0;
    for (u64 v : data) s += mpz_class(static_cast<unsigned long>(v));
    return s;
}

Histogram r_t_histogram(int t, int L) {
    if (t < 1) throw domain_error("r_t_histogram: t must be >= 1");
    if (L < 4) throw domain_error("r_t_histogram: L must be >= 4");
    if (static_cast<u64>(t) << L > kRtMemoryCap)
        throw resource_error("r_t_histogram: t * 2^L exceeds memory cap");
    // multiplicities fit u64: (L-3)^{2t} must stay below 2^63
    {
        mpz_class bound;
        mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(L - 3),
                      static_cast<unsigned long>(2 * t));
        if (mpz_sizeinbase(bound.get_mpz_t(), 2) > 62)
            throw resource_error("r_t_histogram: multiplicities exceed 64-bit range");
    }

    const i64 M = (1LL << L) - 16;  // max |2^a - 2^b|, all diffs multiples of 16
    const std::size_t m16 = static_cast<std::size_t>(M / 16);

    // one-pair difference distribution D1[(2^a - 2^b)/16]
    std::vector<u64> d1(2 * m16 + 1, 0);
    for (int a = 4; a <= L; ++a)
        for (int b = 4; b <= L; ++b)
            d1[static_cast<std::size_t>(((1LL << a) - (1LL << b)) / 16 + static_cast<i64>(m16))] += 1;
    std::vector<std::pair<i64, u64>> sparse;
    for (std::size_t i = 0; i < d1.size(); ++i)
        if (d1[i]) sparse.emplace_back(static_cast<i64>(i) - static_cast<i64>(m16), d1[i]);

    std::vector<u64> cur = {1};  // level 0: point mass at 0, offset16 = 0
    i64 cur_off = 0;
    for (int level = 0; level < t; ++level) {
        i64 new_off = cur_off + static_cast<i64>(m16);
        std::vector<u64> next(2 * static_cast<std::size_t>(new_off) + 1, 0);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            if (cur[j] == 0) continue;
            i64 base = static_cast<i64>(j) - cur_off;
            for (auto [off, cnt] : sparse)
                next[static_cast<std::size_t>(base + off + new_off)] += cur[j] * cnt;
        }
        cur = std::move(next);
        cur_off = new_off;
    }

    Histogram h;
    h.t = t;
    h.L = L;
    h.offset = cur_off * 16;
    h.data = std::move(cur);
    return h;
}

mpz_class PowerSumDistribution::pair_count() const {
    mpz_class n = 0;
    for (const auto& c : counts) n += c * c;
    return n;
}

PowerSumDistribution power_sum_distribution(u64 q, int t) {
    if (q < 3 || q % 2 == 0) throw domain_error("power_sum_distribution: q must be odd >= 3");
    if (t < 1) throw domain_error("power_sum_distribution: t must be >= 1");
    u64 rho = mult_order2(q);
    if (q * rho > 50 * kDpModulusCap)
        throw resource_error("power_sum_distribution: q * rho exceeds DP cap (q = " +
                             std::to_string(q) + ")");
    std::vector<u64> cycle(rho);
    u64 pw = 1;
    for (u64 s = 0; s < rho; ++s) {
        pw = (pw * 2) % q;
        cycle[s] = pw;  // 2^{s+1} mod q
    }
    std::vector<mpz_class> cur(q, mpz_class(0)), next(q, mpz_class(0));
    cur[0] = 1;
    for (int level = 0; level < t; ++level) {
        for (auto& v : next) v = 0;
        for (u64 r = 0; r < q; ++r) {
            if (cur[r] == 0) continue;
            for (u64 s = 0; s < rho; ++s) next[(r + cycle[s]) % q] += cur[r];
        }
        std::swap(cur, next);
    }
    PowerSumDistribution d;
    d.q = q;
    d.rho = rho;
    d.t = t;
    d.counts = std::move(cur);
    return d;
}

PccResult power_congruence_count(u64 q, int t) {
    PccResult r;
    r.dist = power_sum_distribution(q, t);
    r.n = r.dist.pair_count();
    return r;
}

namespace {

// u64 DP fast path; requires rho^t < 2^63. Returns n_q(t) as u128.
u128 pair_count_fast(u64 q, u64 rho, int t) {
    std::vector<u64> cycle(rho);
    u64 pw = 1;
    for (u64 s = 0; s < rho; ++s) {
        pw = (pw * 2) % q;
        cycle[s] = pw;
    }
    std::vector<u64> cur(q, 0), next(q, 0);
    cur[0] = 1;
    for (int level = 0; level < t; ++level) {
        std::fill(next.begin(), next.end(), 0);
        for (u64 r = 0; r < q; ++r) {
            if (cur[r] == 0) continue;
            for (u64 s = 0; s < rho; ++s) next[(r + cycle[s]) % q] += cur[r];
        }
        std::swap(cur, next);
    }
    u128 n = 0;
    for (u64 r = 0; r < q; ++r) n += static_cast<u128>(cur[r]) * cur[r];
    return n;
}

mpz_class mpz_from_u128(u128 v) {
    mpz_class hi(static_cast<unsigned long>(v >> 64));
    mpz_class lo(static_cast<unsigned long>(v & ~0ULL));
    mpz_class two64;
    mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
    return hi * two64 + lo;
}

mpz_class rho_pow_14(u64 rho) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(rho), 14);
    return r;
}

}  // namespace

mpq_class beta(u64 d, u64 dp_cap) {
    if (d == 0) throw domain_error("beta: d must be positive");
    if (d > 1) {
        auto st = multiplicative_stats(d);
        if (st.mu == 0) throw domain_error("beta: d must be squarefree");
        if (gcd_u64(d, 30) != 1) throw domain_error("beta: gcd(30, d) must be 1");
    }
    u64 q = 3 * d;
    if (q > dp_cap) throw resource_error("beta: modulus 3d above DP cap");
    u64 rho = mult_order2(q);
    u128 n = pair_count_fast(q, rho, 7);
    mpq_class b(rho_pow_14(rho), mpz_from_u128(n));
    b.canonicalize();
    return b;
}

std::vector<CandidateD> candidate_d_enum(u64 M, u64 base) {
    if (M > 64) throw domain_error("candidate_d_enum: M must be <= 64");
    if (M < 3) throw domain_error("candidate_d_enum: M too small");
    u64 rho_base = mult_order2(base);

    // usable primes: p > 5, p | 2^e - 1 for some e < M, with lcm(rho_base, ord_p(2)) < M
    std::set<u64> prime_set;
    for (u64 e = 1; e < M; ++e) {
        u64 mers = (e == 63) ? ~0ULL : (1ULL << e) - 1;
        if (mers < 7) continue;
        for (auto [p, k] : factorize(mers)) {
            (void)k;
            if (p <= 5) continue;
            u64 ord = mult_order2(p);
            if (lcm_u64(rho_base, ord) < M) prime_set.insert(p);
        }
    }
    std::vector<std::pair<u64, u64>> primes;  // (p, ord)
    for (u64 p : prime_set) primes.emplace_back(p, mult_order2(p));

    std::vector<CandidateD> out;
    out.push_back({1, rho_base, {}});
    // DFS over subsets with the lcm constraint
    std::vector<u64> chosen;
    auto dfs = [&](auto&& self, std::size_t i, u64 d, u64 l) -> void {
        for (std::size_t j = i; j < primes.size(); ++j) {
            u64 nl = lcm_u64(l, primes[j].second);
            if (nl >= M) continue;
            u128 nd = static_cast<u128>(d) * primes[j].first;
            if (nd > static_cast<u128>(1) << 62) continue;  // beyond any feasible use
            chosen.push_back(primes[j].first);
            out.push_back({static_cast<u64>(nd), nl, chosen});
            self(self, j + 1, static_cast<u64>(nd), nl);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, 1, rho_base);
    std::sort(out.begin(), out.end(), [](const CandidateD& a, const CandidateD& b) {
        return std::tie(a.rho, a.d) < std::tie(b.rho, b.d);
    });
    return out;
}

namespace {

struct HalfResult {
    RInterval sum;
    std::vector<C1C2Row> rows;
    int skipped = 0;
};

HalfResult c_half(u64 M, u64 base, u64 dp_cap) {
    HalfResult hr;
    hr.sum = RInterval::point(0.0);
    mpq_class invM(1, static_cast<unsigned long>(M));
    for (const auto& cand : candidate_d_enum(M, base)) {
        C1C2Row row;
        row.d = cand.d;
        row.rho = cand.rho;
        mpq_class cd = c_of_squarefree(cand.primes);
        bool feasible = cand.d <= dp_cap / base && base * cand.d <= dp_cap;
        if (feasible) {
            u64 rho = cand.rho;
            u128 n = pair_count_fast(base * cand.d, rho, 7);
            mpq_class inv_beta(mpz_from_u128(n), rho_pow_14(rho));
            inv_beta.canonicalize();
            row.exact = true;
            row.inv_beta = inv_beta.get_str();
            if (inv_beta <= invM) {
                row.dropped = true;  // beta >= M: outside the sum
                row.term = RInterval::point(0.0);
            } else {
                mpq_class term = (inv_beta - invM) / cd;
                term.canonicalize();
                row.term = rat_interval(term);
            }
        } else {
            // rigorous fallback: n_q(7) <= rho^13 (the last exponent is
            // determined), so 1/beta <= 1/rho
            ++hr.skipped;
            mpq_class bound(1, static_cast<unsigned long>(cand.rho));
            row.inv_beta = "<=" + bound.get_str();
            mpq_class term = (bound - invM) / cd;
            term.canonicalize();
            if (term < 0) term = 0;
            RInterval ti = rat_interval(term);
            row.term = RInterval(0.0, ti.hi);
        }
        hr.sum += row.term;
        hr.rows.push_back(std::move(row));
    }
    return hr;
}

}  // namespace

C1C2Report c1_c2(u64 M, u64 dp_cap) {
    if (M < 10 || M > 64) throw domain_error("c1_c2: M must be in [10, 64]");
    C1C2Report rep;
    rep.M = M;
    auto h1 = c_half(M, 3, dp_cap);
    auto h2 = c_half(M, 15, dp_cap);
    rep.rows1 = std::move(h1.rows);
    rep.rows2 = std::move(h2.rows);
    rep.skipped1 = h1.skipped;
    rep.skipped2 = h2.skipped;

    RInterval c3 = c3_c4(200'000).c3;
    RInterval Mi = RInterval::from_int(static_cast<i64>(M));
    rep.tail_term = (RInterval::from_int(8) * c3 / RInterval::from_int(15)) *
                    exp_euler_gamma_interval() *
                    (RInterval::point(1.0) + log(Mi)) / Mi;

    rep.c1 = h1.sum + rep.tail_term;
    rep.c2 = h2.sum + rep.tail_term;
    rep.c0 = RInterval::from_int(25) / RInterval::from_int(32) * rep.c1 +
             RInterval::from_int(23) / RInterval::from_int(32) * rep.c2;
    return rep;
}

MRatioReport m_ratio_check(unsigned xmax) {
    if (xmax < 9 || xmax > 63) throw domain_error("m_ratio_check: xmax must be in [9, 63]");
    MRatioReport rep;
    rep.all_pass = true;
    std::set<u64> seen;
    mpq_class ratio = 1;
    for (unsigned e = 1; e <= xmax; ++e) {
        u64 mers = (e == 63) ? ~0ULL : (1ULL << e) - 1;
        if (mers > 1) {
            for (auto [p, k] : factorize(mers)) {
                (void)k;
                if (seen.insert(p).second)
                    ratio *= mpq_class(static_cast<unsigned long>(p),
                                       static_cast<unsigned long>(p - 1));
            }
        }
        ratio.canonicalize();
        MRatioRow row;
        row.x = e;
        row.ratio = ratio;
        row.rhs = exp_euler_gamma_interval() * log(RInterval::from_int(e));
        row.checked = (e >= 9);
        if (row.checked) {
            // pass iff ratio <= e^gamma log x certainly: compare against rhs.lo
            RInterval ri = rat_interval(ratio);
            row.pass = ri.hi <= row.rhs.lo;
            if (!row.pass) rep.all_pass = false;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace qwg
