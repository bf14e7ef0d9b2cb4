#include "qwg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "qwg/series.hpp"

namespace qwg {

namespace {

mpq_class window_lo(const mpq_class& eta) { return mpq_class(1, 4) - eta; }
mpq_class window_hi(const mpq_class& eta) { return mpq_class(1, 4) + eta; }

RInterval sqrt_of_rat(const mpq_class& q) { return sqrt(rat_interval(q)); }

}  // namespace

CInterval g_eval(double beta, const mpq_class& eta, GVariant variant) {
    if (eta <= 0 || eta >= mpq_class(1, 5)) throw domain_error("g_eval: eta must be in (0, 0.2)");
    mpq_class lo_t = window_lo(eta), hi_t = window_hi(eta);
    if (variant == GVariant::plus) {
        lo_t -= eta * eta;
        hi_t += eta * eta;
    }
    RInterval a = sqrt_of_rat(lo_t), b = sqrt_of_rat(hi_t);
    RInterval len = b - a;

    // |f''| <= 4 pi |beta| + 16 pi^2 b^2 beta^2; composite midpoint error
    // (b-a) h^2 M2 / 24
    double ab = std::abs(beta);
    double m2 = 4.0 * 3.15 * ab + 16.0 * 9.9 * (b.hi * b.hi) * ab * ab;
    double tol = 1e-13;
    int n = 64;
    double w = len.hi;
    while (n < (1 << 20) && w * (w / n) * (w / n) * m2 / 24.0 > tol) n *= 2;

    CInterval sum;
    RInterval bi = RInterval::around(beta);
    for (int i = 0; i < n; ++i) {
        // midpoint of cell i on the exact endpoints: a + (i + 1/2) * (b - a)/n
        RInterval m = a + (b - a) * (RInterval::from_int(2 * i + 1) / RInterval::from_int(2 * n));
        RInterval h = (b - a) / RInterval::from_int(n);
        CInterval f = unit_phase_interval(m * m * bi);
        sum += CInterval{f.re * h, f.im * h};
    }
    double err = len.hi * (len.hi / n) * (len.hi / n) * m2 / 24.0 + 1e-30;
    RInterval e{-round_up(err), round_up(err)};
    return {sum.re + e, sum.im + e};
}

// ---------------------------------------------------------------------------
// piecewise interval functions on an exact rational uniform grid
// ---------------------------------------------------------------------------

namespace {

struct PwConst {
    mpq_class x0, dx;
    std::vector<RInterval> c;
};

struct PwLinear {
    mpq_class x0, dx;
    std::vector<RInterval> A, B;  // cell i: A[i](1-theta) + B[i] theta

    mpq_class end() const { return x0 + dx * static_cast<long>(A.size()); }

    RInterval eval(const mpq_class& s) const {
        mpq_class rel = (s - x0) / dx;
        if (rel < 0 || rel > static_cast<long>(A.size())) return RInterval::point(0.0);
        long i = static_cast<long>(mpz_class(rel.get_num() / rel.get_den()).get_si());
        if (i == static_cast<long>(A.size())) --i;
        mpq_class theta = rel - i;
        RInterval th = rat_interval(theta);
        RInterval om = RInterval::point(1.0) - th;
        return A[static_cast<std::size_t>(i)] * om + B[static_cast<std::size_t>(i)] * th;
    }
};

// bracket 1/(2 sqrt t) by a constant interval per cell (decreasing on t > 0)
PwConst psi_pw(const mpq_class& t0, const mpq_class& t1, int cells) {
    PwConst f;
    f.x0 = t0;
    f.dx = (t1 - t0) / cells;
    f.c.resize(static_cast<std::size_t>(cells));
    RInterval half = RInterval::point(0.5);
    mpq_class a = t0;
    for (int i = 0; i < cells; ++i) {
        mpq_class b = t0 + f.dx * (i + 1);
        RInterval lo_val = half / sqrt_of_rat(b);   // value at right end (smaller)
        RInterval hi_val = half / sqrt_of_rat(a);   // value at left end (larger)
        f.c[static_cast<std::size_t>(i)] = RInterval(lo_val.lo, hi_val.hi);
        a = b;
    }
    return f;
}

PwLinear conv(const PwConst& f, const PwConst& g) {
    if (f.dx != g.dx) throw domain_error("conv: grids must share dx");
    std::size_t nf = f.c.size(), ng = g.c.size();
    std::vector<RInterval> s(nf + ng - 1, RInterval::point(0.0));
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < ng; ++j) s[i + j] += f.c[i] * g.c[j];
    RInterval dxi = rat_interval(f.dx);
    PwLinear r;
    r.x0 = f.x0 + g.x0;
    r.dx = f.dx;
    std::size_t n = nf + ng;
    r.A.resize(n);
    r.B.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        RInterval sk_m1 = (k == 0) ? RInterval::point(0.0) : s[k - 1] * dxi;
        RInterval sk = (k < s.size()) ? s[k] * dxi : RInterval::point(0.0);
        r.A[k] = sk_m1;
        r.B[k] = sk;
    }
    return r;
}

PwLinear reflect(const PwLinear& p) {
    PwLinear r;
    std::size_t n = p.A.size();
    r.dx = p.dx;
    r.x0 = -(p.x0 + p.dx * static_cast<long>(n));
    r.A.resize(n);
    r.B.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.A[i] = p.B[n - 1 - i];
        r.B[i] = p.A[n - 1 - i];
    }
    return r;
}

// int P(s) Q(c - s) ds, exact breakpoint merging
RInterval pair_integral(const PwLinear& P, const PwLinear& Q, const mpq_class& c) {
    mpq_class lo = P.x0, hi = P.end();
    mpq_class qlo = c - Q.end(), qhi = c - Q.x0;
    if (qlo > lo) lo = qlo;
    if (qhi < hi) hi = qhi;
    if (lo >= hi) return RInterval::point(0.0);

    // breakpoints of both grids inside [lo, hi]
    std::vector<mpq_class> pts;
    pts.push_back(lo);
    pts.push_back(hi);
    {
        mpq_class i0 = (lo - P.x0) / P.dx;
        long i = static_cast<long>(mpz_class(i0.get_num() / i0.get_den()).get_si());
        for (mpq_class x = P.x0 + P.dx * i; x < hi; x += P.dx)
            if (x > lo) pts.push_back(x);
        mpq_class j0 = (c - hi - Q.x0) / Q.dx;
        long j = static_cast<long>(mpz_class(j0.get_num() / j0.get_den()).get_si());
        for (mpq_class x = c - (Q.x0 + Q.dx * j); x > lo; x -= Q.dx)
            if (x < hi) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    RInterval total = RInterval::point(0.0);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const mpq_class& u = pts[k];
        const mpq_class& v = pts[k + 1];
        RInterval pu = P.eval(u), pv = P.eval(v);
        RInterval qu = Q.eval(c - u), qv = Q.eval(c - v);
        RInterval seg = rat_interval(v - u);
        // int_0^1 (pu + (pv-pu) t)(qu + (qv-qu) t) dt
        RInterval cross = pu * qu + (pu * (qv - qu) + qu * (pv - pu)) / RInterval::from_int(2) +
                          (pv - pu) * (qv - qu) / RInterval::from_int(3);
        total += seg * cross;
    }
    return total;
}

}  // namespace

struct SingularIntegralEvaluator::Impl {
    mpq_class eta;
    int cells = 0;
    PwLinear pair_plain;      // psi * psi
    PwLinear pair_plain_ref;  // reflect(psi * psi)
    PwLinear pair_plus_ref;   // reflect(psi * psi_plus)
};

SingularIntegralEvaluator::SingularIntegralEvaluator(const mpq_class& eta, int cells)
    : impl_(new Impl) {
    if (eta <= 0 || eta >= mpq_class(1, 5))
        throw domain_error("SingularIntegralEvaluator: eta must be in (0, 0.2)");
    if (cells < 8) throw domain_error("SingularIntegralEvaluator: too few cells");
    // grid must divide both the plain window (2 eta) and the eta^2 extension:
    // cells multiple of denominator(eta) makes m * eta an integer
    mpq_class e = eta;
    e.canonicalize();
    long den = static_cast<long>(e.get_den().get_si());
    long m = ((cells + den - 1) / den) * den;
    impl_->eta = e;
    impl_->cells = static_cast<int>(m);

    mpq_class t0 = window_lo(e), t1 = window_hi(e);
    mpq_class dx = (t1 - t0) / m;
    PwConst psi = psi_pw(t0, t1, static_cast<int>(m));
    // plus window adds eta^2 on both sides: exactly m*eta extra cells per side
    mpq_class ext = e * e;
    mpq_class cells_ext_q = ext / dx;
    long cells_ext = static_cast<long>(mpz_class(cells_ext_q.get_num() / cells_ext_q.get_den()).get_si());
    if (mpq_class(cells_ext) != cells_ext_q)
        throw domain_error("SingularIntegralEvaluator: grid does not divide eta^2 extension");
    PwConst psi_plus = psi_pw(t0 - ext, t1 + ext, static_cast<int>(m + 2 * cells_ext));

    impl_->pair_plain = conv(psi, psi);
    impl_->pair_plain_ref = reflect(impl_->pair_plain);
    impl_->pair_plus_ref = reflect(conv(psi, psi_plus));
}

SingularIntegralEvaluator::~SingularIntegralEvaluator() { delete impl_; }
SingularIntegralEvaluator::SingularIntegralEvaluator(SingularIntegralEvaluator&& o) noexcept
    : impl_(o.impl_) {
    o.impl_ = nullptr;
}

int SingularIntegralEvaluator::cells() const { return impl_->cells; }

RInterval SingularIntegralEvaluator::eval(IntegralKind kind, const mpq_class& h) const {
    switch (kind) {
        case IntegralKind::I:
            return pair_integral(impl_->pair_plain, impl_->pair_plain, h);
        case IntegralKind::J:
            return pair_integral(impl_->pair_plain, impl_->pair_plain_ref, h);
        case IntegralKind::Jplus:
            return pair_integral(impl_->pair_plain, impl_->pair_plus_ref, h);
    }
    throw domain_error("singular_integral: unknown kind");
}

RInterval singular_integral(IntegralKind kind, const mpq_class& h, const mpq_class& eta,
                            int cells) {
    SingularIntegralEvaluator ev(eta, cells);
    return ev.eval(kind, h);
}

// ---------------------------------------------------------------------------
// prime-square pair tables
// ---------------------------------------------------------------------------

namespace {

struct PairTable {
    std::vector<u64> primes;
    std::unordered_map<u64, u64> count;    // ordered pair count of p1^2+p2^2
    std::unordered_map<u64, double> wsum;  // sum of log p1 log p2
};

std::vector<u64> window_primes(u64 N, const mpq_class& eta) {
    mpq_class lo_q = window_lo(eta) * static_cast<long>(N);
    mpq_class hi_q = window_hi(eta) * static_cast<long>(N);
    double hi_d = std::sqrt(mpq_get_d(hi_q.get_mpq_t())) + 2.0;
    std::vector<u64> out;
    for (u32 p : primes_up_to(static_cast<u64>(hi_d) + 2)) {
        mpq_class p2(static_cast<unsigned long>(p) * p);
        if (p2 >= lo_q && p2 <= hi_q) out.push_back(p);
    }
    return out;
}

PairTable build_pairs(const std::vector<u64>& primes) {
    PairTable t;
    t.primes = primes;
    t.count.reserve(primes.size() * primes.size() * 2);
    t.wsum.reserve(primes.size() * primes.size() * 2);
    std::vector<double> logs(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i)
        logs[i] = std::log(static_cast<double>(primes[i]));
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = 0; j < primes.size(); ++j) {
            u64 s = primes[i] * primes[i] + primes[j] * primes[j];
            t.count[s] += 1;
            t.wsum[s] += logs[i] * logs[j];
        }
    return t;
}

// ordered quadruple count / weight for one target via the pair table
void lookup_target(const PairTable& t, u64 n, u64& count, double& weighted) {
    count = 0;
    double sum = 0.0, comp = 0.0;  // Kahan
    for (const auto& [s, c] : t.count) {
        if (s >= n) continue;
        auto it = t.count.find(n - s);
        if (it == t.count.end()) continue;
        count += c * it->second;
        double term = t.wsum.at(s) * t.wsum.at(n - s);
        double y = term - comp;
        double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
    }
    weighted = sum;
}

}  // namespace

WindowStats count4_window(u64 N, const mpq_class& eta, const std::vector<u64>& targets,
                          u64 pmax) {
    if (N > 1'000'000'000ULL) throw resource_error("count4_window: N above desk-scale cap");
    WindowStats ws;
    ws.N = N;
    ws.eta = eta;
    auto primes = window_primes(N, eta);
    ws.primes_in_window = primes.size();
    PairTable table = build_pairs(primes);

    SingularIntegralEvaluator ev(eta, 400);
    double sum_ratio = 0.0, sum_sq = 0.0;
    std::size_t used = 0;
    for (u64 n : targets) {
        WindowRow row;
        row.n = n;
        lookup_target(table, n, row.count, row.weighted);
        RInterval ss = singular_series(static_cast<i64>(n), pmax).value;
        mpq_class h(static_cast<unsigned long>(n), static_cast<unsigned long>(N));
        h.canonicalize();
        RInterval ii = ev.eval(IntegralKind::I, h);
        row.prediction = ss * ii * RInterval::from_int(static_cast<i64>(N));
        double mid = row.prediction.mid();
        row.ratio = (mid > 0) ? row.weighted / mid : 0.0;
        if (mid > 0) {
            sum_ratio += row.ratio;
            sum_sq += row.ratio * row.ratio;
            ++used;
        }
        ws.rows.push_back(row);
    }
    if (used > 0) {
        ws.mean_ratio = sum_ratio / static_cast<double>(used);
        double var = sum_sq / static_cast<double>(used) - ws.mean_ratio * ws.mean_ratio;
        ws.ratio_stddev = var > 0 ? std::sqrt(var) : 0.0;
    }
    return ws;
}

FullRangeCount count4_full_range(u64 n) {
    FullRangeCount r;
    r.n = n;
    std::vector<u64> primes;
    for (u32 p : primes_up_to(static_cast<u64>(std::sqrt(static_cast<double>(n))) + 2))
        if (static_cast<u64>(p) * p <= n) primes.push_back(p);
    PairTable table = build_pairs(primes);
    lookup_target(table, n, r.count, r.weighted);
    return r;
}

RiegerResult rieger_sum(u64 N, const mpq_class& eta) {
    if (N > 1'000'000'000ULL) throw resource_error("rieger_sum: N above desk-scale cap");
    RiegerResult r;
    auto primes = window_primes(N, eta);
    r.primes_in_window = primes.size();
    PairTable table = build_pairs(primes);
    double total = 0.0, comp = 0.0;
    for (const auto& [s, w] : table.wsum) {
        (void)s;
        double term = w * w;
        double y = term - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    r.total = total;
    double dsum = 0.0;
    for (u64 p : primes) {
        double lp = std::log(static_cast<double>(p));
        dsum += lp * lp;
    }
    r.diagonal = dsum * dsum;
    double nd = static_cast<double>(N);
    r.ratio_to_nlogsq = total / (nd * std::log(nd) * std::log(nd));
    return r;
}

QuadCount lemma_j(u64 P, u64 cap) {
    if (P == 0) throw domain_error("lemma_j: P must be positive");
    if (P > cap) throw resource_error("lemma_j: P above memory cap");
    QuadCount qc;
    qc.P = P;
    std::vector<u32> tau(P + 1, 0);
    for (u64 d = 1; d <= P; ++d)
        for (u64 x = d; x <= P; x += d) tau[x] += 1;
    std::vector<u32> w(2 * P * P + 1, 0);
    for (u64 x = 1; x <= P; ++x)
        for (u64 y = 1; y <= P; ++y) w[x * x + y * y] += tau[x] * tau[y];
    u128 total = 0;
    for (u64 s = 0; s < w.size(); ++s) total += static_cast<u128>(w[s]) * w[s];
    mpz_class two64;
    mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
    qc.j_total = mpz_class(static_cast<unsigned long>(total >> 64)) * two64 +
                 mpz_class(static_cast<unsigned long>(total & ~0ULL));
    mpz_class dsum = 0;
    for (u64 x = 1; x <= P; ++x) dsum += mpz_class(tau[x]) * tau[x];
    qc.j_diag = dsum * dsum;
    qc.j_offdiag = qc.j_total - qc.j_diag;
    return qc;
}

MertensResult mertens_check(u64 z) {
    if (z < 3) throw domain_error("mertens_check: z must be >= 3");
    MertensResult m;
    m.z = z;
    RInterval prod = RInterval::point(1.0);
    for (u32 p : primes_up_to(z - 1)) {
        if (p >= z) break;
        RInterval pi = RInterval::from_int(p);
        prod *= (pi - RInterval::point(1.0)) / pi;
    }
    m.product = prod;
    m.reference = (RInterval::point(1.0) / exp_euler_gamma_interval()) /
                  log(RInterval::from_int(static_cast<i64>(z)));
    m.ratio = m.product / m.reference;
    return m;
}

}  // namespace qwg
