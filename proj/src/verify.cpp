#include "qwg/verify.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <json.hpp>

#include "qwg/analysis.hpp"
#include "qwg/arith.hpp"
#include "qwg/assembly.hpp"
#include "qwg/localsums.hpp"
#include "qwg/powers2.hpp"
#include "qwg/series.hpp"

namespace qwg {

namespace {

using Clock = std::chrono::steady_clock;

// best rational approximation with a small denominator (continued fractions);
// config carries eta as a double, the kernels want an exact rational
mpq_class rat_approx(double x, long maxden = 10'000) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        long a = static_cast<long>(std::floor(v));
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > maxden) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = v - static_cast<double>(a);
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    mpq_class r(p1, q1);
    r.canonicalize();
    return r;
}

struct Timer {
    Clock::time_point t0 = Clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    }
};

VerifyEntry make_entry(const std::string& name, RInterval enc, Cmp cmp, double tlo,
                       double thi = 0.0) {
    VerifyEntry e;
    e.name = name;
    e.enclosure = enc;
    e.cmp = cmp;
    e.target_lo = tlo;
    e.target_hi = (cmp == Cmp::inside) ? thi : tlo;
    switch (cmp) {
        case Cmp::le: e.pass = enc.hi <= tlo; break;
        case Cmp::ge: e.pass = enc.lo >= tlo; break;
        case Cmp::eq: e.pass = enc.lo == tlo && enc.hi == tlo; break;
        case Cmp::inside: e.pass = enc.lo > tlo && enc.hi < thi; break;
        case Cmp::none: e.pass = true; break;
    }
    return e;
}

VerifyEntry bool_entry(const std::string& name, bool ok, const std::string& notes = "") {
    VerifyEntry e;
    e.name = name;
    e.enclosure = RInterval::point(ok ? 1.0 : 0.0);
    e.cmp = Cmp::eq;
    e.target_lo = e.target_hi = 1.0;
    e.pass = ok;
    e.notes = notes;
    return e;
}

}  // namespace

VerifyReport verify_all(const VerifyConfig& config) {
    VerifyReport rep;
    rep.config = config;
    auto add = [&rep](VerifyEntry e, const Timer& t, bool mandatory = true,
                      const std::string& extra_notes = "") {
        e.runtime_ms = t.ms();
        e.mandatory = mandatory;
        if (!extra_notes.empty()) e.notes = e.notes.empty() ? extra_notes : e.notes + "; " + extra_notes;
        rep.entries.push_back(std::move(e));
    };
    // a resource error inside one step becomes a skipped entry; overall
    // verdict fails only when a mandatory entry is skipped
    auto step = [&rep](const std::string& name, bool mandatory, auto&& fn) {
        Timer t;
        try {
            fn();
        } catch (const resource_error& ex) {
            VerifyEntry e;
            e.name = name;
            e.cmp = Cmp::none;
            e.pass = !mandatory;
            e.mandatory = mandatory;
            e.notes = std::string("skipped: ") + ex.what();
            e.runtime_ms = t.ms();
            rep.entries.push_back(std::move(e));
        }
    };

    // 1. order of 2 mod 15015
    step("order2_15015", true, [&] {
        Timer t;
        u64 ord = mult_order2(15015);
        add(make_entry("order2_15015", RInterval::point(static_cast<double>(ord)), Cmp::eq, 60.0), t);
    });

    // 6. dyadic factor = 4 for 3 <= k <= 40
    step("dyadic_factor_3_40", true, [&] {
        Timer t;
        bool ok = true;
        for (unsigned k = 3; k <= 40 && ok; ++k) ok = (dyadic_factor(k) == 4);
        ok = ok && dyadic_factor(1) == 1 && dyadic_factor(2) == 2;
        add(bool_entry("dyadic_factor_3_40", ok, "dyadic_factor(k) == 4 for all 3 <= k <= 40"), t);
    });

    // 9. sum_A identity for primes p <= 100
    step("sum_A_identity_100", true, [&] {
        Timer t;
        bool ok = true;
        for (u32 p : primes_up_to(100)) ok = ok && sum_A_identity(p).exact_equal;
        add(bool_entry("sum_A_identity_100", ok, "sum_{j<=p}(1+A(j,p)) == p, all p <= 100"), t);
    });

    // 7. local identity sweep, 2 < p <= 199, |h| <= 50
    step("local_identity_199_50", true, [&] {
        Timer t;
        bool ok = true;
        int degenerate = 0;
        for (u32 p : primes_up_to(199)) {
            if (p == 2) continue;
            auto ads = a_d_local_sweep(p, -50, 50);
            mpz_class pm1 = static_cast<long>(p - 1);
            mpz_class pz = static_cast<long>(p);
            for (i64 h = -50; h <= 50; ++h) {
                auto om = omega_local(p, h);
                mpq_class rhs = 1 + mpq_class(bbold(p, h).exact, pm1 * pm1 * pm1 * pm1);
                rhs.canonicalize();
                if (om.degenerate) {
                    ++degenerate;
                    if (rhs != 0) ok = false;  // vanishing middle forces rhs = 0
                    continue;
                }
                mpq_class lhs = (1 - om.omega / pz) * mpq_class(pz, pm1) *
                                (1 + mpq_class(ads[static_cast<std::size_t>(h + 50)],
                                               pz * pm1 * pm1 * pm1));
                lhs.canonicalize();
                if (lhs != rhs) ok = false;
            }
        }
        add(bool_entry("local_identity_199_50", ok,
                       "degenerate middle factors: " + std::to_string(degenerate)), t);
    });

    // 8. bbold exact vs closed form, odd p <= 500, |h| <= 50
    step("bbold_table_500_50", true, [&] {
        Timer t;
        long mismatches = 0;
        for (u32 p : primes_up_to(500)) {
            if (p == 2) continue;
            for (i64 h = -50; h <= 50; ++h) {
                auto v = bbold(p, h);
                if (v.exact != v.closed_form) ++mismatches;
            }
        }
        add(make_entry("bbold_table_500_50", RInterval::point(static_cast<double>(mismatches)),
                       Cmp::eq, 0.0), t);
    });

    // 4. c3, c4
    step("c3_c4", true, [&] {
        Timer t;
        auto cc = c3_c4();
        add(make_entry("c3", cc.c3, Cmp::le, 1.3904), t);
        add(make_entry("c4", cc.c4, Cmp::le, 0.9743), t);
    });

    // 5. c1, c2, c0
    RInterval c0_computed;
    step("c0", true, [&] {
        Timer t;
        auto r = c1_c2(config.M, config.dp_modulus_cap);
        c0_computed = r.c0;
        add(make_entry("c1c2_tail_term", r.tail_term, Cmp::none, 0.0), t);
        VerifyEntry e1 = make_entry("c1_upper", r.c1, Cmp::none, 0.0);
        e1.notes = "skipped moduli (rho-bound fallback): " + std::to_string(r.skipped1);
        add(std::move(e1), t);
        VerifyEntry e2 = make_entry("c2_upper", r.c2, Cmp::none, 0.0);
        e2.notes = "skipped moduli (rho-bound fallback): " + std::to_string(r.skipped2);
        add(std::move(e2), t);
        add(make_entry("c0", r.c0, Cmp::le, 0.69), t);
    });

    // 3. prime product / C1
    PrimeProduct51 pp;
    step("primeprod51", true, [&] {
        Timer t;
        pp = prime_product_51();
        add(make_entry("primeprod51_head", pp.head, Cmp::ge, 0.904923), t);
        VerifyEntry e = make_entry("primeprod51_C1", pp.c1, Cmp::ge, 0.904811);
        e.notes = "computed tail (1-1/48610)^6 = " + pp.tail.str() +
                  "; the published tail print does not match the formula (flagged)";
        add(std::move(e), t);
    });

    // 2. maxexp(15015) and slack
    MaxExpResult mx;
    step("maxexp_15015", true, [&] {
        Timer t;
        if (pp.c1.hi == 0.0) throw resource_error("prime product unavailable");
        mx = maxexp(15015, {35, 44});
        add(make_entry("maxexp_15015", mx.max_abs, Cmp::inside, 34.5, 34.6), t);
        VerifyEntry s35 = make_entry("slack_35", mx.slack.at(35), Cmp::none, 0.0);
        s35.notes = "published figure < 1e-7 does not reproduce; recomputed value reported "
                    "(the downstream check is what the final bound needs)";
        add(std::move(s35), t);
        add(make_entry("slack_44", mx.slack.at(44), Cmp::none, 0.0), t);
        RInterval downstream = RInterval::from_int(8) * pp.c1 *
                               (RInterval::point(1.0) - mx.slack.at(44));
        add(make_entry("downstream_8C1", downstream, Cmp::ge, 7.2), t);
    });

    // 12. residue counts at q = 15015, k = 35, ten residues a = 0 mod 3
    step("residue_band_15015_35", true, [&] {
        Timer t;
        if (mx.q == 0) throw resource_error("maxexp unavailable");
        auto dist = power_sum_distribution(15015, 35);
        bool ok = true;
        // a_j = 0 mod 3, a_j = j mod 5005 (CRT), j = 1..10
        for (u64 j = 1; j <= 10; ++j) {
            u64 a = 0;
            for (u64 cand = j; cand < 15015; cand += 5005)
                if (cand % 3 == 0) { a = cand; break; }
            auto rc = residue_count_from(dist, a, mx.max_abs);
            ok = ok && rc.band_pass;
        }
        add(bool_entry("residue_band_15015_35", ok,
                       "ten residues a = 0 (3), a = j (5005); DFT band rho^35/3q (1 +- slack)"), t);
    });

    // 11. m(x)/phi(m(x)) <= e^gamma log x for 9 <= x <= 40
    step("m_ratio_9_40", true, [&] {
        Timer t;
        auto mr = m_ratio_check(40);
        add(bool_entry("m_ratio_9_40", mr.all_pass), t);
    });

    // 15. singular integral vs density oracle + chain
    RInterval ji_ratio;
    step("singular_integral_I_1", true, [&] {
        Timer t;
        mpq_class eta = rat_approx(config.eta_integral);
        SingularIntegralEvaluator ev(eta, 2000);
        RInterval i1 = ev.eval(IntegralKind::I, 1);
        RInterval j0 = ev.eval(IntegralKind::J, 0);
        RInterval jp0 = ev.eval(IntegralKind::Jplus, 0);
        // oracle: center value of the four-fold box convolution, (2/3)(2 eta)^3
        double oracle = (2.0 / 3.0) * 8.0 * 1e-6;
        add(make_entry("singular_integral_I_1", i1, Cmp::inside, oracle * 0.95, oracle * 1.05), t);
        bool chain = i1.lo <= j0.lo && i1.hi <= j0.hi && j0.lo <= jp0.lo && j0.hi <= jp0.hi;
        add(bool_entry("integral_chain", chain, "I(1) <= J(0) <= J+(0) endpoint-wise"), t);
        ji_ratio = j0 / i1;
        if (ji_ratio.lo < 1.0) ji_ratio = RInterval(1.0, std::max(1.0, ji_ratio.hi));
    });

    // 10. final margin ladder at the certified constant c0 = 0.69
    step("final_margin", true, [&] {
        Timer t;
        if (ji_ratio.hi == 0.0) throw resource_error("singular integrals unavailable");
        MarginInput in;
        in.lambda = config.lambda;
        in.c0 = RInterval::around(0.69);
        in.ji_ratio = ji_ratio;
        auto fm = final_margin(in);
        add(make_entry("margin_44", fm.margin44, Cmp::none, 0.0), t);
        add(bool_entry("margin_44_positive", fm.margin44.lo > 0.0), t);
        add(bool_entry("margin_43_negative", fm.margin43.hi < 0.0), t);
        add(make_entry("minimal_k", RInterval::point(fm.minimal_k), Cmp::eq, 44.0), t);

        MarginInput in2 = in;
        in2.c0 = c0_computed;
        auto fm2 = final_margin(in2);
        VerifyEntry e = make_entry("minimal_k_computed_c0", RInterval::point(fm2.minimal_k),
                                   Cmp::none, 0.0);
        e.notes = "informational: margin ladder at the computed c0 enclosure " +
                  c0_computed.str();
        e.mandatory = false;
        add(std::move(e), t, false);
    });

    // mertens sanity
    step("mertens_ratio_1e4", true, [&] {
        Timer t;
        auto m = mertens_check(10'000);
        add(make_entry("mertens_ratio_1e4", m.ratio, Cmp::inside, 0.95, 1.05), t);
    });

    // 14. optional statistical suite
    if (config.full) step("count4_mean_ratio", true, [&] {
        Timer t;
        u64 N = 400'000'004;  // 4 mod 8
        mpq_class eta = rat_approx(config.eta_count);
        std::vector<u64> targets;
        u64 lo = static_cast<u64>(0.92 * static_cast<double>(N));
        u64 n0 = lo + ((4 + 24 - lo % 24) % 24);  // first n >= lo with n = 4 mod 24
        for (u64 n = n0; targets.size() < 220; n += 24 * 8191) targets.push_back(n);
        auto ws = count4_window(N, eta, targets, config.pmax_series);
        VerifyEntry e = make_entry("count4_mean_ratio", RInterval::point(ws.mean_ratio),
                                   Cmp::inside, 0.5, 1.5);
        e.notes = "targets: " + std::to_string(ws.rows.size()) +
                  ", window primes: " + std::to_string(ws.primes_in_window) +
                  ", ratio stddev: " + std::to_string(ws.ratio_stddev);
        add(std::move(e), t);
    });

    rep.overall = true;
    for (const auto& e : rep.entries)
        if (e.mandatory && !e.pass) rep.overall = false;

    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    rep.generated_at = buf;
    return rep;
}

std::string VerifyReport::to_json(bool include_timings) const {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["config"] = {{"eta_count", config.eta_count},
                   {"eta_integral", config.eta_integral},
                   {"pmax_series", config.pmax_series},
                   {"dp_modulus_cap", config.dp_modulus_cap},
                   {"M", config.M},
                   {"lambda", config.lambda},
                   {"seed", config.seed},
                   {"full", config.full}};
    nlohmann::ordered_json jentries = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json je;
        je["name"] = e.name;
        je["lo"] = e.enclosure.lo;
        je["hi"] = e.enclosure.hi;
        switch (e.cmp) {
            case Cmp::le: je["cmp"] = "<="; je["target"] = e.target_lo; break;
            case Cmp::ge: je["cmp"] = ">="; je["target"] = e.target_lo; break;
            case Cmp::eq: je["cmp"] = "=="; je["target"] = e.target_lo; break;
            case Cmp::inside:
                je["cmp"] = "in";
                je["target"] = {e.target_lo, e.target_hi};
                break;
            case Cmp::none: je["cmp"] = "report"; break;
        }
        je["verdict"] = e.pass ? "pass" : "fail";
        je["mandatory"] = e.mandatory;
        if (!e.notes.empty()) je["notes"] = e.notes;
        jentries.push_back(std::move(je));
    }
    j["entries"] = std::move(jentries);
    j["overall"] = overall ? "pass" : "fail";
    if (include_timings) {
        j["generated_at"] = generated_at;
        nlohmann::ordered_json timings = nlohmann::ordered_json::array();
        for (const auto& e : entries)
            timings.push_back({{"name", e.name}, {"runtime_ms", e.runtime_ms}});
        j["timings"] = std::move(timings);
    }
    return j.dump(2);
}

}  // namespace qwg
