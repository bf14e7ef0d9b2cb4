// qwg: command-line front end.
//
// Exit codes: 0 pass, 1 execution error, 2 verification failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwg/analysis.hpp"
#include "qwg/arith.hpp"
#include "qwg/assembly.hpp"
#include "qwg/localsums.hpp"
#include "qwg/powers2.hpp"
#include "qwg/series.hpp"
#include "qwg/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

json iv(const qwg::RInterval& r) { return {{"lo", r.lo}, {"hi", r.hi}}; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

mpq_class parse_rational(const std::string& s) {
    // accepts "p/q" or a decimal literal
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q(s);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return mpq_class(mpz_class(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class num(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suite for the four-prime-squares + powers-of-2 constants"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");

    // verify-all
    auto* sc_all = app.add_subcommand("verify-all", "run the full constant-verification pipeline");
    bool full = false;
    std::string config_path, out_path;
    sc_all->add_flag("--full", full, "include the statistical counting suite");
    sc_all->add_option("--config", config_path, "JSON config file");
    sc_all->add_option("--out", out_path, "write the report to this path");
    unsigned opt_M = 40, opt_dp_cap = 1'000'000, opt_pmax = 100'000;
    sc_all->add_option("--M", opt_M);
    sc_all->add_option("--dp-cap", opt_dp_cap);
    sc_all->add_option("--pmax", opt_pmax);

    // simple numeric options shared by the per-operation subcommands
    qwg::u64 q = 15015, n = 4, d = 1, N = 1'000'004, P = 2, z = 100, Mopt = 40;
    qwg::i64 h = 1;
    int t = 7, L = 12, k = 35, xmax = 40, cells = 2000;
    unsigned kmax = 40, p = 5;
    double lambda = 0.887167, c0in = 0.69, beta_arg = 0.0;
    std::string eta_str = "1/100", kind_str = "I", h_str = "1", mode_str = "lemma43";
    std::string window_str;
    bool csv = false;

    auto* sc_order = app.add_subcommand("order", "multiplicative order of 2 mod q");
    sc_order->add_option("--q", q)->required();

    auto* sc_lf = app.add_subcommand("local-factor", "A(n,q) = B(n,q)/phi(q)^4");
    sc_lf->add_option("--n", n)->required();
    sc_lf->add_option("--q", q)->required();

    auto* sc_bb = app.add_subcommand("bbold", "BB(p,h), counting value vs closed form");
    sc_bb->add_option("--p", p)->required();
    sc_bb->add_option("--h", h)->required();

    auto* sc_dy = app.add_subcommand("dyadic-factor", "1 + sum of 2-adic terms up to kmax");
    sc_dy->add_option("--kmax", kmax);

    auto* sc_ss = app.add_subcommand("sseries", "singular series SS(n) enclosure");
    sc_ss->add_option("--n", n)->required();
    sc_ss->add_option("--pmax", opt_pmax);

    auto* sc_sb = app.add_subcommand("sbold", "SB(h) enclosure");
    sc_sb->add_option("--h", h)->required();
    sc_sb->add_option("--pmax", opt_pmax);

    auto* sc_c34 = app.add_subcommand("c3c4", "the constants c3 and c4");
    qwg::u64 c34_pmax = 20'000'000;
    sc_c34->add_option("--pmax", c34_pmax);

    auto* sc_r7 = app.add_subcommand("sum-r7", "weighted r_7 sums (lemma42/lemma43 modes)");
    sc_r7->add_option("--L", L);
    sc_r7->add_option("--mode", mode_str)->check(CLI::IsMember({"lemma42", "lemma43"}));
    sc_r7->add_option("--c0", c0in);

    bool json_flag = false;  // JSON is the default; flag accepted for symmetry
    auto* sc_rt = app.add_subcommand("rt", "r_t histogram");
    sc_rt->add_option("--t", t)->required();
    sc_rt->add_option("--L", L)->required();
    sc_rt->add_flag("--csv", csv);
    sc_rt->add_flag("--json", json_flag);

    auto* sc_pcc = app.add_subcommand("pcc", "power-sum distribution mod q and n_q(t)");
    sc_pcc->add_option("--q", q)->required();
    sc_pcc->add_option("--t", t)->required();
    sc_pcc->add_flag("--csv", csv);
    sc_pcc->add_flag("--json", json_flag);

    auto* sc_beta = app.add_subcommand("beta", "beta(d) = rho(3d)^14 / n_{3d}(7)");
    sc_beta->add_option("--d", d)->required();

    auto* sc_c12 = app.add_subcommand("c1c2", "c1, c2 upper bounds and c0");
    sc_c12->add_option("--M", Mopt);
    sc_c12->add_option("--dp-cap", opt_dp_cap);

    auto* sc_mr = app.add_subcommand("mratio", "m(x)/phi(m(x)) vs e^gamma log x");
    sc_mr->add_option("--xmax", xmax);

    auto* sc_mx = app.add_subcommand("maxexp", "max_j |sum_s e(j 2^s / q)|");
    sc_mx->add_option("--q", q);
    std::vector<int> klist{35, 44};
    sc_mx->add_option("--k", klist);

    auto* sc_pp = app.add_subcommand("primeprod51", "head/tail products and C1");

    auto* sc_rc = app.add_subcommand("residue-count", "exact #{sum of k powers of 2 = a mod q}");
    sc_rc->add_option("--q", q);
    sc_rc->add_option("--k", k);
    qwg::u64 a_res = 3;
    sc_rc->add_option("--a", a_res);

    auto* sc_sa = app.add_subcommand("sumA", "sum_{j<=p}(1+A(j,p)) identity");
    sc_sa->add_option("--p", p)->required();

    auto* sc_mg = app.add_subcommand("margin", "final margin ladder");
    sc_mg->add_option("--k", k);
    sc_mg->add_option("--lambda", lambda);
    sc_mg->add_option("--c0", c0in);

    auto* sc_c4o = app.add_subcommand("count4", "windowed prime-square quadruple counts");
    sc_c4o->add_option("--N", N)->required();
    sc_c4o->add_option("--eta", eta_str);
    sc_c4o->add_option("--window", window_str, "targets a:b (n = 4 mod 24 inside)");
    sc_c4o->add_option("--pmax", opt_pmax);
    sc_c4o->add_flag("--csv", csv);
    sc_c4o->add_flag("--json", json_flag);

    auto* sc_rg = app.add_subcommand("rieger", "fourth-moment pair-sum collision weight");
    sc_rg->add_option("--N", N)->required();
    sc_rg->add_option("--eta", eta_str);

    auto* sc_lj = app.add_subcommand("lemmaj", "divisor-weighted J at cutoff P");
    sc_lj->add_option("--P", P)->required();
    qwg::u64 lj_cap = 8192;
    sc_lj->add_option("--cap", lj_cap);

    auto* sc_in = app.add_subcommand("integral", "singular integral enclosure");
    sc_in->add_option("--kind", kind_str)->check(CLI::IsMember({"I", "J", "Jplus"}));
    sc_in->add_option("--h", h_str);
    sc_in->add_option("--eta", eta_str);
    sc_in->add_option("--cells", cells);

    auto* sc_me = app.add_subcommand("mertens", "prod (1 - 1/p) vs e^-gamma / log z");
    sc_me->add_option("--z", z)->required();

    auto* sc_ge = app.add_subcommand("geval", "g(beta) enclosure");
    sc_ge->add_option("--beta", beta_arg)->required();
    sc_ge->add_option("--eta", eta_str);

    for (auto* sc : app.get_subcommands({})) sc->set_help_flag("--help", "print help");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc_all) {
            qwg::VerifyConfig cfg;
            cfg.full = full;
            cfg.M = opt_M;
            cfg.dp_modulus_cap = opt_dp_cap;
            cfg.pmax_series = opt_pmax;
            if (!config_path.empty()) {
                std::ifstream f(config_path);
                json jc = json::parse(f);
                if (jc.contains("M")) cfg.M = jc["M"];
                if (jc.contains("dp_modulus_cap")) cfg.dp_modulus_cap = jc["dp_modulus_cap"];
                if (jc.contains("pmax_series")) cfg.pmax_series = jc["pmax_series"];
                if (jc.contains("lambda")) cfg.lambda = jc["lambda"];
                if (jc.contains("full")) cfg.full = jc["full"];
                if (jc.contains("eta_count")) cfg.eta_count = jc["eta_count"];
                if (jc.contains("eta_integral")) cfg.eta_integral = jc["eta_integral"];
            }
            auto rep = qwg::verify_all(cfg);
            std::string out = rep.to_json(true);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                f << out << "\n";
            }
            std::cout << out << "\n";
            return rep.overall ? 0 : 2;
        }
        if (*sc_order) {
            emit({{"q", q}, {"order2", qwg::mult_order2(q)}});
        } else if (*sc_lf) {
            auto a = qwg::a_of(static_cast<qwg::i64>(n), q);
            emit({{"n", n}, {"q", q}, {"B", qwg::b_of(static_cast<qwg::i64>(n), q).get_str()},
                  {"A", a.get_str()}});
        } else if (*sc_bb) {
            auto v = qwg::bbold(p, h);
            emit({{"p", p}, {"h", h}, {"exact", v.exact}, {"closed_form", v.closed_form},
                  {"equal", v.exact == v.closed_form}});
        } else if (*sc_dy) {
            emit({{"kmax", kmax}, {"value", qwg::dyadic_factor(kmax).get_str()}});
        } else if (*sc_ss) {
            auto sv = qwg::singular_series(static_cast<qwg::i64>(n), opt_pmax);
            emit({{"n", n}, {"pmax", sv.pmax}, {"value", iv(sv.value)},
                  {"tail_log_bound", iv(sv.tail_log_bound)}, {"exact_part", sv.exact_part}});
        } else if (*sc_sb) {
            auto sv = qwg::sbold(h, opt_pmax);
            emit({{"h", h}, {"pmax", sv.pmax}, {"value", iv(sv.value)},
                  {"exact_zero", sv.exact_zero}, {"bound_form", iv(sv.bound_form)}});
        } else if (*sc_c34) {
            auto cc = qwg::c3_c4(c34_pmax);
            emit({{"c3", iv(cc.c3)}, {"c4", iv(cc.c4)}, {"pmax", cc.pmax}});
        } else if (*sc_r7) {
            auto mode = mode_str == "lemma42" ? qwg::R7Mode::lemma42 : qwg::R7Mode::lemma43;
            auto r = qwg::sum_r7_weighted(L, mode, qwg::RInterval::around(c0in));
            emit({{"L", r.L}, {"mode", mode_str}, {"lhs", iv(r.lhs)},
                  {"lhs_over_L14", iv(r.lhs_over_l14)}, {"lhs_over_box14", iv(r.lhs_over_box14)},
                  {"rhs_constant", iv(r.rhs_constant)}, {"ratio", iv(r.ratio)},
                  {"symmetric", r.symmetric}});
        } else if (*sc_rt) {
            auto hist = qwg::r_t_histogram(t, L);
            if (csv) {
                std::cout << "h,r_t\n";
                for (qwg::i64 hh = -hist.offset; hh <= hist.offset; hh += 16)
                    if (hist.value(hh)) std::cout << hh << "," << hist.value(hh) << "\n";
            } else {
                emit({{"t", t}, {"L", L}, {"support", hist.offset},
                      {"total", hist.total().get_str()}, {"r_at_0", hist.value(0)},
                      {"r_at_16", hist.value(16)}});
            }
        } else if (*sc_pcc) {
            auto r = qwg::power_congruence_count(q, t);
            if (csv) {
                std::cout << "residue,count\n";
                for (qwg::u64 i = 0; i < r.dist.q; ++i)
                    std::cout << i << "," << r.dist.counts[i].get_str() << "\n";
            } else {
                emit({{"q", q}, {"t", t}, {"rho", r.dist.rho}, {"n", r.n.get_str()}});
            }
        } else if (*sc_beta) {
            emit({{"d", d}, {"beta", qwg::beta(d).get_str()},
                  {"rho_3d", qwg::mult_order2(3 * d)}});
        } else if (*sc_c12) {
            auto r = qwg::c1_c2(Mopt, opt_dp_cap);
            json rows1 = json::array(), rows2 = json::array();
            for (const auto& row : r.rows1)
                rows1.push_back({{"d", row.d}, {"rho", row.rho}, {"exact", row.exact},
                                 {"dropped", row.dropped}, {"inv_beta", row.inv_beta},
                                 {"term", iv(row.term)}});
            for (const auto& row : r.rows2)
                rows2.push_back({{"d", row.d}, {"rho", row.rho}, {"exact", row.exact},
                                 {"dropped", row.dropped}, {"inv_beta", row.inv_beta},
                                 {"term", iv(row.term)}});
            emit({{"M", r.M}, {"c1", iv(r.c1)}, {"c2", iv(r.c2)}, {"c0", iv(r.c0)},
                  {"tail_term", iv(r.tail_term)}, {"skipped1", r.skipped1},
                  {"skipped2", r.skipped2}, {"rows1", rows1}, {"rows2", rows2}});
        } else if (*sc_mr) {
            auto r = qwg::m_ratio_check(static_cast<unsigned>(xmax));
            json rows = json::array();
            for (const auto& row : r.rows)
                rows.push_back({{"x", row.x}, {"ratio", row.ratio.get_str()},
                                {"rhs", iv(row.rhs)}, {"checked", row.checked},
                                {"pass", row.pass}});
            emit({{"xmax", xmax}, {"all_pass", r.all_pass}, {"rows", rows}});
        } else if (*sc_mx) {
            auto r = qwg::maxexp(q, klist);
            json slacks = json::object();
            for (auto& [kk, s] : r.slack) slacks[std::to_string(kk)] = iv(s);
            emit({{"q", r.q}, {"rho", r.rho}, {"max_abs", iv(r.max_abs)},
                  {"attaining_j", r.attaining_j}, {"slack", slacks}});
        } else if (*sc_pp) {
            auto r = qwg::prime_product_51();
            emit({{"head", iv(r.head)}, {"tail", iv(r.tail)}, {"C1", iv(r.c1)},
                  {"printed_tail", r.printed_tail},
                  {"tail_matches_print", r.tail_matches_print}});
        } else if (*sc_rc) {
            auto r = qwg::residue_count(q, k, a_res);
            emit({{"q", r.q}, {"k", r.k}, {"a", r.a}, {"count", r.count.get_str()},
                  {"lower_bound_pass", r.lower_bound_pass}, {"band_pass", r.band_pass}});
        } else if (*sc_sa) {
            auto r = qwg::sum_A_identity(p);
            emit({{"p", r.p}, {"sum", r.sum.get_str()}, {"exact_equal", r.exact_equal}});
        } else if (*sc_mg) {
            qwg::MarginInput in;
            in.lambda = lambda;
            in.c0 = qwg::RInterval::around(c0in);
            in.ji_ratio = qwg::RInterval::point(1.0);
            auto r = qwg::final_margin(in);
            json margins = json::object();
            for (auto& [kk, m] : r.margins) margins[std::to_string(kk)] = iv(m);
            emit({{"lambda", lambda}, {"c0", c0in}, {"margin_44", iv(r.margin44)},
                  {"margin_43", iv(r.margin43)}, {"minimal_k", r.minimal_k},
                  {"margins", margins}});
        } else if (*sc_c4o) {
            mpq_class eta = parse_rational(eta_str);
            std::vector<qwg::u64> targets;
            if (!window_str.empty()) {
                auto colon = window_str.find(':');
                qwg::u64 a = std::stoull(window_str.substr(0, colon));
                qwg::u64 b = std::stoull(window_str.substr(colon + 1));
                for (qwg::u64 x = a + ((4 + 24 - a % 24) % 24); x <= b; x += 24)
                    targets.push_back(x);
            } else {
                for (qwg::u64 x = N - N / 20; targets.size() < 50; x += 24)
                    if (x % 24 == 4) targets.push_back(x);
            }
            auto ws = qwg::count4_window(N, eta, targets, opt_pmax);
            if (csv) {
                std::cout << "n,count,weighted,pred_lo,pred_hi,ratio\n";
                for (const auto& row : ws.rows)
                    std::cout << row.n << "," << row.count << "," << row.weighted << ","
                              << row.prediction.lo << "," << row.prediction.hi << ","
                              << row.ratio << "\n";
            } else {
                emit({{"N", ws.N}, {"eta", eta_str}, {"primes_in_window", ws.primes_in_window},
                      {"targets", ws.rows.size()}, {"mean_ratio", ws.mean_ratio},
                      {"ratio_stddev", ws.ratio_stddev}});
            }
        } else if (*sc_rg) {
            auto r = qwg::rieger_sum(N, parse_rational(eta_str));
            emit({{"N", N}, {"total", r.total}, {"diagonal", r.diagonal},
                  {"ratio_to_NlogsqN", r.ratio_to_nlogsq},
                  {"primes_in_window", r.primes_in_window}});
        } else if (*sc_lj) {
            auto r = qwg::lemma_j(P, lj_cap);
            emit({{"P", r.P}, {"J", r.j_total.get_str()}, {"J_diag", r.j_diag.get_str()},
                  {"J_offdiag", r.j_offdiag.get_str()}});
        } else if (*sc_in) {
            auto kind = kind_str == "I" ? qwg::IntegralKind::I
                        : kind_str == "J" ? qwg::IntegralKind::J
                                          : qwg::IntegralKind::Jplus;
            auto r = qwg::singular_integral(kind, parse_rational(h_str), parse_rational(eta_str),
                                            cells);
            emit({{"kind", kind_str}, {"h", h_str}, {"eta", eta_str}, {"value", iv(r)}});
        } else if (*sc_me) {
            auto r = qwg::mertens_check(z);
            emit({{"z", z}, {"product", iv(r.product)}, {"reference", iv(r.reference)},
                  {"ratio", iv(r.ratio)}});
        } else if (*sc_ge) {
            auto r = qwg::g_eval(beta_arg, parse_rational(eta_str));
            emit({{"beta", beta_arg}, {"re", iv(r.re)}, {"im", iv(r.im)},
                  {"abs", iv(r.abs())}});
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
