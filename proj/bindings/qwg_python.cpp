// Python bindings: the main operations, with plain python types on the
// surface (big integers cross as decimal strings -> python int).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwg/analysis.hpp"
#include "qwg/arith.hpp"
#include "qwg/assembly.hpp"
#include "qwg/localsums.hpp"
#include "qwg/powers2.hpp"
#include "qwg/series.hpp"
#include "qwg/verify.hpp"

namespace py = pybind11;

namespace {

py::int_ big(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

py::object frac(const mpq_class& q) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(py::str(q.get_str()));  // "num/den" or "num"
}

py::tuple ivt(const qwg::RInterval& r) { return py::make_tuple(r.lo, r.hi); }

mpq_class rat_from_obj(const py::object& o) {
    py::object Fraction = py::module_::import("fractions").attr("Fraction");
    py::object f = Fraction(o);
    mpz_class num(py::str(f.attr("numerator")).cast<std::string>());
    mpz_class den(py::str(f.attr("denominator")).cast<std::string>());
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact/interval verification kernels for the quadratic Waring-Goldbach constants";

    m.def("primes_up_to", [](qwg::u64 limit) { return qwg::primes_up_to(limit); });
    m.def("nth_prime", &qwg::nth_prime);
    m.def("mult_order2", &qwg::mult_order2);
    m.def("jacobi", &qwg::jacobi);
    m.def("ramanujan", &qwg::ramanujan);
    m.def("is_prime", &qwg::is_prime);
    m.def("factorize", [](qwg::u64 n) { return qwg::factorize(n); });
    m.def("multiplicative_stats", [](qwg::u64 n) {
        auto s = qwg::multiplicative_stats(n);
        py::dict d;
        d["n"] = s.n;
        d["factorization"] = s.factorization;
        d["phi"] = s.phi;
        d["mu"] = s.mu;
        d["tau"] = s.tau;
        return d;
    });

    m.def("gauss_sum", [](qwg::u64 q, qwg::i64 a) {
        auto g = qwg::gauss_sum(q, a);
        return py::make_tuple(ivt(g.re), ivt(g.im));
    });
    m.def("gauss_sum_coprime", [](qwg::u64 q, qwg::i64 a) {
        auto g = qwg::gauss_sum_coprime(q, a);
        return py::make_tuple(ivt(g.re), ivt(g.im));
    });
    m.def("b_of", [](qwg::i64 n, qwg::u64 q) { return big(qwg::b_of(n, q)); });
    m.def("a_of", [](qwg::i64 n, qwg::u64 q) { return frac(qwg::a_of(n, q)); });
    m.def("bbold", [](qwg::u64 p, qwg::i64 h) {
        auto v = qwg::bbold(p, h);
        return py::make_tuple(v.exact, v.closed_form);
    });
    m.def("a_d_local", [](qwg::u64 q, qwg::i64 h, qwg::u64 d) { return big(qwg::a_d_local(q, h, d)); });
    m.def("omega_local", [](qwg::u64 p, qwg::i64 h) {
        auto r = qwg::omega_local(p, h);
        return py::make_tuple(frac(r.omega), r.degenerate);
    });
    m.def("dyadic_factor", [](unsigned kmax) { return frac(qwg::dyadic_factor(kmax)); });

    m.def("kappa", [](qwg::i64 h) { return frac(qwg::kappa(h)); });
    m.def("abc_weights", [](qwg::u64 p) {
        auto w = qwg::abc_weights(p);
        return py::make_tuple(w.a_val, w.b_val, frac(w.c_val));
    });
    m.def("singular_series", [](qwg::i64 n, qwg::u64 pmax) {
        return ivt(qwg::singular_series(n, pmax).value);
    }, py::arg("n"), py::arg("pmax") = 100000);
    m.def("sbold", [](qwg::i64 h, qwg::u64 pmax) {
        return ivt(qwg::sbold(h, pmax).value);
    }, py::arg("h"), py::arg("pmax") = 100000);
    m.def("c3_c4", [](qwg::u64 pmax) {
        auto c = qwg::c3_c4(pmax);
        return py::make_tuple(ivt(c.c3), ivt(c.c4));
    }, py::arg("pmax") = 2000000);

    m.def("r_t_histogram", [](int t, int L) {
        auto h = qwg::r_t_histogram(t, L);
        py::dict d;
        for (qwg::i64 x = -h.offset; x <= h.offset; x += 16)
            if (h.value(x)) d[py::int_(x)] = h.value(x);
        return d;
    });
    m.def("power_congruence_count", [](qwg::u64 q, int t) {
        auto r = qwg::power_congruence_count(q, t);
        return py::make_tuple(r.dist.rho, big(r.n));
    });
    m.def("beta", [](qwg::u64 d) { return frac(qwg::beta(d)); });
    m.def("m_ratio_check", [](unsigned xmax) { return qwg::m_ratio_check(xmax).all_pass; });

    m.def("prime_product_51", []() {
        auto r = qwg::prime_product_51();
        return py::make_tuple(ivt(r.head), ivt(r.tail), ivt(r.c1));
    });
    m.def("maxexp", [](qwg::u64 q) {
        auto r = qwg::maxexp(q);
        return py::make_tuple(r.rho, ivt(r.max_abs), r.attaining_j);
    });
    m.def("residue_count", [](qwg::u64 q, int k, qwg::u64 a) {
        auto r = qwg::residue_count(q, k, a);
        return py::make_tuple(big(r.count), r.lower_bound_pass, r.band_pass);
    });
    m.def("sum_A_identity", [](qwg::u64 p) { return qwg::sum_A_identity(p).exact_equal; });
    m.def("final_margin", [](double lambda, double c0) {
        qwg::MarginInput in;
        in.lambda = lambda;
        in.c0 = qwg::RInterval::around(c0);
        in.ji_ratio = qwg::RInterval::point(1.0);
        auto r = qwg::final_margin(in);
        return py::make_tuple(ivt(r.margin44), ivt(r.margin43), r.minimal_k);
    }, py::arg("lambda") = 0.887167, py::arg("c0") = 0.69);

    m.def("singular_integral", [](const std::string& kind, const py::object& h,
                                  const py::object& eta, int cells) {
        auto k = kind == "I" ? qwg::IntegralKind::I
                 : kind == "J" ? qwg::IntegralKind::J
                               : qwg::IntegralKind::Jplus;
        return ivt(qwg::singular_integral(k, rat_from_obj(h), rat_from_obj(eta), cells));
    }, py::arg("kind"), py::arg("h"), py::arg("eta"), py::arg("cells") = 400);
    m.def("count4_full_range", [](qwg::u64 n) {
        auto r = qwg::count4_full_range(n);
        return py::make_tuple(r.count, r.weighted);
    });
    m.def("lemma_j", [](qwg::u64 P) {
        auto r = qwg::lemma_j(P);
        return py::make_tuple(big(r.j_total), big(r.j_diag), big(r.j_offdiag));
    });
    m.def("mertens_check", [](qwg::u64 z) {
        auto r = qwg::mertens_check(z);
        return py::make_tuple(ivt(r.product), ivt(r.reference), ivt(r.ratio));
    });

    m.def("rieger_sum", [](qwg::u64 N, const py::object& eta) {
        auto r = qwg::rieger_sum(N, rat_from_obj(eta));
        return py::make_tuple(r.total, r.diagonal, r.ratio_to_nlogsq);
    });
    m.def("avg_singular_series", [](qwg::u64 N, int k, qwg::u64 pmax) {
        auto r = qwg::avg_singular_series(N, k, pmax);
        return py::make_tuple(ivt(r.ratio), r.tuples_kept, r.tuples_total);
    }, py::arg("N"), py::arg("k"), py::arg("pmax") = 2000);
    m.def("count4_window", [](qwg::u64 N, const py::object& eta, std::vector<qwg::u64> targets,
                              qwg::u64 pmax) {
        auto ws = qwg::count4_window(N, rat_from_obj(eta), targets, pmax);
        return py::make_tuple(ws.mean_ratio, ws.ratio_stddev, ws.primes_in_window);
    }, py::arg("N"), py::arg("eta"), py::arg("targets"), py::arg("pmax") = 10000);

    m.def("verify_all_json", [](bool full) {
        qwg::VerifyConfig cfg;
        cfg.full = full;
        return qwg::verify_all(cfg).to_json(true);
    }, py::arg("full") = false);
}
