#include "qwg/interval.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace qwg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Slop covering libm's exp/log/sin/cos rounding error (glibc stays within a
// couple of ulps; 8 is a comfortable margin).
constexpr double kLibmSlop = 8.0 * kEps;

}  // namespace

std::string RInterval::str() const {
    char buf[80];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo, hi);
    return buf;
}

RInterval operator+(const RInterval& a, const RInterval& b) {
    return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
}

RInterval operator-(const RInterval& a, const RInterval& b) {
    return {round_down(a.lo - b.hi), round_up(a.hi - b.lo)};
}

RInterval operator-(const RInterval& a) { return {-a.hi, -a.lo}; }

RInterval operator*(const RInterval& a, const RInterval& b) {
    std::array<double, 4> p = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return {round_down(*mn), round_up(*mx)};
}

RInterval operator/(const RInterval& a, const RInterval& b) {
    if (b.lo <= 0.0 && b.hi >= 0.0) throw domain_error("RInterval division by interval containing 0");
    std::array<double, 4> p = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    auto [mn, mx] = std::minmax_element(p.begin(), p.end());
    return {round_down(*mn), round_up(*mx)};
}

RInterval sqr(const RInterval& a) {
    if (a.lo >= 0.0) return {round_down(a.lo * a.lo), round_up(a.hi * a.hi)};
    if (a.hi <= 0.0) return {round_down(a.hi * a.hi), round_up(a.lo * a.lo)};
    double m = std::max(-a.lo, a.hi);
    return {0.0, round_up(m * m)};
}

RInterval sqrt(const RInterval& a) {
    if (a.lo < 0.0) throw domain_error("RInterval sqrt of negative interval");
    return {round_down(std::sqrt(a.lo)), round_up(std::sqrt(a.hi))};
}

RInterval exp(const RInterval& a) {
    double lo = std::exp(a.lo), hi = std::exp(a.hi);
    return {round_down(lo - std::abs(lo) * kLibmSlop), round_up(hi + std::abs(hi) * kLibmSlop)};
}

RInterval log(const RInterval& a) {
    if (a.lo <= 0.0) throw domain_error("RInterval log of non-positive interval");
    double lo = std::log(a.lo), hi = std::log(a.hi);
    double slop = kLibmSlop * std::max({1.0, std::abs(lo), std::abs(hi)});
    return {round_down(lo - slop), round_up(hi + slop)};
}

RInterval abs(const RInterval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}

RInterval pow_int(const RInterval& a, unsigned k) {
    RInterval r = RInterval::point(1.0);
    RInterval base = a;
    while (k) {
        if (k & 1u) r = r * base;
        base = sqr(base);
        k >>= 1u;
    }
    return r;
}

RInterval hull(const RInterval& a, const RInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

namespace {

// cos(x)/sin(x) over an interval via the Lipschitz bound
// |f(t) - f(a)| <= |t - a|; exact enough for the narrow arguments used here,
// and always rigorous (clamped to [-1, 1]).
RInterval lipschitz_trig(const RInterval& x, double (*f)(double)) {
    double w = round_up(x.hi - x.lo);
    double base = f(x.lo);
    double slop = w + kLibmSlop * std::max(1.0, std::abs(x.lo));
    double lo = std::max(-1.0, round_down(base - slop));
    double hi = std::min(1.0, round_up(base + slop));
    return {lo, hi};
}

}  // namespace

RInterval cos2pi(const RInterval& t) {
    RInterval x = t * two_pi_interval();
    return lipschitz_trig(x, std::cos);
}

RInterval sin2pi(const RInterval& t) {
    RInterval x = t * two_pi_interval();
    return lipschitz_trig(x, std::sin);
}

RInterval pi_interval() {
    // nearest double below/above pi
    return RInterval::around(3.14159265358979323846);
}

RInterval two_pi_interval() {
    return RInterval::around(6.28318530717958647692);
}

RInterval euler_gamma_interval() {
    // gamma = 0.5772156649015328606065...; 0.5772156649015328 < gamma,
    // widen the neighbouring doubles outward once.
    double mid = 0.57721566490153286;
    return {round_down(round_down(mid)), round_up(round_up(mid))};
}

RInterval exp_euler_gamma_interval() {
    // e^gamma = 1.7810724179901979852365...
    double mid = 1.78107241799019798;
    return {round_down(round_down(mid)), round_up(round_up(mid))};
}

RInterval rat_interval(const mpq_class& q) {
    double d = mpq_get_d(q.get_mpq_t());  // truncated toward zero, error < 1 ulp
    mpq_class qd(d);
    int c = cmp(q, qd);
    if (c == 0) return RInterval::point(d);
    if (c > 0) return {d, round_up(d)};
    return {round_down(d), d};
}

RInterval int_interval(const mpz_class& z) {
    return rat_interval(mpq_class(z));
}

RInterval CInterval::abs2() const {
    RInterval r = sqr(re) + sqr(im);
    // outward rounding can push the lower endpoint to a negative denormal;
    // |z|^2 >= 0 always
    if (r.lo < 0.0) r.lo = 0.0;
    return r;
}

CInterval operator+(const CInterval& a, const CInterval& b) {
    return {a.re + b.re, a.im + b.im};
}

CInterval operator-(const CInterval& a, const CInterval& b) {
    return {a.re - b.re, a.im - b.im};
}

CInterval operator*(const CInterval& a, const CInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CInterval unit_phase(std::int64_t a, std::int64_t q) {
    if (q <= 0) throw domain_error("unit_phase: q must be positive");
    std::int64_t r = a % q;
    if (r < 0) r += q;
    // r/q in [0,1): both ints are exact doubles for q <= 2^53
    double t = static_cast<double>(r) / static_cast<double>(q);
    RInterval ti = RInterval::around(t);
    return {cos2pi(ti), sin2pi(ti)};
}

CInterval unit_phase_interval(const RInterval& t) {
    return {cos2pi(t), sin2pi(t)};
}

}  // namespace qwg
