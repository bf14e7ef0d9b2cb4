// interval.hpp
//
// Outward-rounded real/complex interval arithmetic. Every verified
// inequality in this suite is carried by RInterval: the invariant is that
// the true real number always lies in [lo, hi].
//
// Rounding model: +,-,*,/ and sqrt on doubles are correctly rounded
// (error <= 0.5 ulp), so widening the nearest-rounded result by one ulp in
// each direction encloses the exact value. libm's exp/log/cos/sin are not
// formally correctly rounded; those enclosures are widened by a generous
// slop (kLibmSlopUlps ulps, scaled by the argument for trig reduction).

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qwg {

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double round_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double round_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

struct RInterval {
    double lo = 0.0;
    double hi = 0.0;

    RInterval() = default;
    RInterval(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi)) throw domain_error("RInterval: lo > hi");
    }

    static RInterval point(double x) { return {x, x}; }
    // Encloses a value known only to round-nearest accuracy.
    static RInterval around(double x) { return {round_down(x), round_up(x)}; }
    static RInterval from_int(std::int64_t n) {
        double d = static_cast<double>(n);
        if (std::llabs(n) <= (1LL << 53)) return point(d);
        return around(d);
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const RInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const RInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    bool is_positive() const { return lo > 0.0; }
    bool is_negative() const { return hi < 0.0; }

    std::string str() const;
};

RInterval operator+(const RInterval& a, const RInterval& b);
RInterval operator-(const RInterval& a, const RInterval& b);
RInterval operator-(const RInterval& a);
RInterval operator*(const RInterval& a, const RInterval& b);
RInterval operator/(const RInterval& a, const RInterval& b);

inline RInterval& operator+=(RInterval& a, const RInterval& b) { return a = a + b; }
inline RInterval& operator-=(RInterval& a, const RInterval& b) { return a = a - b; }
inline RInterval& operator*=(RInterval& a, const RInterval& b) { return a = a * b; }

RInterval sqr(const RInterval& a);    // tight square, nonnegative across zero
RInterval sqrt(const RInterval& a);   // requires a.lo >= 0
RInterval exp(const RInterval& a);
RInterval log(const RInterval& a);    // requires a.lo > 0
RInterval abs(const RInterval& a);
RInterval pow_int(const RInterval& a, unsigned k);
RInterval hull(const RInterval& a, const RInterval& b);

// cos/sin of 2*pi*t for an interval t; rigorous via Lipschitz widening,
// intended for narrow arguments (phases of exponential sums).
RInterval cos2pi(const RInterval& t);
RInterval sin2pi(const RInterval& t);

// Enclosures of pi, Euler's gamma, and e^gamma. gamma and e^gamma are
// hard-coded to 10^-12-tight enclosures:
//   gamma   = 0.57721566490153286060651209008240243...   (OEIS A001620)
//   e^gamma = 1.78107241799019798523650410310717954...   (OEIS A073004)
RInterval pi_interval();
RInterval two_pi_interval();
RInterval euler_gamma_interval();
RInterval exp_euler_gamma_interval();

// Tight rigorous enclosure of an exact rational.
RInterval rat_interval(const mpq_class& q);
RInterval int_interval(const mpz_class& z);

struct CInterval {
    RInterval re, im;

    CInterval() = default;
    CInterval(RInterval r, RInterval i) : re(r), im(i) {}
    static CInterval point(double r, double i) {
        return {RInterval::point(r), RInterval::point(i)};
    }

    bool contains(double r, double i) const { return re.contains(r) && im.contains(i); }
    CInterval conj() const { return {re, -im}; }
    RInterval abs2() const;                 // |z|^2
    RInterval abs() const { return qwg::sqrt(abs2()); }
    double max_width() const { return std::max(re.width(), im.width()); }
};

CInterval operator+(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a, const CInterval& b);
CInterval operator*(const CInterval& a, const CInterval& b);
inline CInterval& operator+=(CInterval& a, const CInterval& b) { return a = a + b; }

// e(a/q) = exp(2*pi*i*a/q), exact argument reduction mod q first.
CInterval unit_phase(std::int64_t a, std::int64_t q);

// e(t) for an interval t (t need not be reduced; accuracy degrades with |t|).
CInterval unit_phase_interval(const RInterval& t);

}  // namespace qwg
