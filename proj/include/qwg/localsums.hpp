// localsums.hpp
//
// Exact evaluation of the mod-q exponential sums and local densities:
//
//   C(q,a)  = sum_{x=1}^{q} e(a x^2 / q)
//   C*(q,a) = sum_{(m,q)=1} e(a m^2 / q)
//   B(n,q)  = sum_{(a,q)=1} C*(q,a)^4 e(-a n / q)
//   A(n,q)  = B(n,q) / phi(q)^4
//   BB(p,h) = sum_{(a,p)=1} |C*(p,a)|^4 e(a h / p)
//   AD(q,h,d) = sum_{(a,q)=1} C*(q,a)^2 C*(q,-a) C(q,-a d^2) e(-a h / q)
//
// B, BB, AD are exact integers, computed through residue counting plus
// Ramanujan sums (orthogonality turns every a-sum into c_q applied to a
// quadratic form value); the raw Gauss sums are the only floating
// (interval-enclosed) objects here.

#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qwg/arith.hpp"
#include "qwg/interval.hpp"

namespace qwg {

inline constexpr u64 kGaussEnumCap = 1'000'000;   // direct-summation cap
inline constexpr u64 kCountingCap = 200'000;      // residue-counting cap per modulus

// Interval enclosures of the raw Gauss sums, by direct summation.
CInterval gauss_sum(u64 q, i64 a);
CInterval gauss_sum_coprime(u64 q, i64 a);

// B(n,q), exact. Multiplicative over prime powers; prime moduli take an
// O(p) pair-count route, prime powers a cached residue convolution.
mpz_class b_of(i64 n, u64 q);

// Exact closed form for prime p (chi = Legendre symbol mod p, s = chi(-1)):
//   p | n : (p-1)(p^2 + 6sp + 1)
//   p ∤ n : -(p^2 + 6sp + 1) - 4p(sp+1) chi(n)
// Equals the counting route for every p (tested exhaustively to 500).
i64 b_of_prime_closed(i64 n, u64 p);

// A(n,q) = B(n,q)/phi(q)^4 as an exact rational.
mpq_class a_of(i64 n, u64 q);

struct BboldValue {
    i64 exact = 0;        // residue-counting value
    i64 closed_form = 0;  // four-case table value
};

// BB(p,h) both ways; p odd prime. The two fields must agree.
BboldValue bbold(u64 p, i64 h);

// Worst case of BB(p,h) over p ∤ h, and the p | h value:
//   a(p) = -(p+1)^2            (p ≡ 3 mod 4)
//          3p^2 - 2p - 1       (p ≡ 1 mod 4)
//   b(p) = (p-1)(p+1)^2        (p ≡ 3 mod 4)
//          (p-1)(p^2 + 6p + 1) (p ≡ 1 mod 4)
i64 a_weight(u64 p);
i64 b_weight(u64 p);

// AD(q,h,d), exact integer via counting.
mpz_class a_d_local(u64 q, i64 h, u64 d);

struct OmegaResult {
    mpq_class omega;
    bool degenerate = false;  // middle factor vanished; omega reported as 0
};

// Exact rational Omega(p) solving
//   (1 - Omega/p)(1 - 1/p)^{-1}(1 + AD(p,h,1)/(p(p-1)^3)) = 1 + BB(p,h)/(p-1)^4.
OmegaResult omega_local(u64 p, i64 h);

// Per-prime sweep helper: AD(p,h,1) for h in [h_lo, h_hi], O(p^2 + p*(#h)).
std::vector<mpz_class> a_d_local_sweep(u64 p, i64 h_lo, i64 h_hi);

// 1 + sum_{k=1}^{kmax} [ sum_{a odd mod 2^k} C*(2^k,a)^2 C*(2^k,-a) C(2^k,-a) ]
//                      / (2^k phi(2^k)^3),   exact rational.
// Terms with k >= 4 vanish: odd squares mod 2^k all lie in 1 + 8Z/2^k with
// multiplicity 4, so C*(2^k,a) = 0 (enumeration confirms this for k <= 12).
mpq_class dyadic_factor(unsigned kmax);

// Exact dyadic term at one k by full enumeration (k <= 14); test oracle.
mpq_class dyadic_term_enumerated(unsigned k);

}  // namespace qwg
