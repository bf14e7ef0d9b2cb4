// arith.hpp
//
// Exact elementary number theory shared by every module: prime sieve,
// deterministic 64-bit primality, Pollard-Brent factorization with a fixed
// seed, multiplicative functions (phi, mu, tau), Jacobi symbols, the
// multiplicative order of 2, and Ramanujan sums c_q(n).

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qwg/interval.hpp"

namespace qwg {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Default hard cap for the shared sieve (resource error above).
inline constexpr u64 kSieveCap = 200'000'000;

// Composite cofactors beyond this stop the rho search with a resource error
// naming the cofactor. 2e18 admits 2^60 - 1, the largest Mersenne-type
// factorization the m(x) checks need.
inline constexpr u64 kFactorCofactorCap = 2'000'000'000'000'000'000ULL;

// All primes <= limit, increasing. Backed by a process-wide cached sieve
// that only grows; safe for concurrent readers once built.
std::vector<u32> primes_up_to(u64 limit);

// r-th prime, 1-based: nth_prime(1) = 2.
u64 nth_prime(u64 r);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);  // throws resource_error on 64-bit overflow

// Deterministic Miller-Rabin, valid for all 64-bit inputs
// (base set {2,3,5,7,11,13,17,19,23,29,31,37}).
bool is_prime(u64 n);

// Trial division to 10^6, then Pollard-Brent rho with fixed seeding.
// Factors are returned sorted; (prime, exponent) pairs.
std::vector<std::pair<u64, int>> factorize(u64 n);

struct NatStats {
    u64 n = 1;
    std::vector<std::pair<u64, int>> factorization;
    u64 phi = 1;
    int mu = 1;
    u64 tau = 1;
};

NatStats multiplicative_stats(u64 n);

// Multiplicative order of 2 modulo odd q >= 3, via prime-power orders + lcm
// (never a linear scan). rho(q) in the powers-of-2 layers.
u64 mult_order2(u64 q);

// Jacobi symbol (a/n) for odd positive n.
int jacobi(i64 a, u64 n);

// Ramanujan sum c_q(n) = sum_{d | gcd(q,n)} d * mu(q/d), computed
// multiplicatively from the factorization of q.
i64 ramanujan(u64 q, i64 n);

// phi(q) as u64 (q must fit the factoring budget).
u64 euler_phi(u64 n);

}  // namespace qwg
