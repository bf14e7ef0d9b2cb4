#include "qwg/arith.hpp"

#include <algorithm>
#include <mutex>

namespace qwg {

namespace {

std::vector<u32> g_primes;
u64 g_sieve_limit = 0;
std::mutex g_sieve_mutex;

void build_sieve(u64 limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<u32> ps;
    for (u64 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            ps.push_back(static_cast<u32>(i));
            for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    g_primes = std::move(ps);
    g_sieve_limit = limit;
}

}  // namespace

namespace {

const std::vector<u32>& sieve_at_least(u64 limit) {
    if (limit > kSieveCap) throw resource_error("sieve: limit exceeds sieve cap");
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    if (limit > g_sieve_limit) build_sieve(std::max<u64>(limit, 1'000'000));
    return g_primes;
}

}  // namespace

std::vector<u32> primes_up_to(u64 limit) {
    if (limit < 2) throw domain_error("primes_up_to: limit must be >= 2");
    const auto& ps = sieve_at_least(limit);
    auto end = std::upper_bound(ps.begin(), ps.end(), static_cast<u32>(limit));
    return {ps.begin(), end};
}

u64 nth_prime(u64 r) {
    if (r == 0) throw domain_error("nth_prime: r must be >= 1");
    // p_r <= r(ln r + ln ln r) for r >= 6
    u64 bound = 100;
    if (r >= 6) {
        double lr = std::log(static_cast<double>(r));
        bound = static_cast<u64>(static_cast<double>(r) * (lr + std::log(lr)) * 1.2) + 10;
    }
    const auto& ps = sieve_at_least(bound);
    if (r - 1 >= ps.size()) throw resource_error("nth_prime: sieve bound too small");
    return ps[r - 1];
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 lcm_u64(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    u64 g = gcd_u64(a, b);
    u128 l = static_cast<u128>(a / g) * b;
    if (l > static_cast<u128>(~0ULL)) throw resource_error("lcm_u64: overflow");
    return static_cast<u64>(l);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

// Pollard-Brent with deterministic c-sequence (fixed seed policy).
u64 pollard_brent(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        int lam = 1;
        while (d == 1) {
            x = y;
            for (int i = 0; i < lam; ++i) y = (mulmod(y, y, n) + c) % n;
            int k = 0;
            while (k < lam && d == 1) {
                u64 ys = y;
                int lim = std::min(128, lam - k);
                for (int i = 0; i < lim; ++i) {
                    y = (mulmod(y, y, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = gcd_u64(q, n);
                if (d == n) {
                    // backtrack
                    d = 1;
                    y = ys;
                    do {
                        y = (mulmod(y, y, n) + c) % n;
                        d = gcd_u64(x > y ? x - y : y - x, n);
                    } while (d == 1);
                    if (d == n) break;
                }
                k += lim;
            }
            lam *= 2;
            if (lam > (1 << 24)) break;
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, int>> factorize(u64 n) {
    if (n == 0) throw domain_error("factorize: n must be positive");
    std::vector<u64> fs;
    // trial division by the small sieve first
    const auto& ps = primes_up_to(1'000'000);
    for (u32 p : ps) {
        if (static_cast<u64>(p) * p > n) break;
        while (n % p == 0) {
            fs.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (is_prime(n)) {
            fs.push_back(n);
        } else {
            if (n > kFactorCofactorCap)
                throw resource_error("factorize: composite cofactor " + std::to_string(n) +
                                     " exceeds the factoring budget");
            factor_rec(n, fs);
        }
    }
    std::sort(fs.begin(), fs.end());
    std::vector<std::pair<u64, int>> out;
    for (u64 p : fs) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

NatStats multiplicative_stats(u64 n) {
    if (n == 0) throw domain_error("multiplicative_stats: n must be positive");
    NatStats s;
    s.n = n;
    s.factorization = factorize(n);
    for (auto [p, e] : s.factorization) {
        u64 pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        s.phi *= pe * (p - 1);
        s.tau *= static_cast<u64>(e + 1);
        if (e >= 2) s.mu = 0;
    }
    if (s.mu != 0) s.mu = (s.factorization.size() % 2 == 0) ? 1 : -1;
    return s;
}

namespace {

// order of 2 modulo prime power p^k (p odd prime)
u64 order2_prime_power(u64 p, int k) {
    // order mod p divides p-1: strip primes from p-1
    u64 d = p - 1;
    for (auto [f, e] : factorize(p - 1)) {
        (void)e;
        while (d % f == 0 && powmod(2, d / f, p) == 1) d /= f;
    }
    u64 ord = d;
    u64 pe = p;
    for (int j = 2; j <= k; ++j) {
        pe *= p;
        if (powmod(2, ord, pe) != 1) ord *= p;
    }
    return ord;
}

}  // namespace

u64 mult_order2(u64 q) {
    if (q < 3 || q % 2 == 0) throw domain_error("mult_order2: q must be odd and >= 3");
    u64 ord = 1;
    for (auto [p, e] : factorize(q)) ord = lcm_u64(ord, order2_prime_power(p, e));
    return ord;
}

int jacobi(i64 a, u64 n) {
    if (n % 2 == 0) throw domain_error("jacobi: n must be odd");
    i64 aa = a % static_cast<i64>(n);
    if (aa < 0) aa += static_cast<i64>(n);
    u64 x = static_cast<u64>(aa), y = n;
    int result = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            u64 r = y % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) result = -result;
        x %= y;
    }
    return (y == 1) ? result : 0;
}

i64 ramanujan(u64 q, i64 n) {
    if (q == 0) throw domain_error("ramanujan: q must be positive");
    if (q == 1) return 1;
    i64 nr = n % static_cast<i64>(q);
    if (nr < 0) nr += static_cast<i64>(q);
    u64 nm = static_cast<u64>(nr);
    // multiplicative: c_{p^k}(n) = phi(p^k) if p^k | n; -p^{k-1} if p^{k-1} || n; 0 otherwise
    i64 result = 1;
    for (auto [p, e] : factorize(q)) {
        u64 pk1 = 1;  // p^{e-1}
        for (int i = 1; i < e; ++i) pk1 *= p;
        u64 pk = pk1 * p;
        u64 m = nm % pk;
        if (m == 0)
            result *= static_cast<i64>(pk1 * (p - 1));
        else if (m % pk1 == 0)
            result *= -static_cast<i64>(pk1);
        else
            return 0;
    }
    return result;
}

u64 euler_phi(u64 n) { return multiplicative_stats(n).phi; }

}  // namespace qwg
