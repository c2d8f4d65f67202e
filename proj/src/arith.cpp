#include "stickel/arith.hpp"

#include <algorithm>

namespace stickel {

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

u64 gcd(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    u64 g = gcd(a, b);
    u128 r = (u128)(a / g) * b;
    if (r >> 64) throw std::overflow_error("lcm overflow");
    return static_cast<u64>(r);
}

u64 inv_mod(i64 a, u64 m) {
    if (m == 1) return 0;
    i128 r0 = static_cast<i128>(m), r1 = static_cast<i128>(reduce_signed(a, m));
    i128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1)
        throw std::domain_error("inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
    i128 res = s0 % static_cast<i128>(m);
    if (res < 0) res += m;
    return static_cast<u64>(res);
}

u64 ipow(u64 b, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= b;
        if (r >> 63) throw std::overflow_error("ipow overflow");
    }
    return static_cast<u64>(r);
}

static bool mr_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic base set for 64-bit integers
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        u64 b = a % n;
        if (b == 0) continue;
        if (mr_witness(n, b, d, s)) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    if (n <= 1) return out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> r;
    for (auto& [p, e] : factorize(n)) r.push_back(p);
    return r;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> ds{1};
    for (auto& [p, e] : factorize(n)) {
        size_t cur = ds.size();
        u64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

int moebius(u64 n) {
    int m = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

int valuation(u64 n, u64 p) {
    if (n == 0) throw std::domain_error("valuation of 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation_signed(i64 n, u64 p) {
    return valuation(static_cast<u64>(n < 0 ? -n : n), p);
}

u64 mult_order(u64 a, u64 m) {
    if (gcd(a, m) != 1) throw std::domain_error("mult_order: not a unit");
    if (m == 1) return 1;
    u64 ord = euler_phi(m);
    for (auto& [p, e] : factorize(ord)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(a, ord / p, m) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

u64 smallest_primitive_root(u64 m) {
    if (m == 2) return 1;
    if (m == 4) return 3;
    auto fac = factorize(m);
    if (fac.size() != 1 || fac[0].first == 2)
        throw std::domain_error("no primitive root modulo " + std::to_string(m));
    u64 phi = euler_phi(m);
    auto qs = prime_divisors(phi);
    for (u64 g = 2; g < m; ++g) {
        if (gcd(g, m) != 1) continue;
        bool ok = true;
        for (u64 q : qs) {
            if (powmod(g, phi / q, m) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive root search failed");
}

int kronecker(i64 a, i64 n) {
    if (n <= 0) throw std::domain_error("kronecker: n must be positive");
    int res = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        i64 r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) res = -res;
    }
    if (n == 1) return res;
    i64 x = ((a % n) + n) % n, y = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            i64 r = y % 8;
            if (r == 3 || r == 5) res = -res;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) res = -res;
        x %= y;
    }
    return y == 1 ? res : 0;
}

bool is_squarefree(u64 n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

}  // namespace stickel
