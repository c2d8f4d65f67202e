#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stickel {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Raised when a truncated p-adic computation cannot resolve its answer.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }
inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

u64 powmod(u64 a, u64 e, u64 m);
u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);

// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
u64 inv_mod(i64 a, u64 m);

// Reduce a signed integer into [0, m).
inline u64 reduce_signed(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

// p^e with overflow detection.
u64 ipow(u64 b, unsigned e);

bool is_prime(u64 n);
std::vector<std::pair<u64, int>> factorize(u64 n);
std::vector<u64> prime_divisors(u64 n);
std::vector<u64> divisors(u64 n);
u64 euler_phi(u64 n);
int moebius(u64 n);

// Exponent of p in n (n != 0).
int valuation(u64 n, u64 p);
int valuation_signed(i64 n, u64 p);

// Multiplicative order of a modulo m (gcd(a, m) = 1).
u64 mult_order(u64 a, u64 m);

// Smallest positive primitive root modulo an odd prime power or 2, 4.
u64 smallest_primitive_root(u64 m);

// Kronecker symbol (a / n) for n >= 1, PARI convention kronecker(a, n).
int kronecker(i64 a, i64 n);

// Squarefree test.
bool is_squarefree(u64 n);

}  // namespace stickel
