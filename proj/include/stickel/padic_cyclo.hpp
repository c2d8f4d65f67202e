#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "stickel/cycint.hpp"

namespace stickel {

// Z[x]/(Phi_f(x), p^M).
struct CycloRing {
    u64 f = 1, p = 2;
    unsigned M = 1;
    u64 P = 2;
    std::size_t n = 1;                 // phi(f)
    std::vector<i64> phi;              // Phi_f, low degree first
    std::vector<std::pair<std::size_t, i64>> phi_terms;   // nonzero terms below the leading one

    static std::shared_ptr<const CycloRing> make(u64 f, u64 p, unsigned M);
};
using RingPtr = std::shared_ptr<const CycloRing>;

struct CycloElem {
    RingPtr R;
    std::vector<u64> c;   // length n

    CycloElem() = default;
    explicit CycloElem(RingPtr r) : R(std::move(r)), c(R->n, 0) {}
    static CycloElem scalar(RingPtr r, i64 a);
    static CycloElem one(RingPtr r) { return scalar(std::move(r), 1); }
    static CycloElem xpow(RingPtr r, i64 e);                  // zeta_f^e
    static CycloElem one_minus_xpow(RingPtr r, i64 e);        // 1 - zeta_f^e
    static CycloElem from_poly(RingPtr r, const std::vector<i64>& poly);   // any length, reduced

    bool is_zero() const;
    bool is_one() const;
    bool is_constant() const;
    std::string str() const;
};

CycloElem operator+(const CycloElem& a, const CycloElem& b);
CycloElem operator-(const CycloElem& a, const CycloElem& b);
CycloElem operator*(const CycloElem& a, const CycloElem& b);
CycloElem operator*(u64 s, const CycloElem& a);
bool operator==(const CycloElem& a, const CycloElem& b);

// u * (1 - x^e), linear time
CycloElem mul_one_minus_xpow(const CycloElem& u, i64 e);
// sigma_a : x -> x^a, gcd(a, f) = 1
CycloElem galois(const CycloElem& u, u64 a);
CycloElem pow(const CycloElem& u, const mpz_class& e);
CycloElem pow(const CycloElem& u, u64 e);
// gcd(u mod p, Phi_f mod p) = 1 in F_p[x]
bool is_invertible(const CycloElem& u);
// Newton lift of the F_p inverse; throws std::domain_error when u is not a unit
CycloElem inverse(const CycloElem& u);
// smallest v_p over the coefficients (M when zero)
int coeff_valuation(const CycloElem& u);
// exact division by p^k; the result lives at precision M - k
CycloElem divide_p(const CycloElem& u, unsigned k);
CycloElem change_precision(const CycloElem& u, unsigned M2);

// log(1 + z) for w = 1 + z, z = 0 mod p, truncated where every omitted term vanishes mod p^M.
CycloElem log_series(const CycloElem& w);
// Iwasawa logarithm, Frobenius route: w = u^p / F(u), log u = -sum_{k<M} p^k F^-(k+1) log w (p does not divide f).
CycloElem iwasawa_log(const CycloElem& u);
// Oracle route: log(u^E)/E with E = p^ord_f(p) - 1 (an extra squaring for p = 2).
CycloElem iwasawa_log_power(const CycloElem& u);
// Precision consumed by the power route: 1 for p = 2, else 0.
unsigned log_power_loss(u64 p);

// v_p of the norm N_{Q(zeta_f)/Q}(u). Units resolve by the gcd test; others by elimination for moderate degree.
NormVal ring_norm_valuation(const CycloElem& u);

// ------------------------------------------------------------------ bi-cyclotomic

// (Z/p^M)[x]/Phi_f [y]/Phi_d: coefficients of y^0..y^{phi(d)-1} in the base ring.
struct BiCyclo {
    RingPtr R;
    u64 d = 1;
    std::vector<CycloElem> c;

    BiCyclo() = default;
    BiCyclo(RingPtr r, u64 d_);
    static BiCyclo from_base(const CycloElem& a, u64 d);
    // sum_j y^j * parts[j] for j in [0, d), reduced mod Phi_d
    static BiCyclo from_powers(RingPtr r, u64 d, const std::vector<CycloElem>& parts);

    bool is_zero() const;
    // no x-dependence left: every y-coefficient is a constant of the base ring
    bool is_x_constant() const;
    // the y-polynomial of constant terms as an element of (Z/p^M)[y]/Phi_d
    CycMod constant_part() const;
};
BiCyclo operator+(const BiCyclo& a, const BiCyclo& b);
BiCyclo operator-(const BiCyclo& a, const BiCyclo& b);
BiCyclo operator*(const BiCyclo& a, const BiCyclo& b);

// ------------------------------------------------------------------ exact

// Z[x]/Phi_f with exact coefficients, for identities between cyclotomic numbers.
struct ExactCyclo {
    u64 f = 1;
    std::vector<mpz_class> c;

    ExactCyclo() = default;
    explicit ExactCyclo(u64 f_);
    static ExactCyclo one(u64 f);
    static ExactCyclo one_minus_xpow(u64 f, i64 e);
    static ExactCyclo xpow(u64 f, i64 e);
    bool is_one() const;
    std::string str() const;
};
ExactCyclo operator*(const ExactCyclo& a, const ExactCyclo& b);
ExactCyclo operator-(const ExactCyclo& a, const ExactCyclo& b);
bool operator==(const ExactCyclo& a, const ExactCyclo& b);
ExactCyclo galois(const ExactCyclo& u, u64 a);

}  // namespace stickel
