#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "stickel/arith.hpp"

namespace stickel {

// Exact coefficients of the n-th cyclotomic polynomial, low degree first. Cached.
const std::vector<i64>& cyclotomic_poly(u64 n);

// Element of Z[y]/Phi_d(y), exact.
struct CycInt {
    u64 d = 1;
    std::vector<mpz_class> c;   // length phi(d)

    CycInt() : c(1) {}
    explicit CycInt(u64 d_);
    static CycInt scalar(u64 d, const mpz_class& a);
    static CycInt ypow(u64 d, i64 t);   // y^t, t may be negative

    bool is_zero() const;
    std::string str() const;
};
CycInt operator+(const CycInt& a, const CycInt& b);
CycInt operator-(const CycInt& a, const CycInt& b);
CycInt operator*(const CycInt& a, const CycInt& b);
CycInt operator*(const mpz_class& s, const CycInt& a);
bool operator==(const CycInt& a, const CycInt& b);

// Absolute norm to Z (determinant of multiplication by a).
mpz_class norm(const CycInt& a);
// v_p of the norm; -1 when a = 0.
int norm_valuation(const CycInt& a, u64 p);

// Element of (Z/p^M)[y]/Phi_d(y).
struct CycMod {
    u64 d = 1, p = 2;
    unsigned M = 1;
    u64 P = 2;
    std::vector<u64> c;

    CycMod() = default;
    CycMod(u64 d_, u64 p_, unsigned M_);
    static CycMod scalar(u64 d, u64 p, unsigned M, i64 a);
    static CycMod ypow(u64 d, u64 p, unsigned M, i64 t);
    static CycMod from_exact(const CycInt& a, u64 p, unsigned M);

    bool is_zero() const;
    bool is_constant() const;
    // lower the precision to M' <= M
    CycMod reduced(unsigned M2) const;
    // the element y^k acting by y -> y^k on Q(zeta_d), k coprime to d
    CycMod galois(u64 k) const;
    std::string str() const;
};
CycMod operator+(const CycMod& a, const CycMod& b);
CycMod operator-(const CycMod& a, const CycMod& b);
CycMod operator*(const CycMod& a, const CycMod& b);
CycMod operator*(u64 s, const CycMod& a);
bool operator==(const CycMod& a, const CycMod& b);
// Re-express an element of Z[y]/Phi_d as an element of Z[y]/Phi_D with y_d = y_D^(D/d).
CycMod embed(const CycMod& a, u64 D);

struct NormVal {
    bool zero = false;       // every elementary divisor vanished at this precision
    bool resolved = true;    // all elementary divisors below p^M
    int v = 0;               // v_p(norm) when resolved, lower bound otherwise
};
// Valuation of the norm of any lift, via elimination of the multiplication matrix over Z/p^M.
NormVal norm_valuation(const CycMod& a);

// Valuation v_p(x) of a single residue mod p^M; M when x = 0.
int residue_valuation(u64 x, u64 p, unsigned M);

// Solve for the Teichmuller lift of a primitive d-th root of unity in Z/p^M (requires d | p-1).
u64 teichmuller_root(u64 d, u64 p, unsigned M);

}  // namespace stickel
