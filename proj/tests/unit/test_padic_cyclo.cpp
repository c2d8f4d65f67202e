#include "doctest.h"

#include <algorithm>
#include <random>

#include "stickel/padic_cyclo.hpp"

using namespace stickel;

namespace {

CycloElem random_unit(const RingPtr& R, std::mt19937_64& rng) {
    for (;;) {
        CycloElem u(R);
        for (auto& x : u.c) x = rng() % R->P;
        if (is_invertible(u)) return u;
    }
}

CycloElem random_one_unit(const RingPtr& R, std::mt19937_64& rng) {
    CycloElem u(R);
    for (auto& x : u.c) x = (rng() % (R->P / R->p)) * R->p;
    u.c[0] = addmod(u.c[0], 1, R->P);
    return u;
}

// log(1 + z) = sum (-1)^(k+1) z^k / k with rationals, reduced mod p^M at the end
u64 scalar_log_oracle(i64 z, u64 p, unsigned M, int terms) {
    mpq_class s = 0;
    mpz_class zk = 1;
    for (int k = 1; k <= terms; ++k) {
        zk *= z;
        mpq_class t(zk, k);
        t.canonicalize();
        s += (k % 2 ? t : -t);
    }
    mpz_class P = mpz_class(static_cast<unsigned long>(ipow(p, M)));
    mpz_class den = s.get_den(), num = s.get_num(), inv;
    REQUIRE(mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) != 0);
    mpz_class r = num * inv % P;
    if (r < 0) r += P;
    return r.get_ui();
}

}  // namespace

TEST_CASE("cyclotomic ring layout") {
    auto R = CycloRing::make(105, 7, 3);
    CHECK(R->n == 48);
    CHECK(std::count(R->phi.begin(), R->phi.end(), -2) == 2);
    auto R4 = CycloRing::make(4, 3, 2);
    CHECK(R4->phi == std::vector<i64>{1, 0, 1});
    auto R1 = CycloRing::make(1, 5, 4);
    CHECK(R1->n == 1);
    CHECK(R1->P == 625);
    // x^f = 1 and 1 + x + ... + x^(l-1) = 0
    auto R13 = CycloRing::make(13, 7, 4);
    CHECK(CycloElem::xpow(R13, 13).is_one());
    CHECK(CycloElem::xpow(R13, -1) * CycloElem::xpow(R13, 1) == CycloElem::one(R13));
    CycloElem s(R13);
    for (int k = 0; k < 13; ++k) s = s + CycloElem::xpow(R13, k);
    CHECK(s.is_zero());
}

TEST_CASE("ring arithmetic") {
    std::mt19937_64 rng(21);
    for (u64 f : {13ull, 36ull, 105ull}) {
        auto R = CycloRing::make(f, 7, 5);
        CycloElem a(R), b(R), c(R);
        for (auto* e : {&a, &b, &c})
            for (auto& x : e->c) x = rng() % R->P;
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(mul_one_minus_xpow(a, 5) == a * CycloElem::one_minus_xpow(R, 5));
        CHECK(galois(a * b, 11) == galois(a, 11) * galois(b, 11));
        CHECK(pow(a, 7) == a * a * a * a * a * a * a);
        CHECK(pow(a, mpz_class(12)) == pow(pow(a, 3), 4));
    }
}

TEST_CASE("big moduli use the wide accumulator") {
    std::mt19937_64 rng(22);
    auto R = CycloRing::make(37, 3, 38);   // 3^38 exceeds 2^32
    CycloElem a(R), b(R);
    for (auto* e : {&a, &b})
        for (auto& x : e->c) x = rng() % R->P;
    auto Rlo = CycloRing::make(37, 3, 5);
    CHECK(change_precision(a * b, 5) == change_precision(a, 5) * change_precision(b, 5));
    (void)Rlo;
}

TEST_CASE("inverse by Newton lifting") {
    std::mt19937_64 rng(23);
    for (auto [f, p] : std::vector<std::pair<u64, u64>>{{13, 7}, {37, 2}, {105, 11}, {9, 2}}) {
        auto R = CycloRing::make(f, p, 9);
        for (int t = 0; t < 5; ++t) {
            auto u = random_unit(R, rng);
            CHECK((u * inverse(u)).is_one());
        }
    }
    // 1 - x is not a unit at the prime itself
    auto R7 = CycloRing::make(7, 7, 4);
    CHECK_FALSE(is_invertible(CycloElem::one_minus_xpow(R7, 1)));
    CHECK_THROWS_AS(inverse(CycloElem::one_minus_xpow(R7, 1)), std::domain_error);
}

TEST_CASE("p-adic valuations and division") {
    auto R = CycloRing::make(13, 5, 6);
    auto u = 125 * CycloElem::xpow(R, 3) + 25 * CycloElem::one(R);
    CHECK(coeff_valuation(u) == 2);
    auto v = divide_p(u, 2);
    CHECK(v.R->M == 4);
    CHECK(v == 5 * CycloElem::xpow(v.R, 3) + CycloElem::one(v.R));
}

TEST_CASE("logarithm: scalar oracle") {
    auto R = CycloRing::make(1, 7, 6);
    auto l8 = iwasawa_log(CycloElem::scalar(R, 8));
    CHECK(l8.c[0] == scalar_log_oracle(7, 7, 6, 40));
    CHECK(log_series(CycloElem::scalar(R, 8)) == l8);
    // non one-unit: log 3 = log(3^6) / 6
    u64 want = mulmod(scalar_log_oracle(728, 7, 7, 60), inv_mod(6, ipow(7, 7)), ipow(7, 7)) % ipow(7, 6);
    CHECK(iwasawa_log(CycloElem::scalar(R, 3)).c[0] == want);
    auto R2 = CycloRing::make(1, 2, 10);
    CHECK(iwasawa_log(CycloElem::scalar(R2, 5)).c[0] == scalar_log_oracle(4, 2, 10, 80));
}

TEST_CASE("logarithm: homomorphism, equivariance, and route agreement") {
    std::mt19937_64 rng(24);
    for (auto [f, p] : std::vector<std::pair<u64, u64>>{{13, 7}, {41, 3}, {21, 5}, {17, 2}}) {
        auto R = CycloRing::make(f, p, 6);
        auto u = random_unit(R, rng), v = random_unit(R, rng);
        auto lu = iwasawa_log(u), lv = iwasawa_log(v);
        CHECK(iwasawa_log(u * v) == lu + lv);
        CHECK(iwasawa_log(CycloElem::one(R)).is_zero());
        u64 a = 2;
        while (gcd(a, f) != 1) ++a;
        CHECK(iwasawa_log(galois(u, a)) == galois(lu, a));
        // roots of unity have log 0
        CHECK(iwasawa_log(CycloElem::xpow(R, 1)).is_zero());
        auto lp = iwasawa_log_power(u);
        unsigned loss = log_power_loss(p);
        CHECK(change_precision(lp, lp.R->M) == change_precision(lu, lp.R->M));
        (void)loss;
        auto w = random_one_unit(R, rng);
        CHECK(log_series(w) == iwasawa_log(w));
    }
}

TEST_CASE("one-units raised to p^M vanish") {
    std::mt19937_64 rng(25);
    auto R = CycloRing::make(13, 3, 5);
    auto w = random_one_unit(R, rng);
    CHECK(pow(w, ipow(3, 5)).is_one());
}

TEST_CASE("norm valuations") {
    for (u64 f : {7ull, 13ull, 21ull}) {
        auto R = CycloRing::make(f, 7, 6);
        auto nv = ring_norm_valuation(CycloElem::scalar(R, 7));
        CHECK(nv.resolved);
        CHECK(nv.v == static_cast<int>(R->n));
    }
    // N(1 - zeta_l) = l
    auto R7 = CycloRing::make(7, 7, 4);
    CHECK(ring_norm_valuation(CycloElem::one_minus_xpow(R7, 1)).v == 1);
    auto R13 = CycloRing::make(13, 7, 4);
    CHECK(ring_norm_valuation(CycloElem::one_minus_xpow(R13, 1)).v == 0);
    // zeta_49 side: N(1 - zeta_49) = 7
    auto R49 = CycloRing::make(49, 7, 4);
    CHECK(ring_norm_valuation(CycloElem::one_minus_xpow(R49, 1)).v == 1);
}

TEST_CASE("bi-cyclotomic Gauss sum identities") {
    // quadratic character mod 5 written by hand: tau^2 = 5
    auto R = CycloRing::make(5, 3, 6);
    CycloElem t(R);
    for (u64 a = 1; a < 5; ++a) t = t + CycloElem::scalar(R, kronecker(static_cast<i64>(a), 5)) * CycloElem::xpow(R, a);
    auto sq = t * t;
    CHECK(sq == CycloElem::scalar(R, 5));
    auto b = BiCyclo::from_base(t, 2);
    CHECK((b * b).is_x_constant());
    CHECK((b * b).constant_part() == CycMod::scalar(2, 3, 6, 5));
}

TEST_CASE("exact cyclotomic arithmetic") {
    auto a = ExactCyclo::one_minus_xpow(12, 1);
    auto b = galois(a, 5) * galois(a, 7) * galois(a, 11) * a;
    CHECK(b.is_one());   // Phi_12(1) = 1
    auto z = ExactCyclo::xpow(7, 3);
    CHECK(z * ExactCyclo::xpow(7, 4) == ExactCyclo::one(7));
    CHECK(ExactCyclo::one(7) - ExactCyclo::one(7) == ExactCyclo(7));
}
