#include "doctest.h"

#include <random>

#include "stickel/fields.hpp"

using namespace stickel;

TEST_CASE("arith basics") {
    CHECK(powmod(3, 200, 1000003) == powmod(9, 100, 1000003));
    CHECK(gcd(84, 36) == 12);
    CHECK(lcm(313, 7) == 2191);
    CHECK(inv_mod(3, 7) == 5);
    CHECK(inv_mod(-3, 7) == 2);
    CHECK_THROWS_AS(inv_mod(6, 9), std::domain_error);
    CHECK(euler_phi(45161) == 45160);
    CHECK(euler_phi(105) == 48);
    CHECK(moebius(30) == -1);
    CHECK(moebius(12) == 0);
    CHECK(valuation(3125 * 6, 5) == 5);
    CHECK(mult_order(2, 7) == 3);
    CHECK(smallest_primitive_root(313) == 10);
    CHECK(smallest_primitive_root(1381) == 2);
    CHECK(is_prime(45161));
    CHECK_FALSE(is_prime(3433 * 7));
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(8, 3) == -1);
    CHECK(kronecker(1201, 3) == 1);
    CHECK(ipow(7, 3) == 343);
    CHECK_THROWS(ipow(10, 30));
    auto fac = factorize(3433 * 4);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0] == std::pair<u64, int>{2, 2});
    CHECK(fac[1] == std::pair<u64, int>{3433, 1});
}

TEST_CASE("Euler phi agrees with a direct count") {
    for (u64 n = 1; n <= 300; ++n) {
        u64 cnt = 0;
        for (u64 a = 1; a <= n; ++a) cnt += gcd(a, n) == 1;
        CHECK(euler_phi(n) == cnt);
    }
}

TEST_CASE("unit group dlog round trip") {
    std::mt19937_64 rng(7);
    for (u64 f : {840ull, 3433ull * 4, 45161ull, 1024ull, 2 * 81ull * 25}) {
        UnitGroupModF U(f);
        u64 prod = 1;
        for (u64 o : U.orders()) prod *= o;
        CHECK(prod == euler_phi(f));
        for (int t = 0; t < 50; ++t) {
            u64 a = rng() % f;
            if (gcd(a, f) != 1) continue;
            CHECK(U.recombine(U.dlog(a)) == a);
        }
    }
}

TEST_CASE("cyclic prime fields") {
    auto K = cyclic_prime_field(313, 3);
    CHECK(K->degree() == 3);
    CHECK(K->is_real());
    CHECK(K->characters().size() == 3);
    CHECK(K->characters()[0].trivial);
    for (std::size_t i = 1; i < 3; ++i) {
        CHECK(K->characters()[i].order == 3);
        CHECK(K->characters()[i].conductor == 313);
    }
    // 7 splits in K iff 7 is a cube mod 313
    CHECK(splitting_data(*K, 7).g == (powmod(7, 104, 313) == 1 ? 3u : 1u));
    CHECK_THROWS_AS(cyclic_prime_field(314, 3), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_prime_field(313, 5), std::invalid_argument);
    // odd-order characters only come from real fields; degree 4 at f = 13 is imaginary
    CHECK_THROWS(cyclic_prime_field(13, 4));
}

TEST_CASE("quadratic and quartic fields") {
    CHECK(quadratic_admissible(5));
    CHECK(quadratic_admissible(8));
    CHECK(quadratic_admissible(12));
    CHECK(quadratic_admissible(508));
    CHECK_FALSE(quadratic_admissible(3));
    CHECK_FALSE(quadratic_admissible(20));
    CHECK_FALSE(quadratic_admissible(18));
    auto k = quadratic_field(45161);
    CHECK(k->degree() == 2);
    CHECK(k->is_real());
    CHECK(k->characters()[1].conductor == 45161);
    auto Q = quartic_composite_field(205);
    CHECK(Q->degree() == 4);
    CHECK(Q->is_real());
    CHECK(Q->contains(*quadratic_field(41)));
    // cyclic quartic: the only quadratic subfield is Q(sqrt 41)
    CHECK_FALSE(Q->contains(*quadratic_field(205)));
    CHECK_FALSE(Q->contains(*quadratic_field(5)));
}

TEST_CASE("subfield containment and restriction of characters") {
    auto K = explicit_field(35, {6});
    CHECK(K->degree() == 12);
    CHECK(K->contains(*quadratic_field(5)));
    CHECK(K->true_conductor() == 35);
    // H = <4, 11> mod 15 cuts out Q(sqrt 5) at a non-genuine modulus
    CHECK_THROWS(explicit_field(15, {4, 11}, true));
    auto L = explicit_field(15, {4, 11}, false);
    CHECK(L->degree() == 2);
    CHECK_FALSE(L->genuine_conductor());
    CHECK(L->true_conductor() == 5);
}

TEST_CASE("level fields and cyclotomic layers") {
    auto K = cyclic_prime_field(313, 3);
    CHECK(conductor_Ln(313, 7, 1) == 313 * 49);
    CHECK(conductor_Ln(3433, 2, 5) == 3433 * 128);
    auto L = level_field(K, 7, 1);
    CHECK(L->modulus() == 313 * 49);
    CHECK(L->degree() == 3 * 42);
    CHECK(L->contains(*K));
    CHECK(cyclotomic_layer(*K, 7) == 0);
    CHECK(cyclotomic_layer(*quadratic_field(8), 2) == 1);
    CHECK(cyclotomic_layer(*cyclic_prime_field(7, 3), 3) == 0);
    CHECK(cyclotomic_layer(*explicit_field(9, {8}), 3) == 1);
    CHECK(cyclotomic_layer(*quadratic_field(5), 2) == 0);
}

TEST_CASE("field descriptions") {
    auto d = parse_field_desc("kind=cyclic-prime; f=313; d=3");
    CHECK(d.kind == "cyclic-prime");
    CHECK(d.f == 313);
    CHECK(d.d == 3);
    auto K = build_field(d);
    auto K2 = build_field(parse_field_desc(K->serialize()));
    CHECK(K2->degree() == K->degree());
    CHECK(K2->subgroup() == K->subgroup());
    auto e = parse_field_desc("kind=explicit-subgroup; f=35; gens=[6]");
    CHECK(e.gens == std::vector<u64>{6});
    CHECK(build_field(e)->degree() == 12);
    CHECK_THROWS(parse_field_desc("kind=quadratic; f=abc"));
    CHECK_THROWS(build_field(parse_field_desc("kind=nonsense; f=5")));
}
