#include <doctest.h>

#include <cmath>
#include <numeric>

#include "localrank/dirichlet.hpp"

using namespace localrank;
using namespace localrank::dirichlet;

TEST_SUITE_BEGIN("dirichlet");

// Oracle: conductor by definition — smallest f | m with chi trivial on
// units congruent to 1 mod f.
static i64 conductor_brute(const DirichletCharacter& chi) {
    i64 m = chi.modulus();
    for (i64 f = 1; f <= m; ++f) {
        if (m % f != 0) continue;
        bool trivial = true;
        for (i64 u = 1; u <= m && trivial; ++u) {
            if (std::gcd(u, m) != 1 || u % f != 1 % f) continue;
            auto v = chi.eval(u);
            if (!v || !v->is_one()) trivial = false;
        }
        if (trivial) return f;
    }
    return m;
}

TEST_CASE("unit_group structure") {
    auto G7 = unit_group(7);
    REQUIRE(G7->components.size() == 1);
    CHECK(G7->generators[0] == 3);
    CHECK(G7->orders[0] == 6);
    CHECK(G7->phi == 6);

    auto G8 = unit_group(8);
    REQUIRE(G8->components.size() == 2);
    CHECK(G8->generators[0] == 7);
    CHECK(G8->generators[1] == 5);
    CHECK(G8->orders[0] == 2);
    CHECK(G8->orders[1] == 2);

    auto G1 = unit_group(1);
    CHECK(G1->components.empty());
    CHECK(G1->phi == 1);
}

TEST_CASE("unit_group invariants for m <= 200") {
    for (i64 m = 1; m <= 200; ++m) {
        auto G = unit_group(m);
        i64 phi = 0;
        for (i64 a = 1; a <= m; ++a)
            if (std::gcd(a, m) == 1) ++phi;
        if (m == 1) phi = 1;
        CHECK(G->phi == phi);
        for (size_t i = 0; i < G->components.size(); ++i) {
            // each generator has the stated order mod its prime-power component
            i64 q = G->components[i].prime_power;
            i64 g = G->components[i].generator;
            i64 d = G->components[i].order;
            i64 cur = 1;
            for (i64 k = 1; k <= d; ++k) {
                cur = (i64)((i128)cur * g % q);
                if (k < d) CHECK(cur != 1);
            }
            CHECK(cur == 1);
        }
    }
}

TEST_CASE("evaluate: order-3 character mod 7") {
    // chi with chi(3) = e^(2 pi i/3): exponent 2 on the order-6 generator 3.
    DirichletCharacter chi(7, {2});
    CHECK(chi.order() == 3);
    auto v3 = chi.eval(3);
    REQUIRE(v3);
    CHECK(*v3 == RootOfUnity{1, 3});
    auto v2 = chi.eval(2);  // 2 = 3^2 mod 7
    REQUIRE(v2);
    CHECK(*v2 == RootOfUnity{2, 3});
    auto v1 = chi.eval(1);
    REQUIRE(v1);
    CHECK(v1->is_one());
    CHECK(!chi.eval(14));
    CHECK(chi.value(14) == std::complex<double>{0, 0});
}

TEST_CASE("homomorphism property") {
    for (i64 m : {5, 7, 12, 16, 24, 35, 40}) {
        for (auto& chi : characters_of_order_dividing(m, 12)) {
            for (i64 a = 1; a < m; ++a)
                for (i64 b = 1; b < m; ++b) {
                    auto va = chi.value(a), vb = chi.value(b), vab = chi.value((i128)a * b);
                    CHECK(std::abs(va * vb - vab) < 1e-12);
                }
        }
    }
}

TEST_CASE("conductor: examples and brute-force oracle") {
    DirichletCharacter triv12(12, {0, 0});
    CHECK(triv12.conductor() == 1);
    CHECK(kronecker_character(-4).conductor() == 4);
    DirichletCharacter chi7(7, {2});
    CHECK(chi7.conductor() == 7);

    for (i64 m : {3, 4, 5, 8, 9, 12, 16, 21, 24, 36, 40, 45, 56, 63, 72, 100}) {
        for (auto& chi : characters_of_order_dividing(m, 60))
            CHECK(chi.conductor() == conductor_brute(chi));
    }
}

TEST_CASE("conductor of product divides lcm of conductors") {
    for (i64 m : {12, 21, 40, 45}) {
        auto chars = characters_of_order_dividing(m, 60);
        for (auto& a : chars)
            for (auto& b : chars) {
                auto p = product(a, b);
                CHECK(std::lcm(a.conductor(), b.conductor()) % p.conductor() == 0);
            }
    }
}

TEST_CASE("gauss sums") {
    // |tau|^2 = 7 for either order-3 character mod 7.
    for (auto& chi : characters_of_order(7, 3)) {
        auto tau = gauss_sum(chi);
        CHECK(std::abs(std::norm(tau) - 7.0) < 1e-10);
    }
    auto tau4 = gauss_sum(kronecker_character(-4));
    CHECK(std::abs(tau4 - std::complex<double>{0, 2}) < 1e-12);
    CHECK(std::abs(gauss_sum(DirichletCharacter()) - std::complex<double>{1, 0}) < 1e-15);
    DirichletCharacter imprimitive(12, {1, 0});
    CHECK_THROWS_AS(gauss_sum(imprimitive), std::invalid_argument);
}

TEST_CASE("|tau(chi)|^2 = N(chi) for every primitive chi, moduli <= 200") {
    for (i64 m = 1; m <= 200; ++m) {
        for (auto& chi : characters_of_order_dividing(m, unit_group(m)->exponent)) {
            if (!chi.is_primitive()) continue;
            auto tau = gauss_sum(chi);
            CHECK(std::abs(std::norm(tau) - (double)m) < 1e-8);
        }
    }
}

TEST_CASE("characters_of_order counts") {
    CHECK(characters_of_order(7, 3).size() == 2);
    CHECK(characters_of_order(8, 3).empty());
    CHECK(characters_of_order(13 * 103, 3).size() == 8);
    // duplicate-free
    auto cs = characters_of_order(13 * 103, 3);
    for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = i + 1; j < cs.size(); ++j)
            CHECK(cs[i].exponents() != cs[j].exponents());
}

TEST_CASE("orthogonality for moduli <= 50") {
    for (i64 m = 1; m <= 50; ++m) {
        auto chars = characters_of_order_dividing(m, unit_group(m)->exponent);
        i64 phi = unit_group(m)->phi;
        REQUIRE((i64)chars.size() == phi);
        for (auto& chi : chars)
            for (auto& psi : chars) {
                std::complex<double> s = 0;
                for (i64 a = 1; a <= m; ++a) s += chi.value(a) * std::conj(psi.value(a));
                bool equal = chi.exponents() == psi.exponents();
                CHECK(std::abs(s - (equal ? (double)phi : 0.0)) < 1e-10);
            }
    }
}

TEST_CASE("chi(-1) = 1 for odd order") {
    for (i64 m : {7, 9, 13, 31, 63, 103}) {
        for (auto& chi : characters_of_order_dividing(m, 15)) {
            if (chi.order() % 2 == 0) continue;
            auto v = chi.eval(-1);
            REQUIRE(v);
            CHECK(v->is_one());
        }
    }
}

TEST_CASE("kronecker characters evaluate via the symbol") {
    for (i128 D : {(i128)-4, (i128)5, (i128)-8, (i128)8, (i128)17, (i128)41, (i128)73, (i128)-164}) {
        auto chi = kronecker_character(D);
        CHECK(chi.order() == 2);
        CHECK(chi.conductor() == (i64)abs128(D));
        for (i64 a = -30; a <= 30; ++a) {
            if (a == 0) continue;
            int k = arith::kronecker(D, a);
            auto v = chi.eval(a);
            if (k == 0) CHECK(!v);
            else {
                REQUIRE(v);
                CHECK((k == 1) == v->is_one());
            }
        }
    }
    CHECK_THROWS_AS(kronecker_character(10), std::invalid_argument);
}

TEST_CASE("primitive_part and induce round-trip") {
    DirichletCharacter chi(7, {2});
    auto ind = induce(chi, 91);  // 7 * 13
    CHECK(ind.conductor() == 7);
    auto prim = ind.primitive_part();
    CHECK(prim.modulus() == 7);
    CHECK(prim.exponents() == chi.exponents());
    for (i64 a = 1; a < 91; ++a) {
        if (std::gcd(a, (i64)91) != 1) continue;
        CHECK(ind.eval(a) == chi.eval(a));
    }
    CHECK(chi.same_primitive(ind));
}

TEST_SUITE_END();
