#pragma once

// Dirichlet characters with exact values: a character mod m is an exponent
// vector over the cyclic decomposition of (Z/m)^*.  All algebraic logic
// (orders, conductors, kernels, products) stays in integers; complex values
// appear only at the analytic boundary.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "localrank/arith.hpp"
#include "localrank/int128.hpp"

namespace localrank::dirichlet {

struct UnitComponent {
    i64 prime;
    i64 prime_power;  // p^k
    i64 generator;    // residue mod prime_power generating this cyclic factor
    i64 order;
};

// Cyclic decomposition of (Z/m)^*.  2^k (k >= 3) contributes <-1> x <5>.
struct UnitGroup {
    i64 modulus = 1;
    std::vector<UnitComponent> components;
    std::vector<i64> generators;  // CRT lifts mod modulus, aligned with components
    std::vector<i64> orders;
    i64 phi = 1;
    i64 exponent = 1;  // lcm of orders

    // Discrete log vector of a (requires gcd(a, modulus) = 1).
    std::vector<i64> dlog(i128 a) const;

    // internal: per-component residue -> exponent tables (empty = BSGS fallback)
    std::vector<std::vector<int32_t>> tables_;
    i64 component_dlog(size_t i, i64 a) const;
};

// Cached, immutable once built; 1 <= m < 2^63.
std::shared_ptr<const UnitGroup> unit_group(i64 m);

// Exact root of unity e^(2 pi i num/den), reduced, 0 <= num < den.
struct RootOfUnity {
    i64 num = 0;
    i64 den = 1;
    std::complex<double> to_complex() const;
    bool is_one() const { return num == 0; }
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
};

class DirichletCharacter {
  public:
    DirichletCharacter();  // trivial character mod 1
    DirichletCharacter(i64 modulus, std::vector<i64> exponents);

    i64 modulus() const { return modulus_; }
    const std::vector<i64>& exponents() const { return exponents_; }
    i64 order() const { return order_; }
    i64 conductor() const { return conductor_; }
    bool is_trivial() const { return order_ == 1; }
    bool is_primitive() const { return conductor_ == modulus_; }

    // Exact value at a; nullopt means gcd(a, m) > 1 (value 0).
    std::optional<RootOfUnity> eval(i128 a) const;
    std::complex<double> value(i128 a) const;

    DirichletCharacter inverse() const;
    DirichletCharacter power(i64 k) const;
    // Same primitive character (compares the characters mod their conductors).
    bool same_primitive(const DirichletCharacter& other) const;
    // Canonical key: conductor followed by the exponent vector at the conductor.
    std::vector<i64> canonical_key() const;

    // The character mod its conductor.
    DirichletCharacter primitive_part() const;

    std::shared_ptr<const UnitGroup> group() const { return group_; }

  private:
    i64 modulus_;
    std::vector<i64> exponents_;
    std::shared_ptr<const UnitGroup> group_;
    i64 order_;
    i64 conductor_;
    i64 kronecker_disc_ = 0;  // fast evaluation path for quadratic characters

    friend DirichletCharacter kronecker_character(i128 fundamental_disc);
};

// chi * psi after inducing both to lcm of the moduli.
DirichletCharacter product(const DirichletCharacter& a, const DirichletCharacter& b);
// chi viewed mod M (requires conductor(chi) | M).
DirichletCharacter induce(const DirichletCharacter& chi, i64 M);

// The quadratic character attached to a fundamental discriminant.
DirichletCharacter kronecker_character(i128 fundamental_disc);

// tau(chi) = sum_a chi(a) e^(2 pi i a / m); requires chi primitive.
std::complex<double> gauss_sum(const DirichletCharacter& chi);

// All characters mod m of exact order n, duplicate-free, deterministic order.
std::vector<DirichletCharacter> characters_of_order(i64 m, i64 n);
// All characters mod m of order dividing n.
std::vector<DirichletCharacter> characters_of_order_dividing(i64 m, i64 n);

}  // namespace localrank::dirichlet
