#pragma once

// Local and global root numbers.  Formula path everywhere except additive
// reduction at 2 and 3, where the numeric functional-equation sign is used
// and the local value back-solved when it is determined.

#include <optional>
#include <string>
#include <vector>

#include "localrank/abfield.hpp"
#include "localrank/elliptic.hpp"

namespace localrank::rootnum {

using abfield::Place;
using elliptic::EllipticCurveQ;

struct LocalEntry {
    Place place;
    std::optional<int> value;  // absent when only a product with another place is known
    bool numeric_fallback = false;
};

struct RootNumberReport {
    std::vector<LocalEntry> entries;  // infinity and bad primes only
    int global = 1;
    bool used_numeric = false;
    std::string to_json() const;
};

// Formula value at a place; nullopt for additive reduction at p in {2, 3}.
std::optional<int> local_root_number_formula(const EllipticCurveQ& E, const Place& v);

// Throws std::domain_error("needs-numeric") where the formula path is unavailable.
int local_root_number(const EllipticCurveQ& E, const Place& v);

RootNumberReport global_root_number_report(const EllipticCurveQ& E);
int global_root_number(const EllipticCurveQ& E);

// w(E_D) = chi_D(-N) w(E) for a fundamental discriminant D prime to N.
int quad_twist_sign(const EllipticCurveQ& E, i128 D);

}  // namespace localrank::rootnum
