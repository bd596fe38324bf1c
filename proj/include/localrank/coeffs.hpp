#pragma once

// Shared a_n coefficient streams.  One stream per curve, built once and cached;
// quadratic-twist families reuse the base curve's prime sweep through
// a_p(E_d) = (d|p) a_p(E) for p prime to d, with the finitely many remaining
// primes recomputed from the twisted minimal model.

#include <memory>
#include <vector>

#include "localrank/elliptic.hpp"

namespace localrank::coeffs {

using elliptic::EllipticCurveQ;

// a_n for 1 <= n <= length; index 0 is unused.
using AnTable = std::shared_ptr<const std::vector<i64>>;

// Coefficients of L(E, s), cached per minimal model.  Thread-safe.
AnTable an_table(const EllipticCurveQ& E, i64 length);

// Register E's twist by d so that an_table(E_d, ...) derives coefficients from
// E's sweep instead of running its own.  Returns the twisted curve.
EllipticCurveQ register_twist(const EllipticCurveQ& base, i128 d);

// a_p list for the given primes (bad primes handled via local data).
std::vector<i64> ap_list(const EllipticCurveQ& E, const std::vector<i64>& primes);

void clear_cache();

}  // namespace localrank::coeffs
