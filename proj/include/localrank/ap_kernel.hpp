#pragma once

// Trace-of-Frobenius sweep kernels.  For an odd prime p of good reduction,
//   a_p = - sum_x chi_p(4x^3 + b2 x^2 + 2 b4 x + b6),
// evaluated with finite differences (three adds per x) against a table of
// squares mod p.  The OpenMP kernel partitions the prime list; the serial
// kernel is the reference the tests compare against.

#include <vector>

#include "localrank/int128.hpp"

namespace localrank::kernels {

// a_p for a single odd prime of good reduction; scratch is the square table
// buffer (resized as needed, reusable across calls).
i64 ap_char_sum(i128 b2, i128 b4, i128 b6, i64 p, std::vector<unsigned char>& scratch);

// a_p for every prime in `good_primes` (all odd, all good for the curve).
std::vector<i64> ap_sweep_serial(i128 b2, i128 b4, i128 b6, const std::vector<i64>& good_primes);
std::vector<i64> ap_sweep_parallel(i128 b2, i128 b4, i128 b6, const std::vector<i64>& good_primes);

}  // namespace localrank::kernels
