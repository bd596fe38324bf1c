#pragma once

// Exact integer arithmetic: factorization, primality, power-residue symbols,
// square classes. Everything here is a pure function on immutable values.

#include <utility>
#include <vector>

#include "localrank/int128.hpp"

namespace localrank::arith {

struct Factorization {
    i128 value = 1;
    int sign = 1;
    std::vector<std::pair<i128, int>> factors;  // (prime, exponent), primes increasing

    i128 recompose() const;
    // Largest s with s^2 | value; value = sign * squarefree * s^2.
    i128 squarefree_part() const;
};

// Desk-scale bound: inputs must satisfy |n| < 2^96.
inline const i128 kFactorBound = (i128)1 << 96;

// Complete factorization of n != 0, |n| < 2^96.  Trial division to 10^6,
// then Brent-cycle rho; every reported prime passes the deterministic
// Miller-Rabin test below.
Factorization factor(i128 n);

// Deterministic for n < 3.3e24 (first twelve prime witnesses); extra fixed
// witnesses are used above that.
bool is_prime(i128 n);

// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(i128 a, i128 n);

// Kronecker symbol (a/n), extended to all n (including 0 and negatives).
int kronecker(i128 a, i128 n);

// True iff a is an n-th power mod the odd prime q; requires gcd(a, q) = 1.
// Computed as a^((q-1)/gcd(n,q-1)) == 1 mod q; q is re-verified prime.
bool nth_power_residue(i128 a, i128 q, i64 n);

struct SquareClass {
    i128 squarefree;             // squarefree part, sign included
    i128 fundamental_discriminant;  // disc of Q(sqrt d)
};

SquareClass square_class(i128 d);

// x^e mod m for m >= 1 (m may exceed 2^64; e >= 0).
u128 powmod(u128 x, u128 e, u128 m);
u128 mulmod(u128 a, u128 b, u128 m);

// Shared small-prime machinery.
const std::vector<i64>& primes_below_million();
// All primes <= bound (sieved fresh; bound <= 2^31).
std::vector<i64> primes_up_to(i64 bound);

}  // namespace localrank::arith
