#include "localrank/ap_kernel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace localrank::kernels {

i64 ap_char_sum(i128 b2, i128 b4, i128 b6, i64 p, std::vector<unsigned char>& scratch) {
    // square table: scratch[t] = 1 iff t is a nonzero square mod p
    scratch.assign(p, 0);
    for (i64 k = 1; k <= (p - 1) / 2; ++k) scratch[(i64)((u128)k * k % (u64)p)] = 1;

    u64 P = (u64)p;
    u64 c2 = (u64)(((b2 % p) + p) % p);
    u64 c1 = (u64)((((2 * b4) % p) + p) % p);
    u64 c0 = (u64)(((b6 % p) + p) % p);
    // f(x) = 4x^3 + c2 x^2 + c1 x + c0; finite differences:
    //   d1(x) = f(x+1)-f(x) = 12x^2 + (12+2c2)x + (4+c2+c1)
    //   d2(x) = d1(x+1)-d1(x) = 24x + (24+2c2)
    //   d3 = 24
    u64 f = c0;
    u64 d1 = (4 + c2 + c1) % P;
    u64 d2 = (24 + 2 * c2) % P;
    const u64 d3 = 24 % P;
    i64 sum = 0;
    for (i64 x = 0; x < p; ++x) {
        if (f != 0) sum += scratch[f] ? 1 : -1;
        f += d1; if (f >= P) f -= P;
        d1 += d2; if (d1 >= P) d1 -= P;
        d2 += d3; if (d2 >= P) d2 -= P;
    }
    return -sum;
}

std::vector<i64> ap_sweep_serial(i128 b2, i128 b4, i128 b6, const std::vector<i64>& good_primes) {
    std::vector<i64> out(good_primes.size());
    std::vector<unsigned char> scratch;
    for (size_t i = 0; i < good_primes.size(); ++i)
        out[i] = ap_char_sum(b2, b4, b6, good_primes[i], scratch);
    return out;
}

std::vector<i64> ap_sweep_parallel(i128 b2, i128 b4, i128 b6, const std::vector<i64>& good_primes) {
    std::vector<i64> out(good_primes.size());
#ifdef _OPENMP
#pragma omp parallel
    {
        std::vector<unsigned char> scratch;
#pragma omp for schedule(dynamic, 64)
        for (size_t i = 0; i < good_primes.size(); ++i)
            out[i] = ap_char_sum(b2, b4, b6, good_primes[i], scratch);
    }
#else
    out = ap_sweep_serial(b2, b4, b6, good_primes);
#endif
    return out;
}

}  // namespace localrank::kernels
