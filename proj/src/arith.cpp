#include "localrank/arith.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace localrank::arith {

i128 Factorization::recompose() const {
    i128 v = sign;
    for (auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) v = mul_checked(v, p);
    return v;
}

i128 Factorization::squarefree_part() const {
    i128 s = 1;
    for (auto& [p, e] : factors)
        for (int i = 0; i < e / 2; ++i) s = mul_checked(s, p);
    return s;
}

u128 mulmod(u128 a, u128 b, u128 m) {
    a %= m; b %= m;
    if (m <= (u128)UINT64_MAX) return (a * b) % m;
    // Shift-add for moduli past 64 bits; a*b would overflow 128 bits.
    u128 r = 0;
    while (b > 0) {
        if (b & 1) { r += a; if (r >= m) r -= m; }
        a <<= 1; if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

u128 powmod(u128 x, u128 e, u128 m) {
    if (m == 1) return 0;
    u128 r = 1;
    x %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, x, m);
        x = mulmod(x, x, m);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin_witness(u128 n, u128 a, u128 d, int s) {
    a %= n;
    if (a == 0) return true;
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// First twelve primes prove primality below 3.3e24; the rest add margin
// for the (rare) larger inputs inside the 2^96 desk bound.
constexpr u64 kWitnesses[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                              41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

u128 rho_step(u128 x, u128 c, u128 n) { return (mulmod(x, x, n) + c) % n; }

// Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n.
i128 pollard_rho(i128 n_) {
    u128 n = (u128)n_;
    for (u128 c = 1;; ++c) {
        u128 x = 2, y = 2, d = 1;
        u128 q = 1;
        int steps = 0;
        while (d == 1) {
            x = rho_step(x, c, n);
            y = rho_step(rho_step(y, c, n), c, n);
            u128 diff = x > y ? x - y : y - x;
            if (diff == 0) { d = 0; break; }  // cycle; retry with new c
            q = mulmod(q, diff, n);
            if (++steps % 64 == 0) {
                d = (u128)gcd128((i128)q, (i128)n);
                if (d == n) { d = 0; break; }
            }
        }
        if (d == 0) continue;
        if (d > 1 && d < n) return (i128)d;
        // Rare: batched gcd jumped past the factor; redo stepwise.
        x = 2; y = 2; d = 1;
        while (d == 1) {
            x = rho_step(x, c, n);
            y = rho_step(rho_step(y, c, n), c, n);
            u128 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = (u128)gcd128((i128)diff, (i128)n);
        }
        if (d > 1 && d < n) return (i128)d;
    }
}

void factor_into(i128 n, std::vector<std::pair<i128, int>>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back({n, 1}); return; }
    i128 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime(i128 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == (i128)p) return true;
        if (n % p == 0) return false;
    }
    u128 m = (u128)n;
    u128 d = m - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : kWitnesses)
        if (!miller_rabin_witness(m, a, d, s)) return false;
    return true;
}

Factorization factor(i128 n) {
    if (n == 0) throw std::invalid_argument("factor: zero input");
    if (abs128(n) >= kFactorBound)
        throw std::invalid_argument("factor: |n| >= 2^96 exceeds desk-scale bound");
    Factorization f;
    f.value = n;
    f.sign = n < 0 ? -1 : 1;
    i128 m = abs128(n);
    std::vector<std::pair<i128, int>> raw;
    for (i64 p : primes_below_million()) {
        if ((i128)p * p > m) break;
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            raw.push_back({p, e});
        }
    }
    if (m > 1) {
        std::vector<std::pair<i128, int>> rest;
        factor_into(m, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            int e = 0;
            while (j < rest.size() && rest[j].first == rest[i].first) { e += rest[j].second; ++j; }
            raw.push_back({rest[i].first, e});
            i = j;
        }
    }
    std::sort(raw.begin(), raw.end());
    f.factors = std::move(raw);
    return f;
}

int jacobi(i128 a, i128 n) {
    if (n <= 0 || n % 2 == 0)
        throw std::invalid_argument("jacobi: modulus must be odd and positive");
    a %= n;
    if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i128 r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker(i128 a, i128 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int t = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) t = -t;
    }
    int v = 0;
    while (n % 2 == 0) { n /= 2; ++v; }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        i128 r = ((a % 8) + 8) % 8;
        if (v % 2 == 1 && (r == 3 || r == 5)) t = -t;
    }
    return t * jacobi(a, n);
}

bool nth_power_residue(i128 a, i128 q, i64 n) {
    if (n <= 0) throw std::invalid_argument("nth_power_residue: n must be positive");
    if (!is_prime(q) || q == 2)
        throw std::invalid_argument("nth_power_residue: q must be an odd prime");
    i128 r = a % q;
    if (r < 0) r += q;
    if (r == 0) throw std::invalid_argument("nth_power_residue: a divisible by q");
    i128 g = gcd128(n, q - 1);
    return powmod((u128)r, (u128)((q - 1) / g), (u128)q) == 1;
}

SquareClass square_class(i128 d) {
    if (d == 0) throw std::invalid_argument("square_class: zero input");
    Factorization f = factor(d);
    i128 s = f.sign;
    for (auto& [p, e] : f.factors)
        if (e % 2 == 1) s = mul_checked(s, p);
    i128 r = ((s % 4) + 4) % 4;
    return {s, r == 1 ? s : 4 * s};
}

const std::vector<i64>& primes_below_million() {
    static std::once_flag flag;
    static std::vector<i64> primes;
    std::call_once(flag, [] { primes = primes_up_to(1000000); });
    return primes;
}

std::vector<i64> primes_up_to(i64 bound) {
    std::vector<bool> comp(bound + 1, false);
    std::vector<i64> primes;
    for (i64 i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (i64 j = i * i; j <= bound; j += i) comp[j] = true;
    }
    return primes;
}

}  // namespace localrank::arith
