#include "localrank/coeffs.hpp"

#include <map>
#include <mutex>

#include "localrank/ap_kernel.hpp"
#include "localrank/arith.hpp"

namespace localrank::coeffs {

namespace {

using CurveKey = std::array<i128, 5>;

CurveKey key_of(const EllipticCurveQ& E) {
    return {E.a1(), E.a2(), E.a3(), E.a4(), E.a6()};
}

struct TwistLink {
    CurveKey base;
    i128 disc;  // squarefree twisting class
};

std::mutex g_mutex;
std::map<CurveKey, AnTable> g_an;                  // longest table built so far
std::map<CurveKey, std::vector<i64>> g_ap;         // a_p aligned with g_ap_primes
std::map<CurveKey, std::vector<i64>> g_ap_primes;  // primes covered
std::map<CurveKey, TwistLink> g_twists;
std::map<CurveKey, EllipticCurveQ> g_curves;

// a_p for every prime <= bound, honest per-curve sweep (parallel kernel for
// the good odd primes, local data elsewhere).
std::vector<i64> ap_sweep_curve(const EllipticCurveQ& E, const std::vector<i64>& primes) {
    std::vector<i64> good;
    good.reserve(primes.size());
    for (i64 p : primes)
        if (p != 2 && E.conductor() % p != 0) good.push_back(p);
    auto good_ap = kernels::ap_sweep_parallel(E.b2(), E.b4(), E.b6(), good);
    std::vector<i64> out(primes.size());
    size_t gi = 0;
    for (size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] != 2 && E.conductor() % primes[i] != 0) out[i] = good_ap[gi++];
        else out[i] = E.ap(primes[i]);
    }
    return out;
}

// a_p table for E under the cache, extending as needed.  Caller holds no lock.
std::pair<std::vector<i64>, std::vector<i64>> ap_up_to(const EllipticCurveQ& E, i64 bound) {
    CurveKey key = key_of(E);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_ap_primes.find(key);
        if (it != g_ap_primes.end() && !it->second.empty() && it->second.back() >= bound) {
            return {it->second, g_ap[key]};
        }
    }
    auto primes = arith::primes_up_to(bound);
    std::vector<i64> ap;

    TwistLink link;
    bool is_twist = false;
    EllipticCurveQ base = E;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_twists.find(key);
        if (it != g_twists.end()) {
            is_twist = true;
            link = it->second;
            base = g_curves.at(it->second.base);
        }
    }
    if (is_twist) {
        auto [bprimes, bap] = ap_up_to(base, bound);
        (void)bprimes;
        i128 D = arith::square_class(link.disc).fundamental_discriminant;
        ap.resize(primes.size());
        for (size_t i = 0; i < primes.size(); ++i) {
            i64 p = primes[i];
            // direct local computation wherever the twist touches the reduction
            if (p == 2 || link.disc % p == 0 || base.conductor() % p == 0) ap[i] = E.ap(p);
            else ap[i] = arith::kronecker(D, p) * bap[i];
        }
    } else {
        ap = ap_sweep_curve(E, primes);
    }
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        g_ap[key] = ap;
        g_ap_primes[key] = primes;
        g_curves.emplace(key, E);
    }
    return {primes, ap};
}

}  // namespace

std::vector<i64> ap_list(const EllipticCurveQ& E, const std::vector<i64>& primes) {
    if (primes.empty()) return {};
    auto [cached_primes, cached_ap] = ap_up_to(E, primes.back());
    std::vector<i64> out;
    out.reserve(primes.size());
    size_t j = 0;
    for (i64 p : primes) {
        while (j < cached_primes.size() && cached_primes[j] < p) ++j;
        if (j >= cached_primes.size() || cached_primes[j] != p)
            throw std::invalid_argument("ap_list: non-prime requested");
        out.push_back(cached_ap[j]);
    }
    return out;
}

AnTable an_table(const EllipticCurveQ& E, i64 length) {
    CurveKey key = key_of(E);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_an.find(key);
        if (it != g_an.end() && (i64)it->second->size() > length) return it->second;
    }
    auto [primes, ap] = ap_up_to(E, std::max<i64>(length, 16));

    // smallest-prime-factor sieve
    std::vector<int32_t> spf(length + 1, 0);
    for (i64 p : primes) {
        if (p > length) break;
        for (i64 m = p; m <= length; m += p)
            if (spf[m] == 0) spf[m] = (int32_t)p;
    }
    std::map<i64, i64> ap_of;
    for (size_t i = 0; i < primes.size(); ++i)
        if (primes[i] <= length) ap_of[primes[i]] = ap[i];

    auto an = std::make_shared<std::vector<i64>>(length + 1, 0);
    auto& A = *an;
    if (length >= 1) A[1] = 1;
    for (i64 n = 2; n <= length; ++n) {
        i64 p = spf[n];
        i64 q = p, m = n / p;
        while (m % p == 0) { q *= p; m /= p; }
        if (m > 1) {
            A[n] = A[q] * A[m];  // multiplicativity across coprime parts
            continue;
        }
        // n = p^k: Hecke recursion at good p, a_p^k at multiplicative p, 0 additive
        i64 appv = ap_of.at(p);
        if (n == p) { A[n] = appv; continue; }
        bool good = E.conductor() % p != 0;
        if (good) {
            i64 pk1 = n / p, pk2 = n / p / p;
            A[n] = appv * A[pk1] - p * A[pk2];
        } else {
            A[n] = appv * A[n / p];
        }
    }
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        g_an[key] = an;
        return g_an[key];
    }
}

EllipticCurveQ register_twist(const EllipticCurveQ& base, i128 d) {
    auto Ed = base.quadratic_twist(d);
    i128 s = arith::square_class(d).squarefree;
    if (s == 1) return Ed;
    std::lock_guard<std::mutex> lock(g_mutex);
    g_curves.emplace(key_of(base), base);
    g_curves.emplace(key_of(Ed), Ed);
    g_twists[key_of(Ed)] = {key_of(base), s};
    return Ed;
}

void clear_cache() {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_an.clear();
    g_ap.clear();
    g_ap_primes.clear();
    g_twists.clear();
    g_curves.clear();
}

}  // namespace localrank::coeffs
