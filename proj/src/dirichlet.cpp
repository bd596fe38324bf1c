#include "localrank/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace localrank::dirichlet {

using arith::factor;
using arith::powmod;

namespace {

constexpr i64 kDlogTableCap = 1 << 22;

i64 find_primitive_root(i64 p) {
    // Smallest primitive root mod an odd prime p.
    auto f = factor(p - 1);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : f.factors) {
            if (powmod(g, (u64)((p - 1) / (i64)q), p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root found");
}

i64 crt_lift(i64 r, i64 q, i64 m) {
    // x with x = r mod q, x = 1 mod m/q  (q || m).
    i64 m2 = m / q;
    if (m2 == 1) return ((r % m) + m) % m;
    // x = 1 + m2 * t with t = (r - 1) * m2^{-1} mod q (extended Euclid; q not prime in general)
    i64 inv;
    {
        i64 a = m2 % q, b = q, x0 = 1, x1 = 0;
        while (b != 0) {
            i64 t = a / b;
            a -= t * b; std::swap(a, b);
            x0 -= t * x1; std::swap(x0, x1);
        }
        inv = ((x0 % q) + q) % q;
    }
    i64 t = (i64)((i128)(((r - 1) % q + q) % q) * inv % q);
    return (i64)(((i128)m2 * t + 1) % m);
}

// Baby-step giant-step for g^x = a in a cyclic group of order d mod q.
i64 bsgs(i64 g, i64 a, i64 d, i64 q) {
    i64 m = (i64)std::ceil(std::sqrt((double)d));
    std::map<i64, i64> baby;
    i64 cur = 1;
    for (i64 j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = (i64)((i128)cur * g % q);
    }
    i64 ginv_m;  // inverse of g^m mod q
    {
        i64 x = cur % q, y = q, x0 = 1, x1 = 0;
        while (y != 0) { i64 t = x / y; x -= t * y; std::swap(x, y); x0 -= t * x1; std::swap(x0, x1); }
        ginv_m = ((x0 % q) + q) % q;
    }
    i64 gamma = a % q;
    for (i64 i = 0; i <= m; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) {
            i64 x = (i * m + it->second) % d;
            return x;
        }
        gamma = (i64)((i128)gamma * ginv_m % q);
    }
    throw std::logic_error("bsgs: element not in cyclic subgroup");
}

std::mutex g_registry_mutex;
std::map<i64, std::shared_ptr<const UnitGroup>> g_registry;

std::shared_ptr<const UnitGroup> build_unit_group(i64 m) {
    auto G = std::make_shared<UnitGroup>();
    G->modulus = m;
    if (m < 1) throw std::invalid_argument("unit_group: modulus must be positive");
    auto fac = factor(m == 1 ? 1 : m);
    if (m == 1) fac.factors.clear();
    for (auto& [p_, k] : fac.factors) {
        i64 p = (i64)p_;
        i64 q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        if (p == 2) {
            if (k == 1) continue;
            if (k == 2) {
                G->components.push_back({2, 4, 3, 2});
            } else {
                G->components.push_back({2, q, q - 1, 2});
                G->components.push_back({2, q, 5, q / 4});
            }
        } else {
            i64 g = find_primitive_root(p);
            if (k >= 2 && powmod((u64)g, (u64)(p - 1), (u64)((i64)p * p)) == 1) g += p;
            i64 order = q / p * (p - 1);
            G->components.push_back({p, q, g % q, order});
        }
    }
    for (auto& c : G->components) {
        G->generators.push_back(crt_lift(c.generator, c.prime_power, m));
        G->orders.push_back(c.order);
        G->phi *= c.order;
        G->exponent = std::lcm(G->exponent, c.order);
    }
    // Discrete-log tables (residue -> exponent) for the cyclic pieces.
    G->tables_.resize(G->components.size());
    for (size_t i = 0; i < G->components.size(); ++i) {
        auto& c = G->components[i];
        if (c.prime == 2 && c.generator == c.prime_power - 1) continue;  // sign part: no table
        if (c.prime_power > kDlogTableCap) continue;                      // BSGS fallback
        auto& t = G->tables_[i];
        t.assign(c.prime_power, -1);
        i64 cur = 1;
        for (i64 e = 0; e < c.order; ++e) {
            t[cur] = (int32_t)e;
            cur = (i64)((i128)cur * c.generator % c.prime_power);
        }
    }
    return G;
}

}  // namespace

std::shared_ptr<const UnitGroup> unit_group(i64 m) {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = g_registry.find(m);
    if (it != g_registry.end()) return it->second;
    auto G = build_unit_group(m);
    g_registry.emplace(m, G);
    return G;
}

i64 UnitGroup::component_dlog(size_t i, i64 a) const {
    const auto& c = components[i];
    a %= c.prime_power;
    if (a < 0) a += c.prime_power;
    if (c.prime == 2 && c.generator == c.prime_power - 1)
        throw std::logic_error("sign component handled by caller");
    if (!tables_[i].empty()) {
        int32_t v = tables_[i][a];
        if (v < 0) throw std::logic_error("dlog: element outside cyclic component");
        return v;
    }
    return bsgs(c.generator, a, c.order, c.prime_power);
}

std::vector<i64> UnitGroup::dlog(i128 a) const {
    if (gcd128(a, modulus) != 1)
        throw std::invalid_argument("dlog: argument not coprime to modulus");
    std::vector<i64> out(components.size(), 0);
    for (size_t i = 0; i < components.size(); ++i) {
        const auto& c = components[i];
        i64 q = c.prime_power;
        i64 r = (i64)(((a % q) + q) % q);
        if (c.prime == 2 && q >= 8 && c.generator == q - 1) {
            // sign part of (Z/2^k)^*: a = (-1)^eps 5^t; eps from a mod 4.
            out[i] = (r % 4 == 3) ? 1 : 0;
        } else if (c.prime == 2 && q >= 8 && c.generator == 5) {
            i64 rr = (r % 4 == 3) ? q - r : r;  // strip the sign part
            out[i] = component_dlog(i, rr);
        } else if (c.prime == 2 && q == 4) {
            out[i] = (r % 4 == 3) ? 1 : 0;
        } else {
            out[i] = component_dlog(i, r);
        }
    }
    return out;
}

std::complex<double> RootOfUnity::to_complex() const {
    double t = 2.0 * std::numbers::pi * (double)num / (double)den;
    return {std::cos(t), std::sin(t)};
}

namespace {

RootOfUnity reduce_root(i64 num, i64 den) {
    num %= den;
    if (num < 0) num += den;
    i64 g = std::gcd(num, den);
    if (num == 0) return {0, 1};
    return {num / g, den / g};
}

// Conductor of the character with exponent e on one component.
i64 component_conductor(const UnitComponent& c, i64 e) {
    e %= c.order;
    if (e < 0) e += c.order;
    if (e == 0) return 1;
    if (c.prime == 2) {
        if (c.prime_power == 4) return 4;
        if (c.generator == c.prime_power - 1) return 4;  // sign character
        // order of the 5-part restriction is 2^a; conductor 2^(a+2)
        i64 n = c.order / std::gcd(c.order, e);
        return 4 * n;
    }
    i64 n = c.order / std::gcd(c.order, e);
    i64 cond = c.prime;
    i64 nn = n;
    while (nn % c.prime == 0) { cond *= c.prime; nn /= c.prime; }
    return cond;
}

}  // namespace

DirichletCharacter::DirichletCharacter() : DirichletCharacter(1, {}) {}

DirichletCharacter::DirichletCharacter(i64 modulus, std::vector<i64> exponents)
    : modulus_(modulus), exponents_(std::move(exponents)), group_(unit_group(modulus)) {
    if (exponents_.size() != group_->components.size())
        throw std::invalid_argument("character: exponent vector length mismatch");
    order_ = 1;
    conductor_ = 1;
    for (size_t i = 0; i < exponents_.size(); ++i) {
        i64 d = group_->orders[i];
        exponents_[i] %= d;
        if (exponents_[i] < 0) exponents_[i] += d;
        order_ = std::lcm(order_, d / std::gcd(d, exponents_[i]));
        i64 cc = component_conductor(group_->components[i], exponents_[i]);
        // the two 2-adic components can both contribute; conductor is the max 2-power times odd parts
        if (group_->components[i].prime == 2) {
            // merge with any previous 2-part by taking the max power
            i64 prev2 = 1;
            while (conductor_ % 2 == 0) { conductor_ /= 2; prev2 *= 2; }
            conductor_ *= std::max(prev2, cc);
        } else {
            conductor_ *= cc;
        }
    }
}

std::optional<RootOfUnity> DirichletCharacter::eval(i128 a) const {
    if (gcd128(a, modulus_) != 1) return std::nullopt;
    if (kronecker_disc_ != 0) {
        int v = arith::kronecker(kronecker_disc_, a);
        return v == 1 ? RootOfUnity{0, 1} : RootOfUnity{1, 2};
    }
    auto t = group_->dlog(a);
    i64 L = group_->exponent;
    i64 acc = 0;
    for (size_t i = 0; i < exponents_.size(); ++i) {
        i64 d = group_->orders[i];
        acc = (acc + (i128)exponents_[i] * t[i] % L * (L / d)) % L;
    }
    return reduce_root(acc, L);
}

std::complex<double> DirichletCharacter::value(i128 a) const {
    auto r = eval(a);
    if (!r) return {0.0, 0.0};
    return r->to_complex();
}

DirichletCharacter DirichletCharacter::inverse() const {
    std::vector<i64> e(exponents_.size());
    for (size_t i = 0; i < e.size(); ++i)
        e[i] = (group_->orders[i] - exponents_[i]) % group_->orders[i];
    return DirichletCharacter(modulus_, std::move(e));
}

DirichletCharacter DirichletCharacter::power(i64 k) const {
    std::vector<i64> e(exponents_.size());
    for (size_t i = 0; i < e.size(); ++i) {
        i64 d = group_->orders[i];
        i64 kk = ((k % d) + d) % d;
        e[i] = (i64)((i128)exponents_[i] * kk % d);
    }
    return DirichletCharacter(modulus_, std::move(e));
}

DirichletCharacter DirichletCharacter::primitive_part() const {
    if (is_primitive()) return *this;
    i64 f = conductor_;
    auto Gf = unit_group(f);
    std::vector<i64> e(Gf->components.size());
    // Value on each generator of (Z/f)^* determines the exponent there.
    i64 rest = 1;
    {
        // part of modulus supported outside f
        i64 m = modulus_;
        auto fac = factor(m);
        for (auto& [p, k] : fac.factors) {
            i64 q = 1;
            for (int i = 0; i < k; ++i) q *= (i64)p;
            if (f % (i64)p != 0) rest *= q;
        }
    }
    for (size_t i = 0; i < Gf->generators.size(); ++i) {
        i64 g = Gf->generators[i];
        // lift: = g mod f, = 1 mod rest  (then coprime to modulus_)
        i64 lift = g;
        if (rest > 1) {
            i128 M = (i128)f * rest;
            // x = g + f*t with x = 1 mod rest
            i64 finv;
            {
                i64 aa = f % rest, bb = rest, x0 = 1, x1 = 0;
                while (bb != 0) { i64 t = aa / bb; aa -= t * bb; std::swap(aa, bb); x0 -= t * x1; std::swap(x0, x1); }
                finv = ((x0 % rest) + rest) % rest;
            }
            i64 t = (i64)((i128)(((1 - g) % rest + rest) % rest) * finv % rest);
            lift = (i64)(((i128)g + (i128)f * t) % M);
        }
        auto v = eval(lift);
        if (!v) throw std::logic_error("primitive_part: lift not coprime");
        i64 d = Gf->orders[i];
        if (d % v->den != 0) throw std::logic_error("primitive_part: order mismatch");
        e[i] = v->num * (d / v->den);
    }
    return DirichletCharacter(f, std::move(e));
}

bool DirichletCharacter::same_primitive(const DirichletCharacter& other) const {
    return canonical_key() == other.canonical_key();
}

std::vector<i64> DirichletCharacter::canonical_key() const {
    auto p = primitive_part();
    std::vector<i64> key;
    key.push_back(p.modulus());
    for (i64 e : p.exponents()) key.push_back(e);
    return key;
}

DirichletCharacter induce(const DirichletCharacter& chi, i64 M) {
    if (chi.modulus() == M) return chi;
    if (M % chi.conductor() != 0)
        throw std::invalid_argument("induce: conductor does not divide target modulus");
    auto prim = chi.primitive_part();
    auto GM = unit_group(M);
    std::vector<i64> e(GM->components.size());
    for (size_t i = 0; i < GM->generators.size(); ++i) {
        // generators of (Z/M)^* are coprime to f | M, so prim evaluates directly
        auto v = prim.eval(GM->generators[i]);
        if (!v) throw std::logic_error("induce: generator shares factor with conductor");
        i64 d = GM->orders[i];
        if (d % v->den != 0) throw std::logic_error("induce: order mismatch");
        e[i] = v->num * (d / v->den);
    }
    return DirichletCharacter(M, std::move(e));
}

DirichletCharacter product(const DirichletCharacter& a, const DirichletCharacter& b) {
    i64 M = std::lcm(a.modulus(), b.modulus());
    auto A = induce(a, M);
    auto B = induce(b, M);
    std::vector<i64> e(A.exponents().size());
    auto G = A.group();
    for (size_t i = 0; i < e.size(); ++i)
        e[i] = (A.exponents()[i] + B.exponents()[i]) % G->orders[i];
    return DirichletCharacter(M, std::move(e));
}

DirichletCharacter kronecker_character(i128 fundamental_disc) {
    i128 D = fundamental_disc;
    if (D == 1) return DirichletCharacter();
    i128 r = ((D % 4) + 4) % 4;
    if (D == 0 || (r != 0 && r != 1))
        throw std::invalid_argument("kronecker_character: not a fundamental discriminant");
    i64 m = (i64)abs128(D);
    auto G = unit_group(m);
    std::vector<i64> e(G->components.size());
    for (size_t i = 0; i < G->components.size(); ++i) {
        int v = arith::kronecker(D, G->generators[i]);
        if (v == 0) throw std::invalid_argument("kronecker_character: generator not coprime");
        if (v == 1) e[i] = 0;
        else {
            if (G->orders[i] % 2 != 0)
                throw std::invalid_argument("kronecker_character: not a fundamental discriminant");
            e[i] = G->orders[i] / 2;
        }
    }
    DirichletCharacter chi(m, std::move(e));
    if (!chi.is_primitive())
        throw std::invalid_argument("kronecker_character: not a fundamental discriminant");
    chi.kronecker_disc_ = (i64)D;
    return chi;
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw std::invalid_argument("gauss_sum: character must be primitive");
    i64 m = chi.modulus();
    if (m == 1) return {1.0, 0.0};
    std::complex<double> tau = 0.0;
    for (i64 a = 1; a < m; ++a) {
        auto v = chi.eval(a);
        if (!v) continue;
        double t = 2.0 * std::numbers::pi * (double)a / (double)m;
        tau += v->to_complex() * std::complex<double>{std::cos(t), std::sin(t)};
    }
    return tau;
}

std::vector<DirichletCharacter> characters_of_order_dividing(i64 m, i64 n) {
    auto G = unit_group(m);
    size_t r = G->components.size();
    std::vector<i64> counts(r), strides(r);
    for (size_t i = 0; i < r; ++i) {
        i64 d = G->orders[i];
        i64 g = std::gcd(d, n);
        counts[i] = g;
        strides[i] = d / g;
    }
    std::vector<DirichletCharacter> out;
    std::vector<i64> idx(r, 0);
    while (true) {
        std::vector<i64> e(r);
        for (size_t i = 0; i < r; ++i) e[i] = idx[i] * strides[i];
        out.emplace_back(m, std::move(e));
        size_t i = 0;
        while (i < r && ++idx[i] == counts[i]) { idx[i] = 0; ++i; }
        if (i == r) break;
    }
    return out;
}

std::vector<DirichletCharacter> characters_of_order(i64 m, i64 n) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : characters_of_order_dividing(m, n))
        if (chi.order() == n) out.push_back(chi);
    return out;
}

}  // namespace localrank::dirichlet
