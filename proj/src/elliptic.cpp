#include "localrank/elliptic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "localrank/ap_kernel.hpp"
#include "localrank/arith.hpp"

namespace localrank::elliptic {

namespace {

i64 modp(i128 a, i64 p) {
    i64 r = (i64)(a % p);
    return r < 0 ? r + p : r;
}

// x^{-1} mod p for prime p
i64 invp(i64 x, i64 p) {
    i64 a = modp(x, p), b = p, x0 = 1, x1 = 0;
    while (b != 0) { i64 t = a / b; a -= t * b; std::swap(a, b); x0 -= t * x1; std::swap(x0, x1); }
    return ((x0 % p) + p) % p;
}

struct Model {
    i128 a1, a2, a3, a4, a6;

    i128 b2() const { return a1 * a1 + 4 * a2; }
    i128 b4() const { return 2 * a4 + a1 * a3; }
    i128 b6() const { return a3 * a3 + 4 * a6; }
    i128 b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    i128 disc() const {
        i128 B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    // x -> x + r, y -> y + s x + t (u = 1)
    void translate(i128 r, i128 s, i128 t) {
        i128 A1 = a1 + 2 * s;
        i128 A2 = a2 - s * a1 + 3 * r - s * s;
        i128 A3 = a3 + r * a1 + 2 * t;
        i128 A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        i128 A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        a1 = A1; a2 = A2; a3 = A3; a4 = A4; a6 = A6;
    }
};

// Multiplicity-aware roots of a monic cubic mod p (coeffs already reduced).
struct CubicRoots {
    int distinct = 0;
    i64 multiple_root = -1;  // root of multiplicity >= 2, if any
    int multiplicity = 1;    // its multiplicity
};

CubicRoots cubic_roots_modp(i64 A, i64 B, i64 C, i64 p) {
    CubicRoots out;
    for (i64 r = 0; r < p; ++r) {
        // divide T^3 + A T^2 + B T + C by (T - r) repeatedly
        i64 q2 = 1, q1 = (A + r) % p, q0 = (B + r * q1) % p;
        i64 rem = (C + r * q0) % p;
        if (rem != 0) continue;
        ++out.distinct;
        // multiplicity: evaluate quotient T^2 + q1 T + q0 at r
        i64 v = ((r * r + q1 * r) % p + q0) % p;
        (void)q2;
        if (v == 0) {
            out.multiple_root = r;
            // triple? divide again: quotient T + (q1 + r), remainder q0 + r(q1 + r)
            i64 v2 = (q1 + 2 * r) % p;
            out.multiplicity = (v2 % p + p) % p == 0 ? 3 : 2;
            // careful: triple iff (T-r) divides T + (q1 + r)? that linear has root -(q1+r);
            // triple root means r == -(q1+r) mod p i.e. q1 + 2r == 0 mod p -- as computed.
        }
    }
    if (out.multiplicity == 3) out.distinct = 1;
    return out;
}

bool quadratic_separable(i64 lin, i64 cst, i64 a_lead, i64 p) {
    // a_lead X^2 + lin X + cst mod p, a_lead nonzero mod p
    if (p == 2) return lin % 2 != 0;
    i64 d = ((lin % p) * (lin % p) % p - 4 * ((a_lead % p) * (cst % p) % p) % p) % p;
    return ((d % p) + p) % p != 0;
}

// Double root of an inseparable quadratic a X^2 + b X + c mod p (a nonzero).
i64 quadratic_double_root(i64 a, i64 b, i64 c, i64 p) {
    a = ((a % p) + p) % p; b = ((b % p) + p) % p; c = ((c % p) + p) % p;
    if (p == 2) return (i64)((i128)c * invp(a, 2) % 2);  // X^2 = c/a
    return (i64)((i128)(p - b) % p * invp(2 * a % p, p) % p);
}

}  // namespace

LocalData tate_algorithm(i128 A1, i128 A2, i128 A3, i128 A4, i128 A6, i64 p) {
    if (p >= (1 << 26)) throw std::invalid_argument("tate_algorithm: prime beyond desk-scale bound");
    Model m{A1, A2, A3, A4, A6};
    LocalData out;
    out.p = p;

restart:
    i128 disc = m.disc();
    if (disc == 0) throw std::invalid_argument("tate_algorithm: singular model");
    int n = (abs128(disc) % p == 0) ? valuation(disc, p) : 0;
    out.v_disc = n;
    if (n == 0) {
        out.kind = Reduction::Good;
        out.kodaira = "I0";
        out.conductor_exponent = 0;
        return out;
    }

    // move the singular point of the reduction to (0, 0)
    {
        i64 x0 = -1, y0 = -1;
        if (p == 2) {
            for (i64 x = 0; x < 2 && x0 < 0; ++x)
                for (i64 y = 0; y < 2; ++y) {
                    i64 F = modp(y * y + m.a1 * x * y + m.a3 * y - x * x * x - m.a2 * x * x -
                                     m.a4 * x - m.a6, 2);
                    i64 Fx = modp(m.a1 * y - 3 * x * x - 2 * m.a2 * x - m.a4, 2);
                    i64 Fy = modp(2 * y + m.a1 * x + m.a3, 2);
                    if (F == 0 && Fx == 0 && Fy == 0) { x0 = x; y0 = y; break; }
                }
        } else {
            i64 i2 = invp(2, p);
            for (i64 x = 0; x < p; ++x) {
                i64 y = (i64)((i128)(p - modp(m.a1 * x + m.a3, p)) * i2 % p);
                i64 F = modp((i128)y * y + m.a1 * x * y + m.a3 * y - (i128)x * x * x -
                                 m.a2 * x * x - m.a4 * x - m.a6, p);
                i64 Fx = modp(m.a1 * y - 3 * (i128)x * x - 2 * m.a2 * x - m.a4, p);
                if (F == 0 && Fx == 0) { x0 = x; y0 = y; break; }
            }
        }
        if (x0 < 0) throw std::logic_error("tate: singular point not found");
        m.translate(x0, 0, y0);
    }
    // now p | a3, a4, a6

    if (modp(m.b2(), p) != 0) {
        out.kodaira = "I" + std::to_string(n);
        out.conductor_exponent = 1;
        // split iff T^2 + a1 T - a2 has a root in F_p
        bool split;
        if (p == 2) {
            i64 a1r = modp(m.a1, 2), a2r = modp(m.a2, 2);
            split = (a2r == 0) || ((1 + a1r + (2 - a2r)) % 2 == 0);
        } else {
            split = arith::jacobi(modp(m.b2(), p), p) == 1;
        }
        out.kind = split ? Reduction::SplitMultiplicative : Reduction::NonsplitMultiplicative;
        return out;
    }

    out.kind = Reduction::Additive;
    auto val = [&](i128 v) { return v == 0 ? INT32_MAX : valuation(v, p); };

    if (val(m.a6) < 2) { out.kodaira = "II"; out.conductor_exponent = n; return out; }
    if (val(m.b8()) < 3) { out.kodaira = "III"; out.conductor_exponent = n - 1; return out; }
    if (val(m.b6()) < 3) { out.kodaira = "IV"; out.conductor_exponent = n - 2; return out; }

    // normalize: p | a1, a2;  p^2 | a3, a4;  p^3 | a6
    if (p == 2) {
        if (modp(m.a1, 2) != 0) throw std::logic_error("tate: a1 odd with 2 | b2");
        m.translate(0, modp(m.a2, 2), 0);
        if (val(m.a3) < 2) throw std::logic_error("tate: v2(a3) < 2 past step 5");
        i64 tau = modp(m.a6 / 4, 2);
        m.translate(0, 0, 2 * tau);
    } else {
        i64 i2 = invp(2, p);
        i64 s = (i64)((i128)(p - modp(m.a1, p)) * i2 % p);
        m.translate(0, s, 0);
        if (val(m.a3) == 1) {
            i64 tau = (i64)((i128)(p - modp(m.a3 / p, p)) * i2 % p);
            m.translate(0, 0, (i128)p * tau);
        }
    }
    if (val(m.a1) < 1 || val(m.a2) < 1 || val(m.a3) < 2 || val(m.a4) < 2 || val(m.a6) < 3)
        throw std::logic_error("tate: normalization failed");

    // P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3 mod p
    {
        i64 A = modp(m.a2 / p, p), B = modp(m.a4 / ((i128)p * p), p),
            C = modp(m.a6 / ((i128)p * p * p), p);
        auto roots = cubic_roots_modp(A, B, C, p);
        bool separable = (roots.multiple_root < 0);
        if (separable) {
            out.kodaira = "I0*";
            out.conductor_exponent = n - 4;
            return out;
        }
        if (roots.multiplicity == 2) {
            // type I_nu*, nu >= 1
            m.translate((i128)p * roots.multiple_root, 0, 0);
            if (modp(m.a2 / p, p) == 0) throw std::logic_error("tate: I_n* with p^2 | a2");
            auto exact_div = [&](i128 v, i128 q) {
                if (v % q != 0) throw std::logic_error("tate: valuation bookkeeping failed");
                return v / q;
            };
            int k = 1;
            while (true) {
                i128 pk1 = 1;
                for (int i = 0; i < k + 1; ++i) pk1 *= p;
                i128 p2k2 = pk1 * pk1;  // p^{2k+2}
                // Y^2 + (a3/p^{k+1}) Y - (a6/p^{2k+2})
                i64 alpha = modp(exact_div(m.a3, pk1), p);
                i64 gamma = modp(-exact_div(m.a6, p2k2), p);
                if (quadratic_separable(alpha, (p - gamma) % p, 1, p)) {
                    int nu = 2 * k - 1;
                    out.kodaira = "I" + std::to_string(nu) + "*";
                    out.conductor_exponent = n - 4 - nu;
                    return out;
                }
                i64 y0 = quadratic_double_root(1, alpha, (p - gamma) % p, p);
                m.translate(0, 0, pk1 * y0);
                // x-quadratic: (a2/p) X^2 + (a4/p^{k+2}) X + (a6/p^{2k+3})
                i64 Aq = modp(exact_div(m.a2, p), p);
                i64 Bq = modp(exact_div(m.a4, pk1 * p), p);
                i64 Cq = modp(exact_div(m.a6, p2k2 * p), p);
                if (quadratic_separable(Bq, Cq, Aq, p)) {
                    int nu = 2 * k;
                    out.kodaira = "I" + std::to_string(nu) + "*";
                    out.conductor_exponent = n - 4 - nu;
                    return out;
                }
                i64 x0 = quadratic_double_root(Aq, Bq, Cq, p);
                m.translate(pk1 * x0, 0, 0);
                ++k;
            }
        }
        // triple root
        m.translate((i128)p * roots.multiple_root, 0, 0);
        if (val(m.a2) < 2 || val(m.a4) < 3 || val(m.a6) < 4)
            throw std::logic_error("tate: triple-root normalization failed");
        i64 alpha = modp(m.a3 / ((i128)p * p), p);
        i64 gamma = modp(-(m.a6 / ((i128)p * p * p * p)), p);
        if (quadratic_separable(alpha, (p - gamma) % p, 1, p)) {
            out.kodaira = "IV*";
            out.conductor_exponent = n - 6;
            return out;
        }
        i64 y0 = quadratic_double_root(1, alpha, (p - gamma) % p, p);
        m.translate(0, 0, (i128)p * p * y0);
        if (val(m.a3) < 3 || val(m.a6) < 5) throw std::logic_error("tate: IV* exit failed");
        if (val(m.a4) == 3) {
            out.kodaira = "III*";
            out.conductor_exponent = n - 7;
            return out;
        }
        if (val(m.a6) == 5) {
            out.kodaira = "II*";
            out.conductor_exponent = n - 8;
            return out;
        }
        // non-minimal at p: divide through and start over
        if (val(m.a1) < 1 || val(m.a2) < 2 || val(m.a3) < 3 || val(m.a4) < 4 || val(m.a6) < 6)
            throw std::logic_error("tate: non-minimal division unavailable");
        i128 pp = p;
        m.a1 /= pp; m.a2 /= pp * pp; m.a3 /= pp * pp * pp;
        m.a4 /= pp * pp * pp * pp; m.a6 /= pp * pp * pp * pp * pp * pp;
        goto restart;
    }
}

void EllipticCurveQ::compute_b_invariants() {
    // checked arithmetic: oversized inputs throw instead of wrapping
    auto M = [](i128 x, i128 y) { return mul_checked(x, y); };
    b2_ = add_checked(M(a_[0], a_[0]), M(4, a_[1]));
    b4_ = add_checked(M(2, a_[3]), M(a_[0], a_[2]));
    b6_ = add_checked(M(a_[2], a_[2]), M(4, a_[4]));
    b8_ = add_checked(add_checked(M(M(a_[0], a_[0]), a_[4]), M(4, M(a_[1], a_[4]))),
                      add_checked(-M(a_[0], M(a_[2], a_[3])),
                                  add_checked(M(a_[1], M(a_[2], a_[2])), -M(a_[3], a_[3]))));
    c4_ = add_checked(M(b2_, b2_), -M(24, b4_));
    c6_ = add_checked(add_checked(-M(b2_, M(b2_, b2_)), M(36, M(b2_, b4_))), -M(216, b6_));
    disc_ = add_checked(add_checked(-M(M(b2_, b2_), b8_), -M(8, M(b4_, M(b4_, b4_)))),
                        add_checked(-M(27, M(b6_, b6_)), M(9, M(b2_, M(b4_, b6_)))));
}

namespace {

// Kraus admissibility of (c4, c6) as invariants of an integral model.
bool kraus_at3(i128 c6) { return c6 == 0 || valuation(c6, 3) != 2; }
bool kraus_at2(i128 c4, i128 c6) {
    i128 r = ((c6 % 4) + 4) % 4;
    if (r == 3) return true;  // c6 = -1 mod 4
    if (c4 % 16 != 0) return false;
    i128 s = ((c6 % 32) + 32) % 32;
    return s == 0 || s == 8;
}

struct AInv { i128 a1, a2, a3, a4, a6; };

// Reconstruct the reduced integral model from admissible (c4, c6).
AInv model_from_c_invariants(i128 c4, i128 c6) {
    i128 b2 = (-c6) % 12;
    if (b2 < -5) b2 += 12;
    if (b2 > 6) b2 -= 12;
    i128 b4 = (b2 * b2 - c4);
    if (b4 % 24 != 0) throw std::logic_error("model_from_c_invariants: b4 not integral");
    b4 /= 24;
    i128 b6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (b6 % 216 != 0) throw std::logic_error("model_from_c_invariants: b6 not integral");
    b6 /= 216;
    i128 a1 = ((b2 % 2) + 2) % 2;
    i128 a2 = (b2 - a1) / 4;
    i128 a3 = ((b6 % 2) + 2) % 2;
    i128 a4 = (b4 - a1 * a3);
    if (a4 % 2 != 0) throw std::logic_error("model_from_c_invariants: a4 not integral");
    a4 /= 2;
    i128 a6 = (b6 - a3);
    if (a6 % 4 != 0) throw std::logic_error("model_from_c_invariants: a6 not integral");
    a6 /= 4;
    return {a1, a2, a3, a4, a6};
}

// Laska-Kraus-Connell: minimal (c4, c6) from any integral model's invariants.
std::pair<i128, i128> minimal_c_invariants(i128 c4, i128 c6) {
    std::vector<std::pair<i64, int>> exps;  // (p, u-exponent)
    if (c4 == 0) {
        for (auto& [p, e] : arith::factor(c6).factors)
            if (e / 6 > 0) exps.push_back({(i64)p, e / 6});
    } else if (c6 == 0) {
        for (auto& [p, e] : arith::factor(c4).factors)
            if (e / 4 > 0) exps.push_back({(i64)p, e / 4});
    } else {
        auto f4 = arith::factor(c4);
        for (auto& [p, e4] : f4.factors) {
            if (c6 % p != 0) continue;
            int e6 = valuation(c6, (i64)p);
            int k = std::min(e4 / 4, e6 / 6);
            if (k > 0) exps.push_back({(i64)p, k});
        }
    }
    auto reduced = [&](const std::vector<std::pair<i64, int>>& es) {
        i128 u4 = 1, u6 = 1;
        for (auto& [p, k] : es)
            for (int i = 0; i < k; ++i) { u4 *= (i128)p * p * p * p; u6 *= (i128)p * p * p * p * p * p; }
        return std::pair<i128, i128>{c4 / u4, c6 / u6};
    };
    while (true) {
        auto [r4, r6] = reduced(exps);
        bool ok = true;
        if (!kraus_at3(r6)) {
            for (auto& [p, k] : exps)
                if (p == 3 && k > 0) { --k; ok = false; break; }
            if (ok) throw std::logic_error("LKC: inadmissible at 3 with no 3-divisions left");
            continue;
        }
        if (!kraus_at2(r4, r6)) {
            bool dec = false;
            for (auto& [p, k] : exps)
                if (p == 2 && k > 0) { --k; dec = true; break; }
            if (!dec) throw std::logic_error("LKC: inadmissible at 2 with no 2-divisions left");
            continue;
        }
        return {r4, r6};
    }
}

}  // namespace

EllipticCurveQ::EllipticCurveQ(i128 a1, i128 a2, i128 a3, i128 a4, i128 a6) {
    a_ = {a1, a2, a3, a4, a6};
    compute_b_invariants();
    if (disc_ == 0) throw std::invalid_argument("curve: singular model (discriminant 0)");
    auto [mc4, mc6] = minimal_c_invariants(c4_, c6_);
    auto m = model_from_c_invariants(mc4, mc6);
    a_ = {m.a1, m.a2, m.a3, m.a4, m.a6};
    compute_b_invariants();
    // j-invariant as a reduced fraction
    i128 num = mul_checked(mul_checked(c4_, c4_), c4_);
    i128 den = disc_;
    i128 g = gcd128(num, den);
    if (g != 0) { num /= g; den /= g; }
    if (den < 0) { den = -den; num = -num; }
    j_num_ = num;
    j_den_ = den;
    // local data at every bad prime; conductor as the product of p^fp
    conductor_ = 1;
    for (auto& [p, e] : arith::factor(disc_).factors) {
        auto ld = tate_algorithm(a_[0], a_[1], a_[2], a_[3], a_[4], (i64)p);
        if (ld.kind == Reduction::Good) continue;
        local_.push_back(ld);
        for (int i = 0; i < ld.conductor_exponent; ++i) conductor_ = mul_checked(conductor_, p);
        (void)e;
    }
}

LocalData EllipticCurveQ::local_data(i64 p) const {
    for (auto& ld : local_)
        if (ld.p == p) return ld;
    LocalData good;
    good.p = p;
    return good;
}

i64 EllipticCurveQ::ap(i64 p) const {
    auto ld = local_data(p);
    switch (ld.kind) {
        case Reduction::SplitMultiplicative: return 1;
        case Reduction::NonsplitMultiplicative: return -1;
        case Reduction::Additive: return 0;
        case Reduction::Good: break;
    }
    if (p == 2) {
        i64 count = 0;
        for (i64 x = 0; x < 2; ++x)
            for (i64 y = 0; y < 2; ++y)
                if (modp((i128)y * y + a_[0] * x * y + a_[2] * y - (i128)x * x * x -
                             a_[1] * x * x - a_[3] * x - a_[4], 2) == 0)
                    ++count;
        return 2 + 1 - (count + 1);
    }
    std::vector<unsigned char> scratch;
    return kernels::ap_char_sum(b2_, b4_, b6_, p, scratch);
}

i128 EllipticCurveQ::frobenius_trace_power(i64 p, int f) const {
    if (f <= 0) throw std::invalid_argument("frobenius_trace_power: f must be positive");
    auto ld = local_data(p);
    if (ld.kind == Reduction::Additive)
        throw std::invalid_argument("frobenius_trace_power: additive reduction");
    i128 a = ap(p);
    if (ld.kind != Reduction::Good) {
        i128 r = 1;
        for (int i = 0; i < f; ++i) r = mul_checked(r, a);
        return r;
    }
    i128 prev = 2, cur = a;  // A_0 = 2, A_1 = a_p
    for (int i = 2; i <= f; ++i) {
        i128 next = add_checked(mul_checked(a, cur), -mul_checked((i128)p, prev));
        prev = cur;
        cur = next;
    }
    return cur;
}

EllipticCurveQ EllipticCurveQ::quadratic_twist(i128 d) const {
    if (d == 0) throw std::invalid_argument("quadratic_twist: d = 0");
    i128 s = arith::square_class(d).squarefree;
    if (s == 1) return *this;
    // Twisting scales (c4, c6) by (s^2, s^3); pad by (6^4, 6^6) so the pair is
    // realized by an integral model, then reduce before any discriminant is formed.
    i128 p4 = mul_checked(mul_checked((i128)1296, mul_checked(s, s)), c4_);
    i128 p6 = mul_checked(mul_checked((i128)46656, mul_checked(mul_checked(s, s), s)), c6_);
    auto [mc4, mc6] = minimal_c_invariants(p4, p6);
    auto m = model_from_c_invariants(mc4, mc6);
    return EllipticCurveQ(m.a1, m.a2, m.a3, m.a4, m.a6);
}

std::string EllipticCurveQ::model_string() const {
    auto term = [](i128 c, const std::string& v) -> std::string {
        if (c == 0) return "";
        std::string s = c > 0 ? " + " : " - ";
        i128 a = abs128(c);
        if (a != 1 || v.empty()) s += to_string(a);
        if (a != 1 && !v.empty()) s += "*";
        return s + v;
    };
    std::string lhs = "y^2" + term(a_[0], "x*y") + term(a_[2], "y");
    std::string rhs = "x^3" + term(a_[1], "x^2") + term(a_[3], "x") + term(a_[4], "");
    return lhs + " = " + rhs;
}

std::vector<RationalPoint> EllipticCurveQ::point_search(i64 bound) const {
    if (bound > 1000000) throw std::invalid_argument("point_search: bound exceeds 10^6");
    std::vector<RationalPoint> pts;
    for (i64 v = 1; (i64)v * v <= bound; ++v) {
        for (i64 u = -bound; u <= bound; ++u) {
            if (std::gcd(u, v) != 1) continue;
            i128 V = v, U = u;
            i128 V2 = mul_checked(V, V), V4 = mul_checked(V2, V2), V6 = mul_checked(V4, V2);
            i128 W = add_checked(
                add_checked(mul_checked(4, mul_checked(U, mul_checked(U, U))),
                            mul_checked(b2_, mul_checked(mul_checked(U, U), V2))),
                add_checked(mul_checked(2, mul_checked(b4_, mul_checked(U, V4))),
                            mul_checked(b6_, V6)));
            i128 w;
            if (W < 0 || !is_square128(W, &w)) continue;
            // y = (w/v^3 - a1 u/v^2 - a3)/2
            i128 yn = w - a_[0] * u * v - a_[2] * V * V * V;
            i128 yd = 2 * V * V * V;
            i128 g = gcd128(yn, yd);
            if (g != 0) { yn /= g; yd /= g; }
            RationalPoint P{(i128)u, (i128)v * v, yn, yd};
            // exact on-curve check: y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
            // cleared by xd^3 = v^6 and yd^2
            i128 x_n = P.xn, x_d = P.xd;
            i128 lhs = mul_checked(mul_checked(P.yn, P.yn), mul_checked(x_d, mul_checked(x_d, x_d))) +
                       mul_checked(mul_checked(a_[0], mul_checked(P.yn, P.yd)), mul_checked(x_n, mul_checked(x_d, x_d))) +
                       mul_checked(mul_checked(a_[2], mul_checked(P.yn, P.yd)), mul_checked(x_d, mul_checked(x_d, x_d)));
            i128 rhs = mul_checked(mul_checked(P.yd, P.yd),
                                   mul_checked(x_n, mul_checked(x_n, x_n)) +
                                       mul_checked(a_[1], mul_checked(mul_checked(x_n, x_n), x_d)) +
                                       mul_checked(a_[3], mul_checked(x_n, mul_checked(x_d, x_d))) +
                                       mul_checked(a_[4], mul_checked(x_d, mul_checked(x_d, x_d))));
            if (lhs != rhs) throw std::logic_error("point_search: candidate fails exact check");
            pts.push_back(P);
            if (w != 0) {
                // the conjugate point (x, -y - a1 x - a3)
                i128 yn2 = -w - a_[0] * u * v - a_[2] * V * V * V;
                i128 g2 = gcd128(yn2, yd);
                RationalPoint Q{(i128)u, (i128)v * v, yn2 / (g2 == 0 ? 1 : g2), yd / (g2 == 0 ? 1 : g2)};
                if (!(Q == P)) pts.push_back(Q);
            }
        }
    }
    return pts;
}

TwoTorsion two_torsion(const EllipticCurveQ& E) {
    TwoTorsion tt;
    // 2-division cubic in X = 4x: X^3 + b2 X^2 + 8 b4 X + 16 b6
    i128 B2 = E.b2(), B4 = 8 * E.b4(), B6 = 16 * E.b6();
    std::vector<i128> roots;
    auto is_root = [&](i128 X) {
        return mul_checked(mul_checked(X, X), X) + mul_checked(B2, mul_checked(X, X)) +
                   mul_checked(B4, X) + B6 ==
               0;
    };
    if (B6 == 0) {
        roots.push_back(0);
        // remaining quadratic: X^2 + B2 X + B4
        i128 d = B2 * B2 - 4 * B4, r;
        if (d >= 0 && is_square128(d, &r)) {
            if ((-B2 + r) % 2 == 0) {
                roots.push_back((-B2 + r) / 2);
                if (r != 0) roots.push_back((-B2 - r) / 2);
            }
        }
    } else {
        auto f = arith::factor(B6);
        std::vector<i128> divisors = {1};
        for (auto& [p, e] : f.factors) {
            size_t base = divisors.size();
            i128 pk = 1;
            for (int i = 1; i <= e; ++i) {
                pk = mul_checked(pk, p);
                for (size_t j = 0; j < base; ++j) divisors.push_back(mul_checked(divisors[j], pk));
            }
        }
        for (i128 d : divisors) {
            if (is_root(d)) roots.push_back(d);
            if (is_root(-d)) roots.push_back(-d);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    tt.roots4 = roots;
    tt.rational_roots = (int)roots.size();
    if (tt.rational_roots == 3) tt.order_over_Q = 4;
    else if (tt.rational_roots == 1) {
        tt.order_over_Q = 2;
        // quadratic cofactor X^2 + (B2 + r) X + (r^2 + B2 r + B4): discriminant class
        i128 r = roots[0];
        i128 disc_q = B2 * B2 - 2 * B2 * r - 3 * r * r - 4 * B4;
        tt.quadratic_disc_class = arith::square_class(disc_q).squarefree;
    } else {
        tt.order_over_Q = 1;
    }
    return tt;
}

i64 two_torsion_order_over(const EllipticCurveQ& E, const std::vector<i128>& discs) {
    auto tt = two_torsion(E);
    if (tt.rational_roots == 3) return 4;
    if (tt.rational_roots == 0) return 1;  // cubic field never inside a 2-power field
    // order 4 iff sqrt(disc class) lies in the multiquadratic field
    std::set<i128> classes = {1};
    for (i128 d : discs) {
        i128 sd = arith::square_class(d).squarefree;
        std::set<i128> next = classes;
        for (i128 c : classes) {
            i128 prod = mul_checked(c, sd);
            next.insert(arith::square_class(prod).squarefree);
        }
        classes = next;
    }
    return classes.count(tt.quadratic_disc_class) ? 4 : 2;
}

}  // namespace localrank::elliptic
