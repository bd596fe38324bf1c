#include "localrank/descent2.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "localrank/arith.hpp"

namespace localrank::descent2 {

using nlohmann::json;

namespace {

// ---- square classes of Q_v as F_2 bit vectors --------------------------
//
// odd p: bit0 = v_p mod 2, bit1 = (unit part | p) == -1          (2 bits)
// p = 2: bit0 = v_2 mod 2, bit1/bit2 = unit mod 8 in {1,3,5,7}   (3 bits)
// A pair (b1, b2) concatenates the two coordinates (6 bits max).

unsigned class_bits_at(i128 x, i64 p) {
    if (x == 0) throw std::logic_error("class_bits_at: zero");
    unsigned v = 0;
    while (x % p == 0) { x /= p; v ^= 1; }
    if (p == 2) {
        unsigned u = (unsigned)(((x % 8) + 8) % 8);  // 1,3,5,7
        return v | (((u >> 1) & 3u) << 1);
    }
    unsigned nonsq = arith::jacobi(x, p) == -1 ? 1u : 0u;
    return v | (nonsq << 1);
}

unsigned pair_bits_at(i128 b1, i128 b2, i64 p) {
    unsigned w = p == 2 ? 3 : 2;
    return class_bits_at(b1, p) | (class_bits_at(b2, p) << w);
}

// xor-linear basis over F_2, echelonized by leading bit
struct F2Span {
    std::array<unsigned, 8> at{};
    int dim_ = 0;

    unsigned reduce(unsigned x) const {
        for (int b = 7; b >= 0; --b)
            if ((x >> b) & 1u) {
                if (at[b]) x ^= at[b];
            }
        return x;
    }
    bool contains(unsigned x) const { return reduce(x) == 0; }
    bool add(unsigned x) {
        for (int b = 7; b >= 0; --b) {
            if (!((x >> b) & 1u)) continue;
            if (at[b]) { x ^= at[b]; continue; }
            at[b] = x;
            ++dim_;
            return true;
        }
        return false;
    }
    int dim() const { return dim_; }
};

// Is the nonzero integer t a square in Q_p?
bool is_square_in_Qp(i128 t, i64 p) {
    int v = 0;
    while (t % p == 0) { t /= p; ++v; }
    if (v % 2 != 0) return false;
    if (p == 2) return ((t % 8) + 8) % 8 == 1;
    return arith::jacobi(t, p) == 1;
}

// The image of E(Q_p)/2E(Q_p) under (x - E1, x - E2) mod squares for
// Y^2 = (X - E1)(X - E2)(X - E3).  The group order is |E(Q_p)[2]| / |2|_p,
// so the F_2 dimension is exactly 2 for odd p and 3 for p = 2.
F2Span local_kummer_image(const std::vector<i128>& roots, i64 p) {
    const i128 E1 = roots[0], E2 = roots[1], E3 = roots[2];
    const int target = p == 2 ? 3 : 2;
    F2Span span;
    span.add(pair_bits_at((E1 - E2) * (E1 - E3), E1 - E2, p));
    span.add(pair_bits_at(E2 - E1, (E2 - E1) * (E2 - E3), p));
    span.add(pair_bits_at(E3 - E1, E3 - E2, p));

    auto try_x = [&](i128 n, i128 d) {
        if (span.dim() >= target) return;
        i128 A1 = n - E1 * d, A2 = n - E2 * d, A3 = n - E3 * d;
        if (A1 == 0 || A2 == 0 || A3 == 0) return;
        i128 prod;
        if (__builtin_mul_overflow(A1, A2, &prod)) return;
        if (__builtin_mul_overflow(prod, A3, &prod)) return;
        if (__builtin_mul_overflow(prod, d, &prod)) return;
        if (!is_square_in_Qp(prod, p)) return;  // f(x) not a square: no point here
        span.add(pair_bits_at(A1 * d, A2 * d, p));
    };

    i64 window = p == 2 ? 16 : std::min<i64>(p - 1, 24);
    // integer x near each root, covering all inertial depths
    i128 pk = 1;
    for (int k = 0; k <= 6 && span.dim() < target; ++k) {
        for (i128 root : roots)
            for (i64 j = 1; j <= window && span.dim() < target; ++j) {
                try_x(root + j * pk, 1);
                try_x(root - j * pk, 1);
            }
        pk *= p;
    }
    // x with negative valuation: x = n / p^(2t)
    for (int t = 1; t <= 2 && span.dim() < target; ++t) {
        i128 d = 1;
        for (int i = 0; i < 2 * t; ++i) d *= p;
        for (i64 j = 1; j <= 8 * window && span.dim() < target; ++j) {
            if (j % p == 0) continue;
            try_x(j, d);
            try_x(-j, d);
        }
    }
    if (span.dim() != target) {
        for (i128 n = -4096; n <= 4096 && span.dim() < target; ++n) try_x(n, 1);
    }
    if (span.dim() != target)
        throw std::logic_error("local_kummer_image: sweep failed to reach the known dimension");
    return span;
}

std::mutex g_image_mutex;
std::map<std::pair<std::vector<i128>, i64>, F2Span> g_image_cache;

F2Span cached_image(const std::vector<i128>& roots, i64 p) {
    std::lock_guard<std::mutex> lock(g_image_mutex);
    auto key = std::make_pair(roots, p);
    auto it = g_image_cache.find(key);
    if (it == g_image_cache.end())
        it = g_image_cache.emplace(key, local_kummer_image(roots, p)).first;
    return it->second;
}

std::vector<i64> support_primes(const std::vector<i128>& roots) {
    std::set<i64> S = {2};
    i128 diffs[3] = {roots[1] - roots[0], roots[2] - roots[0], roots[2] - roots[1]};
    for (i128 d : diffs)
        for (auto& [p, e] : arith::factor(d).factors) S.insert((i64)p);
    return std::vector<i64>(S.begin(), S.end());
}

std::vector<i128> square_class_group(const std::vector<i64>& primes) {
    std::vector<i128> vals = {1, -1};
    for (i64 p : primes) {
        size_t n = vals.size();
        for (size_t i = 0; i < n; ++i) vals.push_back(mul_checked(vals[i], p));
    }
    return vals;
}

// exact floor sqrt of a non-negative i64 via double with fixup
inline i64 isqrt64(i64 v) {
    i64 r = (i64)std::sqrt((double)v);
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Exact witness search over z_i = u_i / w; deterministic result: the witness
// with the smallest w, then the smallest u1.  All quantities fit i64 for
// desk-scale inputs (|b|, |d| < 2^17, bound <= 10^5).
std::optional<TorsorWitness> torsor_search(i128 b1_, i128 b2_, i128 d12_, i128 d13_, i64 bound) {
    if (abs128(b1_) > (1 << 20) || abs128(b2_) > (1 << 20) || abs128(d12_) > (i64)1 << 40 ||
        abs128(d13_) > (i64)1 << 40)
        throw std::invalid_argument("torsor_search: coefficients beyond desk-scale bound");
    i64 b1 = (i64)b1_, b2 = (i64)b2_, d12 = (i64)d12_, d13 = (i64)d13_;

    // residue sieve: ok[w % q][u1 % q] iff both square conditions can hold mod q
    static const int kSieveMods[] = {16, 9, 5, 7, 11, 13};
    std::vector<std::vector<unsigned char>> sieve;
    for (int q : kSieveMods) {
        std::vector<unsigned char> ok(q * q, 0);
        std::vector<unsigned char> sq1(q, 0), sq2(q, 0);  // {b2 u^2}, {b1 b2 u^2} mod q
        for (i64 u = 0; u < q; ++u) {
            sq1[(i64)(((i128)b2 * u * u % q + q) % q)] = 1;
            sq2[(i64)(((i128)b1 * b2 % q * u % q * u % q + q) % q)] = 1;
        }
        for (i64 w = 0; w < q; ++w)
            for (i64 u1 = 0; u1 < q; ++u1) {
                i64 t = (i64)(((i128)b1 * u1 * u1) % q);
                i64 c1 = ((t - (i128)d12 * w % q * w) % q + q) % q;
                i64 c2 = ((t - (i128)d13 * w % q * w) % q + q) % q;
                if (sq1[c1] && sq2[c2]) ok[w * q + u1] = 1;
            }
        sieve.push_back(std::move(ok));
    }

    const i64 kBlock = 512;
    for (i64 w0 = 1; w0 <= bound; w0 += kBlock) {
        i64 w1 = std::min(bound, w0 + kBlock - 1);
        i64 best_w = -1, best_u1 = -1;
#ifdef _OPENMP
#pragma omp parallel
#endif
        {
            i64 my_w = -1, my_u1 = -1;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8) nowait
#endif
            for (i64 w = w0; w <= w1; ++w) {
                if (my_w >= 0) continue;
                i64 d12w = d12 * w * w;
                i64 d13w = d13 * w * w;
                // sign constraints: c1 = b1 u1^2 - d12 w^2 needs sign(b2) (or 0),
                // c2 needs sign(b1 b2); b1 > 0 for pairs solvable at infinity
                i64 lo = 0, hi = bound;
                if (b2 < 0) {
                    // b1 u1^2 <= min(d12, d13) w^2
                    i64 cap = std::min(d12w, d13w);
                    if (cap < 0) continue;
                    hi = std::min(hi, isqrt64(cap / b1));
                } else {
                    // b1 u1^2 >= max(d12, d13) w^2
                    i64 need = std::max(d12w, d13w);
                    i64 r = isqrt64(need / b1);
                    while (b1 * r * r < need) ++r;
                    lo = r;
                }
                const auto& s0 = sieve[0];
                const auto& s1 = sieve[1];
                const auto& s2 = sieve[2];
                const auto& s3 = sieve[3];
                const auto& s4 = sieve[4];
                const auto& s5 = sieve[5];
                i64 w16 = w % 16 * 16, w9 = w % 9 * 9, w5 = w % 5 * 5, w7 = w % 7 * 7,
                    w11 = w % 11 * 11, w13 = w % 13 * 13;
                for (i64 u1 = lo; u1 <= hi; ++u1) {
                    if (!s0[w16 + (u1 & 15)]) continue;
                    if (!s1[w9 + u1 % 9]) continue;
                    if (!s2[w5 + u1 % 5]) continue;
                    if (!s3[w7 + u1 % 7]) continue;
                    if (!s4[w11 + u1 % 11]) continue;
                    if (!s5[w13 + u1 % 13]) continue;
                    i64 t = b1 * u1 * u1;
                    i64 c1 = t - d12w;
                    if (c1 % b2 != 0) continue;
                    i64 q1 = c1 / b2;
                    if (q1 < 0) continue;
                    i64 r1 = isqrt64(q1);
                    if (r1 * r1 != q1) continue;
                    i64 c2 = t - d13w;
                    if (c2 % (b1 * b2) != 0) continue;
                    i64 q2 = c2 / (b1 * b2);
                    if (q2 < 0) continue;
                    i64 r2 = isqrt64(q2);
                    if (r2 * r2 != q2) continue;
                    my_w = w;
                    my_u1 = u1;
                    break;
                }
            }
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (my_w >= 0 && (best_w < 0 || my_w < best_w ||
                                  (my_w == best_w && my_u1 < best_u1))) {
                    best_w = my_w;
                    best_u1 = my_u1;
                }
            }
        }
        if (best_w >= 0) {
            i64 t = b1 * best_u1 * best_u1;
            i64 u2 = isqrt64((t - d12 * best_w * best_w) / b2);
            i64 u3 = isqrt64((t - d13 * best_w * best_w) / (b1 * b2));
            return TorsorWitness{best_u1, u2, u3, best_w};
        }
    }
    return std::nullopt;
}

i128 sqfree(i128 x) { return arith::square_class(x).squarefree; }

// ---- conic-parameterization search -------------------------------------
//
// A torsor pair couples two ternary conics.  Parameterizing one of them by
// lines through a small rational point turns the other into a quartic
// G(a, b) = square; sweeping (a, b) reaches torsor heights far beyond the
// direct (u1, w) search.

struct Conic {
    i128 alpha, beta, gamma;  // alpha X^2 + beta Y^2 + gamma W^2 = 0
};

struct ConicPoint {
    i128 x, y, w;
};

std::optional<ConicPoint> small_conic_point(const Conic& c, i64 bound) {
    for (i64 w = 0; w <= bound; ++w) {
        for (i64 x = (w == 0 ? 1 : 0); x <= bound; ++x) {
            i128 rhs = -(c.alpha * x * x + c.gamma * w * w);
            if (c.beta == 0) continue;
            if (rhs % c.beta != 0) continue;
            i128 y2 = rhs / c.beta, y;
            if (y2 < 0) continue;
            if (!is_square128(y2, &y)) continue;
            if (x == 0 && y == 0 && w == 0) continue;
            return ConicPoint{x, y, w};
        }
    }
    return std::nullopt;
}

// quadratic forms (in a, b) for the parameterized conic point
struct ParamForms {
    // X = xa a^2 + xab ab + xb b^2, same layout for Y, W
    i128 X[3], Y[3], W[3];
    i128 eval(const i128* f, i64 a, i64 b) const {
        return add_checked(
            add_checked(mul_checked(f[0], (i128)a * a), mul_checked(f[1], (i128)a * b)),
            mul_checked(f[2], (i128)b * b));
    }
};

ParamForms parameterize(const Conic& c, const ConicPoint& p) {
    ParamForms F{};
    if (p.w != 0) {
        // u = (a, b, 0): x' = -q(u) p + 2 (p^T M u) u
        // q(u) = alpha a^2 + beta b^2, s = alpha p.x a + beta p.y b
        F.X[0] = c.alpha * p.x;           // -q p0 + 2 s a: a^2 coeff
        F.X[1] = 2 * c.beta * p.y;
        F.X[2] = -c.beta * p.x;
        F.Y[0] = -c.alpha * p.y;
        F.Y[1] = 2 * c.alpha * p.x;
        F.Y[2] = c.beta * p.y;
        F.W[0] = -c.alpha * p.w;
        F.W[1] = 0;
        F.W[2] = -c.beta * p.w;
    } else {
        // u = (a, 0, b): q(u) = alpha a^2 + gamma b^2, s = alpha p.x a
        F.X[0] = c.alpha * p.x;
        F.X[1] = 0;
        F.X[2] = -c.gamma * p.x;
        F.Y[0] = -c.alpha * p.y;
        F.Y[1] = 0;
        F.Y[2] = -c.gamma * p.y;
        F.W[0] = 0;
        F.W[1] = 2 * c.alpha * p.x;
        F.W[2] = 0;
    }
    return F;
}

// reduce (n1/d) to lowest terms against a shared denominator builder
struct Rat {
    i128 num, den;  // den > 0
    void normalize() {
        if (den < 0) { den = -den; num = -num; }
        i128 g = gcd128(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
};

std::optional<TorsorWitness> witness_from_z(Rat z1, Rat z2, Rat z3, i128 b1, i128 b2, i128 d12,
                                            i128 d13) {
    z1.normalize(); z2.normalize(); z3.normalize();
    i128 w = z1.den;
    w = w / gcd128(w, z2.den) * z2.den;
    w = w / gcd128(w, z3.den) * z3.den;
    if (w > ((i128)1 << 40)) return std::nullopt;  // keep exact checks inside i128
    TorsorWitness out;
    out.u1 = z1.num * (w / z1.den);
    out.u2 = z2.num * (w / z2.den);
    out.u3 = z3.num * (w / z3.den);
    out.w = w;
    if (out.u1 < 0) out.u1 = -out.u1;
    if (out.u2 < 0) out.u2 = -out.u2;
    if (out.u3 < 0) out.u3 = -out.u3;
    if (out.u1 > ((i128)1 << 40) || out.u2 > ((i128)1 << 40) || out.u3 > ((i128)1 << 40))
        return std::nullopt;
    i128 w2 = out.w * out.w;
    if (b1 * out.u1 * out.u1 - b2 * out.u2 * out.u2 != d12 * w2) return std::nullopt;
    if (b1 * out.u1 * out.u1 - b1 * b2 * out.u3 * out.u3 != d13 * w2) return std::nullopt;
    return out;
}

std::optional<TorsorWitness> conic_quartic_search(i128 b1, i128 b2, i128 d12, i128 d13,
                                                  i64 param_bound) {
    i128 d23 = d13 - d12;
    // three eliminations: parameterize one equation, sweep the other
    for (int which = 0; which < 3; ++which) {
        Conic c;
        if (which == 0) c = {b1, -b1 * b2, -d13};      // vars (z1, z3, w)
        else if (which == 1) c = {b1, -b2, -d12};      // vars (z1, z2, w)
        else c = {b2, -b1 * b2, -d23};                 // vars (z2, z3, w)
        auto pt = small_conic_point(c, 2500);
        if (!pt) continue;
        {
            i128 g = gcd128(gcd128(pt->x, pt->y), pt->w);
            if (g > 1) { pt->x /= g; pt->y /= g; pt->w /= g; }
        }
        auto F = parameterize(c, *pt);
        {
            // uniform content of the whole map may be divided out
            i128 g = 0;
            for (int i = 0; i < 3; ++i)
                g = gcd128(g, gcd128(F.X[i], gcd128(F.Y[i], F.W[i])));
            if (g > 1)
                for (int i = 0; i < 3; ++i) { F.X[i] /= g; F.Y[i] /= g; F.W[i] /= g; }
        }
        for (i64 a = -param_bound; a <= param_bound; ++a) {
            for (i64 b = 0; b <= param_bound; ++b) {
                std::optional<TorsorWitness> wit;
                try {
                    i128 X = F.eval(F.X, a, b);
                    i128 W = F.eval(F.W, a, b);
                    if (W == 0) continue;
                    i128 G, t;
                    // residual equation: remaining z^2 * coef * W^2 = quadratic in (X, W)
                    if (which == 0) {
                        t = add_checked(mul_checked(b1, mul_checked(X, X)),
                                        -mul_checked(d12, mul_checked(W, W)));
                        G = mul_checked(b2, t);  // (b2 z2 W)^2
                    } else if (which == 1) {
                        t = add_checked(mul_checked(b1, mul_checked(X, X)),
                                        -mul_checked(d13, mul_checked(W, W)));
                        G = mul_checked(mul_checked(b1, b2), t);  // (b1 b2 z3 W)^2
                    } else {
                        t = add_checked(mul_checked(b2, mul_checked(X, X)),
                                        mul_checked(d12, mul_checked(W, W)));
                        G = mul_checked(b1, t);  // (b1 z1 W)^2
                    }
                    if (G < 0) continue;
                    i128 g;
                    if (!is_square128(G, &g)) continue;
                    i128 Y = F.eval(F.Y, a, b);
                    if (which == 0)
                        wit = witness_from_z({X, W}, {g, b2 * W}, {Y, W}, b1, b2, d12, d13);
                    else if (which == 1)
                        wit = witness_from_z({X, W}, {Y, W}, {g, b1 * b2 * W}, b1, b2, d12, d13);
                    else
                        wit = witness_from_z({g, b1 * W}, {X, W}, {Y, W}, b1, b2, d12, d13);
                } catch (const std::overflow_error&) {
                    continue;
                }
                if (wit) return wit;
            }
        }
    }
    return std::nullopt;
}

// closure of {(1,1)} u basis under the componentwise square-class product
std::set<std::pair<i128, i128>> span_group(const std::vector<std::pair<i128, i128>>& basis) {
    std::set<std::pair<i128, i128>> group = {{1, 1}};
    bool grew = true;
    while (grew) {
        grew = false;
        auto snapshot = group;
        for (auto& g : snapshot)
            for (auto& h : basis) {
                auto prod =
                    std::make_pair(sqfree(g.first * h.first), sqfree(g.second * h.second));
                if (group.insert(prod).second) grew = true;
            }
    }
    return group;
}

}  // namespace

bool torsor_locally_solvable(i128 b1, i128 b2, const std::vector<i128>& roots, const Place& v) {
    if (roots.size() != 3) throw std::invalid_argument("torsor_locally_solvable: need 3 roots");
    std::vector<i128> r = roots;
    std::sort(r.begin(), r.end());
    if (v.infinite) return b1 > 0;  // x - E1 = b1 z1^2 >= 0 on every real point
    return cached_image(r, v.prime).contains(pair_bits_at(b1, b2, v.prime));
}

DescentReport two_descent(const EllipticCurveQ& E) {
    auto tt = elliptic::two_torsion(E);
    if (tt.rational_roots != 3)
        throw std::invalid_argument("two_descent: curve does not have full rational 2-torsion");
    DescentReport rep{E, tt.roots4, {}, 0, 0, {}};
    const auto& roots = rep.roots;
    i128 d12 = roots[1] - roots[0], d13 = roots[2] - roots[0];

    auto primes = support_primes(roots);
    auto classes = square_class_group(primes);
    std::vector<Place> places = {Place::infinity()};
    for (i64 p : primes) places.push_back(Place::at(p));

    std::vector<PairVerdict*> solvable;
    rep.pairs.reserve(classes.size() * classes.size());
    for (i128 b1 : classes)
        for (i128 b2 : classes) {
            PairVerdict pv{b1, b2, true, std::nullopt, std::nullopt};
            for (auto& v : places) {
                if (!torsor_locally_solvable(b1, b2, roots, v)) {
                    pv.locally_solvable = false;
                    pv.obstruction = v;
                    break;
                }
            }
            rep.pairs.push_back(pv);
        }
    for (auto& pv : rep.pairs)
        if (pv.locally_solvable) solvable.push_back(&pv);

    i64 s = 0;
    while ((size_t(1) << s) < solvable.size()) ++s;
    if ((size_t(1) << s) != solvable.size())
        throw std::logic_error("two_descent: locally-solvable set is not a 2-group");
    rep.selmer_dim = s;

    // witness search: escalating direct height schedule, then the conic
    // parameterization stage for pairs still open, then one deep direct round
    std::vector<std::pair<i128, i128>> witnessed_basis;
    auto run_round = [&](auto&& search) {
        auto known = span_group(witnessed_basis);
        bool all = true;
        for (auto* pv : solvable) {
            if (pv->b1 == 1 && pv->b2 == 1) continue;
            if (known.count({pv->b1, pv->b2})) continue;
            auto wit = search(pv->b1, pv->b2);
            if (wit) {
                pv->witness = wit;
                witnessed_basis.push_back({pv->b1, pv->b2});
                known = span_group(witnessed_basis);
            } else {
                all = false;
            }
        }
        return all;
    };
    bool done = false;
    for (i64 bound : {600, 10000}) {
        done = run_round(
            [&](i128 b1, i128 b2) { return torsor_search(b1, b2, d12, d13, bound); });
        if (done) break;
    }
    if (!done)
        done = run_round(
            [&](i128 b1, i128 b2) { return conic_quartic_search(b1, b2, d12, d13, 3000); });
    if (!done)
        run_round([&](i128 b1, i128 b2) { return torsor_search(b1, b2, d12, d13, 100000); });

    // exact verification of every witness
    for (auto* pv : solvable) {
        if (!pv->witness) continue;
        auto& W = *pv->witness;
        i128 lhs1 = pv->b1 * W.u1 * W.u1 - pv->b2 * W.u2 * W.u2;
        i128 lhs2 = pv->b1 * W.u1 * W.u1 - pv->b1 * pv->b2 * W.u3 * W.u3;
        i128 w2 = (i128)W.w * W.w;
        if (lhs1 != d12 * w2 || lhs2 != d13 * w2)
            throw std::logic_error("two_descent: witness fails its torsor equations");
    }

    auto group = span_group(witnessed_basis);
    i64 fd = 0;
    while ((size_t(1) << fd) < group.size()) ++fd;
    if ((size_t(1) << fd) != group.size())
        throw std::logic_error("two_descent: witnessed set is not a group");
    for (auto& g : group) {
        bool in = false;
        for (auto* pv : solvable)
            if (pv->b1 == g.first && pv->b2 == g.second) in = true;
        if (!in) throw std::logic_error("two_descent: witnessed pair outside the Selmer set");
    }
    rep.found_dim = fd;
    rep.rank.lower = std::max<i64>(fd - 2, 0);
    rep.rank.upper = s - 2;
    if (rep.rank.upper < rep.rank.lower)
        throw std::logic_error("two_descent: inconsistent rank interval");
    return rep;
}

MultiquadraticRank rank_multiquadratic(const EllipticCurveQ& E, const std::vector<i128>& discs) {
    if (elliptic::two_torsion(E).rational_roots != 3)
        throw std::invalid_argument(
            "rank_multiquadratic: curve does not have full rational 2-torsion");
    std::set<i128> classes = {1};
    for (i128 d : discs) {
        i128 sd = sqfree(d);
        auto snapshot = classes;
        for (i128 c : snapshot) classes.insert(sqfree(c * sd));
    }
    MultiquadraticRank out;
    for (i128 d : classes) {
        auto repd = two_descent(E.quadratic_twist(d));
        out.per_class.push_back({d, repd.rank});
        out.total.lower += repd.rank.lower;
        out.total.upper += repd.rank.upper;
    }
    return out;
}

std::string DescentReport::to_json() const {
    json j;
    j["model"] = curve.model_string();
    j["roots"] = json::array();
    for (auto r : roots) j["roots"].push_back(to_string(r));
    j["selmer_dim"] = selmer_dim;
    j["found_dim"] = found_dim;
    j["rank_lower"] = rank.lower;
    j["rank_upper"] = rank.upper;
    j["pairs"] = json::array();
    for (auto& pv : pairs) {
        json jp;
        jp["b1"] = to_string(pv.b1);
        jp["b2"] = to_string(pv.b2);
        jp["locally_solvable"] = pv.locally_solvable;
        if (pv.obstruction) jp["obstruction"] = pv.obstruction->label();
        if (pv.witness) {
            jp["witness"] = {{"u1", to_string(pv.witness->u1)},
                             {"u2", to_string(pv.witness->u2)},
                             {"u3", to_string(pv.witness->u3)},
                             {"w", to_string(pv.witness->w)}};
        }
        j["pairs"].push_back(jp);
    }
    return j.dump(2);
}

}  // namespace localrank::descent2
