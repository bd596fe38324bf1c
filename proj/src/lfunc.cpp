#include "localrank/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "localrank/arith.hpp"

namespace localrank::lfunc {

namespace {

constexpr double kZeroTol = 1e-8;
constexpr double kTailTarget = 1e-12;

// sum_{n > L} exp(-c n) = x^{L+1} / (1 - x), x = exp(-c); |a_n/n| <= 1.
double tail_linear(double c, i64 L) {
    double x = std::exp(-c);
    return std::pow(x, (double)(L + 1)) / (1.0 - x);
}

// sum_{n > L} n exp(-c n) = x^{L+1} ((L+1) - L x) / (1-x)^2; |a_n| <= n.
double tail_n(double c, i64 L) {
    double x = std::exp(-c);
    return std::pow(x, (double)(L + 1)) * ((double)(L + 1) - (double)L * x) / ((1.0 - x) * (1.0 - x));
}

i64 choose_length(double c, double target, double (*tail)(double, i64)) {
    i64 L = 64;
    while (tail(c, L) > target) {
        L = (i64)(L * 1.3) + 16;
        if (L > (i64)3e7) throw std::runtime_error("series length beyond desk-scale bound");
    }
    return L;
}

std::mutex g_sign_mutex;
std::map<std::array<i128, 5>, int> g_sign_cache;

std::array<i128, 5> curve_key(const EllipticCurveQ& E) {
    return {E.a1(), E.a2(), E.a3(), E.a4(), E.a6()};
}

double sqrt_conductor(const EllipticCurveQ& E) {
    return std::sqrt((double)E.conductor());
}

}  // namespace

double exp_integral_e1(double x) {
    if (x <= 0) throw std::domain_error("E1 needs x > 0");
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum (-1)^{k+1} x^k / (k k!)
        constexpr double gamma = 0.57721566490153286060651209008240243;
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= x / k;
            double add = term / k;
            sum += (k % 2 == 1) ? add : -add;
            if (add < 1e-18) break;
        }
        return -gamma - std::log(x) + sum;
    }
    // continued fraction e^{-x}/(x+1- 1/(x+3- 4/(x+5- 9/(...)))), modified Lentz
    double b = x + 1.0;
    double c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i < 200; ++i) {
        double a = -(double)i * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

int numeric_sign(const EllipticCurveQ& E) {
    {
        std::lock_guard<std::mutex> lock(g_sign_mutex);
        auto it = g_sign_cache.find(curve_key(E));
        if (it != g_sign_cache.end()) return it->second;
    }
    double rootN = sqrt_conductor(E);
    double c = 2.0 * std::numbers::pi / rootN;
    for (double t : {std::sqrt(2.0), 1.25, 1.6, 1.9}) {
        double cslow = c / t;
        i64 L = choose_length(cslow, 1e-11, tail_n);
        auto an = coeffs::an_table(E, L);
        const auto& A = *an;
        double Hfast = 0.0, Hslow = 0.0;
        for (i64 n = L; n >= 1; --n) {
            if (A[n] == 0) continue;
            Hfast += (double)A[n] * std::exp(-c * t * (double)n);
            Hslow += (double)A[n] * std::exp(-cslow * (double)n);
        }
        double tail = tail_n(cslow, L);
        if (std::abs(Hfast) < 1e3 * std::max(tail, 1e-13)) continue;  // t too unlucky
        double ratio = Hslow / (t * t * Hfast);
        int w = ratio > 0 ? 1 : -1;
        if (std::abs(ratio - (double)w) < 1e-4) {
            std::lock_guard<std::mutex> lock(g_sign_mutex);
            g_sign_cache[curve_key(E)] = w;
            return w;
        }
    }
    throw std::runtime_error("numeric_sign: functional-equation ratio not near +-1");
}

CentralValueReport central_value(const EllipticCurveQ& E) {
    CentralValueReport rep;
    int w = numeric_sign(E);
    if (w == -1) {
        rep.value = 0.0;
        rep.verdict = Verdict::Zero;
        return rep;
    }
    double c = 2.0 * std::numbers::pi / sqrt_conductor(E);
    i64 L = choose_length(c, kTailTarget, tail_linear);
    auto eval = [&](i64 len) {
        auto an = coeffs::an_table(E, len);
        const auto& A = *an;
        double s = 0.0;
        for (i64 n = len; n >= 1; --n)
            if (A[n] != 0) s += (double)A[n] / (double)n * std::exp(-c * (double)n);
        return 2.0 * s;
    };
    double v = eval(L);
    rep.value = v;
    rep.terms = L;
    rep.truncation_bound = 2.0 * tail_linear(c, L);
    if (std::abs(v) > 10.0 * (rep.truncation_bound + kZeroTol)) {
        rep.verdict = Verdict::Nonzero;
    } else if (std::abs(v) < kZeroTol) {
        double v2 = eval(2 * L);
        rep.verdict = (std::abs(v2 - v) < kZeroTol / 10.0) ? Verdict::Zero : Verdict::Indeterminate;
    }
    return rep;
}

CentralValueReport central_derivative(const EllipticCurveQ& E) {
    if (numeric_sign(E) != -1)
        throw std::invalid_argument("central_derivative: defined here only for sign -1");
    CentralValueReport rep;
    rep.derivative = true;
    double c = 2.0 * std::numbers::pi / sqrt_conductor(E);
    i64 L = choose_length(c, kTailTarget, tail_linear);
    auto eval = [&](i64 len) {
        auto an = coeffs::an_table(E, len);
        const auto& A = *an;
        double s = 0.0;
        for (i64 n = len; n >= 1; --n)
            if (A[n] != 0) s += (double)A[n] / (double)n * exp_integral_e1(c * (double)n);
        return 2.0 * s;
    };
    double v = eval(L);
    rep.value = v;
    rep.terms = L;
    rep.truncation_bound = 2.0 * tail_linear(c, L);  // E1(x) < e^{-x} for x > 1
    if (std::abs(v) > 10.0 * (rep.truncation_bound + kZeroTol)) {
        rep.verdict = Verdict::Nonzero;
    } else if (std::abs(v) < kZeroTol) {
        double v2 = eval(2 * L);
        rep.verdict = (std::abs(v2 - v) < kZeroTol / 10.0) ? Verdict::Zero : Verdict::Indeterminate;
    }
    return rep;
}

CentralValueReport twisted_central_value(const EllipticCurveQ& E, const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw std::invalid_argument("twisted_central_value: character must be primitive");
    i64 m = chi.modulus();
    if (m == 1) return central_value(E);
    if (gcd128(E.conductor(), m) != 1)
        throw std::invalid_argument("twisted_central_value: modulus shares a factor with N");

    int w = numeric_sign(E);
    auto tau = dirichlet::gauss_sum(chi);
    std::complex<double> eps =
        (double)w * chi.value(E.conductor()) * tau * tau / (double)m;
    double Q = (double)E.conductor() * (double)m * (double)m;
    double c = 2.0 * std::numbers::pi / std::sqrt(Q);
    i64 L = choose_length(c, kTailTarget, tail_linear);

    std::vector<std::complex<double>> chi_table(m);
    for (i64 r = 0; r < m; ++r) chi_table[r] = chi.value(r);

    auto eval = [&](i64 len) {
        auto an = coeffs::an_table(E, len);
        const auto& A = *an;
        std::complex<double> s1 = 0.0, s2 = 0.0;
        for (i64 n = len; n >= 1; --n) {
            if (A[n] == 0) continue;
            auto cv = chi_table[n % m];
            if (cv == std::complex<double>{0.0, 0.0}) continue;
            double wgt = (double)A[n] / (double)n * std::exp(-c * (double)n);
            s1 += wgt * cv;
            s2 += wgt * std::conj(cv);
        }
        return s1 + eps * s2;
    };
    CentralValueReport rep;
    auto v = eval(L);
    rep.value = v;
    rep.terms = L;
    rep.truncation_bound = 2.0 * tail_linear(c, L);
    if (std::abs(v) > 10.0 * (rep.truncation_bound + kZeroTol)) {
        rep.verdict = Verdict::Nonzero;
    } else if (std::abs(v) < kZeroTol) {
        auto v2 = eval(2 * L);
        rep.verdict = (std::abs(v2 - v) < kZeroTol / 10.0) ? Verdict::Zero : Verdict::Indeterminate;
    }
    return rep;
}

int analytic_rank_leq1(const EllipticCurveQ& E) {
    int w = numeric_sign(E);
    if (w == 1) {
        auto cv = central_value(E);
        return cv.verdict == Verdict::Nonzero ? 0 : -1;
    }
    auto cd = central_derivative(E);
    return cd.verdict == Verdict::Nonzero ? 1 : -1;
}

double theta_moment(const EllipticCurveQ& E, int k) {
    double rootN = sqrt_conductor(E);
    double c = 2.0 * std::numbers::pi / rootN;
    // truncate where the theta tail is negligible even against ln^k growth
    double T = (42.0 + 10.0 * k) / c;
    if (T < 4.0) T = 4.0;
    i64 L = choose_length(c, 1e-13, tail_n);
    auto an = coeffs::an_table(E, L);
    const auto& A = *an;

    auto H = [&](double t) {
        double s = 0.0;
        i64 top = std::min<i64>(L, (i64)(48.0 / (c * t)) + 8);
        const double r = std::exp(-c * t);
        double pw = 1.0;
        for (i64 n = 1; n <= top; ++n) {
            pw *= r;
            if ((n & 4095) == 0) pw = std::exp(-c * t * (double)n);  // kill power drift
            if (A[n] != 0) s += (double)A[n] * pw;
        }
        return s;
    };
    auto simpson = [&](double lo, double hi, int m) {
        double h = (hi - lo) / m;
        double acc = 0.0;
        for (int i = 0; i <= m; ++i) {
            double t = lo + i * h;
            double f = H(t) * std::pow(std::log(t), k);
            if (i == 0 || i == m) acc += f;
            else acc += (i % 2 == 1) ? 4.0 * f : 2.0 * f;
        }
        return acc * h / 3.0;
    };
    // octave-by-octave, each refined until stable (the integrand's frequency
    // content scales like 1/t, so early octaves need the fine grids)
    double total = 0.0;
    double lo = 1.0;
    while (lo < T) {
        double hi = std::min(lo * 2.0, T);
        int m = 64;
        double prev = simpson(lo, hi, m);
        while (true) {
            m *= 2;
            double cur = simpson(lo, hi, m);
            if (std::abs(cur - prev) < 1e-9 * (1.0 + std::abs(cur)) || m >= 32768) {
                if (m >= 32768 && std::abs(cur - prev) > 1e-6 * (1.0 + std::abs(cur)))
                    throw std::runtime_error("theta_moment: quadrature did not stabilize");
                total += cur;
                break;
            }
            prev = cur;
        }
        lo = hi;
    }
    return total;
}

OrderReport analytic_order(const EllipticCurveQ& E, int max_order) {
    OrderReport rep;
    rep.sign = numeric_sign(E);
    double c = 2.0 * std::numbers::pi / sqrt_conductor(E);
    int k = rep.sign == 1 ? 0 : 1;
    for (; k <= max_order; k += 2) {
        double m = theta_moment(E, k);
        rep.moments.push_back(m);
        // normalize to L-value scale: L^(k)(1) = 2 c M_k when lower ones vanish
        double norm = 2.0 * c * std::abs(m);
        if (norm > 1e-5) {
            rep.order = k;
            return rep;
        }
        if (norm > 1e-8)
            throw std::runtime_error("analytic_order: moment in the indeterminate band");
    }
    return rep;
}

namespace {

std::vector<i128> poly_mul(const std::vector<i128>& a, const std::vector<i128>& b) {
    std::vector<i128> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = add_checked(out[i + j], mul_checked(a[i], b[j]));
    return out;
}

std::vector<i128> poly_pow(std::vector<i128> base, i64 e) {
    std::vector<i128> out = {1};
    while (e > 0) {
        if (e & 1) out = poly_mul(out, base);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base);
    }
    return out;
}

}  // namespace

EulerFactor euler_factor_over_field(const EllipticCurveQ& E, const AbelianField& F, i64 p) {
    auto s = F.split(abfield::Place::at(p));
    auto ld = E.local_data(p);
    EulerFactor out;
    out.p = p;
    out.power = s.g;
    using elliptic::Reduction;
    if (ld.kind == Reduction::Good) {
        i128 Af = E.frobenius_trace_power(p, (int)s.f);
        i128 pf = 1;
        for (i64 i = 0; i < s.f; ++i) pf = mul_checked(pf, p);
        std::vector<i128> base(2 * s.f + 1, 0);
        base[0] = 1;
        base[s.f] = -Af;
        base[2 * s.f] = pf;
        out.base = base;
        out.coeffs = poly_pow(base, s.g);
        return out;
    }
    if (ld.kind == Reduction::SplitMultiplicative || ld.kind == Reduction::NonsplitMultiplicative) {
        i128 af = E.frobenius_trace_power(p, (int)s.f);  // a_p^f
        std::vector<i128> base(s.f + 1, 0);
        base[0] = 1;
        base[s.f] = -af;
        out.base = base;
        out.coeffs = poly_pow(base, s.g);
        return out;
    }
    // additive
    if (s.e == 1) {
        out.base = {1};
        out.coeffs = {1};
        return out;
    }
    if (s.e == 2) {
        // The completion adds a ramified quadratic layer; the reduction stays
        // additive iff the corresponding quadratic twists of E stay additive.
        bool all_additive = true;
        bool found = false;
        for (auto& chi : F.characters()) {
            if (chi.order() != 2 || chi.conductor() % p != 0) continue;
            found = true;
            auto v = chi.eval(-1);
            i128 D = v->is_one() ? (i128)chi.conductor() : -(i128)chi.conductor();
            auto Ed = E.quadratic_twist(D);
            if (Ed.local_data(p).kind != Reduction::Additive) all_additive = false;
        }
        if (!found) throw std::logic_error("euler_factor: ramified e=2 without quadratic character");
        if (all_additive) {
            out.base = {1};
            out.coeffs = {1};
            return out;
        }
    }
    throw PotentiallyGoodRamified(p);
}

std::string EulerFactor::display() const {
    if (base.size() == 1) return "1";
    std::string s = "(1";
    for (size_t k = 1; k < base.size(); ++k) {
        if (base[k] == 0) continue;
        i128 c = base[k];
        s += c > 0 ? " + " : " - ";
        i128 a = abs128(c);
        // render a * p^{-ks}; when a = p^j fold it into the exponent
        int j = 0;
        if (a > 1) {
            i128 t = a;
            while (t % p == 0) { t /= p; ++j; }
            if (t != 1) j = 0;
        }
        if (j > 0) {
            s += to_string((i128)p) + "^(" + std::to_string(j) + "-" + std::to_string(k) + "s)";
        } else {
            if (a != 1) s += to_string(a) + "*";
            s += to_string((i128)p) + "^(-" + std::to_string(k) + "s)";
        }
    }
    s += ")";
    if (power != 1) s += "^" + std::to_string(power);
    return s;
}

NthPowerReport formal_nth_power(const EllipticCurveQ& E, const AbelianField& F, i64 n, i64 pmax) {
    NthPowerReport rep;
    rep.n = n;
    rep.pmax = pmax;
    for (i64 p : arith::primes_up_to(pmax)) {
        auto ef = euler_factor_over_field(E, F, p);
        const auto& A = ef.coeffs;
        int deg = ef.degree();
        if (deg == 0) continue;  // factor 1
        if (deg % n != 0) {
            rep.pass = false;
            rep.first_failure = p;
            return rep;
        }
        int d = deg / (int)n;
        std::vector<i128> R(d + 1, 0);
        R[0] = 1;
        bool ok = true;
        for (int k = 1; k <= d && ok; ++k) {
            // coefficient of T^k in R^n with r_k unknown: n r_k + [T^k](R_{<k}^n)
            auto partial = poly_pow(R, n);
            i128 delta = A[k] - (k < (int)partial.size() ? partial[k] : 0);
            if (delta % n != 0) { ok = false; break; }
            R[k] = delta / n;
        }
        if (ok) ok = (poly_pow(R, n) == A);
        if (!ok) {
            rep.pass = false;
            rep.first_failure = p;
            return rep;
        }
    }
    return rep;
}

}  // namespace localrank::lfunc
