#pragma once

// Numeric L-values at the center, functional-equation signs, twisted central
// values, and the Euler-factor engine over abelian fields.
//
// All series share one a_n stream per curve (see coeffs.hpp).  Truncation
// bounds are explicit: |a_n| <= d(n) sqrt(n) <= n gives geometric tails.

#include <complex>
#include <string>

#include "localrank/abfield.hpp"
#include "localrank/coeffs.hpp"
#include "localrank/dirichlet.hpp"
#include "localrank/elliptic.hpp"

namespace localrank::lfunc {

using abfield::AbelianField;
using dirichlet::DirichletCharacter;
using elliptic::EllipticCurveQ;

enum class Verdict { Zero, Nonzero, Indeterminate };

struct CentralValueReport {
    std::complex<double> value{0.0, 0.0};
    bool derivative = false;
    i64 terms = 0;
    double truncation_bound = 0.0;
    double zero_tolerance = 1e-8;
    Verdict verdict = Verdict::Indeterminate;
};

// L(E, 1) = (1 + w) sum a_n/n exp(-2 pi n / sqrt(N)).
CentralValueReport central_value(const EllipticCurveQ& E);

// L'(E, 1) = 2 sum a_n/n E1(2 pi n / sqrt(N)); requires sign -1.
CentralValueReport central_derivative(const EllipticCurveQ& E);

// L(E, chi, 1) for primitive chi with conductor prime to N, via the twisted
// functional equation with conductor N N(chi)^2 and epsilon factor
// w chi(N) tau(chi)^2 / N(chi).
CentralValueReport twisted_central_value(const EllipticCurveQ& E, const DirichletCharacter& chi);

// 0, 1, or -1 (indeterminate).
int analytic_rank_leq1(const EllipticCurveQ& E);

// Sign of the functional equation, found from the Fricke symmetry of the
// theta series H(t) = sum a_n exp(-2 pi n t / sqrt(N)):  H(1/t) = w t^2 H(t).
// Throws when the ratio is not within 1e-4 of +-1.
int numeric_sign(const EllipticCurveQ& E);

// Theta moment M_k = int_1^inf H(t) ln^k(t) dt.  The completed L-function
// satisfies Lambda(s) = int_1^inf H(t) (t^(s-1) + w t^(1-s)) dt, so
// Lambda^(k)(1) = (1 + w (-1)^k) M_k: even moments carry the derivatives for
// sign +1, odd moments for sign -1.
double theta_moment(const EllipticCurveQ& E, int k);

struct OrderReport {
    int order = -1;  // -1: undecided up to max_order
    int sign = 1;
    std::vector<double> moments;  // the moments examined, in order
};

// Order of vanishing at the center, decided exactly up to max_order by the
// moment sequence (M0, M2, ... for sign +1; M1, M3, ... for sign -1).
OrderReport analytic_order(const EllipticCurveQ& E, int max_order = 3);

struct EulerFactor {
    i64 p = 0;
    std::vector<i128> base;  // per-place inverse factor, ascending in T = p^{-s}
    i64 power = 1;           // number of places above p
    std::vector<i128> coeffs;  // base^power, expanded

    int degree() const { return (int)coeffs.size() - 1; }
    // Paper-style rendering, e.g. "(1 + 14*7^(-2s) + 7^(2-4s))^4".
    std::string display() const;
};

struct PotentiallyGoodRamified : std::runtime_error {
    explicit PotentiallyGoodRamified(i64 p)
        : std::runtime_error("euler factor at " + std::to_string(p) +
                             ": potentially-good ramified case unsupported") {}
};

EulerFactor euler_factor_over_field(const EllipticCurveQ& E, const AbelianField& F, i64 p);

struct NthPowerReport {
    bool pass = true;
    i64 first_failure = 0;  // prime where the n-th power test first fails
    i64 pmax = 0;
    i64 n = 1;
};

// Tests whether every Euler factor of L(E/F, s) for p <= pmax is an exact
// n-th power of an integer polynomial.
NthPowerReport formal_nth_power(const EllipticCurveQ& E, const AbelianField& F, i64 n, i64 pmax);

// Exponential integral E1(x), x > 0, absolute error < 1e-14 for x <= 700.
double exp_integral_e1(double x);

}  // namespace localrank::lfunc
