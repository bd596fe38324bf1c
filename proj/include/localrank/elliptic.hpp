#pragma once

// Elliptic curves over Q: minimal models (Laska-Kraus-Connell), Tate's
// algorithm at every bad prime, traces of Frobenius by point counting,
// quadratic twists, 2-torsion structure, naive point search.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "localrank/int128.hpp"

namespace localrank::elliptic {

enum class Reduction { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

struct LocalData {
    i64 p = 0;
    Reduction kind = Reduction::Good;
    std::string kodaira = "I0";
    int conductor_exponent = 0;
    int v_disc = 0;  // valuation of the minimal discriminant
};

struct RationalPoint {
    // x = xn/xd, y = yn/yd, reduced, xd > 0, yd > 0
    i128 xn = 0, xd = 1, yn = 0, yd = 1;
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

class EllipticCurveQ {
  public:
    // Builds the global minimal model of the curve [a1,a2,a3,a4,a6] and runs
    // Tate's algorithm at every prime of the discriminant.  Throws on a
    // singular model.
    EllipticCurveQ(i128 a1, i128 a2, i128 a3, i128 a4, i128 a6);

    i128 a1() const { return a_[0]; }
    i128 a2() const { return a_[1]; }
    i128 a3() const { return a_[2]; }
    i128 a4() const { return a_[3]; }
    i128 a6() const { return a_[4]; }
    i128 b2() const { return b2_; }
    i128 b4() const { return b4_; }
    i128 b6() const { return b6_; }
    i128 b8() const { return b8_; }
    i128 c4() const { return c4_; }
    i128 c6() const { return c6_; }
    i128 discriminant() const { return disc_; }
    i128 conductor() const { return conductor_; }
    // j = j_num/j_den, reduced, j_den > 0.
    i128 j_num() const { return j_num_; }
    i128 j_den() const { return j_den_; }

    const std::vector<LocalData>& bad_places() const { return local_; }
    LocalData local_data(i64 p) const;

    // Trace of Frobenius: point count for good p, +-1 multiplicative, 0 additive.
    i64 ap(i64 p) const;
    // alpha^f + beta^f for the Frobenius roots at a non-additive prime.
    i128 frobenius_trace_power(i64 p, int f) const;

    EllipticCurveQ quadratic_twist(i128 d) const;

    bool same_curve(const EllipticCurveQ& o) const { return a_ == o.a_; }
    std::string model_string() const;

    std::string label;  // optional tag from the fixture table

    // All affine points with x = u/v^2, |u| <= bound, v^2 <= bound,
    // each verified on the curve exactly.
    std::vector<RationalPoint> point_search(i64 bound) const;

  private:
    std::array<i128, 5> a_;
    i128 b2_, b4_, b6_, b8_, c4_, c6_, disc_;
    i128 conductor_;
    i128 j_num_, j_den_;
    std::vector<LocalData> local_;  // bad primes only, increasing p
    void compute_b_invariants();
};

// Tate's algorithm for an integral (not necessarily minimal) model at p;
// exposed for tests.  Returns local data of the input model; if the model is
// not minimal at p the valuations refer to the minimalized model.
LocalData tate_algorithm(i128 a1, i128 a2, i128 a3, i128 a4, i128 a6, i64 p);

struct TwoTorsion {
    // Roots of the 2-division cubic in x, as exact rationals over 4.
    int rational_roots = 0;        // 0, 1 or 3
    std::vector<i128> roots4;      // X = 4x values (integers), sorted
    i64 order_over_Q = 1;          // 1, 2 or 4
    // For one rational root: square class of the discriminant of the
    // remaining quadratic factor (0 when not applicable).
    i128 quadratic_disc_class = 0;
};

TwoTorsion two_torsion(const EllipticCurveQ& E);

// |E(F)[2]| for the multiquadratic field generated by the listed fundamental
// discriminants: 4, 2 or 1.
i64 two_torsion_order_over(const EllipticCurveQ& E, const std::vector<i128>& discs);

}  // namespace localrank::elliptic
