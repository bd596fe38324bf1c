#pragma once

// Complete 2-descent for curves with full rational 2-torsion.
//
// On Y^2 = (X-E1)(X-E2)(X-E3) the image of the Kummer map lands in pairs
// (b1, b2) of square classes supported on -1 and the primes of 2*Delta; the
// pair is everywhere locally solvable iff it lies in the local image of
// E(Q_v)/2E(Q_v) at every bad place.  Upper bound 2^s from the locally
// solvable set; lower bound from exact torsor witnesses
//   b1 z1^2 - b2 z2^2 = E2 - E1,   b1 z1^2 - b1 b2 z3^2 = E3 - E1.

#include <optional>
#include <string>
#include <vector>

#include "localrank/abfield.hpp"
#include "localrank/elliptic.hpp"

namespace localrank::descent2 {

using abfield::Place;
using elliptic::EllipticCurveQ;

struct TorsorWitness {
    // z_i = u_i / w, exact
    i128 u1 = 0, u2 = 0, u3 = 0, w = 1;
};

struct PairVerdict {
    i128 b1 = 1, b2 = 1;
    bool locally_solvable = true;
    std::optional<Place> obstruction;  // first failing place
    std::optional<TorsorWitness> witness;
};

struct RankInterval {
    i64 lower = 0, upper = 0;
    bool tight() const { return lower == upper; }
};

struct DescentReport {
    EllipticCurveQ curve;
    std::vector<i128> roots;  // E1 < E2 < E3 of the integral model
    std::vector<PairVerdict> pairs;
    i64 selmer_dim = 0;  // log2 of the locally-solvable set
    i64 found_dim = 0;   // log2 of the witnessed subgroup
    RankInterval rank;
    std::string to_json() const;
};

// Complete 2-descent; throws std::invalid_argument unless the 2-division
// cubic splits over Q.
DescentReport two_descent(const EllipticCurveQ& E);

// Local solvability of the torsor (b1, b2) for the curve with the given
// integral 2-torsion roots, decided through the local Kummer image.
bool torsor_locally_solvable(i128 b1, i128 b2, const std::vector<i128>& roots, const Place& v);

// Sum of two_descent intervals over the 2^m square classes generated by the
// discriminants; equals the rank interval for E over the multiquadratic field.
struct MultiquadraticRank {
    RankInterval total;
    std::vector<std::pair<i128, RankInterval>> per_class;  // (squarefree class, interval)
};

MultiquadraticRank rank_multiquadratic(const EllipticCurveQ& E, const std::vector<i128>& discs);

}  // namespace localrank::descent2
