#pragma once

// The five curves the verification pipelines are built around, keyed by their
// catalog labels, plus the handful of asserted-but-not-computed values the
// reports consume.  This file is the only place such numbers live; everything
// else in the toolkit is computed.

#include <optional>
#include <string>
#include <vector>

#include "localrank/elliptic.hpp"

namespace localrank::fixtures {

using elliptic::EllipticCurveQ;

struct CurveEntry {
    std::string label;
    std::array<i64, 5> a;  // a1, a2, a3, a4, a6
    i64 conductor;         // the level the label carries; verified against Tate
};

const std::vector<CurveEntry>& curve_table();

// Curve by label ("480a1") or by "a1,a2,a3,a4,a6".
EllipticCurveQ curve_by_name(const std::string& name);
std::optional<std::string> label_of(const EllipticCurveQ& E);

// ---- paper-asserted fixture values (not computed by this toolkit) ----

// Mordell-Weil ranks of 480a1 over the degree-9 and degree-25 splitting
// fields; reachable only through descent over cubic/quintic fields.
inline constexpr i64 kRank480a1OverF3 = 1;
inline constexpr i64 kRank480a1OverF5 = 1;

// dim_F2 Sha[2] for the quadratic twists of 37a1 by the square classes of
// <-1, 17, 89>: 2 for the twist by -17*89, 0 for the other seven.
i64 sha2_dim_37a1_twist(i128 twist_class);

// |Sel_2(14a1 / Q(i, sqrt 17))| = 8.
inline constexpr i64 kSelmerOrder14a1QuadField = 8;

}  // namespace localrank::fixtures
