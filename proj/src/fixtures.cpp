#include "localrank/fixtures.hpp"

#include <sstream>
#include <stdexcept>

#include "localrank/arith.hpp"

namespace localrank::fixtures {

const std::vector<CurveEntry>& curve_table() {
    static const std::vector<CurveEntry> table = {
        {"480a1", {0, -1, 0, -6, 0}, 480},  // y^2 = x(x+2)(x-3)
        {"37a1", {0, 0, 1, -1, 0}, 37},     // y^2 + y = x^3 - x
        {"14a1", {1, 0, 1, 4, -6}, 14},     // y^2 + xy + y = x^3 + 4x - 6
        {"24a4", {0, -1, 0, 1, 0}, 24},     // y^2 = x^3 - x^2 + x
        {"19a3", {0, 1, 1, 1, 0}, 19},      // y^2 + y = x^3 + x^2 + x
    };
    return table;
}

EllipticCurveQ curve_by_name(const std::string& name) {
    for (auto& e : curve_table()) {
        if (e.label == name) {
            EllipticCurveQ E(e.a[0], e.a[1], e.a[2], e.a[3], e.a[4]);
            if (E.conductor() != e.conductor)
                throw std::logic_error("fixture table: conductor mismatch for " + e.label);
            E.label = e.label;
            return E;
        }
    }
    // "a1,a2,a3,a4,a6"
    std::vector<i128> a;
    std::stringstream ss(name);
    std::string tok;
    while (std::getline(ss, tok, ',')) a.push_back(parse_i128(tok));
    if (a.size() != 5)
        throw std::invalid_argument("curve_by_name: expected a label or five integers, got '" +
                                    name + "'");
    return EllipticCurveQ(a[0], a[1], a[2], a[3], a[4]);
}

std::optional<std::string> label_of(const EllipticCurveQ& E) {
    for (auto& e : curve_table()) {
        EllipticCurveQ F(e.a[0], e.a[1], e.a[2], e.a[3], e.a[4]);
        if (F.same_curve(E)) return e.label;
    }
    return std::nullopt;
}

i64 sha2_dim_37a1_twist(i128 twist_class) {
    i128 s = arith::square_class(twist_class).squarefree;
    return s == -17 * 89 ? 2 : 0;
}

}  // namespace localrank::fixtures
