#include "localrank/rootnum.hpp"

#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "localrank/arith.hpp"
#include "localrank/lfunc.hpp"

namespace localrank::rootnum {

using elliptic::Reduction;
using nlohmann::json;

std::optional<int> local_root_number_formula(const EllipticCurveQ& E, const Place& v) {
    if (v.infinite) return -1;
    i64 p = v.prime;
    auto ld = E.local_data(p);
    switch (ld.kind) {
        case Reduction::Good: return 1;
        case Reduction::SplitMultiplicative: return -1;
        case Reduction::NonsplitMultiplicative: return 1;
        case Reduction::Additive: break;
    }
    if (p == 2 || p == 3) return std::nullopt;
    // p >= 5: v(j) < 0 iff 3 v(c4) < v(disc) marks potential multiplicativity
    int vdisc = ld.v_disc;
    int vc4 = E.c4() == 0 ? INT32_MAX : valuation(E.c4(), p);
    bool pot_mult = (vc4 != INT32_MAX) && (3 * vc4 < vdisc);
    if (pot_mult) return (int)arith::kronecker(-1, p);
    int e = 12 / std::gcd((i64)vdisc, (i64)12);
    switch (e) {
        case 2:
        case 6: return (int)arith::kronecker(-1, p);
        case 3: return (int)arith::kronecker(-3, p);
        case 4: return (int)arith::kronecker(-2, p);
        default:
            throw std::logic_error("local_root_number: unexpected e = " + std::to_string(e));
    }
}

int local_root_number(const EllipticCurveQ& E, const Place& v) {
    auto w = local_root_number_formula(E, v);
    if (!w) throw std::domain_error("needs-numeric: additive reduction at 2 or 3");
    return *w;
}

RootNumberReport global_root_number_report(const EllipticCurveQ& E) {
    RootNumberReport rep;
    std::vector<Place> places = {Place::infinity()};
    for (auto& ld : E.bad_places()) places.push_back(Place::at(ld.p));
    int known_product = 1;
    std::vector<size_t> missing;
    for (auto& v : places) {
        auto w = local_root_number_formula(E, v);
        rep.entries.push_back({v, w, !w.has_value()});
        if (w) known_product *= *w;
        else missing.push_back(rep.entries.size() - 1);
    }
    if (missing.empty()) {
        rep.global = known_product;
        return rep;
    }
    rep.used_numeric = true;
    rep.global = lfunc::numeric_sign(E);
    if (missing.size() == 1) {
        rep.entries[missing[0]].value = rep.global * known_product;  // +-1, so product = quotient
    }
    // with both 2 and 3 additive only the product of the two is determined;
    // the entries stay value-less and the report carries the residual
    return rep;
}

int global_root_number(const EllipticCurveQ& E) { return global_root_number_report(E).global; }

int quad_twist_sign(const EllipticCurveQ& E, i128 D) {
    auto sc = arith::square_class(D);
    if (sc.fundamental_discriminant != D && D != 1)
        throw std::invalid_argument("quad_twist_sign: D must be a fundamental discriminant");
    if (D == 1) return global_root_number(E);
    if (gcd128(abs128(D), E.conductor()) != 1)
        throw std::invalid_argument(
            "quad_twist_sign: D shares a factor with the conductor; use global_root_number on the twist");
    return arith::kronecker(D, -E.conductor()) * global_root_number(E);
}

std::string RootNumberReport::to_json() const {
    json j;
    j["entries"] = json::array();
    int residual = global;
    for (auto& e : entries) {
        json je;
        je["place"] = e.place.label();
        if (e.value) {
            je["value"] = *e.value;
            residual *= *e.value;
        }
        je["method"] = e.numeric_fallback ? "numeric-fallback" : "formula";
        j["entries"].push_back(je);
    }
    bool all_known = true;
    for (auto& e : entries)
        if (!e.value) all_known = false;
    if (!all_known) j["undetermined_pair_product"] = residual;
    j["global"] = global;
    j["used_numeric"] = used_numeric;
    return j.dump(2);
}

}  // namespace localrank::rootnum
