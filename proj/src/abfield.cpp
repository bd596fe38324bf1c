#include "localrank/abfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace localrank::abfield {

using dirichlet::induce;
using dirichlet::RootOfUnity;
using nlohmann::json;

namespace {

// Closure of a character list under products, all mod the same modulus.
std::vector<DirichletCharacter> generate_group(i64 modulus,
                                               const std::vector<DirichletCharacter>& gens) {
    std::map<std::vector<i64>, DirichletCharacter> seen;
    DirichletCharacter triv = induce(DirichletCharacter(), modulus);
    seen.emplace(triv.exponents(), triv);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<DirichletCharacter> current;
        current.reserve(seen.size());
        for (auto& [k, c] : seen) current.push_back(c);
        for (auto& c : current)
            for (auto& g : gens) {
                auto pr = dirichlet::product(c, g);
                if (pr.modulus() != modulus) pr = induce(pr, modulus);
                if (seen.emplace(pr.exponents(), pr).second) grew = true;
            }
    }
    std::vector<DirichletCharacter> out;
    out.reserve(seen.size());
    for (auto& [k, c] : seen) out.push_back(c);
    return out;
}

}  // namespace

AbelianField AbelianField::from_characters(const std::vector<DirichletCharacter>& chars) {
    AbelianField F;
    i64 M = 1;
    for (auto& c : chars) M = std::lcm(M, c.conductor());
    F.modulus_ = M;
    std::vector<DirichletCharacter> gens;
    gens.reserve(chars.size());
    for (auto& c : chars) gens.push_back(induce(c.primitive_part(), M));
    F.generators_ = gens;
    F.characters_ = generate_group(M, gens);
    return F;
}

AbelianField AbelianField::from_discriminants(const std::vector<i128>& discs) {
    std::vector<DirichletCharacter> chars;
    chars.reserve(discs.size());
    for (i128 d : discs) chars.push_back(dirichlet::kronecker_character(d));
    return from_characters(chars);
}

bool AbelianField::contains(const DirichletCharacter& chi) const {
    auto key = chi.canonical_key();
    for (auto& c : characters_)
        if (c.canonical_key() == key) return true;
    return false;
}

std::vector<i64> AbelianField::ramified_primes() const {
    std::set<i64> ps;
    for (auto& c : characters_) {
        if (c.conductor() == 1) continue;
        auto f = arith::factor(c.conductor());
        for (auto& [p, e] : f.factors) ps.insert((i64)p);
    }
    return std::vector<i64>(ps.begin(), ps.end());
}

std::vector<i64> AbelianField::galois_element_orders() const {
    std::vector<i64> orders;
    orders.reserve(characters_.size());
    for (auto& c : characters_) orders.push_back(c.order());
    std::sort(orders.begin(), orders.end());
    return orders;
}

SplitData AbelianField::split(const Place& v) const {
    i64 deg = degree();
    if (v.infinite) {
        // e*f = order of complex conjugation = order of the image of -1.
        i64 e = 1;
        for (auto& c : characters_) {
            auto val = c.eval(-1);
            if (!val->is_one()) { e = 2; break; }
        }
        return {e, 1, deg / e};
    }
    i64 p = v.prime;
    if (modulus_ % p != 0) {
        // Unramified: f = order of Frobenius = order of the image of p in G,
        // which is the lcm of the orders of chi(p) over the character group.
        i64 f = 1;
        for (auto& c : characters_) {
            auto val = c.eval(p);
            f = std::lcm(f, val->den);
        }
        return {1, f, deg / f};
    }
    // Ramified: characters unramified at p (conductor prime to p) are the
    // characters of G/I, so e = |X| / |X_unram|.  Frobenius acts on G/I via
    // a lift of p that is trivial in the p-part of the modulus.
    std::vector<const DirichletCharacter*> unram;
    for (auto& c : characters_)
        if (c.conductor() % p != 0) unram.push_back(&c);
    i64 e = deg / (i64)unram.size();
    // lift: = p mod (prime-to-p part of modulus), = 1 mod p-part
    i64 ppart = 1, m = modulus_;
    while (m % p == 0) { m /= p; ppart *= p; }
    i64 lift;
    {
        // CRT: x = p mod m, x = 1 mod ppart
        i64 minv;  // m^{-1} mod ppart
        i64 a = m % ppart, b = ppart, x0 = 1, x1 = 0;
        while (b != 0) { i64 t = a / b; a -= t * b; std::swap(a, b); x0 -= t * x1; std::swap(x0, x1); }
        minv = ((x0 % ppart) + ppart) % ppart;
        i64 t = (i64)((i128)(((1 - p) % ppart + ppart) % ppart) * minv % ppart);
        lift = (i64)(((i128)p + (i128)m * t) % ((i128)m * ppart));
        if (lift < 0) lift += m * ppart;
    }
    i64 f = 1;
    for (auto* c : unram) {
        auto val = c->eval(lift);
        if (!val) throw std::logic_error("split: Frobenius lift not coprime to modulus");
        f = std::lcm(f, val->den);
    }
    return {e, f, deg / (e * f)};
}

std::vector<i128> AbelianField::quadratic_subfield_discs() const {
    std::vector<i128> discs;
    for (auto& c : characters_) {
        if (c.order() != 2) continue;
        i64 f = c.conductor();
        auto v = c.eval(-1);
        discs.push_back(v->is_one() ? (i128)f : -(i128)f);
    }
    std::sort(discs.begin(), discs.end(),
              [](i128 a, i128 b) { return abs128(a) != abs128(b) ? abs128(a) < abs128(b) : a < b; });
    return discs;
}

SplittingCertificate certify_split_multiple(const AbelianField& F, i64 n) {
    if (n < 1) throw std::invalid_argument("certify_split_multiple: n must be >= 1");
    SplittingCertificate cert;
    cert.modulus = F.modulus();
    for (auto& g : F.generators()) cert.generator_exponents.push_back(g.exponents());
    cert.degree = F.degree();
    cert.n = n;
    cert.verdict = true;

    for (i64 p : F.ramified_primes()) {
        auto s = F.split(Place::at(p));
        bool ok = s.g % n == 0;
        cert.entries.push_back({Place::at(p), s, ok});
        cert.verdict = cert.verdict && ok;
    }
    {
        auto s = F.split(Place::infinity());
        bool ok = s.g % n == 0;
        cert.entries.push_back({Place::infinity(), s, ok});
        cert.verdict = cert.verdict && ok;
    }
    // Frobenius at an unramified place can be any element of G (Chebotarev),
    // giving g = [G : <sigma>]; the multiset of element orders of G equals
    // that of its dual X, which we hold explicitly.
    std::set<i64> seen_orders;
    for (i64 ord : F.galois_element_orders()) {
        if (!seen_orders.insert(ord).second) continue;
        CyclicWitness w;
        w.subgroup_order = ord;
        w.index = F.degree() / ord;
        w.ok = w.index % n == 0;
        cert.witnesses.push_back(w);
        cert.verdict = cert.verdict && w.ok;
    }
    return cert;
}

std::string SplittingCertificate::to_json() const {
    json j;
    j["modulus"] = modulus;
    j["generators"] = generator_exponents;
    j["degree"] = degree;
    j["n"] = n;
    j["places"] = json::array();
    for (auto& e : entries) {
        j["places"].push_back({{"place", e.place.label()},
                               {"e", e.split.e},
                               {"f", e.split.f},
                               {"g", e.split.g},
                               {"ok", e.ok}});
    }
    j["cyclic_subgroups"] = json::array();
    for (auto& w : witnesses)
        j["cyclic_subgroups"].push_back(
            {{"order", w.subgroup_order}, {"index", w.index}, {"ok", w.ok}});
    j["verdict"] = verdict;
    return j.dump(2);
}

AbelianField field_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("discs")) {
        std::vector<i128> discs;
        for (auto& d : j["discs"]) discs.push_back((i128)(i64)d);
        return AbelianField::from_discriminants(discs);
    }
    i64 m = j.at("modulus");
    std::vector<DirichletCharacter> gens;
    for (auto& ev : j.at("generators")) {
        std::vector<i64> e;
        for (auto& x : ev) e.push_back((i64)x);
        gens.emplace_back(m, e);
    }
    return AbelianField::from_characters(gens);
}

std::string field_to_json(const AbelianField& F) {
    json j;
    j["modulus"] = F.modulus();
    j["generators"] = json::array();
    for (auto& g : F.generators()) j["generators"].push_back(g.exponents());
    j["degree"] = F.degree();
    return j.dump(2);
}

namespace {

bool place_splits_completely(const DirichletCharacter& chi, const Place& v) {
    if (v.infinite) {
        auto val = chi.eval(-1);
        return val && val->is_one();
    }
    auto val = chi.eval(v.prime);
    return val && val->is_one();
}

}  // namespace

AbelianField density_construct(i64 p, i64 d, const std::vector<DirichletCharacter>& avoid_in,
                               const std::vector<Place>& force_split, i64 conductor_bound) {
    if (d < 0) throw std::invalid_argument("density_construct: dimension must be >= 0");
    // Close the avoid set under powers prime to p.
    std::set<std::vector<i64>> avoid;
    for (auto& chi : avoid_in) {
        for (i64 k = 1; k < p; ++k) {
            if (std::gcd(k, p) != 1) continue;
            avoid.insert(chi.power(k).canonical_key());
        }
        if (p == 2) avoid.insert(chi.canonical_key());
    }

    std::vector<DirichletCharacter> gens;
    std::vector<DirichletCharacter> group = {DirichletCharacter()};  // current Psi

    while ((i64)gens.size() < d) {
        bool found = false;
        for (i64 cond = 2; cond <= conductor_bound && !found; ++cond) {
            for (auto& chi : dirichlet::characters_of_order(cond, p)) {
                if (!chi.is_primitive()) continue;
                bool ok = true;
                for (auto& v : force_split)
                    if (!place_splits_completely(chi, v)) { ok = false; break; }
                if (!ok) continue;
                // independence: chi must not lie in the current group
                for (auto& psi : group)
                    if (chi.same_primitive(psi)) { ok = false; break; }
                if (!ok) continue;
                // the rebuilt avoid set S_d = { phi psi } requires chi*psi free of S
                for (auto& psi : group) {
                    if (avoid.count(dirichlet::product(chi, psi).canonical_key())) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                gens.push_back(chi);
                // extend the group by chi
                std::vector<DirichletCharacter> bigger;
                bigger.reserve(group.size() * p);
                for (auto& psi : group)
                    for (i64 k = 0; k < p; ++k)
                        bigger.push_back(dirichlet::product(psi, chi.power(k)));
                group = std::move(bigger);
                found = true;
                break;
            }
        }
        if (!found) throw DensityConstructError(conductor_bound);
    }
    return AbelianField::from_characters(gens);
}

}  // namespace localrank::abfield
