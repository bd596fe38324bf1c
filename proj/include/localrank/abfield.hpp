#pragma once

// Abelian extensions F/Q represented dually, by a finite group X of Dirichlet
// characters.  Splitting data (e, f, g) at every place comes from character
// kernels; no defining polynomials anywhere.

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "localrank/dirichlet.hpp"

namespace localrank::abfield {

using dirichlet::DirichletCharacter;

// A place of Q: a prime, or infinity.
struct Place {
    bool infinite = false;
    i64 prime = 0;
    static Place infinity() { return {true, 0}; }
    static Place at(i64 p) { return {false, p}; }
    friend bool operator==(const Place&, const Place&) = default;
    friend bool operator<(const Place& a, const Place& b) {
        if (a.infinite != b.infinite) return !a.infinite;  // finite places first
        return a.prime < b.prime;
    }
    std::string label() const { return infinite ? "inf" : std::to_string(prime); }
};

struct SplitData {
    i64 e = 1, f = 1, g = 1;  // ramification, residue degree, number of places
    friend bool operator==(const SplitData&, const SplitData&) = default;
};

class AbelianField {
  public:
    // Field cut out by the group generated by the given characters.
    static AbelianField from_characters(const std::vector<DirichletCharacter>& chars);
    static AbelianField rationals() { return from_characters({}); }
    // Multiquadratic field from fundamental discriminants.
    static AbelianField from_discriminants(const std::vector<i128>& discs);

    i64 modulus() const { return modulus_; }
    i64 degree() const { return (i64)characters_.size(); }
    const std::vector<DirichletCharacter>& characters() const { return characters_; }
    const std::vector<DirichletCharacter>& generators() const { return generators_; }

    // (e, f, g) at a place of Q.
    SplitData split(const Place& v) const;
    // Distinct ramified primes (primes dividing some character conductor).
    std::vector<i64> ramified_primes() const;

    // Orders of elements of Gal(F/Q) (same multiset as character orders).
    std::vector<i64> galois_element_orders() const;

    // One fundamental discriminant per order-2 character, sorted by |D|.
    std::vector<i128> quadratic_subfield_discs() const;

    bool contains(const DirichletCharacter& chi) const;

  private:
    i64 modulus_ = 1;
    std::vector<DirichletCharacter> characters_;  // full group, mod modulus_
    std::vector<DirichletCharacter> generators_;
};

struct CertificateEntry {
    Place place;
    SplitData split;
    bool ok = false;  // g divisible by n
};

struct CyclicWitness {
    i64 subgroup_order = 1;
    i64 index = 1;  // [G : <sigma>]
    bool ok = false;
};

// Certificate that every place of Q splits into a multiple of n places of F.
// Ramified places and infinity are listed individually; unramified places are
// covered by the cyclic-subgroup criterion (Frobenius realizes every element).
struct SplittingCertificate {
    i64 modulus = 1;
    std::vector<std::vector<i64>> generator_exponents;
    i64 degree = 1;
    i64 n = 1;
    std::vector<CertificateEntry> entries;
    std::vector<CyclicWitness> witnesses;
    bool verdict = false;

    std::string to_json() const;
};

SplittingCertificate certify_split_multiple(const AbelianField& F, i64 n);

// Field I/O: accepts {"modulus": m, "generators": [[e,...],...]} or
// {"discs": [d,...]}; certificates serialize in the same shape.
AbelianField field_from_json(const std::string& text);
std::string field_to_json(const AbelianField& F);

// Greedy construction of a field with group (Z/p)^d none of whose characters
// (up to prime-to-p powers) lies in `avoid`, with every place in `force_split`
// split completely.  Candidates are scanned by (conductor, exponent vector);
// the avoid set is re-closed against the current group at each step.
struct DensityConstructError : std::runtime_error {
    i64 bound_reached;
    explicit DensityConstructError(i64 b)
        : std::runtime_error("density_construct: conductor bound " + std::to_string(b) +
                             " exhausted"),
          bound_reached(b) {}
};

AbelianField density_construct(i64 p, i64 d, const std::vector<DirichletCharacter>& avoid,
                               const std::vector<Place>& force_split, i64 conductor_bound);

}  // namespace localrank::abfield
