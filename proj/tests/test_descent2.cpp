#include <doctest.h>

#include <set>

#include "localrank/descent2.hpp"
#include "localrank/lfunc.hpp"

using namespace localrank;
using namespace localrank::descent2;
using elliptic::EllipticCurveQ;

TEST_SUITE_BEGIN("descent2");

// ---- brute-force p-adic oracle -----------------------------------------
//
// Primitive solutions of
//   b1 x1^2 - b2 x2^2 = d12 z^2,  b1 x1^2 - b1 b2 x3^2 = d13 z^2
// modulo p^6, normalized under unit scaling so z runs over {0, 1, p, ..., p^5}.
// "t is a square times b mod p^6" decided exactly for odd p.

static bool square_times_mod(i128 t, i128 b, i64 p, int k, int* val_out) {
    // exists x with b x^2 = t mod p^k?
    i128 pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    t %= pk;
    if (t < 0) t += pk;
    if (t == 0) { *val_out = k; return true; }
    int vt = 0;
    i128 u = t;
    while (u % p == 0) { u /= p; ++vt; }
    int vb = 0;
    i128 ub = b;
    while (ub % p == 0) { ub /= p; ++vb; }
    *val_out = vt;
    if (vt < vb) return false;
    if ((vt - vb) % 2 != 0) return false;
    i128 q = (u * (i128)arith::powmod((u128)(((ub % p) + p) % p), (u128)(p - 2), (u128)p)) % p;
    return arith::jacobi(q, p) == 1;
}

// necessary: some normalized (x1, z) passes mod p^6 at any depth
// sufficient: some pass has both valuations <= 4 (Hensel margin)
static void torsor_oracle(i128 b1, i128 b2, i128 d12, i128 d13, i64 p, bool* necessary,
                          bool* sufficient) {
    *necessary = false;
    *sufficient = false;
    i128 p6 = 1;
    for (int i = 0; i < 6; ++i) p6 *= p;
    std::vector<i128> zs = {0};
    i128 pw = 1;
    for (int i = 0; i < 6; ++i) { zs.push_back(pw); pw *= p; }
    for (i128 z : zs) {
        i128 dz1 = (d12 * z % p6) * z % p6;
        i128 dz2 = (d13 * z % p6) * z % p6;
        for (i128 x1 = 0; x1 < p6; ++x1) {
            if (z == 0 && x1 % p == 0) continue;  // primitivity needs a unit among x1, z
            i128 t = (b1 * x1 % p6) * x1 % p6;
            int v1, v2;
            if (!square_times_mod(t - dz1, b2, p, 6, &v1)) continue;
            if (!square_times_mod(t - dz2, b1 * b2, p, 6, &v2)) continue;
            *necessary = true;
            if (v1 <= 4 && v2 <= 4) { *sufficient = true; return; }
        }
    }
}

TEST_CASE("congruent-number curve y^2 = x^3 - x has rank interval [0,0]") {
    EllipticCurveQ E(0, 0, 0, -1, 0);
    auto rep = two_descent(E);
    CHECK(rep.roots == std::vector<i128>{-4, 0, 4});
    CHECK(rep.selmer_dim == 2);
    CHECK(rep.found_dim == 2);
    CHECK(rep.rank.lower == 0);
    CHECK(rep.rank.upper == 0);
    CHECK(rep.rank.tight());
}

TEST_CASE("trivial pair is solvable everywhere; negative b1 fails at infinity") {
    std::vector<i128> roots = {-4, 0, 4};
    CHECK(torsor_locally_solvable(1, 1, roots, Place::infinity()));
    CHECK(torsor_locally_solvable(1, 1, roots, Place::at(2)));
    CHECK(torsor_locally_solvable(1, 1, roots, Place::at(97)));
    CHECK(!torsor_locally_solvable(-1, 1, roots, Place::infinity()));
    CHECK(!torsor_locally_solvable(-2, -1, roots, Place::infinity()));
}

TEST_CASE("local verdicts agree with the exhaustive mod-p^6 oracle") {
    std::vector<EllipticCurveQ> curves = {EllipticCurveQ(0, 0, 0, -1, 0),
                                          EllipticCurveQ(0, -1, 0, -6, 0)};
    for (auto& E : curves) {
        auto tt = elliptic::two_torsion(E);
        REQUIRE(tt.rational_roots == 3);
        auto roots = tt.roots4;
        i128 d12 = roots[1] - roots[0], d13 = roots[2] - roots[0];
        std::vector<i128> some_classes = {1, -1, 2, -2, 3, -3, 5, -5, 6, 10, 15, 30, -30};
        for (i64 p : {3, 5, 7}) {
            for (i128 b1 : some_classes)
                for (i128 b2 : some_classes) {
                    bool primary = torsor_locally_solvable(b1, b2, roots, Place::at(p));
                    bool nec, suf;
                    torsor_oracle(b1, b2, d12, d13, p, &nec, &suf);
                    if (primary) CHECK(nec);   // solvable  =>  residues exist mod p^6
                    if (suf) CHECK(primary);   // certified residue  =>  solvable
                }
        }
    }
}

TEST_CASE("witness soundness and subgroup structure on 480a1") {
    EllipticCurveQ E(0, -1, 0, -6, 0);
    auto rep = two_descent(E);
    // every witness satisfies the torsor equations exactly (also enforced
    // internally); check that witnessed pairs form a subgroup
    std::set<std::pair<i128, i128>> witnessed = {{1, 1}};
    i64 count_solvable = 0;
    for (auto& pv : rep.pairs) {
        if (pv.locally_solvable) ++count_solvable;
        if (pv.witness) {
            witnessed.insert({pv.b1, pv.b2});
            i128 w2 = pv.witness->w * pv.witness->w;
            CHECK(pv.b1 * pv.witness->u1 * pv.witness->u1 -
                      pv.b2 * pv.witness->u2 * pv.witness->u2 ==
                  (rep.roots[1] - rep.roots[0]) * w2);
        }
        if (!pv.locally_solvable) {
            CHECK(pv.obstruction.has_value());
            CHECK(!pv.witness.has_value());
        }
    }
    CHECK(count_solvable == (i64(1) << rep.selmer_dim));
    // subgroup closure of witnessed pairs
    for (auto& a : witnessed)
        for (auto& b : witnessed) {
            auto prod = std::make_pair(arith::square_class(a.first * b.first).squarefree,
                                       arith::square_class(a.second * b.second).squarefree);
            if ((i64)witnessed.size() == (i64(1) << rep.found_dim)) CHECK(witnessed.count(prod));
        }
    CHECK(rep.rank.lower <= rep.rank.upper);
}

TEST_CASE("descent rank of 480a1 matches the analytic oracle") {
    EllipticCurveQ E(0, -1, 0, -6, 0);
    auto rep = two_descent(E);
    int analytic = lfunc::analytic_rank_leq1(E);
    REQUIRE(analytic >= 0);
    CHECK(rep.rank.tight());
    CHECK(rep.rank.lower == analytic);
}

TEST_CASE("37a1 has no rational 2-torsion: descent refuses") {
    EllipticCurveQ E(0, 0, 1, -1, 0);
    CHECK_THROWS_AS(two_descent(E), std::invalid_argument);
    CHECK_THROWS_AS(rank_multiquadratic(E, {-4, 17, 89}), std::invalid_argument);
}

TEST_CASE("rank_multiquadratic with no discriminants reduces to two_descent") {
    EllipticCurveQ E(0, 0, 0, -1, 0);
    auto single = two_descent(E);
    auto multi = rank_multiquadratic(E, {});
    REQUIRE(multi.per_class.size() == 1);
    CHECK(multi.total.lower == single.rank.lower);
    CHECK(multi.total.upper == single.rank.upper);
}

TEST_CASE("rank_multiquadratic over Q(i) for the congruent-number curve") {
    // rk over Q(i) = rk(E) + rk(E_-1); E_-1 is isomorphic to E here (j = 1728),
    // both rank 0
    EllipticCurveQ E(0, 0, 0, -1, 0);
    auto multi = rank_multiquadratic(E, {-4});
    REQUIRE(multi.per_class.size() == 2);
    CHECK(multi.total.lower == 0);
    CHECK(multi.total.upper == 0);
}

TEST_CASE("descent report serializes with witnesses") {
    EllipticCurveQ E(0, 0, 0, -1, 0);
    auto rep = two_descent(E);
    auto j = rep.to_json();
    CHECK(j.find("\"selmer_dim\"") != std::string::npos);
    CHECK(j.find("\"witness\"") != std::string::npos);
}

TEST_SUITE_END();
