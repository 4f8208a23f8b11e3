#include <doctest.h>

#include <set>

#include "tamelat/groups.hpp"
#include "tamelat/quatgroup.hpp"

using namespace tamelat;

TEST_CASE("Gamma = GL2(F_5): order 480, torus 24, H 16, B 80") {
    GenGroup G = GenGroup::gamma(5);
    CHECK(G.order() == 480);
    CHECK(G.closure(G.subgroups["torus"]).size() == 24);
    CHECK(G.closure(G.subgroups["H"]).size() == 16);
    CHECK(G.closure(G.subgroups["B"]).size() == 80);
    CHECK(G.closure(G.subgroups["U"]).size() == 5);
    for (const auto& g : G.gens) CHECK(G.det(g) % 5 != 0);
}

TEST_CASE("GL2(Z/p^k): level 1 equals Gamma; K1 at level 2 is (F_p)^4") {
    GenGroup G1 = GenGroup::gl2_witt(5, 1);
    GenGroup Ga = GenGroup::gamma(5);
    auto e1 = G1.closure(G1.gens);
    auto ea = Ga.closure(Ga.gens);
    CHECK(e1.size() == ea.size());

    GenGroup G2 = GenGroup::gl2_witt(5, 2);
    auto k1 = G2.closure(G2.subgroups["K1"]);
    CHECK(k1.size() == 625);  // kernel of GL2(Z/25) -> GL2(F_5)
    for (const auto& g : G2.subgroups["K1"]) {
        Mat22 x = g;
        for (int i = 0; i < 4; ++i) x = G2.mul(x, g);
        CHECK(x == G2.id());
    }
    // every K1 element reduces to identity mod p
    for (const auto& m : k1) {
        CHECK(m.a[0] % 5 == 1);
        CHECK(m.a[1] % 5 == 0);
        CHECK(m.a[2] % 5 == 0);
        CHECK(m.a[3] % 5 == 1);
    }
    // (1 p; 0 1) has order p at level 2
    Mat22 u;
    u.a[0] = 1; u.a[1] = 5; u.a[2] = 0; u.a[3] = 1;
    Mat22 x = u;
    int ord = 1;
    while (!(x == G2.id())) { x = G2.mul(x, u); ++ord; }
    CHECK(ord == 5);
}

TEST_CASE("torus cosets of Gamma: 20 cosets with consistent factorization") {
    TorusCosets tc;
    tc.build(5);
    CHECK(tc.tab.ncosets == 20);
    CHECK(tc.tab.sub.size() == 24);
    const GenGroup& G = *tc.tab.G;
    for (int i = 0; i < (int)tc.tab.elems.size(); i += 37) {
        int c = tc.tab.coset_of[i];
        int s = tc.tab.spart_of[i];
        Mat22 prod = G.mul(tc.tab.elems[tc.tab.reps[c]], tc.tab.sub[s]);
        CHECK(prod == tc.tab.elems[i]);
    }
}

TEST_CASE("quaternion arithmetic: pi-commutation and associativity") {
    const WittRing& W = WittRing::get(5, 2, 4);
    QuatRing R(W, 1, 4);
    const FqField& F = *W.k;
    std::vector<QuatElem> sample;
    for (int i = 0; i < 8; ++i) {
        sample.push_back(R.one_plus_wpi_teich(F.from_dlog(i)));
        sample.push_back(R.one_plus_p_teich(F.from_dlog(3 * i + 1)));
        sample.push_back(R.teich(F.from_dlog(i + 2)));
    }
    QuatElem w{W.zero(), W.one()};
    for (int i = 0; i < (int)F.q; ++i) {
        QuatElem a{W.teich((FqField::Elem)i), W.zero()};
        QuatElem lhs = R.mul(w, a);
        QuatElem rhs = R.mul(QuatElem{W.frob_iter(W.teich((FqField::Elem)i), 1), W.zero()}, w);
        CHECK(R.eq(lhs, rhs));
    }
    for (const auto& a : sample)
        for (const auto& b : sample)
            for (const auto& c : sample)
                CHECK(R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c))));
    // exhaustive associativity sampling at n = 2 over all 625 elements
    QuatRing R2(W, 1, 2);
    std::vector<QuatElem> all;
    for (int x = 0; x < 5; ++x)
        for (int xi = 0; xi < 5; ++xi)
            for (int y = 0; y < 5; ++y)
                for (int yi = 0; yi < 5; ++yi) {
                    ONElem ex = W.zero(), ey = W.zero();
                    ex.c[0] = x; ex.c[1] = xi;
                    ey.c[0] = y; ey.c[1] = yi;
                    all.push_back(QuatElem{ex, ey});
                }
    CHECK(all.size() == 625);
    for (size_t i = 0; i < all.size(); i += 13)
        for (size_t j = 0; j < all.size(); j += 17)
            for (size_t k = 0; k < all.size(); k += 19)
                CHECK(R2.eq(R2.mul(R2.mul(all[i], all[j]), all[k]),
                            R2.mul(all[i], R2.mul(all[j], all[k]))));
}

TEST_CASE("reduced-norm valuation filtration: 1 + pi^i u lies in U^i minus U^{i+1}") {
    const WittRing& W = WittRing::get(5, 2, 4);
    QuatRing R(W, 1, 6);
    const FqField& F = *W.k;
    for (int i = 1; i < 6; ++i) {
        ONElem t = W.teich(F.gen());
        QuatElem g;
        if (i % 2 == 0) {
            g = QuatElem{W.add(W.one(), W.mul_p(t, i / 2)), W.zero()};
        } else {
            g = QuatElem{W.one(), W.mul_p(t, i / 2)};
        }
        QuatElem gm1{W.sub(g.x, W.one()), g.y};
        CHECK(R.vD(gm1) == i);
    }
}

TEST_CASE("quaternion quotients: orders at small levels") {
    const QuatQuotient& P2 = QuatQuotient::get(5, 1, 2, true);
    CHECK(P2.size() == 25);
    const QuatQuotient& P3 = QuatQuotient::get(5, 1, 3, true);
    CHECK(P3.size() == 125);
    const QuatQuotient& U3 = QuatQuotient::get(5, 1, 3, false);
    CHECK(U3.size() == 625);

    int ide = P3.id(P3.R.one());
    CHECK(P3.conj_torus[ide] == ide);
    std::set<int> img(P3.conj_torus.begin(), P3.conj_torus.end());
    CHECK(img.size() == P3.size());
}

TEST_CASE("quaternion quotient at level 4 and omega filtration") {
    const QuatQuotient& P4 = QuatQuotient::get(5, 1, 4, true);
    CHECK(P4.size() == 3125);  // p^6 / p
    for (const auto& g : P4.gens) {
        int idg = P4.id(g);
        CHECK(P4.omega2[idg] == 1);
    }
    int ide = P4.id(P4.R.one());
    CHECK(P4.omega2[ide] == 4);  // capped = trivial class
}
