#include <doctest.h>

#include "tamelat/cyclo.hpp"
#include "tamelat/fq.hpp"
#include "tamelat/witt.hpp"

using namespace tamelat;

TEST_CASE("F_25 generator is primitive and Frobenius is an involution") {
    const FqField& F = FqField::get(5, 2);
    CHECK(F.q == 25);
    auto g = F.gen();
    // order 24
    int ord = 1;
    auto acc = g;
    while (acc != F.one()) { acc = F.mul(acc, g); ++ord; }
    CHECK(ord == 24);
    for (int a = 0; a < F.q; ++a) CHECK(F.frob(F.frob((FqField::Elem)a)) == (FqField::Elem)a);
    // F_5 inside F_25 via from_int agrees with the prime subfield
    auto sub = F.subfield(1);
    CHECK(sub.size() == 5);
}

TEST_CASE("Teichmueller lift: zero, one, and 2 in F_5 at N=2") {
    const WittRing& W = WittRing::get(5, 2, 2);
    CHECK(W.is_zero(W.teich(0)));
    CHECK(W.teich(W.k->one()) == W.one());
    // teich(2): lies in Z/25 (constant digit) and equals 7 (2 -> 32 = 7, 7^5 = 7 mod 25)
    auto t2 = W.teich(W.k->from_int(2));
    CHECK(t2.c[1] == 0);
    CHECK(t2.c[0] == 7);
}

TEST_CASE("Teichmueller multiplicativity, exhaustive p=5 f=1 over F_25, N up to 8") {
    for (int N : {3, 6, 8}) {
        const WittRing& W = WittRing::get(5, 2, N);
        const FqField& F = *W.k;
        for (int a = 0; a < F.q; ++a)
            for (int b = 0; b < F.q; ++b) {
                auto lhs = W.teich(F.mul((FqField::Elem)a, (FqField::Elem)b));
                auto rhs = W.mul(W.teich((FqField::Elem)a), W.teich((FqField::Elem)b));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("Frobenius compatibility: teich(x^p) = frob(teich(x))") {
    for (auto [p, f] : {std::pair{5, 1}, {5, 2}, {7, 1}}) {
        const WittRing& W = WittRing::get(p, 2 * f, 4);
        const FqField& F = *W.k;
        for (int a = 0; a < F.q; ++a) {
            CHECK(W.teich(F.frob((FqField::Elem)a)) == W.frob(W.teich((FqField::Elem)a)));
        }
    }
}

TEST_CASE("Witt ring basics: valuations, units, exact division") {
    const WittRing& W = WittRing::get(5, 2, 6);
    auto x = W.from_int(50);  // 2 * 25
    CHECK(W.val(x) == 2);
    auto u = W.add(W.teich(W.k->gen()), W.from_int(5));
    CHECK(W.val(u) == 0);
    CHECK(W.mul(u, W.inv(u)) == W.one());
    CHECK(W.div_p(x, 2) == W.from_int(2));
    CHECK_THROWS(W.div_p(W.from_int(5), 2));
}

TEST_CASE("cyclotomic polynomial and exact arithmetic in Q(zeta_24)") {
    const CycloField& C = CycloField::get(24);
    CHECK(C.phi == 8);
    // zeta^24 = 1, zeta^12 = -1
    CHECK(C.is_zero(C.sub(C.zeta_pow(24), C.one())));
    CHECK(C.is_zero(C.add(C.zeta_pow(12), C.one())));
    // field inverse
    auto a = C.add(C.zeta_pow(5), C.from_q(mpq_class(3, 7)));
    CHECK(C.is_zero(C.sub(C.mul(a, C.inv(a)), C.one())));
}

TEST_CASE("cyclo_reduce: defining normalization and integrality errors") {
    const CycloField& C = CycloField::get(24);
    const WittRing& W = WittRing::get(5, 2, 6);
    // 1 -> 1
    CHECK(C.reduce(C.one(), W) == W.one());
    // zeta_24 -> Teichmueller lift of the fixed generator
    CHECK(C.reduce(C.zeta_pow(1), W) == W.teich(W.k->gen()));
    // reduction at N=1 gives the generator itself
    const WittRing& W1 = WittRing::get(5, 2, 1);
    auto r = C.reduce(C.zeta_pow(1), W1);
    CHECK(W1.reduce(r) == W1.k->gen());
    // 1/|Gamma| for p=5: v_5(480) = 1, deficit 1
    bool threw = false;
    try {
        C.reduce(C.from_q(mpq_class(1, 480)), W);
    } catch (const CycloReduceError& e) {
        threw = true;
        CHECK(e.deficit == 1);
    }
    CHECK(threw);
}

TEST_CASE("cyclo_reduce is a ring homomorphism on p-integral elements") {
    const CycloField& C = CycloField::get(24);
    const WittRing& W = WittRing::get(5, 2, 6);
    // deterministic pseudo-random sample
    auto mk = [&](int seed) {
        CycElem e = C.zero();
        unsigned s = (unsigned)seed;
        for (int i = 0; i < C.phi; ++i) {
            s = s * 1103515245u + 12345u;
            e.c[i] = mpq_class((int)(s % 41) - 20, 1 + (int)(s % 3) * 0 + ((s >> 8) % 7 == 0 ? 3 : 1));
        }
        return e;
    };
    for (int t = 0; t < 12; ++t) {
        auto a = mk(2 * t + 1), b = mk(2 * t + 2);
        CHECK(C.reduce(C.mul(a, b), W) == W.mul(C.reduce(a, W), C.reduce(b, W)));
        CHECK(C.reduce(C.add(a, b), W) == W.add(C.reduce(a, W), C.reduce(b, W)));
    }
}

TEST_CASE("char evaluation: alpha at t=2 for p=5 is trivial") {
    // alpha = xi^{p-1}; value at t in F_p^x is teich(t)^{p-1}
    const WittRing& W = WittRing::get(5, 2, 2);
    const FqField& F = *W.k;
    auto t = F.from_int(2);
    auto v = W.pow(W.teich(t), 4);
    CHECK(v == W.one());  // 7^4 = 2401 = 1 mod 25
}
