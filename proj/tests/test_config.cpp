#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bloch/bloch.hpp"
#include "bloch/config_complex.hpp"
#include "bloch/rng.hpp"

using namespace bloch;

namespace {

TowerElement q(long long n, long long d = 1) { return TowerElement(Rat(n, d)); }
ProjPoint fp(long long n, long long d = 1) { return ProjPoint::finite(q(n, d)); }

SL2Matrix random_sl2(SplitMix64& rng, const TowerContext& ctx = nullptr) {
    SL2Matrix g(TowerElement(Rat(1), ctx), TowerElement(Rat(0), ctx), TowerElement(Rat(0), ctx),
                TowerElement(Rat(1), ctx));
    for (int k = 0; k < 3; ++k) {
        TowerElement v(rng.rational(6), ctx);
        TowerElement zero(Rat(0), ctx), one(Rat(1), ctx);
        g = rng.below(2) ? g * SL2Matrix(one, v, zero, one) : g * SL2Matrix(one, zero, v, one);
    }
    return g;
}

ProjPoint random_point(SplitMix64& rng) {
    if (rng.below(8) == 0) return ProjPoint::infinity();
    return ProjPoint::finite(TowerElement(rng.rational(9)));
}

ConfigTuple random_tuple(SplitMix64& rng, size_t len) {
    while (true) {
        std::vector<ProjPoint> pts;
        for (size_t i = 0; i < len; ++i) pts.push_back(random_point(rng));
        try {
            return ConfigTuple(std::move(pts));
        } catch (const Error&) {
        }
    }
}

}  // namespace

TEST_CASE("moebius action: identity, rotation, composition") {
    SplitMix64 rng(41);
    ProjPoint inf = ProjPoint::infinity();
    CHECK(moebius_apply(SL2Matrix::identity(), fp(7)) == fp(7));
    SL2Matrix omega(q(0), q(-1), q(1), q(0));
    CHECK(moebius_apply(omega, inf) == fp(0));
    CHECK(moebius_apply(omega, fp(0)) == inf);
    for (int i = 0; i < 30; ++i) {
        SL2Matrix g = random_sl2(rng), h = random_sl2(rng);
        ProjPoint p = random_point(rng);
        CHECK(moebius_apply(g, moebius_apply(h, p)) == moebius_apply(g * h, p));
    }
    CHECK(in_T(SL2Matrix(q(2), q(0), q(0), q(1, 2))));
    CHECK_FALSE(in_T(omega));
    CHECK(in_B(SL2Matrix(q(2), q(5), q(0), q(1, 2))));
    CHECK_FALSE(in_B(omega));
    CHECK_THROWS_AS(SL2Matrix(q(1), q(0), q(0), q(2)), Error);
}

TEST_CASE("phi branches") {
    ProjPoint inf = ProjPoint::infinity();
    CHECK(phi(fp(0), inf, fp(1)) == q(1));
    CHECK(phi(inf, fp(1), fp(2)) == q(-1));
    CHECK(phi(fp(0), fp(1), fp(2)) == q(-2));
    CHECK(phi(fp(1), fp(2), inf) == q(-1));
    CHECK_THROWS_AS(phi(fp(1), fp(1), fp(2)), Error);
}

TEST_CASE("canonicalize: worked values, round trip, G-invariance") {
    ProjPoint inf = ProjPoint::infinity();
    auto cf = canonicalize(ConfigTuple({fp(0), inf, fp(1), fp(2)}), Backend::rational);
    CHECK(cf.cls == kClassOne);
    REQUIRE(cf.tuple.size() == 1);
    CHECK(cf.tuple.entries[0] == q(2));

    auto cf2 = canonicalize(ConfigTuple({fp(0), inf, fp(1), fp(2), fp(3)}), Backend::rational);
    CHECK(cf2.cls == kClassOne);
    REQUIRE(cf2.tuple.size() == 2);
    CHECK(cf2.tuple.entries[0] == q(2));
    CHECK(cf2.tuple.entries[1] == q(3));

    SplitMix64 rng(42);
    int done = 0;
    while (done < 50) {
        ConfigTuple t = random_tuple(rng, 3 + rng.below(4));
        SL2Matrix g = random_sl2(rng);
        for (Backend backend : {Backend::rational, Backend::tower}) {
            auto a = canonicalize(t, backend);
            auto b = canonicalize(apply(g, t), backend);
            CHECK(a.cls == b.cls);
            REQUIRE(a.tuple.size() == b.tuple.size());
            for (size_t i = 0; i < a.tuple.size(); ++i)
                CHECK(a.tuple.entries[i] == b.tuple.entries[i]);
        }
        ++done;
    }

    // round trip through the canonical representative
    for (int i = 0; i < 20; ++i) {
        std::vector<TowerElement> es;
        while (es.size() < 2) {
            TowerElement v(rng.rational(9));
            bool dup = v == q(1);
            for (const auto& e : es) dup = dup || e == v;
            if (!dup) es.push_back(v);
        }
        ZTuple z(es);
        auto back = canonicalize(canonical_tuple(z), Backend::rational);
        CHECK(back.cls == kClassOne);
        REQUIRE(back.tuple.size() == z.size());
        for (size_t k = 0; k < z.size(); ++k) CHECK(back.tuple.entries[k] == z.entries[k]);
    }

    CHECK_THROWS_AS(canonicalize(ConfigTuple({fp(0), inf}), Backend::rational), Error);
}

TEST_CASE("boundary: worked face sum and d of d = 0") {
    ProjPoint inf = ProjPoint::infinity();
    TupleChain d = boundary(ConfigTuple({fp(0), inf, fp(1), fp(2)}));
    TupleChain expect;
    expect.add(ConfigTuple({inf, fp(1), fp(2)}), 1);
    expect.add(ConfigTuple({fp(0), fp(1), fp(2)}), -1);
    expect.add(ConfigTuple({fp(0), inf, fp(2)}), 1);
    expect.add(ConfigTuple({fp(0), inf, fp(1)}), -1);
    for (const auto& [t, n] : expect.terms()) d.add(t, -n);
    CHECK(d.is_zero());

    SplitMix64 rng(43);
    for (int i = 0; i < 10; ++i) {
        TupleChain dd = boundary(boundary(random_tuple(rng, 5)));
        CHECK(dd.is_zero());
    }

    TupleChain two = boundary(ConfigTuple({fp(3), fp(7)}));
    CHECK(two.terms().size() == 2);
}

TEST_CASE("pair witness maps any distinct pair to (infinity, 0)") {
    SplitMix64 rng(44);
    ProjPoint inf = ProjPoint::infinity();
    CHECK(in_T(pair_witness(inf, fp(0))));
    for (int i = 0; i < 30; ++i) {
        ProjPoint p0 = random_point(rng), p1 = random_point(rng);
        if (p0 == p1) continue;
        SL2Matrix g = pair_witness(p0, p1);
        CHECK(moebius_apply(g, p0) == inf);
        CHECK(moebius_apply(g, p1) == fp(0));
    }
    CHECK_THROWS_AS(pair_witness(fp(2), fp(2)), Error);
}

TEST_CASE("triple witness exists exactly when the scaling is a square") {
    ProjPoint inf = ProjPoint::infinity();
    // (0, infinity, -1) needs sqrt(-1): no SL2 witness in either backend
    CHECK_FALSE(triple_witness(fp(0), inf, fp(-1), Backend::rational).has_value());
    CHECK_FALSE(triple_witness(fp(0), inf, fp(-1), Backend::tower).has_value());
    // (0, infinity, 2) needs sqrt(1/2): no witness over the rationals only
    CHECK_FALSE(triple_witness(fp(0), inf, fp(2), Backend::rational).has_value());
    CHECK(triple_witness(fp(0), inf, fp(2), Backend::tower).has_value());

    auto g = triple_witness(fp(0), inf, fp(4), Backend::rational);
    REQUIRE(g.has_value());
    CHECK(moebius_apply(*g, fp(0)) == fp(0));
    CHECK(moebius_apply(*g, inf) == inf);
    CHECK(moebius_apply(*g, fp(4)) == fp(1));

    // over the tower every positive scaling is a square
    auto h = triple_witness(fp(2), fp(5), fp(3), Backend::tower);
    REQUIRE(h.has_value());
    CHECK(moebius_apply(*h, fp(2)) == fp(0));
    CHECK(moebius_apply(*h, fp(5)) == inf);
    CHECK(moebius_apply(*h, fp(3)) == fp(1));
}

TEST_CASE("induced differential: worked value and agreement with lambda1") {
    RFModuleElement z2 = RFModuleElement::term(ZTuple({q(2)}));
    RFModuleElement d = induced_d1(z2, Backend::rational);
    GroupRing expect = GroupRing::of_class(kClassMinusOne) -
                       GroupRing::of_class(square_class(Rat(-2))) +
                       GroupRing::of_class(square_class(Rat(2))) - GroupRing::one();
    CHECK(d.scalar() == expect);
    CHECK(d.scalar() == lambda1(RPElement::generator(q(2)), Backend::rational)
                            .scaled(Int(kInducedD1Sign)));

    // over the tower all four classes collapse into <1>, <-1> and cancel
    CHECK(induced_d1(z2, Backend::tower).is_zero());

    SplitMix64 rng(45);
    for (int i = 0; i < 100; ++i) {
        Rat v = rng.rational_excluding_01();
        GroupRing got = induced_d1(RFModuleElement::term(ZTuple({q(1) * TowerElement(v)})),
                                   Backend::rational)
                            .scalar();
        CHECK(got == lambda1(RPElement::generator(TowerElement(v)), Backend::rational)
                         .scaled(Int(kInducedD1Sign)));
    }
}

TEST_CASE("induced differential squares to zero") {
    SplitMix64 rng(46);
    int done = 0;
    while (done < 15) {
        Rat a = rng.rational_excluding_01(), b = rng.rational_excluding_01();
        if (a == b) continue;
        RFModuleElement e = RFModuleElement::term(ZTuple({TowerElement(a), TowerElement(b)}));
        CHECK(induced_d1(induced_d1(e, Backend::rational), Backend::rational).is_zero());
        ++done;
    }
}
