#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bloch/bloch.hpp"
#include "bloch/rng.hpp"

using namespace bloch;

namespace {
TowerElement q(long long n, long long d = 1) { return TowerElement(Rat(n, d)); }
}

TEST_CASE("generator normalization") {
    CHECK(RPElement::generator(q(1)).is_zero());
    CHECK_THROWS_AS(RPElement::generator(q(0)), Error);
    RPElement e = RPElement::generator(q(2)) - RPElement::generator(q(2));
    CHECK(e.is_zero());
}

TEST_CASE("five-term relation shape") {
    RPElement s = s_relation(q(2), q(3), Backend::rational);
    CHECK(s.support().size() <= 5);
    CHECK_THROWS_AS(s_relation(q(2), q(2), Backend::rational), Error);
    CHECK_THROWS_AS(s_relation(q(1), q(3), Backend::rational), Error);
    CHECK_THROWS_AS(s_relation(q(2), q(0), Backend::rational), Error);
    // over the tower only the classes <1> and <-1> appear
    RPElement st = s_relation(q(2), q(3), Backend::tower);
    for (const auto& x : st.support())
        for (const auto& [c, n] : st.coefficient(x).terms()) CHECK(c.primes.empty());
}

TEST_CASE("coinvariants of S is R") {
    SplitMix64 rng(21);
    for (int i = 0; i < 20; ++i) {
        Rat a = rng.rational_excluding_01(), b = rng.rational_excluding_01();
        if (a == b) continue;
        CHECK(coinvariants(s_relation(q(1) * TowerElement(a), TowerElement(b), Backend::rational)) ==
              r_relation(TowerElement(a), TowerElement(b)));
    }
    RPElement e = RPElement::generator(q(5), GroupRing::of_class(kClassMinusOne)) -
                  RPElement::generator(q(5));
    CHECK(coinvariants(e).is_zero());
    CHECK(coinvariants(psi1(q(3))) ==
          PElement::generator(q(3)) + PElement::generator(q(1, 3)));
}

TEST_CASE("lambda1 annihilates S_{x,y} in both backends") {
    SplitMix64 rng(22);
    for (int i = 0; i < 25; ++i) {
        Rat a = rng.rational_excluding_01(), b = rng.rational_excluding_01();
        if (a == b) continue;
        CHECK(lambda1(s_relation(TowerElement(a), TowerElement(b), Backend::rational),
                      Backend::rational)
                  .is_zero());
        CHECK(lambda1(s_relation(TowerElement(a), TowerElement(b), Backend::tower), Backend::tower)
                  .is_zero());
    }
    CHECK(lambda1(s_relation(q(5), q(7), Backend::rational), Backend::rational).is_zero());
}

TEST_CASE("lambda1 values and I^2 membership") {
    GroupRing l = lambda1(RPElement::generator(q(2)), Backend::rational);
    CHECK(l == bracket(kClassMinusOne) * bracket(square_class(Rat(2))));
    CHECK(in_aug_ideal_squared(l));
    CHECK_FALSE(l.is_zero());
}

TEST_CASE("lambda1 vanishes identically over the tower") {
    SplitMix64 rng(23);
    for (int i = 0; i < 25; ++i) {
        TowerElement x = rng.nonzero_tower_element(2);
        TowerElement one(Rat(1), x.context());
        if (x == one) continue;
        CHECK(lambda1(RPElement::generator(x), Backend::tower).is_zero());
    }
}

TEST_CASE("lambda2 annihilates R_{x,y}") {
    SplitMix64 rng(24);
    for (int i = 0; i < 20; ++i) {
        Rat a = rng.rational_excluding_01(), b = rng.rational_excluding_01();
        if (a == b) continue;
        PElement rel = r_relation(TowerElement(a), TowerElement(b));
        std::vector<Rat> vals;
        for (const auto& x : rel.support()) {
            vals.push_back(x.rational_value());
            vals.push_back(1 - x.rational_value());
        }
        if (vals.empty()) continue;
        auto basis = MultiplicativeBasis::rational_for(vals);
        CHECK(lambda2(rel, basis).is_zero());
    }
}

TEST_CASE("lambda2 basics") {
    auto basis = MultiplicativeBasis::rational_for({Rat(2), Rat(3), Rat(-1)});
    PElement e = PElement::generator(q(3)) + PElement::generator(q(-2));
    CHECK(lambda2(PElement::generator(q(3)) + PElement::generator(q(-2)), basis) ==
          expand_sym(q(-2), q(3), basis) + expand_sym(q(3), q(-2), basis));
    // [x] + [1-x] dies: (1-x) o x + x o (1-x) = 0
    CHECK(lambda2(PElement::generator(q(3)) + PElement::generator(q(-2)), basis).is_zero());
    // [-1] goes to 2 o (-1)
    CHECK(lambda2(PElement::generator(q(-1)), basis) == expand_sym(q(2), q(-1), basis));
}

TEST_CASE("psi and C constructors") {
    CHECK(psi1(q(1)).is_zero());
    CHECK(psi2(q(1), Backend::rational).is_zero());
    RPElement p = psi1(q(-1));
    CHECK(p == RPElement::generator(q(-1), GroupRing::one() + GroupRing::of_class(kClassMinusOne)));
    // psi_i(1/x) = <-1> psi_i(x) holds exactly in the free module
    SplitMix64 rng(25);
    for (int i = 0; i < 15; ++i) {
        TowerElement x = TowerElement(rng.rational_excluding_01());
        CHECK(psi1(x.inverse()) == psi1(x).translated(kClassMinusOne));
        CHECK(psi2(x.inverse(), Backend::rational) ==
              psi2(x, Backend::rational).translated(kClassMinusOne));
    }
    // image of C in P(F) is [x] + [1-x]
    for (int i = 0; i < 15; ++i) {
        Rat a = rng.rational_excluding_01();
        CHECK(coinvariants(c_element(TowerElement(a), Backend::rational)) ==
              PElement::generator(TowerElement(a)) + PElement::generator(TowerElement(1 - a)));
    }
}

TEST_CASE("Lambda(C(x)) = 0") {
    SplitMix64 rng(26);
    for (int i = 0; i < 10; ++i) {
        Rat a = rng.rational_excluding_01();
        RPElement c = c_element(TowerElement(a), Backend::rational);
        std::vector<Rat> vals;
        for (const auto& x : coinvariants(c).support()) {
            vals.push_back(x.rational_value());
            vals.push_back(1 - x.rational_value());
        }
        auto basis = MultiplicativeBasis::rational_for(vals);
        CHECK(big_lambda(c, basis, Backend::rational).is_zero());
    }
    auto basis = MultiplicativeBasis::rational_for({Rat(2)});
    CHECK_FALSE(big_lambda(RPElement::generator(q(2)), basis, Backend::rational).is_zero());
    CHECK(big_lambda(RPElement(), basis, Backend::rational).is_zero());
}

TEST_CASE("C over the tower at negative argument collapses to two terms") {
    TowerElement x = q(-3);
    RPElement c = c_element(x, Backend::tower);
    RPElement twoterm = RPElement::generator(x) +
                        RPElement::generator(q(4), GroupRing::of_class(kClassMinusOne));
    CHECK(c == twoterm);  // <<1-x>> = 0 since 1-x > 0
}
