#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bloch/expr.hpp"
#include "bloch/json_io.hpp"
#include "bloch/rng.hpp"

using namespace bloch;
using nlohmann::json;

TEST_CASE("infix expressions evaluate exactly") {
    CHECK(eval_expression("1/3 + 1/6").rational_value() == Rat(1, 2));
    CHECK(eval_expression("2 * (3 - 5)").rational_value() == Rat(-4));
    CHECK(eval_expression("-7/2").rational_value() == Rat(-7, 2));
    CHECK(eval_expression("inv(neg(4))").rational_value() == Rat(-1, 4));
    CHECK(eval_expression("add(1, 2, 3) * mul(2, 2)").rational_value() == Rat(24));
    // sqrt(2)^2 = 2 even though sqrt(2) is irrational
    CHECK(eval_expression("sqrt(2) * sqrt(2)").rational_value() == Rat(2));
    CHECK(eval_expression("(sqrt(2) + sqrt(3)) * (sqrt(3) - sqrt(2))").rational_value() == Rat(1));
    CHECK(eval_expression("sqrt(sqrt(16))").rational_value() == Rat(2));
    CHECK_FALSE(eval_expression("1 + sqrt(5)").is_rational());
}

TEST_CASE("expression errors carry positions") {
    CHECK_THROWS_AS(eval_expression("1 +"), ParseError);
    CHECK_THROWS_AS(eval_expression("2 ** 3"), ParseError);
    CHECK_THROWS_AS(eval_expression("sqrt(-1)"), ParseError);
    CHECK_THROWS_AS(eval_expression("1/0"), ParseError);
    CHECK_THROWS_AS(eval_expression("foo(2)"), ParseError);
    CHECK_THROWS_AS(eval_expression("1 2"), ParseError);
    try {
        eval_expression("1 + $");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("field elements round-trip through json") {
    SplitMix64 rng(21);
    for (int i = 0; i < 20; ++i) {
        TowerElement x = rng.nonzero_tower_element(int(rng.below(3)));
        TowerElement back = field_from_json(field_to_json(x));
        CHECK(back == x);
        // interning makes the rebuilt context literally the same node
        CHECK(back.context() == x.demote().context());
    }
    CHECK(field_from_json(json("22/7")).rational_value() == Rat(22, 7));
}

TEST_CASE("json expression trees evaluate") {
    json j = {{"op", "mul"}, {"args", {{{"op", "sqrt"}, {"args", {"8"}}}, {{"op", "sqrt"}, {"args", {"2"}}}}}};
    CHECK(field_from_json(j).rational_value() == Rat(4));
    json bad = {{"op", "sqrt"}, {"args", {"-3"}}};
    CHECK_THROWS_AS(field_from_json(bad), Error);
}

TEST_CASE("group ring and module elements round-trip through json") {
    GroupRing r = bracket(square_class(Rat(-6))) * bracket(square_class(Rat(10))) + GroupRing(Int(3));
    CHECK(group_ring_from_json(group_ring_to_json(r)) == r);

    SplitMix64 rng(22);
    for (int i = 0; i < 10; ++i) {
        Rat a = rng.rational_excluding_01(), b = rng.rational_excluding_01();
        if (a == b) continue;
        RPElement e = s_relation(TowerElement(a), TowerElement(b), Backend::rational);
        if (rng.below(2)) {
            TowerElement x = rng.nonzero_tower_element(1, 6);
            TowerElement y = rng.element_in(x.context(), 6);
            if (!y.is_zero() && x != TowerElement(Rat(1), x.context()) &&
                y != TowerElement(Rat(1), y.context()) && x != y)
                e += s_relation(x, y, Backend::tower);
        }
        CHECK(rp_from_json(rp_to_json(e)) == e);
    }
}
