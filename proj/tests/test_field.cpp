#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bloch/field.hpp"

using namespace bloch;

namespace {

TowerElement q(long long n, long long d = 1) { return TowerElement(Rat(n, d)); }

}  // namespace

TEST_CASE("rational arithmetic at depth zero") {
    CHECK((q(2, 3) + q(1, 6)).rational_value() == Rat(5, 6));
    CHECK((q(2, 3) * q(3, 4)).rational_value() == Rat(1, 2));
    CHECK((q(7).inverse()).rational_value() == Rat(1, 7));
    CHECK((-q(5)).rational_value() == Rat(-5));
    CHECK_THROWS_AS(q(0).inverse(), DivisionByZero);
}

TEST_CASE("sqrt of two squares to two") {
    auto [s2, ctx] = sqrt_positive(q(2));
    CHECK(context_depth(ctx) == 1);
    CHECK((s2 * s2).promote_to(ctx) == TowerElement(Rat(2), ctx));
    CHECK((s2 * s2).demote().rational_value() == Rat(2));
}

TEST_CASE("sqrt_positive leaves context alone on perfect squares") {
    auto [two, ctx] = sqrt_positive(q(4));
    CHECK(ctx == nullptr);
    CHECK(two.rational_value() == Rat(2));
}

TEST_CASE("(sqrt2 + sqrt3)^2 = 5 + 2 sqrt6") {
    auto [s2, c1] = sqrt_positive(q(2));
    auto [s3, c2] = sqrt_positive(TowerElement(Rat(3), c1));
    TowerElement sum = s2.promote_to(c2) + s3;
    TowerElement sq = sum * sum;
    auto [s6, c3] = sqrt_positive(TowerElement(Rat(6), c2));
    TowerElement expect = TowerElement(Rat(5), c3) + TowerElement(Rat(2), c3) * s6;
    CHECK(sq.promote_to(c3) == expect);
}

TEST_CASE("sign via exact zero test and interval refinement") {
    auto [s2, c1] = sqrt_positive(q(2));
    auto [s3, c2] = sqrt_positive(TowerElement(Rat(3), c1));
    TowerElement sum = s2.promote_to(c2) + s3;
    auto [root, c3] = sqrt_positive(sum * sum);
    CHECK(c3 == c2);  // 5 + 2 sqrt6 is already a square here
    CHECK(sign(sum - root) == Sign::zero);
    CHECK(sign(s2.promote_to(c2) - s3) == Sign::negative);
    CHECK(sign(s2 - TowerElement(Rat(1), c1)) == Sign::positive);
    CHECK(sign(q(-1)) == Sign::negative);
}

TEST_CASE("recursive square detection inside a tower") {
    auto [s2, c1] = sqrt_positive(q(2));
    auto [s3, c2] = sqrt_positive(TowerElement(Rat(3), c1));
    TowerElement x = TowerElement(Rat(5), c2) +
                     TowerElement(Rat(2), c2) * s2.promote_to(c2) * s3;
    auto r = sqrt_in_tower(x);
    REQUIRE(r.has_value());
    CHECK(*r * *r == x);
    CHECK((is_positive(*r) ? *r : -*r) == s2.promote_to(c2) + s3);
    CHECK_FALSE(sqrt_in_tower(TowerElement(Rat(7), c2)).has_value());
}

TEST_CASE("radicand normalization avoids square factors") {
    auto [r8, ctx] = sqrt_positive(q(8));
    REQUIRE(context_depth(ctx) == 1);
    auto chain = ctx->radicand;
    CHECK(chain->rational_value() == Rat(2));  // adjoined sqrt2, not sqrt8
    CHECK((r8 * r8).demote().rational_value() == Rat(8));
    auto [rq, ctx2] = sqrt_positive(q(9, 2));
    CHECK(ctx2->radicand->rational_value() == Rat(2));
    CHECK((rq * rq).demote().rational_value() == Rat(9, 2));
}

TEST_CASE("interval enclosure brackets the value") {
    auto [s2, c1] = sqrt_positive(q(2));
    auto [lo, hi] = interval_enclosure(s2, 64);
    CHECK(lo < hi);
    CHECK(lo * lo < Rat(2));
    CHECK(hi * hi > Rat(2));
    CHECK(hi - lo < Rat(1, Int(1) << 32));
}

TEST_CASE("context mismatch is an error") {
    auto [a, c1] = sqrt_positive(q(2));
    auto [b, c2] = sqrt_positive(q(3));
    CHECK_THROWS_AS(a + b, ContextMismatch);
}

TEST_CASE("depth cap") {
    TowerElement x = q(2);
    TowerContext ctx;
    for (int i = 0; i < 3; ++i) {
        auto r = sqrt_positive(x, 3);
        x = r.root + TowerElement(Rat(1), r.context);
        ctx = r.context;
    }
    CHECK(context_depth(ctx) == 3);
    CHECK_THROWS_AS(sqrt_positive(x + TowerElement(Rat(1), ctx), 3), Error);
}

TEST_CASE("sqrt_positive rejects non-positive input") {
    CHECK_THROWS_AS(sqrt_positive(q(-2)), Error);
    CHECK_THROWS_AS(sqrt_positive(q(0)), Error);
}
