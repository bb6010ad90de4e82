#include "doctest.h"
#include "properad/coefficients.hpp"
#include "properad/conv.hpp"
#include "test_util.hpp"

using namespace properad;

namespace {

const auto mod_ptr = testutil::engine_module();
const GradedModule& M = *mod_ptr;

MultiMap<Rational> engine_d() {
    MultiMap<Rational> d(&M, 1, 1, -1);
    d.add_term({2}, {0}, 1);  // d c = a
    d.add_term({1}, {3}, 1);  // d b = w
    return d;
}

ConvElement<Rational> unit_element(int W) {
    ConvElement<Rational> one(&M, W, 0);
    one.set_unit(true);
    return one;
}

ConvElement<Rational> bracket(const ConvElement<Rational>& x, const ConvElement<Rational>& y) {
    ConvElement<Rational> out = star(x, y);
    ConvElement<Rational> yx = star(y, x);
    int sign = (x.degree() * y.degree()) % 2 == 0 ? -1 : 1;
    yx.scale(Rational(sign));
    out += yx;
    return out;
}

}  // namespace

TEST_CASE("star unit laws") {
    std::mt19937_64 rng(5);
    auto one = unit_element(5);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = testutil::random_element(M, 5, -1, 3, rng);
        CHECK(star(one, f) == f);
        CHECK(star(f, one) == f);
    }
    CHECK(star(one, one) == one);
}

TEST_CASE("star lands on the composition arity and genus") {
    std::mt19937_64 rng(9);
    auto f = testutil::random_map(M, 2, 2, -1, rng);   // key (2,2,1)
    auto g = testutil::random_map(M, 3, 1, -1, rng);   // key (1,3,0)
    REQUIRE_FALSE(f.is_zero());
    REQUIRE_FALSE(g.is_zero());
    ConvElement<Rational> x(&M, 8, -1), y(&M, 8, -1);
    x.add_component(2, 2, 1, f);
    y.add_component(1, 3, 0, g);
    // y above x: edges 1..min(m_y=1, n_x=2) = 1
    auto prod = star(x, y);
    for (const auto& [k, mm] : prod.components()) {
        CHECK(k.m == 2 + 1 - 1);
        CHECK(k.n == 2 + 3 - 1);
        CHECK(k.g == 1 + 0 + 1 - 1);
        CHECK(key_weight(k) == key_weight({2, 2, 1}) + key_weight({1, 3, 0}));
    }
}

TEST_CASE("trivial-arity components are star-inert") {
    std::mt19937_64 rng(13);
    MultiMap<Rational> dmap = engine_d();
    ConvElement<Rational> delta(&M, 5, -1);
    delta.add_component(1, 1, 0, dmap);
    CHECK(star(delta, delta).is_zero());
    auto f = testutil::random_element(M, 5, -1, 3, rng);
    CHECK(star(delta, f).is_zero());
    CHECK(star(f, delta).is_zero());
}

TEST_CASE("bracket of an odd element against itself") {
    std::mt19937_64 rng(17);
    auto a = testutil::random_element(M, 5, -1, 3, rng);
    auto lhs = bracket(a, a);
    auto rhs = star(a, a);
    rhs.scale(Rational(2));
    CHECK(lhs == rhs);
}

TEST_CASE("differential is square-zero and kills the unit") {
    std::mt19937_64 rng(21);
    auto d = engine_d();
    REQUIRE(compose_full(d, d).is_zero());
    CHECK(differential(unit_element(5), d).is_zero());
    for (int deg : {-1, 0, 1}) {
        auto f = testutil::random_element(M, 5, deg, 4, rng);
        auto df = differential(f, d);
        auto ddf = differential(df, d);
        CHECK(ddf.is_zero());
        for (const auto& [k, mm] : df.components())
            CHECK(f.components().count(k) == 1);  // stays in the same keys
    }
}

TEST_CASE("differential is a derivation of star") {
    std::mt19937_64 rng(25);
    auto d = engine_d();
    for (int trial = 0; trial < 6; ++trial) {
        int deg_f = static_cast<int>(rng() % 3) - 1;
        int deg_g = static_cast<int>(rng() % 3) - 1;
        auto f = testutil::random_element(M, 5, deg_f, 3, rng);
        auto g = testutil::random_element(M, 5, deg_g, 3, rng);
        auto lhs = differential(star(f, g), d);
        auto rhs = star(differential(f, d), g);
        auto fg = star(f, differential(g, d));
        fg.scale(Rational(deg_f % 2 == 0 ? 1 : -1));
        rhs += fg;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("graded Jacobi identity for the skew bracket") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        int dx = static_cast<int>(rng() % 3) - 1;
        int dy = static_cast<int>(rng() % 3) - 1;
        int dz = static_cast<int>(rng() % 3) - 1;
        auto x = testutil::random_element(M, 5, dx, 2, rng);
        auto y = testutil::random_element(M, 5, dy, 2, rng);
        auto z = testutil::random_element(M, 5, dz, 2, rng);
        auto t1 = bracket(x, bracket(y, z));
        t1.scale(Rational((dx * dz) % 2 == 0 ? 1 : -1));
        auto t2 = bracket(y, bracket(z, x));
        t2.scale(Rational((dy * dx) % 2 == 0 ? 1 : -1));
        auto t3 = bracket(z, bracket(x, y));
        t3.scale(Rational((dz * dy) % 2 == 0 ? 1 : -1));
        t1 += t2;
        t1 += t3;
        CHECK(t1.is_zero());
    }
}

TEST_CASE("level actions degenerate to the identity on the unit") {
    std::mt19937_64 rng(33);
    auto one = unit_element(5);
    for (int deg : {-1, 0}) {
        auto y = testutil::random_element(M, 5, deg, 4, rng);
        CHECK(level_below(one, y) == y);
        CHECK(level_above(y, one) == y);
    }
}

TEST_CASE("single-vertex levels match star against the gauge part") {
    std::mt19937_64 rng(37);
    // X = 1 + x with one component; the one-vertex terms of X |> y equal
    // star(x-part, y) up to the all-identity level, when only one vertex fits
    auto x_map = testutil::random_map(M, 2, 1, 0, rng);
    REQUIRE_FALSE(x_map.is_zero());
    ConvElement<Rational> x(&M, 6, 0);
    x.add_component(1, 2, 0, x_map);
    ConvElement<Rational> gauge = x;
    gauge.set_unit(true);
    auto y_map = testutil::random_map(M, 2, 1, -1, rng);
    REQUIRE_FALSE(y_map.is_zero());
    ConvElement<Rational> y(&M, 6, -1);
    y.add_component(1, 2, 0, y_map);  // one output: level has at most one vertex
    auto lhs = level_below(gauge, y) - y;
    auto rhs = star(x, y);
    CHECK(lhs == rhs);
    auto lhs_up = level_above(y, gauge) - y;
    // y has two inputs; levels with a single non-identity vertex taking one
    // edge match star(y, x); the e = 2 vertex uses both
    ConvElement<Rational> two_edge(&M, 6, -1);
    for (int e = 2; e <= 2; ++e) {
        auto comp = compose_subset(x_map, {0}, y_map, {0, 1});
        // x's single output cannot fill both inputs; nothing to add
        (void)comp;
    }
    auto rhs_up = star(y, x);
    CHECK(lhs_up == rhs_up);
}

TEST_CASE("level multiplicities reproduce the grafting counts") {
    // one-dimensional even module; every map has value 1, so component values
    // count graftings with identity fill, which is exactly T
    auto one_mod = std::make_shared<GradedModule>(std::vector<std::string>{"u"},
                                                  std::vector<int>{0});
    const GradedModule& U = *one_mod;
    const int W = 6;
    ConvElement<Rational> X(&U, W, 0);
    X.set_unit(true);
    for (int w = 1; w <= W; ++w) {
        int total = w + 2;
        for (int m = 1; m <= total - 1; ++m)
            for (int g = 0; m + 2 * g <= total - 1; ++g) {
                int n = total - m - 2 * g;
                if (n < 1) continue;
                MultiMap<Rational> mm(&U, n, m, 0);
                mm.add_term(Word(static_cast<size_t>(n), 0), Word(static_cast<size_t>(m), 0), 1);
                X.add_component(m, n, g, mm);
            }
    }
    TCache tc;
    for (int p = 1; p <= 3; ++p) {
        ConvElement<Rational> y(&U, W, 0);
        MultiMap<Rational> ym(&U, 0, p, 0);
        ym.add_term(Word{}, Word(static_cast<size_t>(p), 0), 1);
        y.add_component(p, 0, 0, ym);
        auto acted = level_below(X, y);
        for (const auto& [k, mm] : acted.components()) {
            const Integer& expected = tc.get(k.m, k.n, k.g, p);
            auto row = mm.apply(Word(static_cast<size_t>(k.n), 0));
            REQUIRE(row.size() == 1);
            CHECK(row.begin()->second == Rational(expected));
        }
        // and every nonzero T within the truncation shows up
        for (int m = 1; m <= 3; ++m)
            for (int i = 0; i <= 2; ++i)
                for (int g = 0; g <= 2; ++g) {
                    if (key_weight({m, i, g}) > W || (m == p && i == 0 && g == 0)) continue;
                    const Integer& expected = tc.get(m, i, g, p);
                    if (expected == 0) continue;
                    const auto* comp = acted.component(m, i, g);
                    REQUIRE(comp != nullptr);
                    auto row = comp->apply(Word(static_cast<size_t>(i), 0));
                    REQUIRE(row.size() == 1);
                    CHECK(row.begin()->second == Rational(expected));
                }
    }
}

TEST_CASE("weight additivity of level actions") {
    std::mt19937_64 rng(41);
    auto x_map = testutil::random_map(M, 2, 2, 0, rng);
    REQUIRE_FALSE(x_map.is_zero());
    ConvElement<Rational> gauge(&M, 8, 0);
    gauge.add_component(2, 2, 0, x_map);  // weight 2
    gauge.set_unit(true);
    auto y_map = testutil::random_map(M, 2, 2, -1, rng);
    REQUIRE_FALSE(y_map.is_zero());
    ConvElement<Rational> y(&M, 8, -1);
    y.add_component(2, 2, 0, y_map);  // weight 2
    for (const auto& [k, mm] : level_below(gauge, y).components())
        CHECK((key_weight(k) - 2) % 2 == 0);  // 2 + 2k' for k' level vertices
}

TEST_CASE("mc_residual basics") {
    auto d = engine_d();
    ConvElement<Rational> zero(&M, 5, -1);
    CHECK(mc_residual(zero, d).is_zero());
    ConvElement<Rational> delta(&M, 5, -1);
    delta.add_component(1, 1, 0, d);
    CHECK(mc_residual(delta, d).is_zero());
}

TEST_CASE("isotopy residual vanishes for the identity isotopy") {
    std::mt19937_64 rng(45);
    auto d = engine_d();
    auto alpha = testutil::random_element(M, 5, -1, 3, rng);
    ConvElement<Rational> f(&M, 5, 0);
    CHECK(check_infinity_isotopy(alpha, alpha, f, d).is_zero());
}
