#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetchar/hasse.hpp"

using namespace jetchar;

namespace {
const FieldConfig kField = FieldConfig::rational();

DiffPoly x(int gen = 0, int order = 0) { return DiffPoly::var(JetVar{Side::Single, gen, order}); }
}  // namespace

TEST_CASE("prolongIdeal shapes") {
    // V(x), n=2 -> {x, x', x''}
    AffineScheme s;
    s.vars = {"x"};
    s.relations = {x()};
    JetIdeal ideal = prolong_ideal(s, 2, kField);
    CHECK(ideal.count() == 3);
    CHECK(ideal.gens[0][0] == x());
    CHECK(ideal.gens[0][1] == x(0, 1));
    CHECK(ideal.gens[0][2] == x(0, 2));

    AffineScheme empty;
    empty.vars = {"x"};
    CHECK(prolong_ideal(empty, 3, kField).count() == 0);
}

TEST_CASE("prolonged Legendre level-1 generator") {
    AffineScheme s = legendre_scheme(RatFunc::t());
    JetIdeal ideal = prolong_ideal(s, 1, kField);
    REQUIRE(ideal.gens.size() == 1);
    // del(y^2 - x(x-1)(x-t)) = 2 y y' - [ d/d-jets of the cubic ]; the
    // constant contribution x(x-1) enters through del(t) = 1.
    DiffPoly y = x(1, 0), dy = x(1, 1), X = x(0, 0), dX = x(0, 1);
    DiffPoly one = DiffPoly::constant(RatFunc(1));
    DiffPoly T = DiffPoly::constant(RatFunc::t());
    DiffPoly expect = y * dy.scaled(RatFunc(2)) - dX * (X - one) * (X - T) -
                      X * dX * (X - T) - X * (X - one) * (dX - one);
    CHECK(ideal.gens[0][1] == expect);
}

TEST_CASE("prolongation sequence compatibility") {
    AffineScheme s = legendre_scheme(RatFunc::t());
    JetIdeal a = prolong_ideal(s, 2, kField);
    JetIdeal b = prolong_ideal(s, 3, kField);
    for (size_t k = 0; k < a.gens.size(); ++k)
        for (size_t i = 0; i < a.gens[k].size(); ++i) CHECK(a.gens[k][i] == b.gens[k][i]);
}

TEST_CASE("expDel examples and homomorphism") {
    TruncatedElement e = exp_del(RatFunc::t(), 2, kField);
    CHECK(e.coeffs[0] == RatFunc::t());
    CHECK(e.coeffs[1] == RatFunc(1));
    CHECK(e.coeffs[2].is_zero());

    TruncatedElement e2 = exp_del(RatFunc::t() * RatFunc::t(), 2, kField);
    CHECK(e2.coeffs[0] == RatFunc::t() * RatFunc::t());
    CHECK(e2.coeffs[1] == RatFunc(2) * RatFunc::t());
    CHECK(e2.coeffs[2] == RatFunc(1));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int i = 0; i < 50; ++i) {
        RatFunc r = RatFunc(c(rng)) + RatFunc(c(rng)) * RatFunc::t();
        RatFunc s = RatFunc(c(rng)) + RatFunc(c(rng)) * RatFunc::t();
        if (c(rng) % 2 == 0 && !s.is_zero()) r = r / s;
        CHECK(exp_del(r * s, 3, kField) == exp_del(r, 3, kField) * exp_del(s, 3, kField));
        CHECK(exp_del(r + s, 3, kField) == exp_del(r, 3, kField) + exp_del(s, 3, kField));
    }
}

TEST_CASE("expDel T-compatibility") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int i = 0; i < 50; ++i) {
        RatFunc r = RatFunc(c(rng)) + RatFunc(c(rng)) * RatFunc::t();
        CHECK(exp_del(r, 3, kField).project() == exp_del(r, 2, kField));
    }
}

TEST_CASE("evalTruncated examples") {
    // f = x: identity on the point.
    TruncatedElement pt(1);
    pt.coeffs = {RatFunc(1), RatFunc()};
    std::map<int, TruncatedElement> point{{0, pt}};
    CHECK(eval_truncated(x(), point, 1, kField) == pt);

    // f = t*x at x -> (1, 0): t acts through exp_del(t) = t + eps.
    DiffPoly f = x().scaled(RatFunc::t());
    TruncatedElement got = eval_truncated(f, point, 1, kField);
    CHECK(got.coeffs[0] == RatFunc::t());
    CHECK(got.coeffs[1] == RatFunc(1));
}

TEST_CASE("evalTruncated on a solved square-root jet") {
    // f = x^2 - t: jet of x = sqrt at the level of D_1 requires 2 x0 x1 = 1.
    DiffPoly f = x() * x() - DiffPoly::constant(RatFunc::t());
    // Choose the K-point x0 = t (so x0^2 = t fails)... instead use base t0 where
    // x0^2 = t has the solution branch x0 = t over K only formally; test the
    // triangular identity directly: x = (t+1)/2 does not satisfy it, so pick the
    // pair (x0, b1) with x0^2 = t impossible over Q(t); use scheme x^2 - (t+1)^2.
    DiffPoly g = x() * x() - DiffPoly::constant((RatFunc::t() + RatFunc(1)).pow(2));
    RatFunc x0 = RatFunc::t() + RatFunc(1);
    // b1 solves 2 x0 b1 + del(x0^2 - (t+1)^2)-part = 0 through exp_del twisting:
    // eval(g) coefficient of eps must vanish for b1 = derivative of x0.
    TruncatedElement pt(1);
    pt.coeffs = {x0, RatFunc(1)};  // (t+1, d/dt(t+1))
    std::map<int, TruncatedElement> point{{0, pt}};
    CHECK(eval_truncated(g, point, 1, kField).is_zero());
    (void)f;
}

TEST_CASE("jet oracle on V(x)") {
    AffineScheme s;
    s.vars = {"x"};
    s.relations = {x()};
    std::map<uint32_t, RatFunc> values;
    for (int i = 0; i <= 2; ++i) values[pack_var(Side::Single, 0, i)] = RatFunc();
    CHECK(jet_point_oracle(s, 2, values, kField));
    values[pack_var(Side::Single, 0, 1)] = RatFunc(1);
    CHECK_FALSE(jet_point_oracle(s, 2, values, kField));
}

TEST_CASE("Legendre jets: valid and perturbed agree on both routes") {
    AffineScheme s = legendre_scheme(RatFunc::t());
    std::mt19937_64 rng(77);
    int built = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto& base = s.base_points[trial % s.base_points.size()];
        for (int n = 1; n <= 3; ++n) {
            auto jet = sample_valid_jet(s, base, n, rng, kField);
            if (!jet) continue;
            ++built;
            OracleVerdict v{};
            CHECK(jet_point_oracle(s, n, jet->values, kField, &v));
            CHECK(v.prolonged_ok);
            CHECK(v.truncated_ok);
            JetSample bad = perturb_jet(s, *jet, n, rng, kField);
            CHECK_FALSE(jet_point_oracle(s, n, bad.values, kField));
        }
    }
    CHECK(built >= 40);
}

TEST_CASE("x = t base point pins del x = 1 on the Legendre curve") {
    AffineScheme s = legendre_scheme(RatFunc::t());
    std::mt19937_64 rng(1);
    auto jet = sample_valid_jet(s, s.base_points[2], 1, rng, kField);
    REQUIRE(jet.has_value());
    CHECK(jet->values.at(pack_var(Side::Single, 0, 1)) == RatFunc(1));
}
