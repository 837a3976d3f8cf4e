#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetchar/linalg.hpp"

using namespace jetchar;

namespace {

RatFunc random_ratfunc(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> deg(0, 2);
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c) x = Rational(coeff(rng));
    UniPoly num = UniPoly::from_coeffs(c);
    std::vector<Rational> d(deg(rng) + 1);
    for (auto& x : d) x = Rational(coeff(rng));
    UniPoly den = UniPoly::from_coeffs(d);
    if (den.is_zero()) den = UniPoly(1);
    return RatFunc(num, den);
}

KVec mat_apply(const KMat& m, const KVec& v) {
    KVec out(m.size(), RatFunc());
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < m[r].size(); ++c) out[r] += m[r][c] * v[c];
    return out;
}

}  // namespace

TEST_CASE("rank basics") {
    RatFunc one(1), zero;
    KMat id3 = {{one, zero, zero}, {zero, one, zero}, {zero, zero, one}};
    CHECK(rank(id3) == 3);
    KMat z = {{zero, zero}, {zero, zero}};
    CHECK(rank(z) == 0);
}

TEST_CASE("Vandermonde rank via evaluation oracle") {
    RatFunc t = RatFunc::t();
    auto row = [&](RatFunc v) { return KVec{RatFunc(1), v, v * v}; };
    KMat m = {row(RatFunc(1)), row(t), row(t * t)};
    CHECK(rank(m) == 3);
    // Oracle: evaluate at a random rational t0 and rank over Q.
    Rational t0 = rat(5, 3);
    KMat me;
    for (const auto& r : m) {
        KVec er;
        for (const auto& x : r) er.push_back(RatFunc(x.eval(t0)));
        me.push_back(er);
    }
    CHECK(rank(me) == 3);
}

TEST_CASE("nullspace examples") {
    RatFunc one(1), zero, t = RatFunc::t();
    KMat id2 = {{one, zero}, {zero, one}};
    CHECK(nullspace(id2, 2).empty());

    KMat m = {{t, t * t}};
    auto basis = nullspace(m, 2);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == one);                 // echelon-normalized
    CHECK(basis[0][1] == -(one / t));          // (1, -1/t)
    CHECK(mat_apply(m, basis[0])[0].is_zero());
}

TEST_CASE("random 5x8 of rank 5: nullspace dimension and membership") {
    std::mt19937_64 rng(2024);
    KMat m(5, KVec(8));
    for (auto& r : m)
        for (auto& x : r) x = random_ratfunc(rng);
    REQUIRE(rank(m) == 5);  // generically full row rank
    auto basis = nullspace(m, 8);
    CHECK(basis.size() == 3);
    for (const auto& v : basis)
        for (const auto& y : mat_apply(m, v)) CHECK(y.is_zero());
    // Derived oracle: rank agreement under three random rational evaluations.
    for (Rational t0 : {rat(2), rat(7, 2), rat(-3)}) {
        KMat me;
        bool pole = false;
        for (const auto& r : m) {
            KVec er;
            for (const auto& x : r) {
                if (x.den().eval(t0) == 0) pole = true;
                else er.push_back(RatFunc(x.eval(t0)));
            }
            me.push_back(er);
        }
        if (!pole) CHECK(rank(me) == 5);
    }
}

TEST_CASE("nullspace commutes with evaluation at a non-pole") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        KMat m(3, KVec(5));
        for (auto& r : m)
            for (auto& x : r) x = random_ratfunc(rng);
        auto basis = nullspace(m, 5);
        Rational t0 = rat(11, 7);
        bool pole = false;
        for (const auto& r : m)
            for (const auto& x : r)
                if (x.den().eval(t0) == 0) pole = true;
        for (const auto& v : basis)
            for (const auto& x : v)
                if (x.den().eval(t0) == 0) pole = true;
        if (pole) continue;
        for (const auto& v : basis) {
            for (size_t r = 0; r < m.size(); ++r) {
                Rational acc(0);
                for (size_t c = 0; c < 5; ++c) acc += m[r][c].eval(t0) * v[c].eval(t0);
                CHECK(acc == 0);
            }
        }
    }
}

TEST_CASE("rank invariance under row shuffles and row scaling") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        KMat m(4, KVec(6));
        for (auto& r : m)
            for (auto& x : r) x = random_ratfunc(rng);
        int base = rank(m);
        KMat shuffled = m;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(rank(shuffled) == base);
        KMat scaled = m;
        RatFunc f = RatFunc::t() + RatFunc(2);
        for (auto& x : scaled[1]) x *= f;
        CHECK(rank(scaled) == base);
    }
}

TEST_CASE("rank + nullity = columns") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        KMat m(4, KVec(7));
        for (auto& r : m)
            for (auto& x : r) x = random_ratfunc(rng);
        CHECK(rank(m) + static_cast<int>(nullspace(m, 7).size()) == 7);
    }
}
