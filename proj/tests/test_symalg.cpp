#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambu/errors.hpp"
#include "nambu/laurent.hpp"
#include "nambu/poly.hpp"

#include "test_util.hpp"

using namespace nambu;
using testutil::laurent_eq;
using testutil::random_poly;

namespace {

TablePtr xyz() {
    return VariableTable::coordinates({"x", "y", "z"});
}

TablePtr jet_ring(int max_order = 6) {
    VariableTable::Builder b;
    b.coordinate("x");
    b.jet_family("u2", max_order).jet_family("u3", max_order).jet_family("u4", max_order);
    return b.build();
}

MultiPoly v(const TablePtr& t, const char* name) {
    return MultiPoly::variable(t, name);
}

} // namespace

TEST_CASE("rational canonical strings") {
    CHECK(rational_to_string(Rational(3)) == "3/1");
    CHECK(rational_to_string(Rational(-4, 6)) == "-2/3");
    CHECK(rational_from_string("7/21") == Rational(1, 3));
    CHECK(rational_from_string("-5") == Rational(-5));
    CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rational_from_string("zz"), ParseError);
}

TEST_CASE("poly arithmetic examples") {
    auto t = xyz();
    auto x = v(t, "x"), y = v(t, "y");

    CHECK((x + y) * (x - y) == x * x - y * y);

    std::mt19937_64 rng(1);
    auto p = random_poly(t, rng, 3, 4);
    CHECK((p * MultiPoly::zero(t)).is_zero());

    auto q = x * x * y;
    CHECK((q + (-q)).is_zero());
}

TEST_CASE("poly table mismatch is an error") {
    auto t1 = xyz();
    auto t2 = VariableTable::coordinates({"x", "y"});
    CHECK_THROWS_AS(v(t1, "x") + v(t2, "x"), VariableMismatchError);
}

TEST_CASE("partial derivatives") {
    auto t = xyz();
    auto x = v(t, "x"), y = v(t, "y");
    CHECK((x * x * y).partial("x") == (x * y).scaled(Rational(2)));
    CHECK((x * x * y).partial("z").is_zero());
    CHECK_THROWS_AS((x * y).partial("w"), UnknownVariableError);

    // rigid-body Hamiltonian piece: d/dm1 of (1/2) a2 m1^2 = a2 m1
    auto rb = VariableTable::coordinates({"m1", "m2", "m3", "a1", "a2", "a3", "k"});
    auto m1 = v(rb, "m1"), a2 = v(rb, "a2");
    auto h = (a2 * m1 * m1).scaled(Rational(1, 2));
    CHECK(h.partial("m1") == a2 * m1);
}

TEST_CASE("total x-derivative on the jet ring") {
    auto t = jet_ring();
    auto x = v(t, "x"), u2 = v(t, "u2"), u3 = v(t, "u3");
    auto u2p = v(t, "u2^(1)"), u3p = v(t, "u3^(1)");

    CHECK(u2.total_x_derivative() == u2p);
    CHECK((u2 * u3).total_x_derivative() == u2p * u3 + u2 * u3p);
    CHECK((x * u2).total_x_derivative() == u2 + x * u2p);

    // exceeding the registered maximum order is reported, not truncated
    auto shallow = [] {
        VariableTable::Builder b;
        b.coordinate("x").jet_family("u2", 1);
        return b.build();
    }();
    auto top = MultiPoly::variable(shallow, "u2^(1)");
    CHECK_THROWS_AS(top.total_x_derivative(), JetOrderError);
}

TEST_CASE("laurent arithmetic examples") {
    auto t = jet_ring();
    auto u2 = v(t, "u2"), u3 = v(t, "u3"), u4 = v(t, "u4");

    // exact (lambda + u2 lambda^-1)^2
    Laurent small = Laurent::lambda_power(t, 1) + Laurent::from_poly(u2, -1);
    Laurent sq = small.pow(2);
    CHECK(!sq.has_tail());
    CHECK(sq.coeff(2) == MultiPoly::constant(t, Rational(1)));
    CHECK(sq.coeff(0) == u2.scaled(Rational(2)));
    CHECK(sq.coeff(-2) == u2 * u2);
    CHECK(sq.coeff(-1).is_zero());

    // lambda * lambda^-1 = 1
    Laurent one = Laurent::lambda_power(t, 1) * Laurent::lambda_power(t, -1);
    CHECK(laurent_eq(one, Laurent::one(t)));

    // truncated L = lambda + u2/l + u3/l^2 + u4/l^3, window [-3, 1]
    Laurent L(t, -3, 1);
    L.set_coeff(1, MultiPoly::constant(t, Rational(1)));
    L.set_coeff(-1, u2);
    L.set_coeff(-2, u3);
    L.set_coeff(-3, u4);
    Laurent L2 = L * L;
    CHECK(L2.lo() == -2);
    CHECK(L2.hi() == 2);
    CHECK(L2.coeff(0) == u2.scaled(Rational(2)));
    CHECK(L2.coeff(-1) == u3.scaled(Rational(2)));
    // frozen regression value: u2^2 + 2 u4
    CHECK(L2.coeff(-2) == u2 * u2 + u4.scaled(Rational(2)));
    CHECK_THROWS_AS(L2.coeff(-3), WindowError);
}

TEST_CASE("project_nonneg") {
    auto t = jet_ring();
    auto u2 = v(t, "u2"), u3 = v(t, "u3");

    // projection of the truncated L^2 keeps lambda^2 + 2 u2
    Laurent L(t, -2, 1);
    L.set_coeff(1, MultiPoly::constant(t, Rational(1)));
    L.set_coeff(-1, u2);
    L.set_coeff(-2, u3);
    Laurent B2 = (L * L).project_nonneg();
    CHECK(!B2.has_tail());
    CHECK(B2.coeff(2) == MultiPoly::constant(t, Rational(1)));
    CHECK(B2.coeff(0) == u2.scaled(Rational(2)));
    CHECK(B2.coeff(1).is_zero());
    CHECK(B2.coeff(-5).is_zero()); // exact zero below, no window error

    CHECK(laurent_eq(Laurent::lambda_power(t, 1).project_nonneg(), Laurent::lambda_power(t, 1)));
    CHECK(Laurent::from_poly(u2, -1).project_nonneg().is_zero_on_window());
}

TEST_CASE("ring axioms on random triples") {
    auto t = xyz();
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        auto a = random_poly(t, rng, 4, 4);
        auto b = random_poly(t, rng, 4, 4);
        auto c = random_poly(t, rng, 4, 4);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("partials commute") {
    auto t = xyz();
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto a = random_poly(t, rng, 5, 6);
        CHECK(a.partial("x").partial("y") == a.partial("y").partial("x"));
    }
}

TEST_CASE("project_nonneg is idempotent and linear") {
    auto t = xyz();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Laurent a(t, -3, 2);
        Laurent b(t, -3, 2);
        for (int k = -3; k <= 2; ++k) {
            a.set_coeff(k, random_poly(t, rng, 2, 2));
            b.set_coeff(k, random_poly(t, rng, 2, 2));
        }
        auto pa = a.project_nonneg();
        CHECK(laurent_eq(pa.project_nonneg(), pa));
        auto sum_then = (a + b).project_nonneg();
        auto then_sum = a.project_nonneg() + b.project_nonneg();
        for (int k = -1; k <= 3; ++k)
            CHECK(sum_then.coeff(k) == then_sum.coeff(k));
    }
}

TEST_CASE("laurent pow equals repeated multiplication") {
    auto t = xyz();
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        Laurent a(t, -2, 2);
        for (int k = -2; k <= 2; ++k) a.set_coeff(k, random_poly(t, rng, 2, 2));
        for (int k = 0; k <= 5; ++k) {
            Laurent by_pow = a.pow(k);
            Laurent by_mul = Laurent::one(t);
            for (int i = 0; i < k; ++i) by_mul = by_mul * a;
            CHECK(laurent_eq(by_pow, by_mul));
        }
    }
}

TEST_CASE("an empty window cannot be declared") {
    auto t = xyz();
    CHECK_THROWS_AS(Laurent(t, 3, 1), WindowError);
}

TEST_CASE("laurent inverse against multiplication") {
    auto t = jet_ring();
    auto u2 = v(t, "u2"), u3 = v(t, "u3");
    Laurent L(t, -2, 1);
    L.set_coeff(1, MultiPoly::constant(t, Rational(1)));
    L.set_coeff(-1, u2);
    L.set_coeff(-2, u3);
    Laurent inv = L.inverse();
    Laurent prod = L * inv;
    // exact 1 on the representable window
    CHECK(prod.coeff(0) == MultiPoly::constant(t, Rational(1)));
    for (int k = prod.lo(); k <= prod.hi(); ++k)
        if (k != 0) CHECK(prod.coeff(k).is_zero());

    CHECK_THROWS_AS(Laurent::zero(t).inverse(), DomainError);
    // exact non-monomial inverse requires explicit truncation
    Laurent exact = Laurent::lambda_power(t, 1) + Laurent::from_poly(u2, -1);
    CHECK_THROWS_AS(exact.inverse(), DomainError);
    CHECK_NOTHROW(exact.truncated_below(-4).inverse());
}
