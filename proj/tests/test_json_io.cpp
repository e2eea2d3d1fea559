#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambu/errors.hpp"
#include "nambu/json_io.hpp"

#include "test_util.hpp"

using namespace nambu;
using testutil::random_poly;

TEST_CASE("polynomial round trip and canonical bytes") {
    auto t = VariableTable::coordinates({"x", "y", "z"});
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_poly(t, rng, 4, 6);
        Json j = poly_to_json(p);
        CHECK(poly_from_json(j) == p);
        // byte determinism
        CHECK(j.dump() == poly_to_json(p).dump());
    }

    // term list is sorted by exponent vector
    auto p = MultiPoly::variable(t, "z") + MultiPoly::variable(t, "x");
    Json j = poly_to_json(p);
    CHECK(j["terms"][0][0] == Json::array({0, 0, 1}));
    CHECK(j["terms"][1][0] == Json::array({1, 0, 0}));
    CHECK(j["terms"][0][1] == "1/1");
}

TEST_CASE("jet tables round trip") {
    VariableTable::Builder b;
    b.coordinate("x");
    b.time("t1");
    b.jet_family("u2", 3);
    auto t = b.build();
    auto u2p = MultiPoly::variable(t, "u2^(1)");
    auto p = u2p * MultiPoly::variable(t, "x");
    auto q = poly_from_json(poly_to_json(p));
    CHECK(q == p);
    CHECK(q.table()->jet("u2", 1) == t->jet("u2", 1));
}

TEST_CASE("laurent round trip keeps the window") {
    auto t = VariableTable::coordinates({"p", "q"});
    Laurent a(t, -2, 3);
    a.set_coeff(-2, MultiPoly::variable(t, "p"));
    a.set_coeff(0, MultiPoly::constant(t, Rational(1, 3)));
    a.set_coeff(3, MultiPoly::variable(t, "q"));
    Json j = laurent_to_json(a);
    Laurent back = laurent_from_json(j);
    CHECK(back.lo() == -2);
    CHECK(back.hi() == 3);
    CHECK(back.coeff(-2) == a.coeff(-2));
    CHECK(back.coeff(3) == a.coeff(3));

    Laurent exact = Laurent::from_poly(MultiPoly::variable(t, "p"), 1);
    Json je = laurent_to_json(exact);
    CHECK(je["window"][0] == "-inf");
    CHECK(!laurent_from_json(je).has_tail());
}

TEST_CASE("tensor round trip") {
    auto t = VariableTable::coordinates({"x1", "x2", "x3", "x4"});
    NambuTensor eta(t, 3);
    eta.set_entry({1, 2, 3}, MultiPoly::variable(t, "x4"));
    eta.set_entry({2, 3, 4}, MultiPoly::constant(t, Rational(-2)));
    auto back = tensor_from_json(tensor_to_json(eta));
    CHECK(back.order() == 3);
    CHECK(back.dim() == 4);
    CHECK(back.entry({1, 2, 3}) == eta.entry({1, 2, 3}));
    CHECK(back.entry({2, 4, 3}) == -eta.entry({2, 3, 4}));
}

TEST_CASE("form round trip") {
    auto t = VariableTable::coordinates({"x", "y", "z"});
    auto dx = DifferentialForm::d_coordinate(t, 0);
    auto dy = DifferentialForm::d_coordinate(t, 1);
    auto f = wedge(dx, dy).scaled(MultiPoly::variable(t, "z"));
    auto back = form_from_json(form_to_json(f), t);
    CHECK(back == f);
}

TEST_CASE("malformed input raises ParseError") {
    CHECK_THROWS_AS(poly_from_json(Json::object()), ParseError);
    CHECK_THROWS_AS(poly_from_json(Json{{"vars", Json::array({"x"})},
                                        {"terms", Json::array({Json::array({1})})}}),
                    ParseError);
    CHECK_THROWS_AS(rational_from_string("a/b"), ParseError);
    auto t = VariableTable::coordinates({"x"});
    Json bad{{"window", Json::array({"oops", 2})}, {"coeffs", Json::array()}};
    CHECK_THROWS_AS(laurent_from_json(bad, t), ParseError);
}
