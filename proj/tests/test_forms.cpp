#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nambu/detail.hpp"
#include "nambu/errors.hpp"
#include "nambu/forms.hpp"

#include "test_util.hpp"

using namespace nambu;
using testutil::random_poly;

namespace {

MultiPoly v(const TablePtr& t, const std::string& name) {
    return MultiPoly::variable(t, name);
}

DifferentialForm random_form(const TablePtr& t, int degree, std::mt19937_64& rng) {
    DifferentialForm f(t, degree);
    const auto tuples = detail::increasing_tuples(t->size(), degree);
    for (const auto& one_based : tuples) {
        std::vector<int> idx;
        for (int i : one_based) idx.push_back(i - 1);
        f.add_term(idx, random_poly(t, rng, 2, 2));
    }
    return f;
}

} // namespace

TEST_CASE("wedge basics") {
    auto t = VariableTable::coordinates({"x", "y", "z"});
    auto dx = DifferentialForm::d_coordinate(t, 0);
    auto dy = DifferentialForm::d_coordinate(t, 1);

    CHECK(wedge(dx, dy) == -wedge(dy, dx));
    CHECK(wedge(dx, dx).is_zero());

    // (x dy) ^ (y dx) = -xy dx^dy
    auto xdy = dy.scaled(v(t, "x"));
    auto ydx = dx.scaled(v(t, "y"));
    auto w = wedge(xdy, ydx);
    CHECK(w.coeff({0, 1}) == -(v(t, "x") * v(t, "y")));

    // top wedge with itself dies by grading
    auto dz = DifferentialForm::d_coordinate(t, 2);
    auto vol = wedge(wedge(dx, dy), dz);
    CHECK(wedge(vol, vol).is_zero());
}

TEST_CASE("exterior derivative basics") {
    auto t = VariableTable::coordinates({"x", "y", "z"});
    auto dy = DifferentialForm::d_coordinate(t, 1);
    // d(x dy) = dx ^ dy
    auto f = dy.scaled(v(t, "x"));
    auto df = ext_d(f);
    CHECK(df.coeff({0, 1}) == MultiPoly::constant(t, Rational(1)));
    CHECK(df.terms().size() == 1);

    CHECK(ext_d(DifferentialForm::d_coordinate(t, 0)).is_zero());
}

TEST_CASE("d is a graded derivation squaring to zero") {
    auto t = VariableTable::coordinates({"x", "y", "z", "w"});
    std::mt19937_64 rng(3);
    for (int degree = 0; degree <= 3; ++degree) {
        for (int trial = 0; trial < 25; ++trial) {
            auto a = random_form(t, degree, rng);
            CHECK(ext_d(ext_d(a)).is_zero());
        }
    }
    for (int da = 0; da <= 2; ++da) {
        for (int db = 0; db <= 2; ++db) {
            for (int trial = 0; trial < 10; ++trial) {
                auto a = random_form(t, da, rng);
                auto b = random_form(t, db, rng);
                // graded commutativity
                auto ab = wedge(a, b);
                auto ba = wedge(b, a);
                if ((da * db) % 2 == 0)
                    CHECK(ab == ba);
                else
                    CHECK(ab == -ba);
                // graded Leibniz
                auto lhs = ext_d(ab);
                auto rhs = (da % 2 == 0) ? wedge(ext_d(a), b) + wedge(a, ext_d(b))
                                         : wedge(ext_d(a), b) - wedge(a, ext_d(b));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("omega3 residuals vanish on the vacuum triple") {
    for (int K = 1; K <= 4; ++K) {
        auto rep = omega3_check(vacuum_solution(K));
        INFO("K = ", K);
        CHECK(rep.closedness.is_zero());
        CHECK(rep.wedge_square.is_zero());
        CHECK(rep.theorem31.is_zero());
    }
}

TEST_CASE("perturbed triple fails the exterior equation") {
    auto tr = vacuum_solution(3);
    // N -> N + q^2
    Laurent pert = tr.N + Laurent::from_poly(v(tr.table, "q") * v(tr.table, "q"));
    VpTriple bad{tr.K, tr.table, tr.L, tr.M, pert};
    auto rep = omega3_check(bad);
    CHECK(!rep.theorem31.is_zero());
    // the perturbation is lambda-free and exact, so Omega stays closed
    CHECK(rep.closedness.is_zero());
}

TEST_CASE("krichever potential closedness") {
    for (int K = 1; K <= 4; ++K) {
        INFO("K = ", K);
        CHECK(krichever_closedness(vacuum_solution(K)).is_zero());
    }

    // non-solution (lambda, p, lambda q) has a non-closed potential form
    auto vac = vacuum_solution(2);
    auto t = vac.table;
    Laurent lq = Laurent::from_poly(v(t, "q"), 1);
    VpTriple bad{2, t, Laurent::lambda_power(t, 1), Laurent::from_poly(v(t, "p")), lq};
    CHECK(!krichever_closedness(bad).is_zero());
}

TEST_CASE("laurent tails cannot enter the form algebra") {
    auto vac = vacuum_solution(2);
    auto t = vac.table;
    Laurent withneg = Laurent::from_poly(v(t, "q"), -1); // q / lambda
    VpTriple bad{2, t, vac.L, vac.M, withneg};
    CHECK_THROWS_AS(omega3_check(bad), WindowError);
}

TEST_CASE("plebanski residual") {
    auto t = plebanski_table();
    auto x = v(t, "x"), y = v(t, "y"), xt = v(t, "xt"), yt = v(t, "yt");

    auto flat = x * xt + y * yt;
    CHECK(plebanski_residual(flat).is_zero());

    // flat + g(x, y) stays a solution for any polynomial g
    auto g = x * x * y + y.scaled(Rational(3));
    CHECK(plebanski_residual(flat + g).is_zero());

    auto scaled = x * xt.scaled(Rational(2)) + y * yt;
    CHECK(plebanski_residual(scaled) == MultiPoly::constant(t, Rational(1)));
}

TEST_CASE("plebanski pencil closes and squares to zero exactly on solutions") {
    auto t = plebanski_table();
    auto x = v(t, "x"), y = v(t, "y"), xt = v(t, "xt"), yt = v(t, "yt");

    for (const auto& omega : {x * xt + y * yt, x * xt + y * yt + x * x * y}) {
        auto pencil = plebanski_pencil(omega);
        auto rep = gindikin_check(pencil, 1);
        CHECK(rep.power_l_plus_1.is_zero());
        CHECK(rep.closedness.is_zero());
        CHECK(rep.power_l_nonzero.has_value());
        CHECK(rep.passes());
    }

    // scaled non-solution: wedge square fails at lambda^2
    auto bad = plebanski_pencil(x * xt.scaled(Rational(2)) + y * yt);
    auto rep = gindikin_check(bad, 1);
    CHECK(!rep.power_l_plus_1.is_zero());
    auto witness = first_nonzero(rep.power_l_plus_1);
    REQUIRE(witness.has_value());
    CHECK(witness->tau == std::vector<int>{2});
    CHECK(rep.closedness.is_zero()); // d of the pencil is identically zero
}

TEST_CASE("gindikin two-parameter example") {
    auto t = plebanski_table();
    auto dx = DifferentialForm::d_coordinate(t, 0);
    auto dy = DifferentialForm::d_coordinate(t, 1);
    auto dxt = DifferentialForm::d_coordinate(t, 2);
    auto dyt = DifferentialForm::d_coordinate(t, 3);

    FormPencil p(t, 2, 2);
    p.add({1, 0}, wedge(dx, dy));
    p.add({0, 1}, wedge(dxt, dyt));

    // (tau1 dx dy + tau2 dxt dyt)^2 = 2 tau1 tau2 dx dy dxt dyt != 0: l = 1 fails
    auto rep1 = gindikin_check(p, 1);
    CHECK(!rep1.power_l_plus_1.is_zero());
    auto w = first_nonzero(rep1.power_l_plus_1);
    REQUIRE(w.has_value());
    CHECK(w->tau == std::vector<int>{1, 1});
    CHECK(w->coeff == MultiPoly::constant(t, Rational(2)));

    // l = 2 passes with an explicit witness
    auto rep2 = gindikin_check(p, 2);
    CHECK(rep2.passes());
    CHECK(rep2.power_l_nonzero->tau == std::vector<int>{1, 1});

    // single-term pencil passes at l = 1
    FormPencil single(t, 2, 2);
    single.add({1, 0}, wedge(dx, dy));
    CHECK(gindikin_check(single, 1).passes());
}

TEST_CASE("determinant metric") {
    auto t = VariableTable::coordinates({"x1", "x2", "x3"});
    auto dx1 = DifferentialForm::d_coordinate(t, 0);
    auto dx2 = DifferentialForm::d_coordinate(t, 1);
    auto dx3 = DifferentialForm::d_coordinate(t, 2);
    auto zero = DifferentialForm(t, 1);

    std::array<std::array<DifferentialForm, 3>, 3> identity{{{dx1, zero, zero},
                                                             {zero, dx2, zero},
                                                             {zero, zero, dx3}}};
    auto g = det_metric3(identity);
    REQUIRE(g.size() == 1);
    CHECK(g.begin()->first == std::array<int, 3>{0, 1, 2});
    CHECK(g.begin()->second == MultiPoly::constant(t, Rational(1)));

    // swapping two rows flips the sign
    std::array<std::array<DifferentialForm, 3>, 3> swapped{{{zero, dx2, zero},
                                                            {dx1, zero, zero},
                                                            {zero, zero, dx3}}};
    auto gs = det_metric3(swapped);
    REQUIRE(gs.size() == 1);
    CHECK(gs.begin()->second == MultiPoly::constant(t, Rational(-1)));

    // diagonal frame (f dx1, g dx2, h dx3) gives f g h dx1.dx2.dx3
    auto f = v(t, "x1") + v(t, "x2");
    auto gpoly = v(t, "x2") * v(t, "x2");
    auto h = MultiPoly::constant(t, Rational(3));
    std::array<std::array<DifferentialForm, 3>, 3> diag{{{dx1.scaled(f), zero, zero},
                                                         {zero, dx2.scaled(gpoly), zero},
                                                         {zero, zero, dx3.scaled(h)}}};
    auto gd = det_metric3(diag);
    REQUIRE(gd.size() == 1);
    CHECK(gd.begin()->second == f * gpoly * h);
}

TEST_CASE("hydro compatibility, symbolic route") {
    auto ut = VariableTable::coordinates({"u1"});
    auto xt = VariableTable::coordinates({"x", "t"});
    auto u = v(ut, "u1");

    PolyMatrix A{{u}};
    SUBCASE("A = B along u = x + t is compatible") {
        std::vector<MultiPoly> sol{v(xt, "x") + v(xt, "t")};
        auto res = hydro_compat_symbolic(A, A, sol);
        CHECK(res.all_zero());
    }
    SUBCASE("u_t != u_x control") {
        std::vector<MultiPoly> sol{v(xt, "x") + v(xt, "t").scaled(Rational(2))};
        auto res = hydro_compat_symbolic(A, A, sol);
        CHECK(!res.all_zero());
        CHECK(res.evolution[0][0] == MultiPoly::constant(xt, Rational(1)));
    }
    SUBCASE("non-commuting matrices are caught") {
        auto zero = MultiPoly::zero(ut);
        PolyMatrix A2{{zero, u}, {zero, zero}};
        PolyMatrix B2{{zero, zero}, {u, zero}};
        std::vector<MultiPoly> sol{v(xt, "x")};
        auto res = hydro_compat_symbolic(A2, B2, sol);
        CHECK(!res.all_zero());
    }
}

TEST_CASE("hydro compatibility, grid route") {
    auto ut = VariableTable::coordinates({"u1"});
    auto u = v(ut, "u1");

    const int nx = 200, nt = 200;
    std::vector<double> xs(nx), ts(nt);
    for (int i = 0; i < nx; ++i) xs[i] = 0.2 * i / (nx - 1);
    for (int j = 0; j < nt; ++j) ts[j] = 0.2 * j / (nt - 1);
    std::vector<std::vector<std::vector<double>>> grid(
        1, std::vector<std::vector<double>>(nx, std::vector<double>(nt)));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nt; ++j) grid[0][i][j] = xs[i] / (1.0 + ts[j]);

    // u = x/(1+t) solves u_t + u u_x = 0; with B = -u^2/2 this is A_t = B_x
    PolyMatrix A{{u}};
    PolyMatrix B{{(u * u).scaled(Rational(-1, 2))}};
    auto res = hydro_compat_grid(A, B, grid, xs, ts);
    CHECK(res.max_evolution_residual <= 1e-6);
    CHECK(res.max_commutator_residual == 0.0);

    // control: A = B = u is not compatible along this solution
    auto control = hydro_compat_grid(A, A, grid, xs, ts);
    CHECK(control.max_evolution_residual > 1e-2);
}
