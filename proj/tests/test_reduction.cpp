#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bvp/reduction.hpp"

using bvp::companion_matrix_at;
using bvp::ComponentBC;
using bvp::Endpoint;
using bvp::Expr;
using bvp::FirstOrderSystem;
using bvp::parse_expr;
using bvp::Problem;
using bvp::reduce_order;

namespace {

Problem second_order_example() {
    // y'' + y = 1, y(0) = 0, y(1) = 1
    Problem p;
    p.order = 2;
    p.a = 0.0;
    p.b = 1.0;
    p.coeffs = {Expr::number(0.0), Expr::number(1.0)};
    p.rhs = Expr::number(1.0);
    p.bcs = {{0, Endpoint::Left, 0.0}, {0, Endpoint::Right, 1.0}};
    return p;
}

}  // namespace

TEST_CASE("second-order example reduces to the rotation system") {
    const FirstOrderSystem sys = reduce_order(second_order_example());
    CHECK(sys.dim == 2);
    CHECK(sys.a == 0.0);
    CHECK(sys.b == 1.0);
    REQUIRE(sys.companion_row.size() == 2);
    // row entry for column l is -a_{m-l+1}: here -a_2 = -1 and -a_1 = 0
    CHECK(sys.companion_row[0].eval(0.3) == -1.0);
    CHECK(sys.companion_row[1].eval(0.3) == 0.0);
    CHECK(sys.rhs.eval(0.9) == 1.0);

    REQUIRE(sys.component_bcs.size() == 2);
    CHECK(sys.component_bcs[0] == ComponentBC{1, Endpoint::Left, 0.0});
    CHECK(sys.component_bcs[1] == ComponentBC{1, Endpoint::Right, 1.0});

    const bvp::Matrix a = companion_matrix_at(sys, 0.5);
    CHECK(a(0, 0) == 0.0);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(1, 0) == -1.0);
    CHECK(a(1, 1) == 0.0);
}

TEST_CASE("first-order problem is its own reduction") {
    Problem p;
    p.order = 1;
    p.a = 0.0;
    p.b = 2.0;
    p.coeffs = {Expr::number(-1.0)};  // y' - y = 0
    p.rhs = Expr::number(0.0);
    p.bcs = {{0, Endpoint::Left, 1.0}};
    const FirstOrderSystem sys = reduce_order(p);
    CHECK(sys.dim == 1);
    CHECK(sys.companion_row[0].eval(1.7) == 1.0);
    CHECK(sys.component_bcs[0] == ComponentBC{1, Endpoint::Left, 1.0});
}

TEST_CASE("fifth-order example: only the y column survives") {
    // y^(5) - y = f
    Problem p;
    p.order = 5;
    p.a = 0.0;
    p.b = 1.0;
    p.coeffs.assign(5, Expr::number(0.0));
    p.coeffs[4] = Expr::number(-1.0);
    p.rhs = parse_expr("-15*exp(t) - 10*t*exp(t)");
    p.bcs = {{0, Endpoint::Left, 0.0},
             {1, Endpoint::Left, 1.0},
             {2, Endpoint::Left, 0.0},
             {0, Endpoint::Right, 0.0},
             {1, Endpoint::Right, -std::exp(1.0)}};
    const FirstOrderSystem sys = reduce_order(p);
    CHECK(sys.dim == 5);
    CHECK(sys.companion_row[0].eval(0.4) == 1.0);
    for (int l = 2; l <= 5; ++l) CHECK(sys.companion_row[l - 1].eval(0.4) == 0.0);
    // derivative order k maps to component k+1
    CHECK(sys.component_bcs[1] == ComponentBC{2, Endpoint::Left, 1.0});
    CHECK(sys.component_bcs[4].component == 2);
    CHECK(sys.component_bcs[4].endpoint == Endpoint::Right);
}

TEST_CASE("pure integration chain gives a nilpotent companion matrix") {
    Problem p;
    p.order = 3;
    p.a = -1.0;
    p.b = 1.0;
    p.coeffs.assign(3, Expr::number(0.0));
    p.rhs = Expr::number(0.0);
    p.bcs = {{0, Endpoint::Left, 0.0}, {1, Endpoint::Left, 0.0}, {0, Endpoint::Right, 0.0}};
    const bvp::Matrix a = companion_matrix_at(reduce_order(p), 0.2);
    // A^3 y = 0 for every y: apply the matrix three times to each unit vector.
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<double> v(3, 0.0);
        v[j] = 1.0;
        v = a.multiply(a.multiply(a.multiply(v)));
        for (double entry : v) CHECK(entry == 0.0);
    }
}

TEST_CASE("sixth-order example companion row at t=0") {
    // y^(6) - y = -6 e^t: bottom row of A is (1, 0, 0, 0, 0, 0)
    Problem p;
    p.order = 6;
    p.a = 0.0;
    p.b = 1.0;
    p.coeffs.assign(6, Expr::number(0.0));
    p.coeffs[5] = Expr::number(-1.0);
    p.rhs = parse_expr("-6*exp(t)");
    p.bcs = {{0, Endpoint::Left, 1.0},  {1, Endpoint::Left, 0.0},
             {2, Endpoint::Left, -1.0}, {0, Endpoint::Right, 0.0},
             {1, Endpoint::Right, -std::exp(1.0)}, {2, Endpoint::Right, -2 * std::exp(1.0)}};
    const bvp::Matrix a = companion_matrix_at(reduce_order(p), 0.0);
    for (std::size_t j = 0; j < 6; ++j) CHECK(a(5, j) == (j == 0 ? 1.0 : 0.0));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(a(i, j) == (j == i + 1 ? 1.0 : 0.0));
}

TEST_CASE("reduction preserves solutions: polynomial residual check") {
    // y''' + t y'' + 2 y' + sin(t) y = f with y = t^3 manufactured.
    Problem p;
    p.order = 3;
    p.a = 0.0;
    p.b = 1.0;
    p.coeffs = {parse_expr("t"), Expr::number(2.0), parse_expr("sin(t)")};
    p.rhs = parse_expr("6 + t*(6*t) + 2*(3*t^2) + sin(t)*t^3");
    p.bcs = {{0, Endpoint::Left, 0.0}, {1, Endpoint::Left, 0.0}, {0, Endpoint::Right, 1.0}};
    const FirstOrderSystem sys = reduce_order(p);

    for (double t : {0.0, 0.21, 0.5, 0.83, 1.0}) {
        const double y[3] = {t * t * t, 3 * t * t, 6 * t};  // y, y', y''
        const double y3 = 6.0;                              // y'''
        double row = 0.0;
        for (int l = 1; l <= 3; ++l) row += sys.companion_row[l - 1].eval(t) * y[l - 1];
        CHECK(y3 == doctest::Approx(row + sys.rhs.eval(t)).epsilon(1e-13));

        // full companion form: dy/dt = A y + (0, 0, f)
        const bvp::Matrix a = companion_matrix_at(sys, t);
        const std::vector<double> ay = a.multiply({y[0], y[1], y[2]});
        CHECK(ay[0] == doctest::Approx(y[1]));
        CHECK(ay[1] == doctest::Approx(y[2]));
        CHECK(ay[2] + sys.rhs.eval(t) == doctest::Approx(y3).epsilon(1e-13));
    }
}
