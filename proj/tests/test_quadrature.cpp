#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "screens/quadrature.hpp"

using namespace screens;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const QuadratureRule rule = gauss_legendre(8, -1.0, 3.0);
    // degree-15 polynomial x^15 over [-1,3]: exact (4^16 - ... ) check vs closed form
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], 15);
    const double exact = (std::pow(3.0, 16) - std::pow(-1.0, 16)) / 16.0;
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    // weights sum to the interval length
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(4.0));
}

TEST_CASE("graded radial rule handles the plate integrand to high accuracy") {
    // int_0^inf x^2 ln(1 - e^{-x}) dx = -pi^4/45
    const QuadratureRule rule = graded_radial_rule(120, 60.0);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        acc += rule.weights[i] * x * x * std::log1p(-std::exp(-x));
    }
    CHECK(acc == doctest::Approx(-std::pow(M_PI, 4) / 45.0).epsilon(1e-10));
    // open rule: no node at the endpoints
    for (double x : rule.nodes) {
        CHECK(x > 0.0);
        CHECK(x < 60.0);
    }
}

TEST_CASE("midpoint rule is spectrally accurate for even periodic integrands") {
    // int_0^pi cos^6 x dx = 5 pi / 16
    const QuadratureRule rule = midpoint_rule(12, M_PI);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * std::pow(std::cos(rule.nodes[i]), 6);
    CHECK(acc == doctest::Approx(5.0 * M_PI / 16.0).epsilon(1e-13));
}

TEST_CASE("parallel map is deterministic and order-preserving") {
    auto f = [](int i) { return std::sin(0.1 * i) + i; };
    const std::vector<double> one = detail::parallel_map(257, 1, f);
    const std::vector<double> many = detail::parallel_map(257, 8, f);
    REQUIRE(one.size() == many.size());
    for (size_t i = 0; i < one.size(); ++i) CHECK(one[i] == many[i]);
}

TEST_CASE("parallel map propagates exceptions") {
    auto f = [](int i) -> double {
        if (i == 100) throw convergence_error("boom");
        return i;
    };
    CHECK_THROWS_AS(detail::parallel_map(128, 4, f), convergence_error);
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec q;
    CHECK_NOTHROW(q.validate());
    q.n_kappa = 1;
    CHECK_THROWS_AS(q.validate(), config_error);
}
