#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "screens/energy_engine.hpp"

using namespace screens;

namespace {

// Independent oracle for the scalar plate energy coefficient: composite
// Simpson on x = 2 q d for (1/(4 pi^2)) int q^2 ln(1 - e^{-2qd}) dq * d^3.
double plates_scalar_simpson() {
    const int n = 40000; // panels over (0, 60]
    const double h = 60.0 / n;
    auto f = [](double x) {
        if (x <= 0.0) return 0.0;
        return x * x * std::log1p(-std::exp(-x));
    };
    double acc = f(60.0);
    for (int i = 1; i < n; ++i) acc += ((i % 2) ? 4.0 : 2.0) * f(i * h);
    acc *= h / 3.0;
    return acc / (32.0 * M_PI * M_PI);
}

EnergyRequest strips_request(double fill, double separation, ChannelSet channels) {
    EnergyRequest req;
    req.screen = StripScreen(1.0, fill);
    req.channels = channels;
    req.separation = separation;
    req.solver = SolverParams(20, 64);
    req.solver.tail_safety = 8.0;
    req.quad.n_kappa = 48;
    req.quad.n_kx = 8;
    req.quad.estimate_error = false;
    return req;
}

} // namespace

TEST_CASE("plate reference energies") {
    const double em_full = plates_energy(ChannelSet::EM, ReflectionOrder::Full).value;
    CHECK(em_full == doctest::Approx(-M_PI * M_PI / 720.0).epsilon(1e-8));

    const double em_first = plates_energy(ChannelSet::EM, ReflectionOrder::First).value;
    CHECK(em_first == doctest::Approx(-1.0 / (8.0 * M_PI * M_PI)).epsilon(1e-14));

    // scalar Dirichlet plates: half the EM value, checked against an
    // independent Simpson quadrature
    const double d_full = plates_energy(ChannelSet::Dirichlet, ReflectionOrder::Full).value;
    CHECK(d_full == doctest::Approx(-M_PI * M_PI / 1440.0).epsilon(1e-8));
    CHECK(d_full == doctest::Approx(plates_scalar_simpson()).epsilon(1e-7));

    // first-reflection fraction 90/pi^4
    CHECK(em_first / em_full == doctest::Approx(90.0 / std::pow(M_PI, 4)).epsilon(1e-7));
}

TEST_CASE("roundtrip operator") {
    OrderBasis basis(1.0, 2, ImaginaryFrequency(1.0), TransverseMomentum(0.0, 0.5));
    TranslationDiagonal u = translation_diagonal(basis, 0.8);
    auto [r0, t0] = mirror_amplitudes(Channel::Dirichlet, basis);
    SUBCASE("parallel Dirichlet mirrors give the diagonal e^{-2qd}") {
        MatrixXcd m = roundtrip(r0, u, r0);
        for (int i = 0; i < basis.dimension(); ++i) {
            const double q = basis.q_values()[static_cast<size_t>(i)];
            CHECK(std::abs(m(i, i) - std::exp(-2.0 * q * 0.8)) < 1e-14);
        }
        CHECK(std::abs(m(0, 1)) == 0.0);
    }
    SUBCASE("mirror vs null screen vanishes") {
        auto [rz, tz] = empty_amplitudes(Channel::Dirichlet, basis);
        CHECK(roundtrip(r0, u, rz).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("basis mismatch rejected") {
        OrderBasis other(1.0, 2, ImaginaryFrequency(2.0), TransverseMomentum(0.0, 0.5));
        auto [r1, t1] = mirror_amplitudes(Channel::Dirichlet, other);
        CHECK_THROWS_AS(roundtrip(r1, u, r0), config_error);
    }
}

TEST_CASE("full-mirror screen through the periodic machinery matches plates") {
    EnergyRequest req = strips_request(1.0, 0.7, ChannelSet::EM);
    const double full = energy_full(req).value;
    CHECK(full == doctest::Approx(-M_PI * M_PI / 720.0).epsilon(2e-3));
    const double first = energy_first_reflection(req).value;
    CHECK(first == doctest::Approx(-1.0 / (8.0 * M_PI * M_PI)).epsilon(2e-3));
}

TEST_CASE("null screen gives zero energy") {
    EnergyRequest req = strips_request(0.0, 1.0, ChannelSet::EM);
    CHECK(energy_full(req).value == 0.0);
}

TEST_CASE("one-half theorem for self-complementary strips") {
    const double ref = -1.0 / (16.0 * M_PI * M_PI);
    for (double lam_over_d : {1.0, 2.0}) {
        EnergyRequest req = strips_request(0.5, 1.0 / lam_over_d, ChannelSet::EM);
        const double e1 = energy_first_reflection(req).value;
        CHECK(std::abs(e1 - ref) / std::abs(ref) < 0.02);
    }
}

TEST_CASE("babinet energy sum equals the plate first reflection") {
    EnergyRequest req = strips_request(0.25, 0.8, ChannelSet::EM);
    const double e_screen = energy_first_reflection(req).value;
    req.screen = req.screen.complement();
    const double e_comp = energy_first_reflection(req).value;
    const double plates = -1.0 / (8.0 * M_PI * M_PI);
    CHECK(std::abs(e_screen + e_comp - plates) / std::abs(plates) < 0.01);
}

TEST_CASE("truncation ordering and the higher-reflection bound") {
    EnergyRequest req = strips_request(0.5, 1.0, ChannelSet::EM);
    const double e1 = energy_first_reflection(req).value;
    const double ef = energy_full(req).value;
    CHECK(e1 < 0.0);
    CHECK(ef < 0.0);
    CHECK(std::abs(e1) <= std::abs(ef));
    CHECK(std::abs(ef - e1) / std::abs(ef) <= 0.08);
}

TEST_CASE("quadrature invariance: doubling changes less than the reported error") {
    EnergyRequest req = strips_request(0.5, 1.0, ChannelSet::EM);
    req.quad.n_kappa = 24;
    req.quad.n_kx = 4;
    req.quad.estimate_error = true;
    const EnergyResult coarse = energy_first_reflection(req);
    req.quad.n_kappa = 48;
    req.quad.n_kx = 8;
    req.quad.estimate_error = false;
    const EnergyResult fine = energy_first_reflection(req);
    CHECK(std::abs(fine.value - coarse.value) <=
          std::max(coarse.quad_error * std::abs(coarse.value), 1e-12));
    CHECK(coarse.quad_error >= 0.0);
}

TEST_CASE("pfa energies") {
    CHECK(pfa_energy(StripScreen(1.0, 1.0), ChannelSet::EM).value ==
          doctest::Approx(-M_PI * M_PI / 720.0));
    CHECK(pfa_energy(StripScreen(1.0, 0.0), ChannelSet::EM).value == 0.0);
    CHECK(pfa_energy(StripScreen(1.0, 0.5), ChannelSet::EM).value ==
          doctest::Approx(-M_PI * M_PI / 1440.0));
    CHECK(pfa_energy(StripScreen(1.0, 0.5), ChannelSet::Dirichlet).value ==
          doctest::Approx(-M_PI * M_PI / 2880.0));
}

TEST_CASE("edge-coefficient fit recovers synthetic expansions") {
    StripScreen screen(1.0, 0.5);
    const double alpha_a = M_PI * M_PI / 720.0;
    const double alpha_p = -0.003;
    const double c = 0.0007;
    const double e3 = -0.0002;
    std::vector<std::pair<double, EnergyResult>> pts;
    for (double d : {0.08, 0.1, 0.12, 0.15, 0.18, 0.2, 0.22, 0.25}) {
        EnergyResult r;
        r.value = -(alpha_a * screen.fill() + alpha_p * 2.0 * d + c * d * d + e3 * d * d * d);
        pts.emplace_back(d, r);
    }
    const EdgeFit fit = fit_edge_coefficients(pts, screen, true);
    CHECK(fit.alpha_a == doctest::Approx(alpha_a).epsilon(1e-9));
    CHECK(fit.alpha_p == doctest::Approx(alpha_p).epsilon(1e-7));
    CHECK(fit.rms_residual < 1e-12);

    // ill-conditioned: all separations identical
    std::vector<std::pair<double, EnergyResult>> degenerate(6, pts.front());
    CHECK_THROWS(fit_edge_coefficients(degenerate, screen, true));

    // too few points
    std::vector<std::pair<double, EnergyResult>> few(pts.begin(), pts.begin() + 3);
    CHECK_THROWS_AS(fit_edge_coefficients(few, screen, true), config_error);
}

TEST_CASE("attraction sign invariant") {
    for (double fill : {0.25, 0.75}) {
        EnergyRequest req = strips_request(fill, 1.1, ChannelSet::EM);
        CHECK(energy_first_reflection(req).value < 0.0);
    }
}

TEST_CASE("request validation") {
    EnergyRequest req = strips_request(0.5, 1.0, ChannelSet::EM);
    req.separation = -1.0;
    CHECK_THROWS_AS(req.validate(), config_error);
    req.separation = 1.0;
    req.quad.n_kappa = 0;
    CHECK_THROWS_AS(req.validate(), config_error);
}

TEST_CASE("worker count does not change results") {
    EnergyRequest req = strips_request(0.5, 0.9, ChannelSet::EM);
    req.quad.n_kappa = 24;
    req.quad.n_kx = 4;
    req.workers = 1;
    const double serial = energy_first_reflection(req).value;
    req.workers = 7;
    const double parallel = energy_first_reflection(req).value;
    CHECK(serial == parallel);
}
