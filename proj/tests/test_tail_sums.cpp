#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "screens/detail/strip_kernel.hpp"
#include "screens/detail/tail_sums.hpp"

using namespace screens::detail;

TEST_CASE("bessel arrays match the standard library") {
    double j[24];
    for (double u : {0.0, 1e-9, 0.04, 0.9, 3.7, 12.0, 151.3, 2043.8}) {
        bessel_j_array(u, 23, j);
        for (int n = 0; n <= 23; ++n) {
            const double ref = std::cyl_bessel_j(n, u);
            const double tol = 1e-12 * std::max(1.0, std::abs(ref)) + 1e-13;
            CHECK(std::abs(j[n] - ref) < 5e3 * tol); // loose absolute floor near underflow
            if (std::abs(ref) > 1e-200) CHECK(std::abs(j[n] - ref) / std::abs(ref) < 1e-10);
        }
    }
}

TEST_CASE("zeta tails against direct summation") {
    for (int s : {2, 3, 5, 8}) {
        for (double x : {21.7, 133.0}) {
            long double brute = 0.0L;
            const long cut = 2000000;
            for (long k = cut - 1; k >= 0; --k) brute += powl(static_cast<long double>(x) + k, -s);
            // Euler-Maclaurin closure of the brute tail itself
            const long double xx = x + cut;
            brute += powl(xx, 1.0L - s) / (s - 1) + 0.5L * powl(xx, -(long double)s);
            const double mine = zeta_tail(s, x);
            CHECK(std::abs(mine - static_cast<double>(brute)) <
                  1e-13 * std::abs(static_cast<double>(brute)));
        }
    }
}

TEST_CASE("oscillatory tails against long direct sums") {
    for (double gamma : {0.25, 0.5, 0.8}) {
        const std::complex<double> z = std::polar(1.0, 2.0 * M_PI * gamma);
        for (int s : {2, 4, 7}) {
            for (double beta : {0.0, 0.41, -0.41}) {
                const long p0 = 37;
                const std::complex<double> mine = osc_tail(s, z, beta, p0);
                std::complex<double> brute = 0.0;
                std::complex<double> zp = std::polar(1.0, 2.0 * M_PI * gamma * (p0 + 1));
                for (long p = p0 + 1; p <= 3000000; ++p) {
                    brute += zp * std::pow(p + beta, -static_cast<double>(s));
                    zp *= z;
                }
                CHECK(std::abs(mine - brute) < 5e-9); // brute truncation dominates
            }
        }
    }
}

TEST_CASE("osc_tail rejects the degenerate z = 1") {
    CHECK_THROWS_AS(osc_tail(2, {1.0, 0.0}, 0.0, 10), std::domain_error);
}

TEST_CASE("galerkin assembly is insensitive to doubling the direct cutoff") {
    // The direct-sum/asymptotic-tail split must cancel internally: doubling
    // tail_safety (hence the crossover point) must leave S unchanged.
    for (double fill : {0.25, 0.5, 0.75}) {
        for (double kx : {0.0, 1.7}) {
            StripKernelConfig a;
            a.period = 1.0;
            a.width = fill;
            a.kappa_bar_sq = 2.3;
            a.kx = kx;
            a.n_basis = 8;
            a.order_cutoff = 8;
            a.tail_safety = 8.0;
            StripKernelConfig b = a;
            b.tail_safety = 32.0;
            const StripGalerkin ga = assemble_strip_galerkin(a);
            const StripGalerkin gb = assemble_strip_galerkin(b);
            CHECK(gb.direct_cutoff > 2 * ga.direct_cutoff);
            const double dd = (ga.dirichlet - gb.dirichlet).cwiseAbs().maxCoeff() /
                              gb.dirichlet.cwiseAbs().maxCoeff();
            const double dn = (ga.neumann - gb.neumann).cwiseAbs().maxCoeff() /
                              gb.neumann.cwiseAbs().maxCoeff();
            CHECK(dd < 2e-11);
            CHECK(dn < 2e-11);
        }
    }
}

TEST_CASE("galerkin matrices against brute-force order sums") {
    StripKernelConfig cfg;
    cfg.period = 1.0;
    cfg.width = 0.5;
    cfg.kappa_bar_sq = 1.9;
    cfg.kx = 0.9;
    cfg.n_basis = 6;
    cfg.order_cutoff = 6;
    const StripGalerkin g = assemble_strip_galerkin(cfg);
    // brute Dirichlet entries: sum_p J_m J_n / (2 L q_p), cut aligned to the
    // oscillation period (gamma = 1/2 -> period 4 in p)
    const long cut = 200000;
    for (int m = 0; m < cfg.n_basis; ++m) {
        for (int n = m; n < cfg.n_basis; ++n) {
            double brute = 0.0;
            for (long p = -cut; p <= cut; ++p) {
                const double kp = cfg.kx + 2.0 * M_PI * p;
                const double qp = std::sqrt(cfg.kappa_bar_sq + kp * kp);
                const double u = 0.5 * kp * cfg.width;
                double jm = std::cyl_bessel_j(m, std::abs(u));
                double jn = std::cyl_bessel_j(n, std::abs(u));
                if (u < 0 && ((m + n) % 2)) jm = -jm;
                brute += jm * jn / (2.0 * qp);
            }
            CHECK(std::abs(g.dirichlet(m, n) - brute) < 2e-6); // brute tail ~ 1/cut
        }
    }
}

TEST_CASE("continuity of the assembly in kx at the zone center") {
    StripKernelConfig a;
    a.period = 1.0;
    a.width = 0.5;
    a.kappa_bar_sq = 0.8;
    a.kx = 0.0;
    a.n_basis = 10;
    a.order_cutoff = 10;
    StripKernelConfig b = a;
    b.kx = 1e-9;
    const StripGalerkin ga = assemble_strip_galerkin(a);
    const StripGalerkin gb = assemble_strip_galerkin(b);
    CHECK((ga.dirichlet - gb.dirichlet).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((ga.neumann - gb.neumann).cwiseAbs().maxCoeff() < 1e-6);
}
