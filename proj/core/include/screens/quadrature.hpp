#pragma once

#include <functional>
#include <vector>

#include "screens/errors.hpp"

namespace screens {

/// Nodes and weights of an N-point Gauss-Legendre rule on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre rule over geometrically graded panels of (0, u_max],
/// refined toward 0. Open at both ends (no node touches 0), as the energy
/// integrands require.
QuadratureRule graded_radial_rule(int n_total, double u_max);

/// Midpoint rule on [0, L]: spectrally accurate for smooth even-periodic
/// integrands, and open (no endpoint evaluations).
QuadratureRule midpoint_rule(int n, double length);

/// Node counts and mappings for the energy quadratures.
struct QuadratureSpec {
    int n_kappa = 96;           // radial nodes in u = 2 kappa_bar d
    int n_kx = 12;              // Brillouin-zone midpoint nodes on [0, pi/period]
    double u_max = 40.0;        // radial cutoff; integrands carry exp(-u)
    double tol = 1e-4;          // target relative error, used in reporting
    bool estimate_error = true; // recompute on a halved grid to report quad_error

    void validate() const {
        if (n_kappa < 2 || n_kx < 1) throw config_error("QuadratureSpec: node counts too small");
        if (!(u_max > 1.0)) throw config_error("QuadratureSpec: u_max must exceed 1");
        if (!(tol > 0.0)) throw config_error("QuadratureSpec: tol must be positive");
    }
};

namespace detail {

/// Evaluates f(i) for i in [0, n) on `workers` threads and returns the results
/// in index order; the reduction order is fixed regardless of worker count.
std::vector<double> parallel_map(int n, int workers, const std::function<double(int)>& f);

} // namespace detail

} // namespace screens
