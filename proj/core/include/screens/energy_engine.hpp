#pragma once

// Casimir interaction energy per unit area between a structured screen and an
// infinite perfect mirror (or between two mirrors), from the round-trip
// trace-log formula at imaginary frequency:
//
//   E / (hbar c A) = 1/(8 pi^2) int_BZ dkx int_0^inf kbar dkbar
//                        sum_channels tr ln(I - M),
//   M = R0 U R U,   U = diag(e^{-q_p d}),
//
// with the (kappa, ky) half-plane reduced to the radial kbar integral (the 1D
// screens depend on transverse momenta only through kbar^2 = kappa^2 + ky^2).
// The first-reflection form replaces tr ln(I - M) by -tr M. Results are
// reported as dimensionless coefficients of hbar c A / d^3.

#include <utility>
#include <vector>

#include "screens/grating_solver.hpp"
#include "screens/quadrature.hpp"
#include "screens/wavemodes.hpp"

namespace screens {

enum class ReflectionOrder { First, Full };

/// Which scalar channels to sum. EM is the exact electromagnetic result for
/// 1D-invariant perfect conductors: E-pol (Dirichlet) + M-pol (Neumann).
enum class ChannelSet { EM, Dirichlet, Neumann };

const char* channel_set_name(ChannelSet c);
ChannelSet channel_set_from_name(const std::string& name);

struct EnergyResult {
    double value = 0.0; // coefficient of hbar c A / d^3; negative = attraction
    ReflectionOrder order = ReflectionOrder::First;
    double quad_error = 0.0; // estimated relative quadrature error
    struct Meta {
        int order_cutoff = 0;
        int n_basis = 0;
        int n_kappa = 0;
        int n_kx = 0;
    } meta;
};

struct EnergyRequest {
    StripScreen screen;
    ChannelSet channels = ChannelSet::EM;
    double separation = 1.0;
    SolverParams solver;
    QuadratureSpec quad;
    int workers = 0; // 0 = hardware concurrency; result is worker-independent

    void validate() const;
};

/// Round-trip operator M = R0 * U * R * U in the shared order basis.
MatrixXcd roundtrip(const ReflectionBlock& r0, const TranslationDiagonal& u, const ReflectionBlock& r);

EnergyResult energy_full(const EnergyRequest& request);
EnergyResult energy_first_reflection(const EnergyRequest& request);

/// Parallel plates (both sides infinite mirrors): 1D closed quadrature,
/// at machine accuracy. First reflection is exactly -1/(16 pi^2) per channel.
EnergyResult plates_energy(ChannelSet channels, ReflectionOrder order);

/// Proximity force approximation: fill fraction times the parallel-plate
/// coefficient (-pi^2/720 for EM, half per scalar channel).
EnergyResult pfa_energy(const StripScreen& screen, ChannelSet channels);

/// Least-squares fit of the small-separation expansion
///   E(d)/(hbar c A) = -(alpha_A f / d^3 + alpha_P (2/period) / d^2 + c / d [+ e])
/// over a list of (d, EnergyResult) pairs. The cubic term absorbs the next
/// order so the perimeter coefficient is not biased by it.
struct EdgeFit {
    double alpha_a = 0.0;
    double alpha_p = 0.0;
    double alpha_p_err = 0.0; // covariance-based 1-sigma uncertainty
    double curvature = 0.0;   // coefficient of the c/d term
    double cubic = 0.0;       // optional d^3 coefficient (0 if not fitted)
    double rms_residual = 0.0;
    int n_points = 0;
};

EdgeFit fit_edge_coefficients(const std::vector<std::pair<double, EnergyResult>>& results,
                              const StripScreen& screen, bool fit_cubic_term = true);

} // namespace screens
