#pragma once

#include <optional>
#include <utility>

#include "screens/babinet.hpp"
#include "screens/wavemodes.hpp"

namespace screens {

/// A 1D-periodic, zero-thickness perforated screen: conducting strips of the
/// given width centered at offset + m*period, invariant along y.
struct StripScreen {
    double period = 1.0;
    double width = 0.5;
    double offset = 0.0;

    StripScreen() = default;
    StripScreen(double period_, double width_, double offset_ = 0.0);

    double fill() const { return width / period; }

    /// The complementary screen: metal and gaps interchanged. The complement
    /// occupies the gaps, so its strips sit half a period off the originals.
    /// Involution: complement(complement(s)) describes the same screen.
    StripScreen complement() const;

    bool is_full() const { return width >= period; }
    bool is_empty() const { return width <= 0.0; }
};

struct SolverParams {
    int n_basis = 12;        // edge-adapted Chebyshev basis functions per strip
    int order_cutoff = 12;   // P: output blocks span diffraction orders -P..P
    double tol = 1e-10;      // accepted linear-solve residual
    double tail_safety = 12; // direct-sum extent before asymptotic closure

    SolverParams() = default;
    SolverParams(int nb, int p, double eps = 1e-10);
    void validate() const;
};

/// Reflection matrix of the screen for one scalar boundary condition
/// (Dirichlet/EPol or Neumann/MPol) in the diffraction-order basis.
///
/// The Galerkin basis resolves incident orders with |u_p| = |k_p| a/2
/// comfortably below the basis count; entries coupling orders beyond that
/// converge exponentially as n_basis grows (see converged_reflection).
ReflectionBlock solve_reflection(const StripScreen& screen, Channel bc,
                                 const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                                 const SolverParams& params);

/// Transmission block. For a zero-thickness screen the scattered field is even
/// (Dirichlet) or odd (Neumann) in z, so T = R resp. T = -R entry for entry.
TransmissionBlock solve_transmission(const StripScreen& screen, Channel bc,
                                     const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                                     const SolverParams& params);

/// Both boundary conditions from one kernel assembly (the energy integrals
/// always need both channels at every quadrature node).
struct ScalarSolves {
    ReflectionBlock r_dirichlet;
    ReflectionBlock r_neumann;
    double residual_dirichlet = 0.0;
    double residual_neumann = 0.0;
};

ScalarSolves solve_both(const StripScreen& screen,
                        const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                        const SolverParams& params);

/// Full electromagnetic block set of a 1D-invariant perfect conductor screen.
/// Exact decomposition: the E channel (electric field along the strips) is the
/// Dirichlet problem, the M channel (magnetic field along the strips) the
/// Neumann problem, with ky folded into the dispersion; mixing blocks vanish.
EmBlockSet em_blocks_from_scalar(const StripScreen& screen,
                                 const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                                 const SolverParams& params);

/// Doubles n_basis (keeping order_cutoff >= n_basis) until the largest entry
/// change on the requested block drops below `entry_tol`, then returns the
/// converged block. Throws convergence_error if max_doublings is exhausted.
struct ConvergedReflection {
    ReflectionBlock block;
    int n_basis_used;
    double last_change;
};

ConvergedReflection converged_reflection(const StripScreen& screen, Channel bc,
                                         const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                                         SolverParams params, double entry_tol = 1e-8,
                                         int max_doublings = 6);

} // namespace screens
