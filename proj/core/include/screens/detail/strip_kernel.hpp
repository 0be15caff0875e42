#pragma once

// Spectral Galerkin assembly for zero-thickness perfectly conducting strip
// gratings at imaginary frequency.
//
// The source density on the (centered) strip is expanded in edge-adapted
// Chebyshev bases: T_n(t)/sqrt(1-t^2) for Dirichlet, U_n(t)*sqrt(1-t^2) for
// Neumann. Plane-wave moments of those bases are Bessel functions,
//   int T_n(t)/sqrt(1-t^2) e^{-iut} dt = pi (-i)^n J_n(u),
//   int U_n(t) sqrt(1-t^2) e^{-iut} dt = pi (-i)^n (n+1) J_{n+1}(u)/u,
// so the Galerkin matrices collapse to real order sums
//   S^D_mn = sum_p J_m(u_p) J_n(u_p) / (2 L q_p),
//   S^N_mn = sum_p Jt_m(u_p) Jt_n(u_p) q_p / (2 L),   Jt_n(u) = (n+1) J_{n+1}(u)/u,
// with k_p = kx + 2 pi p / L, u_p = k_p a/2, q_p = sqrt(kappa_bar^2 + k_p^2).
// (The hypersingular Neumann form equals its integrated-by-parts Maue form
// order by order: q |B|^2 = (|C|^2 + kappa_bar^2 |B|^2)/q with C = i k B.)
//
// Sums run directly up to an adaptive cutoff p0 and are closed beyond it with
// the Hankel asymptotics of the J product (tail_sums.hpp). Zero-offset
// reflection matrices come out real for every kx:
//   R^D[p,in] = -1/(2 L q_p)   * Jvec(u_p)^T  (S^D)^{-1} Jvec(u_in),
//   R^N[p,in] = +q_in / (2 L)  * Jtvec(u_p)^T (S^N)^{-1} Jtvec(u_in).

#include <Eigen/Dense>

namespace screens::detail {

struct StripKernelConfig {
    double period = 1.0;       // L
    double width = 0.5;        // a, centered about x = 0
    double kappa_bar_sq = 1.0; // kappa^2 + ky^2
    double kx = 0.0;           // Bloch momentum in [0, 2 pi / L)
    int n_basis = 10;          // N_b
    int order_cutoff = 10;     // P, reflection matrix spans orders -P..P
    double tail_safety = 12.0; // u_min = max(60, tail_safety * N_b^2)
    double solve_tol = 1e-10;  // accepted linear-solve residual
};

struct StripSolves {
    Eigen::MatrixXd reflection_dirichlet; // (2P+1) x (2P+1), zero offset
    Eigen::MatrixXd reflection_neumann;
    double residual_dirichlet = 0.0;
    double residual_neumann = 0.0;
    long direct_cutoff = 0; // p0 actually used
};

/// Galerkin matrices alone (exposed for convergence diagnostics and tests).
struct StripGalerkin {
    Eigen::MatrixXd dirichlet; // S^D, N_b x N_b
    Eigen::MatrixXd neumann;   // S^N
    long direct_cutoff = 0;
};

StripGalerkin assemble_strip_galerkin(const StripKernelConfig& cfg);

StripSolves solve_strip_both(const StripKernelConfig& cfg);

} // namespace screens::detail
