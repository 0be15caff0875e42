#pragma once

// The Babinet Principle as exact amplitude-level transforms between a screen
// and its complement, plus residual checks usable against any solver.
//
// Scalar relations (identity matrix in the order basis):
//   R^D(S) - R^N(S~) = -I        R^N(S) - R^D(S~) = +I
//   T^D(S) + T^N(S~) = -I        T^N(S) + T^D(S~) = -I
// with channel flip D <-> N between screen and complement.
//
// Electromagnetic relations, in the polarization basis fixed by
// em_blocks_from_scalar (E = field along strips = Dirichlet-like, M = Neumann-
// like). The diagonal blocks inherit the scalar relations under E<->M
// exchange; both full-plane/null-set limits hold entry-exact:
//   R~^EE = R^MM - I    R~^MM = R^EE + I    R~^EM = -R^ME    R~^ME = -R^EM
//   T~^EE = -I - T^MM   T~^MM = -I - T^EE   T~^EM = +T^ME    T~^ME = +T^EM

#include "screens/wavemodes.hpp"

namespace screens {

/// The eight electromagnetic scattering blocks of one screen on one basis.
struct EmBlockSet {
    ReflectionBlock r_ee, r_em, r_me, r_mm;
    TransmissionBlock t_ee, t_em, t_me, t_mm;

    void check_shared_basis() const;
};

/// Scalar Babinet transform of a reflection block: returns the complementary
/// screen's block in the flipped channel.
ReflectionBlock complement_reflection_scalar(const ReflectionBlock& r);

/// Scalar Babinet transform of a transmission block (channel flipped).
TransmissionBlock complement_transmission_scalar(const TransmissionBlock& t);

/// Electromagnetic Babinet transform: block set of the complementary screen.
EmBlockSet complement_em(const EmBlockSet& blocks);

/// Maximum absolute entry over all scalar Babinet constraint matrices for a
/// (screen, complement) pair of independently solved blocks. Zero for an exact
/// Babinet pair. The blocks must share one order basis.
struct ScalarBlockSet {
    ReflectionBlock r_d, r_n;
    TransmissionBlock t_d, t_n;
};

double babinet_residual(const ScalarBlockSet& screen, const ScalarBlockSet& complement);

/// Electromagnetic variant over the constraints of the EM matrix relations.
double babinet_residual(const EmBlockSet& screen, const EmBlockSet& complement);

/// Mirror-set and empty-set builders for the limiting checks.
EmBlockSet em_mirror_set(const OrderBasis& basis);
EmBlockSet em_empty_set(const OrderBasis& basis);

} // namespace screens
