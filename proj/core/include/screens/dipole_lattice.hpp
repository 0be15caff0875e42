#pragma once

// Casimir-Polder treatment of small perforations via their complements:
// disc polarizabilities, retarded dipole-dipole pair energies, square-lattice
// sums, lateral forces between perforated plates, and the hole correction to
// the plate-plate energy. Natural units throughout: energies are coefficients
// of hbar*c (an energy times length), lengths in the caller's unit.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "screens/errors.hpp"

namespace screens {

/// 3x3 symmetric static electric polarizability, units length^3.
/// The z axis is the plate normal.
struct PolarizabilityTensor {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();

    PolarizabilityTensor() = default;
    explicit PolarizabilityTensor(const Eigen::Matrix3d& t);

    static PolarizabilityTensor isotropic(double alpha);
    double trace() const { return m.trace(); }
};

/// Perfectly conducting disc of radius R in the z = const plane:
/// diag(4R^3/3pi, 4R^3/3pi, 0); only in-plane components are nonzero.
PolarizabilityTensor disc_polarizability(double radius);

/// Retarded (Casimir-Polder) interaction of two static dipoles separated by
/// r_vec:  E = -(hbar c / 8 pi r^7) (13 tr(a1 a2) - 56 tr(a1 a2 W)
///              + 63 tr(W a1 W a2)),  W = n n^T.
double dipole_pair_energy(const PolarizabilityTensor& alpha1, const PolarizabilityTensor& alpha2,
                          const Eigen::Vector3d& r_vec);

/// Partial derivative of dipole_pair_energy with respect to the x component
/// of r_vec, in closed form (no finite differences).
double dipole_pair_energy_dx(const PolarizabilityTensor& alpha1, const PolarizabilityTensor& alpha2,
                             const Eigen::Vector3d& r_vec);

/// First-reflection energy of a static polarizable object a distance d from a
/// perfect mirror, evaluated by quadrature of the imaginary-frequency
/// plane-wave integral. Scales as 1/d^4; for isotropic alpha it reproduces
/// -3 hbar c alpha / (8 pi d^4).
double dipole_plate_energy(const PolarizabilityTensor& alpha, double separation);

/// Square lattice of identical discs in each of two parallel plates.
struct LatticeSpec {
    double spacing = 1.0;      // hole center-to-center distance
    double radius = 0.1;       // hole radius, must satisfy radius < spacing/2
    double separation = 2.0;   // plate-plate distance d
    double displacement = 0.0; // lateral offset of plate 1 along a lattice axis
    int n_cut = 96;            // real-space shell cutoff (tail falls as n_cut^-5)
    double tol = 1e-6;         // requested relative tolerance of the lattice sum

    void validate() const;
    /// Validity caveats (dilute-hole and dipole-approximation ratios, ignored
    /// magnetic response). Non-fatal.
    std::vector<std::string> warnings() const;
};

/// Hole-hole interaction energy per unit cell: one disc of plate 1 at lateral
/// offset `displacement` against all discs of plate 2 within n_cut shells.
/// Throws convergence_error when the r^-7 tail bound exceeds spec.tol.
double lattice_energy(const LatticeSpec& spec);

/// Lateral force per unit area, F = -dE/d(displacement) / spacing^2, from the
/// closed-form derivative of the pair terms.
double lateral_force(const LatticeSpec& spec);

/// Plate-plate energy per unit area corrected for a dilute square array of
/// holes in one plate opposite a solid mirror: the parallel-plate value minus
/// the complementary disc's mirror interaction per cell area. Removing metal
/// weakens the attraction.
struct HoleCorrectedEnergy {
    double total;           // energy per unit area, units hbar c / length^3
    double plate_term;      // -pi^2/(720 d^3)
    double hole_correction; // positive
    std::vector<std::string> warnings;
};

HoleCorrectedEnergy hole_corrected_plate_energy(const LatticeSpec& spec);

} // namespace screens
