#include "screens/dipole_lattice.hpp"

#include <cmath>

#include "screens/quadrature.hpp"

namespace screens {

PolarizabilityTensor::PolarizabilityTensor(const Eigen::Matrix3d& t) : m(t) {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff()))
        throw config_error("PolarizabilityTensor: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + m.cwiseAbs().maxCoeff()))
        throw config_error("PolarizabilityTensor: eigenvalues must be non-negative");
}

PolarizabilityTensor PolarizabilityTensor::isotropic(double alpha) {
    if (alpha < 0.0) throw config_error("PolarizabilityTensor: alpha must be >= 0");
    return PolarizabilityTensor(alpha * Eigen::Matrix3d::Identity());
}

PolarizabilityTensor disc_polarizability(double radius) {
    if (radius < 0.0) throw config_error("disc_polarizability: radius must be >= 0");
    if (radius == 0.0) return PolarizabilityTensor();
    const double alpha = 4.0 * radius * radius * radius / (3.0 * M_PI);
    Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
    t(0, 0) = alpha;
    t(1, 1) = alpha;
    return PolarizabilityTensor(t);
}

double dipole_pair_energy(const PolarizabilityTensor& a1, const PolarizabilityTensor& a2,
                          const Eigen::Vector3d& r_vec) {
    const double r = r_vec.norm();
    if (!(r > 0.0)) throw config_error("dipole_pair_energy: zero separation");
    const Eigen::Vector3d n = r_vec / r;
    const double t1 = (a1.m * a2.m).trace();
    const double t2 = n.dot(a1.m * a2.m * n);
    const double t3 = n.dot(a1.m * n) * n.dot(a2.m * n);
    return -(13.0 * t1 - 56.0 * t2 + 63.0 * t3) / (8.0 * M_PI * std::pow(r, 7));
}

double dipole_pair_energy_dx(const PolarizabilityTensor& a1, const PolarizabilityTensor& a2,
                             const Eigen::Vector3d& r_vec) {
    const double r = r_vec.norm();
    if (!(r > 0.0)) throw config_error("dipole_pair_energy_dx: zero separation");
    const double x = r_vec.x();
    const double t1 = (a1.m * a2.m).trace();
    const Eigen::Matrix3d a_sym = 0.5 * (a1.m * a2.m + a2.m * a1.m);
    const double q12 = r_vec.dot(a_sym * r_vec); // r^T a1 a2 r (symmetrized)
    const double q1 = r_vec.dot(a1.m * r_vec);
    const double q2 = r_vec.dot(a2.m * r_vec);
    const double dq12 = 2.0 * (a_sym * r_vec).x();
    const double dq1 = 2.0 * (a1.m * r_vec).x();
    const double dq2 = 2.0 * (a2.m * r_vec).x();

    const double r9 = std::pow(r, 9);
    const double r11 = r9 * r * r;
    const double r13 = r11 * r * r;
    double d = 0.0;
    d += 13.0 * t1 * (-7.0) * x / r9;
    d += -56.0 * (dq12 / r9 + q12 * (-9.0) * x / r11);
    d += 63.0 * ((dq1 * q2 + q1 * dq2) / r11 + q1 * q2 * (-11.0) * x / r13);
    return -d / (8.0 * M_PI);
}

double dipole_plate_energy(const PolarizabilityTensor& alpha, double separation) {
    if (!(separation > 0.0)) throw config_error("dipole_plate_energy: separation must be positive");
    const double d = separation;
    const double a_par = alpha.m(0, 0) + alpha.m(1, 1);
    const double a_zz = alpha.m(2, 2);
    if (alpha.m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

    // E = -(1/pi) int dkappa int k dk  e^{-2qd}/(2q)
    //       [ (kappa^2 + q^2) a_par/2 + k^2 a_zz ],   q = sqrt(kappa^2 + k^2).
    // In polar coordinates (kappa = Q cos t, k = Q sin t) and x = 2 Q d this
    // separates into radial and angular factors:
    //   E = -1/(32 pi d^4) * int x^3 e^{-x} dx
    //       * int_0^{pi/2} sin t [ (1 + cos^2 t) a_par/2 + sin^2 t a_zz ] dt.
    const QuadratureRule radial = graded_radial_rule(96, 40.0);
    const QuadratureRule angular = gauss_legendre(32, 0.0, M_PI / 2.0);
    double rad = 0.0;
    for (size_t i = 0; i < radial.nodes.size(); ++i) {
        const double x = radial.nodes[i];
        rad += radial.weights[i] * x * x * x * std::exp(-x);
    }
    double ang = 0.0;
    for (size_t j = 0; j < angular.nodes.size(); ++j) {
        const double t = angular.nodes[j];
        const double st = std::sin(t);
        const double ct = std::cos(t);
        ang += angular.weights[j] * st * ((1.0 + ct * ct) * 0.5 * a_par + st * st * a_zz);
    }
    return -rad * ang / (32.0 * M_PI * d * d * d * d);
}

void LatticeSpec::validate() const {
    if (!(spacing > 0.0)) throw config_error("LatticeSpec: spacing must be positive");
    if (!(radius >= 0.0)) throw config_error("LatticeSpec: radius must be >= 0");
    if (radius >= 0.5 * spacing)
        throw config_error("LatticeSpec: holes overlap (radius >= spacing/2)");
    if (!(separation > 0.0)) throw config_error("LatticeSpec: separation must be positive");
    if (n_cut < 1) throw config_error("LatticeSpec: n_cut >= 1 required");
    if (!(tol > 0.0)) throw config_error("LatticeSpec: tol must be positive");
}

std::vector<std::string> LatticeSpec::warnings() const {
    std::vector<std::string> w;
    if (radius > 0.25 * separation)
        w.push_back("radius/separation exceeds 0.25: dipole approximation marginal");
    if (radius > 0.25 * spacing)
        w.push_back("radius/spacing exceeds 0.25: dilute-hole approximation marginal");
    w.push_back("magnetic polarizability ignored");
    return w;
}

namespace {

// Crude but safe bound on |pair energy| at distance r for identical discs.
double pair_envelope(double alpha, double r) {
    return (13.0 + 56.0 + 63.0) * 3.0 * alpha * alpha / (8.0 * M_PI * std::pow(r, 7));
}

} // namespace

// Lattice sums run over the displacement folded into (-spacing/2, spacing/2].
// The shell window is then symmetric about the folded position, which makes
// periodicity in the displacement and the antisymmetry of the force exact by
// construction rather than only up to the cutoff.
double folded_displacement(const LatticeSpec& spec) {
    return std::remainder(spec.displacement, spec.spacing);
}

double lattice_energy(const LatticeSpec& spec) {
    spec.validate();
    if (spec.radius == 0.0) return 0.0;
    const PolarizabilityTensor disc = disc_polarizability(spec.radius);
    const double alpha = disc.m(0, 0);
    const double delta = folded_displacement(spec);

    double acc = 0.0;
    for (int shell = 0; shell <= spec.n_cut; ++shell) {
        double shell_acc = 0.0;
        for (int mm = -shell; mm <= shell; ++mm) {
            for (int nn = -shell; nn <= shell; ++nn) {
                if (std::max(std::abs(mm), std::abs(nn)) != shell) continue;
                const Eigen::Vector3d r(mm * spec.spacing + delta, nn * spec.spacing,
                                        spec.separation);
                shell_acc += dipole_pair_energy(disc, disc, r);
            }
        }
        acc += shell_acc;
    }
    // r^-7 tail bound over the omitted shells: 8s sites per shell at in-plane
    // distance >= (s-1)*spacing. The sum converges like n_cut^-5, so tight
    // tolerances simply need a generous cutoff (the pair evaluations are cheap).
    double tail = 0.0;
    for (int s = spec.n_cut + 1; s < spec.n_cut + 4000; ++s) {
        const double rmin = std::hypot(std::max(0.0, (s - 1) * spec.spacing), spec.separation);
        const double term = 8.0 * s * pair_envelope(alpha, rmin);
        tail += term;
        if (term < 1e-300) break;
    }
    if (tail > spec.tol * std::abs(acc))
        throw convergence_error("lattice_energy: shell cutoff n_cut=" + std::to_string(spec.n_cut) +
                                " too small for requested tolerance");
    return acc;
}

double lateral_force(const LatticeSpec& spec) {
    spec.validate();
    if (spec.radius == 0.0) return 0.0;
    const PolarizabilityTensor disc = disc_polarizability(spec.radius);
    const double delta = folded_displacement(spec);
    double acc = 0.0;
    for (int shell = 0; shell <= spec.n_cut; ++shell) {
        for (int mm = -shell; mm <= shell; ++mm) {
            for (int nn = -shell; nn <= shell; ++nn) {
                if (std::max(std::abs(mm), std::abs(nn)) != shell) continue;
                const Eigen::Vector3d r(mm * spec.spacing + delta, nn * spec.spacing,
                                        spec.separation);
                acc += dipole_pair_energy_dx(disc, disc, r);
            }
        }
    }
    return -acc / (spec.spacing * spec.spacing);
}

HoleCorrectedEnergy hole_corrected_plate_energy(const LatticeSpec& spec) {
    spec.validate();
    HoleCorrectedEnergy out;
    out.warnings = spec.warnings();
    const double d = spec.separation;
    out.plate_term = -M_PI * M_PI / (720.0 * d * d * d);
    const double obj_plate = dipole_plate_energy(disc_polarizability(spec.radius), d);
    out.hole_correction = -obj_plate / (spec.spacing * spec.spacing);
    out.total = out.plate_term + out.hole_correction;
    return out;
}

} // namespace screens
