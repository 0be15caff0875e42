#include "screens/wavemodes.hpp"

#include <cmath>

namespace screens {

const char* channel_name(Channel c) {
    switch (c) {
        case Channel::Dirichlet: return "D";
        case Channel::Neumann: return "N";
        case Channel::EPol: return "E";
        case Channel::MPol: return "M";
    }
    return "?";
}

Channel channel_from_name(const std::string& name) {
    if (name == "D" || name == "dirichlet") return Channel::Dirichlet;
    if (name == "N" || name == "neumann") return Channel::Neumann;
    if (name == "E" || name == "e-pol") return Channel::EPol;
    if (name == "M" || name == "m-pol") return Channel::MPol;
    throw config_error("unknown channel label '" + name + "'");
}

double axial_decay(const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                   int order, double period) {
    if (!(period > 0.0))
        throw config_error("axial_decay: period must be positive");
    if (!(kappa.kappa >= 0.0))
        throw config_error("axial_decay: kappa must be >= 0");
    const double kp = kt.kx + 2.0 * M_PI * static_cast<double>(order) / period;
    return std::hypot(std::hypot(kappa.kappa, kt.ky), kp);
}

OrderBasis::OrderBasis(double period, int order_cutoff, ImaginaryFrequency kappa, TransverseMomentum kt)
    : period_(period), cutoff_(order_cutoff), kappa_(kappa), kt_(kt) {
    if (!(period > 0.0))
        throw config_error("OrderBasis: period must be positive");
    if (order_cutoff < 0)
        throw config_error("OrderBasis: order cutoff must be >= 0");
    if (kt.kx < 0.0 || kt.kx >= 2.0 * M_PI / period)
        throw config_error("OrderBasis: kx must lie in the first Brillouin zone [0, 2*pi/period)");
    q_.resize(static_cast<size_t>(dimension()));
    for (int p = -cutoff_; p <= cutoff_; ++p)
        q_[static_cast<size_t>(index_of(p))] = axial_decay(kappa_, kt_, p, period_);
}

double OrderBasis::order_momentum(int p) const {
    return kt_.kx + 2.0 * M_PI * static_cast<double>(p) / period_;
}

double OrderBasis::q(int p) const {
    return q_[static_cast<size_t>(index_of(p))];
}

double OrderBasis::kappa_bar_sq() const {
    return kappa_.kappa * kappa_.kappa + kt_.ky * kt_.ky;
}

bool OrderBasis::same_basis(const OrderBasis& other, double tol) const {
    return cutoff_ == other.cutoff_ &&
           std::abs(period_ - other.period_) <= tol * period_ &&
           std::abs(kappa_.kappa - other.kappa_.kappa) <= tol * (1.0 + kappa_.kappa) &&
           std::abs(kt_.kx - other.kt_.kx) <= tol * (1.0 + std::abs(kt_.kx)) &&
           std::abs(kt_.ky - other.kt_.ky) <= tol * (1.0 + std::abs(kt_.ky));
}

double ReflectionBlock::spectral_radius() const {
    if (matrix.rows() == 0) return 0.0;
    return matrix.eigenvalues().cwiseAbs().maxCoeff();
}

double ReflectionBlock::max_abs_entry() const {
    if (matrix.size() == 0) return 0.0;
    return matrix.cwiseAbs().maxCoeff();
}

double TransmissionBlock::max_abs_entry() const {
    if (matrix.size() == 0) return 0.0;
    return matrix.cwiseAbs().maxCoeff();
}

TranslationDiagonal translation_diagonal(const OrderBasis& basis, double separation) {
    if (!(separation >= 0.0))
        throw config_error("translation_diagonal: separation must be >= 0");
    Eigen::VectorXd e(basis.dimension());
    for (int i = 0; i < basis.dimension(); ++i)
        e[i] = std::exp(-basis.q_values()[static_cast<size_t>(i)] * separation);
    return TranslationDiagonal{basis, separation, std::move(e)};
}

std::pair<ReflectionBlock, TransmissionBlock> mirror_amplitudes(Channel channel, const OrderBasis& basis) {
    const int n = basis.dimension();
    const double r_sign = is_dirichlet_like(channel) ? -1.0 : 1.0;
    MatrixXcd r = r_sign * MatrixXcd::Identity(n, n);
    MatrixXcd t = -MatrixXcd::Identity(n, n);
    return {ReflectionBlock(channel, channel, basis, std::move(r)),
            TransmissionBlock(channel, channel, basis, std::move(t))};
}

std::pair<ReflectionBlock, TransmissionBlock> empty_amplitudes(Channel channel, const OrderBasis& basis) {
    const int n = basis.dimension();
    return {ReflectionBlock(channel, channel, basis, MatrixXcd::Zero(n, n)),
            TransmissionBlock(channel, channel, basis, MatrixXcd::Zero(n, n))};
}

Eigen::VectorXcd offset_phase(const OrderBasis& basis, double shift) {
    Eigen::VectorXcd phi(basis.dimension());
    for (int i = 0; i < basis.dimension(); ++i) {
        const int p = basis.order_of(i);
        const double arg = -2.0 * M_PI * static_cast<double>(p) * shift / basis.period();
        phi[i] = std::polar(1.0, arg);
    }
    return phi;
}

MatrixXcd apply_offset_phase(const MatrixXcd& m, const OrderBasis& basis, double shift) {
    const Eigen::VectorXcd phi = offset_phase(basis, shift);
    return phi.asDiagonal() * m * phi.conjugate().asDiagonal();
}

} // namespace screens
