#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "screens/errors.hpp"

namespace screens {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

/// Wavenumber kappa >= 0 along the Wick-rotated frequency axis (units 1/length).
/// All scattering in this toolkit happens at imaginary frequency, where the
/// round-trip matrices are real-valued and decay exponentially.
struct ImaginaryFrequency {
    double kappa = 0.0;

    ImaginaryFrequency() = default;
    explicit ImaginaryFrequency(double k) : kappa(k) {
        if (!(k >= 0.0) || !std::isfinite(k))
            throw config_error("ImaginaryFrequency: kappa must be finite and >= 0");
    }
};

/// Transverse momentum of the incident wave. kx is the Bloch momentum and must
/// lie in the first Brillouin zone [0, 2*pi/period) of the screen it is used
/// with; ky runs along the invariant direction of the 1D-periodic screens.
struct TransverseMomentum {
    double kx = 0.0;
    double ky = 0.0;

    TransverseMomentum() = default;
    TransverseMomentum(double kx_, double ky_) : kx(kx_), ky(ky_) {
        if (!std::isfinite(kx_) || !std::isfinite(ky_))
            throw config_error("TransverseMomentum: components must be finite");
    }
};

/// Boundary-condition / polarization channel label.
/// For the 1D-invariant screens treated here the electromagnetic problem
/// decouples exactly: EPol (electric field along the strips) solves the
/// Dirichlet problem, MPol (magnetic field along the strips) the Neumann one.
enum class Channel { Dirichlet, Neumann, EPol, MPol };

const char* channel_name(Channel c);
Channel channel_from_name(const std::string& name);

/// True for the channels that behave like a Dirichlet scalar problem.
inline bool is_dirichlet_like(Channel c) { return c == Channel::Dirichlet || c == Channel::EPol; }

/// Axial decay constant q_p = sqrt(kappa^2 + ky^2 + (kx + 2*pi*p/period)^2).
double axial_decay(const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                   int order, double period);

/// Discrete plane-wave (diffraction order) basis at fixed imaginary frequency
/// and transverse momentum. Orders run p = -cutoff..cutoff; basis dimension is
/// 2*cutoff + 1. Immutable after construction.
class OrderBasis {
public:
    OrderBasis(double period, int order_cutoff, ImaginaryFrequency kappa, TransverseMomentum kt);

    double period() const { return period_; }
    int order_cutoff() const { return cutoff_; }
    int dimension() const { return 2 * cutoff_ + 1; }
    const ImaginaryFrequency& frequency() const { return kappa_; }
    const TransverseMomentum& transverse() const { return kt_; }

    /// In-plane wavenumber of order p: kx + 2*pi*p/period.
    double order_momentum(int p) const;
    /// Axial decay constant q_p of order p.
    double q(int p) const;
    const std::vector<double>& q_values() const { return q_; }

    /// Row/column index of order p in the block matrices.
    int index_of(int p) const { return p + cutoff_; }
    int order_of(int index) const { return index - cutoff_; }

    /// kappa^2 + ky^2: the effective in-plane dispersion constant the strip
    /// solver sees after the invariant direction is folded in.
    double kappa_bar_sq() const;

    bool same_basis(const OrderBasis& other, double tol = 1e-12) const;

private:
    double period_;
    int cutoff_;
    ImaginaryFrequency kappa_;
    TransverseMomentum kt_;
    std::vector<double> q_;
};

/// Scattering amplitude block over an order basis. The trivial forward wave is
/// separated out, so an empty screen has R = T = 0 and a full mirror has
/// T = -I (it cancels the incident wave behind the screen).
struct ReflectionBlock {
    Channel channel_in = Channel::Dirichlet;
    Channel channel_out = Channel::Dirichlet;
    OrderBasis basis;
    MatrixXcd matrix;

    ReflectionBlock(Channel in, Channel out, OrderBasis b, MatrixXcd m)
        : channel_in(in), channel_out(out), basis(std::move(b)), matrix(std::move(m)) {}

    double spectral_radius() const;
    double max_abs_entry() const;
};

struct TransmissionBlock {
    Channel channel_in = Channel::Dirichlet;
    Channel channel_out = Channel::Dirichlet;
    OrderBasis basis;
    MatrixXcd matrix;

    TransmissionBlock(Channel in, Channel out, OrderBasis b, MatrixXcd m)
        : channel_in(in), channel_out(out), basis(std::move(b)), matrix(std::move(m)) {}

    double max_abs_entry() const;
};

/// Diagonal translation matrix with entries exp(-q_p * d). Entries lie in
/// (0, 1]; an entry equals 1 only for d = 0 (or a vanishing q_p).
struct TranslationDiagonal {
    OrderBasis basis;
    double separation = 0.0;
    Eigen::VectorXd entries;
};

TranslationDiagonal translation_diagonal(const OrderBasis& basis, double separation);

/// Analytically known amplitudes of the limiting-case screens.
/// Full mirror: R = -I for Dirichlet/EPol, R = +I for Neumann/MPol, T = -I for
/// every channel. Empty screen: R = T = 0.
std::pair<ReflectionBlock, TransmissionBlock> mirror_amplitudes(Channel channel, const OrderBasis& basis);
std::pair<ReflectionBlock, TransmissionBlock> empty_amplitudes(Channel channel, const OrderBasis& basis);

/// Diagonal phase conjugation representing a lateral shift of the screen by
/// `shift`: R(shifted) = Phi R Phi^H with Phi_p = exp(-i 2*pi*p*shift/period).
Eigen::VectorXcd offset_phase(const OrderBasis& basis, double shift);

/// Applies the lateral-shift conjugation to a block matrix.
MatrixXcd apply_offset_phase(const MatrixXcd& m, const OrderBasis& basis, double shift);

} // namespace screens
