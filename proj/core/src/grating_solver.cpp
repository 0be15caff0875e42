#include "screens/grating_solver.hpp"

#include <cmath>

#include "screens/detail/strip_kernel.hpp"

namespace screens {

namespace {

// Tail summation conditions in the kernel degrade as the fill fraction
// approaches 0 or 1 (the order-sum oscillation degenerates); exact limits are
// special-cased, anything else in between is rejected with a clear message.
constexpr double kMinSolvableFill = 0.02;

bool is_degenerate_fill(const StripScreen& s) {
    const double f = s.fill();
    return f > kMinSolvableFill && f < 1.0 - kMinSolvableFill;
}

void check_solvable(const StripScreen& s) {
    if (s.is_full() || s.is_empty()) return;
    if (!is_degenerate_fill(s))
        throw config_error("strip solver: fill fraction " + std::to_string(s.fill()) +
                           " outside the supported range [" + std::to_string(kMinSolvableFill) +
                           ", " + std::to_string(1.0 - kMinSolvableFill) +
                           "] (exact 0 and 1 are handled analytically)");
}

detail::StripKernelConfig kernel_config(const StripScreen& screen, const ImaginaryFrequency& kappa,
                                        const TransverseMomentum& kt, const SolverParams& params) {
    detail::StripKernelConfig cfg;
    cfg.period = screen.period;
    cfg.width = screen.width;
    cfg.kappa_bar_sq = kappa.kappa * kappa.kappa + kt.ky * kt.ky;
    cfg.kx = kt.kx;
    cfg.n_basis = params.n_basis;
    cfg.order_cutoff = params.order_cutoff;
    cfg.tail_safety = params.tail_safety;
    cfg.solve_tol = params.tol;
    return cfg;
}

MatrixXcd with_offset(const Eigen::MatrixXd& r, const OrderBasis& basis, double offset) {
    if (offset == 0.0) return r.cast<Complex>();
    return apply_offset_phase(r.cast<Complex>(), basis, offset);
}

void check_entry_bound(const MatrixXcd& m, double tol, const char* what) {
    const double bound = 1.0 + 10.0 * std::max(tol, 1e-12);
    if (m.size() > 0 && m.cwiseAbs().maxCoeff() > bound)
        throw invariant_violation(std::string(what) +
                                  ": entry magnitude exceeds unity beyond solver tolerance");
}

} // namespace

StripScreen::StripScreen(double period_, double width_, double offset_)
    : period(period_), width(width_), offset(offset_) {
    if (!(period > 0.0))
        throw config_error("StripScreen: period must be positive");
    if (!(width >= 0.0) || width > period)
        throw config_error("StripScreen: width must lie in [0, period]");
    if (!std::isfinite(offset))
        throw config_error("StripScreen: offset must be finite");
}

StripScreen StripScreen::complement() const {
    double shifted = offset + 0.5 * period;
    if (shifted >= period) shifted -= period;
    return StripScreen(period, period - width, shifted);
}

SolverParams::SolverParams(int nb, int p, double eps) : n_basis(nb), order_cutoff(p), tol(eps) {
    validate();
}

void SolverParams::validate() const {
    if (n_basis < 1) throw config_error("SolverParams: n_basis >= 1 required");
    if (order_cutoff < n_basis)
        throw config_error("SolverParams: order_cutoff >= n_basis required (resolution hierarchy)");
    if (!(tol > 0.0)) throw config_error("SolverParams: tol must be positive");
    if (!(tail_safety >= 1.0)) throw config_error("SolverParams: tail_safety >= 1 required");
}

ScalarSolves solve_both(const StripScreen& screen, const ImaginaryFrequency& kappa,
                        const TransverseMomentum& kt, const SolverParams& params) {
    params.validate();
    check_solvable(screen);
    OrderBasis basis(screen.period, params.order_cutoff, kappa, kt);

    if (screen.is_full()) {
        auto [rd, td] = mirror_amplitudes(Channel::Dirichlet, basis);
        auto [rn, tn] = mirror_amplitudes(Channel::Neumann, basis);
        return ScalarSolves{std::move(rd), std::move(rn), 0.0, 0.0};
    }
    if (screen.is_empty()) {
        auto [rd, td] = empty_amplitudes(Channel::Dirichlet, basis);
        auto [rn, tn] = empty_amplitudes(Channel::Neumann, basis);
        return ScalarSolves{std::move(rd), std::move(rn), 0.0, 0.0};
    }

    detail::StripSolves ks = detail::solve_strip_both(kernel_config(screen, kappa, kt, params));
    MatrixXcd rd = with_offset(ks.reflection_dirichlet, basis, screen.offset);
    MatrixXcd rn = with_offset(ks.reflection_neumann, basis, screen.offset);
    check_entry_bound(rd, params.tol, "Dirichlet reflection");
    check_entry_bound(rn, params.tol, "Neumann reflection");
    return ScalarSolves{ReflectionBlock(Channel::Dirichlet, Channel::Dirichlet, basis, std::move(rd)),
                        ReflectionBlock(Channel::Neumann, Channel::Neumann, basis, std::move(rn)),
                        ks.residual_dirichlet, ks.residual_neumann};
}

ReflectionBlock solve_reflection(const StripScreen& screen, Channel bc,
                                 const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                                 const SolverParams& params) {
    ScalarSolves s = solve_both(screen, kappa, kt, params);
    ReflectionBlock out = is_dirichlet_like(bc) ? std::move(s.r_dirichlet) : std::move(s.r_neumann);
    out.channel_in = bc;
    out.channel_out = bc;
    return out;
}

TransmissionBlock solve_transmission(const StripScreen& screen, Channel bc,
                                     const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                                     const SolverParams& params) {
    if (screen.is_full()) {
        OrderBasis basis(screen.period, params.order_cutoff, kappa, kt);
        return mirror_amplitudes(bc, basis).second;
    }
    ReflectionBlock r = solve_reflection(screen, bc, kappa, kt, params);
    // Even scattered field for a Dirichlet monolayer source, odd for Neumann.
    MatrixXcd t = is_dirichlet_like(bc) ? r.matrix : MatrixXcd(-r.matrix);
    return TransmissionBlock(bc, bc, r.basis, std::move(t));
}

EmBlockSet em_blocks_from_scalar(const StripScreen& screen, const ImaginaryFrequency& kappa,
                                 const TransverseMomentum& kt, const SolverParams& params) {
    if (screen.is_full()) {
        OrderBasis basis(screen.period, params.order_cutoff, kappa, kt);
        return em_mirror_set(basis);
    }
    if (screen.is_empty()) {
        OrderBasis basis(screen.period, params.order_cutoff, kappa, kt);
        return em_empty_set(basis);
    }
    ScalarSolves s = solve_both(screen, kappa, kt, params);
    const OrderBasis& basis = s.r_dirichlet.basis;
    const int n = basis.dimension();
    const MatrixXcd zero = MatrixXcd::Zero(n, n);
    MatrixXcd t_e = s.r_dirichlet.matrix;  // T = R for the Dirichlet-like channel
    MatrixXcd t_m = -s.r_neumann.matrix;   // T = -R for the Neumann-like channel
    return EmBlockSet{
        ReflectionBlock(Channel::EPol, Channel::EPol, basis, s.r_dirichlet.matrix),
        ReflectionBlock(Channel::EPol, Channel::MPol, basis, zero),
        ReflectionBlock(Channel::MPol, Channel::EPol, basis, zero),
        ReflectionBlock(Channel::MPol, Channel::MPol, basis, s.r_neumann.matrix),
        TransmissionBlock(Channel::EPol, Channel::EPol, basis, std::move(t_e)),
        TransmissionBlock(Channel::EPol, Channel::MPol, basis, zero),
        TransmissionBlock(Channel::MPol, Channel::EPol, basis, zero),
        TransmissionBlock(Channel::MPol, Channel::MPol, basis, std::move(t_m)),
    };
}

ConvergedReflection converged_reflection(const StripScreen& screen, Channel bc,
                                         const ImaginaryFrequency& kappa, const TransverseMomentum& kt,
                                         SolverParams params, double entry_tol, int max_doublings) {
    params.order_cutoff = std::max(params.order_cutoff, params.n_basis);
    ReflectionBlock prev = solve_reflection(screen, bc, kappa, kt, params);
    for (int i = 0; i < max_doublings; ++i) {
        SolverParams next = params;
        next.n_basis = params.n_basis * 2;
        next.order_cutoff = std::max(params.order_cutoff, next.n_basis);
        ReflectionBlock cur = solve_reflection(screen, bc, kappa, kt, next);
        const int dim = std::min(prev.basis.dimension(), cur.basis.dimension());
        const int off_prev = (prev.basis.dimension() - dim) / 2;
        const int off_cur = (cur.basis.dimension() - dim) / 2;
        const double change = (cur.matrix.block(off_cur, off_cur, dim, dim) -
                               prev.matrix.block(off_prev, off_prev, dim, dim))
                                  .cwiseAbs()
                                  .maxCoeff();
        if (change < entry_tol)
            return ConvergedReflection{std::move(cur), next.n_basis, change};
        prev = std::move(cur);
        params = next;
    }
    throw convergence_error("converged_reflection: basis doubling did not reach tolerance " +
                            std::to_string(entry_tol));
}

} // namespace screens
