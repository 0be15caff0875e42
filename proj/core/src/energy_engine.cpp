#include "screens/energy_engine.hpp"

#include <cmath>

#include "screens/detail/strip_kernel.hpp"

namespace screens {

const char* channel_set_name(ChannelSet c) {
    switch (c) {
        case ChannelSet::EM: return "em";
        case ChannelSet::Dirichlet: return "dirichlet";
        case ChannelSet::Neumann: return "neumann";
    }
    return "?";
}

ChannelSet channel_set_from_name(const std::string& name) {
    if (name == "em") return ChannelSet::EM;
    if (name == "dirichlet" || name == "d") return ChannelSet::Dirichlet;
    if (name == "neumann" || name == "n") return ChannelSet::Neumann;
    throw config_error("unknown channel set '" + name + "'");
}

void EnergyRequest::validate() const {
    solver.validate();
    quad.validate();
    if (!(separation > 0.0)) throw config_error("EnergyRequest: separation must be positive");
    if (workers < 0) throw config_error("EnergyRequest: workers must be >= 0");
}

MatrixXcd roundtrip(const ReflectionBlock& r0, const TranslationDiagonal& u, const ReflectionBlock& r) {
    if (!r0.basis.same_basis(u.basis) || !r.basis.same_basis(u.basis))
        throw config_error("roundtrip: blocks and translation must share one order basis");
    const Eigen::VectorXcd diag = u.entries.cast<Complex>();
    return r0.matrix * diag.asDiagonal() * r.matrix * diag.asDiagonal();
}

namespace {

struct ChannelSigns {
    bool dirichlet = true;
    bool neumann = true;
};

ChannelSigns channels_of(ChannelSet set) {
    switch (set) {
        case ChannelSet::EM: return {true, true};
        case ChannelSet::Dirichlet: return {true, false};
        case ChannelSet::Neumann: return {false, true};
    }
    return {true, true};
}

double logdet_i_minus(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - m;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const auto& lum = lu.matrixLU();
    double log_abs = 0.0;
    int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
    for (int i = 0; i < n; ++i) {
        const double d = lum(i, i);
        if (d < 0.0) sign = -sign;
        if (d == 0.0) sign = 0;
        log_abs += std::log(std::abs(d));
    }
    if (sign <= 0)
        throw invariant_violation(
            "energy_engine: det(I - M) <= 0; round-trip spectral radius reached unity "
            "(upstream solver violation, not physics)");
    return log_abs;
}

// Orders beyond this round-trip decay contribute below double precision.
constexpr double kDropExponent = 8.0;

struct NodeParams {
    int order_cutoff;
    int n_basis;
};

// Deterministic per-node truncation: orders whose round-trip weight
// exp(-2 q_p d) falls below exp(-(u_max + kDropExponent)) are dropped, and the
// basis is sized to resolve the orders kept. Both are capped by the request.
NodeParams node_params(const EnergyRequest& req, double kappa_bar) {
    const double d = req.separation;
    const double L = req.screen.period;
    const double gamma = req.screen.fill();
    const double u_drop = req.quad.u_max + kDropExponent;
    const double q_drop = u_drop / (2.0 * d);
    double k_drop_sq = q_drop * q_drop - kappa_bar * kappa_bar;
    int p_need = 1;
    if (k_drop_sq > 0.0)
        p_need = static_cast<int>(std::ceil(std::sqrt(k_drop_sq) * L / (2.0 * M_PI))) + 1;
    NodeParams out;
    out.order_cutoff = std::min(req.solver.order_cutoff, std::max(1, p_need));
    const int resolve = static_cast<int>(std::ceil(2.0 * gamma * out.order_cutoff)) + 8;
    out.n_basis = std::min(req.solver.n_basis, std::max(6, resolve));
    return out;
}

// Integrand F(kbar, kx) = sum_channels tr ln(I - M) (or -tr M in first
// reflection) for the screen-vs-mirror round trip.
double node_integrand(const EnergyRequest& req, ReflectionOrder order, double kappa_bar, double kx) {
    const ChannelSigns ch = channels_of(req.channels);
    const double d = req.separation;
    const double L = req.screen.period;

    if (req.screen.is_empty()) return 0.0;

    const NodeParams np = node_params(req, kappa_bar);
    const int pc = np.order_cutoff;
    const int dim = 2 * pc + 1;

    Eigen::VectorXd uq(dim); // translation entries e^{-q_p d}
    for (int p = -pc; p <= pc; ++p) {
        const double kp = kx + 2.0 * M_PI * p / L;
        const double qp = std::sqrt(kappa_bar * kappa_bar + kp * kp);
        uq[p + pc] = std::exp(-qp * d);
    }

    Eigen::MatrixXd r_d, r_n;
    if (req.screen.is_full()) {
        if (ch.dirichlet) r_d = -Eigen::MatrixXd::Identity(dim, dim);
        if (ch.neumann) r_n = Eigen::MatrixXd::Identity(dim, dim);
    } else {
        detail::StripKernelConfig cfg;
        cfg.period = L;
        cfg.width = req.screen.width;
        cfg.kappa_bar_sq = kappa_bar * kappa_bar;
        cfg.kx = kx;
        cfg.n_basis = np.n_basis;
        cfg.order_cutoff = pc;
        cfg.tail_safety = req.solver.tail_safety;
        cfg.solve_tol = req.solver.tol;
        detail::StripSolves s = detail::solve_strip_both(cfg);
        r_d = std::move(s.reflection_dirichlet);
        r_n = std::move(s.reflection_neumann);
    }

    double total = 0.0;
    // Mirror: R0 = -I in the Dirichlet/E channel, +I in the Neumann/M channel.
    if (ch.dirichlet) {
        if (order == ReflectionOrder::First) {
            double tr = 0.0;
            for (int i = 0; i < dim; ++i) tr += -r_d(i, i) * uq[i] * uq[i];
            total += -tr;
        } else {
            // M = R0 U R U with R0 = -I; the trace-log only sees U R U.
            Eigen::MatrixXd m = -(uq.asDiagonal() * r_d * uq.asDiagonal());
            total += logdet_i_minus(m);
        }
    }
    if (ch.neumann) {
        if (order == ReflectionOrder::First) {
            double tr = 0.0;
            for (int i = 0; i < dim; ++i) tr += r_n(i, i) * uq[i] * uq[i];
            total += -tr;
        } else {
            Eigen::MatrixXd m = uq.asDiagonal() * r_n * uq.asDiagonal();
            total += logdet_i_minus(m);
        }
    }
    return total;
}

double integrate(const EnergyRequest& req, ReflectionOrder order, const QuadratureSpec& quad) {
    const double d = req.separation;
    const double L = req.screen.period;
    const QuadratureRule radial = graded_radial_rule(quad.n_kappa, quad.u_max);
    const QuadratureRule bz = midpoint_rule(quad.n_kx, M_PI / L);

    const int n_radial = static_cast<int>(radial.nodes.size());
    const int n_bz = static_cast<int>(bz.nodes.size());
    const int n_jobs = n_radial * n_bz;

    std::vector<double> vals = detail::parallel_map(n_jobs, req.workers, [&](int job) {
        const int ir = job % n_radial;
        const int jb = job / n_radial;
        const double u = radial.nodes[static_cast<size_t>(ir)];
        const double kx = bz.nodes[static_cast<size_t>(jb)];
        const double kappa_bar = u / (2.0 * d);
        return node_integrand(req, order, kappa_bar, kx);
    });

    // Fixed-order reduction: sum radial inside BZ outside.
    double acc = 0.0;
    for (int j = 0; j < n_bz; ++j) {
        double inner = 0.0;
        for (int i = 0; i < n_radial; ++i) {
            const double u = radial.nodes[static_cast<size_t>(i)];
            inner += radial.weights[static_cast<size_t>(i)] * u *
                     vals[static_cast<size_t>(j * n_radial + i)];
        }
        acc += bz.weights[static_cast<size_t>(j)] * inner;
    }
    // E d^3/(hbar c A) = d/(32 pi^2) * [2 * int_0^{pi/L} dkx] int u F du
    return (d / (32.0 * M_PI * M_PI)) * 2.0 * acc;
}

EnergyResult screen_energy(const EnergyRequest& req, ReflectionOrder order) {
    req.validate();
    EnergyResult out;
    out.order = order;
    out.value = integrate(req, order, req.quad);
    out.meta = {req.solver.order_cutoff, req.solver.n_basis, req.quad.n_kappa, req.quad.n_kx};
    if (req.quad.estimate_error) {
        QuadratureSpec half = req.quad;
        half.n_kappa = std::max(6, req.quad.n_kappa / 2);
        half.n_kx = std::max(1, req.quad.n_kx / 2);
        half.estimate_error = false;
        const double coarse = integrate(req, order, half);
        out.quad_error = std::abs(out.value - coarse) / std::max(std::abs(out.value), 1e-300);
    } else {
        out.quad_error = req.quad.tol;
    }
    return out;
}

} // namespace

EnergyResult energy_full(const EnergyRequest& request) {
    return screen_energy(request, ReflectionOrder::Full);
}

EnergyResult energy_first_reflection(const EnergyRequest& request) {
    return screen_energy(request, ReflectionOrder::First);
}

EnergyResult plates_energy(ChannelSet channels, ReflectionOrder order) {
    const int n_channels = (channels == ChannelSet::EM) ? 2 : 1;
    EnergyResult out;
    out.order = order;
    if (order == ReflectionOrder::First) {
        out.value = -n_channels / (16.0 * M_PI * M_PI);
        out.quad_error = 0.0;
        return out;
    }
    // Per channel: (1/(32 pi^2)) int_0^inf x^2 ln(1 - e^{-x}) dx = -pi^2/1440.
    auto quad_value = [](int n_nodes) {
        const QuadratureRule rule = graded_radial_rule(n_nodes, 60.0);
        double acc = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = rule.nodes[i];
            acc += rule.weights[i] * x * x * std::log1p(-std::exp(-x));
        }
        return acc / (32.0 * M_PI * M_PI);
    };
    const double fine = quad_value(160);
    const double coarse = quad_value(80);
    out.value = n_channels * fine;
    out.quad_error = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
    return out;
}

EnergyResult pfa_energy(const StripScreen& screen, ChannelSet channels) {
    const int n_channels = (channels == ChannelSet::EM) ? 2 : 1;
    EnergyResult out;
    out.order = ReflectionOrder::Full;
    out.value = screen.fill() * n_channels * (-M_PI * M_PI / 1440.0);
    out.quad_error = 0.0;
    return out;
}

EdgeFit fit_edge_coefficients(const std::vector<std::pair<double, EnergyResult>>& results,
                              const StripScreen& screen, bool fit_cubic_term) {
    const int n_params = fit_cubic_term ? 4 : 3;
    const int n = static_cast<int>(results.size());
    if (n < n_params + 1)
        throw config_error("fit_edge_coefficients: need at least " + std::to_string(n_params + 1) +
                           " separations");
    const double f = screen.fill();
    const double perimeter_density = 2.0 / screen.period;

    Eigen::MatrixXd x(n, n_params);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double d = results[static_cast<size_t>(i)].first;
        if (!(d > 0.0)) throw config_error("fit_edge_coefficients: separations must be positive");
        y[i] = -results[static_cast<size_t>(i)].second.value;
        x(i, 0) = f;
        x(i, 1) = perimeter_density * d;
        x(i, 2) = d * d;
        if (fit_cubic_term) x(i, 3) = d * d * d;
    }
    // Column scaling keeps the normal equations well conditioned across the
    // decade-wide separation window.
    Eigen::VectorXd scale(n_params);
    for (int j = 0; j < n_params; ++j) scale[j] = std::max(x.col(j).norm(), 1e-300);
    Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
    if (qr.rank() < n_params)
        throw convergence_error("fit_edge_coefficients: ill-conditioned fit (window too narrow)");
    Eigen::VectorXd coef = scale.cwiseInverse().asDiagonal() * qr.solve(y);

    const Eigen::VectorXd resid = y - x * coef;
    const double sigma2 = resid.squaredNorm() / std::max(1, n - n_params);
    const Eigen::MatrixXd xtx = (xs.transpose() * xs).inverse();

    EdgeFit fit;
    fit.alpha_a = coef[0];
    fit.alpha_p = coef[1];
    fit.alpha_p_err = std::sqrt(sigma2 * xtx(1, 1)) / scale[1];
    fit.curvature = coef[2];
    fit.cubic = fit_cubic_term ? coef[3] : 0.0;
    fit.rms_residual = std::sqrt(resid.squaredNorm() / n);
    fit.n_points = n;
    return fit;
}

} // namespace screens
