#include "screens/detail/strip_kernel.hpp"

#include <cmath>
#include <vector>

#include "screens/detail/tail_sums.hpp"
#include "screens/errors.hpp"

namespace screens::detail {

namespace {

struct AssemblyScratch {
    long p0 = 0;
    Eigen::MatrixXd sd; // S^D
    Eigen::MatrixXd sn; // S^N
    Eigen::MatrixXd jmat_d; // (2P+1) x N_b signed Dirichlet moments
    Eigen::MatrixXd jmat_n; // signed Neumann moments
    Eigen::VectorXd q_orders; // q_p for |p| <= P
};

long choose_cutoff(const StripKernelConfig& cfg) {
    const double gamma = cfg.width / cfg.period;
    const double u_min = std::max(60.0, cfg.tail_safety * static_cast<double>(cfg.n_basis) *
                                            static_cast<double>(cfg.n_basis));
    const double kb = std::sqrt(cfg.kappa_bar_sq);
    long p0 = static_cast<long>(std::ceil(u_min / (M_PI * gamma))) + 1;
    p0 = std::max(p0, static_cast<long>(cfg.order_cutoff) + 2);
    p0 = std::max(p0, static_cast<long>(std::ceil(4.0 * kb * cfg.period / (2.0 * M_PI))) + 2);
    p0 = std::max(p0, 32L);
    return p0;
}

// Signed Neumann moment Jt_n(u) = (n+1) J_{n+1}(u)/u from |u| values.
inline double jtilde(const double* j, int n, double abs_u, bool negative) {
    double v;
    if (abs_u == 0.0)
        v = (n == 0) ? 0.5 : 0.0;
    else
        v = (n + 1) * j[n + 1] / abs_u;
    // J_{n+1}(-u)/(-u) = (-1)^n J_{n+1}(u)/u
    if (negative && (n % 2 == 1)) v = -v;
    return v;
}

AssemblyScratch assemble(const StripKernelConfig& cfg) {
    const double L = cfg.period;
    const double a = cfg.width;
    const double kb2 = cfg.kappa_bar_sq;
    const int nb = cfg.n_basis;
    const int pcut = cfg.order_cutoff;

    if (!(L > 0.0) || !(a > 0.0) || a >= L)
        throw config_error("strip kernel: need 0 < width < period");
    if (nb < 1) throw config_error("strip kernel: n_basis >= 1 required");
    if (pcut < 0) throw config_error("strip kernel: order_cutoff >= 0 required");
    if (kb2 == 0.0 && cfg.kx == 0.0)
        throw config_error("strip kernel: degenerate frequency (kappa = kx = ky = 0)");

    AssemblyScratch out;
    out.p0 = choose_cutoff(cfg);
    out.sd = Eigen::MatrixXd::Zero(nb, nb);
    out.sn = Eigen::MatrixXd::Zero(nb, nb);
    out.jmat_d = Eigen::MatrixXd::Zero(2 * pcut + 1, nb);
    out.jmat_n = Eigen::MatrixXd::Zero(2 * pcut + 1, nb);
    out.q_orders = Eigen::VectorXd::Zero(2 * pcut + 1);

    const int n_j = nb + 1; // J indices used: 0..nb-1 (D), 1..nb (N)
    std::vector<double> j(static_cast<size_t>(n_j) + 1, 0.0);
    std::vector<double> dv(static_cast<size_t>(nb), 0.0); // signed J_m(u_p)
    std::vector<double> nv(static_cast<size_t>(nb), 0.0); // signed Jt_m(u_p)

    for (long p = -out.p0; p <= out.p0; ++p) {
        const double kp = cfg.kx + 2.0 * M_PI * static_cast<double>(p) / L;
        const double qp = std::sqrt(kb2 + kp * kp);
        const double u = 0.5 * kp * a;
        const double au = std::abs(u);
        const bool neg = u < 0.0;
        bessel_j_array(au, n_j, j.data());

        for (int m = 0; m < nb; ++m) {
            double jm = j[static_cast<size_t>(m)];
            if (neg && (m % 2 == 1)) jm = -jm;
            dv[static_cast<size_t>(m)] = jm;
            nv[static_cast<size_t>(m)] = jtilde(j.data(), m, au, neg);
        }

        const double wd = 1.0 / (2.0 * L * qp);
        const double wn = qp / (2.0 * L);
        for (int m = 0; m < nb; ++m) {
            const double dm = dv[static_cast<size_t>(m)];
            const double nm = nv[static_cast<size_t>(m)];
            for (int n = m; n < nb; ++n) {
                out.sd(m, n) += wd * dm * dv[static_cast<size_t>(n)];
                out.sn(m, n) += wn * nm * nv[static_cast<size_t>(n)];
            }
        }
        if (std::abs(p) <= pcut) {
            const long row = p + pcut;
            out.q_orders[row] = qp;
            for (int m = 0; m < nb; ++m) {
                out.jmat_d(row, m) = dv[static_cast<size_t>(m)];
                out.jmat_n(row, m) = nv[static_cast<size_t>(m)];
            }
        }
    }

    // Asymptotic closure of the order sums beyond p0.
    const double beta = cfg.kx * L / (2.0 * M_PI);
    TailPrimitives prim(a / L, beta, out.p0, 8);
    const std::vector<PowerWeight> wd_tail = {
        {1, 1.0 / (2.0 * L)}, {3, -kb2 / (4.0 * L)}, {5, 3.0 * kb2 * kb2 / (16.0 * L)}};
    const std::vector<PowerWeight> wn_tail = {
        {1, 2.0 / (a * a * L)}, {3, kb2 / (a * a * L)}, {5, -kb2 * kb2 / (4.0 * a * a * L)}};
    for (int m = 0; m < nb; ++m) {
        for (int n = m; n < nb; ++n) {
            out.sd(m, n) += bessel_product_tail_cached(m, n, a, L, prim, wd_tail);
            out.sn(m, n) += static_cast<double>((m + 1) * (n + 1)) *
                            bessel_product_tail_cached(m + 1, n + 1, a, L, prim, wn_tail);
        }
    }
    out.sd = out.sd.selfadjointView<Eigen::Upper>();
    out.sn = out.sn.selfadjointView<Eigen::Upper>();
    return out;
}

double solve_residual(const Eigen::MatrixXd& s, const Eigen::MatrixXd& x, const Eigen::MatrixXd& rhs) {
    const double scale = rhs.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (s * x - rhs).cwiseAbs().maxCoeff() / scale;
}

} // namespace

StripGalerkin assemble_strip_galerkin(const StripKernelConfig& cfg) {
    AssemblyScratch scratch = assemble(cfg);
    return StripGalerkin{std::move(scratch.sd), std::move(scratch.sn), scratch.p0};
}

StripSolves solve_strip_both(const StripKernelConfig& cfg) {
    AssemblyScratch scratch = assemble(cfg);
    const double L = cfg.period;
    const int dim = 2 * cfg.order_cutoff + 1;

    StripSolves out;
    out.direct_cutoff = scratch.p0;

    // Dirichlet: R = -diag(1/(2 L q)) Jd S^-1 Jd^T
    {
        Eigen::LLT<Eigen::MatrixXd> llt(scratch.sd);
        Eigen::MatrixXd x;
        if (llt.info() == Eigen::Success) {
            x = llt.solve(scratch.jmat_d.transpose());
        } else {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(scratch.sd);
            if (ldlt.info() != Eigen::Success)
                throw convergence_error("strip kernel: Dirichlet Galerkin matrix not factorizable");
            x = ldlt.solve(scratch.jmat_d.transpose());
        }
        out.residual_dirichlet = solve_residual(scratch.sd, x, scratch.jmat_d.transpose());
        if (!(out.residual_dirichlet <= cfg.solve_tol))
            throw convergence_error("strip kernel: Dirichlet solve residual " +
                                    std::to_string(out.residual_dirichlet) + " exceeds tolerance");
        Eigen::MatrixXd gram = scratch.jmat_d * x; // (2P+1)^2
        out.reflection_dirichlet.resize(dim, dim);
        for (int r = 0; r < dim; ++r)
            out.reflection_dirichlet.row(r) = -gram.row(r) / (2.0 * L * scratch.q_orders[r]);
    }

    // Neumann: R = +(1/(2 L)) Jn S^-1 Jn^T diag(q_in)
    {
        Eigen::LLT<Eigen::MatrixXd> llt(scratch.sn);
        Eigen::MatrixXd x;
        if (llt.info() == Eigen::Success) {
            x = llt.solve(scratch.jmat_n.transpose());
        } else {
            Eigen::LDLT<Eigen::MatrixXd> ldlt(scratch.sn);
            if (ldlt.info() != Eigen::Success)
                throw convergence_error("strip kernel: Neumann Galerkin matrix not factorizable");
            x = ldlt.solve(scratch.jmat_n.transpose());
        }
        out.residual_neumann = solve_residual(scratch.sn, x, scratch.jmat_n.transpose());
        if (!(out.residual_neumann <= cfg.solve_tol))
            throw convergence_error("strip kernel: Neumann solve residual " +
                                    std::to_string(out.residual_neumann) + " exceeds tolerance");
        Eigen::MatrixXd gram = scratch.jmat_n * x;
        out.reflection_neumann.resize(dim, dim);
        for (int c = 0; c < dim; ++c)
            out.reflection_neumann.col(c) = gram.col(c) * (scratch.q_orders[c] / (2.0 * L));
    }
    return out;
}

} // namespace screens::detail
