#include "screens/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace screens {

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw config_error("gauss_legendre: n >= 1 required");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-angle initial guess.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[static_cast<size_t>(i)] = xm - xl * z;
        rule.nodes[static_cast<size_t>(n - 1 - i)] = xm + xl * z;
        const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return rule;
}

QuadratureRule graded_radial_rule(int n_total, double u_max) {
    if (n_total < 2) throw config_error("graded_radial_rule: need at least 2 nodes");
    // Geometric panel edges, ratio ~0.55 toward the origin.
    std::vector<double> edges{u_max};
    double e = u_max;
    while (e > 0.04 && edges.size() < 14) {
        e *= 0.55;
        edges.push_back(e);
    }
    edges.push_back(0.0);
    const int n_panels = static_cast<int>(edges.size()) - 1;
    const int per_panel = std::max(2, (n_total + n_panels - 1) / n_panels);
    QuadratureRule rule;
    for (int p = 0; p < n_panels; ++p) {
        const double lo = edges[static_cast<size_t>(p + 1)];
        const double hi = edges[static_cast<size_t>(p)];
        QuadratureRule panel = gauss_legendre(per_panel, lo, hi);
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return rule;
}

QuadratureRule midpoint_rule(int n, double length) {
    if (n < 1) throw config_error("midpoint_rule: n >= 1 required");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.assign(static_cast<size_t>(n), length / n);
    for (int i = 0; i < n; ++i)
        rule.nodes[static_cast<size_t>(i)] = (i + 0.5) * length / n;
    return rule;
}

namespace detail {

std::vector<double> parallel_map(int n, int workers, const std::function<double(int)>& f) {
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = f(i);
        return out;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[static_cast<size_t>(i)] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace detail

} // namespace screens
