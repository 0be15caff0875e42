#include "screens/detail/tail_sums.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace screens::detail {

void bessel_j_array(double u, int n_max, double* out) {
    assert(u >= 0.0);
    if (u == 0.0) {
        out[0] = 1.0;
        for (int n = 1; n <= n_max; ++n) out[n] = 0.0;
        return;
    }
    // Downward Miller recurrence, normalized by J0 + 2*sum_k J_{2k} = 1.
    // The start order sits past the turning point n ~ u.
    int start = n_max + 16 + static_cast<int>(std::ceil(u + 12.0 * std::cbrt(u + 1.0)));
    if (start % 2) ++start;

    double j_hi = 0.0;     // J_{k+1}, unnormalized
    double j = 1e-300;     // J_k
    double norm = 0.0;
    const double two_over_u = 2.0 / u;
    for (int k = start; k >= 1; --k) {
        const double j_lo = (two_over_u * k) * j - j_hi; // J_{k-1}
        j_hi = j;
        j = j_lo;
        const int order = k - 1;
        if (order <= n_max) out[order] = j;
        if (order % 2 == 0) norm += (order == 0) ? j : 2.0 * j;
        if (std::abs(j) > 1e250) {
            const double sc = 1e-250;
            j *= sc;
            j_hi *= sc;
            norm *= sc;
            for (int i = std::max(order, 0); i <= n_max; ++i) out[i] *= sc;
        }
    }
    const double inv = 1.0 / norm;
    for (int n = 0; n <= n_max; ++n) out[n] *= inv;
}

double zeta_tail(int s, double x) {
    assert(s >= 2);
    assert(x > 2.0);
    // Euler-Maclaurin: integral + half endpoint + Bernoulli corrections.
    static const double bern_over_fact[5] = {
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
    const double xs = std::pow(x, -static_cast<double>(s));
    double total = xs * x / (s - 1) + 0.5 * xs;
    double poch = static_cast<double>(s); // s (s+1) ... rising factorial
    double xpow = xs / x;                 // x^{-s-1}
    for (int k = 1; k <= 5; ++k) {
        total += bern_over_fact[k - 1] * poch * xpow;
        poch *= (s + 2 * k - 1) * (s + 2 * k);
        xpow /= x * x;
    }
    return total;
}

namespace {

// d-th backward difference of g(p) = (p+beta)^(-s).
double power_difference(int s, double beta, long p, int depth) {
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= depth; ++i) {
        const double g = std::pow(static_cast<double>(p - i) + beta, -static_cast<double>(s));
        acc += (i % 2 == 0 ? binom : -binom) * g;
        binom = binom * (depth - i) / (i + 1);
    }
    return acc;
}

} // namespace

std::complex<double> osc_tail(int s, std::complex<double> z, double beta, long p_start) {
    assert(s >= 1);
    const std::complex<double> one_minus_z = 1.0 - z;
    if (std::abs(one_minus_z) < 1e-3)
        throw std::domain_error("osc_tail: z too close to 1 (degenerate fill fraction)");

    constexpr int depth = 8;
    constexpr int n_direct = 256;

    // Deepest level: direct sum of the depth-times differenced series.
    std::complex<double> acc = 0.0;
    const double theta = std::arg(z);
    std::complex<double> zp = std::polar(1.0, theta * static_cast<double>(p_start + depth + 1));
    for (long p = p_start + depth + 1; p <= p_start + depth + n_direct; ++p) {
        acc += zp * power_difference(s, beta, p, depth);
        zp *= z;
    }
    // Backward substitution through the Abel levels.
    for (int d = depth - 1; d >= 0; --d) {
        const long p = p_start + d + 1;
        const std::complex<double> head =
            std::polar(1.0, theta * static_cast<double>(p)) * power_difference(s, beta, p, d);
        acc = (head + acc) / one_minus_z;
    }
    return acc;
}

TailPrimitives::TailPrimitives(double gamma, double beta, long p0, int s_max)
    : gamma_(gamma), beta_(beta), p0_(p0), s_max_(s_max) {
    zt_right_.assign(static_cast<size_t>(s_max + 1), 0.0);
    zt_left_.assign(static_cast<size_t>(s_max + 1), 0.0);
    osc_right_.assign(static_cast<size_t>(s_max + 1), {0.0, 0.0});
    osc_left_.assign(static_cast<size_t>(s_max + 1), {0.0, 0.0});
    const std::complex<double> z = std::polar(1.0, 2.0 * M_PI * gamma);
    for (int s = 2; s <= s_max; ++s) {
        zt_right_[static_cast<size_t>(s)] = zeta_tail(s, static_cast<double>(p0 + 1) + beta);
        zt_left_[static_cast<size_t>(s)] = zeta_tail(s, static_cast<double>(p0 + 1) - beta);
        osc_right_[static_cast<size_t>(s)] = osc_tail(s, z, beta, p0);
        osc_left_[static_cast<size_t>(s)] = osc_tail(s, z, -beta, p0);
    }
}

namespace {

// cos(k*pi/2), sin(k*pi/2) for integer k, exactly.
int cos_half_pi(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return 1;
        case 2: return -1;
        default: return 0;
    }
}
int sin_half_pi(int k) {
    switch (((k % 4) + 4) % 4) {
        case 1: return 1;
        case 3: return -1;
        default: return 0;
    }
}

} // namespace

double bessel_product_tail_cached(int m, int n, double strip_width, double period,
                                  const TailPrimitives& prim,
                                  const std::vector<PowerWeight>& weights) {
    const double a = strip_width;
    const double gamma = prim.gamma();
    const double beta = prim.beta();
    const int sigma = m + n;
    const int delta = m - n;

    // Hankel asymptotics of J_m(u) J_n(u) through third order:
    //   [c1 + sin(Psi)]/(pi u) + [c2 + s2c cos(Psi)]/(pi u^2)
    //   + [c3 + s3 sin(Psi)]/(pi u^3),   Psi = 2u - sigma*pi/2,
    // with q1(v) = (4v^2-1)/8, p2(v) = -(4v^2-1)(4v^2-9)/128.
    const double q1m = (4.0 * m * m - 1.0) / 8.0;
    const double q1n = (4.0 * n * n - 1.0) / 8.0;
    const double p2m = -(4.0 * m * m - 1.0) * (4.0 * m * m - 9.0) / 128.0;
    const double p2n = -(4.0 * n * n - 1.0) * (4.0 * n * n - 9.0) / 128.0;
    const double c1 = cos_half_pi(delta);
    const double c2 = 0.5 * static_cast<double>(m * m - n * n) * sin_half_pi(delta);
    const double s2c = q1m + q1n;
    const double c3 = (p2m + p2n + q1m * q1n) * cos_half_pi(delta);
    const double s3 = p2m + p2n - q1m * q1n;

    const std::complex<double> i_pow_sigma = {static_cast<double>(cos_half_pi(sigma)),
                                              -static_cast<double>(sin_half_pi(sigma))}; // (-i)^sigma
    const std::complex<double> phase_right = std::polar(1.0, 2.0 * M_PI * gamma * beta) * i_pow_sigma;
    const std::complex<double> phase_left = std::polar(1.0, -2.0 * M_PI * gamma * beta) * i_pow_sigma;
    const double parity = (sigma % 2 == 0) ? 1.0 : -1.0;

    const double k_unit = period / (2.0 * M_PI); // (Lambda/2pi)^s factors
    double total = 0.0;
    for (const auto& w : weights) {
        const int s1 = w.s + 1;
        const int s2 = w.s + 2;
        const int s3c = w.s + 3;
        const double f1 = w.coeff * (2.0 / (a * M_PI)) * std::pow(k_unit, s1);
        const double f2 = w.coeff * (4.0 / (a * a * M_PI)) * std::pow(k_unit, s2);
        const double f3 = w.coeff * (8.0 / (a * a * a * M_PI)) * std::pow(k_unit, s3c);

        total += f1 * (c1 * prim.zeta_right(s1) + std::imag(phase_right * prim.osc_right(s1)));
        total += f2 * (c2 * prim.zeta_right(s2) + s2c * std::real(phase_right * prim.osc_right(s2)));
        total += f3 * (c3 * prim.zeta_right(s3c) + s3 * std::imag(phase_right * prim.osc_right(s3c)));

        total += parity * f1 * (c1 * prim.zeta_left(s1) + std::imag(phase_left * prim.osc_left(s1)));
        total += parity * f2 * (c2 * prim.zeta_left(s2) + s2c * std::real(phase_left * prim.osc_left(s2)));
        total += parity * f3 * (c3 * prim.zeta_left(s3c) + s3 * std::imag(phase_left * prim.osc_left(s3c)));
    }
    return total;
}

double bessel_product_tail(int m, int n, double strip_width, double period, double beta,
                           long p0, const std::vector<PowerWeight>& weights) {
    int s_max = 2;
    for (const auto& w : weights) s_max = std::max(s_max, w.s + 3);
    TailPrimitives prim(strip_width / period, beta, p0, s_max);
    return bessel_product_tail_cached(m, n, strip_width, period, prim, weights);
}

} // namespace screens::detail
