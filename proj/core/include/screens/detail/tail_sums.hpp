#pragma once

// Numerical kernels behind the strip-grating Galerkin assembly:
//  - Bessel J arrays by Miller's downward recurrence,
//  - Hurwitz-zeta style tails by Euler-Maclaurin,
//  - oscillatory power tails sum_{p>P} z^p/(p+b)^s by iterated Abel summation,
//  - asymptotic tails of sum_p J_m(u_p) J_n(u_p) W(k_p) over diffraction orders.
//
// These are internal; the public solver contract lives in grating_solver.hpp.

#include <complex>
#include <vector>

namespace screens::detail {

/// J_0(u) .. J_{n_max}(u) for u >= 0 via Miller's algorithm with the
/// J_0 + 2*sum J_{2k} = 1 normalization. Good to ~1e-13 relative for the
/// argument range used here (u up to ~1e5).
void bessel_j_array(double u, int n_max, double* out);

/// sum_{j>=0} (x+j)^(-s) for integer s >= 2 and x >= 10 (Euler-Maclaurin).
double zeta_tail(int s, double x);

/// sum_{p>P} z^p / (p+beta)^s for |z| = 1, z != 1, integer s >= 1.
/// Iterated Abel summation; accuracy degrades as z -> 1 (callers guard the
/// fill fraction so that |1-z| stays bounded away from 0).
std::complex<double> osc_tail(int s, std::complex<double> z, double beta, long p_start);

/// One inverse-power term of the order-sum weight: weight *= coeff / |k|^s.
struct PowerWeight {
    int s;
    double coeff;
};

/// Tail sum_{|p| > p0} J_m(u_p) J_n(u_p) * W(|k_p|) with
///   k_p = (2*pi/period) * (p + beta),  u_p = k_p * a / 2,
///   W(|k|) = sum over weights of coeff * |k|^(-s),
/// evaluated from the two-term Hankel asymptotics of the J product. Valid when
/// |u_{p0+1}| is comfortably larger than max(m,n)^2; the caller chooses p0.
double bessel_product_tail(int m, int n, double strip_width, double period, double beta,
                           long p0, const std::vector<PowerWeight>& weights);

/// Precomputed zeta/oscillatory primitives shared by all (m, n) pairs of one
/// assembly. `s` indexes 2..s_max inclusive.
class TailPrimitives {
public:
    TailPrimitives(double gamma, double beta, long p0, int s_max);

    double zeta_right(int s) const { return zt_right_[static_cast<size_t>(s)]; }
    double zeta_left(int s) const { return zt_left_[static_cast<size_t>(s)]; }
    std::complex<double> osc_right(int s) const { return osc_right_[static_cast<size_t>(s)]; }
    std::complex<double> osc_left(int s) const { return osc_left_[static_cast<size_t>(s)]; }
    double gamma() const { return gamma_; }
    double beta() const { return beta_; }
    long p0() const { return p0_; }
    int s_max() const { return s_max_; }

private:
    double gamma_;
    double beta_;
    long p0_;
    int s_max_;
    std::vector<double> zt_right_, zt_left_;
    std::vector<std::complex<double>> osc_right_, osc_left_;
};

/// bessel_product_tail evaluated from cached primitives.
double bessel_product_tail_cached(int m, int n, double strip_width, double period,
                                  const TailPrimitives& prim,
                                  const std::vector<PowerWeight>& weights);

} // namespace screens::detail
