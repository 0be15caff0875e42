#pragma once

// Brute-force oracles, independent of the implementation paths they check.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracles {

// Direct summation of sum_{|p| <= p_max} J_m(u_p) J_n(u_p) W(|k_p|) with
// std::cyl_bessel_j, plus a leading smooth-tail estimate beyond the cut. The
// cut is aligned with the oscillation period so the oscillatory remainder
// cancels to higher order.
inline double bessel_order_sum(int m, int n, double width, double period, double kx,
                               double kappa_bar_sq, long p_max) {
    double acc = 0.0;
    for (long p = -p_max; p <= p_max; ++p) {
        const double kp = kx + 2.0 * M_PI * static_cast<double>(p) / period;
        const double qp = std::sqrt(kappa_bar_sq + kp * kp);
        const double u = 0.5 * kp * width;
        const double au = std::abs(u);
        double jm = std::cyl_bessel_j(m, au);
        double jn = std::cyl_bessel_j(n, au);
        if (u < 0.0 && ((m + n) % 2 != 0)) jm = -jm;
        acc += jm * jn / (2.0 * period * qp);
    }
    // Smooth part of the remainder: 2 * cos((m-n)pi/2)/(pi u_p) / (2 L k_p)
    // summed over both tails ~ integral approximation.
    const int dmod = (((m - n) % 4) + 4) % 4;
    const double c1 = (dmod == 0) ? 1.0 : (dmod == 2 ? -1.0 : 0.0);
    if (c1 != 0.0) {
        const double gamma = width / period;
        // sum_{p>p_max} 2/(pi^2 gamma p * 2 L * 2 pi p / L) ~ 1/(pi^3 gamma p) summed
        acc += c1 * 2.0 / (2.0 * M_PI * M_PI * M_PI * gamma * static_cast<double>(p_max)) / period *
               period;
    }
    return acc;
}

// Small deterministic RNG for property tests (xorshift64*).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform(double lo, double hi) {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        const uint64_t z = state_ * 0x2545f4914f6cdd1dull;
        const double x = static_cast<double>(z >> 11) / 9007199254740992.0;
        return lo + (hi - lo) * x;
    }
    int uniform_int(int lo, int hi) { // inclusive
        const int v = lo + static_cast<int>(uniform(0.0, 1.0) * (hi - lo + 1));
        return v > hi ? hi : v;
    }

private:
    uint64_t state_;
};

} // namespace oracles
