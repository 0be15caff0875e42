#pragma once

// Whether a real metal screen of given conductivity and thickness behaves as
// the idealized zero-thickness perfect conductor at a given separation:
// the thickness must dominate the skin depth yet stay far below the gap,
// skin_depth << t << d. SI units in this module only.

#include <string>

#include "screens/errors.hpp"

namespace screens {

namespace si {
inline constexpr double mu0 = 4.0e-7 * 3.14159265358979323846; // vacuum permeability
inline constexpr double c_light = 2.998e8;                     // speed of light, m/s
} // namespace si

struct ConductorSpec {
    double conductivity = 4.5e7; // S/m (gold)
    double thickness = 100e-9;   // m
    double separation = 1e-6;    // m

    void validate() const;
};

/// Skin depth at the frequency relevant for separation d (omega ~ 2 pi c / d):
/// sqrt(2 / (mu0 omega sigma)) = sqrt(d / (pi c mu0 sigma)). Meters.
double skin_depth(double conductivity, double separation);

struct ThicknessWindow {
    double t_min;       // margin * skin depth
    double t_max;       // separation / margin
    bool feasible;      // window non-empty
    bool valid;         // supplied thickness inside the window
    double skin;        // skin depth at this separation
    std::string verdict() const;
};

/// Operationalizes the "<<" inequalities with a configurable margin factor
/// (default 5): valid iff margin*skin < t < d/margin.
ThicknessWindow thickness_window(const ConductorSpec& spec, double margin = 5.0);

} // namespace screens
