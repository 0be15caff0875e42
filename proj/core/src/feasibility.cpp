#include "screens/feasibility.hpp"

#include <cmath>

namespace screens {

void ConductorSpec::validate() const {
    if (!(conductivity > 0.0)) throw config_error("ConductorSpec: conductivity must be positive");
    if (!(thickness > 0.0)) throw config_error("ConductorSpec: thickness must be positive");
    if (!(separation > 0.0)) throw config_error("ConductorSpec: separation must be positive");
}

double skin_depth(double conductivity, double separation) {
    if (!(conductivity > 0.0)) throw config_error("skin_depth: conductivity must be positive");
    if (!(separation > 0.0)) throw config_error("skin_depth: separation must be positive");
    return std::sqrt(separation / (M_PI * si::c_light * si::mu0 * conductivity));
}

std::string ThicknessWindow::verdict() const {
    if (!feasible) return "infeasible";
    return valid ? "valid" : "invalid";
}

ThicknessWindow thickness_window(const ConductorSpec& spec, double margin) {
    spec.validate();
    if (!(margin > 1.0)) throw config_error("thickness_window: margin must exceed 1");
    ThicknessWindow w{};
    w.skin = skin_depth(spec.conductivity, spec.separation);
    w.t_min = margin * w.skin;
    w.t_max = spec.separation / margin;
    w.feasible = w.t_min < w.t_max;
    w.valid = w.feasible && spec.thickness > w.t_min && spec.thickness < w.t_max;
    return w;
}

} // namespace screens
