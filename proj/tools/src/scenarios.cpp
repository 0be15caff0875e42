#include "scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "screens/babinet.hpp"
#include "screens/dipole_lattice.hpp"
#include "screens/energy_engine.hpp"
#include "screens/errors.hpp"
#include "screens/feasibility.hpp"
#include "screens/grating_solver.hpp"
#include "screens/matrix_io.hpp"
#include "screens/version.hpp"

namespace screens_cli {

namespace {

using namespace screens;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T>
T jat(const json& cfg, const std::string& key, T fallback) {
    if (!cfg.contains(key)) return fallback;
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error("config key '" + key + "': " + e.what());
    }
}

json jsection(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) return json::object();
    if (!cfg.at(key).is_object()) throw config_error("config key '" + key + "' must be an object");
    return cfg.at(key);
}

StripScreen screen_from(const json& cfg) {
    const json g = jsection(cfg, "geometry");
    const double period = jat(g, "period", 1.0);
    const double fill = jat(g, "fill", 0.5);
    const double offset = jat(g, "offset", 0.0);
    if (fill < 0.0 || fill > 1.0) throw config_error("geometry.fill must lie in [0, 1]");
    return StripScreen(period, fill * period, offset);
}

SolverParams solver_from(const json& cfg, int nb_default, int cutoff_default) {
    const json s = jsection(cfg, "solver");
    SolverParams p;
    p.n_basis = jat(s, "n_basis", nb_default);
    p.order_cutoff = jat(s, "order_cutoff", cutoff_default);
    p.tol = jat(s, "tol", 1e-10);
    p.tail_safety = jat(s, "tail_safety", 8.0);
    p.validate();
    return p;
}

QuadratureSpec quad_from(const json& cfg) {
    const json q = jsection(cfg, "quadrature");
    QuadratureSpec spec;
    spec.n_kappa = jat(q, "n_kappa", 64);
    spec.n_kx = jat(q, "n_kx", 10);
    spec.u_max = jat(q, "u_max", 40.0);
    spec.tol = jat(q, "tol", 1e-4);
    spec.estimate_error = jat(q, "estimate_error", true);
    spec.validate();
    return spec;
}

ReflectionOrder order_from(const json& cfg) {
    const std::string o = jat<std::string>(cfg, "order", "full");
    if (o == "full") return ReflectionOrder::Full;
    if (o == "first") return ReflectionOrder::First;
    throw config_error("order must be 'first' or 'full'");
}

json energy_result_json(const EnergyResult& r) {
    return json{{"value", r.value},
                {"units", "hbar*c*A/d^3"},
                {"order", r.order == ReflectionOrder::First ? "first" : "full"},
                {"quad_error", r.quad_error},
                {"meta",
                 {{"order_cutoff", r.meta.order_cutoff},
                  {"n_basis", r.meta.n_basis},
                  {"n_kappa", r.meta.n_kappa},
                  {"n_kx", r.meta.n_kx}}}};
}

EnergyRequest energy_request_from(const json& cfg) {
    EnergyRequest req;
    req.screen = screen_from(cfg);
    req.channels = channel_set_from_name(jat<std::string>(cfg, "channels", "em"));
    req.separation = jat(cfg, "separation", 1.0);
    req.solver = solver_from(cfg, 24, 64);
    req.quad = quad_from(cfg);
    req.workers = jat(cfg, "workers", 0);
    req.validate();
    return req;
}

EnergyResult compute_energy(const json& cfg) {
    const std::string kind = jat<std::string>(jsection(cfg, "geometry"), "kind", "strips");
    const ReflectionOrder order = order_from(cfg);
    const ChannelSet channels = channel_set_from_name(jat<std::string>(cfg, "channels", "em"));
    if (kind == "plates") return plates_energy(channels, order);
    if (kind != "strips") throw config_error("geometry.kind must be 'strips' or 'plates'");
    const EnergyRequest req = energy_request_from(cfg);
    return order == ReflectionOrder::First ? energy_first_reflection(req) : energy_full(req);
}

// Sub-block of a scattering matrix spanning orders -cutoff..cutoff.
MatrixXcd trim_block(const MatrixXcd& m, int have_cutoff, int want_cutoff) {
    const int off = have_cutoff - want_cutoff;
    const int dim = 2 * want_cutoff + 1;
    return m.block(off, off, dim, dim);
}

struct TrimmedScalarSet {
    ScalarBlockSet set;
};

ScalarBlockSet scalar_set(const StripScreen& screen, const ImaginaryFrequency& kappa,
                          const TransverseMomentum& kt, const SolverParams& params,
                          int check_cutoff) {
    ScalarSolves s = solve_both(screen, kappa, kt, params);
    OrderBasis basis(screen.period, check_cutoff, kappa, kt);
    MatrixXcd rd = trim_block(s.r_dirichlet.matrix, params.order_cutoff, check_cutoff);
    MatrixXcd rn = trim_block(s.r_neumann.matrix, params.order_cutoff, check_cutoff);
    return ScalarBlockSet{
        ReflectionBlock(Channel::Dirichlet, Channel::Dirichlet, basis, rd),
        ReflectionBlock(Channel::Neumann, Channel::Neumann, basis, rn),
        TransmissionBlock(Channel::Dirichlet, Channel::Dirichlet, basis, rd),
        TransmissionBlock(Channel::Neumann, Channel::Neumann, basis, -rn),
    };
}

void emit_scalar_set(const std::string& dir, const std::string& side, const ScalarBlockSet& set) {
    write_block_file(dir + "/" + side + "_r_d.txt", make_record(set.r_d));
    write_block_file(dir + "/" + side + "_r_n.txt", make_record(set.r_n));
    write_block_file(dir + "/" + side + "_t_d.txt", make_record(set.t_d));
    write_block_file(dir + "/" + side + "_t_n.txt", make_record(set.t_n));
}

ScalarBlockSet read_scalar_set(const std::string& prefix) {
    return ScalarBlockSet{
        read_block_file(prefix + "_r_d.txt").as_reflection(),
        read_block_file(prefix + "_r_n.txt").as_reflection(),
        read_block_file(prefix + "_t_d.txt").as_transmission(),
        read_block_file(prefix + "_t_n.txt").as_transmission(),
    };
}

} // namespace

ScenarioOutput run_energy(const json& cfg) {
    const EnergyResult r = compute_energy(cfg);
    ScenarioOutput out;
    out.result = energy_result_json(r);
    std::ostringstream csv;
    csv << "value,quad_error,order,channels\n";
    csv << fmt(r.value) << ',' << fmt(r.quad_error) << ','
        << (r.order == ReflectionOrder::First ? "first" : "full") << ','
        << jat<std::string>(cfg, "channels", "em") << "\n";
    out.csv = csv.str();
    out.default_format = "json";
    return out;
}

ScenarioOutput run_verify_babinet(const json& cfg) {
    // External conformance mode: compare two previously emitted block sets.
    if (cfg.contains("external")) {
        const json ext = jsection(cfg, "external");
        const auto screen_set = read_scalar_set(ext.at("screen_prefix").get<std::string>());
        const auto comp_set = read_scalar_set(ext.at("complement_prefix").get<std::string>());
        const double res = babinet_residual(screen_set, comp_set);
        ScenarioOutput out;
        out.result = json{{"residual", res}};
        out.csv = "residual\n" + fmt(res) + "\n";
        return out;
    }

    const StripScreen screen = screen_from(cfg);
    const StripScreen comp = screen.complement();
    const json probe = jsection(cfg, "probe");
    std::vector<double> kappas = jat(probe, "kappa", std::vector<double>{0.5, 1.0, 2.0});
    const double ky = jat(probe, "ky", 0.3);
    const double kx = jat(probe, "kx", 0.0);

    const json sweep = jsection(cfg, "sweep");
    const int nb_start = jat(sweep, "n_basis_start", 2);
    const int doublings = jat(sweep, "doublings", 4);
    const int check_cutoff = jat(cfg, "check_cutoff", 4);
    const double solve_tol = jat(jsection(cfg, "solver"), "tol", 1e-10);
    const double tail_safety = jat(jsection(cfg, "solver"), "tail_safety", 20.0);
    const std::string emit_dir = jat<std::string>(cfg, "emit_blocks", "");

    std::ostringstream csv;
    csv << "fill,kappa,ky,kx,n_basis,residual\n";
    json rows = json::array();
    double final_max = 0.0;
    bool monotone = true;
    for (double kap : kappas) {
        ImaginaryFrequency kappa(kap);
        TransverseMomentum kt(kx, ky);
        double prev = 0.0;
        for (int level = 0; level <= doublings; ++level) {
            const int nb = nb_start << level;
            SolverParams params;
            params.n_basis = nb;
            params.order_cutoff = std::max(check_cutoff, nb);
            params.tol = solve_tol;
            params.tail_safety = tail_safety;
            const auto s_set = scalar_set(screen, kappa, kt, params, check_cutoff);
            const auto c_set = scalar_set(comp, kappa, kt, params, check_cutoff);
            const double res = babinet_residual(s_set, c_set);
            csv << fmt(screen.fill()) << ',' << fmt(kap) << ',' << fmt(ky) << ',' << fmt(kx) << ','
                << nb << ',' << fmt(res) << "\n";
            rows.push_back(json{{"kappa", kap}, {"n_basis", nb}, {"residual", res}});
            if (level > 0 && res > prev) monotone = false;
            prev = res;
            if (level == doublings) final_max = std::max(final_max, res);
            if (level == doublings && !emit_dir.empty()) {
                emit_scalar_set(emit_dir, "screen", s_set);
                emit_scalar_set(emit_dir, "complement", c_set);
            }
        }
    }
    ScenarioOutput out;
    out.result = json{{"rows", rows},
                      {"max_final_residual", final_max},
                      {"monotone_decreasing", monotone},
                      {"check_cutoff", check_cutoff}};
    out.csv = csv.str();
    out.default_format = "csv";
    return out;
}

ScenarioOutput run_edge_fit(const json& cfg) {
    const StripScreen screen = screen_from(cfg);
    const json w = jsection(cfg, "window");
    const double d_min = jat(w, "d_min", 0.08 * screen.period);
    const double d_max = jat(w, "d_max", 0.22 * screen.period);
    const int count = jat(w, "count", 8);
    if (!(d_min > 0.0) || !(d_max > d_min) || count < 4)
        throw config_error("edge-fit: need 0 < d_min < d_max and count >= 4");
    const bool cubic = jat(cfg, "fit_cubic_term", true);

    std::vector<std::pair<double, EnergyResult>> points;
    std::ostringstream csv;
    csv << "separation,value,quad_error\n";
    for (int i = 0; i < count; ++i) {
        const double t = (count == 1) ? 0.0 : static_cast<double>(i) / (count - 1);
        const double d = d_min * std::pow(d_max / d_min, t);
        json node_cfg = cfg;
        node_cfg["separation"] = d;
        const EnergyResult r = compute_energy(node_cfg);
        points.emplace_back(d, r);
        csv << fmt(d) << ',' << fmt(r.value) << ',' << fmt(r.quad_error) << "\n";
    }
    const EdgeFit fit = fit_edge_coefficients(points, screen, cubic);
    ScenarioOutput out;
    out.result = json{{"alpha_a", fit.alpha_a},
                      {"alpha_p", fit.alpha_p},
                      {"alpha_p_err", fit.alpha_p_err},
                      {"curvature", fit.curvature},
                      {"cubic", fit.cubic},
                      {"rms_residual", fit.rms_residual},
                      {"n_points", fit.n_points},
                      {"alpha_a_ref_pfa", M_PI * M_PI / 720.0}};
    out.csv = csv.str();
    out.default_format = "json";
    return out;
}

ScenarioOutput run_lateral_force(const json& cfg) {
    const json lat = jsection(cfg, "lattice");
    LatticeSpec spec;
    spec.spacing = jat(lat, "spacing", 1.0);
    spec.radius = jat(lat, "radius", 0.1 * spec.spacing);
    if (cfg.contains("d_over_spacing"))
        spec.separation = cfg.at("d_over_spacing").get<double>() * spec.spacing;
    else
        spec.separation = jat(lat, "separation", 2.0 * spec.spacing);
    spec.n_cut = jat(lat, "n_cut", 96);
    spec.tol = jat(lat, "tol", 1e-6);
    spec.validate();

    const json sweep = jsection(cfg, "delta_sweep");
    const double start = jat(sweep, "start", 0.0);
    const double end = jat(sweep, "end", 1.0);
    const int n_points = jat(sweep, "count", 64);
    if (n_points < 2) throw config_error("lateral-force: delta sweep needs >= 2 points");

    std::ostringstream csv;
    csv << "displacement_over_spacing,energy_per_cell,lateral_force_per_area\n";
    double f0 = 0.0, fhalf = 0.0, fmax = 0.0;
    bool have0 = false, havehalf = false;
    json rows = json::array();
    for (int i = 0; i < n_points; ++i) {
        const double delta = start + (end - start) * i / (n_points - 1);
        LatticeSpec s = spec;
        s.displacement = delta * spec.spacing;
        const double e = lattice_energy(s);
        const double f = lateral_force(s);
        csv << fmt(delta) << ',' << fmt(e) << ',' << fmt(f) << "\n";
        rows.push_back(json{{"delta", delta}, {"force_per_area", f}});
        if (std::abs(delta) < 1e-12) {
            f0 = f;
            have0 = true;
        }
        if (std::abs(delta - 0.5) < 1e-12) {
            fhalf = f;
            havehalf = true;
        }
        fmax = std::max(fmax, std::abs(f));
    }
    ScenarioOutput out;
    out.result = json{{"rows", rows},
                      {"force_at_zero", have0 ? json(f0) : json()},
                      {"force_at_half", havehalf ? json(fhalf) : json()},
                      {"max_abs_force", fmax},
                      {"warnings", spec.warnings()}};
    out.csv = csv.str();
    out.default_format = "csv";
    return out;
}

ScenarioOutput run_feasibility(const json& cfg) {
    const json c = jsection(cfg, "conductor");
    ConductorSpec spec;
    spec.conductivity = jat(c, "conductivity", 4.5e7);
    spec.thickness = jat(c, "thickness", 100e-9);
    spec.separation = jat(c, "separation", 0.75e-6);
    const double margin = jat(cfg, "margin", 5.0);
    const ThicknessWindow w = thickness_window(spec, margin);
    ScenarioOutput out;
    out.result = json{{"skin_depth_m", w.skin},
                      {"t_min_m", w.t_min},
                      {"t_max_m", w.t_max},
                      {"thickness_m", spec.thickness},
                      {"separation_m", spec.separation},
                      {"conductivity_S_per_m", spec.conductivity},
                      {"margin", margin},
                      {"feasible_window", w.feasible},
                      {"verdict", w.verdict()}};
    std::ostringstream csv;
    csv << "skin_depth_m,t_min_m,t_max_m,verdict\n";
    csv << fmt(w.skin) << ',' << fmt(w.t_min) << ',' << fmt(w.t_max) << ',' << w.verdict() << "\n";
    out.csv = csv.str();
    out.default_format = "json";
    return out;
}

ScenarioOutput run_convergence_sweep(const json& cfg) {
    const std::string base = jat<std::string>(cfg, "base", "energy");
    const std::string axis = jat<std::string>(cfg, "axis", "n_kappa");
    const int doublings = jat(cfg, "doublings", 3);
    if (doublings < 1) throw config_error("convergence-sweep: doublings >= 1 required");

    std::ostringstream csv;
    json rows = json::array();

    if (base == "verify-babinet") {
        if (axis != "n_basis")
            throw config_error("convergence-sweep: verify-babinet base sweeps n_basis only");
        json sub = cfg;
        sub["sweep"] = json{{"n_basis_start", jat(jsection(cfg, "sweep"), "n_basis_start", 2)},
                            {"doublings", doublings}};
        return run_verify_babinet(sub);
    }
    if (base != "energy") throw config_error("convergence-sweep: base must be energy or verify-babinet");

    csv << "level," << axis << ",value,change_from_prev\n";
    double prev = 0.0;
    double last_change = 0.0;
    double value = 0.0;
    for (int level = 0; level <= doublings; ++level) {
        json sub = cfg;
        sub["quadrature"] = jsection(cfg, "quadrature");
        sub["quadrature"]["estimate_error"] = false;
        sub["solver"] = jsection(cfg, "solver");
        long axis_value = 0;
        if (axis == "n_kappa") {
            axis_value = jat(jsection(cfg, "quadrature"), "n_kappa", 24) << level;
            sub["quadrature"]["n_kappa"] = axis_value;
        } else if (axis == "n_kx") {
            axis_value = jat(jsection(cfg, "quadrature"), "n_kx", 4) << level;
            sub["quadrature"]["n_kx"] = axis_value;
        } else if (axis == "n_basis") {
            axis_value = jat(jsection(cfg, "solver"), "n_basis", 6) << level;
            sub["solver"]["n_basis"] = axis_value;
            sub["solver"]["order_cutoff"] =
                std::max<long>(jat(jsection(cfg, "solver"), "order_cutoff", 64), axis_value);
        } else if (axis == "order_cutoff") {
            axis_value = jat(jsection(cfg, "solver"), "order_cutoff", 16) << level;
            sub["solver"]["order_cutoff"] = axis_value;
        } else {
            throw config_error("convergence-sweep: unknown axis '" + axis + "'");
        }
        value = compute_energy(sub).value;
        const double change = (level == 0) ? 0.0 : value - prev;
        csv << level << ',' << axis_value << ',' << fmt(value) << ','
            << (level == 0 ? std::string("") : fmt(change)) << "\n";
        rows.push_back(json{{"level", level}, {axis, axis_value}, {"value", value}});
        if (level > 0) last_change = change;
        prev = value;
    }
    const double digits =
        (last_change == 0.0) ? 16.0 : -std::log10(std::abs(last_change / std::max(1e-300, std::abs(value))));
    ScenarioOutput out;
    out.result = json{{"rows", rows}, {"last_change", last_change}, {"converged_digits", digits}};
    out.csv = csv.str();
    out.default_format = "csv";
    return out;
}

ScenarioOutput dispatch(const json& cfg) {
    const std::string scenario = jat<std::string>(cfg, "scenario", "");
    if (scenario == "energy") return run_energy(cfg);
    if (scenario == "verify-babinet") return run_verify_babinet(cfg);
    if (scenario == "edge-fit") return run_edge_fit(cfg);
    if (scenario == "lateral-force") return run_lateral_force(cfg);
    if (scenario == "feasibility") return run_feasibility(cfg);
    if (scenario == "convergence-sweep") return run_convergence_sweep(cfg);
    throw config_error("unknown scenario '" + scenario + "'");
}

void emit(const ScenarioOutput& out, const json& resolved_config, const std::string& path,
          const std::string& format) {
    const std::string chosen = format.empty() ? out.default_format : format;
    std::string text;
    if (chosen == "json") {
        json doc;
        doc["version"] = kVersion;
        doc["config"] = resolved_config;
        doc["result"] = out.result;
        text = doc.dump(2) + "\n";
    } else if (chosen == "csv") {
        std::ostringstream os;
        os << "# casimir-screens " << kVersion << "\n";
        os << "# config " << resolved_config.dump() << "\n";
        os << out.csv;
        text = os.str();
    } else {
        throw config_error("format must be 'csv' or 'json'");
    }
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        std::ofstream os(path);
        if (!os) throw config_error("cannot open output path '" + path + "'");
        os << text;
    }
}

} // namespace screens_cli
