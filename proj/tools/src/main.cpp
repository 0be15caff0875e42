// casimir-screens: Casimir energies and Babinet checks for perforated planar
// mirrors. One scenario per invocation; deterministic outputs for identical
// configs regardless of worker count.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "scenarios.hpp"
#include "screens/errors.hpp"
#include "screens/version.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw screens::config_error("cannot open config file '" + path + "'");
    try {
        return json::parse(is, nullptr, true, true); // allow comments
    } catch (const json::exception& e) {
        throw screens::config_error(std::string("config parse error: ") + e.what());
    }
}

void set_path(json& cfg, const std::string& dotted, const json& value) {
    json* node = &cfg;
    size_t pos = 0;
    for (;;) {
        const size_t dot = dotted.find('.', pos);
        if (dot == std::string::npos) {
            (*node)[dotted.substr(pos)] = value;
            return;
        }
        node = &((*node)[dotted.substr(pos, dot - pos)]);
        pos = dot + 1;
    }
}

struct CommonFlags {
    std::string config_path;
    std::string output = "-";
    std::string format;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file (flags override it)");
    cmd->add_option("--output", flags.output, "output path, '-' for stdout");
    cmd->add_option("--format", flags.format, "csv or json (scenario default otherwise)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", flags.workers, "max parallel workers (0 = hardware)");
}

// Parses "start:end:count".
void parse_sweep(const std::string& text, json& cfg) {
    double start = 0.0, end = 1.0;
    int count = 64;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &start, &end, &count) != 3)
        throw screens::config_error("--delta-sweep expects start:end:count");
    set_path(cfg, "delta_sweep.start", start);
    set_path(cfg, "delta_sweep.end", end);
    set_path(cfg, "delta_sweep.count", count);
}

int run(const std::string& scenario, const CommonFlags& flags, json& cfg) {
    cfg["scenario"] = scenario;
    if (flags.workers > 0) cfg["workers"] = flags.workers;
    const screens_cli::ScenarioOutput out = screens_cli::dispatch(cfg);
    screens_cli::emit(out, cfg, flags.output, flags.format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir interaction energies for perforated planar mirrors"};
    app.set_version_flag("--version", screens::kVersion);
    app.require_subcommand(1);

    // Values only applied to the config when the user passed the flag.
    struct {
        double period = 1.0, fill = 0.5, offset = 0.0, separation = 1.0;
        std::string channel = "em", order = "full", geometry = "strips";
        int n_basis = 0, order_cutoff = 0, n_kappa = 0, n_kx = 0;
        double tail_safety = 0.0, d_min = 0.0, d_max = 0.0;
        int count = 0;
        double kx = 0.0, ky = 0.0;
        std::vector<double> kappas;
        int check_cutoff = 0, n_basis_start = 0, doublings = 0;
        std::string emit_blocks, ext_screen, ext_complement;
        double spacing = 0.0, radius = 0.0, d_over_spacing = 0.0, lat_tol = 0.0;
        int n_cut = 0;
        std::string delta_sweep;
        double sigma = 0.0, thickness = 0.0, sep_m = 0.0, margin = 0.0;
        std::string base = "energy", axis = "n_kappa";
    } v;

    CommonFlags cf_energy, cf_babinet, cf_edge, cf_lateral, cf_feas, cf_sweep;

    CLI::App* energy = app.add_subcommand("energy", "Casimir energy per unit area (hbar c A/d^3)");
    add_common(energy, cf_energy);
    energy->add_option("--geometry", v.geometry, "strips or plates")
        ->check(CLI::IsMember({"strips", "plates"}));
    energy->add_option("--period", v.period, "screen period");
    energy->add_option("--fill", v.fill, "strip fill fraction in [0,1]");
    energy->add_option("--offset", v.offset, "strip center offset");
    energy->add_option("--d", v.separation, "separation from the mirror");
    energy->add_option("--channel", v.channel, "em, dirichlet, or neumann");
    energy->add_option("--order", v.order, "first or full")->check(CLI::IsMember({"first", "full"}));
    energy->add_option("--n-basis", v.n_basis, "solver basis functions");
    energy->add_option("--order-cutoff", v.order_cutoff, "max diffraction order");
    energy->add_option("--n-kappa", v.n_kappa, "radial quadrature nodes");
    energy->add_option("--n-kx", v.n_kx, "Brillouin-zone nodes");
    energy->add_option("--tail-safety", v.tail_safety, "kernel direct-sum extent");

    CLI::App* babinet = app.add_subcommand(
        "verify-babinet", "residuals of the Babinet identities between independent solves");
    add_common(babinet, cf_babinet);
    babinet->add_option("--period", v.period, "screen period");
    babinet->add_option("--fill", v.fill, "strip fill fraction");
    babinet->add_option("--kappa", v.kappas, "imaginary-frequency probe points");
    babinet->add_option("--kx", v.kx, "Bloch momentum probe");
    babinet->add_option("--ky", v.ky, "transverse momentum probe");
    babinet->add_option("--check-cutoff", v.check_cutoff, "residual block spans orders -P..P");
    babinet->add_option("--n-basis-start", v.n_basis_start, "first basis size of the sweep");
    babinet->add_option("--doublings", v.doublings, "number of basis doublings");
    babinet->add_option("--emit-blocks", v.emit_blocks, "write converged block sets to this directory");
    babinet->add_option("--external-screen", v.ext_screen,
                        "prefix of externally computed screen blocks (conformance mode)");
    babinet->add_option("--external-complement", v.ext_complement,
                        "prefix of externally computed complement blocks");

    CLI::App* edge = app.add_subcommand("edge-fit", "area/perimeter coefficients of the d->0 expansion");
    add_common(edge, cf_edge);
    edge->add_option("--period", v.period, "screen period");
    edge->add_option("--fill", v.fill, "strip fill fraction");
    edge->add_option("--channel", v.channel, "em, dirichlet, or neumann");
    edge->add_option("--order", v.order, "first or full")->check(CLI::IsMember({"first", "full"}));
    edge->add_option("--d-min", v.d_min, "smallest separation of the window");
    edge->add_option("--d-max", v.d_max, "largest separation of the window");
    edge->add_option("--count", v.count, "number of separations");
    edge->add_option("--n-basis", v.n_basis, "solver basis functions");
    edge->add_option("--order-cutoff", v.order_cutoff, "max diffraction order");
    edge->add_option("--n-kappa", v.n_kappa, "radial quadrature nodes");
    edge->add_option("--n-kx", v.n_kx, "Brillouin-zone nodes");

    CLI::App* lateral = app.add_subcommand("lateral-force", "Casimir lateral force between hole arrays");
    add_common(lateral, cf_lateral);
    lateral->add_option("--spacing", v.spacing, "hole center-to-center spacing");
    lateral->add_option("--radius", v.radius, "hole radius");
    lateral->add_option("--d-over-spacing", v.d_over_spacing, "plate separation / spacing");
    lateral->add_option("--n-cut", v.n_cut, "real-space shell cutoff");
    lateral->add_option("--tol", v.lat_tol, "lattice-sum relative tolerance");
    lateral->add_option("--delta-sweep", v.delta_sweep, "displacement sweep start:end:count");

    CLI::App* feas = app.add_subcommand("feasibility", "conductor thickness window (SI units)");
    add_common(feas, cf_feas);
    feas->add_option("--sigma", v.sigma, "conductivity, S/m");
    feas->add_option("--thickness", v.thickness, "screen thickness, m");
    feas->add_option("--d", v.sep_m, "separation, m");
    feas->add_option("--margin", v.margin, "factor reading '<<' (default 5)");

    CLI::App* sweep = app.add_subcommand("convergence-sweep", "resolution doubling report");
    add_common(sweep, cf_sweep);
    sweep->add_option("--base", v.base, "energy or verify-babinet");
    sweep->add_option("--axis", v.axis, "n_kappa, n_kx, n_basis, or order_cutoff");
    sweep->add_option("--doublings", v.doublings, "number of doublings");
    sweep->add_option("--period", v.period, "screen period");
    sweep->add_option("--fill", v.fill, "strip fill fraction");
    sweep->add_option("--d", v.separation, "separation from the mirror");
    sweep->add_option("--channel", v.channel, "em, dirichlet, or neumann");
    sweep->add_option("--order", v.order, "first or full")->check(CLI::IsMember({"first", "full"}));
    sweep->add_option("--geometry", v.geometry, "strips or plates");

    try {
        app.parse(argc, argv);

        CLI::App* active = app.get_subcommands().front();
        const std::string name = active->get_name();
        const CommonFlags& cf = name == "energy"           ? cf_energy
                                : name == "verify-babinet" ? cf_babinet
                                : name == "edge-fit"       ? cf_edge
                                : name == "lateral-force"  ? cf_lateral
                                : name == "feasibility"    ? cf_feas
                                                           : cf_sweep;
        json cfg = load_config(cf.config_path);

        auto passed = [&](const std::string& flag) {
            const CLI::Option* opt = active->get_option_no_throw(flag);
            return opt != nullptr && opt->count() > 0;
        };
        if (passed("--geometry")) set_path(cfg, "geometry.kind", v.geometry);
        if (passed("--period")) set_path(cfg, "geometry.period", v.period);
        if (passed("--fill")) set_path(cfg, "geometry.fill", v.fill);
        if (passed("--offset")) set_path(cfg, "geometry.offset", v.offset);
        if (passed("--d") && name != "feasibility") cfg["separation"] = v.separation;
        if (passed("--channel")) cfg["channels"] = v.channel;
        if (passed("--order")) cfg["order"] = v.order;
        if (passed("--n-basis")) set_path(cfg, "solver.n_basis", v.n_basis);
        if (passed("--order-cutoff")) set_path(cfg, "solver.order_cutoff", v.order_cutoff);
        if (passed("--tail-safety")) set_path(cfg, "solver.tail_safety", v.tail_safety);
        if (passed("--n-kappa")) set_path(cfg, "quadrature.n_kappa", v.n_kappa);
        if (passed("--n-kx")) set_path(cfg, "quadrature.n_kx", v.n_kx);
        if (passed("--kappa")) cfg["probe"]["kappa"] = v.kappas;
        if (passed("--kx")) set_path(cfg, "probe.kx", v.kx);
        if (passed("--ky")) set_path(cfg, "probe.ky", v.ky);
        if (passed("--check-cutoff")) cfg["check_cutoff"] = v.check_cutoff;
        if (passed("--n-basis-start")) set_path(cfg, "sweep.n_basis_start", v.n_basis_start);
        if (passed("--doublings") && name == "verify-babinet")
            set_path(cfg, "sweep.doublings", v.doublings);
        if (passed("--doublings") && name == "convergence-sweep") cfg["doublings"] = v.doublings;
        if (passed("--emit-blocks")) cfg["emit_blocks"] = v.emit_blocks;
        if (passed("--external-screen")) set_path(cfg, "external.screen_prefix", v.ext_screen);
        if (passed("--external-complement"))
            set_path(cfg, "external.complement_prefix", v.ext_complement);
        if (passed("--d-min")) set_path(cfg, "window.d_min", v.d_min);
        if (passed("--d-max")) set_path(cfg, "window.d_max", v.d_max);
        if (passed("--count")) set_path(cfg, "window.count", v.count);
        if (passed("--spacing")) set_path(cfg, "lattice.spacing", v.spacing);
        if (passed("--radius")) set_path(cfg, "lattice.radius", v.radius);
        if (passed("--d-over-spacing")) cfg["d_over_spacing"] = v.d_over_spacing;
        if (passed("--n-cut")) set_path(cfg, "lattice.n_cut", v.n_cut);
        if (passed("--tol")) set_path(cfg, "lattice.tol", v.lat_tol);
        if (passed("--delta-sweep")) parse_sweep(v.delta_sweep, cfg);
        if (passed("--sigma")) set_path(cfg, "conductor.conductivity", v.sigma);
        if (passed("--thickness")) set_path(cfg, "conductor.thickness", v.thickness);
        if (passed("--d") && name == "feasibility") set_path(cfg, "conductor.separation", v.sep_m);
        if (passed("--margin")) cfg["margin"] = v.margin;
        if (passed("--base")) cfg["base"] = v.base;
        if (passed("--axis")) cfg["axis"] = v.axis;

        return run(name, cf, cfg);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const screens::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const screens::convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 2;
    } catch (const screens::invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
