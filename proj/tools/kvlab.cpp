// kvlab: batch driver for the Kelvin-Voigt time-integration laboratory.
//
//   kvlab simulate          trajectories (CSV) + summary
//   kvlab spectrum          spectral-radius / dispersion sweep (CSV)
//   kvlab pe-table          period-elongation table (CSV)
//   kvlab converge          convergence study against closed forms (CSV)
//   kvlab validate-matrices step-matrix cross-derivation report
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "kvlab/cli.hpp"

int main(int argc, char** argv) {
    using namespace kvlab;
    CLI::App app{"Kelvin-Voigt oscillator time-integration laboratory"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // keep -h free for the step size

    RunConfig cfg;
    std::string config_path;
    std::string alg_selector = "all";
    double c_val = 0.0, a_val = 0.0, Tn_val = 0.0, xi_val = 0.0, scale_val = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--config", config_path, "flat key=value config file");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--alg", alg_selector, "algorithm selector: all or name[,name...]");
        sub->add_option("--m", cfg.m, "mass");
        sub->add_option("--c", c_val, "viscous damping coefficient");
        sub->add_option("--a", a_val, "flexibility (1/k)");
        sub->add_option("--Tn", Tn_val, "natural period (alternative to --a)");
        sub->add_option("--xi", xi_val, "damping ratio (alternative to --c)");
        sub->add_option("--h", cfg.h, "time step");
        sub->add_option("--duration", cfg.duration, "simulated duration");
        sub->add_option("--u0", cfg.u0, "initial displacement");
        sub->add_option("--v0", cfg.v0, "initial velocity");
        sub->add_option("--jhat0", cfg.jhat0, "applied-force impulse before t=0");
        sub->add_option("--forcing", cfg.forcing, "zero | sin:F0,W0 | record:PATH");
        sub->add_option("--record-kind", cfg.record_kind, "force | ground-accel");
        sub->add_option("--record-format", cfg.record_format, "two-column | fixed-dt");
        sub->add_option("--record-dt", cfg.record_dt, "sample spacing for fixed-dt records");
        sub->add_option("--record-header-lines", cfg.record_header_lines,
                        "header lines to skip in fixed-dt records");
        sub->add_option("--scale", scale_val,
                        "record scale factor (required for ground-accel records)");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run trajectories");
    add_common(sim);
    sim->add_flag("--midpoints", cfg.midpoints, "append condensed midpoint columns");

    CLI::App* spec = app.add_subcommand("spectrum", "spectral-radius sweep");
    add_common(spec);
    spec->add_option("--grid-min", cfg.grid_min, "smallest h/Tn");
    spec->add_option("--grid-max", cfg.grid_max, "largest h/Tn");
    spec->add_option("--grid-points", cfg.grid_points, "number of grid points");
    spec->add_flag("--damped", cfg.damped, "also sweep with the system damping");

    CLI::App* pe = app.add_subcommand("pe-table", "period-elongation table");
    add_common(pe);
    pe->add_option("--pe-min", cfg.pe_min, "smallest h/Tn");
    pe->add_option("--pe-max", cfg.pe_max, "largest h/Tn");
    pe->add_option("--pe-points", cfg.pe_points, "number of rows");

    CLI::App* conv = app.add_subcommand("converge", "convergence-order study");
    add_common(conv);
    conv->add_option("--h0", cfg.h0, "coarsest step, halved per level");
    conv->add_option("--levels", cfg.levels, "number of halvings (>= 3)");

    CLI::App* val = app.add_subcommand("validate-matrices", "step-matrix cross-derivation");
    val->add_option("--out", cfg.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    auto picked = [&](const char* name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };

    try {
        // stage CLI-typed values into the optionals they override
        if (picked("--c")) cfg.c = c_val;
        if (picked("--a")) cfg.a = a_val;
        if (picked("--Tn")) cfg.Tn = Tn_val;
        if (picked("--xi")) cfg.xi = xi_val;
        if (picked("--scale")) cfg.scale = scale_val;

        if (!config_path.empty()) {
            std::map<std::string, bool> overridden;
            overridden["out"] = picked("--out");
            overridden["alg"] = picked("--alg");
            overridden["m"] = picked("--m");
            overridden["c"] = picked("--c");
            overridden["a"] = picked("--a");
            overridden["Tn"] = picked("--Tn");
            overridden["xi"] = picked("--xi");
            overridden["h"] = picked("--h");
            overridden["duration"] = picked("--duration");
            overridden["u0"] = picked("--u0");
            overridden["v0"] = picked("--v0");
            overridden["jhat0"] = picked("--jhat0");
            overridden["forcing"] = picked("--forcing");
            overridden["record_kind"] = picked("--record-kind");
            overridden["record_format"] = picked("--record-format");
            overridden["record_dt"] = picked("--record-dt");
            overridden["record_header_lines"] = picked("--record-header-lines");
            overridden["scale"] = picked("--scale");
            overridden["midpoints"] = picked("--midpoints");
            overridden["grid_min"] = picked("--grid-min");
            overridden["grid_max"] = picked("--grid-max");
            overridden["grid_points"] = picked("--grid-points");
            overridden["damped"] = picked("--damped");
            overridden["pe_min"] = picked("--pe-min");
            overridden["pe_max"] = picked("--pe-max");
            overridden["pe_points"] = picked("--pe-points");
            overridden["h0"] = picked("--h0");
            overridden["levels"] = picked("--levels");
            apply_config_file(cfg, config_path, overridden);
        }
        if (picked("--alg") || cfg.algs.empty()) cfg.algs = parse_algorithm_selector(alg_selector);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (sub == sim) return cmd_simulate(cfg);
    if (sub == spec) return cmd_spectrum(cfg);
    if (sub == pe) return cmd_pe_table(cfg);
    if (sub == conv) return cmd_converge(cfg);
    if (sub == val) return cmd_validate_matrices(cfg);
    return 2;
}
