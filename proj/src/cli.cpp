#include "kvlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "kvlab/csvio.hpp"
#include "kvlab/ingest.hpp"
#include "kvlab/integrate.hpp"
#include "kvlab/oracle.hpp"
#include "kvlab/spectral.hpp"
#include "kvlab/validate.hpp"

namespace kvlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream os(dir + "/" + name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + dir + "/" + name);
    return os;
}

}  // namespace

OscillatorParams RunConfig::system() const {
    if (Tn || xi) {
        double tn = Tn.value_or(1.0);
        double ratio = xi.value_or(0.0);
        return OscillatorParams::from_period(m, tn, ratio);
    }
    const double pi = 0.5 * kTwoPi;
    double flex = a.value_or(1.0 / (4.0 * pi * pi));
    double damp = c.value_or(0.2 * pi);
    return OscillatorParams(m, damp, flex);
}

ForcingSpec RunConfig::forcing_spec(RecordMeta* meta) const {
    if (forcing == "zero") return ZeroForcing{};
    if (forcing.rfind("sin:", 0) == 0) {
        std::string body = forcing.substr(4);
        std::size_t comma = body.find(',');
        if (comma == std::string::npos)
            throw UsageError("forcing 'sin:F0,W0' needs two numbers, got '" + forcing + "'");
        try {
            return SinusoidForcing{std::stod(body.substr(0, comma)),
                                   std::stod(body.substr(comma + 1))};
        } catch (const std::exception&) {
            throw UsageError("forcing 'sin:F0,W0' needs two numbers, got '" + forcing + "'");
        }
    }
    if (forcing.rfind("record:", 0) == 0) {
        std::string path = forcing.substr(7);
        TabulatedForcing tab;
        if (record_kind == "force") {
            tab.kind = RecordKind::AppliedForce;
            tab.scale = scale.value_or(1.0);
        } else if (record_kind == "ground-accel") {
            tab.kind = RecordKind::GroundAcceleration;
            if (!scale)
                throw UsageError("ground-accel records require an explicit --scale factor");
            tab.scale = *scale;
        } else {
            throw UsageError("record-kind must be force or ground-accel, got '" + record_kind +
                             "'");
        }
        ParsedRecord rec =
            load_record(path, record_format, static_cast<std::size_t>(record_header_lines),
                        record_dt, record_kind, tab.scale, meta);
        tab.times = std::move(rec.times);
        tab.values = std::move(rec.values);
        return tab;
    }
    throw UsageError("forcing must be zero | sin:F0,W0 | record:PATH, got '" + forcing + "'");
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
    OscillatorParams p = system();
    std::vector<std::pair<std::string, std::string>> kv;
    std::string algs_str;
    for (const auto& alg : algs) {
        if (!algs_str.empty()) algs_str += ",";
        algs_str += algorithm_name(alg);
    }
    kv.emplace_back("alg", algs_str);
    kv.emplace_back("m", fmt17(p.m));
    kv.emplace_back("c", fmt17(p.c));
    kv.emplace_back("a", fmt17(p.a));
    kv.emplace_back("Tn", fmt17(p.Tn()));
    kv.emplace_back("xi", fmt17(p.xi()));
    kv.emplace_back("h", fmt17(h));
    kv.emplace_back("duration", fmt17(duration));
    kv.emplace_back("u0", fmt17(u0));
    kv.emplace_back("v0", fmt17(v0));
    kv.emplace_back("jhat0", fmt17(jhat0));
    kv.emplace_back("forcing", forcing);
    kv.emplace_back("record_kind", record_kind);
    kv.emplace_back("record_format", record_format);
    kv.emplace_back("record_dt", fmt17(record_dt));
    kv.emplace_back("record_header_lines", std::to_string(record_header_lines));
    kv.emplace_back("scale", scale ? fmt17(*scale) : "1");
    kv.emplace_back("midpoints", midpoints ? "1" : "0");
    kv.emplace_back("grid_min", fmt17(grid_min));
    kv.emplace_back("grid_max", fmt17(grid_max));
    kv.emplace_back("grid_points", std::to_string(grid_points));
    kv.emplace_back("damped", damped ? "1" : "0");
    kv.emplace_back("pe_min", fmt17(pe_min));
    kv.emplace_back("pe_max", fmt17(pe_max));
    kv.emplace_back("pe_points", std::to_string(pe_points));
    kv.emplace_back("h0", fmt17(h0));
    kv.emplace_back("levels", std::to_string(levels));
    kv.emplace_back("out", out_dir);
    std::sort(kv.begin(), kv.end());
    return kv;
}

std::vector<AlgorithmId> parse_algorithm_selector(const std::string& selector) {
    std::vector<AlgorithmId> out;
    if (selector == "all") {
        for (AlgorithmId alg : all_algorithms()) out.push_back(alg);
        return out;
    }
    std::size_t pos = 0;
    while (pos <= selector.size()) {
        std::size_t comma = selector.find(',', pos);
        std::string name = selector.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!name.empty()) out.push_back(parse_algorithm(name));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw UsageError("empty algorithm selector");
    return out;
}

void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::map<std::string, bool>& overridden) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read config file '" + path + "'");
    auto fixed = [&](const std::string& key) {
        auto it = overridden.find(key);
        return it != overridden.end() && it->second;
    };
    std::vector<std::string> unknown;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) {
            unknown.push_back("line " + std::to_string(line_no) + " ('" + s + "')");
            continue;
        }
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        try {
            if (key == "out") { if (!fixed(key)) cfg.out_dir = val; }
            else if (key == "alg") { if (!fixed(key)) cfg.algs = parse_algorithm_selector(val); }
            else if (key == "m") { if (!fixed(key)) cfg.m = std::stod(val); }
            else if (key == "c") { if (!fixed(key)) cfg.c = std::stod(val); }
            else if (key == "a") { if (!fixed(key)) cfg.a = std::stod(val); }
            else if (key == "Tn") { if (!fixed(key)) cfg.Tn = std::stod(val); }
            else if (key == "xi") { if (!fixed(key)) cfg.xi = std::stod(val); }
            else if (key == "h") { if (!fixed(key)) cfg.h = std::stod(val); }
            else if (key == "duration") { if (!fixed(key)) cfg.duration = std::stod(val); }
            else if (key == "u0") { if (!fixed(key)) cfg.u0 = std::stod(val); }
            else if (key == "v0") { if (!fixed(key)) cfg.v0 = std::stod(val); }
            else if (key == "jhat0") { if (!fixed(key)) cfg.jhat0 = std::stod(val); }
            else if (key == "forcing") { if (!fixed(key)) cfg.forcing = val; }
            else if (key == "record_kind") { if (!fixed(key)) cfg.record_kind = val; }
            else if (key == "record_format") { if (!fixed(key)) cfg.record_format = val; }
            else if (key == "record_dt") { if (!fixed(key)) cfg.record_dt = std::stod(val); }
            else if (key == "record_header_lines") { if (!fixed(key)) cfg.record_header_lines = std::stoi(val); }
            else if (key == "scale") { if (!fixed(key)) cfg.scale = std::stod(val); }
            else if (key == "midpoints") { if (!fixed(key)) cfg.midpoints = (val == "1" || val == "true"); }
            else if (key == "grid_min") { if (!fixed(key)) cfg.grid_min = std::stod(val); }
            else if (key == "grid_max") { if (!fixed(key)) cfg.grid_max = std::stod(val); }
            else if (key == "grid_points") { if (!fixed(key)) cfg.grid_points = std::stoi(val); }
            else if (key == "damped") { if (!fixed(key)) cfg.damped = (val == "1" || val == "true"); }
            else if (key == "pe_min") { if (!fixed(key)) cfg.pe_min = std::stod(val); }
            else if (key == "pe_max") { if (!fixed(key)) cfg.pe_max = std::stod(val); }
            else if (key == "pe_points") { if (!fixed(key)) cfg.pe_points = std::stoi(val); }
            else if (key == "h0") { if (!fixed(key)) cfg.h0 = std::stod(val); }
            else if (key == "levels") { if (!fixed(key)) cfg.levels = std::stoi(val); }
            else unknown.push_back(key);
        } catch (const std::invalid_argument& e) {
            throw UsageError("config key '" + key + "': " + e.what());
        }
    }
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw UsageError(msg);
    }
}

namespace {

void echo_config(std::ostream& os, const RunConfig& cfg, bool as_comment = false) {
    os << "# resolved configuration\n";
    const char* prefix = as_comment ? "# " : "";
    for (const auto& [k, v] : cfg.resolved()) os << prefix << k << " = " << v << "\n";
}

std::size_t steps_for(const RunConfig& cfg) {
    auto n = static_cast<std::size_t>(std::llround(cfg.duration / cfg.h));
    if (n < 1) throw UsageError("duration shorter than one step");
    return n;
}

bool closed_form_applies(const RunConfig& cfg, const ForcingSpec& forcing) {
    if (std::holds_alternative<ZeroForcing>(forcing)) return true;
    return std::holds_alternative<SinusoidForcing>(forcing) && cfg.u0 == 0.0 && cfg.v0 == 0.0 &&
           cfg.jhat0 == 0.0;
}

std::vector<double> closed_form_series(const RunConfig& cfg, const OscillatorParams& p,
                                       const ForcingSpec& forcing, double h, std::size_t n) {
    std::vector<double> u(n + 1);
    if (std::holds_alternative<ZeroForcing>(forcing)) {
        InitialConditions ics{cfg.u0, cfg.v0};
        for (std::size_t k = 0; k <= n; ++k)
            u[k] = exact_free_vibration(p, ics, static_cast<double>(k) * h).u;
    } else {
        const auto& s = std::get<SinusoidForcing>(forcing);
        for (std::size_t k = 0; k <= n; ++k)
            u[k] = exact_sinusoidal_response(p, s.f0, s.omega0, static_cast<double>(k) * h).u;
    }
    return u;
}

int run_guarded(const RunConfig& cfg, int (*body)(const RunConfig&)) {
    try {
        return body(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int simulate_body(const RunConfig& cfg) {
    OscillatorParams p = cfg.system();
    RecordMeta meta;
    ForcingSpec forcing = cfg.forcing_spec(&meta);
    std::size_t n = steps_for(cfg);
    InitialConditions ics{cfg.u0, cfg.v0};

    std::ofstream summary = open_out(cfg.out_dir, "summary.txt");
    echo_config(summary, cfg);
    if (!meta.source.empty())
        summary << "# record: " << meta.source << ", " << meta.n_points << " points, "
                << (meta.explicit_time_column ? "explicit time column" : "fixed dt")
                << ", native dt " << fmt17(meta.native_dt) << ", kind " << meta.kind
                << ", scale " << fmt17(meta.scale) << "\n";
    summary << "# per-algorithm results\n";

    std::map<AlgorithmId, Trajectory> runs;
    bool oracle_ok = closed_form_applies(cfg, forcing);
    std::vector<double> uref;
    if (oracle_ok) uref = closed_form_series(cfg, p, forcing, cfg.h, n);

    for (AlgorithmId alg : cfg.algs) {
        Trajectory traj = simulate(alg, p, forcing, ics, cfg.h, n, cfg.jhat0);
        auto os = open_out(cfg.out_dir, "traj_" + algorithm_name(alg) + ".csv");
        write_trajectory_csv(os, p, traj, cfg.midpoints);
        summary << algorithm_name(alg) << ": final u = " << fmt17(traj.u.back())
                << ", final v = " << fmt17(traj.v.back());
        if (oracle_ok) {
            ErrorNorms en = error_norms_series(traj.u, uref);
            summary << ", err_final = " << fmt17(std::abs(traj.u.back() - uref.back()))
                    << ", err_max_rel = " << fmt17(en.max_rel);
        } else {
            summary << ", err_final = n/a, err_max_rel = n/a";
        }
        summary << "\n";
        runs.emplace(alg, std::move(traj));
    }

    // report same-formalism and cross-formalism agreement when both sides ran
    auto maxdiff = [](const Trajectory& x, const Trajectory& y) {
        double d = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            d = std::max(d, std::abs(x.u[k] - y.u[k]));
            scale = std::max(scale, std::abs(x.u[k]));
        }
        return scale > 0.0 ? d / scale : d;
    };
    const std::pair<AlgorithmId, AlgorithmId> pairs[] = {
        {AlgorithmId::EhpJquad, AlgorithmId::EhpUquad},
        {AlgorithmId::McapJquad, AlgorithmId::McapUquad},
        {AlgorithmId::EhpJquad, AlgorithmId::McapJquad},
        {AlgorithmId::EhpUquad, AlgorithmId::McapUquad},
        {AlgorithmId::EhpUJquad, AlgorithmId::McapUJquad},
    };
    for (auto [x, y] : pairs) {
        auto ix = runs.find(x), iy = runs.find(y);
        if (ix == runs.end() || iy == runs.end()) continue;
        double d = maxdiff(ix->second, iy->second);
        summary << "agreement " << algorithm_name(x) << " vs " << algorithm_name(y)
                << ": max|du|/max|u| = " << fmt17(d);
        if (d > 1e-6) summary << "  FINDING: exceeds the 1e-6 expectation";
        summary << "\n";
    }
    return 0;
}

int spectrum_body(const RunConfig& cfg) {
    OscillatorParams p = cfg.system();
    std::vector<double> grid;
    if (cfg.grid_min == 0.01 && cfg.grid_max == 10.0 && cfg.grid_points == 60) {
        grid = default_sweep_grid();
    } else {
        if (!(cfg.grid_min > 0.0) || !(cfg.grid_max > cfg.grid_min) || cfg.grid_points < 2)
            throw UsageError("spectrum grid requires 0 < grid_min < grid_max, grid_points >= 2");
        for (int i = 0; i < cfg.grid_points; ++i)
            grid.push_back(cfg.grid_min * std::pow(cfg.grid_max / cfg.grid_min,
                                                   double(i) / (cfg.grid_points - 1)));
    }
    std::vector<SpectralReport> reports = spectral_radius_sweep(cfg.algs, p, grid, false);
    if (cfg.damped) {
        auto damped_rows = spectral_radius_sweep(cfg.algs, p, grid, true);
        reports.insert(reports.end(), damped_rows.begin(), damped_rows.end());
    }
    auto os = open_out(cfg.out_dir, "spectrum.csv");
    echo_config(os, cfg, /*as_comment=*/true);
    write_spectral_csv(os, reports);
    return 0;
}

int pe_table_body(const RunConfig& cfg) {
    if (!(cfg.pe_min > 0.0) || !(cfg.pe_max > cfg.pe_min) || cfg.pe_points < 2)
        throw UsageError("pe-table requires 0 < pe_min < pe_max and pe_points >= 2");
    auto os = open_out(cfg.out_dir, "pe_table.csv");
    echo_config(os, cfg, /*as_comment=*/true);
    os << "# pe convention: (T_num - T_n)/T_n from the principal eigenvalue phase\n";
    os << "h_over_Tn";
    for (AlgorithmId alg : cfg.algs) os << ',' << algorithm_name(alg);
    os << "\n";
    for (int i = 0; i < cfg.pe_points; ++i) {
        double x = cfg.pe_min + (cfg.pe_max - cfg.pe_min) * double(i) / (cfg.pe_points - 1);
        os << fmt17(x);
        for (AlgorithmId alg : cfg.algs) {
            try {
                os << ',' << fmt17(period_elongation(alg, x).pe);
            } catch (const std::domain_error&) {
                os << ',';  // outside the oscillatory regime
            }
        }
        os << "\n";
    }
    return 0;
}

int converge_body(const RunConfig& cfg) {
    OscillatorParams p = cfg.system();
    ForcingSpec forcing = cfg.forcing_spec();
    if (!closed_form_applies(cfg, forcing))
        throw UsageError("converge needs a forcing with a closed-form reference "
                         "(zero, or sin with rest initial state)");
    InitialConditions ics{cfg.u0, cfg.v0};
    auto os = open_out(cfg.out_dir, "convergence.csv");
    echo_config(os, cfg, /*as_comment=*/true);
    os << "alg,h,err_final,err_max,order_final,order_max,roundoff_limited\n";
    for (AlgorithmId alg : cfg.algs) {
        auto levels = convergence_order(alg, p, forcing, ics, cfg.h0, cfg.levels, cfg.duration);
        for (const auto& lv : levels)
            os << algorithm_name(alg) << ',' << fmt17(lv.h) << ',' << fmt17(lv.err_final) << ','
               << fmt17(lv.err_max) << ',' << fmt17(lv.order_final) << ','
               << fmt17(lv.order_max) << ',' << (lv.roundoff_limited ? 1 : 0) << "\n";
    }
    return 0;
}

int validate_body(const RunConfig& cfg) {
    ValidationReport rep = validate_printed_matrices();
    auto txt = open_out(cfg.out_dir, "validation.txt");
    rep.write_text(txt);
    auto csv = open_out(cfg.out_dir, "validation.csv");
    rep.write_csv(csv);
    rep.write_text(std::cout);
    return rep.internally_consistent() ? 0 : 1;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) { return run_guarded(cfg, simulate_body); }
int cmd_spectrum(const RunConfig& cfg) { return run_guarded(cfg, spectrum_body); }
int cmd_pe_table(const RunConfig& cfg) { return run_guarded(cfg, pe_table_body); }
int cmd_converge(const RunConfig& cfg) { return run_guarded(cfg, converge_body); }
int cmd_validate_matrices(const RunConfig& cfg) { return run_guarded(cfg, validate_body); }

}  // namespace kvlab
