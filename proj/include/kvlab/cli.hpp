// Batch front end: resolves a run configuration from a flat key=value config
// file plus command-line overrides, then dispatches to one of the commands.
// Exit codes: 0 ok, 1 internal validation failure, 2 usage error.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kvlab/elements.hpp"
#include "kvlab/ingest.hpp"
#include "kvlab/model.hpp"

namespace kvlab {

struct RunConfig {
    std::string out_dir = "out";
    std::vector<AlgorithmId> algs;  // resolved from the `alg` selector

    // system: (m, c, a) directly, or (m, Tn, xi) when Tn/xi are set
    double m = 1.0;
    std::optional<double> c, a, Tn, xi;

    double h = 0.01;
    double duration = 10.0;
    double u0 = 0.0, v0 = 0.0;
    double jhat0 = 0.0;

    std::string forcing = "sin:100,10";
    std::string record_kind = "force";  // force | ground-accel
    std::optional<double> scale;
    std::string record_format = "two-column";  // two-column | fixed-dt
    double record_dt = 0.02;
    int record_header_lines = 0;

    bool midpoints = false;

    // spectrum
    double grid_min = 0.01, grid_max = 10.0;
    int grid_points = 60;
    bool damped = false;

    // pe-table
    double pe_min = 0.02, pe_max = 0.5;
    int pe_points = 49;

    // converge
    double h0 = 0.05;
    int levels = 4;

    OscillatorParams system() const;
    // `meta` is filled when the forcing comes from a record file
    ForcingSpec forcing_spec(RecordMeta* meta = nullptr) const;
    // fully resolved key=value listing (sorted), echoed into summaries
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

// Parses `key = value` lines ('#' comments); unknown keys are collected and
// reported together. Keys already fixed on the command line keep their value.
void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::map<std::string, bool>& overridden);

// Selector "all" or comma-separated algorithm names.
std::vector<AlgorithmId> parse_algorithm_selector(const std::string& selector);

int cmd_simulate(const RunConfig& cfg);
int cmd_spectrum(const RunConfig& cfg);
int cmd_pe_table(const RunConfig& cfg);
int cmd_converge(const RunConfig& cfg);
int cmd_validate_matrices(const RunConfig& cfg);

}  // namespace kvlab
