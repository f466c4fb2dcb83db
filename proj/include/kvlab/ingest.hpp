// Ground-motion / force record parsing and resampling onto the integration
// grid. No extrapolation: a request past the record end is an error.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kvlab {

struct ParsedRecord {
    std::vector<double> times;
    std::vector<double> values;
};

struct RecordMeta {
    std::string source;
    std::size_t n_points = 0;
    bool explicit_time_column = true;
    double native_dt = 0.0;  // meaningful when !explicit_time_column
    double scale = 1.0;
    std::string kind;  // "force" | "ground-accel"
};

// Whitespace- or comma-separated (time, value) pairs, one per line.
// Lines starting with '#' are ignored. Times must be strictly increasing;
// violations are reported with their line number.
ParsedRecord parse_two_column(std::string_view text);

// Header lines followed by values wrapped across rows (PEER-style records).
// Times are synthesized as n*dt. If `expected_points` is nonzero and the file
// holds fewer values, a warning string is set instead of failing.
ParsedRecord parse_fixed_dt(std::string_view text, std::size_t header_lines, double dt,
                            std::size_t expected_points = 0, std::string* warning = nullptr);

// Linear interpolation of a record at one time; rejects times outside
// [times.front(), times.back()].
double interpolate_record(const std::vector<double>& times, const std::vector<double>& values,
                          double t);

// Record values linearly interpolated at t_n = n*h, n = 0..n_steps.
// The record must cover [0, n_steps*h]; the error names the coverage end.
std::vector<double> resample_to_grid(const std::vector<double>& times,
                                     const std::vector<double>& values, double h,
                                     std::size_t n_steps);

// Reads a record file in either format and fills its descriptor.
ParsedRecord load_record(const std::string& path, const std::string& format,
                         std::size_t header_lines, double dt, const std::string& kind,
                         double scale, RecordMeta* meta = nullptr);

}  // namespace kvlab
