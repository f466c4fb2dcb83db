#include "kvlab/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kvlab {

namespace {

bool blank_or_comment(std::string_view line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() &&
               (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ','))
            ++i;
        std::size_t j = i;
        while (j < line.size() &&
               !(std::isspace(static_cast<unsigned char>(line[j])) || line[j] == ','))
            ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

double parse_number(std::string_view tok, std::size_t line_no) {
    std::string buf(tok);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str() || *end != '\0')
        throw std::invalid_argument("record parse: non-numeric token '" + buf + "' on line " +
                                    std::to_string(line_no));
    return v;
}

}  // namespace

ParsedRecord parse_two_column(std::string_view text) {
    ParsedRecord rec;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        if (blank_or_comment(line)) continue;
        auto toks = split_tokens(line);
        if (toks.size() != 2)
            throw std::invalid_argument("record parse: expected two columns on line " +
                                        std::to_string(line_no));
        double t = parse_number(toks[0], line_no);
        double v = parse_number(toks[1], line_no);
        if (!rec.times.empty() && !(t > rec.times.back()))
            throw std::invalid_argument("record parse: time not strictly increasing on line " +
                                        std::to_string(line_no));
        rec.times.push_back(t);
        rec.values.push_back(v);
    }
    return rec;
}

ParsedRecord parse_fixed_dt(std::string_view text, std::size_t header_lines, double dt,
                            std::size_t expected_points, std::string* warning) {
    if (!(dt > 0.0)) throw std::invalid_argument("parse_fixed_dt: dt must be positive");
    ParsedRecord rec;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        if (line_no <= header_lines) continue;
        if (blank_or_comment(line)) continue;
        for (auto tok : split_tokens(line)) rec.values.push_back(parse_number(tok, line_no));
    }
    rec.times.resize(rec.values.size());
    for (std::size_t n = 0; n < rec.values.size(); ++n)
        rec.times[n] = static_cast<double>(n) * dt;
    if (expected_points != 0 && rec.values.size() < expected_points && warning != nullptr)
        *warning = "record holds " + std::to_string(rec.values.size()) + " values, " +
                   std::to_string(expected_points) + " declared";
    return rec;
}

double interpolate_record(const std::vector<double>& times, const std::vector<double>& values,
                          double t) {
    if (times.size() < 2 || times.size() != values.size())
        throw std::invalid_argument("interpolate_record: need matching series of length >= 2");
    if (t < times.front() || t > times.back())
        throw std::out_of_range("record covers [" + std::to_string(times.front()) + ", " +
                                std::to_string(times.back()) + "], requested t=" +
                                std::to_string(t));
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return values.front();
    std::size_t hi = static_cast<std::size_t>(it - times.begin());
    std::size_t lo = hi - 1;
    if (hi == times.size()) return values.back();
    double w = (t - times[lo]) / (times[hi] - times[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

std::vector<double> resample_to_grid(const std::vector<double>& times,
                                     const std::vector<double>& values, double h,
                                     std::size_t n_steps) {
    if (!(h > 0.0)) throw std::invalid_argument("resample_to_grid: h must be positive");
    double t_end = static_cast<double>(n_steps) * h;
    if (times.size() < 2 || times.size() != values.size())
        throw std::invalid_argument("resample_to_grid: need matching series of length >= 2");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("resample_to_grid: times not strictly increasing at index " +
                                        std::to_string(i));
    if (times.front() > 0.0 || times.back() < t_end)
        throw std::out_of_range("record covers up to t=" + std::to_string(times.back()) +
                                ", need t=" + std::to_string(t_end));
    std::vector<double> out(n_steps + 1);
    for (std::size_t n = 0; n <= n_steps; ++n) {
        double t = std::min(static_cast<double>(n) * h, times.back());
        out[n] = interpolate_record(times, values, t);
    }
    return out;
}

ParsedRecord load_record(const std::string& path, const std::string& format,
                         std::size_t header_lines, double dt, const std::string& kind,
                         double scale, RecordMeta* meta) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::invalid_argument("cannot read forcing record '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    ParsedRecord rec;
    bool two_col = (format == "two-column");
    if (two_col) {
        rec = parse_two_column(ss.str());
    } else if (format == "fixed-dt") {
        rec = parse_fixed_dt(ss.str(), header_lines, dt);
    } else {
        throw std::invalid_argument("record format must be two-column or fixed-dt, got '" +
                                    format + "'");
    }
    if (meta) {
        meta->source = path;
        meta->n_points = rec.times.size();
        meta->explicit_time_column = two_col;
        meta->native_dt = two_col ? (rec.times.size() > 1 ? rec.times[1] - rec.times[0] : 0.0)
                                  : dt;
        meta->scale = scale;
        meta->kind = kind;
    }
    if (rec.times.size() < 2)
        throw std::invalid_argument("record '" + path + "' holds fewer than two samples");
    return rec;
}

}  // namespace kvlab
