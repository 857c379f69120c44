/**
 * CSV dataset I/O.
 *
 * Sample rows: `y,delta,v0,...,v{G-1}` with G the curve grid resolution.
 * An optional header line is tolerated on read (detected, skipped). The
 * response field may be empty or `NA` for a nonrespondent whose response
 * was never retrieved; such rows must carry delta = 0.
 *
 * Prediction inputs reuse the same format, or bare curve rows
 * `v0,...,v{G-1}` when no flags are available.
 */

#ifndef FMNAR_DATASET_IO_HPP
#define FMNAR_DATASET_IO_HPP

#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve.hpp"
#include "mnar.hpp"

namespace fmnar {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

inline bool missing_field(const std::string& s) {
    return s.empty() || s == "NA" || s == "na" || s == "nan";
}

} // namespace detail

/**
 * Read `y,delta,v0..` rows. Throws std::runtime_error with a line number
 * on malformed input; GridMismatchError when row widths disagree.
 */
inline std::vector<Sample> read_dataset_csv(std::istream& in) {
    std::vector<Sample> samples;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = detail::split_csv_line(line);
        double probe;
        const bool was_first = first_content;
        first_content = false;
        if (was_first && !fields.empty() &&
            !detail::parse_double(fields[0], probe) &&
            !detail::missing_field(fields[0]))
            continue; // header line
        if (fields.size() < 4)
            throw std::runtime_error("dataset line " + std::to_string(lineno) +
                                     ": need y,delta and at least 2 curve values");
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw GridMismatchError("dataset line " + std::to_string(lineno) +
                                    ": inconsistent column count");

        double delta_value;
        if (!detail::parse_double(fields[1], delta_value) ||
            (delta_value != 0.0 && delta_value != 1.0))
            throw std::runtime_error("dataset line " + std::to_string(lineno) +
                                     ": delta must be 0 or 1");
        const bool delta = delta_value == 1.0;

        std::vector<double> values(width - 2);
        for (std::size_t j = 2; j < width; ++j)
            if (!detail::parse_double(fields[j], values[j - 2]))
                throw std::runtime_error("dataset line " + std::to_string(lineno) +
                                         ": bad curve value");

        if (detail::missing_field(fields[0])) {
            if (delta)
                throw std::runtime_error(
                    "dataset line " + std::to_string(lineno) +
                    ": observed row (delta=1) must carry a response");
            samples.push_back(Sample::unlabeled(Curve(std::move(values))));
        } else {
            double y_value;
            if (!detail::parse_double(fields[0], y_value) ||
                (y_value != 0.0 && y_value != 1.0))
                throw std::runtime_error("dataset line " + std::to_string(lineno) +
                                         ": response must be 0, 1 or empty/NA");
            Sample s(Curve(std::move(values)), y_value == 1.0 ? 1 : 0);
            s.set_delta(delta);
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

/** Write rows readable by read_dataset_csv, full double precision. */
inline void write_dataset_csv(std::ostream& out,
                              const std::vector<Sample>& samples,
                              bool with_header = true) {
    if (with_header) {
        out << "y,delta";
        if (!samples.empty())
            for (std::size_t j = 0; j < samples.front().x().grid_count(); ++j)
                out << ",v" << j;
        out << "\n";
    }
    char buf[64];
    for (const auto& s : samples) {
        if (s.has_label())
            out << s.oracle_label();
        else
            out << "NA";
        out << "," << (s.observed() ? 1 : 0);
        for (double v : s.x().values()) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << "," << buf;
        }
        out << "\n";
    }
}

/**
 * Read prediction inputs: bare curve rows of exactly `grid_count` values,
 * or full dataset rows (`y,delta,...` prefix ignored).
 */
inline std::vector<Curve> read_prediction_csv(std::istream& in,
                                              std::size_t grid_count) {
    std::vector<Curve> curves;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = detail::split_csv_line(line);
        const bool was_first = first_content;
        first_content = false;
        double probe;
        if (was_first && !fields.empty() &&
            !detail::parse_double(fields[0], probe) &&
            !detail::missing_field(fields[0]))
            continue; // header line
        std::size_t offset;
        if (fields.size() == grid_count)
            offset = 0;
        else if (fields.size() == grid_count + 2)
            offset = 2;
        else
            throw GridMismatchError(
                "prediction line " + std::to_string(lineno) + ": expected " +
                std::to_string(grid_count) + " or " +
                std::to_string(grid_count + 2) + " columns, got " +
                std::to_string(fields.size()));
        std::vector<double> values(grid_count);
        for (std::size_t j = 0; j < grid_count; ++j)
            if (!detail::parse_double(fields[offset + j], values[j]))
                throw std::runtime_error("prediction line " +
                                         std::to_string(lineno) +
                                         ": bad curve value");
        curves.emplace_back(std::move(values));
    }
    return curves;
}

} // namespace fmnar

#endif // FMNAR_DATASET_IO_HPP
