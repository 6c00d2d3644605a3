#ifndef DQLAB_REPORT_HPP
#define DQLAB_REPORT_HPP

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqlab/measure.hpp"

namespace dqlab {

/// Fixed-format float printing so identical runs produce byte-identical
/// artifacts across locales and stream states.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Survival curve CSV: lambda, mu, stderr, truncation_bound. Missing
/// per-node error/truncation data is written as 0.
inline void write_curve_csv(const std::string& path, const DistributionCurve& c,
                            const std::string& provenance = "") {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_curve_csv: cannot open " + path);
    os << "lambda,mu,stderr,truncation_bound";
    if (!provenance.empty()) os << ",provenance";
    os << "\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        os << fmt_double(c.lambda[i]) << ',' << fmt_double(c.mu[i]) << ','
           << fmt_double(i < c.stderr_.size() ? c.stderr_[i] : 0.0) << ','
           << fmt_double(i < c.truncation_bound.size() ? c.truncation_bound[i] : 0.0);
        if (!provenance.empty()) os << ',' << provenance;
        os << "\n";
    }
}

/// RFC-4180 field quoting: fields containing commas or quotes are enclosed
/// in double quotes with embedded quotes doubled.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

/// Generic row-oriented CSV writer.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("CsvTable: cannot open " + path);
        for (std::size_t i = 0; i < header.size(); ++i)
            os << csv_field(header[i]) << (i + 1 < header.size() ? "," : "\n");
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size(); ++i)
                os << csv_field(r[i]) << (i + 1 < r.size() ? "," : "\n");
    }
};

}  // namespace dqlab

#endif
