#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scriptid/error.hpp"
#include "scriptid/feature_vector.hpp"

namespace scriptid {

namespace detail {

// Minimal RFC-4180 quoting for the label/source columns.
inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::vector<std::string> csv_split(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw parse_error("line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string feature_csv_header() {
    std::string h = "label,source";
    for (int i = 1; i <= kFeatureCount; ++i) h += ",f" + std::to_string(i);
    return h;
}

// CSV schema: label,source,f1..f54 with 17-significant-digit reals, which
// round-trips doubles exactly.
inline void write_features(const std::vector<FeatureVector>& rows, const std::string& dest) {
    std::ofstream out(dest, std::ios::binary);
    if (!out) throw io_error("cannot write " + dest);
    out << feature_csv_header() << "\n";
    for (const auto& r : rows) {
        if (!r.all_finite())
            throw error("write_features: non-finite feature value in row from " + r.source);
        out << detail::csv_quote(r.label) << "," << detail::csv_quote(r.source);
        for (double v : r.values) out << "," << detail::format_double(v);
        out << "\n";
    }
    if (!out) throw io_error("short write: " + dest);
}

// Reads a feature CSV. When `allowed_labels` is nonempty, any label outside
// it is a parse error naming the offending line.
inline std::vector<FeatureVector> read_features(const std::string& src,
                                                const std::vector<std::string>& allowed_labels = {}) {
    std::ifstream in(src, std::ios::binary);
    if (!in) throw io_error("cannot open " + src);

    const std::set<std::string> allowed(allowed_labels.begin(), allowed_labels.end());
    std::vector<FeatureVector> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != feature_csv_header())
                throw parse_error(src + ": line 1: unexpected header");
            continue;
        }
        if (line.empty()) continue;
        const auto fields = detail::csv_split(line, line_no);
        if (fields.size() != static_cast<size_t>(kFeatureCount) + 2)
            throw parse_error(src + ": line " + std::to_string(line_no) + ": expected " +
                              std::to_string(kFeatureCount + 2) + " columns, got " +
                              std::to_string(fields.size()));
        FeatureVector fv;
        fv.label = fields[0];
        fv.source = fields[1];
        if (!allowed.empty() && !fv.label.empty() && !allowed.count(fv.label))
            throw parse_error(src + ": line " + std::to_string(line_no) + ": unknown label '" +
                              fv.label + "'");
        for (int i = 0; i < kFeatureCount; ++i) {
            try {
                size_t pos = 0;
                fv.values[i] = std::stod(fields[i + 2], &pos);
                if (pos != fields[i + 2].size()) throw std::invalid_argument(fields[i + 2]);
            } catch (const std::exception&) {
                throw parse_error(src + ": line " + std::to_string(line_no) + ": bad number '" +
                                  fields[i + 2] + "' in column f" + std::to_string(i + 1));
            }
            if (!std::isfinite(fv.values[i]))
                throw parse_error(src + ": line " + std::to_string(line_no) +
                                  ": non-finite value in column f" + std::to_string(i + 1));
        }
        rows.push_back(std::move(fv));
    }
    return rows;
}

}  // namespace scriptid
