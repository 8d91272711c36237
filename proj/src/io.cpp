#include "newtonlk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace newtonlk {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> expected_header(int n) {
    std::vector<std::string> h;
    for (int i = 1; i <= n; ++i) h.push_back("u_" + std::to_string(i));
    for (int i = 0; i <= n + 1; ++i) h.push_back("x_" + std::to_string(i));
    for (int i = 0; i <= n + 1; ++i) h.push_back("Lkx_" + std::to_string(i));
    return h;
}

void dump(const Json& v, int indent, int depth, std::string& out) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (v.type()) {
        case Json::value_t::number_float: {
            const double d = v.get<double>();
            out += std::isfinite(d) ? format_double(d) : "null";
            break;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                break;
            }
            out += "[";
            out += nl;
            bool first = true;
            for (const auto& e : v) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad;
                dump(e, indent, depth + 1, out);
            }
            out += nl;
            out += close_pad + "]";
            break;
        }
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                break;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (const auto& [key, e] : v.items()) {
                if (!first) {
                    out += ",";
                    out += nl;
                }
                first = false;
                out += pad + Json(key).dump() + (indent > 0 ? ": " : ":");
                dump(e, indent, depth + 1, out);
            }
            out += nl;
            out += close_pad + "}";
            break;
        }
        default: out += v.dump(); break;
    }
}

}  // namespace

std::string write_samples_csv(const SampleSet& samples) {
    std::string out;
    const auto header = expected_header(samples.n);
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& p : samples.points) {
        bool first = true;
        auto put = [&](const Vec& v) {
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                if (!first) out += ",";
                first = false;
                out += format_double(v(i));
            }
        };
        put(p.u);
        put(p.x);
        put(p.lkx);
        out += "\n";
    }
    return out;
}

SampleSet read_samples_csv(std::string_view text, int k, int c) {
    std::vector<std::string_view> lines;
    for (auto line : split(text, '\n')) {
        line = trim(line);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw SchemaError("CSV is empty (missing header)");

    const auto header = split(lines[0], ',');
    int n = 0;
    while (n < static_cast<int>(header.size()) && trim(header[static_cast<std::size_t>(n)]).starts_with("u_")) ++n;
    const auto expected = expected_header(n);
    if (n < 1 || header.size() != expected.size()) {
        throw SchemaError("CSV header: expected u_1..u_n, x_0..x_{n+1}, Lkx_0..Lkx_{n+1} (" +
                          std::to_string(header.size()) + " columns found)");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) != expected[i]) {
            throw SchemaError("CSV header column " + std::to_string(i + 1) + ": expected '" + expected[i] + "', found '" +
                              std::string(trim(header[i])) + "'");
        }
    }
    if (lines.size() < 2) throw SchemaError("CSV has a header but no samples");

    SampleSet s;
    s.n = n;
    s.k = k;
    s.c = c;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto fields = split(lines[row], ',');
        if (fields.size() != header.size()) {
            throw SchemaError("CSV line " + std::to_string(row + 1) + " (sample row " + std::to_string(row) + "): expected " + std::to_string(header.size()) +
                              " fields, found " + std::to_string(fields.size()));
        }
        std::vector<double> vals(fields.size());
        for (std::size_t col = 0; col < fields.size(); ++col) {
            const auto f = trim(fields[col]);
            const auto res = std::from_chars(f.data(), f.data() + f.size(), vals[col]);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size() || !std::isfinite(vals[col])) {
                throw SchemaError("CSV line " + std::to_string(row + 1) + " (sample row " + std::to_string(row) + "), column " + std::to_string(col + 1) + " ('" +
                                  expected[col] + "'): not a finite number: '" + std::string(f) + "'");
            }
        }
        SamplePoint p;
        p.u = Eigen::Map<const Vec>(vals.data(), n);
        p.x = Eigen::Map<const Vec>(vals.data() + n, n + 2);
        p.lkx = Eigen::Map<const Vec>(vals.data() + 2 * n + 2, n + 2);
        s.points.push_back(std::move(p));
    }
    return s;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw IoError("error while writing '" + path + "'");
}

std::string dump_json(const Json& value, int indent) {
    std::string out;
    dump(value, indent, 0, out);
    out += "\n";
    return out;
}

Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Vec& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace newtonlk
