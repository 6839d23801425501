// report.hpp: locale-independent number formatting, CSV I/O, atomic file writes

#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <unistd.h>
#include <vector>

#include "tmsf/errors.hpp"
#include "tmsf/sweep.hpp"

namespace tmsf::report {

// Shortest decimal that parses back to the same double.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline double parse_number(const std::string& s) {
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw InvalidArgument("not a number: '" + s + "'");
    return x;
}

inline std::string format_cell(const sweep::Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double x) const { return format_number(x); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, v);
}

inline std::string to_csv(const std::vector<std::string>& header, const std::vector<sweep::Record>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.cells.size(); ++i) out += (i ? "," : "") + format_cell(row.cells[i].second);
        out += '\n';
    }
    return out;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw InvalidArgument("no column '" + name + "'");
    }
};

// Parser for the files written above (no quoting, LF line endings).
inline CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const auto pos = l.find(',', start);
            f.push_back(l.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return f;
    };
    if (!std::getline(in, line)) throw InvalidArgument("empty CSV");
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split(line);
        if (f.size() != t.header.size()) throw InvalidArgument("ragged CSV row");
        t.rows.push_back(std::move(f));
    }
    return t;
}

// Writes to a sibling temporary and renames over the target, so readers never
// see a partial file.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidArgument("cannot open output file " + path.string());
        f << content;
        f.flush();
        if (!f) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw InvalidArgument("failed writing output file " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw InvalidArgument("cannot move output into place at " + path.string());
    }
}

} // namespace tmsf::report
