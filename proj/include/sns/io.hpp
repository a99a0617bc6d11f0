#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <sns/graph.hpp>
#include <sns/linalg.hpp>

namespace sns::io {

namespace fs = std::filesystem;

/// Shortest round-trippable decimal form (17 significant digits).
inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep = ',')
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) {
        s.remove_suffix(1);
    }
    return s;
}

inline bool parse_double(std::string_view field, double& out)
{
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc() && ptr == end && !field.empty();
}

inline std::ifstream open_in(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return in;
}

inline std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    return out;
}

} // namespace detail

/**
 * Reads a comma-separated numeric table, rows = observations. A first row
 * containing any non-numeric field is treated as a header and skipped.
 */
inline Matrix read_matrix_csv(const fs::path& path)
{
    auto in = detail::open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line);
        std::vector<double> values(fields.size());
        bool numeric = true;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (!detail::parse_double(fields[c], values[c])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (rows.empty() && width == 0) {
                width = fields.size();  // header
                continue;
            }
            throw Error(ErrorCode::ParseError,
                        path.string() + ":" + std::to_string(line_no) + ": non-numeric field");
        }
        if (width == 0) width = values.size();
        if (values.size() != width) {
            throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                                   std::to_string(width) + " fields, found " +
                                                   std::to_string(values.size()));
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, path.string() + ": no data rows");

    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
    return m;
}

inline void write_matrix_csv(const fs::path& path, const Matrix& m, const std::vector<std::string>& header = {})
{
    auto out = detail::open_out(path);
    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
        out << '\n';
    }
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
        out << '\n';
    }
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

/// Edge list with header "i,j"; vertices are written 1-based to match column positions.
inline void write_edges_csv(const fs::path& path, const EdgeSet& edges)
{
    auto out = detail::open_out(path);
    out << "i,j\n";
    for (const auto& e : edges) out << e.i + 1 << ',' << e.j + 1 << '\n';
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

inline EdgeSet read_edges_csv(const fs::path& path)
{
    auto in = detail::open_in(path);
    EdgeSet edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || detail::trim(line).empty()) continue;
        const auto fields = detail::split(line);
        double a = 0, b = 0;
        if (fields.size() != 2 || !detail::parse_double(fields[0], a) || !detail::parse_double(fields[1], b)) {
            throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_no) + ": bad edge row");
        }
        const auto i = static_cast<Index>(a) - 1;
        const auto j = static_cast<Index>(b) - 1;
        edges.push_back({std::min(i, j), std::max(i, j)});
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
inline std::string file_digest(const fs::path& path)
{
    auto in = detail::open_in(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

} // namespace sns::io
