#pragma once

// ".ls" square files and ".wt" weight files: '#' comment lines, then n lines
// of n whitespace-separated decimal integers.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kweights/error.hpp"
#include "kweights/latin.hpp"

namespace kweights::io {

namespace detail {

inline std::vector<std::vector<std::int64_t>> parse_rows(const std::string& text) {
    std::vector<std::vector<std::int64_t>> rows;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<std::int64_t> row;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            std::int64_t v = 0;
            const auto* end = tok.data() + tok.size();
            const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
            if (ec == std::errc::result_out_of_range)
                throw Error(ErrorCode::IntegerOverflow, "line " + std::to_string(lineNo) + ": '" + tok + "'");
            if (ec != std::errc() || ptr != end)
                throw Error(ErrorCode::ParseError, "line " + std::to_string(lineNo) + ": not an integer '" + tok + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, "no data lines");
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw Error(ErrorCode::NotSquare, "expected " + std::to_string(rows.size()) + " entries per line");
    return rows;
}

template <class Row>
std::string format_rows(int n, Row&& row_at) {
    std::string out;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (c) out += ' ';
            out += std::to_string(row_at(r, c));
        }
        out += '\n';
    }
    return out;
}

} // namespace detail

inline LatinSquare parse_square(const std::string& text) {
    const auto rows = detail::parse_rows(text);
    const int n = static_cast<int>(rows.size());
    std::vector<int> flat;
    for (const auto& r : rows)
        for (auto v : r) {
            if (v < 0 || v >= n) v = -1; // reported as SymbolOutOfRange below
            flat.push_back(static_cast<int>(v));
        }
    return LatinSquare::from_flat(n, std::move(flat));
}

inline WeightMatrix parse_weight(const std::string& text) { return WeightMatrix::from_rows(detail::parse_rows(text)); }

inline std::string format_square(const LatinSquare& L) {
    return detail::format_rows(L.order(), [&](int r, int c) { return L.at(r, c); });
}

inline std::string format_weight(const WeightMatrix& W) {
    return detail::format_rows(W.order(), [&](int r, int c) { return W.at(r, c); });
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline LatinSquare load_square(const std::string& path) { return parse_square(read_file(path)); }
inline WeightMatrix load_weight(const std::string& path) { return parse_weight(read_file(path)); }

} // namespace kweights::io
