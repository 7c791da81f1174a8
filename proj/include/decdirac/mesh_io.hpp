/*
 * Copyright 2026 The decdirac Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Text mesh format:
//
//   decmesh 2
//   vertices N
//   x y            (N lines)
//   triangles M
//   i j k          (M lines, 0-based)
//
// '#' starts a comment that runs to the end of the line; blank lines are ignored.

#include <decdirac/error.hpp>
#include <decdirac/mesh.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace decdirac {

namespace detail {

class LineReader {
public:
    explicit LineReader(std::istream& in)
        : m_in(in)
    {}

    /// Next non-empty, comment-stripped line; false at end of input.
    bool next(std::string& out)
    {
        std::string raw;
        while (std::getline(m_in, raw)) {
            ++m_line;
            if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            const auto first = raw.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            const auto last = raw.find_last_not_of(" \t\r");
            out = raw.substr(first, last - first + 1);
            return true;
        }
        return false;
    }

    std::size_t line() const { return m_line; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(m_line, what); }

private:
    std::istream& m_in;
    std::size_t m_line = 0;
};

template <typename... T>
bool parse_exact(const std::string& text, T&... values)
{
    std::istringstream ss(text);
    ss.imbue(std::locale::classic());
    (ss >> ... >> values);
    if (ss.fail()) return false;
    std::string extra;
    return !(ss >> extra);
}

inline std::size_t read_count(LineReader& reader, const std::string& keyword)
{
    std::string line;
    if (!reader.next(line)) reader.fail("expected '" + keyword + " <count>', found end of file");
    std::string word;
    long long count = -1;
    if (!parse_exact(line, word, count) || word != keyword || count < 0) {
        reader.fail("expected '" + keyword + " <count>'");
    }
    return static_cast<std::size_t>(count);
}

} // namespace detail

/// Parses a mesh and validates it as in build_complex(). Syntax errors and out-of-range
/// vertex references raise ParseError with the offending line.
inline SimplicialComplex read_mesh(std::istream& in)
{
    detail::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) reader.fail("empty mesh file");
    {
        std::string magic;
        int dim = 0;
        if (!detail::parse_exact(line, magic, dim) || magic != "decmesh") reader.fail("expected header 'decmesh 2'");
        if (dim != 2) reader.fail("only dimension 2 is supported");
    }

    const std::size_t nv = detail::read_count(reader, "vertices");
    std::vector<Point2> vertices(nv);
    for (auto& p : vertices) {
        if (!reader.next(line)) reader.fail("unexpected end of file in vertex list");
        if (!detail::parse_exact(line, p.x, p.y)) reader.fail("expected 'x y'");
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) reader.fail("non-finite coordinate");
    }

    const std::size_t nt = detail::read_count(reader, "triangles");
    std::vector<Triangle> triangles(nt);
    for (auto& t : triangles) {
        if (!reader.next(line)) reader.fail("unexpected end of file in triangle list");
        long long i = 0, j = 0, k = 0;
        if (!detail::parse_exact(line, i, j, k)) reader.fail("expected 'i j k'");
        for (long long idx : {i, j, k}) {
            if (idx < 0 || idx >= static_cast<long long>(nv)) {
                reader.fail("vertex index " + std::to_string(idx) + " out of range [0, " + std::to_string(nv) + ")");
            }
        }
        t = {static_cast<Index>(i), static_cast<Index>(j), static_cast<Index>(k)};
    }
    if (reader.next(line)) reader.fail("unexpected trailing content");
    return build_complex(std::move(vertices), std::move(triangles));
}

inline SimplicialComplex load_mesh(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open mesh file '" + path.string() + "'");
    return read_mesh(in);
}

/// Writes coordinates with 17 significant digits, so a reload reproduces them exactly.
inline void write_mesh(std::ostream& out, const SimplicialComplex& c)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(17);
    ss << "decmesh 2\n";
    ss << "vertices " << c.num_vertices() << '\n';
    for (const Point2& p : c.vertices()) ss << p.x << ' ' << p.y << '\n';
    ss << "triangles " << c.num_triangles() << '\n';
    for (const Triangle& t : c.triangles()) ss << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    out << ss.str();
}

inline void save_mesh(const SimplicialComplex& c, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write mesh file '" + path.string() + "'");
    write_mesh(out, c);
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

} // namespace decdirac
