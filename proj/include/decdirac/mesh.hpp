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

#include <decdirac/error.hpp>
#include <decdirac/geometry.hpp>

#include <Eigen/SparseCore>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace decdirac {

using Index = int;
using Triangle = std::array<Index, 3>;
using Edge = std::array<Index, 2>;
using IncidenceMatrix = Eigen::SparseMatrix<int>;

inline constexpr Index kNoTriangle = -1;

/// Relative tolerance for duplicate-vertex detection (scaled by the bounding box).
inline constexpr double kDuplicateTolerance = 1e-12;
/// Acuteness margin in radians: a triangle is well-centered iff every angle < pi/2 - margin.
inline constexpr double kAngleTolerance = 1e-10;

///
/// Oriented 2D triangulation of a polygonal domain.
///
/// Triangles are stored counterclockwise and edges run from the lower to the higher
/// vertex index. `coboundary0` (edges x vertices) carries +1 at an edge's head and -1 at
/// its tail; `coboundary1` (triangles x edges) carries +1 where the edge orientation
/// agrees with the counterclockwise boundary of the triangle. Immutable once built.
///
class SimplicialComplex {
public:
    /// Validates and orients the input; see build_complex().
    static SimplicialComplex build(std::vector<Point2> vertices, std::vector<Triangle> triangles);

    Index num_vertices() const { return static_cast<Index>(m_vertices.size()); }
    Index num_edges() const { return static_cast<Index>(m_edges.size()); }
    Index num_triangles() const { return static_cast<Index>(m_triangles.size()); }
    int euler_characteristic() const { return num_vertices() - num_edges() + num_triangles(); }

    const std::vector<Point2>& vertices() const { return m_vertices; }
    const std::vector<Triangle>& triangles() const { return m_triangles; }
    const std::vector<Edge>& edges() const { return m_edges; }

    Point2 vertex(Index v) const { return m_vertices[v]; }
    const Triangle& triangle(Index t) const { return m_triangles[t]; }
    const Edge& edge(Index e) const { return m_edges[e]; }

    /// Local edges of triangle t in the order (a,b), (b,c), (c,a) for t = (a,b,c).
    const std::array<Index, 3>& triangle_edges(Index t) const { return m_triangle_edges[t]; }
    /// Incidence signs matching triangle_edges().
    const std::array<int, 3>& triangle_edge_signs(Index t) const { return m_triangle_edge_signs[t]; }

    /// Triangle on the left of edge e (sign +1 in coboundary1), or kNoTriangle.
    Index left_triangle(Index e) const { return m_edge_left[e]; }
    /// Triangle on the right of edge e (sign -1 in coboundary1), or kNoTriangle.
    Index right_triangle(Index e) const { return m_edge_right[e]; }

    /// Triangles around v in counterclockwise order; for boundary vertices the fan starts
    /// at the triangle holding the outgoing boundary edge.
    const std::vector<Index>& vertex_fan(Index v) const { return m_vertex_fan[v]; }

    bool is_boundary_vertex(Index v) const { return m_boundary_vertex[v]; }
    bool is_boundary_edge(Index e) const { return m_boundary_edge[e]; }
    const std::vector<bool>& boundary_vertex_flags() const { return m_boundary_vertex; }
    const std::vector<bool>& boundary_edge_flags() const { return m_boundary_edge; }

    const IncidenceMatrix& coboundary0() const { return m_d0; }
    const IncidenceMatrix& coboundary1() const { return m_d1; }
    const Eigen::SparseMatrix<double>& d0() const { return m_d0_real; }
    const Eigen::SparseMatrix<double>& d1() const { return m_d1_real; }

    double edge_length(Index e) const { return distance(m_vertices[m_edges[e][0]], m_vertices[m_edges[e][1]]); }
    Vec2 edge_vector(Index e) const { return m_vertices[m_edges[e][1]] - m_vertices[m_edges[e][0]]; }
    double triangle_area(Index t) const
    {
        const auto& [a, b, c] = m_triangles[t];
        return 0.5 * orient2d(m_vertices[a], m_vertices[b], m_vertices[c]);
    }
    double domain_area() const
    {
        double sum = 0.0;
        for (Index t = 0; t < num_triangles(); ++t) sum += triangle_area(t);
        return sum;
    }

    /// Index of the edge {a, b}, or -1 if absent.
    Index find_edge(Index a, Index b) const
    {
        const Edge key = a < b ? Edge{a, b} : Edge{b, a};
        const auto it = std::lower_bound(m_edges.begin(), m_edges.end(), key);
        if (it == m_edges.end() || *it != key) return -1;
        return static_cast<Index>(it - m_edges.begin());
    }

private:
    SimplicialComplex() = default;

    std::vector<Point2> m_vertices;
    std::vector<Triangle> m_triangles;
    std::vector<Edge> m_edges;
    std::vector<std::array<Index, 3>> m_triangle_edges;
    std::vector<std::array<int, 3>> m_triangle_edge_signs;
    std::vector<Index> m_edge_left;
    std::vector<Index> m_edge_right;
    std::vector<std::vector<Index>> m_vertex_fan;
    std::vector<bool> m_boundary_vertex;
    std::vector<bool> m_boundary_edge;
    IncidenceMatrix m_d0;
    IncidenceMatrix m_d1;
    Eigen::SparseMatrix<double> m_d0_real;
    Eigen::SparseMatrix<double> m_d1_real;
};

struct MeshQuality {
    double h_max = 0.0;
    double h_min = 0.0;
    double min_angle = 0.0; // radians
    double max_angle = 0.0; // radians
    bool well_centered = false;
};

namespace detail {

inline void check_duplicates(const std::vector<Point2>& vertices)
{
    if (vertices.size() < 2) return;
    double xmin = vertices[0].x, xmax = xmin, ymin = vertices[0].y, ymax = ymin;
    for (const Point2& p : vertices) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double tol = kDuplicateTolerance * std::max({xmax - xmin, ymax - ymin, std::numeric_limits<double>::min()});

    std::vector<Index> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return vertices[a].x < vertices[b].x; });
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Point2 p = vertices[order[i]];
        for (std::size_t j = i + 1; j < order.size() && vertices[order[j]].x - p.x <= tol; ++j) {
            if (std::abs(vertices[order[j]].y - p.y) <= tol) {
                throw Error(ErrorCode::DuplicateVertex,
                            "vertices " + std::to_string(std::min(order[i], order[j])) + " and " +
                                std::to_string(std::max(order[i], order[j])) + " coincide");
            }
        }
    }
}

inline IncidenceMatrix make_incidence(Index rows, Index cols, const std::vector<Eigen::Triplet<int>>& entries)
{
    IncidenceMatrix m(rows, cols);
    m.setFromTriplets(entries.begin(), entries.end());
    m.makeCompressed();
    return m;
}

} // namespace detail

inline SimplicialComplex SimplicialComplex::build(std::vector<Point2> vertices, std::vector<Triangle> triangles)
{
    const auto nv = static_cast<Index>(vertices.size());
    for (const Point2& p : vertices) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorCode::InvalidArgument, "non-finite vertex coordinate");
        }
    }
    detail::check_duplicates(vertices);

    for (std::size_t t = 0; t < triangles.size(); ++t) {
        auto& tri = triangles[t];
        for (Index v : tri) {
            if (v < 0 || v >= nv) {
                throw Error(ErrorCode::IndexOutOfRange,
                            "triangle " + std::to_string(t) + " references vertex " + std::to_string(v));
            }
        }
        const double area2 = orient2d(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
        if (area2 < 0.0) std::swap(tri[1], tri[2]);
        const double scale = std::max({distance(vertices[tri[0]], vertices[tri[1]]),
                                       distance(vertices[tri[1]], vertices[tri[2]]),
                                       distance(vertices[tri[2]], vertices[tri[0]])});
        if (!(std::abs(area2) > 1e-14 * scale * scale)) {
            throw Error(ErrorCode::InvertedTriangle, "triangle " + std::to_string(t) + " is degenerate");
        }
    }

    SimplicialComplex c;
    c.m_vertices = std::move(vertices);
    c.m_triangles = std::move(triangles);
    const auto nt = c.num_triangles();

    // (lo, hi, triangle, local edge, sign)
    struct HalfEdge {
        Index lo, hi, tri, local;
        int sign;
    };
    std::vector<HalfEdge> halves;
    halves.reserve(3 * static_cast<std::size_t>(nt));
    for (Index t = 0; t < nt; ++t) {
        const Triangle& tri = c.m_triangles[t];
        for (Index k = 0; k < 3; ++k) {
            const Index a = tri[k];
            const Index b = tri[(k + 1) % 3];
            halves.push_back({std::min(a, b), std::max(a, b), t, k, a < b ? 1 : -1});
        }
    }
    std::sort(halves.begin(), halves.end(), [](const HalfEdge& p, const HalfEdge& q) {
        return std::tie(p.lo, p.hi, p.tri) < std::tie(q.lo, q.hi, q.tri);
    });

    c.m_triangle_edges.assign(nt, {});
    c.m_triangle_edge_signs.assign(nt, {});
    for (std::size_t i = 0; i < halves.size();) {
        std::size_t j = i;
        while (j < halves.size() && halves[j].lo == halves[i].lo && halves[j].hi == halves[i].hi) ++j;
        const auto e = static_cast<Index>(c.m_edges.size());
        if (j - i > 2) {
            throw Error(ErrorCode::NonManifold, "edge (" + std::to_string(halves[i].lo) + ", " +
                                                    std::to_string(halves[i].hi) + ") has " +
                                                    std::to_string(j - i) + " incident triangles");
        }
        if (j - i == 2 && halves[i].sign == halves[i + 1].sign) {
            throw Error(ErrorCode::NonManifold, "edge (" + std::to_string(halves[i].lo) + ", " +
                                                    std::to_string(halves[i].hi) +
                                                    ") has overlapping incident triangles");
        }
        c.m_edges.push_back({halves[i].lo, halves[i].hi});
        c.m_edge_left.push_back(kNoTriangle);
        c.m_edge_right.push_back(kNoTriangle);
        for (std::size_t k = i; k < j; ++k) {
            c.m_triangle_edges[halves[k].tri][halves[k].local] = e;
            c.m_triangle_edge_signs[halves[k].tri][halves[k].local] = halves[k].sign;
            (halves[k].sign > 0 ? c.m_edge_left : c.m_edge_right)[e] = halves[k].tri;
        }
        c.m_boundary_edge.push_back(j - i == 1);
        i = j;
    }
    const auto ne = c.num_edges();

    c.m_boundary_vertex.assign(nv, false);
    std::vector<int> boundary_degree(nv, 0);
    for (Index e = 0; e < ne; ++e) {
        if (!c.m_boundary_edge[e]) continue;
        for (Index v : c.m_edges[e]) {
            c.m_boundary_vertex[v] = true;
            ++boundary_degree[v];
        }
    }

    // Ordered fans; a vertex whose fan is not a single chain is a pinch point.
    std::vector<std::vector<Index>> incident(nv);
    for (Index t = 0; t < nt; ++t) {
        for (Index v : c.m_triangles[t]) incident[v].push_back(t);
    }
    c.m_vertex_fan.assign(nv, {});
    for (Index v = 0; v < nv; ++v) {
        const auto& around = incident[v];
        if (around.empty()) {
            throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " is not used by any triangle");
        }
        if (boundary_degree[v] != 0 && boundary_degree[v] != 2) {
            throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " is a pinch point");
        }
        // For t = (v, b, c) counterclockwise, the next triangle in the fan holds (v, c, ...).
        auto next_of = [&](Index t) {
            const Triangle& tri = c.m_triangles[t];
            const auto k = static_cast<Index>(std::find(tri.begin(), tri.end(), v) - tri.begin());
            return std::pair{tri[(k + 1) % 3], tri[(k + 2) % 3]};
        };
        Index start = around.front();
        if (c.m_boundary_vertex[v]) {
            for (Index t : around) {
                const Index b = next_of(t).first;
                if (c.m_boundary_edge[c.find_edge(v, b)]) {
                    start = t;
                    break;
                }
            }
        }
        std::vector<Index>& fan = c.m_vertex_fan[v];
        fan.push_back(start);
        while (fan.size() < around.size()) {
            const Index want = next_of(fan.back()).second;
            Index found = kNoTriangle;
            for (Index t : around) {
                if (next_of(t).first == want) {
                    found = t;
                    break;
                }
            }
            if (found == kNoTriangle || found == start) break;
            fan.push_back(found);
        }
        if (fan.size() != around.size()) {
            throw Error(ErrorCode::NonManifold, "vertex " + std::to_string(v) + " has a disconnected fan");
        }
    }

    std::vector<Eigen::Triplet<int>> entries;
    entries.reserve(2 * static_cast<std::size_t>(ne));
    for (Index e = 0; e < ne; ++e) {
        entries.emplace_back(e, c.m_edges[e][0], -1);
        entries.emplace_back(e, c.m_edges[e][1], +1);
    }
    c.m_d0 = detail::make_incidence(ne, nv, entries);
    entries.clear();
    for (Index t = 0; t < nt; ++t) {
        for (int k = 0; k < 3; ++k) {
            entries.emplace_back(t, c.m_triangle_edges[t][k], c.m_triangle_edge_signs[t][k]);
        }
    }
    c.m_d1 = detail::make_incidence(nt, ne, entries);
    c.m_d0_real = c.m_d0.cast<double>();
    c.m_d1_real = c.m_d1.cast<double>();
    return c;
}

///
/// Builds an oriented complex from raw connectivity. Triangles given clockwise are
/// reordered silently.
///
/// Throws Error with IndexOutOfRange, DuplicateVertex, InvertedTriangle (degenerate
/// triangle) or NonManifold.
///
inline SimplicialComplex build_complex(std::vector<Point2> vertices, std::vector<Triangle> triangles)
{
    return SimplicialComplex::build(std::move(vertices), std::move(triangles));
}

inline MeshQuality mesh_quality(const SimplicialComplex& c)
{
    MeshQuality q;
    q.h_max = 0.0;
    q.h_min = std::numeric_limits<double>::infinity();
    for (Index e = 0; e < c.num_edges(); ++e) {
        const double len = c.edge_length(e);
        q.h_max = std::max(q.h_max, len);
        q.h_min = std::min(q.h_min, len);
    }
    q.min_angle = std::numbers::pi;
    q.max_angle = 0.0;
    for (const Triangle& t : c.triangles()) {
        for (int k = 0; k < 3; ++k) {
            const double angle = angle_at(c.vertex(t[k]), c.vertex(t[(k + 1) % 3]), c.vertex(t[(k + 2) % 3]));
            q.min_angle = std::min(q.min_angle, angle);
            q.max_angle = std::max(q.max_angle, angle);
        }
    }
    q.well_centered = c.num_triangles() > 0 && q.max_angle < 0.5 * std::numbers::pi - kAngleTolerance;
    return q;
}

///
/// Midpoint refinement: each triangle splits into four similar children. Parent vertices
/// keep their indices and coordinates; the midpoint of edge e becomes vertex V + e.
///
inline SimplicialComplex regular_refine(const SimplicialComplex& c)
{
    const Index nv = c.num_vertices();
    std::vector<Point2> vertices = c.vertices();
    vertices.reserve(static_cast<std::size_t>(nv + c.num_edges()));
    for (const Edge& e : c.edges()) vertices.push_back(midpoint(c.vertex(e[0]), c.vertex(e[1])));

    std::vector<Triangle> triangles;
    triangles.reserve(4 * static_cast<std::size_t>(c.num_triangles()));
    for (Index t = 0; t < c.num_triangles(); ++t) {
        const auto& [a, b, cc] = c.triangle(t);
        const auto& te = c.triangle_edges(t);
        const Index mab = nv + te[0];
        const Index mbc = nv + te[1];
        const Index mca = nv + te[2];
        triangles.push_back({a, mab, mca});
        triangles.push_back({mab, b, mbc});
        triangles.push_back({mca, mbc, cc});
        triangles.push_back({mab, mbc, mca});
    }
    return build_complex(std::move(vertices), std::move(triangles));
}

///
/// Moves every interior vertex by a uniformly distributed point of the disk of radius
/// amplitude * (its shortest incident edge). Boundary vertices stay fixed. The sequence of
/// displacements depends only on `seed`.
///
/// Throws NotWellCentered for a non-acute input and PerturbationBreaksWellCenteredness if
/// the displaced mesh is not acute; callers may retry with a smaller amplitude.
///
inline SimplicialComplex perturb_interior(const SimplicialComplex& c, double amplitude, std::uint64_t seed)
{
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw Error(ErrorCode::InvalidArgument, "perturbation amplitude must be a finite value >= 0");
    }
    if (!mesh_quality(c).well_centered) {
        throw Error(ErrorCode::NotWellCentered, "perturbation requires a well-centered input mesh");
    }
    std::vector<double> shortest(c.num_vertices(), std::numeric_limits<double>::infinity());
    for (Index e = 0; e < c.num_edges(); ++e) {
        const double len = c.edge_length(e);
        for (Index v : c.edge(e)) shortest[v] = std::min(shortest[v], len);
    }

    std::mt19937_64 engine(seed);
    // 53 random bits -> [0, 1); avoids implementation-defined distribution algorithms.
    auto unit = [&engine] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };

    std::vector<Point2> vertices = c.vertices();
    for (Index v = 0; v < c.num_vertices(); ++v) {
        if (c.is_boundary_vertex(v)) continue;
        const double radius = amplitude * shortest[v] * std::sqrt(unit());
        const double angle = 2.0 * std::numbers::pi * unit();
        vertices[v] = vertices[v] + radius * Vec2{std::cos(angle), std::sin(angle)};
    }
    const std::string context = " (amplitude " + std::to_string(amplitude) + ")";
    std::optional<SimplicialComplex> out;
    try {
        out.emplace(build_complex(std::move(vertices), c.triangles()));
    } catch (const Error& e) {
        // Displacements large enough to fold the mesh are reported like any other loss of acuteness.
        throw Error(ErrorCode::PerturbationBreaksWellCenteredness, "perturbed mesh is invalid: " + e.message() + context);
    }
    if (!mesh_quality(*out).well_centered) {
        throw Error(ErrorCode::PerturbationBreaksWellCenteredness, "perturbed mesh has a non-acute triangle" + context);
    }
    return std::move(*out);
}

} // namespace decdirac
