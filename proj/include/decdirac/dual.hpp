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
#include <decdirac/mesh.hpp>

#include <Eigen/Core>

#include <array>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

namespace decdirac {

/// Oriented straight piece of a dual edge.
struct Segment {
    Point2 from;
    Point2 to;
};

///
/// Circumcentric dual of a well-centered complex, clipped to the domain.
///
/// The dual of an interior edge joins the circumcenters of its two triangles; the dual of
/// a boundary edge joins the circumcenter of its triangle to the edge midpoint. Dual
/// cells of boundary vertices are closed through the midpoints of their boundary edges.
///
struct DualComplex {
    std::vector<Point2> circumcenters;      // per triangle
    std::vector<double> dual_vertex_area;   // |*v|
    std::vector<double> dual_edge_length;   // |*e|

    /// Counterclockwise dual polygon per primal vertex.
    std::vector<std::vector<Point2>> cell_polygons;
    /// Dual cell of each vertex as counterclockwise triangles fanned from the vertex.
    std::vector<std::vector<std::array<Point2, 3>>> cell_fans;
    /// Dual edge pieces (one per incident triangle), oriented along the edge direction
    /// rotated a quarter turn counterclockwise: from the right triangle to the left one.
    std::vector<std::vector<Segment>> edge_pieces;
};

/// Diagonal discrete Hodge stars, entries |*s| / |s| for vertices, edges and triangles.
struct HodgeStars {
    Eigen::VectorXd m0;
    Eigen::VectorXd m1;
    Eigen::VectorXd m2;
};

/// Throws NotWellCentered unless every triangle is strictly acute.
inline DualComplex build_dual(const SimplicialComplex& c)
{
    const MeshQuality quality = mesh_quality(c);
    if (!quality.well_centered) {
        throw Error(ErrorCode::NotWellCentered,
                    "largest angle " + std::to_string(quality.max_angle) + " rad is not acute");
    }

    DualComplex d;
    const Index nv = c.num_vertices();
    const Index ne = c.num_edges();
    const Index nt = c.num_triangles();

    d.circumcenters.resize(nt);
    for (Index t = 0; t < nt; ++t) {
        const auto& [a, b, cc] = c.triangle(t);
        d.circumcenters[t] = circumcenter(c.vertex(a), c.vertex(b), c.vertex(cc));
    }

    d.dual_edge_length.assign(ne, 0.0);
    d.edge_pieces.assign(ne, {});
    for (Index e = 0; e < ne; ++e) {
        const Point2 tail = c.vertex(c.edge(e)[0]);
        const Point2 mid = midpoint(tail, c.vertex(c.edge(e)[1]));
        const Vec2 dir = c.edge_vector(e) * (1.0 / c.edge_length(e));
        if (const Index t = c.right_triangle(e); t != kNoTriangle) {
            const Point2 cc = d.circumcenters[t];
            d.dual_edge_length[e] += -cross(dir, cc - tail);
            d.edge_pieces[e].push_back({cc, mid});
        }
        if (const Index t = c.left_triangle(e); t != kNoTriangle) {
            const Point2 cc = d.circumcenters[t];
            d.dual_edge_length[e] += cross(dir, cc - tail);
            d.edge_pieces[e].push_back({mid, cc});
        }
    }

    d.dual_vertex_area.assign(nv, 0.0);
    d.cell_polygons.assign(nv, {});
    d.cell_fans.assign(nv, {});
    for (Index v = 0; v < nv; ++v) {
        const Point2 p = c.vertex(v);
        auto& polygon = d.cell_polygons[v];
        auto& fan = d.cell_fans[v];
        if (c.is_boundary_vertex(v)) polygon.push_back(p);
        Point2 last_mid{};
        for (Index t : c.vertex_fan(v)) {
            const Triangle& tri = c.triangle(t);
            const auto k = std::find(tri.begin(), tri.end(), v) - tri.begin();
            const Point2 mb = midpoint(p, c.vertex(tri[(k + 1) % 3]));
            const Point2 mc = midpoint(p, c.vertex(tri[(k + 2) % 3]));
            const Point2 cc = d.circumcenters[t];
            fan.push_back({p, mb, cc});
            fan.push_back({p, cc, mc});
            d.dual_vertex_area[v] += 0.5 * (orient2d(p, mb, cc) + orient2d(p, cc, mc));
            polygon.push_back(mb);
            polygon.push_back(cc);
            last_mid = mc;
        }
        if (c.is_boundary_vertex(v)) polygon.push_back(last_mid);
    }
    return d;
}

inline HodgeStars hodge_stars(const SimplicialComplex& c, const DualComplex& d)
{
    HodgeStars s;
    s.m0.resize(c.num_vertices());
    s.m1.resize(c.num_edges());
    s.m2.resize(c.num_triangles());
    for (Index v = 0; v < c.num_vertices(); ++v) s.m0[v] = d.dual_vertex_area[v];
    for (Index e = 0; e < c.num_edges(); ++e) s.m1[e] = d.dual_edge_length[e] / c.edge_length(e);
    for (Index t = 0; t < c.num_triangles(); ++t) s.m2[t] = 1.0 / c.triangle_area(t);
    return s;
}

/// CSV dump `kind,index,primal_measure,dual_measure,ratio` for inspection.
inline void write_dual_csv(std::ostream& out, const SimplicialComplex& c, const DualComplex& d)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(17);
    ss << "kind,index,primal_measure,dual_measure,ratio\n";
    for (Index v = 0; v < c.num_vertices(); ++v) {
        ss << "vertex," << v << ",1," << d.dual_vertex_area[v] << ',' << d.dual_vertex_area[v] << '\n';
    }
    for (Index e = 0; e < c.num_edges(); ++e) {
        const double len = c.edge_length(e);
        ss << "edge," << e << ',' << len << ',' << d.dual_edge_length[e] << ',' << d.dual_edge_length[e] / len << '\n';
    }
    for (Index t = 0; t < c.num_triangles(); ++t) {
        const double area = c.triangle_area(t);
        ss << "triangle," << t << ',' << area << ",1," << 1.0 / area << '\n';
    }
    out << ss.str();
}

} // namespace decdirac
