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

// Differential forms on a planar domain in Euclidean vector proxies:
//   0-form  u0               -> scalar
//   1-form  p dx + q dy      -> vector (p, q)
//   2-form  w dx^dy          -> scalar w
// Hodge star on 1-forms: *dx = dy, *dy = -dx.

#include <decdirac/cochain.hpp>
#include <decdirac/dual.hpp>
#include <decdirac/error.hpp>
#include <decdirac/geometry.hpp>
#include <decdirac/mesh.hpp>
#include <decdirac/quadrature.hpp>

#include <functional>
#include <utility>

namespace decdirac {

struct ScalarField {
    std::function<double(Point2)> value;
    std::function<Vec2(Point2)> gradient; // optional

    explicit operator bool() const { return static_cast<bool>(value); }
    double operator()(Point2 p) const { return value ? value(p) : 0.0; }
};

struct VectorField {
    std::function<Vec2(Point2)> value;
    std::function<Mat2(Point2)> jacobian; // optional, jacobian(p).m[i][j] = d value_i / d x_j

    explicit operator bool() const { return static_cast<bool>(value); }
    Vec2 operator()(Point2 p) const { return value ? value(p) : Vec2{}; }
};

/// Graded form (f0, f1, f2); an empty component is the zero form.
struct GradedFormField {
    ScalarField f0;
    VectorField f1;
    ScalarField f2;
};

namespace detail {

inline void require_derivatives(const GradedFormField& u)
{
    if ((u.f0 && !u.f0.gradient) || (u.f1 && !u.f1.jacobian) || (u.f2 && !u.f2.gradient)) {
        throw Error(ErrorCode::MissingDerivatives, "field component without analytic derivatives");
    }
}

inline Vec2 grad_or_zero(const ScalarField& f, Point2 p) { return f ? f.gradient(p) : Vec2{}; }
inline Mat2 jac_or_zero(const VectorField& f, Point2 p) { return f ? f.jacobian(p) : Mat2{}; }

} // namespace detail

/// d u = (0, grad u0, dq/dx - dp/dy).
inline GradedFormField exterior_derivative(const GradedFormField& u)
{
    detail::require_derivatives(u);
    GradedFormField out;
    out.f1.value = [u](Point2 p) { return detail::grad_or_zero(u.f0, p); };
    out.f2.value = [u](Point2 p) {
        const Mat2 j = detail::jac_or_zero(u.f1, p);
        return j.m[1][0] - j.m[0][1];
    };
    return out;
}

/// delta u = (-(dp/dx + dq/dy), (dw/dy, -dw/dx), 0).
inline GradedFormField codifferential(const GradedFormField& u)
{
    detail::require_derivatives(u);
    GradedFormField out;
    out.f0.value = [u](Point2 p) {
        const Mat2 j = detail::jac_or_zero(u.f1, p);
        return -(j.m[0][0] + j.m[1][1]);
    };
    out.f1.value = [u](Point2 p) {
        const Vec2 g = detail::grad_or_zero(u.f2, p);
        return Vec2{g.y, -g.x};
    };
    return out;
}

/// Hodge-Dirac image D u = d u + delta u (values only). Throws MissingDerivatives.
inline GradedFormField continuous_dirac(const GradedFormField& u)
{
    const GradedFormField d = exterior_derivative(u);
    const GradedFormField delta = codifferential(u);
    GradedFormField out;
    out.f0 = delta.f0;
    out.f1.value = [d, delta](Point2 p) { return d.f1(p) + delta.f1(p); };
    out.f2 = d.f2;
    return out;
}

///
/// de Rham map: vertex values, line integrals along each edge (tail to head) and area
/// integrals over each triangle.
///
inline GradedCochain derham_map(const GradedFormField& u, const SimplicialComplex& c, const QuadratureRule& q)
{
    GradedCochain out = GradedCochain::zeros(c);
    if (u.f0) {
        for (Index v = 0; v < c.num_vertices(); ++v) out.u0[v] = u.f0(c.vertex(v));
    }
    if (u.f1) {
        for (Index e = 0; e < c.num_edges(); ++e) {
            out.u1[e] = integrate_one_form(q, c.vertex(c.edge(e)[0]), c.vertex(c.edge(e)[1]), u.f1);
        }
    }
    if (u.f2) {
        for (Index t = 0; t < c.num_triangles(); ++t) {
            const auto& [a, b, cc] = c.triangle(t);
            out.u2[t] = integrate_triangle(q, c.vertex(a), c.vertex(b), c.vertex(cc), u.f2);
        }
    }
    return out;
}

///
/// Dual interpolant: Hodge star, integrate over dual cells, inverse discrete star.
///
///   grade 0: mean of u0 over the dual cell of v
///   grade 1: (|e| / |*e|) * integral of *u1 along the oriented dual edge
///   grade 2: |T| * w(circumcenter of T)
///
inline GradedCochain j_map(const GradedFormField& u, const SimplicialComplex& c, const DualComplex& d,
                           const QuadratureRule& q)
{
    GradedCochain out = GradedCochain::zeros(c);
    if (u.f0) {
        for (Index v = 0; v < c.num_vertices(); ++v) {
            double sum = 0.0;
            for (const auto& [a, b, cc] : d.cell_fans[v]) sum += integrate_triangle(q, a, b, cc, u.f0);
            out.u0[v] = sum / d.dual_vertex_area[v];
        }
    }
    if (u.f1) {
        // *(p dx + q dy) = p dy - q dx, i.e. the proxy (-q, p).
        const auto star = [&u](Point2 p) {
            const Vec2 val = u.f1(p);
            return Vec2{-val.y, val.x};
        };
        for (Index e = 0; e < c.num_edges(); ++e) {
            double sum = 0.0;
            for (const Segment& s : d.edge_pieces[e]) sum += integrate_one_form(q, s.from, s.to, star);
            out.u1[e] = sum * c.edge_length(e) / d.dual_edge_length[e];
        }
    }
    if (u.f2) {
        for (Index t = 0; t < c.num_triangles(); ++t) out.u2[t] = c.triangle_area(t) * u.f2(d.circumcenters[t]);
    }
    return out;
}

} // namespace decdirac
