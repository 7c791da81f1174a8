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

#include <decdirac/dual.hpp>
#include <decdirac/error.hpp>
#include <decdirac/mesh.hpp>

#include <Eigen/Core>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

namespace decdirac {

/// Graded cochain (u0, u1, u2) over vertices, edges and triangles.
struct GradedCochain {
    Eigen::VectorXd u0;
    Eigen::VectorXd u1;
    Eigen::VectorXd u2;

    static GradedCochain zeros(const SimplicialComplex& c)
    {
        return {Eigen::VectorXd::Zero(c.num_vertices()), Eigen::VectorXd::Zero(c.num_edges()),
                Eigen::VectorXd::Zero(c.num_triangles())};
    }

    GradedCochain& operator+=(const GradedCochain& o)
    {
        u0 += o.u0;
        u1 += o.u1;
        u2 += o.u2;
        return *this;
    }
    GradedCochain& operator-=(const GradedCochain& o)
    {
        u0 -= o.u0;
        u1 -= o.u1;
        u2 -= o.u2;
        return *this;
    }
    GradedCochain& operator*=(double s)
    {
        u0 *= s;
        u1 *= s;
        u2 *= s;
        return *this;
    }
    friend GradedCochain operator+(GradedCochain a, const GradedCochain& b) { return a += b; }
    friend GradedCochain operator-(GradedCochain a, const GradedCochain& b) { return a -= b; }
    friend GradedCochain operator*(double s, GradedCochain a) { return a *= s; }

    double max_abs() const
    {
        double m = 0.0;
        if (u0.size()) m = std::max(m, u0.cwiseAbs().maxCoeff());
        if (u1.size()) m = std::max(m, u1.cwiseAbs().maxCoeff());
        if (u2.size()) m = std::max(m, u2.cwiseAbs().maxCoeff());
        return m;
    }
};

///
/// Constrained subspace: zero on boundary vertices and edges, zero sum over triangles.
///
struct ConstraintSpace {
    std::vector<Index> interior_vertices;
    std::vector<Index> interior_edges;
    Index num_triangles = 0;
    bool zero_mean_top = true;

    static ConstraintSpace of(const SimplicialComplex& c)
    {
        ConstraintSpace cs;
        for (Index v = 0; v < c.num_vertices(); ++v) {
            if (!c.is_boundary_vertex(v)) cs.interior_vertices.push_back(v);
        }
        for (Index e = 0; e < c.num_edges(); ++e) {
            if (!c.is_boundary_edge(e)) cs.interior_edges.push_back(e);
        }
        cs.num_triangles = c.num_triangles();
        return cs;
    }

    /// Number of unknowns before the zero-mean constraint is imposed.
    Index dof_count() const
    {
        return static_cast<Index>(interior_vertices.size() + interior_edges.size()) + num_triangles;
    }
};

namespace detail {

inline void check_sizes(const SimplicialComplex& c, const GradedCochain& u)
{
    if (u.u0.size() != c.num_vertices() || u.u1.size() != c.num_edges() || u.u2.size() != c.num_triangles()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "cochain sizes (" + std::to_string(u.u0.size()) + ", " + std::to_string(u.u1.size()) + ", " +
                        std::to_string(u.u2.size()) + ") do not match the complex (" +
                        std::to_string(c.num_vertices()) + ", " + std::to_string(c.num_edges()) + ", " +
                        std::to_string(c.num_triangles()) + ")");
    }
}

inline void check_sizes(const HodgeStars& s, const GradedCochain& u)
{
    if (u.u0.size() != s.m0.size() || u.u1.size() != s.m1.size() || u.u2.size() != s.m2.size()) {
        throw Error(ErrorCode::DimensionMismatch, "cochain sizes do not match the Hodge stars");
    }
}

} // namespace detail

/// Weighted inner product sum_k sum_s (|*s|/|s|) u_k(s) v_k(s).
inline double inner(const GradedCochain& u, const GradedCochain& v, const HodgeStars& stars)
{
    detail::check_sizes(stars, u);
    detail::check_sizes(stars, v);
    return (stars.m0.array() * u.u0.array() * v.u0.array()).sum() +
           (stars.m1.array() * u.u1.array() * v.u1.array()).sum() +
           (stars.m2.array() * u.u2.array() * v.u2.array()).sum();
}

/// Graded coboundary: (0, d0 u0, d1 u1).
inline GradedCochain dec_d(const SimplicialComplex& c, const GradedCochain& u)
{
    detail::check_sizes(c, u);
    return {Eigen::VectorXd::Zero(c.num_vertices()), c.d0() * u.u0, c.d1() * u.u1};
}

///
/// Discrete codifferential, the adjoint of dec_d in the weighted inner product:
/// (M0^-1 d0^T M1 u1, M1^-1 d1^T M2 u2, 0).
///
inline GradedCochain dec_delta(const SimplicialComplex& c, const HodgeStars& stars, const GradedCochain& u)
{
    detail::check_sizes(c, u);
    detail::check_sizes(stars, u);
    GradedCochain out;
    out.u0 = (c.d0().transpose() * stars.m1.cwiseProduct(u.u1)).cwiseQuotient(stars.m0);
    out.u1 = (c.d1().transpose() * stars.m2.cwiseProduct(u.u2)).cwiseQuotient(stars.m1);
    out.u2 = Eigen::VectorXd::Zero(c.num_triangles());
    return out;
}

/// Hodge-Dirac operator dec_d + dec_delta.
inline GradedCochain dec_dirac(const SimplicialComplex& c, const HodgeStars& stars, const GradedCochain& u)
{
    return dec_d(c, u) + dec_delta(c, stars, u);
}

/// Zeroes boundary entries of grades 0 and 1 and shifts u2 to zero sum.
inline GradedCochain project_constraints(const SimplicialComplex& c, GradedCochain u)
{
    detail::check_sizes(c, u);
    for (Index v = 0; v < c.num_vertices(); ++v) {
        if (c.is_boundary_vertex(v)) u.u0[v] = 0.0;
    }
    for (Index e = 0; e < c.num_edges(); ++e) {
        if (c.is_boundary_edge(e)) u.u1[e] = 0.0;
    }
    if (u.u2.size() > 0) u.u2.array() -= u.u2.mean();
    return u;
}

struct CochainNorms {
    double l2 = 0.0;      // ||u||
    double hlambda = 0.0; // ||u|| + ||d u||
};

inline CochainNorms norms(const SimplicialComplex& c, const HodgeStars& stars, const GradedCochain& u)
{
    const GradedCochain du = dec_d(c, u);
    const double l2 = std::sqrt(inner(u, u, stars));
    return {l2, l2 + std::sqrt(inner(du, du, stars))};
}

/// CSV dump `grade,index,value`.
inline void write_cochain_csv(std::ostream& out, const GradedCochain& u)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(17) << "grade,index,value\n";
    for (Eigen::Index i = 0; i < u.u0.size(); ++i) ss << "0," << i << ',' << u.u0[i] << '\n';
    for (Eigen::Index i = 0; i < u.u1.size(); ++i) ss << "1," << i << ',' << u.u1[i] << '\n';
    for (Eigen::Index i = 0; i < u.u2.size(); ++i) ss << "2," << i << ',' << u.u2[i] << '\n';
    out << ss.str();
}

} // namespace decdirac
