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

#include <cmath>
#include <numbers>
#include <vector>

namespace decdirac {

struct SegmentNode {
    double t;      // in [0, 1]
    double weight; // weights sum to 1
};

struct TriangleNode {
    Point2 xi;     // reference triangle (0,0), (1,0), (0,1)
    double weight; // weights sum to 1/2
};

///
/// Gauss rules on [0, 1] and on the reference triangle, both exact for polynomials of
/// total degree <= `degree`. The triangle rule is the collapsed (Duffy) tensor product of
/// Gauss-Legendre rules.
///
struct QuadratureRule {
    int degree = 0;
    std::vector<SegmentNode> segment;
    std::vector<TriangleNode> triangle;
};

/// n-point Gauss-Legendre nodes/weights on [0, 1], by Newton iteration on P_n.
inline std::vector<SegmentNode> gauss_legendre(int n)
{
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre rule needs at least one point");
    std::vector<SegmentNode> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1, 1] -> [0, 1].
        nodes[i] = {0.5 * (1.0 - x), 0.5 * w};
        nodes[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
    }
    return nodes;
}

inline QuadratureRule make_quadrature(int degree)
{
    if (degree < 0) throw Error(ErrorCode::InvalidArgument, "quadrature degree must be >= 0");
    QuadratureRule rule;
    rule.degree = degree;
    rule.segment = gauss_legendre(degree / 2 + 1);
    // x = s, y = (1 - s) r has Jacobian (1 - s): degree + 1 in s, degree in r.
    const auto outer = gauss_legendre((degree + 1) / 2 + 1);
    const auto inner = gauss_legendre(degree / 2 + 1);
    for (const auto& [s, ws] : outer) {
        for (const auto& [r, wr] : inner) {
            rule.triangle.push_back({{s, (1.0 - s) * r}, ws * wr * (1.0 - s)});
        }
    }
    return rule;
}

/// Integral of f over the straight segment a -> b (with respect to arc length).
template <typename F>
double integrate_segment(const QuadratureRule& q, Point2 a, Point2 b, F&& f)
{
    double sum = 0.0;
    for (const auto& [t, w] : q.segment) sum += w * f(a + t * (b - a));
    return sum * distance(a, b);
}

/// Line integral of the 1-form p dx + q dy along a -> b, `field` returning (p, q).
template <typename F>
double integrate_one_form(const QuadratureRule& q, Point2 a, Point2 b, F&& field)
{
    const Vec2 tangent = b - a;
    double sum = 0.0;
    for (const auto& [t, w] : q.segment) sum += w * dot(field(a + t * tangent), tangent);
    return sum;
}

/// Integral of f over triangle (a, b, c) with respect to area (orientation ignored).
template <typename F>
double integrate_triangle(const QuadratureRule& q, Point2 a, Point2 b, Point2 c, F&& f)
{
    const Vec2 u = b - a;
    const Vec2 v = c - a;
    double sum = 0.0;
    for (const auto& [xi, w] : q.triangle) sum += w * f(a + xi.x * u + xi.y * v);
    return sum * std::abs(cross(u, v));
}

} // namespace decdirac
