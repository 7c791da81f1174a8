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
#include <decdirac/fields.hpp>
#include <decdirac/geometry.hpp>
#include <decdirac/quadrature.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

namespace decdirac {

/// Manufactured problem: exact solution u and right-hand side f = D u on a fixture domain.
struct BuiltinCase {
    std::string name;
    std::string fixture; // mesh file name inside the fixture directory
    double domain_area = 0.0;
    GradedFormField exact;
    GradedFormField rhs;
};

/// Corners of the equilateral triangle domain.
inline constexpr std::array<Point2, 3> kTriangleDomain = {
    Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{0.5, 0.86602540378443864676}};

/// Smooth solution on [0,1]^2 with vanishing traces:
/// u0 = sin 2pi x sin 2pi y, u1 = (sin 2pi y, sin 2pi x), u2 = cos 2pi x sin 2pi y.
inline BuiltinCase square_case()
{
    constexpr double k = 2.0 * std::numbers::pi;
    BuiltinCase bc;
    bc.name = "square";
    bc.fixture = "square.mesh";
    bc.domain_area = 1.0;
    bc.exact.f0.value = [](Point2 p) { return std::sin(k * p.x) * std::sin(k * p.y); };
    bc.exact.f0.gradient = [](Point2 p) {
        return Vec2{k * std::cos(k * p.x) * std::sin(k * p.y), k * std::sin(k * p.x) * std::cos(k * p.y)};
    };
    bc.exact.f1.value = [](Point2 p) { return Vec2{std::sin(k * p.y), std::sin(k * p.x)}; };
    bc.exact.f1.jacobian = [](Point2 p) {
        Mat2 j;
        j.m[0][1] = k * std::cos(k * p.y);
        j.m[1][0] = k * std::cos(k * p.x);
        return j;
    };
    bc.exact.f2.value = [](Point2 p) { return std::cos(k * p.x) * std::sin(k * p.y); };
    bc.exact.f2.gradient = [](Point2 p) {
        return Vec2{-k * std::sin(k * p.x) * std::sin(k * p.y), k * std::cos(k * p.x) * std::cos(k * p.y)};
    };
    bc.rhs = continuous_dirac(bc.exact);
    return bc;
}

/// Barycentric coordinates of the triangle domain as affine functions.
struct Barycentric {
    std::array<double, 3> offset{};
    std::array<Vec2, 3> gradient{};

    explicit Barycentric(const std::array<Point2, 3>& corners)
    {
        const double twice_area = orient2d(corners[0], corners[1], corners[2]);
        for (int i = 0; i < 3; ++i) {
            const Point2 a = corners[(i + 1) % 3];
            const Point2 b = corners[(i + 2) % 3];
            // lambda_i(p) = orient2d(a, b, p) / orient2d(corners)
            gradient[i] = Vec2{a.y - b.y, b.x - a.x} * (1.0 / twice_area);
            offset[i] = cross(a, b) / twice_area;
        }
    }

    double operator()(int i, Point2 p) const { return offset[i] + dot(gradient[i], p); }
};

///
/// Bubble solution on the equilateral triangle: u0 = 2^15 (l0 l1 l2)^3, u1 = (u0, u0),
/// u2 = u0 minus its mean over the domain. The mean is computed by quadrature that is
/// exact for the degree-9 integrand.
///
inline BuiltinCase triangle_case()
{
    constexpr double scale = 32768.0; // 2^15
    const Barycentric lambda(kTriangleDomain);
    const auto bubble = [lambda](Point2 p) { return lambda(0, p) * lambda(1, p) * lambda(2, p); };
    const auto u0 = [bubble](Point2 p) {
        const double b = bubble(p);
        return scale * b * b * b;
    };
    const auto grad_u0 = [lambda](Point2 p) {
        const double l0 = lambda(0, p), l1 = lambda(1, p), l2 = lambda(2, p);
        const double b = l0 * l1 * l2;
        const Vec2 db = l1 * l2 * lambda.gradient[0] + l0 * l2 * lambda.gradient[1] + l0 * l1 * lambda.gradient[2];
        return (3.0 * scale * b * b) * db;
    };

    BuiltinCase bc;
    bc.name = "triangle";
    bc.fixture = "triangle.mesh";
    bc.domain_area = 0.5 * orient2d(kTriangleDomain[0], kTriangleDomain[1], kTriangleDomain[2]);
    const QuadratureRule q = make_quadrature(12);
    const double mean =
        integrate_triangle(q, kTriangleDomain[0], kTriangleDomain[1], kTriangleDomain[2], u0) / bc.domain_area;

    bc.exact.f0 = {u0, grad_u0};
    bc.exact.f1.value = [u0](Point2 p) {
        const double v = u0(p);
        return Vec2{v, v};
    };
    bc.exact.f1.jacobian = [grad_u0](Point2 p) {
        const Vec2 g = grad_u0(p);
        Mat2 j;
        j.m[0][0] = j.m[1][0] = g.x;
        j.m[0][1] = j.m[1][1] = g.y;
        return j;
    };
    bc.exact.f2 = {[u0, mean](Point2 p) { return u0(p) - mean; }, grad_u0};
    bc.rhs = continuous_dirac(bc.exact);
    return bc;
}

/// Throws UnknownCase for names other than "square" and "triangle".
inline BuiltinCase builtin_case(std::string_view name)
{
    if (name == "square") return square_case();
    if (name == "triangle") return triangle_case();
    throw Error(ErrorCode::UnknownCase, "no built-in case named '" + std::string(name) + "'");
}

} // namespace decdirac
