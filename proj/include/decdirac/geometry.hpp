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

#include <cmath>

namespace decdirac {

/// Point or vector in the plane.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

using Vec2 = Point2;

/// Row-major 2x2 matrix; used for Jacobians of vector proxies, `m[i][j] = d(comp i)/d(x_j)`.
struct Mat2 {
    double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
constexpr Point2 midpoint(Point2 a, Point2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Counterclockwise rotation by a quarter turn.
constexpr Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

/// Twice the signed area of (a, b, c); positive when counterclockwise.
constexpr double orient2d(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

/// Interior angle at `a` of the triangle (a, b, c), in [0, pi].
inline double angle_at(Point2 a, Point2 b, Point2 c)
{
    const Vec2 u = b - a;
    const Vec2 v = c - a;
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

/// Circumcenter of a non-degenerate triangle, as the intersection of perpendicular bisectors.
inline Point2 circumcenter(Point2 a, Point2 b, Point2 c)
{
    // Solve in coordinates relative to `a` to limit cancellation.
    const Vec2 u = b - a;
    const Vec2 v = c - a;
    const double d = 2.0 * cross(u, v);
    const double uu = dot(u, u);
    const double vv = dot(v, v);
    return {a.x + (v.y * uu - u.y * vv) / d, a.y + (u.x * vv - v.x * uu) / d};
}

/// Polygon area by the shoelace formula; positive for counterclockwise vertex order.
template <typename Range>
double shoelace_area(const Range& polygon)
{
    double twice = 0.0;
    const auto n = std::size(polygon);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = polygon[i];
        const Point2& q = polygon[(i + 1) % n];
        twice += cross(p, q);
    }
    return 0.5 * twice;
}

} // namespace decdirac
