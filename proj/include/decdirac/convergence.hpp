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

#include <decdirac/builtin_cases.hpp>
#include <decdirac/cochain.hpp>
#include <decdirac/dual.hpp>
#include <decdirac/error.hpp>
#include <decdirac/fields.hpp>
#include <decdirac/mesh.hpp>
#include <decdirac/mesh_io.hpp>
#include <decdirac/quadrature.hpp>
#include <decdirac/solver.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace decdirac {

/// One refinement level of a convergence study.
struct ConvergenceRecord {
    int level = 0;
    double h = 0.0; // h_max
    Index dofs = 0;
    double err_l2 = 0.0;
    double err_hlambda = 0.0;
    std::optional<double> eoc_l2;      // empty on the first level
    std::optional<double> eoc_hlambda; // empty on the first level
    std::optional<double> pij_u;       // ||(Pi - J) u||
};

struct RunOptions {
    std::string test = "square"; // square | triangle | perturbed
    int levels = 0;              // regular refinements after the coarse mesh; 0 picks the default
    int quad_degree = 10;
    std::uint64_t seed = 1;
    double amplitude = 0.05;
    bool interpolant_gap = true;
    std::filesystem::path fixture_dir;
};

/// Everything computed on one level, handed to the optional observer of run_test.
struct LevelState {
    int level = 0;
    const SimplicialComplex* complex = nullptr;
    const DualComplex* dual = nullptr;
    const DiracSystem* system = nullptr;
    const GradedCochain* solution = nullptr;
    const SolveReport* report = nullptr;
};

using LevelObserver = std::function<void(const LevelState&)>;

inline int default_levels(const std::string& test) { return test == "perturbed" ? 5 : 4; }

/// log(e0 / e1) / log(h0 / h1); empty if any input is not positive.
inline std::optional<double> eoc(double e0, double e1, double h0, double h1)
{
    if (!(e0 > 0.0 && e1 > 0.0 && h0 > 0.0 && h1 > 0.0) || h0 == h1) return std::nullopt;
    return std::log(e0 / e1) / std::log(h0 / h1);
}

namespace detail {

template <typename F>
auto at_level(int level, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw Error(e.code(), "level " + std::to_string(level) + ": " + e.message());
    }
}

} // namespace detail

///
/// Convergence study on a built-in case. Level 0 is the fixture (perturbed once for
/// `perturbed`); each further level is a regular refinement of the previous one.
/// Errors carry the level at which they occurred.
///
inline std::vector<ConvergenceRecord> run_test(const RunOptions& opt, const LevelObserver& observer = {})
{
    if (opt.test != "square" && opt.test != "triangle" && opt.test != "perturbed") {
        throw Error(ErrorCode::UnknownCase, "unknown test '" + opt.test + "'");
    }
    const int levels = opt.levels > 0 ? opt.levels : default_levels(opt.test);
    if (levels < 2) throw Error(ErrorCode::InvalidArgument, "at least 2 refinement levels are needed");
    if (opt.quad_degree < 1) throw Error(ErrorCode::InvalidArgument, "quadrature degree must be >= 1");

    const BuiltinCase bc = builtin_case(opt.test == "perturbed" ? "triangle" : opt.test);
    const QuadratureRule q = make_quadrature(opt.quad_degree);

    SimplicialComplex mesh = load_mesh(opt.fixture_dir / bc.fixture);
    if (opt.test == "perturbed") {
        mesh = detail::at_level(0, [&] { return perturb_interior(mesh, opt.amplitude, opt.seed); });
    }

    std::vector<ConvergenceRecord> records;
    for (int level = 0; level <= levels; ++level) {
        if (level > 0) mesh = regular_refine(mesh);
        ConvergenceRecord rec = detail::at_level(level, [&] {
            const DualComplex dual = build_dual(mesh);
            const HodgeStars stars = hodge_stars(mesh, dual);

            GradedCochain rhs = derham_map(bc.rhs, mesh, q);
            // The source must lie in the range of the operator: its top grade is mean-free.
            rhs.u2.array() -= rhs.u2.mean();

            const DiracSystem sys = assemble(mesh, stars, rhs, ConstraintSpace::of(mesh));
            const auto [uh, report] = solve(sys);
            const CochainNorms err = error_norms(bc.exact, uh, mesh, stars, q);

            ConvergenceRecord r;
            r.level = level;
            r.h = mesh_quality(mesh).h_max;
            r.dofs = report.dof_count;
            r.err_l2 = err.l2;
            r.err_hlambda = err.hlambda;
            if (opt.interpolant_gap) {
                const GradedCochain gap = derham_map(bc.exact, mesh, q) - j_map(bc.exact, mesh, dual, q);
                r.pij_u = std::sqrt(inner(gap, gap, stars));
            }
            if (observer) observer({level, &mesh, &dual, &sys, &uh, &report});
            return r;
        });
        if (!records.empty()) {
            const ConvergenceRecord& prev = records.back();
            rec.eoc_l2 = eoc(prev.err_l2, rec.err_l2, prev.h, rec.h);
            rec.eoc_hlambda = eoc(prev.err_hlambda, rec.err_hlambda, prev.h, rec.h);
        }
        records.push_back(rec);
    }
    return records;
}

inline constexpr const char* kConvergenceCsvHeader = "level,h,dofs,err_l2,err_hlambda,eoc_l2,eoc_hlambda,pij_u";

inline void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(12);
    const auto opt = [&ss](const std::optional<double>& v) {
        if (v) ss << *v;
    };
    ss << kConvergenceCsvHeader << '\n';
    for (const ConvergenceRecord& r : records) {
        ss << r.level << ',' << r.h << ',' << r.dofs << ',' << r.err_l2 << ',' << r.err_hlambda << ',';
        opt(r.eoc_l2);
        ss << ',';
        opt(r.eoc_hlambda);
        ss << ',';
        opt(r.pij_u);
        ss << '\n';
    }
    out << ss.str();
}

/// Summary of a mesh file for `check-mesh`.
struct MeshReport {
    Index vertices = 0;
    Index edges = 0;
    Index triangles = 0;
    int euler_characteristic = 0;
    MeshQuality quality;
    double domain_area = 0.0;
    std::optional<double> dual_area;      // sum of |*v|; empty if the mesh is not well-centered
    std::optional<double> dual_area_defect; // |sum |*v| - area| / area

    /// Well-centered, a disk, and the dual cells partition the domain to 1e-12.
    bool ok() const
    {
        return quality.well_centered && euler_characteristic == 1 && dual_area_defect && *dual_area_defect <= 1e-12;
    }
};

inline MeshReport check_mesh(const SimplicialComplex& c)
{
    MeshReport r;
    r.vertices = c.num_vertices();
    r.edges = c.num_edges();
    r.triangles = c.num_triangles();
    r.euler_characteristic = c.euler_characteristic();
    r.quality = mesh_quality(c);
    r.domain_area = c.domain_area();
    if (r.quality.well_centered) {
        const DualComplex d = build_dual(c);
        double sum = 0.0;
        for (double a : d.dual_vertex_area) sum += a;
        r.dual_area = sum;
        r.dual_area_defect = std::abs(sum - r.domain_area) / r.domain_area;
    }
    return r;
}

inline MeshReport check_mesh(const std::filesystem::path& path) { return check_mesh(load_mesh(path)); }

inline void write_mesh_report(std::ostream& out, const MeshReport& r)
{
    constexpr double deg = 180.0 / 3.14159265358979323846;
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(12);
    ss << "vertices: " << r.vertices << '\n'
       << "edges: " << r.edges << '\n'
       << "triangles: " << r.triangles << '\n'
       << "euler_characteristic: " << r.euler_characteristic << '\n'
       << "h_max: " << r.quality.h_max << '\n'
       << "h_min: " << r.quality.h_min << '\n'
       << "min_angle_deg: " << r.quality.min_angle * deg << '\n'
       << "max_angle_deg: " << r.quality.max_angle * deg << '\n'
       << "well_centered: " << (r.quality.well_centered ? "true" : "false") << '\n'
       << "domain_area: " << r.domain_area << '\n';
    if (r.dual_area) {
        ss << "dual_area: " << *r.dual_area << '\n' << "dual_area_defect: " << *r.dual_area_defect << '\n';
    } else {
        ss << "dual_area: n/a\n";
    }
    ss << "status: " << (r.ok() ? "ok" : "invalid") << '\n';
    out << ss.str();
}

} // namespace decdirac
