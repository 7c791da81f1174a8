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

// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is 0 when every failure is listed in kDocumentedFailures.

#include <decdirac/decdirac.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace decdirac;

constexpr double kAdjointTol = 1e-12;
constexpr int kAdjointPairs = 100;
constexpr double kPiCommuteTol = 1e-10;
constexpr double kJCommuteTol = 1e-8;
constexpr double kRoundTripTol = 1e-10;
constexpr double kTestOneCenter = 1.0, kTestOneHalfWidth = 0.15;
constexpr double kTestTwoCenter = 2.0, kTestTwoHalfWidth = 0.2;
constexpr double kTestThreeLow = 0.7, kTestThreeHigh = 1.3, kTestThreeCeiling = 1.6;
constexpr double kGapSlopeMin = 0.9;
constexpr double kAreaTol = 1e-12;
constexpr int kQuadDegree = 10;

// Criteria that fail for reasons analysed in the project notes; they still print FAIL.
const std::set<std::string> kDocumentedFailures = {"test_I"};

const std::filesystem::path kFixtures = DECDIRAC_FIXTURE_DIR;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Family {
    std::string name;
    SimplicialComplex mesh;
};

std::vector<Family> refinements(const std::string& name, SimplicialComplex coarse, int max_level)
{
    std::vector<Family> out;
    for (int level = 0; level <= max_level; ++level) {
        if (level > 0) coarse = regular_refine(coarse);
        out.push_back({name + "/L" + std::to_string(level), coarse});
    }
    return out;
}

SimplicialComplex fixture(const std::string& name) { return load_mesh(kFixtures / name); }

SimplicialComplex perturbed_triangle() { return perturb_interior(fixture("triangle.mesh"), 0.05, 1); }

// Meshes up to roughly 1e4 triangles.
std::vector<Family> desk_meshes()
{
    std::vector<Family> out = refinements("square", fixture("square.mesh"), 3);
    for (auto& f : refinements("triangle", fixture("triangle.mesh"), 2)) out.push_back(std::move(f));
    for (auto& f : refinements("perturbed", perturbed_triangle(), 2)) out.push_back(std::move(f));
    return out;
}

GradedCochain random_cochain(const SimplicialComplex& c, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GradedCochain u = GradedCochain::zeros(c);
    for (Eigen::Index i = 0; i < u.u0.size(); ++i) u.u0[i] = dist(rng);
    for (Eigen::Index i = 0; i < u.u1.size(); ++i) u.u1[i] = dist(rng);
    for (Eigen::Index i = 0; i < u.u2.size(); ++i) u.u2[i] = dist(rng);
    return u;
}

Outcome exact_algebra()
{
    std::vector<Family> meshes = refinements("square", fixture("square.mesh"), 3);
    for (auto& f : refinements("triangle", fixture("triangle.mesh"), 3)) meshes.push_back(std::move(f));
    for (auto& f : refinements("perturbed", perturbed_triangle(), 3)) meshes.push_back(std::move(f));
    for (auto& f : refinements("right_grid", fixture("right_grid.mesh"), 3)) meshes.push_back(std::move(f));

    std::mt19937_64 rng(20260101);
    double worst = 0.0;
    int checked = 0;
    for (const Family& f : meshes) {
        const IncidenceMatrix dd = f.mesh.coboundary1() * f.mesh.coboundary0();
        for (int k = 0; k < dd.outerSize(); ++k) {
            for (IncidenceMatrix::InnerIterator it(dd, k); it; ++it) {
                if (it.value() != 0) return {false, f.name + ": d1 d0 has a nonzero entry"};
            }
        }
        if (!mesh_quality(f.mesh).well_centered) continue;
        const HodgeStars s = hodge_stars(f.mesh, build_dual(f.mesh));
        for (int i = 0; i < kAdjointPairs; ++i) {
            const GradedCochain u = random_cochain(f.mesh, rng), v = random_cochain(f.mesh, rng);
            const GradedCochain dv = dec_d(f.mesh, v);
            const double lhs = inner(dec_delta(f.mesh, s, u), v, s);
            const double rhs = inner(u, dv, s);
            // Relative to the Cauchy-Schwarz bound of the pairing.
            const double scale = std::sqrt(inner(u, u, s) * inner(dv, dv, s));
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        ++checked;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "d1 d0 = 0 on %zu meshes; worst adjoint gap %.2e over %d meshes x %d pairs",
                  meshes.size(), worst, checked, kAdjointPairs);
    return {worst <= kAdjointTol, buf};
}

Outcome commuting_diagrams()
{
    const QuadratureRule q = make_quadrature(kQuadDegree);
    double worst_pi = 0.0, worst_j = 0.0;
    for (const Family& f : desk_meshes()) {
        const BuiltinCase bc = builtin_case(f.name.rfind("square", 0) == 0 ? "square" : "triangle");
        const DualComplex d = build_dual(f.mesh);
        const HodgeStars s = hodge_stars(f.mesh, d);

        const GradedCochain pd = derham_map(exterior_derivative(bc.exact), f.mesh, q);
        const GradedCochain dp = dec_d(f.mesh, derham_map(bc.exact, f.mesh, q));
        worst_pi = std::max(worst_pi, (pd - dp).max_abs() / std::max(1.0, dp.max_abs()));

        // Only interior vertices and edges have closed dual cells.
        const GradedCochain jd = j_map(codifferential(bc.exact), f.mesh, d, q);
        const GradedCochain dj = dec_delta(f.mesh, s, j_map(bc.exact, f.mesh, d, q));
        const double scale = std::max(1.0, dj.max_abs());
        for (Index v = 0; v < f.mesh.num_vertices(); ++v) {
            if (!f.mesh.is_boundary_vertex(v)) worst_j = std::max(worst_j, std::abs(jd.u0[v] - dj.u0[v]) / scale);
        }
        for (Index e = 0; e < f.mesh.num_edges(); ++e) {
            if (!f.mesh.is_boundary_edge(e)) worst_j = std::max(worst_j, std::abs(jd.u1[e] - dj.u1[e]) / scale);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "Pi: %.2e (tol %.0e); J on interior simplices: %.2e (tol %.0e)", worst_pi,
                  kPiCommuteTol, worst_j, kJCommuteTol);
    return {worst_pi <= kPiCommuteTol && worst_j <= kJCommuteTol, buf};
}

Outcome round_trip()
{
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (const Family& f : desk_meshes()) {
        const HodgeStars s = hodge_stars(f.mesh, build_dual(f.mesh));
        const GradedCochain expect = project_constraints(f.mesh, random_cochain(f.mesh, rng));
        const DiracSystem sys = assemble(f.mesh, s, dec_dirac(f.mesh, s, expect), ConstraintSpace::of(f.mesh));
        const GradedCochain diff = solve(sys).first - expect;
        worst = std::max(worst, std::sqrt(inner(diff, diff, s) / inner(expect, expect, s)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst relative error %.2e (tol %.0e)", worst, kRoundTripTol);
    return {worst <= kRoundTripTol, buf};
}

std::vector<ConvergenceRecord> study(const std::string& test, int levels)
{
    RunOptions opt;
    opt.test = test;
    opt.levels = levels;
    opt.quad_degree = kQuadDegree;
    opt.fixture_dir = kFixtures;
    return run_test(opt);
}

std::string rates(const ConvergenceRecord& r)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "final EOC l2 %.3f, hlambda %.3f at %lld dofs", r.eoc_l2.value_or(NAN),
                  r.eoc_hlambda.value_or(NAN), static_cast<long long>(r.dofs));
    return buf;
}

bool within(const std::optional<double>& v, double lo, double hi) { return v && *v >= lo && *v <= hi; }

std::vector<ConvergenceRecord> g_square_records;

Outcome test_one()
{
    g_square_records = study("square", 4);
    const ConvergenceRecord& r = g_square_records.back();
    const double lo = kTestOneCenter - kTestOneHalfWidth, hi = kTestOneCenter + kTestOneHalfWidth;
    return {within(r.eoc_l2, lo, hi) && within(r.eoc_hlambda, lo, hi), rates(r) + ", band [0.85, 1.15]"};
}

Outcome test_two()
{
    const ConvergenceRecord r = study("triangle", 4).back();
    const double lo = kTestTwoCenter - kTestTwoHalfWidth, hi = kTestTwoCenter + kTestTwoHalfWidth;
    return {within(r.eoc_l2, lo, hi) && within(r.eoc_hlambda, lo, hi), rates(r) + ", band [1.8, 2.2]"};
}

Outcome test_three()
{
    const ConvergenceRecord r = study("perturbed", 5).back();
    const bool in_band = within(r.eoc_l2, kTestThreeLow, kTestThreeHigh) &&
                         within(r.eoc_hlambda, kTestThreeLow, kTestThreeHigh);
    const bool below = r.eoc_l2 && r.eoc_hlambda && *r.eoc_l2 < kTestThreeCeiling && *r.eoc_hlambda < kTestThreeCeiling;
    return {in_band && below, rates(r) + ", band [0.7, 1.3], ceiling 1.6"};
}

Outcome interpolant_gap()
{
    if (g_square_records.empty()) g_square_records = study("square", 4);
    // Least-squares slope of log gap against log h.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ConvergenceRecord& r : g_square_records) {
        if (!r.pij_u || *r.pij_u <= 0.0) return {false, "missing interpolant gap"};
        const double x = std::log(r.h), y = std::log(*r.pij_u);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    char buf[96];
    std::snprintf(buf, sizeof buf, "fitted slope %.3f over %d levels (min %.1f)", slope, n, kGapSlopeMin);
    return {slope >= kGapSlopeMin, buf};
}

Outcome geometry_conservation()
{
    struct Domain {
        const char* file;
        double area;
    };
    double worst_primal = 0.0, worst_dual = 0.0;
    for (const Domain& dom : {Domain{"square.mesh", 1.0}, Domain{"triangle.mesh", std::sqrt(3.0) / 4.0},
                              Domain{"right_grid.mesh", 1.0}}) {
        for (const Family& f : refinements(dom.file, fixture(dom.file), 2)) {
            double primal = 0.0;
            for (Index t = 0; t < f.mesh.num_triangles(); ++t) primal += f.mesh.triangle_area(t);
            worst_primal = std::max(worst_primal, std::abs(primal - dom.area) / dom.area);
            if (!mesh_quality(f.mesh).well_centered) continue;
            double dual = 0.0;
            for (double a : build_dual(f.mesh).dual_vertex_area) dual += a;
            worst_dual = std::max(worst_dual, std::abs(dual - dom.area) / dom.area);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "sum |T| defect %.2e, sum |*v| defect %.2e (tol %.0e)", worst_primal, worst_dual,
                  kAreaTol);
    return {worst_primal <= kAreaTol && worst_dual <= kAreaTol, buf};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exact_algebra", exact_algebra},
        {"commuting_diagrams", commuting_diagrams},
        {"operator_round_trip", round_trip},
        {"test_I", test_one},
        {"test_II", test_two},
        {"test_III", test_three},
        {"interpolant_gap_decay", interpolant_gap},
        {"geometry_conservation", geometry_conservation},
    };

    int undocumented = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = check();
        } catch (const std::exception& e) {
            out = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool documented = !out.pass && kDocumentedFailures.count(name) > 0;
        if (!out.pass && !documented) ++undocumented;
        std::printf("%s %s: %s [%.1fs]%s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(), secs,
                    documented ? " (documented failure)" : "");
        std::fflush(stdout);
    }
    return undocumented == 0 ? 0 : 1;
}
