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
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace decdirac {
namespace {

using testing::CochainGenerator;
using testing::load_fixture;
using testing::mesh_family;

struct Problem {
    SimplicialComplex c;
    HodgeStars s;
};

Problem problem(SimplicialComplex c)
{
    HodgeStars s = hodge_stars(c, build_dual(c));
    return {std::move(c), std::move(s)};
}

// Coordinates of a constrained cochain in the system's unknown ordering.
Eigen::VectorXd to_system(const DiracSystem& sys, const GradedCochain& u, double multiplier = 0.0)
{
    Eigen::VectorXd x(sys.matrix.rows());
    for (std::size_t i = 0; i < sys.dofs.size(); ++i) {
        const auto [grade, simplex] = sys.dofs[i];
        const auto k = static_cast<Eigen::Index>(i);
        x[k] = grade == 0 ? u.u0[simplex] : grade == 1 ? u.u1[simplex] : grade == 2 ? u.u2[simplex] : multiplier;
    }
    return x;
}

TEST(Assemble, MatrixIsExactlySymmetric)
{
    const auto [c, s] = problem(load_fixture("square.mesh"));
    const DiracSystem sys = assemble(c, s, GradedCochain::zeros(c), ConstraintSpace::of(c));
    const Eigen::SparseMatrix<double> t = sys.matrix.transpose();
    EXPECT_EQ((sys.matrix - t).norm(), 0.0);
    EXPECT_EQ(sys.matrix.rows(), ConstraintSpace::of(c).dof_count() + 1);
}

// Property: the bilinear form of the matrix is <d u, v> + <u, d v> on constrained cochains.
TEST(Assemble, MatrixRepresentsTestedForm)
{
    CochainGenerator gen(77);
    for (const auto& [name, mesh] : mesh_family(1)) {
        SCOPED_TRACE(name);
        const auto [c, s] = problem(mesh);
        const DiracSystem sys = assemble(c, s, GradedCochain::zeros(c), ConstraintSpace::of(c));
        for (int i = 0; i < 10; ++i) {
            const GradedCochain u = gen.constrained(c), v = gen.constrained(c);
            const double form = inner(dec_d(c, u), v, s) + inner(u, dec_d(c, v), s);
            const double matrix = to_system(sys, v).dot(sys.matrix * to_system(sys, u));
            EXPECT_NEAR(matrix, form, 1e-12 * std::max(1.0, std::abs(form)));
        }
    }
}

TEST(Assemble, RejectsNonDiskTopology)
{
    const SimplicialComplex two = build_complex({{0, 0}, {1, 0}, {0.5, 0.8}, {3, 0}, {4, 0}, {3.5, 0.8}},
                                                {{0, 1, 2}, {3, 4, 5}});
    const HodgeStars s = hodge_stars(two, build_dual(two));
    try {
        assemble(two, s, GradedCochain::zeros(two), ConstraintSpace::of(two));
        FAIL() << "expected TopologyError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TopologyError);
    }
}

TEST(Assemble, RejectsMismatchedSizes)
{
    const auto [c, s] = problem(load_fixture("square.mesh"));
    GradedCochain rhs = GradedCochain::zeros(c);
    rhs.u2.resize(3);
    EXPECT_THROW(assemble(c, s, rhs, ConstraintSpace::of(c)), Error);
}

TEST(Solve, ZeroSourceGivesZeroSolution)
{
    const auto [c, s] = problem(load_fixture("triangle.mesh"));
    const DiracSystem sys = assemble(c, s, GradedCochain::zeros(c), ConstraintSpace::of(c));
    const auto [u, report] = solve(sys);
    EXPECT_EQ(u.max_abs(), 0.0);
    EXPECT_EQ(report.residual_norm, 0.0);
}

// Property: D applied to a random constrained cochain is solved back to that cochain.
TEST(Solve, RoundTripRecoversCochain)
{
    CochainGenerator gen(31);
    for (const auto& [name, mesh] : mesh_family(1)) {
        SCOPED_TRACE(name);
        const auto [c, s] = problem(mesh);
        const GradedCochain expect = gen.constrained(c);
        const DiracSystem sys = assemble(c, s, dec_dirac(c, s, expect), ConstraintSpace::of(c));
        const auto [u, report] = solve(sys);
        const GradedCochain diff = u - expect;
        EXPECT_LE(std::sqrt(inner(diff, diff, s)), 1e-10 * std::sqrt(inner(expect, expect, s)));
        EXPECT_LE(report.residual_norm, kSolverTolerance);
    }
}

TEST(Solve, SquareCaseSolutionSatisfiesConstraints)
{
    const BuiltinCase bc = square_case();
    SimplicialComplex c = load_fixture("square.mesh");
    for (int i = 0; i < 3; ++i) c = regular_refine(c);
    const HodgeStars s = hodge_stars(c, build_dual(c));
    GradedCochain rhs = derham_map(bc.rhs, c, make_quadrature(10));
    rhs.u2.array() -= rhs.u2.mean();
    const DiracSystem sys = assemble(c, s, rhs, ConstraintSpace::of(c));
    const auto [u, report] = solve(sys);

    EXPECT_LE(report.dirac_residual, 1e-9 * std::sqrt(inner(rhs, rhs, s)));
    EXPECT_NEAR(u.u2.sum(), 0.0, 1e-10);
    for (Index v = 0; v < c.num_vertices(); ++v) {
        if (c.is_boundary_vertex(v)) EXPECT_EQ(u.u0[v], 0.0);
    }
    for (Index e = 0; e < c.num_edges(); ++e) {
        if (c.is_boundary_edge(e)) EXPECT_EQ(u.u1[e], 0.0);
    }
    EXPECT_EQ(report.dof_count, static_cast<Index>(sys.dofs.size()) - 1);
    EXPECT_GT(report.factor_nonzeros, 0);
}

TEST(Solve, UnassembledSystemIsRejected)
{
    EXPECT_THROW(solve(DiracSystem{}), Error);
}

TEST(ErrorNorms, ExactReferenceHasZeroError)
{
    const BuiltinCase bc = square_case();
    const SimplicialComplex c = load_fixture("square.mesh");
    const HodgeStars s = hodge_stars(c, build_dual(c));
    const QuadratureRule q = make_quadrature(10);
    const CochainNorms err = error_norms(bc.exact, reference_cochain(bc.exact, c, q), c, s, q);
    EXPECT_EQ(err.l2, 0.0);
    EXPECT_EQ(err.hlambda, 0.0);
    EXPECT_NEAR(reference_cochain(bc.exact, c, q).u2.sum(), 0.0, 1e-14);
}

TEST(MatrixDump, OneLinePerStoredEntry)
{
    const auto [c, s] = problem(testing::unit_equilateral());
    const DiracSystem sys = assemble(c, s, GradedCochain::zeros(c), ConstraintSpace::of(c));
    std::ostringstream out;
    write_matrix_coo(out, sys.matrix);
    std::istringstream in(out.str());
    Index row = 0, col = 0;
    double value = 0.0;
    Index lines = 0;
    while (in >> row >> col >> value) {
        EXPECT_EQ(sys.matrix.coeff(row, col), value);
        ++lines;
    }
    // One triangle, no interior vertices or edges: only the multiplier coupling remains.
    EXPECT_EQ(lines, 2);
    EXPECT_EQ(lines, sys.matrix.nonZeros());
}

} // namespace
} // namespace decdirac
