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

#include <decdirac/cochain.hpp>
#include <decdirac/dual.hpp>
#include <decdirac/error.hpp>
#include <decdirac/fields.hpp>
#include <decdirac/mesh.hpp>
#include <decdirac/quadrature.hpp>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace decdirac {

/// Default bound on the relative residual of the linear solve.
inline constexpr double kSolverTolerance = 1e-10;

struct DofRef {
    int grade;    // 0, 1, 2; -1 for the Lagrange multiplier
    Index simplex;
};

///
/// Constrained Hodge-Dirac system in tested form:
///
///   find u in C(T) with zero boundary values and zero-sum top grade such that
///   <d u, v> + <u, d v> = <rhs, v> for all such v.
///
/// Unknowns are ordered [interior vertices | interior edges | triangles | multiplier]; the
/// last row/column enforces sum_T u2(T) = 0. The matrix is symmetric as stored.
///
struct DiracSystem {
    Eigen::SparseMatrix<double> matrix;
    Eigen::VectorXd rhs;
    std::vector<DofRef> dofs;
    std::vector<Index> vertex_dof;   // -1 on the boundary
    std::vector<Index> edge_dof;     // -1 on the boundary
    std::vector<Index> triangle_dof;
    Index multiplier = -1;

    // The complex must outlive the system.
    const SimplicialComplex* complex = nullptr;
    HodgeStars stars;
    GradedCochain source;
};

struct SolveReport {
    double residual_norm = 0.0;   // ||b - A x|| / ||b|| of the assembled system
    double dirac_residual = 0.0;  // ||D u - rhs|| on interior simplices, top grade mean-free
    double strong_residual = 0.0; // ||D u - rhs|| over every simplex
    double multiplier = 0.0;
    Index dof_count = 0;          // constrained unknowns, multiplier excluded
    Index factor_nonzeros = 0;
    int refinement_steps = 0;
};

inline DiracSystem assemble(const SimplicialComplex& c, const HodgeStars& stars, const GradedCochain& rhs,
                            const ConstraintSpace& cs)
{
    detail::check_sizes(c, rhs);
    detail::check_sizes(stars, rhs);
    if (cs.num_triangles != c.num_triangles()) {
        throw Error(ErrorCode::DimensionMismatch, "constraint space belongs to a different complex");
    }
    if (c.euler_characteristic() != 1) {
        throw Error(ErrorCode::TopologyError,
                    "Euler characteristic " + std::to_string(c.euler_characteristic()) + " (a disk needs 1)");
    }

    DiracSystem sys;
    sys.complex = &c;
    sys.stars = stars;
    sys.source = rhs;
    sys.vertex_dof.assign(c.num_vertices(), -1);
    sys.edge_dof.assign(c.num_edges(), -1);
    sys.triangle_dof.assign(c.num_triangles(), -1);

    Index next = 0;
    for (Index v : cs.interior_vertices) {
        sys.vertex_dof[v] = next++;
        sys.dofs.push_back({0, v});
    }
    for (Index e : cs.interior_edges) {
        sys.edge_dof[e] = next++;
        sys.dofs.push_back({1, e});
    }
    for (Index t = 0; t < c.num_triangles(); ++t) {
        sys.triangle_dof[t] = next++;
        sys.dofs.push_back({2, t});
    }
    sys.multiplier = next++;
    sys.dofs.push_back({-1, 0});
    const Index n = next;

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(4 * static_cast<std::size_t>(c.num_edges()) + 6 * static_cast<std::size_t>(c.num_triangles()) +
                    2 * static_cast<std::size_t>(c.num_triangles()));
    auto symmetric = [&entries](Index i, Index j, double value) {
        entries.emplace_back(i, j, value);
        entries.emplace_back(j, i, value);
    };
    // M1 d0 and its transpose.
    for (Index e = 0; e < c.num_edges(); ++e) {
        const Index row = sys.edge_dof[e];
        if (row < 0) continue;
        const Index tail = sys.vertex_dof[c.edge(e)[0]];
        const Index head = sys.vertex_dof[c.edge(e)[1]];
        if (tail >= 0) symmetric(row, tail, -stars.m1[e]);
        if (head >= 0) symmetric(row, head, stars.m1[e]);
    }
    // M2 d1 and its transpose.
    for (Index t = 0; t < c.num_triangles(); ++t) {
        const Index row = sys.triangle_dof[t];
        for (int k = 0; k < 3; ++k) {
            const Index col = sys.edge_dof[c.triangle_edges(t)[k]];
            if (col >= 0) symmetric(row, col, stars.m2[t] * c.triangle_edge_signs(t)[k]);
        }
        symmetric(row, sys.multiplier, 1.0);
    }
    sys.matrix.resize(n, n);
    sys.matrix.setFromTriplets(entries.begin(), entries.end());
    sys.matrix.makeCompressed();

    sys.rhs = Eigen::VectorXd::Zero(n);
    for (Index v : cs.interior_vertices) sys.rhs[sys.vertex_dof[v]] = stars.m0[v] * rhs.u0[v];
    for (Index e : cs.interior_edges) sys.rhs[sys.edge_dof[e]] = stars.m1[e] * rhs.u1[e];
    for (Index t = 0; t < c.num_triangles(); ++t) sys.rhs[sys.triangle_dof[t]] = stars.m2[t] * rhs.u2[t];
    return sys;
}

/// Norm of D u - rhs restricted to the test space of the tested form.
inline double constrained_dirac_residual(const SimplicialComplex& c, const HodgeStars& stars,
                                         const GradedCochain& u, const GradedCochain& rhs)
{
    const GradedCochain r = project_constraints(c, dec_dirac(c, stars, u) - rhs);
    return std::sqrt(inner(r, r, stars));
}

namespace detail {

// The bordered matrix only couples grades 0 and 2 with grade 1 and the multiplier, so
// after permuting to [even | odd] it reads [[0, K], [K^T, 0]] with K square.
struct BlockSplit {
    std::vector<Index> even; // system index -> position in K's rows, or -1
    std::vector<Index> odd;  // system index -> position in K's columns, or -1
    std::vector<Index> even_dofs;
    std::vector<Index> odd_dofs;
};

inline BlockSplit split_blocks(const DiracSystem& sys)
{
    BlockSplit s;
    const auto n = static_cast<Index>(sys.dofs.size());
    s.even.assign(n, -1);
    s.odd.assign(n, -1);
    for (Index i = 0; i < n; ++i) {
        const int g = sys.dofs[i].grade;
        if (g == 0 || g == 2) {
            s.even[i] = static_cast<Index>(s.even_dofs.size());
            s.even_dofs.push_back(i);
        } else {
            s.odd[i] = static_cast<Index>(s.odd_dofs.size());
            s.odd_dofs.push_back(i);
        }
    }
    return s;
}

} // namespace detail

///
/// Direct solve of the bordered system through one sparse LU of its off-diagonal block,
/// followed by up to three steps of iterative refinement on the full system.
/// Throws SingularSystem if factorization fails and SolverFailure if the relative
/// residual stays above `tolerance`.
///
inline std::pair<GradedCochain, SolveReport> solve(const DiracSystem& sys, double tolerance = kSolverTolerance)
{
    if (sys.complex == nullptr) throw Error(ErrorCode::InvalidArgument, "system was not assembled");
    const SimplicialComplex& c = *sys.complex;

    SolveReport report;
    report.dof_count = static_cast<Index>(sys.dofs.size()) - 1;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.matrix.rows());
    const double bnorm = sys.rhs.norm();
    if (bnorm > 0.0) {
        const detail::BlockSplit split = detail::split_blocks(sys);
        if (split.even_dofs.size() != split.odd_dofs.size()) {
            throw Error(ErrorCode::SingularSystem, "off-diagonal block is not square");
        }
        const auto m = static_cast<Index>(split.even_dofs.size());
        std::vector<Eigen::Triplet<double>> entries;
        for (int k = 0; k < sys.matrix.outerSize(); ++k) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, k); it; ++it) {
                const Index r = split.even[it.row()];
                const Index col = split.odd[it.col()];
                if (r >= 0 && col >= 0) entries.emplace_back(r, col, it.value());
            }
        }
        Eigen::SparseMatrix<double> block(m, m);
        block.setFromTriplets(entries.begin(), entries.end());
        block.makeCompressed();

        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.analyzePattern(block);
        lu.factorize(block);
        if (lu.info() != Eigen::Success) {
            throw Error(ErrorCode::SingularSystem, "sparse LU factorization failed: " + lu.lastErrorMessage());
        }
        report.factor_nonzeros = lu.nnzL() + lu.nnzU();

        const auto block_solve = [&](const Eigen::VectorXd& b) {
            Eigen::VectorXd be(m), bo(m);
            for (Index i = 0; i < m; ++i) {
                be[i] = b[split.even_dofs[i]];
                bo[i] = b[split.odd_dofs[i]];
            }
            const Eigen::VectorXd xo = lu.solve(be);
            const Eigen::VectorXd xe = lu.transpose().solve(bo);
            Eigen::VectorXd out(b.size());
            for (Index i = 0; i < m; ++i) {
                out[split.even_dofs[i]] = xe[i];
                out[split.odd_dofs[i]] = xo[i];
            }
            return out;
        };

        x = block_solve(sys.rhs);
        Eigen::VectorXd r = sys.rhs - sys.matrix * x;
        report.residual_norm = r.norm() / bnorm;
        while (report.residual_norm > 0.1 * tolerance && report.refinement_steps < 3) {
            x += block_solve(r);
            r = sys.rhs - sys.matrix * x;
            report.residual_norm = r.norm() / bnorm;
            ++report.refinement_steps;
        }
        if (!std::isfinite(report.residual_norm) || report.residual_norm > tolerance) {
            throw Error(ErrorCode::SolverFailure,
                        "relative residual " + std::to_string(report.residual_norm) + " exceeds tolerance");
        }
    }

    GradedCochain u = GradedCochain::zeros(c);
    for (std::size_t i = 0; i + 1 < sys.dofs.size(); ++i) {
        const auto [grade, simplex] = sys.dofs[i];
        (grade == 0 ? u.u0 : grade == 1 ? u.u1 : u.u2)[simplex] = x[static_cast<Eigen::Index>(i)];
    }
    report.multiplier = x[sys.multiplier];
    report.dirac_residual = constrained_dirac_residual(c, sys.stars, u, sys.source);
    const GradedCochain strong = dec_dirac(c, sys.stars, u) - sys.source;
    report.strong_residual = std::sqrt(inner(strong, strong, sys.stars));
    return {std::move(u), report};
}

/// de Rham map of the exact field with its top grade shifted to zero sum.
inline GradedCochain reference_cochain(const GradedFormField& exact, const SimplicialComplex& c,
                                       const QuadratureRule& q)
{
    GradedCochain ref = derham_map(exact, c, q);
    if (ref.u2.size() > 0) ref.u2.array() -= ref.u2.mean();
    return ref;
}

/// Error e = (de Rham map of u_exact) - u_h in the norms ||e|| and ||e|| + ||d e||.
inline CochainNorms error_norms(const GradedFormField& exact, const GradedCochain& uh, const SimplicialComplex& c,
                                const HodgeStars& stars, const QuadratureRule& q)
{
    detail::check_sizes(c, uh);
    return norms(c, stars, reference_cochain(exact, c, q) - uh);
}

/// Coordinate text dump: one `row col value` line per stored entry, 0-based.
inline void write_matrix_coo(std::ostream& out, const Eigen::SparseMatrix<double>& m)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(17);
    for (int k = 0; k < m.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
            ss << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
        }
    }
    out << ss.str();
}

} // namespace decdirac
