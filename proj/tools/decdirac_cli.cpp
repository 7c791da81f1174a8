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

// decdirac: convergence runs for the built-in Hodge-Dirac test cases and mesh checks.
//
//   decdirac run --test square --levels 4 --out square.csv --plot square.svg
//   decdirac check-mesh fixtures/square.mesh
//
// Exit codes: 0 success, 1 usage, 2 validation failure, 3 solver failure.

#include <decdirac/decdirac.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#ifndef DECDIRAC_FIXTURE_DIR
#define DECDIRAC_FIXTURE_DIR "fixtures"
#endif

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kSolver = 3 };

int exit_code_for(decdirac::ErrorCode code)
{
    using decdirac::ErrorCode;
    switch (code) {
    case ErrorCode::SolverFailure:
    case ErrorCode::SingularSystem: return kSolver;
    default: return kValidation;
    }
}

template <typename Write>
void write_file(const std::filesystem::path& path, Write&& write)
{
    std::ofstream out(path);
    if (!out) throw decdirac::Error(decdirac::ErrorCode::IoError, "cannot write '" + path.string() + "'");
    write(out);
    if (!out) throw decdirac::Error(decdirac::ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

std::string format_optional(const std::optional<double>& v, const char* fmt)
{
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return buf;
}

void print_table(const std::vector<decdirac::ConvergenceRecord>& records)
{
    std::printf("%5s %11s %8s %12s %12s %7s %7s %12s\n", "level", "h", "dofs", "err_l2", "err_hlambda", "eoc_l2",
                "eoc_hl", "pij_u");
    for (const auto& r : records) {
        std::printf("%5d %11.4e %8d %12.4e %12.4e %7s %7s %12s\n", r.level, r.h, r.dofs, r.err_l2, r.err_hlambda,
                    format_optional(r.eoc_l2, "%.3f").c_str(), format_optional(r.eoc_hlambda, "%.3f").c_str(),
                    format_optional(r.pij_u, "%.4e").c_str());
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hodge-Dirac discretization on well-centered triangle meshes"};
    app.require_subcommand(1);

    decdirac::RunOptions opt;
    opt.fixture_dir = DECDIRAC_FIXTURE_DIR;
    std::string fixture_dir = opt.fixture_dir.string();
    std::string out_csv, plot_svg, dump_matrix, dump_dual, dump_solution;
    bool no_gap = false;

    CLI::App* run = app.add_subcommand("run", "Convergence study on a built-in test case");
    run->add_option("--test", opt.test, "Test case")
        ->required()
        ->check(CLI::IsMember({"square", "triangle", "perturbed"}));
    run->add_option("--levels", opt.levels, "Regular refinements of the coarse mesh (default 4, perturbed 5)")
        ->check(CLI::Range(2, 12));
    run->add_option("--quad", opt.quad_degree, "Quadrature degree for interpolants")->check(CLI::Range(1, 40));
    run->add_option("--seed", opt.seed, "Perturbation seed");
    run->add_option("--amplitude", opt.amplitude, "Perturbation amplitude, fraction of the shortest incident edge")
        ->check(CLI::Range(0.0, 1.0));
    run->add_option("--out", out_csv, "Convergence CSV")->required();
    run->add_option("--plot", plot_svg, "Log-log convergence plot (SVG)");
    run->add_option("--dump-matrix", dump_matrix, "Finest-level system matrix, `row col value` per line");
    run->add_option("--dump-dual", dump_dual, "Finest-level primal/dual measures as CSV");
    run->add_option("--dump-solution", dump_solution, "Finest-level discrete solution as CSV");
    run->add_option("--fixtures", fixture_dir, "Directory holding the fixture meshes");
    run->add_flag("--no-pij", no_gap, "Skip the interpolant-gap column");

    std::string mesh_path;
    CLI::App* check = app.add_subcommand("check-mesh", "Validate a mesh file and report its quality");
    check->add_option("file", mesh_path, "Mesh file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*check) {
            const decdirac::MeshReport report = decdirac::check_mesh(mesh_path);
            decdirac::write_mesh_report(std::cout, report);
            return report.ok() ? kOk : kValidation;
        }

        opt.fixture_dir = fixture_dir;
        opt.interpolant_gap = !no_gap;
        const int levels = opt.levels > 0 ? opt.levels : decdirac::default_levels(opt.test);
        const auto observer = [&](const decdirac::LevelState& s) {
            if (s.level != levels) return;
            if (!dump_matrix.empty()) {
                write_file(dump_matrix, [&](std::ostream& o) { decdirac::write_matrix_coo(o, s.system->matrix); });
            }
            if (!dump_dual.empty()) {
                write_file(dump_dual, [&](std::ostream& o) { decdirac::write_dual_csv(o, *s.complex, *s.dual); });
            }
            if (!dump_solution.empty()) {
                write_file(dump_solution, [&](std::ostream& o) { decdirac::write_cochain_csv(o, *s.solution); });
            }
        };
        const auto records = decdirac::run_test(opt, observer);
        write_file(out_csv, [&](std::ostream& o) { decdirac::write_convergence_csv(o, records); });
        if (!plot_svg.empty()) decdirac::emit_plot(records, std::filesystem::path(plot_svg));
        print_table(records);
        return kOk;
    } catch (const decdirac::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
}
