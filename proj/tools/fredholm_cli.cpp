// Command-line front end: solves the mixed-fBm Fredholm equations, exports
// kernel surfaces and error tables, and runs convergence/regularization
// studies. All numeric output is full-precision CSV; --json switches to a
// single JSON document with the same fields.
//
// Exit codes: 0 success, 1 usage/domain error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fredholm/fredholm.hpp"

namespace {

using nlohmann::json;

struct Options {
    std::vector<double> hurst;
    std::vector<int> n;
    double t_max = 1.0;
    std::string f_name;
    std::string f_file;
    std::string out;
    bool as_json = false;
    double radius = 0.0;
    std::vector<double> radii;
    int resolution = 200;
    std::optional<double> tol;
    std::string dump_matrix;
    std::string dump_solutions;
};

fredholm::DriftFunction resolve_drift(const Options& opt) {
    if (!opt.f_file.empty()) {
        if (!opt.f_name.empty())
            throw std::domain_error("pass either --f or --f-file, not both");
        auto [t, v] = fredholm::read_two_column_csv(opt.f_file);
        return fredholm::tabulated(std::move(t), std::move(v));
    }
    if (opt.f_name.empty())
        throw std::domain_error("a right-hand side is required: pass --f or --f-file");
    if (opt.f_name == "linear_t") return fredholm::linear_t();
    if (opt.f_name == "quadratic_t2") return fredholm::quadratic_t2();
    if (opt.f_name == "piecewise_x2") return fredholm::piecewise_x2(opt.t_max);
    throw std::domain_error("unknown --f '" + opt.f_name +
                            "' (builtins: linear_t, piecewise_x2, quadratic_t2)");
}

void emit(const Options& opt, const std::string& name, const std::vector<std::string>& cols,
          const std::vector<std::vector<double>>& rows) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!opt.out.empty()) {
        file = fredholm::open_csv(opt.out);
        out = &file;
    }
    if (opt.as_json) {
        json doc;
        doc["subcommand"] = name;
        doc["rows"] = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (cols[c] == "N")
                    obj[cols[c]] = static_cast<long long>(row[c]);
                else
                    obj[cols[c]] = row[c];
            }
            doc["rows"].push_back(std::move(obj));
        }
        *out << doc.dump(2) << '\n';
    } else {
        fredholm::write_csv(*out, cols, rows);
    }
}

double single_hurst(const Options& opt) {
    if (opt.hurst.size() != 1)
        throw std::domain_error("this subcommand takes a single --hurst value");
    return opt.hurst.front();
}

int single_n(const Options& opt) {
    if (opt.n.size() != 1) throw std::domain_error("this subcommand takes a single --n value");
    return opt.n.front();
}

void run_solve(const Options& opt) {
    const double hurst = single_hurst(opt);
    const int n = single_n(opt);
    const fredholm::DriftFunction f = resolve_drift(opt);
    const fredholm::FeqProblem p(hurst, opt.t_max, f, n, opt.radius);
    const fredholm::Grid grid(opt.t_max, n);
    const fredholm::SingularKernel k =
        fredholm::mfbm_kernel(hurst, opt.t_max, p.regularization_radius);
    const fredholm::SystemMatrix matrix = fredholm::assemble(grid, k);
    if (!opt.dump_matrix.empty()) {
        std::vector<std::vector<double>> mrows;
        mrows.reserve(static_cast<std::size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                mrows.push_back({static_cast<double>(j), static_cast<double>(i),
                                 matrix.entries(j, i)});
        fredholm::write_csv_file(opt.dump_matrix, {"j", "i", "value"}, mrows);
    }

    Eigen::VectorXd rhs(n);
    if (opt.tol) {
        // --f is the exact solution; synthesize the right-hand side with the
        // quadrature oracle and solve against it
        rhs = fredholm::manufactured_rhs(f.fn, k, grid, *opt.tol, f.breakpoints);
    } else {
        for (int i = 0; i < n; ++i) rhs(i) = f.fn(grid.node(i));
    }
    const fredholm::SolveReport report = fredholm::solve_system(matrix, rhs);

    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i)
        rows.push_back({grid.node(i), report.x(i), rhs(i) - report.x(i)});
    emit(opt, "solve", {"t", "x", "f_minus_x"}, rows);
}

void run_table(const Options& opt) {
    const fredholm::StudyResult r = fredholm::run_table(opt.hurst, opt.n);
    std::vector<std::vector<double>> rows;
    for (const auto& row : r.rows)
        rows.push_back({static_cast<double>(row.n), row.hurst, row.max_err, row.l2_err});
    emit(opt, "table", {"N", "H", "max_err", "l2_err"}, rows);
}

void run_surface(const Options& opt) {
    const double hurst = single_hurst(opt);
    const int m = opt.resolution;
    if (m < 2) throw std::domain_error("--resolution must be at least 2");
    const fredholm::Grid grid(opt.t_max, m);
    const fredholm::Numerator num =
        hurst < 0.5 ? fredholm::regularize(fredholm::Numerator::hurst_lower(hurst, opt.t_max),
                                           opt.radius > 0.0 ? opt.radius : grid.h)
                    : fredholm::Numerator::constant(fredholm::numerator_upper_const(hurst),
                                                    opt.t_max);
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            rows.push_back({grid.node(i), grid.node(j), num(grid.node(i), grid.node(j))});
    emit(opt, "surface", {"t", "v", "L"}, rows);
}

void run_convergence(const Options& opt) {
    const fredholm::StudyResult r = fredholm::run_table(opt.hurst, opt.n);
    std::vector<std::vector<double>> rows;
    for (double hurst : opt.hurst) {
        std::vector<std::pair<int, double>> column;
        for (const auto& row : r.rows)
            if (row.hurst == hurst) column.emplace_back(row.n, row.max_err);
        rows.push_back({hurst, fredholm::convergence_rate(column)});
    }
    emit(opt, "convergence", {"H", "rate"}, rows);
}

void run_regstudy(const Options& opt) {
    const double hurst = single_hurst(opt);
    const int n = single_n(opt);
    const fredholm::DriftFunction f =
        opt.f_name.empty() && opt.f_file.empty() ? fredholm::linear_t() : resolve_drift(opt);
    if (opt.radii.empty()) throw std::domain_error("regstudy requires --radius r1,r2,...");
    const fredholm::RegularizationStudy study =
        fredholm::regularization_study(hurst, f, n, opt.radii);
    if (!opt.dump_solutions.empty()) {
        const fredholm::Grid grid(1.0, n);
        for (std::size_t k = 0; k < study.radii.size(); ++k) {
            std::vector<std::vector<double>> srows;
            for (int i = 0; i < n; ++i)
                srows.push_back({grid.node(i), study.solutions[k](i)});
            fredholm::write_csv_file(opt.dump_solutions + "/sol_" +
                                         fredholm::format_double(study.radii[k]) + ".csv",
                                     {"t", "x"}, srows);
        }
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < study.radii.size(); ++k)
        rows.push_back({study.radii[k], study.l2_distance_to_prev[k]});
    emit(opt, "regstudy", {"radius", "l2_distance_to_prev"}, rows);
}

void run_objective(const Options& opt) {
    const double hurst = single_hurst(opt);
    const int n = single_n(opt);
    const fredholm::FeqProblem p(hurst, opt.t_max, resolve_drift(opt), n, opt.radius);
    const fredholm::FeqSolution s = fredholm::solve_feq(p);
    const double m = fredholm::objective_value(p, s.report.x);
    emit(opt, "objective", {"H", "N", "objective", "entropy"},
         {{hurst, static_cast<double>(n), m, 0.5 * m}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Solver for Fredholm integral equations of the second kind with weakly singular\n"
        "kernels K(t,s) = L(t,s)|t-s|^(-nu), including the mixed fractional-Brownian-motion\n"
        "drift-optimization equations for Hurst index H in (0,1)\\{1/2}."};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool multi_hurst) {
        if (multi_hurst)
            sub->add_option("--hurst", opt.hurst, "Hurst index (comma-separated list)")
                ->required()
                ->delimiter(',');
        else
            sub->add_option("--hurst", opt.hurst, "Hurst index in (0,1), H != 1/2")
                ->required()
                ->delimiter(',');
        sub->add_option("--out", opt.out, "output file (stdout when omitted)");
        sub->add_flag("--json", opt.as_json, "emit one JSON document instead of CSV");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the equation and export t,x,f_minus_x");
    add_common(solve, false);
    solve->add_option("--n", opt.n, "number of grid nodes")->required()->delimiter(',');
    solve->add_option("--t-max", opt.t_max, "interval endpoint T");
    solve->add_option("--f", opt.f_name, "builtin right-hand side");
    solve->add_option("--f-file", opt.f_file, "two-column CSV t,value (piecewise-linear)");
    solve->add_option("--radius", opt.radius, "regularization radius (default T/(N-1))");
    solve->add_option("--tol", opt.tol,
                      "treat --f as the exact solution and synthesize the right-hand side by "
                      "quadrature at this tolerance");
    solve->add_option("--dump-matrix", opt.dump_matrix,
                      "also write the assembled system matrix as CSV j,i,value");

    CLI::App* table = app.add_subcommand("table", "manufactured-quadratic error table");
    add_common(table, true);
    table->add_option("--n", opt.n, "grid sizes (comma-separated, ascending)")
        ->required()
        ->delimiter(',');

    CLI::App* surface = app.add_subcommand("surface", "sample the kernel numerator L(t,v)");
    add_common(surface, false);
    surface->add_option("--resolution", opt.resolution, "grid resolution per axis");
    surface->add_option("--t-max", opt.t_max, "interval endpoint T");
    surface->add_option("--radius", opt.radius, "regularization radius (default T/(M-1))");

    CLI::App* convergence =
        app.add_subcommand("convergence", "log-log error rates of the quadratic study");
    add_common(convergence, true);
    convergence->add_option("--n", opt.n, "grid sizes (comma-separated, ascending)")
        ->required()
        ->delimiter(',');

    CLI::App* regstudy =
        app.add_subcommand("regstudy", "solutions across regularization radii (H < 1/2)");
    add_common(regstudy, false);
    regstudy->add_option("--n", opt.n, "number of grid nodes")->required()->delimiter(',');
    regstudy->add_option("--f", opt.f_name, "builtin right-hand side (default linear_t)");
    regstudy->add_option("--f-file", opt.f_file, "two-column CSV t,value");
    regstudy->add_option("--radius", opt.radii, "radii (comma-separated, non-increasing)")
        ->required()
        ->delimiter(',');
    regstudy->add_option("--dump-solutions", opt.dump_solutions,
                         "directory for per-radius solution exports (CSV t,x)");

    CLI::App* objective =
        app.add_subcommand("objective", "minimized objective <f-w,f> and entropy value");
    add_common(objective, false);
    objective->add_option("--n", opt.n, "number of grid nodes")->required()->delimiter(',');
    objective->add_option("--t-max", opt.t_max, "interval endpoint T");
    objective->add_option("--f", opt.f_name, "builtin right-hand side");
    objective->add_option("--f-file", opt.f_file, "two-column CSV t,value");
    objective->add_option("--radius", opt.radius, "regularization radius (default T/(N-1))");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) run_solve(opt);
        else if (table->parsed()) run_table(opt);
        else if (surface->parsed()) run_surface(opt);
        else if (convergence->parsed()) run_convergence(opt);
        else if (regstudy->parsed()) run_regstudy(opt);
        else if (objective->parsed()) run_objective(opt);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}
