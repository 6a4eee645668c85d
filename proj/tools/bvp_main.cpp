#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bvp/problem.hpp"
#include "bvp/solver.hpp"

namespace {

constexpr int kExitParse = 1;
constexpr int kExitSingular = 2;
constexpr int kExitIo = 3;
constexpr int kExitCorpus = 4;
constexpr int kDefaultDegree = 16;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("read failed on '" + path + "'");
    return buf.str();
}

// Locale-independent, 17 significant digits.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> uniform_grid(double a, double b, int count) {
    std::vector<double> ts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        ts[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / (count - 1);
    ts.front() = a;
    ts.back() = b;
    return ts;
}

double max_error_vs_exact(const bvp::SpectralSolution& sol, const bvp::Expr& exact,
                          double a, double b, int samples) {
    double worst = 0.0;
    for (double t : uniform_grid(a, b, samples))
        worst = std::max(worst, std::abs(bvp::evaluate(sol, t, 0) - exact.eval(t)));
    return worst;
}

int pick_degree(const bvp::Problem& p, std::optional<int> override_n) {
    if (override_n) return *override_n;
    if (p.default_degree) return *p.default_degree;
    return kDefaultDegree;
}

struct LoadedProblem {
    bvp::Problem problem;
};

// Exits the process on failure so commands stay linear.
bvp::Problem load_problem_or_exit(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        std::exit(kExitIo);
    }
    try {
        return bvp::parse_problem(text);
    } catch (const std::exception& e) {
        std::cerr << "error: parse: " << path << ": " << e.what() << "\n";
        std::exit(kExitParse);
    }
}

int cmd_solve(const std::string& file, std::optional<int> n_override, int samples,
              const std::string& format) {
    bvp::Problem p = load_problem_or_exit(file);
    const int n = pick_degree(p, n_override);
    if (n < p.order) {
        std::cerr << "error: validation: n must be >= order (n=" << n << ", order=" << p.order
                  << ")\n";
        return kExitParse;
    }

    bvp::SpectralSolution sol;
    const auto start = std::chrono::steady_clock::now();
    try {
        sol = bvp::solve_bvp(p, n);
    } catch (const bvp::SingularMatrixError& e) {
        std::cerr << "error: singular: " << e.what() << "\n";
        return kExitSingular;
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);

    const bool csv = format == "csv";
    const int m = p.order;
    std::vector<std::string> headers{"t", "y"};
    for (int k = 1; k < m; ++k) headers.push_back("d" + std::to_string(k) + "y");
    if (p.exact) {
        headers.emplace_back("exact");
        headers.emplace_back("error");
    }

    std::ostream& out = std::cout;
    if (csv) {
        for (std::size_t i = 0; i < headers.size(); ++i)
            out << (i ? "," : "") << headers[i];
        out << "\n";
    } else {
        for (std::size_t i = 0; i < headers.size(); ++i)
            out << (i ? " " : "") << headers[i] << std::string(i ? 18 : 24 - headers[i].size(), ' ');
        out << "\n";
    }
    for (double t : uniform_grid(p.a, p.b, samples)) {
        std::vector<double> row{t};
        for (int k = 0; k < m; ++k) row.push_back(bvp::evaluate(sol, t, k));
        if (p.exact) {
            const double ex = p.exact->eval(t);
            row.push_back(ex);
            row.push_back(std::abs(row[1] - ex));
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = fmt(row[i]);
            if (csv) out << (i ? "," : "") << cell;
            else out << (i ? " " : "") << cell << std::string(cell.size() < 24 ? 24 - cell.size() : 1, ' ');
        }
        out << "\n";
    }

    std::cerr << "n=" << sol.diagnostics.n << " residual_inf=" << fmt(sol.diagnostics.residual_inf)
              << " cond_estimate=" << fmt(sol.diagnostics.condition_estimate)
              << (sol.diagnostics.cond_warning ? " (ill-conditioned)" : "")
              << " solve_ms=" << elapsed.count() << "\n";
    if (p.exact)
        std::cerr << "max_error=" << fmt(max_error_vs_exact(sol, *p.exact, p.a, p.b, samples))
                  << "\n";
    return 0;
}

int cmd_converge(const std::string& file, int n_min, int n_max, int step) {
    bvp::Problem p = load_problem_or_exit(file);
    if (!p.exact) {
        std::cerr << "error: validation: convergence study needs an 'exact' directive in " << file
                  << "\n";
        return kExitParse;
    }
    if (n_min < p.order || n_max < n_min || step < 1) {
        std::cerr << "error: validation: bad degree range (need order <= n-min <= n-max, step >= 1)\n";
        return kExitParse;
    }

    std::cout << "n,max_error,residual_inf,cond_estimate\n";
    double prev_error = -1.0;
    for (int n = n_min; n <= n_max; n += step) {
        bvp::SpectralSolution sol;
        try {
            sol = bvp::solve_bvp(p, n);
        } catch (const bvp::SingularMatrixError& e) {
            std::cerr << "error: singular: n=" << n << ": " << e.what() << "\n";
            return kExitSingular;
        }
        const double err = max_error_vs_exact(sol, *p.exact, p.a, p.b, 201);
        std::cout << n << "," << fmt(err) << "," << fmt(sol.diagnostics.residual_inf) << ","
                  << fmt(sol.diagnostics.condition_estimate) << "\n";
        if (prev_error >= 0.0 && prev_error > 1e-12 && err > 10.0 * prev_error)
            std::cerr << "warning: max_error grew more than 10x from n=" << n - step << " to n=" << n
                      << "\n";
        prev_error = err;
    }
    return 0;
}

struct CorpusEntry {
    const char* file;
    int n;
    double tolerance;
};

int cmd_corpus(const std::string& dir, bool mutate_unscaled) {
    static constexpr CorpusEntry entries[] = {
        {"ex1.bvp", 8, 1e-9},  {"ex2.bvp", 9, 1e-9},  {"ex3.bvp", 11, 1e-9},
        {"ex4.bvp", 11, 1e-9}, {"ex5.bvp", 13, 1e-7},
    };
    if (!std::filesystem::is_directory(dir)) {
        std::cerr << "error: corpus: directory '" << dir << "' not found\n";
        return kExitCorpus;
    }
    bvp::AssembleOptions opts;
    opts.unscaled_derivative = mutate_unscaled;

    bool all_pass = true;
    for (const CorpusEntry& entry : entries) {
        const std::string path = dir + "/" + entry.file;
        std::string verdict;
        double err = std::numeric_limits<double>::quiet_NaN();
        try {
            const bvp::Problem p = bvp::parse_problem(read_file(path));
            if (!p.exact) throw bvp::ProblemError("corpus file lacks 'exact'");
            const bvp::SpectralSolution sol = bvp::solve_bvp(p, entry.n, opts);
            err = max_error_vs_exact(sol, *p.exact, p.a, p.b, 201);
            verdict = err <= entry.tolerance ? "PASS" : "FAIL";
        } catch (const std::exception& e) {
            verdict = "FAIL";
            std::cerr << entry.file << ": " << e.what() << "\n";
        }
        if (verdict != "PASS") all_pass = false;
        std::cout << verdict << " " << entry.file << " n=" << entry.n
                  << " max_error=" << fmt(err) << " tol=" << fmt(entry.tolerance) << "\n";
    }
    return all_pass ? 0 : kExitCorpus;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev collocation solver for linear m-th order two-point BVPs"};
    app.require_subcommand(1);

    std::string file;
    std::optional<int> n_override;
    int samples = 201;
    std::string format = "table";
    auto* solve = app.add_subcommand("solve", "solve a problem file and print a sample table");
    solve->add_option("file", file, "problem file")->required();
    solve->add_option("--n", n_override, "polynomial degree (default: file's n, else 16)");
    solve->add_option("--samples", samples, "number of uniform sample points")
        ->check(CLI::Range(2, 1000000));
    solve->add_option("--format", format, "csv or table")
        ->check(CLI::IsMember({"csv", "table"}));

    std::string cfile;
    int n_min = 0, n_max = 0, step = 1;
    auto* converge = app.add_subcommand("converge", "error vs degree against the exact solution");
    converge->add_option("file", cfile, "problem file (must declare exact)")->required();
    converge->add_option("--n-min", n_min, "smallest degree")->required();
    converge->add_option("--n-max", n_max, "largest degree")->required();
    converge->add_option("--step", step, "degree increment");

    std::string dir = "corpus";
    bool mutate_unscaled = false;
    auto* corpus = app.add_subcommand("corpus", "run the bundled benchmark files");
    corpus->add_option("--dir", dir, "corpus directory");
    corpus->add_flag("--mutate-unscaled", mutate_unscaled)->group("");  // self-check fixture

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return cmd_solve(file, n_override, samples, format);
    if (converge->parsed()) return cmd_converge(cfile, n_min, n_max, step);
    return cmd_corpus(dir, mutate_unscaled);
}
