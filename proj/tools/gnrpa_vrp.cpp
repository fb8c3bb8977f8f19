// Command-line front end: solve one instance, run a multi-seed benchmark,
// validate a stored solution, or summarize benchmark rows per class.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gnrpa/bench.hpp"
#include "gnrpa/instance.hpp"
#include "gnrpa/routing.hpp"
#include "gnrpa/search.hpp"

namespace fs = std::filesystem;
using namespace gnrpa;

namespace {

struct ConfigFlags {
    std::string algorithm = "gnrpa";
    SearchConfig config;
    std::optional<double> target;

    void attach(CLI::App* app) {
        app->add_option("--algorithm", algorithm, "nrpa, nrpad or gnrpa")
            ->check(CLI::IsMember({"nrpa", "nrpad", "gnrpa"}))
            ->capture_default_str();
        app->add_option("--level", config.level, "Nesting level")->capture_default_str();
        app->add_option("--iterations", config.iterations, "Iterations per level")->capture_default_str();
        app->add_option("--alpha", config.alpha, "Adapt learning rate")->capture_default_str();
        app->add_option("--w1", config.bias.distance, "Distance bias weight")->capture_default_str();
        app->add_option("--w2", config.bias.waiting, "Waiting bias weight")->capture_default_str();
        app->add_option("--w3", config.bias.lateness, "Lateness bias weight")->capture_default_str();
        app->add_option("--time-budget", config.time_budget, "Seconds per run")->capture_default_str();
        app->add_option("--target", target, "Stop a run once its best scalar score is <= this value");
    }

    SearchConfig build() const {
        SearchConfig c = config;
        c.algorithm = parse_algorithm(algorithm);
        c.target_scalar = target;
        c.validate();
        return c;
    }
};

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<fs::path> expand_instances(const std::vector<std::string>& args) {
    std::vector<fs::path> out;
    for (const auto& a : args) {
        const fs::path p(a);
        if (fs::is_directory(p)) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
            std::sort(files.begin(), files.end(), [](const fs::path& x, const fs::path& y) {
                const auto rx = reporting_rank(x.stem().string());
                const auto ry = reporting_rank(y.stem().string());
                return rx != ry ? rx < ry : x < y;
            });
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

std::map<std::string, ReferenceRow> load_reference(const fs::path& path) {
    std::map<std::string, ReferenceRow> out;
    std::ifstream in(path);
    if (!in) return out;
    for (auto& row : read_reference_csv(in)) out.emplace(row.instance, row);
    return out;
}

void print_rows(const std::vector<ResultRow>& rows, const std::map<std::string, ReferenceRow>& reference) {
    std::printf("%-8s %4s %10s %14s %6s", "instance", "NV", "Km", "scalar", "seed");
    if (!reference.empty()) std::printf("   %4s %10s   %4s %10s", "refG", "Km", "BK", "Km");
    std::printf("\n");
    for (const auto& r : rows) {
        std::printf("%-8s %4d %10s %14s %6llu", r.instance.c_str(), r.nv, fixed(r.km).c_str(), fixed(r.scalar).c_str(),
                    static_cast<unsigned long long>(r.seed));
        std::string key = r.instance;
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
        if (auto it = reference.find(key); it != reference.end()) {
            const auto& ref = it->second;
            std::printf("   %4d %10s   %4d %10s", ref.gnrpa.nv, fixed(ref.gnrpa.km).c_str(), ref.best_known.nv,
                        fixed(ref.best_known.km).c_str());
        }
        if (r.unvisited > 0) std::printf("   (%d unvisited)", r.unvisited);
        std::printf("\n");
    }
}

void print_class_means(const std::vector<ResultRow>& rows) {
    for (const char* tag : {"C1", "C2", "R1", "R2", "RC1", "RC2"}) {
        try {
            std::printf("class %-3s mean scalar %s\n", tag, fixed(class_summary(rows, tag)).c_str());
        } catch (const std::runtime_error&) {
            // incomplete class: nothing to report
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nested rollout policy adaptation for vehicle routing with time windows"};
    app.require_subcommand(1);
    const fs::path default_reference = fs::path(GNRPA_DEFAULT_DATA_DIR) / "reference" / "table1.csv";

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one instance with one configuration");
    std::string solve_instance_path;
    std::uint64_t solve_seed = 0;
    std::string solve_out;
    ConfigFlags solve_flags;
    solve->add_option("instance", solve_instance_path, "Solomon instance file")->required()->check(CLI::ExistingFile);
    solve->add_option("--seed", solve_seed, "Random seed")->capture_default_str();
    solve->add_option("--out", solve_out, "Directory for the solution JSON and trace CSV");
    solve_flags.attach(solve);

    // bench
    auto* bench = app.add_subcommand("bench", "Run every instance with several seeds and keep the best");
    std::vector<std::string> bench_inputs;
    ExperimentSpec spec;
    std::string bench_out;
    std::string bench_reference = default_reference.string();
    ConfigFlags bench_flags;
    bench->add_option("instances", bench_inputs, "Instance files or directories")->required();
    bench->add_option("--seeds", spec.seeds, "Seed list")->delimiter(',')->capture_default_str();
    bench->add_option("--jobs", spec.jobs, "Concurrent runs")->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory");
    bench->add_option("--reference", bench_reference, "Published results CSV shown next to ours");
    bench_flags.attach(bench);

    // validate
    auto* validate = app.add_subcommand("validate", "Check a solution JSON against its instance");
    std::string validate_instance_path;
    std::string validate_solution_path;
    validate->add_option("instance", validate_instance_path, "Solomon instance file")->required()->check(CLI::ExistingFile);
    validate->add_option("solution", validate_solution_path, "Solution JSON")->required()->check(CLI::ExistingFile);

    // summarize
    auto* summarize = app.add_subcommand("summarize", "Class means of benchmark rows (runs.csv or summary.csv)");
    std::string rows_path;
    std::string summarize_reference = default_reference.string();
    summarize->add_option("rows", rows_path, "Rows CSV")->required()->check(CLI::ExistingFile);
    summarize->add_option("--reference", summarize_reference, "Published results CSV shown next to ours");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            SearchConfig config = solve_flags.build();
            config.seed = solve_seed;
            const Problem problem(load_instance(solve_instance_path));
            const RunOutcome run = solve_instance(problem, config);
            const auto doc = solution_json(run);
            if (!solve_out.empty()) {
                fs::create_directories(solve_out);
                const auto stem = fs::path(solve_out) / output_stem(run);
                std::ofstream(stem.string() + ".json") << doc.dump(2) << '\n';
                emit_trace(run.result, stem.string() + "_trace.csv");
            } else {
                std::cout << doc.dump(2) << '\n';
            }
            std::cerr << problem.instance.name << ": NV=" << run.validated.n_vehicles
                      << " Km=" << fixed(run.validated.distance) << " unvisited=" << run.validated.unvisited
                      << " playouts=" << run.result.playout_count << " time=" << fixed(run.result.elapsed, 1) << "s\n";
            return 0;
        }

        if (*bench) {
            spec.instance_paths = expand_instances(bench_inputs);
            spec.config = bench_flags.build();
            if (!bench_out.empty()) spec.output_dir = bench_out;
            const auto result = run_experiment(spec, [](const RunOutcome& run) {
                std::cerr << run.instance << " seed " << run.config.seed << ": NV=" << run.validated.n_vehicles
                          << " Km=" << fixed(run.validated.distance) << " (" << fixed(run.result.elapsed, 1) << "s)\n";
            });
            print_rows(result.best, load_reference(bench_reference));
            print_class_means(result.best);
            return 0;
        }

        if (*validate) {
            const Problem problem(load_instance(validate_instance_path));
            const SolutionFile sol = read_solution(validate_solution_path);
            const ValidationReport report = validate_solution(problem, sol.tours);
            bool ok = report.ok;
            for (const auto& v : report.violations) std::cout << "violation: " << v << '\n';
            if (report.score.n_vehicles != sol.nv || report.score.unvisited != sol.unvisited ||
                report.score.distance != sol.km) {
                std::cout << "mismatch: file declares nv=" << sol.nv << " km=" << sol.km
                          << " unvisited=" << sol.unvisited << '\n';
                ok = false;
            }
            std::cout << (ok ? "valid" : "INVALID") << ": NV=" << report.score.n_vehicles
                      << " Km=" << fixed(report.score.distance) << " unvisited=" << report.score.unvisited
                      << " scalar=" << fixed(report.score.scalar) << '\n';
            return ok ? 0 : 1;
        }

        if (*summarize) {
            std::ifstream in(rows_path);
            const auto best = best_of_seeds(read_rows_csv(in));
            print_rows(best, load_reference(summarize_reference));
            print_class_means(best);
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
