#include "gnrpa/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace gnrpa {

namespace {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view s, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::runtime_error(std::string("bad ") + what + ": '" + std::string(s) + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

std::string output_stem(const RunOutcome& run) {
    return lower(run.instance) + "_" + std::string(to_string(run.config.algorithm)) + "_s" +
           std::to_string(run.config.seed);
}

ResultRow RunOutcome::row() const {
    return {instance, validated.unvisited, validated.n_vehicles, validated.distance, validated.scalar, config.seed,
            result.elapsed};
}

RunOutcome solve_instance(const Problem& problem, const SearchConfig& config) {
    RunOutcome out;
    out.instance = problem.instance.name;
    out.config = config;
    out.result = run(config, problem);
    out.tours = solution_tours(replay(out.result.best_record.sequence, problem));
    const ValidationReport report = validate_solution(problem, out.tours);
    if (!report.ok) {
        std::string msg = problem.instance.name + " seed " + std::to_string(config.seed) + ": invalid solution";
        for (const auto& v : report.violations) msg += "; " + v;
        throw ValidationError(msg);
    }
    if (!(report.score == out.result.best_score))
        throw ValidationError(problem.instance.name + " seed " + std::to_string(config.seed) +
                              ": validator score disagrees with the search");
    out.validated = report.score;
    return out;
}

void ExperimentSpec::validate() const {
    if (instance_paths.empty()) throw ConfigError("no instance files given");
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    for (const auto& p : instance_paths)
        if (!std::filesystem::is_regular_file(p)) throw ConfigError("instance file not found: " + p.string());
    config.validate();
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const std::function<void(const RunOutcome&)>& on_run) {
    spec.validate();
    std::vector<Problem> problems;
    problems.reserve(spec.instance_paths.size());
    for (const auto& p : spec.instance_paths) problems.emplace_back(load_instance(p));

    if (spec.output_dir) std::filesystem::create_directories(*spec.output_dir);

    const std::size_t n_seeds = spec.seeds.size();
    const std::size_t n_tasks = problems.size() * n_seeds;
    std::vector<ResultRow> rows(n_tasks);
    std::vector<std::exception_ptr> errors(n_tasks);
    std::atomic<std::size_t> next{0};
    std::mutex report_mutex;

    auto worker = [&] {
        for (std::size_t task = next++; task < n_tasks; task = next++) {
            try {
                SearchConfig config = spec.config;
                config.seed = spec.seeds[task % n_seeds];
                const RunOutcome run = solve_instance(problems[task / n_seeds], config);
                rows[task] = run.row();
                if (spec.output_dir) {
                    const auto stem = *spec.output_dir / output_stem(run);
                    std::ofstream(stem.string() + ".json") << solution_json(run).dump(2) << '\n';
                    emit_trace(run.result, stem.string() + "_trace.csv");
                }
                if (on_run) {
                    std::lock_guard lock(report_mutex);
                    on_run(run);
                }
            } catch (...) {
                errors[task] = std::current_exception();
            }
        }
    };

    const int n_threads = std::min<int>(spec.jobs, static_cast<int>(n_tasks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ExperimentResult result;
    result.runs = std::move(rows);
    result.best = best_of_seeds(result.runs);
    if (spec.output_dir) {
        std::ofstream runs(*spec.output_dir / "runs.csv");
        write_rows_csv(runs, result.runs);
        std::ofstream summary(*spec.output_dir / "summary.csv");
        write_rows_csv(summary, result.best);
    }
    return result;
}

std::vector<ResultRow> best_of_seeds(const std::vector<ResultRow>& rows) {
    std::map<std::string, ResultRow> best;
    for (const auto& row : rows) {
        auto [it, inserted] = best.emplace(row.instance, row);
        if (inserted) continue;
        const auto key = lexicographic_key(row.score());
        const auto incumbent = lexicographic_key(it->second.score());
        if (key < incumbent || (key == incumbent && row.seed < it->second.seed)) it->second = row;
    }
    std::vector<ResultRow> out;
    for (auto& [name, row] : best) out.push_back(row);
    sort_reporting_order(out);
    return out;
}

const std::vector<std::string>& solomon_instance_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        auto add = [&](const char* prefix, int first, int last) {
            for (int k = first; k <= last; ++k) v.push_back(prefix + std::to_string(k));
        };
        add("c", 101, 109);
        add("c", 201, 208);
        add("r", 101, 112);
        add("r", 201, 211);
        add("rc", 101, 108);
        add("rc", 201, 208);
        return v;
    }();
    return names;
}

std::string instance_class(std::string_view instance_name) {
    const std::string name = lower(instance_name);
    const auto& names = solomon_instance_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) return {};
    std::string tag;
    for (char c : name) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tag += c;
            break;
        }
        tag += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return tag;
}

std::vector<std::string> class_members(std::string_view class_tag) {
    std::vector<std::string> out;
    for (const auto& name : solomon_instance_names())
        if (instance_class(name) == class_tag) out.push_back(name);
    return out;
}

std::size_t reporting_rank(std::string_view instance_name) {
    const auto& names = solomon_instance_names();
    const auto it = std::find(names.begin(), names.end(), lower(instance_name));
    return static_cast<std::size_t>(it - names.begin());
}

void sort_reporting_order(std::vector<ResultRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        const auto ra = reporting_rank(a.instance);
        const auto rb = reporting_rank(b.instance);
        return ra != rb ? ra < rb : lower(a.instance) < lower(b.instance);
    });
}

double class_summary(const std::vector<ResultRow>& rows, std::string_view class_tag) {
    const auto members = class_members(class_tag);
    if (members.empty()) throw std::runtime_error("unknown instance class '" + std::string(class_tag) + "'");
    const auto best = best_of_seeds(rows);
    double sum = 0.0;
    std::string missing;
    for (const auto& name : members) {
        const auto it = std::find_if(best.begin(), best.end(), [&](const ResultRow& r) { return lower(r.instance) == name; });
        if (it == best.end()) {
            missing += (missing.empty() ? "" : ", ") + name;
            continue;
        }
        sum += it->scalar;
    }
    if (!missing.empty())
        throw std::runtime_error("class " + std::string(class_tag) + " is missing instances: " + missing);
    return sum / static_cast<double>(members.size());
}

nlohmann::json config_json(const SearchConfig& config) {
    return {
        {"algorithm", to_string(config.algorithm)},
        {"level", config.level},
        {"iterations", config.iterations},
        {"alpha", config.alpha},
        {"w1", config.bias.distance},
        {"w2", config.bias.waiting},
        {"w3", config.bias.lateness},
        {"time_budget", config.time_budget},
        {"seed", config.seed},
    };
}

nlohmann::json solution_json(const RunOutcome& run) {
    return {
        {"instance", run.instance},
        {"seed", run.config.seed},
        {"config", config_json(run.config)},
        {"tours", run.tours},
        {"nv", run.validated.n_vehicles},
        {"km", run.validated.distance},
        {"unvisited", run.validated.unvisited},
        {"scalar", run.validated.scalar},
        {"elapsed", run.result.elapsed},
        {"playouts", run.result.playout_count},
    };
}

SolutionFile parse_solution(const nlohmann::json& doc) {
    SolutionFile s;
    try {
        s.instance = doc.at("instance").get<std::string>();
        s.seed = doc.value("seed", std::uint64_t{0});
        s.config = doc.value("config", nlohmann::json::object());
        s.tours = doc.at("tours").get<std::vector<Tour>>();
        s.nv = doc.at("nv").get<int>();
        s.km = doc.at("km").get<double>();
        s.unvisited = doc.at("unvisited").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed solution document: ") + e.what());
    }
    return s;
}

SolutionFile read_solution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file " + path.string());
    try {
        return parse_solution(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_trace(std::ostream& out, const SearchResult& result) {
    out << "elapsed_seconds,best_scalar\n";
    for (const auto& p : result.trace) out << format_double(p.elapsed) << ',' << format_double(p.best_scalar) << '\n';
}

void emit_trace(const SearchResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file " + path.string());
    write_trace(out, result);
}

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "instance,unvisited,nv,km,scalar,seed,elapsed\n";
    for (const auto& r : rows)
        out << r.instance << ',' << r.unvisited << ',' << r.nv << ',' << format_double(r.km) << ','
            << format_double(r.scalar) << ',' << r.seed << ',' << format_double(r.elapsed) << '\n';
}

std::vector<ResultRow> read_rows_csv(std::istream& in) {
    std::vector<ResultRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 7) throw std::runtime_error("rows csv line " + std::to_string(line_no) + ": expected 7 columns");
        ResultRow r;
        r.instance = cells[0];
        r.unvisited = static_cast<int>(parse_double(cells[1], "unvisited"));
        r.nv = static_cast<int>(parse_double(cells[2], "nv"));
        r.km = parse_double(cells[3], "km");
        r.scalar = parse_double(cells[4], "scalar");
        r.seed = static_cast<std::uint64_t>(parse_double(cells[5], "seed"));
        r.elapsed = parse_double(cells[6], "elapsed");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ReferenceRow> read_reference_csv(std::istream& in) {
    std::vector<ReferenceRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() != 11) throw std::runtime_error("reference csv: expected 11 columns in '" + line + "'");
        ReferenceRow r;
        r.instance = c[0];
        ReferenceRow::Entry* entries[] = {&r.nrpa, &r.nrpad, &r.gnrpa, &r.ortools, &r.best_known};
        for (std::size_t k = 0; k < 5; ++k) {
            entries[k]->nv = static_cast<int>(parse_double(c[1 + 2 * k], "nv"));
            entries[k]->km = parse_double(c[2 + 2 * k], "km");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace gnrpa
