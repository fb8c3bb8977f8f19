#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gnrpa/instance.hpp"
#include "gnrpa/routing.hpp"
#include "gnrpa/search.hpp"

namespace gnrpa {

/// A reported solution failed the independent validator, or its score
/// disagrees with what the search claimed.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ResultRow {
    std::string instance;
    int unvisited = 0;
    int nv = 0;
    double km = 0.0;
    double scalar = 0.0;
    std::uint64_t seed = 0;
    double elapsed = 0.0;

    ScoreBreakdown score() const { return make_score(unvisited, nv, km); }
};

/// One validated search on one instance.
struct RunOutcome {
    std::string instance;
    SearchConfig config;
    SearchResult result;
    std::vector<Tour> tours;
    ScoreBreakdown validated;  // recomputed from `tours`

    ResultRow row() const;
};

/// Runs the search and checks its best solution with validate_solution.
/// Throws ValidationError on an infeasible tour set or a score mismatch.
RunOutcome solve_instance(const Problem& problem, const SearchConfig& config);

struct ExperimentSpec {
    std::vector<std::filesystem::path> instance_paths;
    SearchConfig config;  // seed is overridden per run
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    int jobs = 1;
    std::optional<std::filesystem::path> output_dir;

    void validate() const;
};

struct ExperimentResult {
    std::vector<ResultRow> runs;  // every (instance, seed), instance-major
    std::vector<ResultRow> best;  // best seed per instance, canonical order
};

/// Runs every instance x seed, in parallel when jobs > 1. With an output
/// directory, writes per-run solution JSON and trace CSV plus runs.csv and
/// summary.csv. `on_run` is called once per finished run, serialized.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::function<void(const RunOutcome&)>& on_run = {});

/// Best row per instance by lexicographic key; ties keep the lower seed.
std::vector<ResultRow> best_of_seeds(const std::vector<ResultRow>& rows);

/// File stem for a run's artifacts: "<instance>_<algorithm>_s<seed>", lower case.
std::string output_stem(const RunOutcome& run);

// Solomon benchmark bookkeeping.

/// The 56 instance names in reporting order (c1, c2, r1, r2, rc1, rc2).
const std::vector<std::string>& solomon_instance_names();
/// "C1", "C2", "R1", "R2", "RC1" or "RC2"; empty for other names.
std::string instance_class(std::string_view instance_name);
std::vector<std::string> class_members(std::string_view class_tag);
/// Position in reporting order; unknown names sort last.
std::size_t reporting_rank(std::string_view instance_name);
void sort_reporting_order(std::vector<ResultRow>& rows);

/// Mean best scalar over the instances of a class. Throws
/// std::runtime_error naming the instances without a row.
double class_summary(const std::vector<ResultRow>& rows, std::string_view class_tag);

// File formats.

nlohmann::json solution_json(const RunOutcome& run);

struct SolutionFile {
    std::string instance;
    std::uint64_t seed = 0;
    nlohmann::json config;
    std::vector<Tour> tours;
    int nv = 0;
    double km = 0.0;
    int unvisited = 0;
};

SolutionFile parse_solution(const nlohmann::json& doc);
SolutionFile read_solution(const std::filesystem::path& path);

nlohmann::json config_json(const SearchConfig& config);

/// CSV with header elapsed_seconds,best_scalar; one row per improvement.
void write_trace(std::ostream& out, const SearchResult& result);
void emit_trace(const SearchResult& result, const std::filesystem::path& path);

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_rows_csv(std::istream& in);

/// One line of the published comparison table (NV, Km per algorithm).
struct ReferenceRow {
    struct Entry {
        int nv = 0;
        double km = 0.0;
    };
    std::string instance;
    Entry nrpa, nrpad, gnrpa, ortools, best_known;
};

std::vector<ReferenceRow> read_reference_csv(std::istream& in);

}  // namespace gnrpa
