#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gnrpa/bias.hpp"
#include "gnrpa/instance.hpp"
#include "gnrpa/policy.hpp"
#include "gnrpa/routing.hpp"

namespace gnrpa {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Algorithm { nrpa, nrpad, gnrpa };

Algorithm parse_algorithm(std::string_view tag);
std::string_view to_string(Algorithm algorithm);

struct SearchConfig {
    int level = 3;
    int iterations = 100;
    double alpha = 1.0;
    Algorithm algorithm = Algorithm::gnrpa;
    BiasWeights bias;
    double time_budget = 1800.0;  // seconds, checked between playouts
    std::uint64_t seed = 0;
    // Stop as soon as a playout scores at or below this value.
    std::optional<double> target_scalar;

    /// Throws ConfigError when a field is out of range.
    void validate() const;

    bool uses_bias() const { return algorithm == Algorithm::gnrpa; }
};

/// One playout together with what Adapt needs to replay it: for each step
/// the codes and biases of every legal move and the index of the move that
/// was played. Steps are stored flat; offsets has one entry per step plus
/// a final sentinel.
struct PlayoutRecord {
    ScoreBreakdown score;
    std::vector<Move> sequence;
    std::vector<std::size_t> offsets{0};
    std::vector<int> codes;
    std::vector<double> betas;
    std::vector<int> chosen;

    std::size_t steps() const { return chosen.size(); }
    std::span<const int> codes_at(std::size_t step) const {
        return {codes.data() + offsets[step], offsets[step + 1] - offsets[step]};
    }
    std::span<const double> betas_at(std::size_t step) const {
        return {betas.data() + offsets[step], offsets[step + 1] - offsets[step]};
    }

    void clear();
    /// Throws ContractViolation if the parallel arrays disagree.
    void check_shape() const;
};

struct TracePoint {
    double elapsed = 0.0;  // seconds since the search started
    double best_scalar = 0.0;
};

struct SearchResult {
    ScoreBreakdown best_score;
    PlayoutRecord best_record;
    std::uint64_t playout_count = 0;
    std::vector<TracePoint> trace;
    double elapsed = 0.0;
    bool truncated = false;  // stopped by the time budget or the target
};

/// Samples one complete solution. Biases are computed only when the
/// configuration asks for them; otherwise every beta is zero.
void playout(const Policy& policy, const SearchConfig& config, const Problem& problem, Rng& rng,
             PlayoutRecord& record);
PlayoutRecord playout(const Policy& policy, const SearchConfig& config, const Problem& problem, Rng& rng);

/// Reference Adapt: probabilities come from the unmodified input policy,
/// gradients are written into a copy which is returned.
Policy adapt_naive(const Policy& policy, const PlayoutRecord& record, double alpha);

/// In-place Adapt: computes every step's odds first, then applies the
/// gradients directly to `policy`.
void adapt_optimized(Policy& policy, const PlayoutRecord& record, double alpha);

/// Nested search over one problem. Holds the clock, the random stream and
/// the global incumbent shared by every level of the recursion.
class NestedSearch {
public:
    NestedSearch(const Problem& problem, SearchConfig config);

    /// Runs `level` with a private copy of `policy` and returns the best
    /// record found. At least one playout is always performed.
    SearchResult search(int level, const Policy& policy);

    std::uint64_t playouts() const { return playouts_; }

private:
    using Clock = std::chrono::steady_clock;

    bool level_search(int level, const Policy& policy, PlayoutRecord& out);
    bool should_stop();
    double elapsed() const;

    const Problem& problem_;
    SearchConfig config_;
    Rng rng_;
    Clock::time_point start_;
    std::uint64_t playouts_ = 0;
    bool stopped_ = false;
    double best_scalar_ = std::numeric_limits<double>::infinity();
    std::vector<TracePoint> trace_;
};

/// Initial policy of each algorithm: zero weights for NRPA and GNRPA,
/// normalized negative distances for NRPAD.
Policy initial_policy(const SearchConfig& config, const Problem& problem);

/// Fresh search from the algorithm's initial policy at config.level.
SearchResult run(const SearchConfig& config, const Problem& problem);

}  // namespace gnrpa
