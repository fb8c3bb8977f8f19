#include "gnrpa/search.hpp"

#include <cmath>
#include <utility>

namespace gnrpa {

Algorithm parse_algorithm(std::string_view tag) {
    if (tag == "nrpa") return Algorithm::nrpa;
    if (tag == "nrpad") return Algorithm::nrpad;
    if (tag == "gnrpa") return Algorithm::gnrpa;
    throw ConfigError("unknown algorithm '" + std::string(tag) + "' (expected nrpa, nrpad or gnrpa)");
}

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::nrpa: return "nrpa";
        case Algorithm::nrpad: return "nrpad";
        case Algorithm::gnrpa: return "gnrpa";
    }
    return "?";
}

void SearchConfig::validate() const {
    if (level < 0) throw ConfigError("level must be >= 0");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
    if (!(time_budget > 0.0)) throw ConfigError("time budget must be positive");
    for (double w : {bias.distance, bias.waiting, bias.lateness})
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("bias weights must be finite and nonnegative");
}

void PlayoutRecord::clear() {
    score = {};
    sequence.clear();
    offsets.assign(1, 0);
    codes.clear();
    betas.clear();
    chosen.clear();
}

void PlayoutRecord::check_shape() const {
    const std::size_t n = chosen.size();
    if (sequence.size() != n || offsets.size() != n + 1 || offsets.front() != 0 || offsets.back() != codes.size() ||
        betas.size() != codes.size())
        throw ContractViolation("playout record arrays have mismatched lengths");
    for (std::size_t i = 0; i < n; ++i) {
        if (offsets[i + 1] <= offsets[i]) throw ContractViolation("playout record has a step without moves");
        const auto step = codes_at(i);
        if (chosen[i] < 0 || static_cast<std::size_t>(chosen[i]) >= step.size())
            throw ContractViolation("chosen index out of range at step " + std::to_string(i));
        if (step[chosen[i]] != sequence[i].code)
            throw ContractViolation("chosen code does not match the sequence at step " + std::to_string(i));
    }
}

void playout(const Policy& policy, const SearchConfig& config, const Problem& problem, Rng& rng,
             PlayoutRecord& record) {
    thread_local std::vector<Move> moves;
    thread_local std::vector<double> logits;
    thread_local std::vector<double> odds;

    record.clear();
    const bool biased = config.uses_bias();
    const double tau = policy.tau();
    RouteState state = initial_state(problem);
    for (;;) {
        legal_moves(state, problem, moves);
        if (moves.empty()) break;
        logits.resize(moves.size());
        odds.resize(moves.size());
        for (std::size_t k = 0; k < moves.size(); ++k) {
            const Move& m = moves[k];
            const double beta = biased ? beta_total(m.from, m.to, state.clock(), config.bias, problem) : 0.0;
            logits[k] = policy[m.code] / tau + beta;
            record.codes.push_back(m.code);
            record.betas.push_back(beta);
        }
        const double z = softmax_odds(logits, odds);
        const std::size_t pick = sample_index(odds, z, rng);
        record.chosen.push_back(static_cast<int>(pick));
        record.sequence.push_back(moves[pick]);
        record.offsets.push_back(record.codes.size());
        apply_move(state, moves[pick], problem);
    }
    record.score = score(state, problem);
}

PlayoutRecord playout(const Policy& policy, const SearchConfig& config, const Problem& problem, Rng& rng) {
    PlayoutRecord record;
    playout(policy, config, problem, rng, record);
    return record;
}

namespace {

// Odds of one step under `policy`, written to `odds`; returns z.
double step_odds(const Policy& policy, std::span<const int> codes, std::span<const double> betas,
                 std::span<double> odds, std::vector<double>& logits) {
    logits.resize(codes.size());
    for (std::size_t m = 0; m < codes.size(); ++m) logits[m] = policy[codes[m]] / policy.tau() + betas[m];
    return softmax_odds(logits, odds);
}

}  // namespace

Policy adapt_naive(const Policy& policy, const PlayoutRecord& record, double alpha) {
    record.check_shape();
    Policy polp = policy;
    const double rate = alpha / policy.tau();
    std::vector<double> logits;
    std::vector<double> odds;
    for (std::size_t i = 0; i < record.steps(); ++i) {
        const auto codes = record.codes_at(i);
        odds.resize(codes.size());
        const double z = step_odds(policy, codes, record.betas_at(i), odds, logits);
        for (std::size_t m = 0; m < codes.size(); ++m) {
            const double delta = static_cast<int>(m) == record.chosen[i] ? 1.0 : 0.0;
            polp[codes[m]] -= rate * (odds[m] / z - delta);
        }
    }
    return polp;
}

void adapt_optimized(Policy& policy, const PlayoutRecord& record, double alpha) {
    record.check_shape();
    thread_local std::vector<double> odds;
    thread_local std::vector<double> z;
    thread_local std::vector<double> logits;
    const std::size_t steps = record.steps();
    odds.resize(record.codes.size());
    z.resize(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const auto span = std::span<double>(odds).subspan(record.offsets[i], record.offsets[i + 1] - record.offsets[i]);
        z[i] = step_odds(policy, record.codes_at(i), record.betas_at(i), span, logits);
    }
    const double rate = alpha / policy.tau();
    for (std::size_t i = 0; i < steps; ++i) {
        const auto codes = record.codes_at(i);
        const std::size_t base = record.offsets[i];
        for (std::size_t m = 0; m < codes.size(); ++m) {
            const double delta = static_cast<int>(m) == record.chosen[i] ? 1.0 : 0.0;
            policy[codes[m]] -= rate * (odds[base + m] / z[i] - delta);
        }
    }
}

NestedSearch::NestedSearch(const Problem& problem, SearchConfig config)
    : problem_(problem), config_(std::move(config)), rng_(config_.seed), start_(Clock::now()) {
    config_.validate();
}

double NestedSearch::elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

bool NestedSearch::should_stop() {
    if (!stopped_ && playouts_ > 0 && elapsed() > config_.time_budget) stopped_ = true;
    return stopped_;
}

bool NestedSearch::level_search(int level, const Policy& policy, PlayoutRecord& out) {
    if (level == 0) {
        if (should_stop()) return false;
        playout(policy, config_, problem_, rng_, out);
        ++playouts_;
        if (out.score.scalar < best_scalar_) {
            best_scalar_ = out.score.scalar;
            trace_.push_back({elapsed(), best_scalar_});
            if (config_.target_scalar && best_scalar_ <= *config_.target_scalar) stopped_ = true;
        }
        return true;
    }

    Policy local = policy;
    PlayoutRecord best;
    PlayoutRecord candidate;
    bool have_best = false;
    for (int it = 0; it < config_.iterations; ++it) {
        if (!level_search(level - 1, local, candidate)) break;
        // Minimization; ties replace the incumbent.
        if (!have_best || candidate.score.scalar <= best.score.scalar) {
            std::swap(best, candidate);
            have_best = true;
        }
        if (should_stop()) break;
        adapt_optimized(local, best, config_.alpha);
    }
    if (have_best) std::swap(out, best);
    return have_best;
}

SearchResult NestedSearch::search(int level, const Policy& policy) {
    if (level < 0) throw ConfigError("level must be >= 0");
    start_ = Clock::now();
    playouts_ = 0;
    stopped_ = false;
    best_scalar_ = std::numeric_limits<double>::infinity();
    trace_.clear();

    SearchResult result;
    level_search(level, policy, result.best_record);
    result.best_score = result.best_record.score;
    result.playout_count = playouts_;
    result.trace = trace_;
    result.elapsed = elapsed();
    result.truncated = stopped_;
    return result;
}

Policy initial_policy(const SearchConfig& config, const Problem& problem) {
    switch (config.algorithm) {
        case Algorithm::nrpa:
        case Algorithm::gnrpa: return init_uniform(problem.size());
        case Algorithm::nrpad: return init_distance(problem.geometry);
    }
    throw ConfigError("unknown algorithm");
}

SearchResult run(const SearchConfig& config, const Problem& problem) {
    config.validate();
    NestedSearch search(problem, config);
    return search.search(config.level, initial_policy(config, problem));
}

}  // namespace gnrpa
