#include "gnrpa/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gnrpa {

int code_move(int from, int to, int n) {
    if (n < 1 || from < 0 || to < 0 || from >= n || to >= n)
        throw ContractViolation("move (" + std::to_string(from) + ", " + std::to_string(to) +
                                ") out of range for n = " + std::to_string(n));
    return move_code(from, to, n);
}

Policy::Policy(int n, double tau)
    : n_(n), tau_(tau), weights_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {
    if (n < 1) throw ContractViolation("policy needs at least one node");
    if (!(tau > 0.0)) throw ContractViolation("temperature must be positive");
}

Policy init_uniform(int n) {
    if (n < 2) throw ContractViolation("policy needs at least two nodes");
    return Policy(n);
}

Policy init_distance(const Geometry& geom) {
    Policy policy = init_uniform(geom.n);
    for (int i = 0; i < geom.n; ++i)
        for (int j = 0; j < geom.n; ++j)
            if (i != j) policy[move_code(i, j, geom.n)] = -geom(i, j) / geom.max_dist;
    return policy;
}

double softmax_odds(std::span<const double> logits, std::span<double> odds) {
    const double top = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (std::size_t k = 0; k < logits.size(); ++k) {
        odds[k] = std::exp(logits[k] - top);
        z += odds[k];
    }
    return z;
}

std::size_t sample_index(std::span<const double> odds, double z, Rng& rng) {
    const double target = rng.uniform() * z;
    double acc = 0.0;
    for (std::size_t k = 0; k < odds.size(); ++k) {
        acc += odds[k];
        if (target < acc) return k;
    }
    // Rounding can leave target just above the running sum.
    return odds.size() - 1;
}

MoveDistribution move_distribution(const Policy& policy, std::span<const Move> moves,
                                   std::span<const double> betas) {
    if (moves.empty()) throw ContractViolation("move distribution over an empty move list");
    if (betas.size() != moves.size()) throw ContractViolation("one bias per move is required");
    MoveDistribution d;
    d.moves.assign(moves.begin(), moves.end());
    std::vector<double> logits(moves.size());
    for (std::size_t k = 0; k < moves.size(); ++k) logits[k] = policy[moves[k].code] / policy.tau() + betas[k];
    d.odds.resize(moves.size());
    d.z = softmax_odds(logits, d.odds);
    d.probs.resize(moves.size());
    for (std::size_t k = 0; k < moves.size(); ++k) d.probs[k] = d.odds[k] / d.z;
    return d;
}

std::size_t sample_move(const MoveDistribution& dist, Rng& rng) { return sample_index(dist.odds, dist.z, rng); }

}  // namespace gnrpa
