#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gnrpa/instance.hpp"
#include "gnrpa/routing.hpp"

namespace gnrpa {

/// Deterministic generator for playouts. The engine is mt19937_64, whose
/// output sequence is fixed by the standard; doubles are built from the top
/// 53 bits so results do not depend on the library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Checked version of move_code: throws ContractViolation for indices
/// outside [0, n).
int code_move(int from, int to, int n);

/// Dense table of move weights indexed by move code, with temperature tau.
class Policy {
public:
    Policy() = default;
    explicit Policy(int n, double tau = 1.0);

    int node_count() const { return n_; }
    std::size_t size() const { return weights_.size(); }
    double tau() const { return tau_; }

    double operator[](int code) const { return weights_[static_cast<std::size_t>(code)]; }
    double& operator[](int code) { return weights_[static_cast<std::size_t>(code)]; }

    std::span<const double> weights() const { return weights_; }
    std::span<double> weights() { return weights_; }

    bool operator==(const Policy&) const = default;

private:
    int n_ = 0;
    double tau_ = 1.0;
    std::vector<double> weights_;
};

/// All weights zero, tau = 1.
Policy init_uniform(int n);

/// weight(i -> j) = -dist(i, j) / max_dist, diagonal zero, tau = 1.
Policy init_distance(const Geometry& geom);

/// Exponentiates `logits` into `odds` after subtracting their maximum and
/// returns the normalizer. Probabilities are odds[k] / z.
double softmax_odds(std::span<const double> logits, std::span<double> odds);

/// Index k drawn with probability odds[k] / z.
std::size_t sample_index(std::span<const double> odds, double z, Rng& rng);

struct MoveDistribution {
    std::vector<Move> moves;
    std::vector<double> odds;
    std::vector<double> probs;
    double z = 0.0;
};

/// Gibbs distribution over `moves`: odds proportional to
/// exp(weight / tau + beta).
MoveDistribution move_distribution(const Policy& policy, std::span<const Move> moves,
                                   std::span<const double> betas);

std::size_t sample_move(const MoveDistribution& dist, Rng& rng);

}  // namespace gnrpa
