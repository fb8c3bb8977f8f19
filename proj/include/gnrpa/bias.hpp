#pragma once

#include <algorithm>

#include "gnrpa/instance.hpp"
#include "gnrpa/routing.hpp"

namespace gnrpa {

/// Multipliers of the three bias terms. Defaults are the tuned values
/// used for the Solomon runs.
struct BiasWeights {
    double distance = 15.0;
    double waiting = 75.0;
    double lateness = 10.0;

    bool operator==(const BiasWeights&) const = default;
};

// The terms below are <= 0 on legal moves; vt is the instant the vehicle
// is ready to leave node i.

/// Penalizes long arcs, in [-1, 0].
inline double beta_distance(int i, int j, const Geometry& geom) { return -geom(i, j) / geom.max_dist; }

/// Idle time spent waiting for j's window to open. Leaving the depot, time
/// before the earliest window of the instance is not counted.
inline double beta_waiting(int i, int j, double vt, const Instance& inst, const Geometry& geom) {
    const double arrival = vt + geom(i, j);
    const double ready = inst.nodes[j].ready;
    if (arrival > ready) return 0.0;
    if (i != 0) return -(ready - arrival) / geom.biggest_tw;
    return -(ready - std::max(geom.ftw, arrival)) / geom.biggest_tw;
}

/// Slack between the service start at j and j's due date.
inline double beta_lateness(int i, int j, double vt, const Instance& inst, const Geometry& geom) {
    const Node& node = inst.nodes[j];
    return -(node.due - std::max(vt + geom(i, j), node.ready)) / geom.biggest_tw;
}

inline double beta_total(int i, int j, double vt, const BiasWeights& w, const Problem& problem) {
    if (j == 0) return 0.0;  // forced depot return
    const auto& inst = problem.instance;
    const auto& geom = problem.geometry;
    return w.distance * beta_distance(i, j, geom) + w.waiting * beta_waiting(i, j, vt, inst, geom) +
           w.lateness * beta_lateness(i, j, vt, inst, geom);
}

/// Bias of `move` played from `state`.
inline double beta_total(const Move& move, const RouteState& state, const BiasWeights& w, const Problem& problem) {
    return beta_total(move.from, move.to, state.clock(), w, problem);
}

}  // namespace gnrpa
