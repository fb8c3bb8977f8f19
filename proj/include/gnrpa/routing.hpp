#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gnrpa/instance.hpp"

namespace gnrpa {

/// Raised when an operation is called outside its contract (illegal move,
/// scoring a non-terminal state, malformed playout record, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Policy key of an arc: departure + n * arrival. The vehicle does not
/// take part in the code.
inline int move_code(int from, int to, int n) { return from + n * to; }

struct Move {
    int from = 0;
    int to = 0;
    int code = 0;

    bool is_depot_return() const { return to == 0; }
    bool operator==(const Move&) const = default;
};

using Tour = std::vector<int>;  // node ids, depot at both ends

struct ScoreBreakdown {
    int unvisited = 0;
    int n_vehicles = 0;
    double distance = 0.0;
    double scalar = 0.0;

    bool operator==(const ScoreBreakdown&) const = default;
};

ScoreBreakdown make_score(int unvisited, int n_vehicles, double distance);

/// (unvisited, vehicles, distance): the reporting order.
inline std::tuple<int, int, double> lexicographic_key(const ScoreBreakdown& sb) {
    return {sb.unvisited, sb.n_vehicles, sb.distance};
}

inline bool lexicographically_better(const ScoreBreakdown& a, const ScoreBreakdown& b) {
    return lexicographic_key(a) < lexicographic_key(b);
}

/// Forward simulation state of one playout. Vehicles are dispatched one
/// after the other; the active vehicle leaves the depot, serves customers
/// and is sent back only when it cannot serve anyone else.
class RouteState {
public:
    RouteState() = default;

    bool visited(int node) const { return visited_[node] != 0; }
    const std::vector<int>& unvisited() const { return unvisited_; }
    int vehicle_index() const { return vehicle_idx_; }
    int position() const { return position_; }
    double clock() const { return clock_; }
    double load() const { return load_; }
    double total_distance() const { return total_distance_; }
    int vehicles_used() const { return vehicles_used_; }
    const std::vector<Tour>& completed_tours() const { return tours_; }
    const std::vector<int>& current_tour() const { return current_; }

    bool operator==(const RouteState&) const = default;

private:
    friend RouteState initial_state(const Problem& problem);
    friend void apply_move(RouteState& state, const Move& move, const Problem& problem);

    std::vector<std::uint8_t> visited_;
    std::vector<int> unvisited_;  // customers not yet served, unordered
    int vehicle_idx_ = 0;
    int position_ = 0;
    double clock_ = 0.0;  // instant the active vehicle is ready to leave position_
    double load_ = 0.0;
    double total_distance_ = 0.0;
    int vehicles_used_ = 0;
    std::vector<Tour> tours_;
    std::vector<int> current_;  // customers served by the active vehicle
};

RouteState initial_state(const Problem& problem);

/// Customer j is reachable from the active vehicle when it fits in the
/// remaining capacity, the arrival is not after its due date, and the
/// vehicle can still get back to the depot before the depot closes.
bool customer_feasible(const RouteState& state, int customer, const Problem& problem);

/// Fills `out` with the legal moves of `state`: every feasible customer,
/// or else the single forced depot return when another vehicle is left.
/// Empty iff the state is terminal.
void legal_moves(const RouteState& state, const Problem& problem, std::vector<Move>& out);
std::vector<Move> legal_moves(const RouteState& state, const Problem& problem);

bool is_terminal(const RouteState& state, const Problem& problem);

/// Transition without a legality check (caller got `move` from legal_moves).
void apply_move(RouteState& state, const Move& move, const Problem& problem);

/// Checked transition; throws ContractViolation for an illegal move.
void play(RouteState& state, const Move& move, const Problem& problem);

/// Requires a terminal state. The open tour of the last vehicle is closed
/// by adding its return leg.
ScoreBreakdown score(const RouteState& state, const Problem& problem);

/// Completed tours plus the active one, all closed at the depot.
std::vector<Tour> solution_tours(const RouteState& state);

/// Rebuilds the state reached by playing `sequence` from the initial state,
/// checking every move.
RouteState replay(const std::vector<Move>& sequence, const Problem& problem);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    ScoreBreakdown score;
};

/// Independent feasibility check of a tour set. Tours may omit the depot
/// endpoints. The score is accumulated leg by leg in tour order, so it
/// matches the search's own bookkeeping exactly.
ValidationReport validate_solution(const Problem& problem, const std::vector<Tour>& tours);

}  // namespace gnrpa
