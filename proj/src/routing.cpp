#include "gnrpa/routing.hpp"

#include <algorithm>
#include <sstream>

namespace gnrpa {

ScoreBreakdown make_score(int unvisited, int n_vehicles, double distance) {
    return {unvisited, n_vehicles, distance, unvisited * 1e6 + n_vehicles * 1e3 + distance};
}

RouteState initial_state(const Problem& problem) {
    const auto& inst = problem.instance;
    RouteState s;
    s.visited_.assign(inst.size(), 0);
    s.unvisited_.reserve(inst.customer_count());
    for (int c = 1; c < inst.size(); ++c) s.unvisited_.push_back(c);
    s.clock_ = inst.depot().ready;
    return s;
}

bool customer_feasible(const RouteState& state, int customer, const Problem& problem) {
    const auto& inst = problem.instance;
    const auto& geom = problem.geometry;
    const Node& node = inst.nodes[customer];
    if (state.load() + node.demand > inst.capacity) return false;
    const double arrival = state.clock() + geom(state.position(), customer);
    if (arrival > node.due) return false;
    const double back = std::max(arrival, node.ready) + node.service + geom(customer, 0);
    return back <= inst.depot().due;
}

void legal_moves(const RouteState& state, const Problem& problem, std::vector<Move>& out) {
    out.clear();
    const int n = problem.size();
    const int from = state.position();
    for (int c : state.unvisited()) {
        if (customer_feasible(state, c, problem)) out.push_back({from, c, move_code(from, c, n)});
    }
    if (!out.empty() || state.unvisited().empty()) return;
    // A fresh vehicle at the depot that reaches nobody means every other
    // vehicle would fail the same way.
    if (from != 0 && state.vehicle_index() + 1 < problem.instance.fleet_size)
        out.push_back({from, 0, move_code(from, 0, n)});
}

std::vector<Move> legal_moves(const RouteState& state, const Problem& problem) {
    std::vector<Move> out;
    legal_moves(state, problem, out);
    return out;
}

bool is_terminal(const RouteState& state, const Problem& problem) {
    if (state.unvisited().empty()) return true;
    for (int c : state.unvisited())
        if (customer_feasible(state, c, problem)) return false;
    return state.position() == 0 || state.vehicle_index() + 1 >= problem.instance.fleet_size;
}

void apply_move(RouteState& s, const Move& move, const Problem& problem) {
    const auto& inst = problem.instance;
    const double d = problem.geometry(move.from, move.to);
    s.total_distance_ += d;
    if (move.to == 0) {
        s.tours_.emplace_back();
        Tour& tour = s.tours_.back();
        tour.reserve(s.current_.size() + 2);
        tour.push_back(0);
        tour.insert(tour.end(), s.current_.begin(), s.current_.end());
        tour.push_back(0);
        s.current_.clear();
        ++s.vehicle_idx_;
        s.position_ = 0;
        s.clock_ = inst.depot().ready;
        s.load_ = 0.0;
        return;
    }
    const Node& node = inst.nodes[move.to];
    if (s.current_.empty()) ++s.vehicles_used_;
    s.current_.push_back(move.to);
    s.visited_[move.to] = 1;
    auto it = std::find(s.unvisited_.begin(), s.unvisited_.end(), move.to);
    *it = s.unvisited_.back();
    s.unvisited_.pop_back();
    s.clock_ = std::max(s.clock_ + d, node.ready) + node.service;
    s.load_ += node.demand;
    s.position_ = move.to;
}

void play(RouteState& state, const Move& move, const Problem& problem) {
    const auto moves = legal_moves(state, problem);
    if (moves.empty()) throw ContractViolation("play called on a terminal state");
    if (std::find(moves.begin(), moves.end(), move) == moves.end()) {
        std::ostringstream msg;
        msg << "illegal move " << move.from << " -> " << move.to;
        throw ContractViolation(msg.str());
    }
    apply_move(state, move, problem);
}

ScoreBreakdown score(const RouteState& state, const Problem& problem) {
    if (!is_terminal(state, problem)) throw ContractViolation("score requires a terminal state");
    double distance = state.total_distance();
    if (state.position() != 0) distance += problem.geometry(state.position(), 0);
    return make_score(static_cast<int>(state.unvisited().size()), state.vehicles_used(), distance);
}

std::vector<Tour> solution_tours(const RouteState& state) {
    std::vector<Tour> tours;
    for (const auto& t : state.completed_tours())
        if (t.size() > 2) tours.push_back(t);
    if (!state.current_tour().empty()) {
        Tour t{0};
        t.insert(t.end(), state.current_tour().begin(), state.current_tour().end());
        t.push_back(0);
        tours.push_back(std::move(t));
    }
    return tours;
}

RouteState replay(const std::vector<Move>& sequence, const Problem& problem) {
    RouteState state = initial_state(problem);
    for (const auto& m : sequence) play(state, m, problem);
    return state;
}

ValidationReport validate_solution(const Problem& problem, const std::vector<Tour>& tours) {
    const auto& inst = problem.instance;
    const auto& dist = problem.geometry;
    const Node& depot = inst.depot();
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.ok = false;
        report.violations.push_back(std::move(msg));
    };

    std::vector<int> seen(inst.size(), 0);
    double distance = 0.0;
    int used = 0;
    for (std::size_t t = 0; t < tours.size(); ++t) {
        const std::string label = "tour " + std::to_string(t);
        std::vector<int> route(tours[t].begin(), tours[t].end());
        if (!route.empty() && route.front() == 0) route.erase(route.begin());
        if (!route.empty() && route.back() == 0) route.pop_back();
        if (route.empty()) {
            fail(label + " serves no customer");
            continue;
        }
        ++used;
        int prev = 0;
        double time = depot.ready;
        double load = 0.0;
        bool broken = false;
        for (int c : route) {
            if (c <= 0 || c >= inst.size()) {
                fail(label + " has invalid node id " + std::to_string(c));
                broken = true;
                break;
            }
            if (seen[c]++) fail("customer " + std::to_string(c) + " visited more than once");
            const Node& node = inst.nodes[c];
            const double arrival = time + dist(prev, c);
            distance += dist(prev, c);
            if (arrival > node.due)
                fail(label + " reaches customer " + std::to_string(c) + " after its due date");
            time = std::max(arrival, node.ready) + node.service;
            load += node.demand;
            prev = c;
        }
        if (broken) continue;
        distance += dist(prev, 0);
        if (time + dist(prev, 0) > depot.due) fail(label + " returns to the depot after it closes");
        if (load > inst.capacity) fail(label + " exceeds vehicle capacity");
    }
    if (used > inst.fleet_size)
        fail("uses " + std::to_string(used) + " vehicles, fleet has " + std::to_string(inst.fleet_size));

    int unvisited = 0;
    for (int c = 1; c < inst.size(); ++c)
        if (!seen[c]) ++unvisited;
    report.score = make_score(unvisited, used, distance);
    return report;
}

}  // namespace gnrpa
