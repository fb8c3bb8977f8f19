#pragma once

// Small random CVRPTW instances for property tests, plus paths to the
// bundled Solomon files.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gnrpa/instance.hpp"

namespace gnrpa::testing {

inline std::filesystem::path solomon_dir() { return std::filesystem::path(GNRPA_TEST_DATA_DIR) / "solomon"; }
inline std::filesystem::path reference_dir() { return std::filesystem::path(GNRPA_TEST_DATA_DIR) / "reference"; }

inline std::vector<std::filesystem::path> solomon_files() {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(solomon_dir()))
        if (e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

inline Instance load_solomon(const std::string& name) { return load_instance(solomon_dir() / (name + ".txt")); }

/// Random instance with `customers` customers; windows, demands and fleet
/// are drawn so that some customers may be unreachable.
inline Instance random_instance(std::mt19937_64& gen, int customers) {
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };

    Instance inst;
    inst.name = "synthetic";
    inst.fleet_size = pick(1, 4);
    inst.capacity = pick(20, 80);
    const double horizon = pick(150, 600);
    inst.nodes.push_back({0, static_cast<double>(pick(0, 100)), static_cast<double>(pick(0, 100)), 0, 0, horizon, 0});
    for (int id = 1; id <= customers; ++id) {
        Node node;
        node.id = id;
        node.x = pick(0, 100);
        node.y = pick(0, 100);
        node.demand = pick(1, static_cast<int>(inst.capacity / 2));
        node.ready = std::floor(uni(0.0, horizon * 0.6));
        node.due = std::min(horizon, node.ready + pick(5, static_cast<int>(horizon / 2)));
        node.service = pick(0, 15);
        inst.nodes.push_back(node);
    }
    return inst;
}

/// Depot at the origin and two customers at distance 5 and 10 with wide
/// windows; both visiting orders are feasible and cost 20.
inline Instance two_customer_toy() {
    Instance inst;
    inst.name = "toy2";
    inst.fleet_size = 2;
    inst.capacity = 10;
    inst.nodes = {
        {0, 0, 0, 0, 0, 1000, 0},
        {1, 3, 4, 1, 0, 1000, 0},
        {2, 6, 8, 1, 0, 1000, 0},
    };
    return inst;
}

}  // namespace gnrpa::testing
