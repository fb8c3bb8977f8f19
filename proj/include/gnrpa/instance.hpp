#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gnrpa {

/// One row of a Solomon customer table. Node 0 is the depot.
struct Node {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double demand = 0.0;
    double ready = 0.0;    // earliest service start
    double due = 0.0;      // latest arrival
    double service = 0.0;  // service duration

    bool operator==(const Node&) const = default;
};

struct Instance {
    std::string name;
    int fleet_size = 0;
    double capacity = 0.0;
    std::vector<Node> nodes;  // depot first, then customers in id order

    int size() const { return static_cast<int>(nodes.size()); }
    int customer_count() const { return size() - 1; }
    const Node& depot() const { return nodes.front(); }

    bool operator==(const Instance&) const = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Parses the plain-text Solomon layout: a name line, a VEHICLE section
/// (number, capacity) and a CUSTOMER table with seven numeric columns.
/// Throws ParseError naming the offending line.
Instance parse_instance(std::istream& in);
Instance parse_instance_text(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

/// Writes the instance back in Solomon layout. Numbers use the shortest
/// representation that parses back to the same double.
void write_instance(std::ostream& out, const Instance& inst);

/// Pairwise distances and the normalizers used by the dynamic bias.
/// Travel time equals distance.
struct Geometry {
    int n = 0;
    std::vector<double> dist;  // row-major n x n
    double max_dist = 0.0;
    double biggest_tw = 0.0;  // max over all nodes (depot included) of due - ready
    double ftw = 0.0;         // min over customers of ready

    double operator()(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
};

Geometry build_geometry(const Instance& inst);

/// Instance plus its geometry; immutable once built and safe to share
/// between concurrently running searches.
struct Problem {
    Instance instance;
    Geometry geometry;

    explicit Problem(Instance inst);

    int size() const { return instance.size(); }
};

}  // namespace gnrpa
