#include "gnrpa/instance.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace gnrpa {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

bool to_double(std::string_view tok, double& value) {
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    return ec == std::errc{} && ptr == end && std::isfinite(value);
}

bool is_numeric_row(const std::vector<std::string_view>& toks) {
    double v;
    return !toks.empty() && std::all_of(toks.begin(), toks.end(), [&](auto t) { return to_double(t, v); });
}

bool is_integral(double v) { return v == std::floor(v); }

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-blank line; false at end of stream.
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (!trim(line).empty()) return true;
        }
        return false;
    }

    int number() const { return number_; }

private:
    std::istream& in_;
    int number_ = 0;
};

void format_number(std::ostream& out, double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.write(buf.data(), ptr - buf.data());
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Instance parse_instance(std::istream& in) {
    LineReader reader(in);
    std::string line;
    Instance inst;

    if (!reader.next(line)) throw ParseError(reader.number(), "empty input, expected instance name");
    inst.name = std::string(trim(line));

    if (!reader.next(line) || upper(trim(line)) != "VEHICLE")
        throw ParseError(reader.number(), "expected VEHICLE section header");

    // Optional "NUMBER CAPACITY" caption, then the two values.
    if (!reader.next(line)) throw ParseError(reader.number(), "missing vehicle data");
    auto toks = split_ws(line);
    if (!is_numeric_row(toks)) {
        if (!reader.next(line)) throw ParseError(reader.number(), "missing vehicle data");
        toks = split_ws(line);
    }
    double fleet = 0.0;
    double capacity = 0.0;
    if (toks.size() != 2 || !to_double(toks[0], fleet) || !to_double(toks[1], capacity))
        throw ParseError(reader.number(), "expected vehicle count and capacity");
    if (fleet < 1 || !is_integral(fleet) || fleet > std::numeric_limits<int>::max())
        throw ParseError(reader.number(), "vehicle count must be a positive integer");
    if (capacity <= 0) throw ParseError(reader.number(), "capacity must be positive");
    inst.fleet_size = static_cast<int>(fleet);
    inst.capacity = capacity;

    if (!reader.next(line) || upper(trim(line)) != "CUSTOMER")
        throw ParseError(reader.number(), "expected CUSTOMER section header");

    bool in_table = false;
    while (reader.next(line)) {
        toks = split_ws(line);
        if (!is_numeric_row(toks)) {
            // Column captions are only allowed before the first data row.
            if (in_table) throw ParseError(reader.number(), "non-numeric field in customer table");
            continue;
        }
        in_table = true;
        if (toks.size() != 7)
            throw ParseError(reader.number(), "expected 7 fields, found " + std::to_string(toks.size()));
        std::array<double, 7> f{};
        for (std::size_t k = 0; k < 7; ++k) to_double(toks[k], f[k]);

        if (!is_integral(f[0]) || f[0] < 0) throw ParseError(reader.number(), "customer id must be a nonnegative integer");
        const int id = static_cast<int>(f[0]);
        if (id < inst.size()) throw ParseError(reader.number(), "duplicate customer id " + std::to_string(id));
        if (id != inst.size())
            throw ParseError(reader.number(), "customer ids must be contiguous from 0, got " + std::to_string(id));

        Node node{id, f[1], f[2], f[3], f[4], f[5], f[6]};
        if (node.demand < 0 || node.service < 0)
            throw ParseError(reader.number(), "negative demand or service time");
        if (node.ready > node.due) throw ParseError(reader.number(), "due date precedes ready time");
        if (id == 0 && (node.demand != 0 || node.service != 0))
            throw ParseError(reader.number(), "depot must have zero demand and service time");
        if (node.demand > inst.capacity) throw ParseError(reader.number(), "demand exceeds vehicle capacity");
        inst.nodes.push_back(node);
    }

    if (inst.nodes.empty()) throw ParseError(reader.number(), "empty customer table");
    if (inst.size() < 2) throw ParseError(reader.number(), "instance needs at least one customer");
    return inst;
}

Instance parse_instance_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    try {
        return parse_instance(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void write_instance(std::ostream& out, const Instance& inst) {
    out << inst.name << "\n\nVEHICLE\nNUMBER     CAPACITY\n  " << inst.fleet_size << "         ";
    format_number(out, inst.capacity);
    out << "\n\nCUSTOMER\nCUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME\n\n";
    for (const auto& node : inst.nodes) {
        out << "    " << node.id;
        for (double v : {node.x, node.y, node.demand, node.ready, node.due, node.service}) {
            out << "   ";
            format_number(out, v);
        }
        out << '\n';
    }
}

Geometry build_geometry(const Instance& inst) {
    Geometry g;
    g.n = inst.size();
    g.dist.assign(static_cast<std::size_t>(g.n) * g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            const double dx = inst.nodes[i].x - inst.nodes[j].x;
            const double dy = inst.nodes[i].y - inst.nodes[j].y;
            const double d = std::sqrt(dx * dx + dy * dy);
            g.dist[static_cast<std::size_t>(i) * g.n + j] = d;
            g.dist[static_cast<std::size_t>(j) * g.n + i] = d;
            g.max_dist = std::max(g.max_dist, d);
        }
    }
    g.ftw = std::numeric_limits<double>::infinity();
    for (const auto& node : inst.nodes) {
        g.biggest_tw = std::max(g.biggest_tw, node.due - node.ready);
        if (node.id != 0) g.ftw = std::min(g.ftw, node.ready);
    }
    if (!(g.max_dist > 0.0)) throw std::invalid_argument("instance " + inst.name + ": all nodes coincide");
    if (!(g.biggest_tw > 0.0)) throw std::invalid_argument("instance " + inst.name + ": every time window is empty");
    return g;
}

Problem::Problem(Instance inst) : instance(std::move(inst)), geometry(build_geometry(instance)) {}

}  // namespace gnrpa
