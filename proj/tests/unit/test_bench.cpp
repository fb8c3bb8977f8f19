#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gnrpa/bench.hpp"
#include "support/synthetic.hpp"

using namespace gnrpa;

namespace {

std::vector<ReferenceRow> reference_table() {
    std::ifstream in(testing::reference_dir() / "table1.csv");
    REQUIRE(in);
    return read_reference_csv(in);
}

ResultRow row(std::string name, int nv, double km, std::uint64_t seed = 0, int unvisited = 0) {
    const auto s = make_score(unvisited, nv, km);
    return {std::move(name), unvisited, nv, km, s.scalar, seed, 0.0};
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("gnrpa_" + tag + "_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("instance classes and reporting order") {
    CHECK(solomon_instance_names().size() == 56);
    CHECK(instance_class("c101") == "C1");
    CHECK(instance_class("C208") == "C2");
    CHECK(instance_class("r112") == "R1");
    CHECK(instance_class("r211") == "R2");
    CHECK(instance_class("RC105") == "RC1");
    CHECK(instance_class("rc208") == "RC2");
    CHECK(instance_class("r212").empty());
    CHECK(instance_class("toy2").empty());

    const std::pair<const char*, std::size_t> sizes[] = {{"C1", 9}, {"C2", 8}, {"R1", 12},
                                                         {"R2", 11}, {"RC1", 8}, {"RC2", 8}};
    for (auto [tag, n] : sizes) CHECK(class_members(tag).size() == n);

    std::vector<ResultRow> rows{row("RC201", 4, 1), row("c201", 3, 1), row("toy", 1, 1), row("R101", 19, 1),
                                row("C101", 10, 1)};
    sort_reporting_order(rows);
    std::vector<std::string> order;
    for (const auto& r : rows) order.push_back(r.instance);
    CHECK(order == std::vector<std::string>{"C101", "c201", "R101", "RC201", "toy"});
}

TEST_CASE("best of seeds uses the lexicographic key") {
    const std::vector<ResultRow> rows{
        row("C101", 10, 900.0, 0), row("C101", 9, 1500.0, 1), row("C101", 9, 1500.0, 2),
        row("R101", 19, 1650.0, 3, 1), row("R101", 20, 1700.0, 4),
    };
    const auto best = best_of_seeds(rows);
    REQUIRE(best.size() == 2);
    CHECK(best[0].instance == "C101");
    CHECK(best[0].nv == 9);
    CHECK(best[0].seed == 1);  // tie goes to the lower seed
    CHECK(best[1].instance == "R101");
    CHECK(best[1].unvisited == 0);
    CHECK(best[1].seed == 4);
}

TEST_CASE("reference table") {
    const auto table = reference_table();
    REQUIRE(table.size() == 56);
    CHECK(table.front().instance == "c101");
    CHECK(table.front().gnrpa.nv == 10);
    CHECK(table.front().gnrpa.km == 828.94);
    for (std::size_t k = 0; k < table.size(); ++k) CHECK(table[k].instance == solomon_instance_names()[k]);
}

TEST_CASE("class means of the published per-instance rows") {
    std::vector<ResultRow> gnrpa_rows;
    for (const auto& r : reference_table()) gnrpa_rows.push_back(row(r.instance, r.gnrpa.nv, r.gnrpa.km));
    CHECK(class_summary(gnrpa_rows, "C1") == doctest::Approx(97506.1 / 9).epsilon(1e-12));
    CHECK(class_summary(gnrpa_rows, "C1") == doctest::Approx(10834.011111).epsilon(1e-9));
    CHECK(class_summary(gnrpa_rows, "C2") == doctest::Approx(3598.39).epsilon(1e-9));
}

TEST_CASE("class summary on synthetic rows") {
    std::vector<ResultRow> rows;
    for (const auto& name : class_members("C2")) rows.push_back(row(name, 3, 600.0));
    CHECK(class_summary(rows, "C2") == 3600.0);

    SUBCASE("missing instances are named") {
        rows.erase(rows.begin() + 2);
        try {
            class_summary(rows, "C2");
            FAIL("expected an error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("c203") != std::string::npos);
        }
    }
    SUBCASE("unknown class") { CHECK_THROWS(class_summary(rows, "X9")); }
    SUBCASE("best seed counts") {
        rows.push_back(row("c201", 3, 100.0, 7));
        CHECK(class_summary(rows, "C2") == doctest::Approx(3600.0 - 500.0 / 8).epsilon(1e-15));
    }
}

TEST_CASE("rows csv round trip") {
    const std::vector<ResultRow> rows{row("C101", 10, 828.9368669428338, 3), row("R205", 3, 1 / 3.0, 9, 2)};
    std::stringstream buf;
    write_rows_csv(buf, rows);
    const auto back = read_rows_csv(buf);
    REQUIRE(back.size() == rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(back[k].instance == rows[k].instance);
        CHECK(back[k].unvisited == rows[k].unvisited);
        CHECK(back[k].nv == rows[k].nv);
        CHECK(back[k].km == rows[k].km);
        CHECK(back[k].scalar == rows[k].scalar);
        CHECK(back[k].seed == rows[k].seed);
    }
    std::stringstream bad("instance,unvisited,nv,km,scalar,seed,elapsed\nC101,0,10\n");
    CHECK_THROWS(read_rows_csv(bad));
}

TEST_CASE("trace csv has one row per improvement") {
    const Problem p(testing::load_solomon("r102"));
    SearchConfig c;
    c.level = 1;
    c.iterations = 30;
    const auto r = run(c, p);
    std::stringstream out;
    write_trace(out, r);
    std::string line;
    std::getline(out, line);
    CHECK(line == "elapsed_seconds,best_scalar");
    std::size_t n = 0;
    while (std::getline(out, line)) ++n;
    CHECK(n == r.trace.size());
}

TEST_CASE("solution json round trip and validation") {
    const Problem p(testing::load_solomon("c105"));
    SearchConfig c;
    c.level = 1;
    c.iterations = 10;
    c.seed = 5;
    const RunOutcome run = solve_instance(p, c);
    const nlohmann::json doc = nlohmann::json::parse(solution_json(run).dump());
    const SolutionFile s = parse_solution(doc);
    CHECK(s.instance == "C105");
    CHECK(s.seed == 5);
    CHECK(s.tours == run.tours);
    CHECK(s.nv == run.validated.n_vehicles);
    CHECK(s.km == run.validated.distance);
    CHECK(s.config.at("algorithm") == "gnrpa");
    CHECK(s.config.at("w2") == 75.0);

    const auto report = validate_solution(p, s.tours);
    CHECK(report.ok);
    CHECK(report.score == run.validated);
    CHECK(run.row().scalar == run.result.best_score.scalar);

    CHECK_THROWS(parse_solution(nlohmann::json{{"instance", "C105"}}));
}

TEST_CASE("experiment over a toy file writes every artifact") {
    TempDir dir("exp");
    const auto instance_path = dir.path / "toy2.txt";
    {
        std::ofstream out(instance_path);
        write_instance(out, testing::two_customer_toy());
    }
    ExperimentSpec spec;
    spec.instance_paths = {instance_path};
    spec.config.level = 1;
    spec.config.iterations = 3;
    spec.seeds = {0, 1, 2};
    spec.jobs = 2;
    spec.output_dir = dir.path / "out";

    int callbacks = 0;
    const auto result = run_experiment(spec, [&](const RunOutcome&) { ++callbacks; });
    CHECK(callbacks == 3);
    REQUIRE(result.runs.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(result.runs[k].seed == k);
        CHECK(result.runs[k].km == 20.0);
        CHECK(result.runs[k].nv == 1);
    }
    REQUIRE(result.best.size() == 1);
    CHECK(result.best[0].seed == 0);

    for (int s = 0; s < 3; ++s) {
        const auto stem = "toy2_gnrpa_s" + std::to_string(s);
        CHECK(std::filesystem::exists(*spec.output_dir / (stem + ".json")));
        CHECK(std::filesystem::exists(*spec.output_dir / (stem + "_trace.csv")));
        const auto sol = read_solution(*spec.output_dir / (stem + ".json"));
        CHECK(sol.km == 20.0);
    }
    std::ifstream runs(*spec.output_dir / "runs.csv");
    CHECK(read_rows_csv(runs).size() == 3);
    std::ifstream summary(*spec.output_dir / "summary.csv");
    CHECK(read_rows_csv(summary).size() == 1);
}

TEST_CASE("experiment specification errors") {
    ExperimentSpec spec;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.instance_paths = {testing::solomon_dir() / "c101.txt"};
    CHECK_NOTHROW(spec.validate());
    spec.jobs = 0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.jobs = 1;
    spec.seeds.clear();
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.seeds = {0};
    spec.instance_paths = {testing::solomon_dir() / "nope.txt"};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}
