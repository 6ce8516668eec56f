#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "unitdef/experiments.hpp"

using namespace unitdef;
namespace fs = std::filesystem;

namespace {

std::string slurp(fs::path const & p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir()
{
    auto d = fs::temp_directory_path() / ("unitdef_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

int run_cli(std::string const & args)
{
    std::string cmd = std::string(UNITDEF_CLI) + " " + args + " >/dev/null 2>&1";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void write_file(fs::path const & p, std::string const & s)
{
    std::ofstream out(p, std::ios::binary);
    out << s;
}

}   // namespace

TEST(Reports, ListsEveryExperiment)
{
    std::set<std::string> names;
    for (auto const & e : list_experiments()) names.insert(e.name);
    for (auto const & n : {"gauss-s-table", "imag-quadratic-rk", "rank-one", "divisibility-sweep", "obstruction",
                           "construct-unit", "zk-witness"})
        EXPECT_TRUE(names.count(n)) << n;
}

TEST(Reports, DeterministicAndGolden)
{
    json cfg{{"experiment", "gauss-s-table"}};
    auto a = canonical_dump(run_experiment(cfg));
    auto b = canonical_dump(run_experiment(cfg));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, slurp(fs::path(UNITDEF_GOLDEN_DIR) / "gauss-s-table.json"));
}

TEST(Reports, DeterministicRandomizedExperiment)
{
    json cfg{{"experiment", "construct-unit"}, {"random_instances", 20}, {"seed", 7}};
    EXPECT_EQ(canonical_dump(run_experiment(cfg)), canonical_dump(run_experiment(cfg)));
    json other = cfg;
    other["seed"] = 8;
    EXPECT_NE(canonical_dump(run_experiment(cfg)), canonical_dump(run_experiment(other)));
}

TEST(Reports, SchemaAndSummary)
{
    for (auto const & name : {"gauss-s-table", "imag-quadratic-rk", "divisibility-sweep", "obstruction", "zk-witness"}) {
        auto r = run_experiment(json{{"experiment", name}});
        EXPECT_TRUE(validate_report_schema(r).empty()) << name;
        EXPECT_EQ(r.at("artifact").at("name"), "unitdef");
        EXPECT_EQ(r.at("artifact").at("version"), artifact_version);
        auto const & s = r.at("summary");
        EXPECT_EQ(s.at("checks").get<std::size_t>(), r.at("checks").size());
        EXPECT_EQ(s.at("failed"), 0) << name;
        EXPECT_EQ(report_exit_code(r), 0);
        EXPECT_EQ(r.at("config_hash").get<std::string>().rfind("fnv1a64:", 0), 0u);
        EXPECT_EQ(r.at("config_hash").get<std::string>().size(), 8u + 16u);
        for (auto const & c : r.at("checks")) EXPECT_FALSE(c.contains("elapsed_ms"));
        auto v = verify_report(r);
        EXPECT_TRUE(v.ok) << name;
        EXPECT_EQ(v.verified, r.at("checks").size());
    }
}

TEST(Reports, EmptyReportIsValid)
{
    auto r = empty_report(normalize_config(json{{"experiment", "rank-one"}}));
    EXPECT_TRUE(validate_report_schema(r).empty());
    EXPECT_EQ(r.at("checks").size(), 0u);
    EXPECT_EQ(report_exit_code(r), 0);
}

TEST(Reports, TimingIsOptIn)
{
    auto r = run_experiment(json{{"experiment", "gauss-s-table"}, {"timing", true}});
    for (auto const & c : r.at("checks")) EXPECT_TRUE(c.contains("elapsed_ms"));
    EXPECT_TRUE(validate_report_schema(r).empty());
}

TEST(Reports, ConfigNormalization)
{
    auto n = normalize_config(json{{"experiment", "imag-quadratic-rk"}, {"d", -7}});
    EXPECT_EQ(n.at("ds"), json::array({-7}));
    EXPECT_EQ(n.at("seed"), 0);
    EXPECT_EQ(config_hash(n), config_hash(normalize_config(json{{"experiment", "imag-quadratic-rk"}, {"ds", {-7}}})));
    EXPECT_NE(config_hash(n), config_hash(normalize_config(json{{"experiment", "imag-quadratic-rk"}})));
    auto with_out = normalize_config(json{{"experiment", "gauss-s-table"}, {"output", "x.json"}});
    EXPECT_FALSE(with_out.contains("output"));
}

TEST(Reports, ConfigErrorsNameTheField)
{
    auto field_of = [](json const & cfg) -> std::string {
        try {
            normalize_config(cfg);
        } catch (config_error const & e) {
            return e.field;
        }
        return "";
    };
    EXPECT_EQ(field_of(json{{"experiment", "rank-one"}, {"unit_bound", "many"}}), "unit_bound");
    EXPECT_EQ(field_of(json{{"experiment", "rank-one"}, {"bogus", 1}}), "bogus");
    EXPECT_EQ(field_of(json{{"experiment", "nope"}}), "experiment");
    EXPECT_EQ(field_of(json::object()), "experiment");
    EXPECT_EQ(field_of(json{{"experiment", "divisibility-sweep"}, {"range", -3}}), "range");
    EXPECT_EQ(field_of(json{{"experiment", "gauss-s-table"}, {"seed", -1}}), "seed");
}

TEST(Reports, TamperedReportFailsVerify)
{
    auto r = run_experiment(json{{"experiment", "imag-quadratic-rk"}});
    auto t = r;
    t["checks"][0]["verdict"] = "FALSE";
    EXPECT_FALSE(verify_report(t).ok);
    auto s = r;
    s["checks"][1]["certificate"]["basis"] = json::array({json::array({"1", "0"}), json::array({"0", "1"})});
    EXPECT_FALSE(verify_report(s).ok);
    auto u = r;
    u.erase("summary");
    EXPECT_FALSE(validate_report_schema(u).empty());
}

TEST(Reports, CliExitCodes)
{
    auto dir = scratch_dir();
    auto out = dir / "gauss.json";
    EXPECT_EQ(run_cli("run gauss-s-table --out " + out.string()), 0);
    EXPECT_EQ(slurp(out), slurp(fs::path(UNITDEF_GOLDEN_DIR) / "gauss-s-table.json"));
    EXPECT_EQ(run_cli("verify " + out.string()), 0);
    EXPECT_EQ(run_cli("list"), 0);

    auto bad_cfg = dir / "bad.json";
    write_file(bad_cfg, R"({"experiment": "rank-one", "unit_bound": "x"})");
    EXPECT_EQ(run_cli("run --config " + bad_cfg.string()), 2);
    write_file(bad_cfg, "{not json");
    EXPECT_EQ(run_cli("run --config " + bad_cfg.string()), 2);
    EXPECT_EQ(run_cli("run no-such-experiment"), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("verify " + (dir / "missing.json").string()), 2);

    auto tampered = dir / "tampered.json";
    auto r = json::parse(slurp(out));
    r["checks"][0]["verdict"] = "FALSE";
    write_file(tampered, r.dump());
    EXPECT_EQ(run_cli("verify " + tampered.string()), 1);

    auto cap = dir / "cap.json";
    write_file(cap, R"({"experiment": "construct-unit", "ideal": ["1000003"], "residue_cap": 1000})");
    EXPECT_EQ(run_cli("run --config " + cap.string()), 3);

    EXPECT_EQ(run_cli("eval --formula rk_member --order quadratic:-1 --assign 'x=[1,2]'"), 0);
    EXPECT_EQ(run_cli("eval --formula rk_member --order quadratic:-1"), 2);
    auto bad_formula = dir / "bad.formula";
    write_file(bad_formula, "forall x:Elem.");
    EXPECT_EQ(run_cli("eval --formula " + bad_formula.string()), 2);
    EXPECT_EQ(run_cli("eval --formula rk_member --order quadratic:4 --assign x=1"), 2);
    fs::remove_all(dir);
}
