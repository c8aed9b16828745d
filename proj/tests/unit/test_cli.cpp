#include "cli.hpp"
#include "testkit.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using condent::io::Json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = condent::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kMix = "[[0.5,0.25],[0.0,0.25]]";

}  // namespace

TEST(Cli, Entropy) {
    const CliRun r = run({"entropy", "--family", "hayashi", "--alpha", "0.5", "[[0.25],[0.25],[0.25],[0.25]]"});
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NEAR(r.json()["value"].get<double>(), 2.0, 1e-15);
    const CliRun b = run({"entropy", kMix, "--family", "bulk", "--t", "-1", "--tau", R"({"points":[{"alpha":"inf","weight":1}]})"});
    ASSERT_EQ(b.code, 0) << b.out;
    EXPECT_NEAR(b.json()["value"].get<double>(), -std::log2(0.75), 1e-15);
    const CliRun s = run({"entropy", kMix, "--spec", R"({"family":"zero","alpha":1})"});
    ASSERT_EQ(s.code, 0) << s.out;
    EXPECT_NEAR(s.json()["value"].get<double>(), 0.5, 1e-15);
}

TEST(Cli, OracleOnChannelImage) {
    condent::Rng rng(91);
    const condent::JointDist p = testkit::random_joint(rng, 3, 2, 16);
    const condent::CondChannel c = condent::sample_channel(3, 2, 2, 5);
    const condent::JointDist q = condent::apply_channel(p, c);
    const CliRun r = run({"oracle", condent::io::write(condent::io::to_json(p)), condent::io::write(condent::io::to_json(q))});
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(r.json()["feasible"].get<bool>());
    EXPECT_TRUE(r.json()["verified"].get<bool>());
    const CliRun a = run({"channel-apply", condent::io::write(condent::io::to_json(p)), condent::io::write(condent::io::to_json(c))});
    ASSERT_EQ(a.code, 0);
    EXPECT_TRUE(condent::approx_equal(condent::io::joint_from_json(a.json()), q, 0.0));
}

TEST(Cli, ValidationErrors) {
    const CliRun bad = run({"entropy", kMix, "--family", "neg_inf", "--tau", R"({"points":[{"alpha":2,"weight":0.9}]})"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(bad.json()["error"], "SchemaError");
    EXPECT_EQ(bad.json()["pointer"], "/points");
    const CliRun unknown = run({"frobnicate"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_EQ(unknown.json()["error"], "UnknownCommand");
    const CliRun usage = run({"oracle", kMix});
    EXPECT_EQ(usage.code, 2);
    EXPECT_EQ(usage.json()["error"], "UsageError");
    const CliRun missing = run({"entropy", "/nonexistent/p.json", "--family", "zero", "--alpha", "1"});
    EXPECT_EQ(missing.code, 2);
    const CliRun norm = run({"entropy", "[[0.5],[0.6]]", "--family", "zero", "--alpha", "1"});
    EXPECT_EQ(norm.code, 2);
    EXPECT_EQ(norm.json()["error"], "NotNormalized");
}

TEST(Cli, EverySubcommandAnswers) {
    const std::string u2 = "[[0.5],[0.5]]";
    const std::string u3 = "[[0.3333333333333333],[0.3333333333333333],[0.3333333333333334]]";
    const std::string tau = R"({"points":[{"alpha":0.5,"weight":1}]})";
    const std::vector<std::vector<std::string>> calls = {
        {"relative", "[0.5,0.5]", "[0.25,0.75]", "--alpha", "2"},
        {"majorize", "[1,0]", "[0.5,0.5]"},
        {"channel-sample", "--d", "3", "--n", "2", "--n-out", "2", "--seed", "4"},
        {"power-universal", u2},
        {"admissible", "--t", "1", "--tau", tau},
        {"grid", "--grid", "coarse"},
        {"large-sample", u2, u3},
        {"rate", u2, u3},
        {"catalyst", u2, u3, "-n", "2"},
        {"ncopy", "[[0.7],[0.3]]", "[[0.6],[0.4]]", "-n", "2"},
        {"thermo", "free-energy", "[[0.5],[0.5]]", "--energies", R"({"energies":[0,1],"beta":1})", "--t", "1", "--tau", tau},
        {"thermo", "second-laws", "[[1],[0]]", "[[0.5],[0.5]]", "--energies", "[0,0.6931471805599453]", "--beta", "1", "--eps", "0.01"},
        {"curvature", "--prop", "first", "--alpha", "2", "--d", "200"},
        {"curvature", "--prop", "second"},
        {"curvature", "--prop", "third"},
        {"curvature", "--prop", "derivation", "--alpha", "inf"},
        {"falsify", "--t", "1.0", "--tau", R"({"points":[{"alpha":0.9,"weight":1}]})", "--trials", "100", "--seed", "7"},
    };
    for (const auto& c : calls) {
        const CliRun r = run(c);
        EXPECT_EQ(r.code, 0) << c.front() << ": " << r.out;
    }
    EXPECT_EQ(run({"admissible", "--t", "1", "--tau", tau}).json()["bulk"]["rule"], "1");
    EXPECT_EQ(run({"large-sample", u2, u3}).json()["verdict"], "Satisfied");
    EXPECT_GT(run({"curvature", "--prop", "first", "--alpha", "2", "--d", "200"}).json()["sample"]["second_derivative"].get<double>(), 0.0);
}

TEST(Cli, CatalystToFile) {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "condent_cli_catalyst.json";
    const CliRun r = run({"catalyst", "[[0.5],[0.5]]", "[[1]]", "-n", "3", "-o", path.string()});
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream in(path);
    const condent::JointDist c = condent::io::joint_from_json(Json::parse(in));
    EXPECT_NEAR(condent::total_weight(c), 1.0, 1e-15);
    std::filesystem::remove(path);
}

TEST(Cli, DeterministicOutput) {
    const std::vector<std::vector<std::string>> calls = {
        {"falsify", "--t", "1.0", "--tau", R"({"points":[{"alpha":0.9,"weight":1}]})", "--trials", "10000", "--seed", "7"},
        {"channel-sample", "--d", "4", "--n", "3", "--n-out", "3", "--seed", "11"},
        {"rate", kMix, "[[0.25,0.25],[0.25,0.25]]", "--grid", "medium"},
    };
    for (const auto& c : calls) EXPECT_EQ(run(c).out, run(c).out);
}

TEST(Cli, Manifest) {
    const CliRun r = run({"majorize", "[1,0]", "[0.5,0.5]", "--manifest"});
    ASSERT_EQ(r.code, 0);
    const Json m = Json::parse(r.err)["manifest"];
    EXPECT_EQ(m["command"], "majorize");
    EXPECT_EQ(m["arguments"].size(), 2u);
    EXPECT_EQ(m["exit_code"], 0);
    EXPECT_TRUE(m.contains("version"));
    EXPECT_TRUE(run({"majorize", "[1,0]", "[0.5,0.5]"}).err.empty());
}
