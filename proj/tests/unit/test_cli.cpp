#include <gtest/gtest.h>

#include <fstream>

#include "pacing/cli/json_io.hpp"
#include "pacing/cli/run.hpp"

namespace pacing::cli {
namespace {

const std::string kDataDir = PACING_TEST_DATA_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t error_line(const std::string& text) {
  try {
    parse_instance(text, "t.json");
  } catch (const SchemaError& e) {
    return e.line();
  }
  return 0;
}

TEST(InstanceSchema, ReportsLineOfOffendingField) {
  const std::string bad_kind = R"({
  "agents": [
    {"valuation": {"kind": "linear", "value": 1}, "budget": 1},
    {"valuation": {"kind": "cubic", "value": 1}, "budget": 1}
  ],
  "ctr": [[1], [1]]
})";
  EXPECT_EQ(error_line(bad_kind), 4u);
  try {
    parse_instance(bad_kind, "t.json");
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.pointer(), "/agents/1/valuation/kind");
    EXPECT_NE(std::string(e.what()).find("t.json:4"), std::string::npos);
  }

  const std::string bad_inf = "{\n\"agents\": [{\"valuation\": {\"kind\": \"linear\", \"value\": 1},\n"
                              "\"budget\": \"Infinity\"}],\n\"ctr\": [[1]]}";
  EXPECT_EQ(error_line(bad_inf), 3u);
  EXPECT_EQ(error_line("{\n\"agents\": [],\n\"ctr\": [[1]],\n\"extra\": 1\n}"), 4u);
  EXPECT_EQ(error_line("{\n\"agents\": [\n,]}"), 3u);
}

TEST(InstanceSchema, RejectsNegativeAndMismatchedInputs) {
  EXPECT_THROW(parse_instance(R"({"agents": [{"valuation": {"kind": "linear", "value": -1}, "budget": 1}], "ctr": [[1]]})"),
               InputError);
  EXPECT_THROW(parse_instance(R"({"agents": [{"valuation": {"kind": "linear", "value": 1}, "budget": 1}], "ctr": [[1], [1]]})"),
               InputError);
  EXPECT_THROW(parse_instance(R"({"agents": [{"valuation": {"kind": "linear", "value": 1}, "budget": 1}], "ctr": [[1]], "seed": -3})"),
               InputError);
}

TEST(InstanceSchema, RoundTripIsSemanticallyIdentical) {
  for (const char* name : {"two_item_swap.json", "mixed_preferences.json", "winner_take_all_k100.json"}) {
    const std::string text = slurp(kDataDir + "/" + name);
    InstanceFile a = parse_instance(text, name);
    Json once = instance_to_json(a.instance, a.seed);
    InstanceFile b = parse_instance(once.dump(2), name);
    Json twice = instance_to_json(b.instance, b.seed);
    EXPECT_EQ(nlohmann::json::parse(once.dump()), nlohmann::json::parse(twice.dump())) << name;
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.instance.ctr(), b.instance.ctr());
  }
}

TEST(InstanceSchema, KeyOrderDoesNotMatter) {
  InstanceFile a = parse_instance(R"({"agents": [{"budget": "inf", "valuation": {"value": 2, "kind": "linear"}}], "ctr": [[1]]})");
  InstanceFile b = parse_instance(R"({"ctr": [[1]], "agents": [{"valuation": {"kind": "linear", "value": 2}, "budget": "inf"}]})");
  EXPECT_EQ(instance_to_json(a.instance).dump(), instance_to_json(b.instance).dump());
}

TEST(ProfileSchema, ParsesAndSerializes) {
  MessageProfile p = parse_profile(R"({"messages": [{"max_bid": "inf", "budget": 0.3}, {"max_bid": 1, "budget": "inf"}]})");
  EXPECT_TRUE(p[0].max_bid.is_infinite());
  EXPECT_EQ(p[1].max_bid.as_double(), 1.0);
  EXPECT_EQ(parse_profile(profile_to_json(p).dump()), p);
  EXPECT_THROW(parse_profile(R"({"messages": [{"max_bid": "inf", "budget": "inf"}]})"), InputError);
}

TEST(Reports, ScenarioJsonIsByteIdenticalAcrossRunsAndJobs) {
  RunOptions one;
  one.params = {{"count", "40"}};
  one.seed = 9;
  RunOptions many = one;
  many.jobs = 4;
  for (const char* name : {"single_item_nash_sweep", "budget_monotonicity_sweep"}) {
    const std::string a = run_scenario(name, one).render("json");
    EXPECT_EQ(a, run_scenario(name, one).render("json")) << name;
    EXPECT_EQ(a, run_scenario(name, many).render("json")) << name;
  }
  RunOptions other = one;
  other.seed = 10;
  EXPECT_NE(run_scenario("budget_monotonicity_sweep", one).render("json"),
            run_scenario("budget_monotonicity_sweep", other).render("json"));
}

TEST(Reports, EveryCheckCarriesProvenance) {
  for (const auto& s : scenario_registry()) {
    if (s.name == "single_item_nash_sweep" || s.name == "budget_monotonicity_sweep" ||
        s.name == "oracle_agreement" || s.name == "budgeted_nonexistence") {
      continue;
    }
    Report r = run_scenario(s.name, RunOptions{});
    EXPECT_TRUE(r.pass()) << s.name;
    for (const auto& c : r.checks()) EXPECT_FALSE(c.provenance.empty()) << s.name << ": " << c.name;
    Json j = r.to_json();
    EXPECT_TRUE(j.contains("tolerances"));
    EXPECT_FALSE(j.contains("wall_clock_s"));
  }
}

TEST(Reports, SweepCsvHasOneRowPerInstance) {
  RunOptions o;
  o.params = {{"count", "12"}};
  std::string csv = run_scenario("budget_monotonicity_sweep", o).render("csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
}

TEST(Scenarios, RejectsUnknownNamesAndParameters) {
  EXPECT_THROW(run_scenario("no_such_scenario", RunOptions{}), InputError);
  RunOptions bad;
  bad.params = {{"K", "abc"}};
  EXPECT_THROW(run_scenario("poa_lower_bound", bad), InputError);
  bad.params = {{"Q", "1"}};
  EXPECT_THROW(run_scenario("poa_lower_bound", bad), InputError);
}

TEST(FileCommands, DocumentedExamples) {
  RunOptions o;
  o.profile = kDataDir + "/two_item_swap_truthful.profile.json";
  Report swap = run_file("fppe", kDataDir + "/two_item_swap.json", o);
  EXPECT_TRUE(swap.pass());
  const Json& prices = swap.computed()["outcome"]["prices"];
  EXPECT_NEAR(prices[0].get<double>(), 0.5, 1e-8);
  EXPECT_NEAR(prices[1].get<double>(), 0.5, 1e-8);

  RunOptions nash;
  nash.profile = kDataDir + "/linear_pair_efficient.profile.json";
  EXPECT_TRUE(run_file("verify-nash", kDataDir + "/linear_pair.json", nash).pass());

  RunOptions w;
  w.alloc = "[[0.01], [0.99]]";
  Report welfare = run_file("welfare", kDataDir + "/winner_take_all_k100.json", w);
  EXPECT_NEAR(welfare.computed()["welfare"]["total"].get<double>(), 1.99, 1e-12);
}

}  // namespace
}  // namespace pacing::cli
