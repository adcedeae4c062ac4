#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"

using namespace mpmdl;
using namespace mpmdl::testing;

namespace {

Errc validation_code(const Instance& inst) {
  try {
    validate_instance(inst);
  } catch (const ValidationError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a validation error";
  return Errc::Io;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mpmdl_test_" + name)).string();
}

}  // namespace

TEST(Validate, SixTaskIsValid) { EXPECT_NO_THROW(six_task_instance()); }

TEST(Validate, ClosingEdgeIsACycle) {
  Instance inst = six_task_instance();
  auto edges = inst.lines[0].precedence.edges();
  edges.emplace_back(6, 1);
  inst.lines[0].precedence = PrecedenceGraph(6, edges);
  try {
    validate_instance(inst);
    FAIL() << "cycle not detected";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), Errc::CycleDetected);
    EXPECT_EQ(e.line(), 1);
    // the reported path really is a cycle
    const auto& cyc = e.cycle();
    ASSERT_GE(cyc.size(), 2u);
    const auto& g = inst.lines[0].precedence;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const int from = cyc[i];
      const int to = cyc[(i + 1) % cyc.size()];
      const auto& s = g.successors(from);
      EXPECT_NE(std::find(s.begin(), s.end(), to), s.end()) << from << "->" << to;
    }
  }
}

TEST(Validate, TaskOverTakt) {
  Instance inst = six_task_instance();
  inst.lines[0].tasks[4].time_s = 700;
  try {
    validate_instance(inst);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), Errc::TaskExceedsTakt);
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.task(), 5);
  }
}

TEST(Validate, StructuralErrors) {
  Instance inst = six_task_instance();
  inst.lines.pop_back();
  EXPECT_EQ(validation_code(inst), Errc::BadLineCount);

  inst = six_task_instance();
  inst.takt_s = 0;
  EXPECT_EQ(validation_code(inst), Errc::NonPositiveTakt);

  inst = six_task_instance();
  inst.lines[0].vehicle_model = VehicleModel::Mixed;
  EXPECT_EQ(validation_code(inst), Errc::BadLineModel);

  inst = six_task_instance();
  inst.lines[0].tasks[2].time_s = -3;
  EXPECT_EQ(validation_code(inst), Errc::BadTaskTime);

  EXPECT_THROW(PrecedenceGraph(3, {{1, 4}}), ValidationError);
}

TEST(TopologicalCount, KnownGraphs) {
  EXPECT_EQ(topological_order_count(six_task_line().precedence), 5u);
  EXPECT_EQ(topological_order_count(PrecedenceGraph(3, {})), 6u);
  EXPECT_EQ(topological_order_count(PrecedenceGraph(3, {{1, 2}, {2, 3}})), 1u);
  EXPECT_EQ(topological_order_count(PrecedenceGraph(0, {})), 1u);
}

TEST(TopologicalCount, SixTaskMatchesPermutationFilter) {
  EXPECT_EQ(permutation_filter_orders(six_task_line().precedence).size(), 5u);
}

TEST(TopologicalCount, CapIsEnforced) {
  EXPECT_THROW(topological_order_count(PrecedenceGraph(13, {})), Error);
  EXPECT_EQ(topological_order_count(PrecedenceGraph(13, {}), 13), 6227020800ull);
}

TEST(TopologicalCount, PropertyAgreesWithOracleUpToEightTasks) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 8));
    const auto g = random_dag(n, uniform01(rng) * 0.6, rng);
    const auto oracle = permutation_filter_orders(g);
    ASSERT_EQ(topological_order_count(g), oracle.size()) << "n=" << n;
    const auto listed = enumerate_topological_orders(g, 1u << 20);
    ASSERT_EQ(std::set<std::vector<int>>(listed.begin(), listed.end()), oracle);
  }
}

TEST(TopologicalEnumeration, LimitThrows) {
  EXPECT_THROW(enumerate_topological_orders(PrecedenceGraph(6, {}), 100), Error);
  EXPECT_EQ(enumerate_topological_orders(PrecedenceGraph(5, {}), 120).size(), 120u);
}

TEST(Generator, DeterministicForSeed) {
  const auto cfg = generator_preset(ScalePreset::Small);
  EXPECT_EQ(generate_instance(cfg, 7), generate_instance(cfg, 7));
  EXPECT_NE(generate_instance(cfg, 7), generate_instance(cfg, 8));
  EXPECT_EQ(generate_instance(cfg, 7).lines[0].size(), 20);
}

TEST(Generator, ZeroDensityMeansNoEdges) {
  auto cfg = generator_preset(ScalePreset::Small);
  cfg.edge_density = 0.0;
  const auto inst = generate_instance(cfg, 3);
  for (const auto& line : inst.lines) EXPECT_TRUE(line.precedence.edges().empty());
}

TEST(Generator, TimesStayInRange) {
  auto cfg = generator_preset(ScalePreset::Medium);
  cfg.time_min_s = 100;
  cfg.time_max_s = 600;
  cfg.takt_s = 650;
  const auto inst = generate_instance(cfg, 11);
  for (const auto& line : inst.lines) {
    for (const auto& t : line.tasks) {
      EXPECT_GE(t.time_s, 100);
      EXPECT_LE(t.time_s, 600);
    }
  }
}

TEST(Generator, InfeasibleSpecRejected) {
  auto cfg = generator_preset(ScalePreset::Small);
  cfg.time_min_s = 700;
  cfg.time_max_s = 800;
  try {
    generate_instance(cfg, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InfeasibleSpec);
  }
}

TEST(Generator, EveryGeneratedInstanceValidates) {
  for (auto scale : {ScalePreset::Small, ScalePreset::Medium, ScalePreset::Large}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto inst = generate_instance(generator_preset(scale), seed);
      EXPECT_NO_THROW(validate_instance(inst));
      // edges go from lower to higher ids and are immediate (no edge implied by a path)
      for (const auto& line : inst.lines) {
        for (const auto& [a, b] : line.precedence.edges()) EXPECT_LT(a, b);
      }
    }
  }
}

TEST(Generator, DefaultTaktIs650) { EXPECT_EQ(generator_preset(ScalePreset::Medium).takt_s, 650.0); }

TEST(InstanceIo, RoundTrip) {
  const auto path = temp_path("six-task.json");
  const Instance inst = six_task_instance();
  write_instance(inst, path);
  EXPECT_EQ(read_instance(path), inst);
  std::remove(path.c_str());
}

TEST(InstanceIo, ByteStableAfterOneCycle) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto inst = generate_instance(generator_preset(ScalePreset::Small), seed);
    const std::string first = instance_to_string(inst);
    const std::string second = instance_to_string(instance_from_string(first));
    EXPECT_EQ(first, second);
  }
}

TEST(InstanceIo, MissingTaktIsParseError) {
  auto doc = nlohmann::json::parse(instance_to_string(six_task_instance()));
  doc.erase("takt_s");
  try {
    instance_from_json(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("takt_s"), std::string::npos);
  }
}

TEST(InstanceIo, UnknownFieldRejected) {
  auto doc = nlohmann::json::parse(instance_to_string(six_task_instance()));
  doc["lines"][0]["tasks"][0]["color"] = "red";
  EXPECT_THROW(instance_from_json(doc), ParseError);
}

TEST(InstanceIo, NegativeTimeIsValidationError) {
  auto doc = nlohmann::json::parse(instance_to_string(six_task_instance()));
  doc["lines"][0]["tasks"][1]["time_s"] = -5;
  try {
    instance_from_json(doc);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), Errc::BadTaskTime);
    EXPECT_EQ(e.task(), 2);
  }
}

TEST(InstanceIo, BadModelAndMalformedJson) {
  auto doc = nlohmann::json::parse(instance_to_string(six_task_instance()));
  doc["lines"][0]["vehicle_model"] = "diesel";
  EXPECT_THROW(instance_from_json(doc), ParseError);
  EXPECT_THROW(instance_from_string("{ not json"), ParseError);
}

TEST(InstanceStats, LowerBounds) {
  const auto s = instance_stats(six_task_instance());
  EXPECT_EQ(s.task_count[0], 6);
  EXPECT_EQ(s.work_content_s[0], 840);
  EXPECT_EQ(s.row_lower_bound[0], 2);
  EXPECT_EQ(s.row_lower_bound[1], 0);
  EXPECT_EQ(s.total_lower_bound, 2);
}
